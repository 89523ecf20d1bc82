"""Report formatting for solver, gap and primalization results."""
from core.problems import Verdict
from utils.file_formats import format_board


def _value_text(value):
    return value.value if isinstance(value, Verdict) else str(value)


def normalize_solve_report(result, n, show_trace=False):
    """
    Convert a solver result to the text printed on stdout.

    Args:
        result: SolveResult from solvers.descent.solve
        n: Board size
        show_trace: Append every descent step

    Returns:
        str: Board rows, the optimal value and optionally the trace
    """
    lines = [format_board(result.board, n), f"primal_value={result.primal_value}"]

    if show_trace:
        lines.append("")
        lines.append("=" * 40)
        lines.append(f"DESCENT TRACE ({len(result.trace)} steps)")
        lines.append("=" * 40)
        for step, (board, value) in enumerate(zip(result.trace.boards, result.trace.values), start=1):
            lines.append(f"step {step}: empty={value}")
            lines.append(format_board(board, n))

    return "\n".join(lines)


def normalize_gap_report(report):
    """Optimal values and gap, one key=value per line."""
    gap = "undefined" if report.gap is None else str(report.gap)
    lines = [
        f"primal_value={_value_text(report.primal_value)}",
        f"dual_value={_value_text(report.dual_value)}",
        f"gap={gap}",
    ]
    lines.extend(f"note={note}" for note in report.notes)
    return "\n".join(lines)


def normalize_feasibility(report):
    """One diagnostic per line; empty when feasible."""
    return "\n".join(report.reasons)
