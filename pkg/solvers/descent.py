"""Primal solver: candidate propagation, depth-first completion and
branch-and-bound over partial boards.

Every board the solver reports along the way is primal feasible and has
strictly fewer empty cells than the previous one.
"""
import logging
from dataclasses import dataclass
from typing import Optional

from core.errors import InvariantViolation
from core.extended import INF
from core.problems import (
    Verdict,
    board_from_givens,
    check_primal_feasible,
    is_primal_feasible,
    is_primal_solution,
    primal_objective,
)

logger = logging.getLogger(__name__)

CONTRADICTION = Verdict.CONTRADICTION


@dataclass(frozen=True)
class DescentTrace:
    """Primal feasible boards with strictly decreasing empty-cell counts."""

    boards: tuple

    @property
    def values(self):
        return tuple(sum(1 for v in board if v is INF) for board in self.boards)

    def is_descending(self):
        values = self.values
        return all(a > b for a, b in zip(values, values[1:]))

    def __len__(self):
        return len(self.boards)


@dataclass(frozen=True)
class SolveResult:
    """Optimal value, an optimal board and the descent that reached it."""

    primal_value: int
    board: tuple
    trace: DescentTrace
    note: Optional[str] = None


class _Tracer:
    """Keeps the best-so-far feasible boards."""

    def __init__(self, inst):
        self.inst = inst
        self.boards = []
        self.best_value = inst.n_cells + 1
        self.best_board = None

    def offer(self, board):
        value = primal_objective(self.inst, board)
        if value >= self.best_value:
            return False
        if not is_primal_feasible(self.inst, board):
            raise InvariantViolation(f"descent produced an infeasible board: {board}")
        self.best_value = value
        self.best_board = board
        self.boards.append(board)
        logger.debug("descent step: %d empty cells", value)
        return True

    def trace(self):
        return DescentTrace(tuple(self.boards))


def initial_candidates(inst):
    """Full candidate sets, singletons on given cells."""
    full = frozenset(range(1, inst.n + 1))
    grid = [full] * inst.n_cells
    for given in inst.givens:
        grid[given.index] = frozenset((given.value,))
    return tuple(grid)


def grid_board(grid):
    """Board of the fixed (singleton) cells; INF elsewhere."""
    return tuple(next(iter(c)) if len(c) == 1 else INF for c in grid)


def propagate(inst, grid):
    """
    Run elimination and unique placement to a fixpoint.

    A fixed cell's value is removed from every peer; a value with a single
    candidate cell in some group is placed there. Unique placement assumes a
    complete board is sought, so this is only used on the completion path.

    Args:
        inst: PrimalInstance
        grid: Tuple of candidate sets, one per cell

    Returns:
        tuple of frozensets, or CONTRADICTION if a candidate set empties
    """
    cands = [set(c) for c in grid]
    if any(not c for c in cands):
        return CONTRADICTION
    values = range(1, inst.n + 1)

    changed = True
    while changed:
        changed = False

        for cell, options in enumerate(cands):
            if len(options) != 1:
                continue
            (value,) = options
            for peer in inst.peers[cell]:
                if value in cands[peer]:
                    cands[peer].discard(value)
                    changed = True
                    if not cands[peer]:
                        return CONTRADICTION

        for _, _, cells in inst.units:
            for value in values:
                places = [c for c in cells if value in cands[c]]
                if len(places) == 1 and len(cands[places[0]]) > 1:
                    cands[places[0]] = {value}
                    changed = True

    return tuple(frozenset(c) for c in cands)


def _complete(inst, grid, tracer):
    """Depth-first completion: MRV cell, lowest index first, ascending values."""
    open_cells = [(len(c), i) for i, c in enumerate(grid) if len(c) > 1]
    if not open_cells:
        board = grid_board(grid)
        if not is_primal_solution(inst, board):
            raise InvariantViolation(f"propagation fixed an invalid board: {board}")
        return board

    _, cell = min(open_cells)
    for value in sorted(grid[cell]):
        trial = list(grid)
        trial[cell] = frozenset((value,))
        result = propagate(inst, tuple(trial))
        if result is CONTRADICTION:
            continue
        tracer.offer(grid_board(result))
        found = _complete(inst, result, tracer)
        if found is not None:
            return found
    return None


def _branch_and_bound(inst, tracer):
    """Exhaustive search over partial boards for the fewest empty cells."""
    n = inst.n
    board = list(board_from_givens(inst))
    decided = [False] * inst.n_cells
    for given in inst.givens:
        decided[given.index] = True

    def options(cell):
        used = {board[p] for p in inst.peers[cell] if decided[p] and board[p] is not INF}
        return [v for v in range(1, n + 1) if v not in used]

    def search(empty):
        undecided = [i for i in range(inst.n_cells) if not decided[i]]
        if not undecided:
            tracer.offer(tuple(board))
            return
        opts = {i: options(i) for i in undecided}
        forced = sum(1 for i in undecided if not opts[i])
        if empty + forced >= tracer.best_value:
            return

        cell = min(undecided, key=lambda i: (len(opts[i]), i))
        decided[cell] = True
        for value in opts[cell]:
            board[cell] = value
            search(empty)
        board[cell] = INF
        search(empty + 1)
        decided[cell] = False

    search(0)
    return tracer.best_board


def solve(inst):
    """
    Minimize the number of empty cells over the primal feasible set.

    Tries a complete solution first; if none exists, branch-and-bound finds
    a partial board with the fewest empty cells.

    Args:
        inst: PrimalInstance

    Returns:
        SolveResult, or Verdict.INFEASIBLE when the givens conflict
    """
    start = board_from_givens(inst)
    report = check_primal_feasible(inst, start)
    if not report:
        logger.info("givens conflict: %s", "; ".join(report.reasons))
        return Verdict.INFEASIBLE

    tracer = _Tracer(inst)
    tracer.offer(start)

    grid = propagate(inst, initial_candidates(inst))
    if grid is not CONTRADICTION:
        tracer.offer(grid_board(grid))
        board = _complete(inst, grid, tracer)
        if board is not None:
            tracer.offer(board)
            logger.debug("complete solution found")
            return SolveResult(0, board, tracer.trace())

    logger.debug("no completion exists, searching partial boards")
    board = _branch_and_bound(inst, tracer)
    value = primal_objective(inst, board)
    return SolveResult(
        value,
        board,
        tracer.trace(),
        note="first minimizer in search order; other minimizers may exist",
    )
