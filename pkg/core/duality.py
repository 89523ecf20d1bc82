"""Transforms between primal boards and dual certificates, and gap reports."""
from dataclasses import dataclass, field
from typing import Optional, Union

from core.errors import DomainError, InvariantViolation
from core.extended import INF
from core.pairdiff import sgn_vec
from core.problems import (
    DualCertificate,
    Verdict,
    is_dual_feasible,
    is_primal_solution,
)

_EMPTY_SET = (Verdict.UNSOLVABLE, Verdict.INFEASIBLE)


def primal_to_dual(inst, board):
    """
    Sign certificate of a complete board: lam = sgn(A_pi1 x).

    Only row distinctness is required for the sign to exist. If the board
    solves the primal problem, the certificate solves the dual one.

    Args:
        inst: PrimalInstance
        board: Complete board (no INF)

    Returns:
        DualCertificate
    """
    if len(board) != inst.n_cells:
        raise DomainError(f"board has {len(board)} cells, expected {inst.n_cells}")
    empty = [i for i, value in enumerate(board) if value is INF]
    if empty:
        raise DomainError(f"board is incomplete, empty cells: {empty}")

    differences = inst.systems[0].apply(board)
    try:
        signs = sgn_vec(differences)
    except DomainError as error:
        raise DomainError(f"board repeats a value inside a row group ({error})") from error
    return DualCertificate(inst.n, signs)


def dual_to_primal(inst, cert):
    """
    Board x = (A_pi1^T lam + (n + 1)) / 2.

    Total on well-formed certificates; cells land in 1..n only when the
    certificate is dual feasible.
    """
    scores = inst.systems[0].apply_transpose(cert.lam)
    shift = inst.n + 1
    cells = []
    for i, score in enumerate(scores):
        doubled = score + shift
        if doubled % 2:
            raise InvariantViolation(f"odd value {doubled} at cell {i}; scores must share parity with n + 1")
        cells.append(doubled // 2)
    return tuple(cells)


@dataclass(frozen=True)
class PrimalizationReport:
    """A board from dual_to_primal with the guarantees that apply to it."""

    board: tuple
    in_range: bool
    dual_feasible: bool
    solves_primal: bool


def describe_primalization(inst, cert):
    board = dual_to_primal(inst, cert)
    return PrimalizationReport(
        board=board,
        in_range=all(1 <= value <= inst.n for value in board),
        dual_feasible=is_dual_feasible(inst, cert),
        solves_primal=is_primal_solution(inst, board),
    )


Value = Union[int, Verdict]


@dataclass(frozen=True)
class GapReport:
    """Primal and dual optimal values and the gap between them."""

    primal_value: Value
    dual_value: Value
    gap: Optional[int] = None
    notes: tuple = field(default_factory=tuple)

    @property
    def strong_duality(self):
        return self.gap == 0


def gap_report(primal_value, dual_value):
    """
    Assemble a duality gap report.

    Args:
        primal_value: Minimal number of empty cells, or UNSOLVABLE / INFEASIBLE
        dual_value: Maximal dual objective, or UNSOLVABLE

    Returns:
        GapReport: gap is None when either feasible set is empty
    """
    notes = []
    primal_empty = primal_value in _EMPTY_SET
    dual_empty = dual_value in _EMPTY_SET

    if not primal_empty and primal_value < 0:
        raise InvariantViolation(f"primal optimal value {primal_value} is negative")
    if not dual_empty and dual_value > 0:
        raise InvariantViolation(f"dual optimal value {dual_value} is positive")

    if primal_empty:
        notes.append("primal feasible set is empty")
    if dual_empty:
        notes.append("dual feasible set is empty")
    if primal_empty or dual_empty:
        return GapReport(primal_value, dual_value, None, tuple(notes))

    gap = primal_value - dual_value
    if gap < 0:
        raise InvariantViolation(f"negative duality gap {gap}")
    if gap == 0:
        notes.append("no duality gap: the puzzle has a complete solution")
    else:
        notes.append("duality gap present: no complete solution exists")
    return GapReport(primal_value, dual_value, gap, tuple(notes))
