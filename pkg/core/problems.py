"""Primal and dual instances, feasibility checks and objective values."""
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from numbers import Integral
from typing import NamedTuple

from core.errors import ConstructionError, DomainError
from core.extended import INF, ext_eq, is_nonzero
from core.pairdiff import (
    GroupSystem,
    Permutation,
    all_nonzero,
    exact_int,
    standard_perms,
    triangular_size,
)

FAMILY_NAMES = ("row", "column", "block")


class Verdict(Enum):
    """Outcomes that are results rather than errors."""

    INFEASIBLE = "INFEASIBLE"
    UNSOLVABLE = "UNSOLVABLE"
    CONTRADICTION = "CONTRADICTION"


class Given(NamedTuple):
    """A pre-populated cell; index is 0-based, value lies in 1..n."""

    index: int
    value: int


@dataclass(frozen=True)
class PrimalInstance:
    """Board size, the three group permutations and the givens.

    Use make_primal() to build a validated instance.
    """

    n: int
    perms: tuple
    givens: tuple = ()

    @cached_property
    def systems(self):
        return tuple(GroupSystem(self.n, perm) for perm in self.perms)

    @cached_property
    def units(self):
        """Every group of every family as (family, group, cells)."""
        return tuple(
            (family, g, cells)
            for family, system in enumerate(self.systems)
            for g, cells in enumerate(system.groups())
        )

    @cached_property
    def peers(self):
        """For each cell, the other cells sharing at least one group with it."""
        peers = [set() for _ in range(self.n * self.n)]
        for _, _, cells in self.units:
            for cell in cells:
                peers[cell].update(cells)
        for cell, others in enumerate(peers):
            others.discard(cell)
        return tuple(frozenset(others) for others in peers)

    @property
    def n_cells(self):
        return self.n * self.n

    @property
    def k(self):
        return len(self.givens)

    def given_map(self):
        return {g.index: g.value for g in self.givens}


def default_perms(n):
    """
    Standard row, column and block permutations.

    A 2 x 2 board has no blocks; its rows stand in as the third family.
    Other non-square sizes keep None in third place.
    """
    rows, columns, blocks = standard_perms(n)
    if blocks is None and n == 2:
        blocks = rows
    return rows, columns, blocks


def make_primal(n, perms=None, givens=()):
    """
    Build a validated primal instance.

    Args:
        n: Board size, n >= 2
        perms: (pi1, pi2, pi3) Permutations or 0-based sequences; None picks
            default_perms(n) (n must then be 2 or a perfect square)
        givens: Iterable of (index, value) pairs, index 0-based

    Returns:
        PrimalInstance
    """
    if not isinstance(n, int) or n < 2:
        raise ConstructionError(f"board size must be an integer >= 2, got {n!r}", item=n)

    if perms is None:
        perms = default_perms(n)
    perms = tuple(perms)
    if len(perms) != 3:
        raise ConstructionError(f"expected three permutations, got {len(perms)}", item=perms)
    if perms[2] is None:
        raise ConstructionError(
            f"n={n} is not a perfect square, a third permutation must be supplied", item=n
        )

    checked = []
    for r, perm in enumerate(perms, start=1):
        if not isinstance(perm, Permutation):
            perm = Permutation(tuple(perm))
        if perm.n_cells != n * n:
            raise ConstructionError(
                f"permutation {r} covers {perm.n_cells} cells, expected {n * n}", item=perm
            )
        checked.append(perm)

    seen = set()
    clean = []
    for given in givens:
        try:
            index, value = (exact_int(v, "given") for v in given)
        except ConstructionError as error:
            raise ConstructionError(str(error), item=given) from None
        if not 0 <= index < n * n:
            raise ConstructionError(f"given index {index} outside the board", item=given)
        if not 1 <= value <= n:
            raise ConstructionError(f"given value {value} outside 1..{n}", item=given)
        if index in seen:
            raise ConstructionError(f"duplicate given index {index}", item=given)
        seen.add(index)
        clean.append(Given(index, value))

    return PrimalInstance(n=n, perms=tuple(checked), givens=tuple(clean))


# Boards are plain tuples of length n * n holding ints or INF.

def empty_board(n):
    return (INF,) * (n * n)


def board_from_givens(inst):
    """Board holding exactly the givens; INF elsewhere."""
    cells = list(empty_board(inst.n))
    for given in inst.givens:
        cells[given.index] = given.value
    return tuple(cells)


def board_from_rows(rows):
    return tuple(value for row in rows for value in row)


def is_complete(board):
    return all(value is not INF for value in board)


@dataclass(frozen=True)
class DualCertificate:
    """A vector in {-1, +1}^(n * s(n)), group-major pair-lexicographic."""

    n: int
    lam: tuple

    def __post_init__(self):
        lam = tuple(self.lam)
        object.__setattr__(self, "lam", lam)
        expected = self.n * triangular_size(self.n)
        if len(lam) != expected:
            raise ConstructionError(
                f"certificate for n={self.n} needs {expected} components, got {len(lam)}",
                item=len(lam),
            )
        for position, value in enumerate(lam):
            if isinstance(value, bool) or not isinstance(value, Integral) or value not in (-1, 1):
                raise ConstructionError(
                    f"certificate component {position} is {value!r}, expected -1 or +1",
                    item=(position, value),
                )

    def groups(self):
        width = triangular_size(self.n)
        return [self.lam[g * width:(g + 1) * width] for g in range(self.n)]


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of a feasibility check with the reasons it failed."""

    feasible: bool
    reasons: tuple = field(default_factory=tuple)

    def __bool__(self):
        return self.feasible


def primal_objective(inst, board):
    """Number of empty (INF) cells."""
    if len(board) != inst.n_cells:
        raise DomainError(f"board has {len(board)} cells, expected {inst.n_cells}")
    return sum(1 for value in board if value is INF)


def check_primal_feasible(inst, board):
    """
    Check membership of a board in the primal feasible set.

    Args:
        inst: PrimalInstance
        board: Sequence of ints / INF

    Returns:
        FeasibilityReport: feasible flag plus one reason per violated constraint
    """
    n = inst.n
    if len(board) != inst.n_cells:
        return FeasibilityReport(False, (f"board has {len(board)} cells, expected {inst.n_cells}",))

    reasons = []
    malformed = False
    for i, value in enumerate(board):
        if value is INF:
            continue
        if not isinstance(value, int) or isinstance(value, bool):
            reasons.append(f"cell {i} holds non-integer {value!r}")
            malformed = True
        elif not 1 <= value <= n:
            reasons.append(f"cell {i} holds {value}, outside 1..{n}")
    if malformed:
        return FeasibilityReport(False, tuple(reasons))

    # Pairwise distinctness of known values in every group
    for family, system in enumerate(inst.systems):
        differences = system.apply(board)
        for (g, p, q), diff in zip(system.rows(), differences):
            if not is_nonzero(diff):
                a, b = system.perm[g * n + p], system.perm[g * n + q]
                reasons.append(
                    f"{FAMILY_NAMES[family]} group {g}: cells {a} and {b} both hold {board[a]}"
                )

    for given in inst.givens:
        if not ext_eq(board[given.index], given.value):
            reasons.append(
                f"given at cell {given.index} expects {given.value}, board holds {board[given.index]!r}"
            )

    return FeasibilityReport(not reasons, tuple(reasons))


def is_primal_feasible(inst, board):
    return check_primal_feasible(inst, board).feasible


def is_primal_solution(inst, board):
    """Complete and feasible: solves the constraint problem."""
    return len(board) == inst.n_cells and is_complete(board) and is_primal_feasible(inst, board)


def _scores(inst, cert):
    if cert.n != inst.n:
        raise DomainError(f"certificate is for n={cert.n}, instance has n={inst.n}")
    return inst.systems[0].apply_transpose(cert.lam)


def dual_objective(inst, cert):
    """
    Matched given equations minus k; always <= 0.

    A given (i, g) is matched when the row score of cell i equals 2g - (n + 1).
    """
    scores = _scores(inst, cert)
    target = inst.n + 1
    matched = sum(1 for given in inst.givens if scores[given.index] == 2 * given.value - target)
    return matched - inst.k


def is_dual_feasible(inst, cert):
    """Scores of every group of every family are pairwise distinct."""
    scores = _scores(inst, cert)
    return all(all_nonzero(system.apply(scores)) for system in inst.systems)


def is_dual_solution(inst, cert):
    return is_dual_feasible(inst, cert) and dual_objective(inst, cert) == 0
