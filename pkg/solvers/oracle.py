"""Exhaustive ground truth for small boards, independent of the solver.

Primal optima come from enumerating extended boards (n = 2) or from an
index-order search over partial boards (n <= 4). Dual optima come from raw
enumeration of {-1, +1} vectors (n <= 3) or from enumerating, per row group,
only the sign patterns of permutations (n <= 4).
"""
import logging
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import NamedTuple

import numpy as np

from core.errors import CapabilityError, InvariantViolation
from core.extended import INF
from core.pairdiff import Permutation, pair_apply, sgn_vec, standard_perms, triangular_size
from core.problems import (
    DualCertificate,
    Verdict,
    board_from_givens,
    dual_objective,
    is_dual_feasible,
    is_primal_feasible,
    make_primal,
)

logger = logging.getLogger(__name__)

UNSOLVABLE = Verdict.UNSOLVABLE

MAX_ORACLE_N = 4
RAW_PRIMAL_N_LIMIT = 3
RAW_DUAL_BITS_LIMIT = 9


class Optimum(NamedTuple):
    """An optimal value together with one point attaining it."""

    value: int
    witness: object


def _require(n, limit, what):
    if n > limit:
        raise CapabilityError(f"{what} supports n <= {limit}, got n={n}")


def enumerate_boards(n, complete=False):
    """All boards with cells in 1..n (and INF unless complete)."""
    values = tuple(range(1, n + 1)) if complete else tuple(range(1, n + 1)) + (INF,)
    return product(values, repeat=n * n)


def enumerate_certificates(n):
    """All {-1, +1} vectors of length n * s(n), in lexicographic order."""
    for lam in product((-1, 1), repeat=n * triangular_size(n)):
        yield DualCertificate(n, lam)


def transitive_patterns(n):
    """
    Sign patterns of A(n) p over all permutations p of 1..n.

    Returns:
        list: (pattern, p) pairs; pattern has s(n) entries of +1 / -1
    """
    return [(sgn_vec(pair_apply(p)), p) for p in permutations(range(1, n + 1))]


# Primal side

def _enumerate_primal(inst):
    """Raw enumeration, by increasing number of empty cells."""
    given = inst.given_map()
    free = [i for i in range(inst.n_cells) if i not in given]
    base = list(board_from_givens(inst))

    for empty in range(len(free) + 1):
        for holes in combinations(free, empty):
            filled = [i for i in free if i not in holes]
            for values in product(range(1, inst.n + 1), repeat=len(filled)):
                board = list(base)
                for cell, value in zip(filled, values):
                    board[cell] = value
                board = tuple(board)
                if is_primal_feasible(inst, board):
                    return Optimum(empty, board)
    return UNSOLVABLE


def _search_primal(inst):
    """Index-order search over partial boards with a bound on empty cells."""
    n, size = inst.n, inst.n_cells
    given = inst.given_map()

    if not is_primal_feasible(inst, board_from_givens(inst)):
        return UNSOLVABLE

    board = [INF] * size
    best = [size + 1, None]

    def consistent(cell):
        used = {board[p] for p in inst.peers[cell] if board[p] is not INF}
        if cell in given:
            return [given[cell]] if given[cell] not in used else []
        return [v for v in range(1, n + 1) if v not in used]

    def visit(cell, empty):
        if cell == size:
            if empty < best[0]:
                best[0], best[1] = empty, tuple(board)
            return
        # Later free cells that already have no value left must stay empty
        forced = sum(
            1 for later in range(cell + 1, size)
            if later not in given and not consistent(later)
        )
        if empty + forced >= best[0]:
            return
        for value in consistent(cell):
            board[cell] = value
            visit(cell + 1, empty)
            board[cell] = INF
        if cell not in given:
            visit(cell + 1, empty + 1)

    visit(0, 0)
    if best[1] is None:
        raise InvariantViolation("consistent givens must leave a feasible board")
    return Optimum(best[0], best[1])


def primal_optimum(inst, method="auto"):
    """
    Exact minimum number of empty cells over the primal feasible set.

    Args:
        inst: PrimalInstance
        method: "enumerate" (n <= 3), "search" (n <= 4) or "auto"

    Returns:
        Optimum(value, board), or UNSOLVABLE if the feasible set is empty
    """
    if method == "auto":
        method = "enumerate" if inst.n <= 2 else "search"
    if method == "enumerate":
        _require(inst.n, RAW_PRIMAL_N_LIMIT, "primal enumeration")
        return _enumerate_primal(inst)
    if method == "search":
        _require(inst.n, MAX_ORACLE_N, "primal search")
        return _search_primal(inst)
    raise ValueError(f"unknown primal oracle method {method!r}")


def exact_primal_value(inst, method="auto"):
    result = primal_optimum(inst, method)
    return result if result is UNSOLVABLE else result.value


def complete_feasible_boards(inst):
    """Every complete board in the primal feasible set (n <= 4)."""
    _require(inst.n, MAX_ORACLE_N, "completion enumeration")
    n, size = inst.n, inst.n_cells
    given = inst.given_map()
    board = [INF] * size
    found = []

    def visit(cell):
        if cell == size:
            found.append(tuple(board))
            return
        used = {board[p] for p in inst.peers[cell] if board[p] is not INF}
        values = [given[cell]] if cell in given else range(1, n + 1)
        for value in values:
            if value not in used:
                board[cell] = value
                visit(cell + 1)
                board[cell] = INF

    visit(0)
    return found


# Dual side

def _raw_dual_set(inst):
    _require(inst.n * triangular_size(inst.n), RAW_DUAL_BITS_LIMIT, "raw dual enumeration (bits)")
    return [cert for cert in enumerate_certificates(inst.n) if is_dual_feasible(inst, cert)]


def _per_group_dual_set(inst):
    """Row groups range over permutation sign patterns; prune on repeated values."""
    _require(inst.n, MAX_ORACLE_N, "per-group dual enumeration")
    n = inst.n
    row_groups = inst.systems[0].groups()
    other_units = [cells for family, _, cells in inst.units if family > 0]
    patterns = transitive_patterns(n)
    board = [INF] * inst.n_cells
    chosen = []
    found = []

    def distinct_so_far():
        for cells in other_units:
            known = [board[c] for c in cells if board[c] is not INF]
            if len(known) != len(set(known)):
                return False
        return True

    def visit(g):
        if g == n:
            cert = DualCertificate(n, tuple(v for pattern in chosen for v in pattern))
            if not is_dual_feasible(inst, cert):
                raise InvariantViolation(f"per-group enumeration produced an infeasible certificate {cert.lam}")
            found.append(cert)
            return
        cells = row_groups[g]
        for pattern, ranks in patterns:
            for cell, rank in zip(cells, ranks):
                board[cell] = rank
            if distinct_so_far():
                chosen.append(pattern)
                visit(g + 1)
                chosen.pop()
        for cell in cells:
            board[cell] = INF

    visit(0)
    return found


def _dual_set(inst, method):
    if method == "auto":
        bits = inst.n * triangular_size(inst.n)
        method = "raw" if bits <= RAW_DUAL_BITS_LIMIT else "per_group"
    if method == "raw":
        found = _raw_dual_set(inst)
    elif method == "per_group":
        found = _per_group_dual_set(inst)
    else:
        raise ValueError(f"unknown dual oracle method {method!r}")
    return tuple(sorted(found, key=lambda cert: cert.lam))


@lru_cache(maxsize=64)
def dual_feasible_set(n, perms, method="auto"):
    """
    The dual feasible set for a board size and permutation triple.

    Givens do not enter dual feasibility, so the set is shared by every
    instance with the same n and permutations.

    Returns:
        tuple: DualCertificates sorted by their sign vector
    """
    found = _dual_set(make_primal(n, perms), method)
    logger.debug("dual feasible set for n=%d (%s): %d certificates", n, method, len(found))
    return found


def dual_optimum(inst, method="auto"):
    """
    Exact maximum of the dual objective over the dual feasible set.

    Returns:
        Optimum(value, certificate), or UNSOLVABLE if the set is empty
    """
    best = None
    for cert in dual_feasible_set(inst.n, inst.perms, method):
        value = dual_objective(inst, cert)
        if best is None or value > best.value:
            best = Optimum(value, cert)
            if value == 0:
                break
    return UNSOLVABLE if best is None else best


def exact_dual_value(inst, method="auto"):
    result = dual_optimum(inst, method)
    return result if result is UNSOLVABLE else result.value


def find_empty_dual_pi3(n, seed=0, attempts=500):
    """
    Search for a third permutation that leaves the dual feasible set empty.

    Rows and columns stay standard. All permutations are tried at n = 2,
    seeded random ones at n = 3.

    Returns:
        Permutation, or None if none was found
    """
    _require(n, 3, "empty dual search")
    rows, columns, _ = standard_perms(n)
    if n == 2:
        candidates = (Permutation(p) for p in permutations(range(n * n)))
    else:
        rng = np.random.default_rng(seed)
        candidates = (Permutation(tuple(rng.permutation(n * n).tolist())) for _ in range(attempts))

    for pi3 in candidates:
        inst = make_primal(n, (rows, columns, pi3))
        if not _per_group_dual_set(inst):
            logger.info("empty dual feasible set for pi3=%s", pi3.to_one_based())
            return pi3
    return None
