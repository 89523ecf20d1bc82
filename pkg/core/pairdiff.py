"""Pair-difference systems A(n), A and A_pi, evaluated without a matrix.

A(n) has one row per index pair p < q (lexicographic) with +1 in column p
and -1 in column q. A stacks n copies block-diagonally, and A_pi routes
slot i of A to cell perm[i] so that A_pi x = A (x o perm).

The row order (group-major, then lexicographic pairs) is the certificate
wire format and must never change.
"""
import math
import operator
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from core.errors import ConstructionError, DomainError
from core.extended import INF, ext_add, ext_mul, is_nonzero


def triangular_size(n):
    """
    Number of rows of A(n), i.e. 1 + 2 + ... + (n - 1).

    Args:
        n: Group size, n >= 1

    Returns:
        int: n(n - 1) / 2
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"triangular_size needs n >= 1, got {n!r}")
    return n * (n - 1) // 2


def pair_rows(n):
    """
    Row pairs of A(n) in lexicographic order.

    Args:
        n: Group size, n >= 1

    Returns:
        list: (p, q) tuples with 0 <= p < q < n; row r is x_p - x_q
    """
    triangular_size(n)
    return list(combinations(range(n), 2))


def sgn_vec(y):
    """
    Componentwise sign of a vector without zero or INF components.

    Args:
        y: Sequence of nonzero finite integers

    Returns:
        tuple: +1 / -1 per component
    """
    signs = []
    for i, value in enumerate(y):
        if value is INF:
            raise DomainError(f"sgn undefined for INF component at position {i}")
        if value == 0:
            raise DomainError(f"sgn undefined for zero component at position {i}")
        signs.append(1 if value > 0 else -1)
    return tuple(signs)


def all_nonzero(y):
    """True iff no component is zero (INF counts as nonzero)."""
    return all(is_nonzero(value) for value in y)


def pair_apply(values):
    """A(n) applied to one group of n extended values."""
    return tuple(
        ext_add(values[p], ext_mul(-1, values[q]))
        for p, q in pair_rows(len(values))
    )


def pair_apply_transpose(n, lam):
    """A(n)^T applied to s(n) finite components; returns n scores."""
    pairs = pair_rows(n)
    if len(lam) != len(pairs):
        raise DomainError(f"A({n})^T needs {len(pairs)} components, got {len(lam)}")
    scores = [0] * n
    for (p, q), value in zip(pairs, lam):
        scores[p] += value
        scores[q] -= value
    return tuple(scores)


def exact_int(value, what):
    """
    Convert an integral value (int or numpy integer) to int.

    Bools, floats, INF and anything else without __index__ raise
    ConstructionError; no rounding ever happens.
    """
    if isinstance(value, bool):
        raise ConstructionError(f"{what} must be an integer, got bool {value!r}", item=value)
    try:
        return operator.index(value)
    except TypeError:
        raise ConstructionError(f"{what} must be an integer, got {value!r}", item=value) from None


@dataclass(frozen=True)
class Permutation:
    """Bijection slot -> cell on {0, ..., n_cells - 1}."""

    cells: tuple

    def __post_init__(self):
        cells = tuple(exact_int(c, f"slot {slot}") for slot, c in enumerate(self.cells))
        object.__setattr__(self, "cells", cells)
        seen = set()
        for slot, cell in enumerate(cells):
            if not 0 <= cell < len(cells):
                raise ConstructionError(f"slot {slot} maps outside the board: {cell}", item=(slot, cell))
            if cell in seen:
                raise ConstructionError(f"cell {cell} appears twice in permutation", item=(slot, cell))
            seen.add(cell)

    @classmethod
    def identity(cls, n_cells):
        return cls(tuple(range(n_cells)))

    @classmethod
    def from_one_based(cls, cells):
        """Build from the 1-based slot -> cell list used in files."""
        return cls(tuple(exact_int(c, "permutation entry") - 1 for c in cells))

    def to_one_based(self):
        return tuple(c + 1 for c in self.cells)

    def inverse(self):
        inverse = [0] * len(self.cells)
        for slot, cell in enumerate(self.cells):
            inverse[cell] = slot
        return Permutation(tuple(inverse))

    @property
    def n_cells(self):
        return len(self.cells)

    def __len__(self):
        return len(self.cells)

    def __getitem__(self, slot):
        return self.cells[slot]


@dataclass(frozen=True)
class GroupSystem:
    """The matrix A_pi in implicit form.

    Args:
        n: Group size (board is n x n, n groups of n cells)
        perm: Slot -> cell permutation on n * n cells
    """

    n: int
    perm: Permutation

    def __post_init__(self):
        if self.n < 1:
            raise ConstructionError(f"group size must be >= 1, got {self.n}", item=self.n)
        if self.perm.n_cells != self.n * self.n:
            raise ConstructionError(
                f"permutation covers {self.perm.n_cells} cells, board has {self.n * self.n}",
                item=self.perm,
            )

    @cached_property
    def pair_order(self):
        return pair_rows(self.n)

    @property
    def row_count(self):
        return self.n * len(self.pair_order)

    @cached_property
    def _ends(self):
        plus, minus = [], []
        for g in range(self.n):
            base = g * self.n
            for p, q in self.pair_order:
                plus.append(self.perm[base + p])
                minus.append(self.perm[base + q])
        return tuple(plus), tuple(minus)

    def groups(self):
        """Cell tuples of each group, in slot order."""
        n = self.n
        return [tuple(self.perm[g * n + p] for p in range(n)) for g in range(n)]

    def rows(self):
        """(group, p, q) for every implicit row, in wire order."""
        return [(g, p, q) for g in range(self.n) for p, q in self.pair_order]

    def apply(self, x):
        """A_pi x for an extended vector of n * n components."""
        if len(x) != self.n * self.n:
            raise DomainError(f"A_pi needs {self.n * self.n} components, got {len(x)}")
        plus, minus = self._ends
        return tuple(ext_add(x[a], ext_mul(-1, x[b])) for a, b in zip(plus, minus))

    def apply_transpose(self, lam):
        """A_pi^T lam for a finite vector of n * s(n) components."""
        if len(lam) != self.row_count:
            raise DomainError(f"A_pi^T needs {self.row_count} components, got {len(lam)}")
        if any(value is INF for value in lam):
            raise DomainError("A_pi^T is only defined for finite vectors")
        plus, minus = self._ends
        values = np.asarray(lam, dtype=np.int64)
        scores = np.zeros(self.n * self.n, dtype=np.int64)
        np.add.at(scores, list(plus), values)
        np.subtract.at(scores, list(minus), values)
        return tuple(scores.tolist())

    def apply_transpose_many(self, lams, chunk=8192):
        """A_pi^T applied to each row of an (m, n * s(n)) integer array, chunk rows at a time."""
        lams = np.asarray(lams)
        if lams.ndim != 2 or lams.shape[1] != self.row_count:
            raise DomainError(f"expected shape (m, {self.row_count}), got {lams.shape}")
        if not np.issubdtype(lams.dtype, np.integer):
            raise DomainError(f"expected an integer array, got dtype {lams.dtype}")
        dense = self.to_dense().astype(np.float64)
        scores = np.empty((lams.shape[0], self.n * self.n), dtype=np.int64)
        # float64 sums are exact while they stay below 2**53
        for start in range(0, lams.shape[0], chunk):
            block = lams[start:start + chunk].astype(np.float64)
            scores[start:start + chunk] = np.rint(block @ dense)
        return scores

    def to_dense(self):
        """Materialize A_pi as an int8 numpy array (for inspection only)."""
        plus, minus = self._ends
        dense = np.zeros((self.row_count, self.n * self.n), dtype=np.int8)
        rows = np.arange(self.row_count)
        dense[rows, list(plus)] = 1
        dense[rows, list(minus)] = -1
        return dense


def group_apply(system, x):
    return system.apply(x)


def group_apply_transpose(system, lam):
    return system.apply_transpose(lam)


def dump_matrix(system):
    """
    Render A_pi densely, one row per line.

    Args:
        system: GroupSystem to render

    Returns:
        str: Rows of space separated +1 / 0 / -1 tokens, wire order
    """
    tokens = {1: "+1", 0: "0", -1: "-1"}
    lines = [" ".join(tokens[int(v)] for v in row) for row in system.to_dense()]
    return "\n".join(lines)


def standard_perms(n):
    """
    Row, column and block permutations of an n x n board.

    Cell (r, c) is r * n + c. Block slots exist only when n is a perfect
    square; otherwise the third entry is None and the caller must supply one.

    Args:
        n: Board size, n >= 2

    Returns:
        tuple: (rows, columns, blocks or None) as Permutations
    """
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"standard permutations need n >= 2, got {n!r}")

    rows = Permutation.identity(n * n)
    columns = Permutation(tuple(p * n + g for g in range(n) for p in range(n)))

    m = math.isqrt(n)
    if m * m != n:
        return rows, columns, None

    blocks = []
    for g in range(n):
        br, bc = divmod(g, m)
        for p in range(n):
            ir, ic = divmod(p, m)
            blocks.append((br * m + ir) * n + (bc * m + ic))
    return rows, columns, Permutation(tuple(blocks))


def diagonal_perm(n):
    """Broken diagonals: slot (g, p) reads cell (p, (p + g) mod n)."""
    return Permutation(tuple(p * n + (p + g) % n for g in range(n) for p in range(n)))
