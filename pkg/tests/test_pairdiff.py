"""Pair-difference operators, permutations and their algebraic properties."""
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core.errors import ConstructionError, DomainError
from core.extended import INF
from core.pairdiff import (
    GroupSystem,
    Permutation,
    all_nonzero,
    diagonal_perm,
    dump_matrix,
    group_apply,
    group_apply_transpose,
    pair_apply_transpose,
    pair_rows,
    sgn_vec,
    standard_perms,
    triangular_size,
)


@st.composite
def systems(draw, max_n=5):
    n = draw(st.integers(2, max_n))
    cells = draw(st.permutations(range(n * n)))
    return GroupSystem(n, Permutation(tuple(cells)))


@st.composite
def system_and_signs(draw):
    system = draw(systems())
    lam = draw(st.lists(st.sampled_from((-1, 1)), min_size=system.row_count, max_size=system.row_count))
    return system, tuple(lam)


@pytest.mark.parametrize("n, expected", [(1, 0), (2, 1), (3, 3), (4, 6), (9, 36)])
def test_triangular_size(n, expected):
    assert triangular_size(n) == expected


@pytest.mark.parametrize("n", [0, -3])
def test_triangular_size_rejects_small(n):
    with pytest.raises(DomainError):
        triangular_size(n)


@pytest.mark.parametrize(
    "n, expected",
    [
        (1, []),
        (2, [(0, 1)]),
        (3, [(0, 1), (0, 2), (1, 2)]),
    ],
)
def test_pair_rows(n, expected):
    assert pair_rows(n) == expected


@pytest.mark.parametrize(
    "y, expected",
    [
        ((3, -2), (1, -1)),
        ((-1, -1, -1), (-1, -1, -1)),
        ((1, 2, -5, 4, 9, -3), (1, 1, -1, 1, 1, -1)),
    ],
)
def test_sgn_vec(y, expected):
    assert sgn_vec(y) == expected


@pytest.mark.parametrize("y", [(1, 0), (INF, 2)])
def test_sgn_vec_rejects_zero_and_inf(y):
    with pytest.raises(DomainError):
        sgn_vec(y)


@pytest.mark.parametrize(
    "y, expected",
    [
        ((1, -1, INF), True),
        ((1, 0), False),
        ((), True),
    ],
)
def test_all_nonzero(y, expected):
    assert all_nonzero(y) is expected


@pytest.mark.parametrize(
    "x, expected",
    [
        ((1, 2, 2, 1), (-1, 1)),
        ((1, INF, 2, 1), (INF, 1)),
    ],
)
def test_group_apply_n2(x, expected):
    system = GroupSystem(2, Permutation.identity(4))
    result = group_apply(system, x)
    assert len(result) == len(expected)
    for got, want in zip(result, expected):
        assert got is want if want is INF else got == want


def test_group_apply_first_group_n4():
    x = (3, 4, 1, 2) + (1,) * 12
    result = group_apply(GroupSystem(4, Permutation.identity(16)), x)
    assert result[:6] == (-1, 2, 1, 3, 2, -1)


def test_group_apply_transpose_n2():
    system = GroupSystem(2, Permutation.identity(4))
    assert group_apply_transpose(system, (1, -1)) == (1, -1, -1, 1)


@pytest.mark.parametrize(
    "lam, expected",
    [
        ((1, 1, 1, 1, 1, 1), (3, 1, -1, -3)),
        ((-1, 1, 1, 1, 1, -1), (1, 3, -3, -1)),
    ],
)
def test_pair_apply_transpose_single_group(lam, expected):
    assert pair_apply_transpose(4, lam) == expected


def test_length_mismatch_is_domain_error():
    system = GroupSystem(2, Permutation.identity(4))
    with pytest.raises(DomainError):
        system.apply((1, 2, 3))
    with pytest.raises(DomainError):
        system.apply_transpose((1, -1, 1))
    with pytest.raises(DomainError):
        system.apply_transpose((1, INF))


def test_standard_perms_n2():
    rows, columns, blocks = standard_perms(2)
    assert rows.to_one_based() == (1, 2, 3, 4)
    assert columns.to_one_based() == (1, 3, 2, 4)
    assert blocks is None


def test_standard_perms_blocks():
    _, _, blocks4 = standard_perms(4)
    assert set(blocks4.cells[:4]) == {0, 1, 4, 5}
    _, _, blocks9 = standard_perms(9)
    assert set(blocks9.cells[:9]) == {0, 1, 2, 9, 10, 11, 18, 19, 20}


def test_standard_perms_rejects_small():
    with pytest.raises(DomainError):
        standard_perms(1)


def test_diagonal_perm_groups_hit_every_row_and_column():
    n = 3
    for cells in GroupSystem(n, diagonal_perm(n)).groups():
        assert sorted(c // n for c in cells) == [0, 1, 2]
        assert sorted(c % n for c in cells) == [0, 1, 2]


@pytest.mark.parametrize(
    "cells",
    [
        (0, 0, 1, 2),
        (0, 1, 2, 4),
        (-1, 0, 1, 2),
        (0.9, 1.2, 2.5, 3.1),
        (0.0, 1.0, 2.0, 3.0),
        (True, False, 2, 3),
        ("0", "1", "2", "3"),
    ],
)
def test_permutation_rejects_invalid_cells(cells):
    with pytest.raises(ConstructionError):
        Permutation(cells)


def test_permutation_accepts_numpy_integers():
    perm = Permutation(tuple(np.arange(4)[::-1]))
    assert perm.cells == (3, 2, 1, 0)
    assert all(type(cell) is int for cell in perm.cells)


@given(st.integers(1, 6).flatmap(lambda n: st.permutations(range(n * n))))
def test_permutation_inverse(cells):
    perm = Permutation(tuple(cells))
    inverse = perm.inverse()
    assert all(inverse[perm[slot]] == slot for slot in range(len(perm)))
    assert Permutation.from_one_based(perm.to_one_based()) == perm


@given(systems(max_n=9))
def test_ones_are_in_the_kernel(system):
    ones = (1,) * (system.n * system.n)
    assert all(v == 0 for v in system.apply(ones))


@given(system_and_signs(), st.data())
def test_adjointness(pair, data):
    system, lam = pair
    size = system.n * system.n
    x = data.draw(st.lists(st.integers(-20, 20), min_size=size, max_size=size))
    lhs = sum(a * b for a, b in zip(system.apply(x), lam))
    rhs = sum(a * b for a, b in zip(x, system.apply_transpose(lam)))
    assert lhs == rhs


@given(system_and_signs())
def test_scores_are_bounded_and_share_parity(pair):
    system, lam = pair
    n = system.n
    for score in system.apply_transpose(lam):
        assert -(n - 1) <= score <= n - 1
        assert (score + n + 1) % 2 == 0


@pytest.mark.parametrize("n", [2, 3])
def test_score_bound_exhaustive(n):
    rows, columns, _ = standard_perms(n)
    width = n * triangular_size(n)
    for perm in (rows, columns, diagonal_perm(n)):
        system = GroupSystem(n, perm)
        for lam in product((-1, 1), repeat=width):
            assert all(abs(s) <= n - 1 for s in system.apply_transpose(lam))


def test_score_bound_batches_at_n9():
    rng = np.random.default_rng(20240917)
    for perm in standard_perms(9):
        system = GroupSystem(9, perm)
        lams = rng.integers(0, 2, size=(100_000, system.row_count), dtype=np.int8) * 2 - 1
        scores = system.apply_transpose_many(lams)
        assert np.abs(scores).max() <= 8
        assert np.all((scores + 10) % 2 == 0)


def test_apply_transpose_many_matches_single(reference_certificate):
    system = GroupSystem(4, standard_perms(4)[1])
    batch = system.apply_transpose_many([reference_certificate.lam])
    assert tuple(batch[0].tolist()) == system.apply_transpose(reference_certificate.lam)


def test_dense_matrix_shape_and_rows():
    system = GroupSystem(3, standard_perms(3)[1])
    dense = system.to_dense()
    assert dense.shape == (9, 9)
    assert dense.dtype == np.int8
    assert np.all(dense.sum(axis=1) == 0)
    assert np.all(np.abs(dense).sum(axis=1) == 2)


def test_dump_matrix_n2():
    text = dump_matrix(GroupSystem(2, Permutation.identity(4)))
    assert text == "+1 -1 0 0\n0 0 +1 -1"
