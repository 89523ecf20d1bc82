"""Board <-> certificate transforms and gap reports."""
import pytest
from hypothesis import given, strategies as st

from core.duality import describe_primalization, dual_to_primal, gap_report, primal_to_dual
from core.errors import DomainError, InvariantViolation
from core.extended import INF
from core.pairdiff import standard_perms
from core.problems import DualCertificate, Verdict, board_from_rows, is_dual_solution, make_primal


def test_reference_grid_dualizes_to_reference_certificate(empty4, reference_board, reference_certificate):
    assert primal_to_dual(empty4, reference_board) == reference_certificate


def test_reference_certificate_primalizes_to_reference_grid(empty4, reference_board, reference_certificate):
    board = dual_to_primal(empty4, reference_certificate)
    assert board == reference_board
    assert board[:2] == (3, 4)


def test_primal_to_dual_n2(n2_empty):
    assert primal_to_dual(n2_empty, (1, 2, 2, 1)).lam == (-1, 1)


@pytest.mark.parametrize("board", [(1, 1, 2, 1), (1, INF, 2, 1), (1, 2, 1)])
def test_primal_to_dual_preconditions(n2_empty, board):
    with pytest.raises(DomainError):
        primal_to_dual(n2_empty, board)


@pytest.mark.parametrize(
    "lam, expected",
    [
        ((-1, 1), (1, 2, 2, 1)),
        ((1, 1), (2, 1, 2, 1)),
    ],
)
def test_dual_to_primal_n2(n2_empty, lam, expected):
    assert dual_to_primal(n2_empty, DualCertificate(2, lam)) == expected


def test_describe_primalization_flags(n2_empty):
    good = describe_primalization(n2_empty, DualCertificate(2, (-1, 1)))
    assert good.dual_feasible and good.in_range and good.solves_primal
    bad = describe_primalization(n2_empty, DualCertificate(2, (1, 1)))
    assert bad.in_range
    assert not bad.dual_feasible
    assert not bad.solves_primal


@given(st.permutations(range(1, 5)), st.permutations(range(1, 5)))
def test_row_permutations_roundtrip(first, second):
    # Any board whose rows are permutations has a sign certificate that maps back to it
    rows, columns, blocks = standard_perms(4)
    inst = make_primal(4, (rows, columns, blocks))
    board = board_from_rows((first, second, first, second))
    assert dual_to_primal(inst, primal_to_dual(inst, board)) == board


def test_solution_certificate_solves_dual_with_givens(reference_board):
    inst = make_primal(4, givens=[(0, 3), (5, 1), (15, 1)])
    assert is_dual_solution(inst, primal_to_dual(inst, reference_board))


@pytest.mark.parametrize(
    "primal, dual, gap",
    [
        (0, 0, 0),
        (2, 0, 2),
        (3, -1, 4),
    ],
)
def test_gap_report_values(primal, dual, gap):
    report = gap_report(primal, dual)
    assert report.gap == gap
    assert report.strong_duality is (gap == 0)
    assert report.notes


@pytest.mark.parametrize(
    "primal, dual",
    [
        (Verdict.UNSOLVABLE, 0),
        (Verdict.INFEASIBLE, -1),
        (2, Verdict.UNSOLVABLE),
    ],
)
def test_gap_report_undefined_on_empty_sets(primal, dual):
    report = gap_report(primal, dual)
    assert report.gap is None
    assert not report.strong_duality
    assert any("empty" in note for note in report.notes)


@pytest.mark.parametrize("primal, dual", [(-1, 0), (0, 1)])
def test_gap_report_rejects_impossible_values(primal, dual):
    with pytest.raises(InvariantViolation):
        gap_report(primal, dual)
