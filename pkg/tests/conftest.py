"""Shared fixtures: small instances and the 4 x 4 reference grid."""
import pytest

from core.pairdiff import standard_perms
from core.problems import DualCertificate, board_from_rows, make_primal

REFERENCE_ROWS = (
    (3, 4, 1, 2),
    (2, 1, 3, 4),
    (1, 2, 4, 3),
    (4, 3, 2, 1),
)

REFERENCE_CERTIFICATE_TEXT = "-++++-\n+-----\n-----+\n++++++"

HARD_17_GIVENS = (
    "000000010400000000020000000000050407"
    "008000300001090000300400200050100000000806000"
)


def certificate_from_text(n, text):
    lam = tuple(1 if ch == "+" else -1 for ch in text if ch in "+-")
    return DualCertificate(n, lam)


@pytest.fixture
def n2_perms():
    """Rows, columns and rows again: the usual stand-in third family at n = 2."""
    rows, columns, _ = standard_perms(2)
    return rows, columns, rows


@pytest.fixture
def n2_empty(n2_perms):
    return make_primal(2, n2_perms)


@pytest.fixture
def n2_one_given(n2_perms):
    return make_primal(2, n2_perms, [(0, 1)])


@pytest.fixture
def empty4():
    return make_primal(4)


@pytest.fixture
def reference_board():
    return board_from_rows(REFERENCE_ROWS)


@pytest.fixture
def reference_certificate():
    return certificate_from_text(4, REFERENCE_CERTIFICATE_TEXT)


@pytest.fixture
def hard_puzzle_text():
    return HARD_17_GIVENS.replace("0", ".")
