"""Puzzle and certificate text formats."""
import pytest
from hypothesis import given, settings, strategies as st

from core.errors import PuzzleParseError
from core.extended import INF
from core.pairdiff import Permutation, diagonal_perm, standard_perms, triangular_size
from core.problems import DualCertificate, make_primal
from utils.file_detection import detect_type, is_board_format
from utils.file_formats import (
    emit_certificate,
    emit_puzzle,
    format_board,
    parse_certificate,
    parse_puzzle,
)

REFERENCE_PUZZLE = "n=4\n3 4 1 2\n2 1 3 4\n1 2 4 3\n4 3 2 1\n"


@st.composite
def puzzles(draw, n):
    """Random consistent-or-not puzzles; the parser only checks ranges."""
    cells = draw(st.lists(st.one_of(st.just(INF), st.integers(1, n)), min_size=n * n, max_size=n * n))
    rows, columns, blocks = standard_perms(n)
    if blocks is None:
        blocks = rows if n == 2 else diagonal_perm(n)
    if n == 3 and draw(st.booleans()):
        blocks = Permutation(tuple(draw(st.permutations(range(9)))))
    givens = [(i, v) for i, v in enumerate(cells) if v is not INF]
    return make_primal(n, (rows, columns, blocks), givens), tuple(cells)


@st.composite
def certificates(draw, n):
    width = n * triangular_size(n)
    lam = draw(st.lists(st.sampled_from((-1, 1)), min_size=width, max_size=width))
    return DualCertificate(n, tuple(lam))


@pytest.mark.parametrize(
    "text, kind",
    [
        ("n=2\n1 .\n. .", "puzzle"),
        ("# comment\n n = 4\n", "puzzle"),
        ("." * 80 + "1", "compact"),
        ("-\n+", "certificate"),
        ("hello", "unknown"),
        ("", "unknown"),
    ],
)
def test_detect_type(text, kind):
    assert detect_type(text) == kind


def test_board_formats():
    assert is_board_format("puzzle") and is_board_format("compact")
    assert not is_board_format("certificate")


def test_parse_small_puzzle():
    inst, board = parse_puzzle("n=2\n1 .\n. .")
    assert inst.givens == ((0, 1),)
    assert board[0] == 1
    assert all(v is INF for v in board[1:])


def test_parse_reference_puzzle():
    inst, board = parse_puzzle(REFERENCE_PUZZLE)
    assert inst.k == 16
    assert board[:4] == (3, 4, 1, 2)


def test_parse_compact_puzzle(hard_puzzle_text):
    inst, board = parse_puzzle(hard_puzzle_text)
    assert inst.n == 9
    assert inst.given_map()[7] == 1
    assert board[9] == 4


def test_parse_permutation_lines():
    perm3 = " ".join(str(c) for c in diagonal_perm(3).to_one_based())
    inst, _ = parse_puzzle(f"n=3\nperm3={perm3}\n1 . .\n. . .\n. . .")
    assert inst.perms[2] == diagonal_perm(3)


@pytest.mark.parametrize(
    "text, line",
    [
        ("n=3\n1 . .\n. . .\n. . .", 1),
        ("n=2\n1 .\n. 3", 3),
        ("n=2\n1 . .\n. .", 2),
        ("n=2\n1 x\n. .", 2),
        ("n=2\n1 .", 2),
        ("n=2\nperm2=1 2 3\n1 .\n. .", 2),
        ("n=2\nperm2=1 1 2 3\n1 .\n. .", 2),
        ("n=2\ncolour=red\n1 .\n. .", 2),
        ("size 2\n1 .\n. .", 1),
        ("n=2\n1 ²\n. .", 2),
        ("n=²\n1 .\n. .", 1),
        ("n=2\nperm2=1 2 3 ⁴\n1 .\n. .", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(PuzzleParseError) as info:
        parse_puzzle(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}")


def test_parse_error_column():
    with pytest.raises(PuzzleParseError) as info:
        parse_puzzle("n=2\n1 .\n. 3")
    assert info.value.column == 2


def test_format_board():
    assert format_board((1, INF, INF, 2), 2) == "1 .\n. 2"


def test_emit_reference_certificate(reference_certificate):
    assert emit_certificate(reference_certificate) == "-++++-\n+-----\n-----+\n++++++"


def test_emit_small_certificate():
    assert emit_certificate(DualCertificate(2, (-1, 1))) == "-\n+"


@pytest.mark.parametrize(
    "text, n",
    [
        ("-\n", None),
        ("--\n+\n", 2),
        ("+\n-\n+", 2),
        ("-\n*", 2),
    ],
)
def test_parse_certificate_errors(text, n):
    with pytest.raises(PuzzleParseError):
        parse_certificate(text, n)


ROUNDTRIP_SIZES = [2, 3, 4, 9]


@pytest.mark.parametrize("n", ROUNDTRIP_SIZES)
@settings(max_examples=1000, deadline=None)
@given(data=st.data())
def test_certificate_text_roundtrip(n, data):
    cert = data.draw(certificates(n))
    assert parse_certificate(emit_certificate(cert)) == cert
    assert parse_certificate(emit_certificate(cert), n) == cert


@pytest.mark.parametrize("n", ROUNDTRIP_SIZES)
@settings(max_examples=1000, deadline=None)
@given(data=st.data())
def test_puzzle_text_roundtrip(n, data):
    inst, board = data.draw(puzzles(n))
    parsed, parsed_board = parse_puzzle(emit_puzzle(inst, board))
    assert parsed == inst
    assert parsed_board == board
