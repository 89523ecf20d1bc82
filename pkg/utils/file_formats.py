"""Puzzle and certificate file formats.

Puzzle file:
    n=<N>
    perm2=<N*N ints>      optional, 1-based slot -> cell
    perm3=<N*N ints>      optional; required when N is not a perfect square
    N lines of N tokens   integers 1..N or "."

A digit at cell i is both a given and a board value. For N = 9 a single
81-character line of digits 1-9 and "." is accepted as well.

Certificate file: N lines of s(N) characters "+" / "-", one row group per
line, pairs in lexicographic order.
"""
from core.errors import ConstructionError, PuzzleParseError
from core.extended import INF
from core.pairdiff import Permutation, triangular_size
from core.problems import DualCertificate, default_perms, make_primal
from utils.file_detection import detect_type


def _numbered_lines(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _is_number(token):
    """Non-empty run of ASCII digits."""
    return token.isascii() and token.isdigit()


def _parse_cell(token, n, line, column):
    if token == ".":
        return INF
    if not _is_number(token):
        raise PuzzleParseError(f"bad token {token!r}, expected 1..{n} or '.'", line, column)
    value = int(token)
    if not 1 <= value <= n:
        raise PuzzleParseError(f"value {value} outside 1..{n}", line, column)
    return value


def _parse_perm(payload, n, line):
    tokens = payload.replace(",", " ").split()
    if len(tokens) != n * n:
        raise PuzzleParseError(f"permutation needs {n * n} entries, got {len(tokens)}", line)
    for column, token in enumerate(tokens, start=1):
        if not _is_number(token):
            raise PuzzleParseError(f"bad permutation entry {token!r}", line, column)
    try:
        return Permutation.from_one_based(int(t) for t in tokens)
    except ConstructionError as error:
        raise PuzzleParseError(str(error), line) from error


def _build(n, perms, board, line):
    givens = [(i, v) for i, v in enumerate(board) if v is not INF]
    try:
        return make_primal(n, perms, givens), board
    except ConstructionError as error:
        raise PuzzleParseError(str(error), line) from error


def _parse_compact(text):
    number, line = next(_numbered_lines(text))
    board = tuple(INF if ch == "." else int(ch) for ch in line)
    return _build(9, None, board, number)


def parse_puzzle(text):
    """
    Parse a puzzle file.

    Args:
        text: File contents

    Returns:
        tuple: (PrimalInstance, board)
    """
    kind = detect_type(text)
    if kind == "compact":
        return _parse_compact(text)

    lines = list(_numbered_lines(text))
    if not lines:
        raise PuzzleParseError("empty puzzle file")

    number, header = lines[0]
    key, _, value = header.replace(" ", "").partition("=")
    if key != "n" or not _is_number(value):
        raise PuzzleParseError(f"expected header 'n=<N>', got {header!r}", number, 1)
    n = int(value)
    if n < 2:
        raise PuzzleParseError(f"board size must be >= 2, got {n}", number, 1)

    rows, columns, blocks = default_perms(n)
    perms = {"perm2": columns, "perm3": blocks}
    body = []
    for line_number, line in lines[1:]:
        key, sep, payload = line.partition("=")
        if sep and key.strip() in perms:
            perms[key.strip()] = _parse_perm(payload, n, line_number)
        elif sep:
            raise PuzzleParseError(f"unknown setting {key.strip()!r}", line_number, 1)
        else:
            body.append((line_number, line))

    if perms["perm3"] is None:
        raise PuzzleParseError(f"n={n} has no blocks; a perm3 line is required", number)
    if len(body) != n:
        where = body[-1][0] if body else number
        raise PuzzleParseError(f"expected {n} grid rows, got {len(body)}", where)

    board = []
    for line_number, line in body:
        tokens = line.split()
        if len(tokens) != n:
            raise PuzzleParseError(f"expected {n} tokens, got {len(tokens)}", line_number, min(len(tokens), n) + 1)
        for column, token in enumerate(tokens, start=1):
            board.append(_parse_cell(token, n, line_number, column))

    return _build(n, (rows, perms["perm2"], perms["perm3"]), tuple(board), number)


def format_board(board, n):
    """N rows of N space separated tokens, '.' for empty cells."""
    tokens = ["." if v is INF else str(v) for v in board]
    return "\n".join(" ".join(tokens[r * n:(r + 1) * n]) for r in range(n))


def emit_puzzle(inst, board):
    """Inverse of parse_puzzle (header form); non-standard permutations are written out."""
    n = inst.n
    _, columns, blocks = default_perms(n)
    lines = [f"n={n}"]
    if inst.perms[1] != columns:
        lines.append("perm2=" + " ".join(map(str, inst.perms[1].to_one_based())))
    if inst.perms[2] != blocks:
        lines.append("perm3=" + " ".join(map(str, inst.perms[2].to_one_based())))
    lines.append(format_board(board, n))
    return "\n".join(lines)


def parse_certificate(text, n=None):
    """
    Parse a certificate file.

    Args:
        text: File contents
        n: Expected board size; inferred from the line count when None

    Returns:
        DualCertificate
    """
    lines = list(_numbered_lines(text))
    if not lines:
        raise PuzzleParseError("empty certificate file")
    if n is None:
        n = len(lines)
    if n < 2:
        raise PuzzleParseError(f"certificate must have at least 2 lines, got {len(lines)}")

    width = triangular_size(n)
    if len(lines) != n:
        raise PuzzleParseError(f"expected {n} certificate lines, got {len(lines)}", lines[-1][0])

    lam = []
    for line_number, line in lines:
        if len(line) != width:
            raise PuzzleParseError(f"expected {width} signs, got {len(line)}", line_number)
        for column, ch in enumerate(line, start=1):
            if ch not in "+-":
                raise PuzzleParseError(f"bad sign {ch!r}, expected '+' or '-'", line_number, column)
            lam.append(1 if ch == "+" else -1)
    return DualCertificate(n, tuple(lam))


def emit_certificate(cert):
    """One row group per line, '+' / '-' per pair."""
    return "\n".join("".join("+" if v > 0 else "-" for v in group) for group in cert.groups())
