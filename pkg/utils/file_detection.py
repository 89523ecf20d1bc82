"""Input format detection for puzzle, board and certificate files."""
import re

_COMPACT = re.compile(r"^[1-9.]{81}$")
_CERTIFICATE_LINE = re.compile(r"^[+-]+$")


def _content_lines(text):
    return [line.strip() for line in text.splitlines() if line.strip() and not line.strip().startswith("#")]


def detect_type(text):
    """
    Detect which file format a text holds.
    
    Args:
        text: File contents
        
    Returns:
        str: 'puzzle' (n= header), 'compact' (one 81-character line),
             'certificate' (lines of + and -), or 'unknown'
    """
    lines = _content_lines(text)
    if not lines:
        return "unknown"
    
    if lines[0].replace(" ", "").startswith("n="):
        return "puzzle"
    
    if len(lines) == 1 and _COMPACT.match(lines[0]):
        return "compact"
    
    if all(_CERTIFICATE_LINE.match(line) for line in lines):
        return "certificate"
    
    return "unknown"


def is_board_format(kind):
    """Puzzle and compact files both carry a board."""
    return kind in ("puzzle", "compact")
