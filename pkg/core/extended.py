"""Integers extended by a single INF token marking an empty cell.

INF is a placeholder for "nothing", not a large number: it absorbs addition,
is annihilated by a zero factor and is unequal to every integer.
"""
from typing import Union


class _Infinity:
    """Singleton type of the INF token."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    # INF differs from everything, itself included (see ext_eq).
    # Containers still compare equal by identity, so boards compare sanely.
    def __eq__(self, other):
        return False

    def __ne__(self, other):
        return True

    def __hash__(self):
        return hash("INF")

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

ExtInt = Union[int, _Infinity]


def is_inf(value):
    """Return True if value is the INF token."""
    return value is INF


def ext_add(a, b):
    """
    Add two extended integers.
    
    Args:
        a: int or INF
        b: int or INF
        
    Returns:
        INF if either operand is INF, otherwise a + b
    """
    if a is INF or b is INF:
        return INF
    return a + b


def ext_mul(a, b):
    """
    Multiply a finite coefficient with an extended integer.
    
    Args:
        a: finite int (a matrix coefficient)
        b: int or INF
        
    Returns:
        0 when a == 0 (even for INF), INF when b is INF, otherwise a * b
    """
    if a is INF:
        raise TypeError("ext_mul expects a finite coefficient")
    if a == 0:
        return 0
    if b is INF:
        return INF
    return a * b


def ext_eq(a, b):
    """Equality on extended integers; INF is equal to nothing, not even INF."""
    if a is INF or b is INF:
        return False
    return a == b


def is_nonzero(value):
    """INF counts as nonzero."""
    return value is INF or value != 0
