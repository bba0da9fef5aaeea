"""Global scalar precision profile.

Two profiles exist: ``"double"`` (IEEE binary64) and ``"extended"`` (the
platform ``long double``; 64-bit mantissa on x86-64, about 19.3 decimal
digits).  Every routine in the package converts its inputs through
:func:`real`, so switching the profile switches the arithmetic everywhere.
"""

from contextlib import contextmanager
import math

import numpy as np

PROFILES = {"double": np.float64, "extended": np.longdouble}

# Divider band half-width per profile.
_DIVIDER_EPS = {"double": 1e-12, "extended": 1e-17}

_state = {"name": "double"}


def set_precision(name):
    if name not in PROFILES:
        raise ValueError(f"unknown precision profile {name!r}; expected one of {sorted(PROFILES)}")
    if name == "extended" and np.finfo(np.longdouble).nmant < 63:
        raise RuntimeError("extended profile needs a long double with at least 64 mantissa bits")
    _state["name"] = name


def get_precision():
    return _state["name"]


@contextmanager
def precision(name):
    """Temporarily switch the profile inside a ``with`` block."""
    previous = _state["name"]
    set_precision(name)
    try:
        yield
    finally:
        _state["name"] = previous


def dtype():
    return PROFILES[_state["name"]]


def real(value):
    """Convert ``value`` (number or decimal string) to the active scalar type.

    Strings are parsed directly by the target type, so digits beyond double
    precision survive under the extended profile.
    """
    return dtype()(value)


def asarray(values):
    return np.asarray(values, dtype=dtype())


def divider_eps():
    return _DIVIDER_EPS[_state["name"]]


def significant_digits():
    """Decimal digits carried by the active scalar (mantissa bits * log10 2)."""
    return (np.finfo(dtype()).nmant + 1) * math.log10(2.0)
