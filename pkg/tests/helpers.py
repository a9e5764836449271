"""Small shared builders for tests."""
import numpy as np

from krel.scalars import EXACT, parse_scalar
from krel.spaces import krein_space


def mat(rows, ar=EXACT):
    return ar.array([[parse_scalar(x) if isinstance(x, str) else x for x in r] for r in rows])


def columns(cols, ar=EXACT):
    """Matrix whose columns are the given vectors."""
    if not cols:
        return None
    return mat(cols, ar).T.copy()


def space(rows, ar=EXACT, label=""):
    return krein_space(mat(rows, ar), label=label, arithmetic=ar)


def vec(xs, ar=EXACT):
    return ar.array([parse_scalar(x) if isinstance(x, str) else x for x in xs])


def as_complex(a):
    return np.array([[complex(x) for x in row] for row in np.asarray(a)], dtype=complex)
