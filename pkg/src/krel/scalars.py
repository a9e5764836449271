"""Gaussian-rational scalars and the two arithmetic modes.

Exact mode stores numbers as :class:`Gaussian` values (rational real and
imaginary parts backed by ``gmpy2.mpq``) inside numpy object arrays.  Float
mode uses ``complex128`` arrays and a single absolute tolerance.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np
from gmpy2 import mpq

from .errors import ParseError

__all__ = [
    "Gaussian",
    "Arithmetic",
    "EXACT",
    "float_mode",
    "default_arithmetic",
    "parse_scalar",
    "format_scalar",
    "I",
    "ONE",
    "ZERO",
]

_MPQ = type(mpq(0))


def _q(x) -> mpq:
    if type(x) is _MPQ:
        return x
    if isinstance(x, float):
        return mpq(Fraction(x))
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class Gaussian:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def _make(cls, re, im):
        g = object.__new__(cls)
        g.re = re
        g.im = im
        return g

    @classmethod
    def coerce(cls, x) -> "Gaussian":
        if type(x) is cls:
            return x
        if isinstance(x, (int, Rational, _MPQ)):
            return cls._make(_q(x), mpq(0))
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, float):
            return cls(Fraction(x), 0)
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, np.generic):
            return cls.coerce(x.item())
        raise TypeError(f"cannot convert {type(x).__name__} to Gaussian")

    # arithmetic -----------------------------------------------------------
    def _other(self, o):
        if type(o) is Gaussian:
            return o
        if isinstance(o, (int, _MPQ, Fraction)):
            return Gaussian._make(_q(o), mpq(0))
        return None

    def __add__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return Gaussian._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return Gaussian._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return Gaussian._make(o.re - self.re, o.im - self.im)

    def __mul__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return Gaussian._make(a * c, b)
        return Gaussian._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        c, d = o.re, o.im
        if not d:
            if not c:
                raise ZeroDivisionError("division by zero Gaussian")
            return Gaussian._make(self.re / c, self.im / c)
        n = c * c + d * d
        a, b = self.re, self.im
        return Gaussian._make((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Gaussian._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return Gaussian._make(mpq(1), mpq(0)) / (self ** (-n))
        out = Gaussian._make(mpq(1), mpq(0))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return Gaussian._make(self.re, -self.im)

    def norm(self) -> mpq:
        """Squared modulus ``|z|^2`` (exact)."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return float(self.norm()) ** 0.5

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        if type(o) is Gaussian:
            return self.re == o.re and self.im == o.im
        if isinstance(o, (int, _MPQ, Fraction)):
            return not self.im and self.re == o
        if isinstance(o, complex):
            return complex(self) == o
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(Fraction(int(self.re.numerator), int(self.re.denominator)))
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"Gaussian({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = Gaussian(0)
ONE = Gaussian(1)
I = Gaussian(0, 1)


# text encoding --------------------------------------------------------------

def _fmt_q(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(z) -> str:
    """Encode a scalar as ``"a/b+c/d*i"`` (rationals in lowest terms).

    Float scalars are written with ``repr`` precision in the same layout.
    """
    if isinstance(z, Gaussian):
        re_s = _fmt_q(z.re)
        im = z.im
        sign = "-" if im < 0 else "+"
        return f"{re_s}{sign}{_fmt_q(abs(im))}*i"
    z = complex(z)
    sign = "-" if z.imag < 0 or (z.imag == 0 and str(z.imag).startswith("-")) else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}*i"


_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?"
_TERM = re.compile(rf"\s*([+-]?)\s*({_NUM})?\s*(\*?\s*[ij])?\s*")


def _parse_num(s: str) -> Fraction:
    if "/" in s:
        a, b = s.split("/")
        den = Fraction(b)
        if den == 0:
            raise ParseError(f"zero denominator in {s!r}")
        return Fraction(a) / den
    return Fraction(s)


def parse_scalar(text) -> Gaussian:
    """Parse ``"a/b+c/d*i"`` and common variants (``"i"``, ``"-2"``, ``"1.5-i"``).

    Decimal literals are converted to exact rationals.
    """
    if isinstance(text, Gaussian):
        return text
    if isinstance(text, (int, Fraction)):
        return Gaussian(text)
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string, got {type(text).__name__}")
    s = text.strip()
    if not s:
        raise ParseError("empty scalar")
    pos = 0
    re_part = Fraction(0)
    im_part = Fraction(0)
    seen = False
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ParseError(f"cannot parse scalar {text!r}")
        if seen and not m.group(1):
            raise ParseError(f"missing sign between terms in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        val = _parse_num(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            im_part += sign * val
        else:
            if m.group(3) is None and m.group(2) is None:
                raise ParseError(f"cannot parse scalar {text!r}")
            re_part += sign * val
        seen = True
        pos = m.end()
    return Gaussian(re_part, im_part)


# arithmetic modes -----------------------------------------------------------

@dataclass(frozen=True)
class Arithmetic:
    """Arithmetic mode: exact Gaussian rationals or ``complex128`` with tolerance ``eps``."""

    exact: bool = True
    eps: float = 1e-9

    @property
    def name(self) -> str:
        return "exact" if self.exact else "float"

    @property
    def dtype(self):
        return object if self.exact else np.complex128

    def scalar(self, x):
        if self.exact:
            return Gaussian.coerce(x)
        if isinstance(x, str):
            x = parse_scalar(x)
        return complex(x)

    def array(self, data, shape=None) -> np.ndarray:
        """Build a matrix of this mode from nested data."""
        if self.exact:
            arr = np.asarray(data, dtype=object)
            if shape is not None:
                arr = arr.reshape(shape)
            out = np.empty(arr.shape, dtype=object)
            flat_in = arr.ravel()
            flat_out = out.ravel()
            for k in range(flat_in.size):
                flat_out[k] = Gaussian.coerce(flat_in[k])
            return out
        if not (isinstance(data, np.ndarray) and data.dtype != object):
            data = np.asarray(data, dtype=object)
        if data.dtype == object:
            arr = np.vectorize(self.scalar, otypes=[np.complex128])(data) if data.size else data.astype(np.complex128)
        else:
            arr = np.array(data, dtype=np.complex128)
        if shape is not None:
            arr = arr.reshape(shape)
        return arr

    def zeros(self, n: int, m: int) -> np.ndarray:
        if self.exact:
            out = np.empty((n, m), dtype=object)
            out.fill(ZERO)
            return out
        return np.zeros((n, m), dtype=np.complex128)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for k in range(n):
            out[k, k] = ONE if self.exact else 1.0
        return out

    def is_zero(self, x) -> bool:
        if self.exact:
            return not x
        return abs(x) <= self.eps

    def all_zero(self, a: np.ndarray) -> bool:
        if a.size == 0:
            return True
        if self.exact:
            return not any(a.flat)
        return bool(np.max(np.abs(a)) <= self.eps)

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        if a.shape != b.shape:
            return False
        return self.all_zero(a - b) if a.size else True

    def convert(self, a: np.ndarray) -> np.ndarray:
        """Convert a matrix from either mode into this mode."""
        if self.exact:
            if a.dtype == object:
                return a
            return self.array(a)
        if a.dtype == object:
            out = np.empty(a.shape, dtype=np.complex128)
            for idx, v in np.ndenumerate(a):
                out[idx] = complex(v)
            return out
        return a.astype(np.complex128)


EXACT = Arithmetic(True)


def float_mode(eps: float = 1e-9) -> Arithmetic:
    return Arithmetic(False, float(eps))


def default_arithmetic() -> Arithmetic:
    """Arithmetic selected by the ``KREL_MODE`` environment variable (default exact)."""
    mode = os.environ.get("KREL_MODE", "exact").strip().lower()
    if mode in ("", "exact"):
        return EXACT
    if mode == "float":
        eps = os.environ.get("KREL_EPS")
        return float_mode(float(eps)) if eps else float_mode()
    raise ValueError(f"KREL_MODE must be 'exact' or 'float', got {mode!r}")


def to_complex(a: np.ndarray) -> np.ndarray:
    """Numeric copy of an exact or float matrix."""
    return float_mode().convert(np.asarray(a))
