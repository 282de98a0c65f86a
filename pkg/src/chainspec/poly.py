"""Exact univariate polynomials over Z / Q and the linear algebra built on them.

Coefficients are stored in ascending order as Python ``int`` (or ``Fraction``
when a rational coefficient is unavoidable), so nothing here ever rounds.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import SizeLimitError, ZeroPolynomialError

CHAR_POLY_MAX_ORDER = 128
POLY_DET_MAX_ORDER = 32


def _norm(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, Rational):
        return int(v)
    if isinstance(v, np.integer):
        return int(v)
    raise TypeError(f"polynomial coefficients must be exact rationals, got {type(v).__name__}")


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return _norm(Fraction(a) / b)


class Poly:
    """Immutable polynomial with exact rational coefficients (ascending degree)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [_norm(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # construction helpers
    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        out = cls((1,))
        for r in roots:
            out = out * cls((-r, 1))
        return out

    # basic properties
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # arithmetic
    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out, base = Poly((1,)), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = _coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.lead
        if len(rem) - 1 < d:
            return Poly(), self
        quot = [0] * (len(rem) - d)
        for i in range(len(rem) - 1 - d, -1, -1):
            c = _div(rem[i + d], lead)
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Poly(quot), Poly(rem[:d])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{self!r} is not divisible by {other!r}")
        return q

    def prem(self, other: "Poly") -> "Poly":
        """Pseudo-remainder: lead(other)**(deg self - deg other + 1) * self mod other."""
        d = other.degree
        r = list(self.coeffs)
        if len(r) - 1 < d:
            return self
        lc = other.lead
        b = other.coeffs
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i]
            r = [lc * v for v in r[:i]]
            if c:
                for j in range(d):
                    r[i - d + j] -= c * b[j]
        return Poly(r)

    # calculus / evaluation
    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> int:
        """Exact sign of self(x) for a rational x."""
        if not isinstance(x, Fraction) or not self.is_integral():
            v = self(Fraction(x))
            return (v > 0) - (v < 0)
        p, q = x.numerator, x.denominator
        # homogenised evaluation keeps everything in Z; q**deg > 0 preserves the sign
        acc = 0
        qpow = 1
        for c in reversed(self.coeffs):
            acc = acc * p + c * qpow
            qpow *= q
        return (acc > 0) - (acc < 0)

    def compose_affine(self, a, b) -> "Poly":
        """Return self(a*x + b)."""
        lin = Poly((b, a))
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    # content / normalisation
    def content(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        den = reduce(math.lcm, (Fraction(c).denominator for c in self.coeffs), 1)
        num = reduce(math.gcd, (int(c * den) for c in self.coeffs), 0)
        return Fraction(num, den)

    def primitive(self, positive_lead: bool = True) -> "Poly":
        """Integer primitive part; sign flipped to a positive lead unless told not to."""
        if not self.coeffs:
            return self
        cont = self.content()
        out = Poly(c / cont for c in self.coeffs)
        if positive_lead and out.lead < 0:
            out = -out
        return out

    def monic(self) -> "Poly":
        return Poly(_div(c, self.lead) for c in self.coeffs)

    def trailing_zeros(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    # rendering
    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Poly":
        return cls(Fraction(s) for s in data)


def _coerce(v):
    if isinstance(v, Poly):
        return v
    if isinstance(v, (Rational, np.integer)):
        return Poly((v,))
    return NotImplemented


X = Poly.x()


# ---------------------------------------------------------------------------
# gcd and square-free decomposition

def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive gcd over Z[x] via the primitive polynomial remainder sequence."""
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        r = a.prem(b)
        a, b = b, r.primitive()
    return a.primitive() if a else Poly((1,))


def square_free_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p = c * prod(q**m)`` with primitive, square-free, coprime ``q``."""
    if not p:
        raise ZeroPolynomialError("square-free decomposition of the zero polynomial")
    if p.degree <= 0:
        return []
    f = p.primitive()
    fp = f.derivative()
    a0 = poly_gcd(f, fp)
    b = f.exact_div(a0)
    d = fp.exact_div(a0) - b.derivative()
    out = []
    mult = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.primitive(), mult))
        mult += 1
    return out


def square_free_part(p: Poly) -> Poly:
    if not p:
        raise ZeroPolynomialError("square-free part of the zero polynomial")
    if p.degree <= 0:
        return Poly((1,))
    return p.exact_div(poly_gcd(p, p.derivative())).primitive()


# ---------------------------------------------------------------------------
# characteristic polynomials and determinants

def _object_matrix(m) -> np.ndarray:
    rows = [[_norm(v) for v in row] for row in np.asarray(m, dtype=object)]
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j] = v
    return out


def char_poly(m) -> Poly:
    """det(xI - m) by Faddeev-LeVerrier; every division is exact over Z."""
    a = _object_matrix(m)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise ValueError("char_poly needs a square matrix")
    if n > CHAR_POLY_MAX_ORDER:
        raise SizeLimitError(f"order {n} exceeds {CHAR_POLY_MAX_ORDER}")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    ident = np.zeros((n, n), dtype=object)
    for i in range(n):
        ident[i, i] = 1
    am = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        mk = am + coeffs[n - k + 1] * ident
        am = a.dot(mk)
        tr = sum(am[i, i] for i in range(n))
        c = _div(-tr, k)
        coeffs[n - k] = c
    return Poly(coeffs)


def _bareiss(rows, exact_div, one):
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return one * 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = exact_div(row_i[j] * pivot - mik * row_k[j], prev)
        prev = pivot
    return m[n - 1][n - 1] * sign


def _int_exact_div(a, b):
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("Bareiss division was not exact")
    return q


def det_int(m) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    rows = [[int(v) for v in row] for row in np.asarray(m, dtype=object)]
    return _bareiss(rows, _int_exact_div, 1)


def det_polynomial_matrix(m: Sequence[Sequence]) -> Poly:
    """Determinant of a square matrix of polynomials by Bareiss elimination."""
    rows = [[_coerce(v) for v in row] for row in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("polynomial matrix must be square")
    if n > POLY_DET_MAX_ORDER:
        raise SizeLimitError(f"order {n} exceeds {POLY_DET_MAX_ORDER}")
    return _bareiss(rows, Poly.exact_div, Poly((1,)))


def det_cofactor(m: Sequence[Sequence]) -> Poly:
    """Laplace expansion along the first row; slow, used as an oracle for small orders."""
    rows = [[_coerce(v) for v in row] for row in m]
    n = len(rows)
    if n == 0:
        return Poly((1,))
    if n == 1:
        return rows[0][0]
    total = Poly()
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def rank_exact(m) -> int:
    """Rank over Q by Gaussian elimination on Fractions."""
    rows = [[Fraction(v) for v in row] for row in np.asarray(m, dtype=object)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col] / p[col]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], p)]
        rank += 1
        if rank == len(rows):
            break
    return rank
