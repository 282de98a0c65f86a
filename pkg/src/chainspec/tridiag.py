"""Determinant D_k(c) of the k x k tridiagonal matrix with diagonal c and unit off-diagonals."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def tridiag_det_recurrence(k: int, c) -> Fraction:
    """D_0 = 1, D_1 = c, D_k = c*D_{k-1} - D_{k-2}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    c = Fraction(c)
    prev, cur = Fraction(1), c
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, c * cur - prev
    return cur


@dataclass(frozen=True)
class QuadraticNumber:
    """a + b*sqrt(d) with rational a, b and a fixed non-square rational d (d may be negative)."""

    a: Fraction
    b: Fraction
    d: Fraction

    def _check(self, other):
        if self.d != other.d:
            raise ValueError("mixing different quadratic fields")

    def __add__(self, other):
        self._check(other)
        return QuadraticNumber(self.a + other.a, self.b + other.b, self.d)

    def __sub__(self, other):
        self._check(other)
        return QuadraticNumber(self.a - other.a, self.b - other.b, self.d)

    def __mul__(self, other):
        self._check(other)
        return QuadraticNumber(
            self.a * other.a + self.b * other.b * self.d,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    def conjugate(self):
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __truediv__(self, other):
        self._check(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        num = self * other.conjugate()
        return QuadraticNumber(num.a / n, num.b / n, self.d)

    def __pow__(self, k: int):
        out = QuadraticNumber(Fraction(1), Fraction(0), self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def tridiag_det_closed(k: int, c) -> Fraction:
    """Closed form (alpha^(k+1) - beta^(k+1)) / (alpha - beta), alpha = 1/beta = (c + sqrt(c^2-4))/2.

    Evaluated exactly in Q(sqrt(c^2 - 4)); the degenerate cases c = 2 and c = -2
    use k + 1 and (-1)^k (k + 1).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    c = Fraction(c)
    if c == 2:
        return Fraction(k + 1)
    if c == -2:
        return Fraction((-1) ** k * (k + 1))
    disc = c * c - 4
    root = _rational_sqrt(disc)
    if root is not None:
        alpha, beta = (c + root) / 2, (c - root) / 2
        return (alpha ** (k + 1) - beta ** (k + 1)) / (alpha - beta)
    half = Fraction(1, 2)
    alpha = QuadraticNumber(c * half, half, disc)
    beta = QuadraticNumber(c * half, -half, disc)
    value = (alpha ** (k + 1) - beta ** (k + 1)) / (alpha - beta)
    if value.b != 0:
        raise ArithmeticError("closed form left an irrational part")
    return value.a
