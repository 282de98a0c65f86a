"""Certified real-root counting and isolation with Sturm chains over exact rationals."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import UndecidableError, ZeroPolynomialError
from .poly import Poly, poly_gcd, square_free_decomposition, square_free_part

DEFAULT_WIDTH = Fraction(1, 10**6)
REFINE_CAP = 64


@dataclass(frozen=True)
class RationalInterval:
    """Interval with rational (or infinite, ``None``) endpoints and per-endpoint closure."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if self.lo is not None:
            object.__setattr__(self, "lo", Fraction(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @classmethod
    def closed(cls, lo, hi):
        return cls(lo, hi, True, True)

    @classmethod
    def open(cls, lo, hi):
        return cls(lo, hi, False, False)

    @classmethod
    def point(cls, v):
        return cls(v, v, True, True)

    @property
    def width(self):
        if self.lo is None or self.hi is None:
            return math.inf
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        if self.lo is not None and (x < self.lo or (x == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and not self.hi_closed)):
            return False
        return True

    def __str__(self):
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{'[' if self.lo_closed else '('}{lo}, {hi}{']' if self.hi_closed else ')'}"


# ---------------------------------------------------------------------------
# Sturm chains

def sturm_chain(p: Poly) -> list[Poly]:
    """Sturm sequence of a square-free integer polynomial, kept primitive.

    Pseudo-remainders are rescaled by a positive factor only, so the sign
    pattern matches the textbook chain p, p', -rem(p, p'), ...
    """
    p = p.primitive(positive_lead=False)
    chain = [p]
    if p.degree <= 0:
        return chain
    chain.append(p.derivative().primitive(positive_lead=False))
    while chain[-1].degree > 0:
        a, b = chain[-2], chain[-1]
        r = a.prem(b)
        if not r:
            break
        mult_sign = 1 if b.lead > 0 or (a.degree - b.degree + 1) % 2 == 0 else -1
        chain.append((-r * mult_sign).primitive(positive_lead=False))
    return chain


def _sign_at(p: Poly, x) -> int:
    """Sign at a rational x, or at -inf / +inf when x is the string '-inf' / '+inf'."""
    if x == "+inf":
        return (p.lead > 0) - (p.lead < 0)
    if x == "-inf":
        s = (p.lead > 0) - (p.lead < 0)
        return s if p.degree % 2 == 0 else -s
    return p.sign_at(x)


def _variations(chain: list[Poly], x) -> int:
    signs = [s for s in (_sign_at(q, x) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_half_open(chain, lo, hi) -> int:
    """Distinct roots in (lo, hi]; endpoints may be '-inf' / '+inf'."""
    return _variations(chain, lo) - _variations(chain, hi)


def sturm_count(p: Poly, iv: RationalInterval) -> int:
    """Number of distinct real roots of p inside iv (closure flags respected exactly)."""
    if not p:
        raise ZeroPolynomialError("cannot count roots of the zero polynomial")
    q = square_free_part(p)
    if q.degree <= 0:
        return 0
    chain = sturm_chain(q)
    lo = "-inf" if iv.lo is None else iv.lo
    hi = "+inf" if iv.hi is None else iv.hi
    if iv.lo is not None and iv.lo == iv.hi:
        return int(iv.lo_closed and iv.hi_closed and q.sign_at(iv.lo) == 0)
    count = _count_half_open(chain, lo, hi)
    if iv.hi is not None and not iv.hi_closed and q.sign_at(iv.hi) == 0:
        count -= 1
    if iv.lo is not None and iv.lo_closed and q.sign_at(iv.lo) == 0:
        count += 1
    return count


# ---------------------------------------------------------------------------
# isolated roots

class RealRoot:
    """One real root of a square-free integer polynomial.

    Either ``exact`` is a Fraction, or the root lies strictly inside (lo, hi)
    and ``poly`` changes sign across the interval with no other root in it.
    Refinement narrows the bounds in place; the root itself never changes.
    """

    __slots__ = ("poly", "lo", "hi", "exact")

    def __init__(self, poly: Poly, lo, hi, exact=None):
        self.poly = poly
        if exact is not None:
            exact = Fraction(exact)
            self.lo = self.hi = exact
        else:
            self.lo, self.hi = Fraction(lo), Fraction(hi)
        self.exact = exact

    @classmethod
    def rational(cls, value) -> "RealRoot":
        value = Fraction(value)
        return cls(Poly((-value.numerator, value.denominator)), value, value, exact=value)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def interval(self) -> RationalInterval:
        if self.exact is not None:
            return RationalInterval.point(self.exact)
        return RationalInterval.open(self.lo, self.hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self):
        if self.exact is not None:
            return float(self.exact)
        return float((self.lo + self.hi) / 2)

    def __repr__(self):
        if self.exact is not None:
            return f"RealRoot({self.exact})"
        return f"RealRoot({float(self):.6g} in ({self.lo}, {self.hi}))"

    def bisect(self) -> None:
        if self.exact is not None:
            return
        mid = (self.lo + self.hi) / 2
        s = self.poly.sign_at(mid)
        if s == 0:
            self.exact = mid
            self.lo = self.hi = mid
        elif s == self.poly.sign_at(self.lo):
            self.lo = mid
        else:
            self.hi = mid

    def refine_to(self, width) -> "RealRoot":
        width = Fraction(width)
        while self.exact is None and self.hi - self.lo > width:
            self.bisect()
        return self

    def detect_rational(self) -> "RealRoot":
        """Promote to an exact root if the root is rational (rational-root theorem)."""
        if self.exact is not None:
            return self
        lead = abs(self.poly.lead)
        self.refine_to(Fraction(1, 2 * lead))
        if self.exact is not None:
            return self
        k = math.floor(self.lo * lead) + 1
        while Fraction(k, lead) < self.hi:
            cand = Fraction(k, lead)
            if self.poly.sign_at(cand) == 0:
                self.exact = cand
                self.lo = self.hi = cand
                break
            k += 1
        return self

    def sign(self) -> int:
        """Exact sign of the root; zero roots are always exact."""
        if self.exact is not None:
            return (self.exact > 0) - (self.exact < 0)
        for _ in range(4 * REFINE_CAP):
            if self.lo >= 0:
                return 1
            if self.hi <= 0:
                return -1
            if self.poly.sign_at(Fraction(0)) == 0:
                self.exact = Fraction(0)
                self.lo = self.hi = self.exact
                return 0
            self.bisect()
        raise UndecidableError("could not decide the sign of a root")

    def affine(self, scale, shift) -> "RealRoot":
        """Root ``scale * self + shift`` of the correspondingly transformed polynomial."""
        scale, shift = Fraction(scale), Fraction(shift)
        if scale == 0:
            return RealRoot.rational(shift)
        if self.exact is not None:
            return RealRoot.rational(scale * self.exact + shift)
        q = self.poly.compose_affine(1 / scale, -shift / scale).primitive()
        a, b = scale * self.lo + shift, scale * self.hi + shift
        return RealRoot(q, min(a, b), max(a, b))

    def round_decimal(self, places: int) -> str:
        """Certified round-half-even decimal string with ``places`` digits."""
        scale = 10**places
        if self.exact is not None:
            return _format_scaled(round(self.exact * scale), places)
        for _ in range(64 + 4 * places):
            lo_r, hi_r = round(self.lo * scale), round(self.hi * scale)
            if lo_r == hi_r:
                return _format_scaled(lo_r, places)
            self.bisect()
            if self.exact is not None:
                return _format_scaled(round(self.exact * scale), places)
        raise UndecidableError("could not round root to the requested precision")

    def render(self, places: int = 4) -> str:
        """Exact rationals as integers or fractions, irrational roots as decimals."""
        if self.exact is not None:
            return str(self.exact)
        return self.round_decimal(places)


def _format_scaled(k: int, places: int) -> str:
    if places == 0:
        return str(k)
    sign = "-" if k < 0 else ""
    k = abs(k)
    s = str(k).rjust(places + 1, "0")
    return f"{sign}{s[:-places]}.{s[-places:]}"


def roots_equal(a: RealRoot, b: RealRoot) -> bool:
    """Exact equality test (no refinement needed)."""
    if a.exact is not None and b.exact is not None:
        return a.exact == b.exact
    if a.exact is not None:
        a, b = b, a
    if b.exact is not None:
        return a.lo < b.exact < a.hi and a.poly.sign_at(b.exact) == 0
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo >= hi:
        return False
    g = poly_gcd(a.poly, b.poly)
    if g.degree <= 0:
        return False
    return sturm_count(g, RationalInterval.open(lo, hi)) > 0


def compare_roots(a: RealRoot, b: RealRoot, max_rounds: int = REFINE_CAP) -> int:
    """Certified three-way comparison; raises UndecidableError past the refinement cap."""
    for _ in range(max_rounds + 1):
        if a.exact is not None and b.exact is not None:
            return (a.exact > b.exact) - (a.exact < b.exact)
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        if roots_equal(a, b):
            return 0
        a.bisect()
        b.bisect()
    raise UndecidableError(f"could not separate {a!r} and {b!r}")


def compare_to_rational(a: RealRoot, v) -> int:
    return compare_roots(a, RealRoot.rational(v))


# ---------------------------------------------------------------------------
# isolation

def _cauchy_bound(p: Poly) -> int:
    lead = abs(p.lead)
    m = max((abs(Fraction(c)) / lead for c in p.coeffs[:-1]), default=Fraction(0))
    return math.floor(m) + 2


def _isolate_square_free(q: Poly) -> list[RealRoot]:
    if q.degree <= 0:
        return []
    out: list[RealRoot] = []
    k = q.trailing_zeros()
    if k:
        out.append(RealRoot.rational(0))
        q = Poly(q.coeffs[k:])
        if q.degree <= 0:
            return out
    chain = sturm_chain(q)
    bound = Fraction(_cauchy_bound(q))
    stack = [(-bound, bound, _count_half_open(chain, -bound, bound))]
    while stack:
        lo, hi, cnt = stack.pop()
        if cnt == 0:
            continue
        if q.sign_at(hi) == 0:
            out.append(RealRoot(q, hi, hi, exact=hi))
            if cnt == 1:
                continue
            # drop the root at hi and keep looking strictly below it
            step = (hi - lo) / 2
            while _count_half_open(chain, hi - step, hi) != 1:
                step /= 2
            stack.append((lo, hi - step, cnt - 1))
            continue
        if cnt == 1:
            if q.sign_at(lo) == 0:
                # lo is a neighbouring root; move off it
                step = (hi - lo) / 2
                while _count_half_open(chain, lo, lo + step) != 0:
                    step /= 2
                lo = lo + step
            out.append(RealRoot(q, lo, hi))
            continue
        mid = (lo + hi) / 2
        left = _count_half_open(chain, lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, cnt - left))
    return out


def _separate(roots: list[RealRoot]) -> None:
    """Refine until neighbouring isolating intervals are disjoint."""
    for _ in range(4 * REFINE_CAP):
        roots.sort(key=lambda r: (r.lo, r.hi))
        clash = False
        for a, b in zip(roots, roots[1:]):
            if a.hi > b.lo or (a.hi == b.lo and (a.exact is not None and b.exact is not None)):
                clash = True
                a.bisect()
                b.bisect()
        if not clash:
            return
    raise UndecidableError("could not separate roots of coprime factors")


def isolate_real_roots(p: Poly, width=DEFAULT_WIDTH) -> list[tuple[RealRoot, int]]:
    """Disjoint isolating intervals (ascending) with multiplicities.

    Rational roots come back exact; irrational ones are refined to ``width``.
    """
    if not p:
        raise ZeroPolynomialError("cannot isolate roots of the zero polynomial")
    width = Fraction(width)
    pairs: list[tuple[RealRoot, int]] = []
    for q, m in square_free_decomposition(p):
        for r in _isolate_square_free(q):
            r.detect_rational()
            r.refine_to(width)
            pairs.append((r, m))
    roots = [r for r, _ in pairs]
    _separate(roots)
    pairs.sort(key=lambda rm: (rm[0].lo, rm[0].hi))
    return pairs
