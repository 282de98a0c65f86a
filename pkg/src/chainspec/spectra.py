"""Certified spectra, cospectrality, inertia and the floating-point Jacobi cross-check."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

import numpy as np

from .errors import AmbiguousSignError, NoConvergenceError, NonRealRootsError, UndecidableError
from .matrices import adjacency_matrix, quotient_adjacency, quotient_seidel, seidel_matrix
from .poly import Poly, X, char_poly, square_free_part
from .roots import (
    DEFAULT_WIDTH,
    RationalInterval,
    RealRoot,
    compare_roots,
    isolate_real_roots,
    roots_equal,
    sturm_count,
)
from .strings import ChainString

MatrixKind = Literal["adjacency", "seidel"]


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_zero: int
    n_minus: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_zero, self.n_minus)


class Spectrum:
    """Roots of an exact characteristic polynomial with multiplicities, sorted descending.

    Two spectra are equal iff their characteristic polynomials are identical.
    """

    def __init__(self, poly: Poly, roots: list[tuple[RealRoot, int]]):
        self.char_poly = poly
        self.roots = sorted(roots, key=lambda rm: (rm[0].lo, rm[0].hi), reverse=True)

    @classmethod
    def from_poly(cls, poly: Poly, width=DEFAULT_WIDTH) -> "Spectrum":
        roots = isolate_real_roots(poly, width)
        found = sum(m for _, m in roots)
        if found != poly.degree:
            raise NonRealRootsError(f"only {found} of {poly.degree} roots are real")
        return cls(poly, roots)

    @property
    def order(self) -> int:
        return self.char_poly.degree

    def __eq__(self, other):
        if not isinstance(other, Spectrum):
            return NotImplemented
        return self.char_poly == other.char_poly

    def __hash__(self):
        return hash(self.char_poly)

    def __len__(self):
        return self.order

    def values(self) -> list[RealRoot]:
        """lambda_1 >= ... >= lambda_n, repeated by multiplicity (1-based in the maths, 0-based here)."""
        return [r for r, m in self.roots for _ in range(m)]

    def as_floats(self) -> list[float]:
        return [float(r) for r in self.values()]

    def render(self, places: int = 4) -> str:
        parts = []
        for r, m in self.roots:
            v = r.render(places)
            parts.append(v if m == 1 else f"[{v}]^{m}")
        return "{" + ", ".join(parts) + "}"

    def __repr__(self):
        return f"Spectrum{self.render()}"

    def to_json(self, places: int = 4) -> dict:
        entries = []
        for r, m in self.roots:
            entries.append({
                "value_lo": str(r.lo),
                "value_hi": str(r.hi),
                "exact": r.is_exact,
                "multiplicity": m,
                "value": r.render(places),
            })
        return {"entries": entries, "order": self.order}


def spectrum_of(m, width=DEFAULT_WIDTH) -> Spectrum:
    return Spectrum.from_poly(char_poly(m), width)


def adjacency_char_poly(g: ChainString) -> Poly:
    """x^(n-2h) * P(quotient adjacency, x)."""
    return char_poly(quotient_adjacency(g)) * X ** (g.n - 2 * g.h)


def seidel_char_poly(g: ChainString) -> Poly:
    """(x+1)^(n-2h) * P(quotient Seidel, x)."""
    return char_poly(quotient_seidel(g)) * Poly((1, 1)) ** (g.n - 2 * g.h)


def adjacency_spectrum(g: ChainString, width=DEFAULT_WIDTH) -> Spectrum:
    return Spectrum.from_poly(adjacency_char_poly(g), width)


def seidel_spectrum(g: ChainString, width=DEFAULT_WIDTH) -> Spectrum:
    return Spectrum.from_poly(seidel_char_poly(g), width)


def full_char_poly(g: ChainString, matrix_kind: MatrixKind) -> Poly:
    if matrix_kind == "adjacency":
        return char_poly(adjacency_matrix(g))
    if matrix_kind == "seidel":
        return char_poly(seidel_matrix(g))
    raise ValueError(f"unknown matrix kind {matrix_kind!r}")


def are_cospectral(g: ChainString, h: ChainString, matrix_kind: MatrixKind = "adjacency") -> bool:
    """Exact equality of the full n x n characteristic polynomials."""
    if g.n != h.n:
        return False
    return full_char_poly(g, matrix_kind) == full_char_poly(h, matrix_kind)


def inertia_of(s: Spectrum) -> Inertia:
    counts = {1: 0, 0: 0, -1: 0}
    for r, m in s.roots:
        sign = r.sign()
        if sign not in counts:
            raise AmbiguousSignError(repr(r))
        counts[sign] += m
    return Inertia(counts[1], counts[0], counts[-1])


def multiplicity_at(s: Spectrum, v) -> int:
    target = RealRoot.rational(Fraction(v))
    return sum(m for r, m in s.roots if roots_equal(r, target))


def distinct_count(s: Spectrum) -> int:
    return len(s.roots)


def eigenvalue_free(s: Spectrum, iv: RationalInterval, exceptions: Iterable = ()) -> bool:
    """True iff no root of s lies in iv other than the listed exception values."""
    q = square_free_part(s.char_poly)
    count = sturm_count(q, iv)
    for e in {Fraction(e) for e in exceptions}:
        if e in iv and q.sign_at(e) == 0:
            count -= 1
    return count == 0


def seidel_duplicate_eigenvectors(g: ChainString) -> list[np.ndarray]:
    """For each cell, e_first - e_p for the other vertices p of that cell.

    Cell members are duplicates forming a coclique, so each vector is a
    -1 eigenvector of S. There are sum(a_k - 1) = n - 2h of them.
    """
    vecs = []
    start = 0
    for a in g.blocks:
        for p in range(1, a):
            x = np.zeros(g.n, dtype=np.int64)
            x[start] = 1
            x[start + p] = -1
            vecs.append(x)
        start += a
    return vecs


def jacobi_eigenvalues(m, tol: float = 1e-10, max_sweeps: int = 100) -> list[float]:
    """Cyclic-by-row Jacobi rotations; eigenvalues sorted descending."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    if not np.allclose(a, a.T):
        raise ValueError("Jacobi eigenvalue iteration needs a symmetric matrix")
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps + 1):
        off = np.sqrt(np.sum(a[offdiag] ** 2))
        if off < tol:
            return sorted(np.diag(a).tolist(), reverse=True)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    raise NoConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")


def interlacing_check(parent: Spectrum, child: Spectrum) -> bool:
    """lambda_(n-m+i) <= mu_i <= lambda_i for i = 1..m, decided with certified comparisons."""
    lam, mu = parent.values(), child.values()
    n, m = len(lam), len(mu)
    if m > n:
        raise ValueError("child spectrum is larger than the parent")
    for i in range(m):
        if compare_roots(mu[i], lam[i]) > 0:
            return False
        if compare_roots(lam[n - m + i], mu[i]) > 0:
            return False
    return True


__all__ = [
    "Inertia",
    "Spectrum",
    "UndecidableError",
    "adjacency_char_poly",
    "adjacency_spectrum",
    "are_cospectral",
    "distinct_count",
    "eigenvalue_free",
    "full_char_poly",
    "inertia_of",
    "interlacing_check",
    "jacobi_eigenvalues",
    "multiplicity_at",
    "seidel_char_poly",
    "seidel_duplicate_eigenvectors",
    "seidel_spectrum",
    "spectrum_of",
]
