"""One checkable verifier per claim about chain-graph spectra.

Every verifier returns a :class:`TheoremReport`; ``fails`` always comes with
a witness. The registry :data:`CLAIMS` maps claim ids to single-string
verifiers for ``run_claims``/the CLI.
"""
from __future__ import annotations

import enum
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .errors import CrossCheckFailedError, PreconditionViolatedError
from .matrices import (
    adjacency_matrix,
    characteristic_matrix,
    degree_list,
    equitable_partition,
    quotient_adjacency,
    quotient_seidel,
    seidel_matrix,
)
from .poly import Poly, X, char_poly, det_polynomial_matrix, rank_exact, square_free_decomposition
from .roots import RationalInterval, compare_roots
from .spectra import (
    Spectrum,
    distinct_count,
    eigenvalue_free,
    full_char_poly,
    inertia_of,
    multiplicity_at,
    spectrum_of,
)
from .strings import ChainString, as_chain_string, is_isomorphic


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    NOT_APPLICABLE = "not_applicable"


@dataclass
class TheoremReport:
    claim_id: str
    instance: Any
    verdict: Verdict
    witness: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == Verdict.HOLDS

    def to_json(self) -> dict:
        inst = self.instance
        if isinstance(inst, ChainString):
            inst = str(inst)
        elif isinstance(inst, tuple):
            inst = list(inst)
        return {
            "claim_id": self.claim_id,
            "instance": inst,
            "verdict": self.verdict.value,
            "witness": self.witness,
        }


def _report(claim_id, instance, checks: dict, witness: dict) -> TheoremReport:
    ok = all(checks.values())
    witness = {"checks": checks, **witness}
    return TheoremReport(claim_id, instance, Verdict.HOLDS if ok else Verdict.FAILS, witness)


def _poly_json(p: Poly) -> list[str]:
    return p.to_json()


# ---------------------------------------------------------------------------
# adjacency claims

def verify_adjacency_laws(g: ChainString) -> TheoremReport:
    """Zero has multiplicity n-2h, the other roots are simple and avoid [-1/2, 1/2]."""
    spec = spectrum_of(adjacency_matrix(g))
    p = spec.char_poly
    zero_mult = multiplicity_at(spec, 0)
    nonzero = [m for r, m in spec.roots if not (r.is_exact and r.exact == 0)]
    checks = {
        "zero_multiplicity": zero_mult == g.n - 2 * g.h,
        "nonzero_simple": len(nonzero) == 2 * g.h and all(m == 1 for m in nonzero),
        "gap_half": eigenvalue_free(spec, RationalInterval.closed(Fraction(-1, 2), Fraction(1, 2)), {0}),
        "symmetric": p.compose_affine(-1, 0) == p * (-1) ** g.n,
    }
    return _report("adjacency-laws", g, checks, {
        "spectrum": spec.to_json(),
        "zero_multiplicity": zero_mult,
    })


def classify_distinct_adjacency(g: ChainString) -> TheoremReport:
    ones = [a == 1 for a in g.blocks]
    twos = [a == 2 for a in g.blocks]
    predicted = all(ones) or (sum(twos) == 1 and sum(ones) == len(g.blocks) - 1)
    spec = spectrum_of(adjacency_matrix(g))
    actual = distinct_count(spec) == g.n
    return _report("distinct-adjacency", g, {"prediction_matches": predicted == actual}, {
        "predicted": predicted,
        "actual": actual,
        "distinct_count": distinct_count(spec),
    })


def quartic_charpoly_h2(a1: int, a2: int, a3: int, a4: int) -> Poly:
    """x^4 - (a1a2 + a1a4 + a3a4) x^2 + a1a2a3a4, cross-checked against the quotient matrix."""
    quartic = Poly((a1 * a2 * a3 * a4, 0, -(a1 * a2 + a1 * a4 + a3 * a4), 0, 1))
    computed = char_poly(quotient_adjacency(ChainString((a1, a2, a3, a4))))
    if computed != quartic:
        raise CrossCheckFailedError(f"quartic {quartic} != char poly {computed}")
    return quartic


def partner_quartic_h2(a1: int, a2: int, a3: int, a4: int) -> Poly:
    """Quotient char poly of the partner string 0^a2 1^a1 0^a4 1^a3 in terms of G's parameters."""
    quartic = Poly((a1 * a2 * a3 * a4, 0, -(a1 * a2 + a2 * a3 + a3 * a4), 0, 1))
    computed = char_poly(quotient_adjacency(ChainString((a2, a1, a4, a3))))
    if computed != quartic:
        raise CrossCheckFailedError(f"partner quartic {quartic} != char poly {computed}")
    return quartic


def construct_cospectral_pair(a1: int, a2: int, a3: int, a4: int):
    """G = 0^a1 1^a2 0^a3 1^a4 and H = 0^a2 1^a1 0^a4 1^a3, cospectral when a1*a4 == a2*a3."""
    if a1 * a4 != a2 * a3:
        raise PreconditionViolatedError(f"need a1*a4 == a2*a3, got {a1 * a4} != {a2 * a3}")
    g = ChainString((a1, a2, a3, a4))
    h = ChainString((a2, a1, a4, a3))
    pg, ph = full_char_poly(g, "adjacency"), full_char_poly(h, "adjacency")
    cospectral = pg == ph
    iso = is_isomorphic(g, h)
    deg_g, deg_h = degree_list(g), degree_list(h)
    must_differ = a1 != a2 and a1 != a3
    checks = {
        "cospectral": cospectral,
        "quartics_agree": quartic_charpoly_h2(a1, a2, a3, a4) == partner_quartic_h2(a1, a2, a3, a4),
        "non_isomorphic_when_required": (not iso) if must_differ else True,
    }
    if must_differ:
        checks["degree_sequences_differ"] = deg_g != deg_h
    report = _report("cospectral-h2", (a1, a2, a3, a4), checks, {
        "G": str(g),
        "H": str(h),
        "char_poly": _poly_json(pg),
        "isomorphic": iso,
        "degrees_G": deg_g,
        "degrees_H": deg_h,
    })
    return g, h, report


def refute_conjecture() -> TheoremReport:
    """The pair 0^1 1^2 0^2 1^4 / 0^2 1^1 0^4 1^2 is cospectral and non-isomorphic."""
    g, h, rep = construct_cospectral_pair(1, 2, 2, 4)
    checks = {"cospectral": rep.witness["checks"]["cospectral"], "non_isomorphic": not is_isomorphic(g, h)}
    return _report("conjecture-refuted", (str(g), str(h)), checks, {"pair": rep.to_json()})


def verify_h1_uniqueness(n: int) -> TheoremReport:
    """Every h = 1 chain graph of order n is determined up to isomorphism by its spectrum."""
    if n < 2:
        raise PreconditionViolatedError("n must be at least 2")
    groups: dict[Poly, list[ChainString]] = defaultdict(list)
    shape_ok = True
    for a1 in range(1, n):
        g = ChainString((a1, n - a1))
        p = full_char_poly(g, "adjacency")
        shape_ok &= p == X ** (n - 2) * Poly((-a1 * (n - a1), 0, 1))
        groups[p].append(g)
    bad = [
        [str(x), str(y)]
        for members in groups.values()
        for i, x in enumerate(members)
        for y in members[i + 1:]
        if not is_isomorphic(x, y)
    ]
    checks = {"spectrum_shape": bool(shape_ok), "cospectral_implies_isomorphic": not bad}
    return _report("h1-uniqueness", n, checks, {"classes": len(groups), "counterexamples": bad})


# ---------------------------------------------------------------------------
# quotient matrices and the row-reduced matrix F_x

def verify_quotient_consistency(g: ChainString) -> TheoremReport:
    a, s = adjacency_matrix(g), seidel_matrix(g)
    qa, qs = quotient_adjacency(g), quotient_seidel(g)
    part = equitable_partition(g)
    c = characteristic_matrix(part)
    dup_ok = all(
        np.array_equal(a[cell.start], a[v]) for cell in part.cells for v in cell
    )
    checks = {
        "adjacency_equitable": bool(np.array_equal(a @ c, c @ qa)),
        "seidel_equitable": bool(np.array_equal(s @ c, c @ qs)),
        "cells_are_duplicates": dup_ok,
    }
    return _report("quotient-consistency", g, checks, {})


def _seidel_quotient_minus_x(g: ChainString) -> list[list[Poly]]:
    q = quotient_seidel(g)
    m = len(g.blocks)
    return [[Poly((int(q[i, j]),)) - (X if i == j else 0) for j in range(m)] for i in range(m)]


def _add(r1, r2, c=1):
    return [a + b * c for a, b in zip(r1, r2)]


def row_reduce_to_F(g: ChainString) -> list[list[Poly]]:
    """Apply the elementary row-operation script to S~ - xI and return F_x.

    Rows are 1-based in the comments (R1..R2h). Each group of operations
    reads the rows as they stood before the group.
    """
    h = g.h
    R = {i + 1: row for i, row in enumerate(_seidel_quotient_minus_x(g))}
    half = Fraction(1, 2)

    # R(2k-1) <- R(2k-1) - R(2k+1), k=1..h-1;  R(2k) <- R(2k) - R(2k-2), k=2..h
    old = dict(R)
    for k in range(1, h):
        R[2 * k - 1] = _add(old[2 * k - 1], old[2 * k + 1], -1)
    for k in range(2, h + 1):
        R[2 * k] = _add(old[2 * k], old[2 * k - 2], -1)

    # R(2k-1) <-> R(2k)
    for k in range(1, h + 1):
        R[2 * k - 1], R[2 * k] = R[2 * k], R[2 * k - 1]

    # R1 <- sum R(2k-1);  R2h <- sum R(2k)
    old = dict(R)
    r1 = old[1]
    r2h = old[2]
    for k in range(2, h + 1):
        r1 = _add(r1, old[2 * k - 1])
        r2h = _add(r2h, old[2 * k])
    R[1], R[2 * h] = r1, r2h

    # R1 <- R1 - 1/2 sum_{k>=2} R(2k-1);  R2h <- R2h + 1/2 sum_{k>=2} R(2k-1)
    old = dict(R)
    for k in range(2, h + 1):
        R[1] = _add(R[1], old[2 * k - 1], -half)
        R[2 * h] = _add(R[2 * h], old[2 * k - 1], half)

    # R1 <- R1 + R2h;  R2h <- R2h - 1/2 sum_{k<h} R(2k)
    old = dict(R)
    R[1] = _add(old[1], old[2 * h])
    for k in range(1, h):
        R[2 * h] = _add(R[2 * h], old[2 * k], -half)

    # R2h <- 2 R2h;  R2h <- R2h - R1;  negate every row
    R[2 * h] = [2 * v for v in R[2 * h]]
    R[2 * h] = _add(R[2 * h], R[1], -1)
    return [[-v for v in R[i]] for i in range(1, 2 * h + 1)]


def F_display_pattern(g: ChainString) -> list[list[Poly]]:
    """The closed-form F_x pattern for h >= 2 (the h = 1 display degenerates)."""
    if g.h < 2:
        raise ValueError("display pattern only defined for h >= 2")
    a = (None,) + g.blocks  # 1-based
    N = 2 * g.h
    one_x = Poly((1, 1))
    F = [[Poly() for _ in range(N)] for _ in range(N)]
    F[0][0] = one_x
    F[0][N - 1] = one_x
    for i in range(2, N):
        sgn = 1 if i % 2 == 0 else -1
        F[i - 1][i - 2] = one_x * sgn
        F[i - 1][i - 1] = Poly((2 * a[i],))
        F[i - 1][i] = one_x * -sgn
    F[N - 1][0] = Poly((-2 * a[1],))
    F[N - 1][1] = -one_x
    F[N - 1][N - 2] = one_x
    F[N - 1][N - 1] = Poly((2 * a[N],))
    return F


def build_F_matrix(g: ChainString):
    """Row-reduce S~ - xI into F_x and check what it certifies.

    (a) det(S~ - xI) = (-1)^h * det(F_x) / 2,
    (b) rank F_{-1} = 2h - 1, so -1 is a simple root of the quotient,
    (c) every other quotient root has multiplicity at most 2.
    """
    h = g.h
    F = row_reduce_to_F(g)
    det_F = det_polynomial_matrix(F)
    det_S = det_polynomial_matrix(_seidel_quotient_minus_x(g))
    relation = det_S == det_F * Fraction((-1) ** h, 2)

    F_minus_one = [[v(Fraction(-1)) for v in row] for row in F]
    rank = rank_exact(F_minus_one)

    p = char_poly(quotient_seidel(g))
    factors = square_free_decomposition(p)
    minus_one_mult = next((m for q, m in factors if q(-1) == 0), 0)
    one_mult = next((m for q, m in factors if q(1) == 0), 0)
    others_ok = all(m <= 2 for q, m in factors if q(-1) != 0)

    checks = {
        "det_relation": relation,
        "integral_entries": all(v.is_integral() for row in F for v in row),
        "rank_F_minus_one": rank == 2 * h - 1,
        "minus_one_simple": minus_one_mult == 1,
        "other_multiplicities_at_most_2": others_ok,
    }
    if h >= 2:
        checks["matches_display"] = F == F_display_pattern(g)
    report = _report("f-matrix", g, checks, {
        "F": [[_poly_json(v) for v in row] for row in F],
        "det_F": _poly_json(det_F),
        "rank_F_minus_one": rank,
        "quotient_factor_multiplicities": [[_poly_json(q), m] for q, m in factors],
        "multiplicity_of_one": one_mult,
    })
    return F, report


# ---------------------------------------------------------------------------
# Seidel claims

def verify_seidel_laws(g: ChainString) -> TheoremReport:
    n, h = g.n, g.h
    s_spec = spectrum_of(seidel_matrix(g))
    a_spec = spectrum_of(adjacency_matrix(g))
    minus_one = multiplicity_at(s_spec, -1)
    inertia = inertia_of(s_spec)
    ms = distinct_count(s_spec)
    lam_s, lam_a = s_spec.values(), a_spec.values()
    # lambda_h(S) >= -1 - 2 lambda_(n-h+1)(A)
    cw_low = compare_roots(lam_s[h - 1], lam_a[n - h].affine(-2, -1)) >= 0
    # lambda_(n-h+2)(S) <= -1 - 2 lambda_h(A), only meaningful when n-h+2 <= n
    cw_high = True if h < 2 else compare_roots(lam_s[n - h + 1], lam_a[h - 1].affine(-2, -1)) <= 0
    checks = {
        "minus_one_multiplicity": minus_one == n - 2 * h + 1,
        "minus_one_at_least_n_minus_2h": minus_one >= n - 2 * h,
        "gap_minus_two_zero": eigenvalue_free(s_spec, RationalInterval.closed(-2, 0), {-1}),
        "inertia": inertia.as_tuple() == (h, 0, n - h),
        "distinct_count_bounds": h + 1 <= ms <= 2 * h,
        "courant_weyl_lower": cw_low,
        "courant_weyl_upper": cw_high,
    }
    return _report("seidel-laws", g, checks, {
        "spectrum": s_spec.to_json(),
        "inertia": list(inertia.as_tuple()),
        "distinct_count": ms,
        "minus_one_multiplicity": minus_one,
    })


def classify_distinct_seidel(g: ChainString) -> TheoremReport:
    predicted = all(a == 1 for a in g.blocks)
    spec = spectrum_of(seidel_matrix(g))
    actual = distinct_count(spec) == g.n
    return _report("distinct-seidel", g, {"prediction_matches": predicted == actual}, {
        "predicted": predicted,
        "actual": actual,
        "distinct_count": distinct_count(spec),
    })


def verify_quotient_sign_balance(g: ChainString) -> TheoremReport:
    """S~ has as many positive as negative eigenvalues (h of each) and none at 0."""
    spec = spectrum_of(quotient_seidel(g))
    inertia = inertia_of(spec)
    return _report("quotient-sign-balance", g, {"inertia": inertia.as_tuple() == (g.h, 0, g.h)}, {
        "quotient_spectrum": spec.to_json(),
        "inertia": list(inertia.as_tuple()),
    })


def distinct_sign_split(g: ChainString) -> tuple[int, int]:
    """(distinct positive, distinct negative) Seidel eigenvalues."""
    spec = spectrum_of(seidel_matrix(g))
    signs = [r.sign() for r, _ in spec.roots]
    return signs.count(1), signs.count(-1)


def verify_distinct_sign_split(g: ChainString, expected=(3, 2)) -> TheoremReport:
    split = distinct_sign_split(g)
    return _report("distinct-sign-split", g, {"split": split == tuple(expected)}, {
        "distinct_positive": split[0],
        "distinct_negative": split[1],
    })


# ---------------------------------------------------------------------------
# registry

def _h2_quartic_claim(g: ChainString) -> TheoremReport:
    if g.h != 2:
        return TheoremReport("quartic-h2", g, Verdict.NOT_APPLICABLE, {"reason": "h != 2"})
    try:
        q = quartic_charpoly_h2(*g.blocks)
    except CrossCheckFailedError as exc:
        return TheoremReport("quartic-h2", g, Verdict.FAILS, {"error": str(exc)})
    return TheoremReport("quartic-h2", g, Verdict.HOLDS, {"quartic": _poly_json(q)})


def _h2_pair_claim(g: ChainString) -> TheoremReport:
    if g.h != 2 or g[0] * g[3] != g[1] * g[2]:
        return TheoremReport("cospectral-h2", g, Verdict.NOT_APPLICABLE,
                             {"reason": "needs h = 2 and a1*a4 = a2*a3"})
    return construct_cospectral_pair(*g.blocks)[2]


def _h1_claim(g: ChainString) -> TheoremReport:
    if g.h != 1:
        return TheoremReport("h1-uniqueness", g, Verdict.NOT_APPLICABLE, {"reason": "h != 1"})
    rep = verify_h1_uniqueness(g.n)
    rep.instance = g
    return rep


CLAIMS: dict[str, Callable[[ChainString], TheoremReport]] = {
    "adjacency-laws": verify_adjacency_laws,
    "distinct-adjacency": classify_distinct_adjacency,
    "quotient-consistency": verify_quotient_consistency,
    "quartic-h2": _h2_quartic_claim,
    "cospectral-h2": _h2_pair_claim,
    "h1-uniqueness": _h1_claim,
    "f-matrix": lambda g: build_F_matrix(g)[1],
    "seidel-laws": verify_seidel_laws,
    "distinct-seidel": classify_distinct_seidel,
    "quotient-sign-balance": verify_quotient_sign_balance,
}


def run_claims(g, claims: Sequence[str] | str = "all") -> list[TheoremReport]:
    g = as_chain_string(g)
    ids = list(CLAIMS) if claims == "all" else [claims] if isinstance(claims, str) else list(claims)
    unknown = [c for c in ids if c not in CLAIMS]
    if unknown:
        raise KeyError(f"unknown claim(s): {', '.join(unknown)}")
    return [CLAIMS[c](g) for c in ids]


def _run_one(blocks) -> list[TheoremReport]:
    return run_claims(ChainString(blocks))


def run_suite(instances: Iterable[ChainString], jobs: int = 1) -> list[TheoremReport]:
    """Run every claim on every instance; output order follows the input order."""
    blocks = [as_chain_string(g).blocks for g in instances]
    if jobs <= 1:
        results = [_run_one(b) for b in blocks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, blocks, chunksize=8))
    return [rep for reps in results for rep in reps]
