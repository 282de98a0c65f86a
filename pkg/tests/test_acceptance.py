"""End-to-end acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary and when this file is run directly.
"""
from __future__ import annotations

import json
import random
import time
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from chainspec.census import conjecture_census, find_cospectral_pairs, find_ms_gap_examples
from chainspec.cli import execute
from chainspec.matrices import adjacency_matrix, quotient_seidel, seidel_matrix
from chainspec.poly import Poly, X
from chainspec.roots import RealRoot
from chainspec.spectra import (
    adjacency_spectrum,
    are_cospectral,
    distinct_count,
    full_char_poly,
    jacobi_eigenvalues,
    seidel_duplicate_eigenvectors,
    seidel_spectrum,
    spectrum_of,
)
from chainspec.strings import ChainString, canonical_form, enumerate_chain_strings, is_isomorphic, random_chain_string
from chainspec.theorems import (
    Verdict,
    classify_distinct_adjacency,
    classify_distinct_seidel,
    construct_cospectral_pair,
    run_suite,
)
from chainspec.tridiag import tridiag_det_closed, tridiag_det_recurrence

RESULTS: list[str] = []


def record(num: int, title: str, failures: list[str], elapsed: float) -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"[{status}] criterion {num:2d}: {title} ({elapsed:.2f}s)"
    if failures:
        line += " -- " + "; ".join(failures[:4]) + (f" (+{len(failures) - 4} more)" if len(failures) > 4 else "")
    RESULTS.append(line)
    print(line)
    assert not failures, line


def match_printed(spec, printed: list[tuple], tol=Fraction(1, 10 ** 4)) -> list[str]:
    """Compare a spectrum to printed (value, multiplicity) entries, descending.

    int / Fraction values must match exactly; float values are read as their
    decimal text and must lie within tol of the certified root.
    """
    problems = []
    actual = spec.roots
    if len(actual) != len(printed):
        return [f"{len(actual)} distinct roots vs {len(printed)} printed: {spec.render(4)}"]
    for (root, mult), (value, pmult) in zip(actual, printed):
        if mult != pmult:
            problems.append(f"multiplicity {mult} vs printed {pmult} at {value}")
        if isinstance(value, (int, Fraction)):
            if not (root.is_exact and root.exact == value):
                problems.append(f"root {root.render(4)} is not exactly {value}")
        else:
            target = Fraction(repr(value))
            root.refine_to(Fraction(1, 10 ** 12))
            if not (target - tol <= root.lo and root.hi <= target + tol):
                problems.append(f"root {root.render(6)} not within 1e-4 of {value}")
    return problems


def test_criterion_01_cospectral_pair():
    t0 = time.perf_counter()
    fails = []
    code, out = execute(["cospectral-pair", "1", "2", "2", "4", "--json", "--precision", "2"])
    doc = json.loads(out)
    w = doc["witness"]
    if code != 0 or doc["verdict"] != "holds":
        fails.append(f"exit {code}, verdict {doc['verdict']}")
    if (w["G"], w["H"]) != ("0^1 1^2 0^2 1^4", "0^2 1^1 0^4 1^2"):
        fails.append(f"strings {w['G']!r}, {w['H']!r}")
    g, h = ChainString((1, 2, 2, 4)), ChainString((2, 1, 4, 2))
    pg, ph = full_char_poly(g, "adjacency"), full_char_poly(h, "adjacency")
    if pg != ph or not pg.is_integral:
        fails.append("integer char polys differ")
    if is_isomorphic(g, h) or w["isomorphic"]:
        fails.append("reported isomorphic")
    if w["degrees_G"] != [1, 1, 3, 3, 3, 3, 4, 4, 6] or w["degrees_H"] != [2, 2, 2, 2, 2, 3, 3, 6, 6]:
        fails.append(f"degrees {w['degrees_G']} / {w['degrees_H']}")
    vals = [(e["value"], e["multiplicity"]) for e in doc["spectrum"]["entries"]]
    if vals != [("3.57", 1), ("1.12", 1), ("0", 5), ("-1.12", 1), ("-3.57", 1)]:
        fails.append(f"spectrum {vals}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        fails.append(f"runtime {elapsed:.2f}s >= 1s")
    record(1, "h=2 cospectral pair 0^1 1^2 0^2 1^4 / 0^2 1^1 0^4 1^2", fails, elapsed)


def test_criterion_02_seidel_quotient_example():
    t0 = time.perf_counter()
    spec = spectrum_of(quotient_seidel(ChainString((1, 2, 2, 2, 2, 1))))
    fails = match_printed(spec, [(5.4721, 2), (1, 1), (-1, 1), (-3.4721, 2)])
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        fails.append(f"runtime {elapsed:.2f}s >= 1s")
    record(2, "Seidel quotient spectrum of 0^1 1^2 0^2 1^2 0^2 1^1", fails, elapsed)


GAP_EXAMPLES = {
    (2, 4, 2, 6, 2, 2): [(21.1168, 1), (11, 1), (3.8831, 1), (-1, 13), (-7, 2)],
    (5, 2, 4, 4, 2, 1): [(13.7445, 1), (7, 1), (2.2554, 1), (-1, 13), (-5, 2)],
}


def test_criterion_03_ms_gap_examples():
    t0 = time.perf_counter()
    found = {canonical_form(g) for g in find_ms_gap_examples(18, 3)}
    fails = []
    for blocks, printed in GAP_EXAMPLES.items():
        g = ChainString(blocks)
        if canonical_form(g) not in found:
            fails.append(f"{blocks} not returned")
        spec = seidel_spectrum(g)
        if distinct_count(spec) != 5:
            fails.append(f"{blocks}: M_S = {distinct_count(spec)}")
        fails += [f"{blocks}: {p}" for p in match_printed(spec, printed)]
    elapsed = time.perf_counter() - t0
    if elapsed >= 300:
        fails.append(f"runtime {elapsed:.1f}s >= 300s")
    record(3, "M_S gap examples at n=18, h=3", fails, elapsed)


def test_criterion_04_exhaustive_laws():
    t0 = time.perf_counter()
    graphs = [g for n in range(2, 11) for g in enumerate_chain_strings(n, dedup=True)]
    fails = []
    required = {"adjacency-laws", "seidel-laws", "f-matrix", "quotient-consistency", "quotient-sign-balance"}
    for rep in run_suite(graphs):
        if rep.verdict == Verdict.FAILS or (rep.claim_id in required and rep.verdict != Verdict.HOLDS):
            bad = [k for k, v in rep.witness.get("checks", {}).items() if not v]
            fails.append(f"{rep.instance} {rep.claim_id} {bad}")
    elapsed = time.perf_counter() - t0
    if len(graphs) < 200:
        fails.append(f"only {len(graphs)} instances")
    if elapsed >= 120:
        fails.append(f"runtime {elapsed:.1f}s >= 120s")
    record(4, f"law suite on all {len(graphs)} canonical strings with n <= 10", fails, elapsed)


def test_criterion_05_distinct_classifications():
    t0 = time.perf_counter()
    fails = []
    for n in range(2, 11):
        for g in enumerate_chain_strings(n, dedup=True):
            for rep in (classify_distinct_adjacency(g), classify_distinct_seidel(g)):
                if not rep.holds:
                    fails.append(f"{g} {rep.claim_id} {rep.witness}")
    for h in range(1, 7):
        g = ChainString((1,) * (2 * h))
        if distinct_count(seidel_spectrum(g)) != g.n:
            fails.append(f"all-ones h={h} has repeated Seidel roots")
    elapsed = time.perf_counter() - t0
    record(5, "distinct-eigenvalue classifications", fails, elapsed)


def test_criterion_06_h1_uniqueness():
    t0 = time.perf_counter()
    fails = []
    for n in range(2, 21):
        pairs = find_cospectral_pairs(n, h=1)
        if pairs:
            fails.append(f"n={n}: {pairs}")
        for a1 in range(1, n):
            g = ChainString((a1, n - a1))
            p = full_char_poly(g, "adjacency")
            if p != X ** (n - 2) * (X ** 2 - a1 * (n - a1)):
                fails.append(f"{g}: char poly {p}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 10:
        fails.append(f"runtime {elapsed:.1f}s >= 10s")
    record(6, "h=1 slice empty for n <= 20, spectra {+-sqrt(a1 a2), 0^(n-2)}", fails, elapsed)


def test_criterion_07_family_sweep():
    t0 = time.perf_counter()
    fails = []
    count = 0
    for a1, a2, a3, a4 in product(range(1, 6), repeat=4):
        if a1 * a4 != a2 * a3:
            continue
        count += 1
        g, h, rep = construct_cospectral_pair(a1, a2, a3, a4)
        if not are_cospectral(g, h):
            fails.append(f"{(a1, a2, a3, a4)} not cospectral")
        if a1 != a2 and a1 != a3 and is_isomorphic(g, h):
            fails.append(f"{(a1, a2, a3, a4)} isomorphic")
        if not rep.holds:
            fails.append(f"{(a1, a2, a3, a4)} report {rep.witness['checks']}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 30:
        fails.append(f"runtime {elapsed:.1f}s >= 30s")
    record(7, f"a1*a4 = a2*a3 family sweep over [1,5]^4 ({count} tuples)", fails, elapsed)


def test_criterion_08_tridiagonal():
    t0 = time.perf_counter()
    fails = []
    for c in (-3, -2, -1, 0, Fraction(1, 2), 1, 2, 3):
        for k in range(31):
            if tridiag_det_closed(k, c) != tridiag_det_recurrence(k, c):
                fails.append(f"D_{k}({c})")
    for k in range(31):
        if tridiag_det_closed(k, 2) != k + 1 or tridiag_det_closed(k, -2) != (-1) ** k * (k + 1):
            fails.append(f"boundary k={k}")
    record(8, "D_k(c) closed form equals recurrence", fails, time.perf_counter() - t0)


def test_criterion_09_oracle_agreement():
    t0 = time.perf_counter()
    fails = []
    for seed in range(500):
        rng = random.Random(seed)
        n = rng.randint(2, 20)
        g = random_chain_string(n, rng.randint(1, n // 2), seed)
        for kind, m, spec in (("A", adjacency_matrix(g), adjacency_spectrum(g)),
                              ("S", seidel_matrix(g), seidel_spectrum(g))):
            jac = np.array(jacobi_eigenvalues(m))
            cert = np.array(spec.as_floats())
            if jac.shape != cert.shape or np.max(np.abs(jac - cert)) > 1e-6:
                fails.append(f"seed {seed} {kind} {g}")
        s = seidel_matrix(g)
        for x in seidel_duplicate_eigenvectors(g):
            if not np.array_equal(s @ x, -x):
                fails.append(f"seed {seed} eigenvector")
    record(9, "Jacobi vs certified roots on 500 random strings", fails, time.perf_counter() - t0)


def test_criterion_10_census_determinism():
    t0 = time.perf_counter()
    serial = conjecture_census(12, jobs=1).render()
    sharded = conjecture_census(12, jobs=8).render()
    fails = [] if serial.encode() == sharded.encode() else ["jobs=1 and jobs=8 outputs differ"]
    record(10, "census n_max=12 byte-identical for jobs=1 and jobs=8", fails, time.perf_counter() - t0)


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
