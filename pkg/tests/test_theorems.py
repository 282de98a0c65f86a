import pytest

from chainspec.errors import PreconditionViolatedError
from chainspec.poly import Poly
from chainspec.strings import ChainString, enumerate_chain_strings, random_chain_string
from chainspec.theorems import (
    CLAIMS,
    F_display_pattern,
    Verdict,
    build_F_matrix,
    construct_cospectral_pair,
    distinct_sign_split,
    partner_quartic_h2,
    quartic_charpoly_h2,
    refute_conjecture,
    row_reduce_to_F,
    run_claims,
    run_suite,
    verify_h1_uniqueness,
    verify_quotient_sign_balance,
    verify_seidel_laws,
)


def test_quartic():
    assert quartic_charpoly_h2(1, 2, 2, 4) == Poly((16, 0, -14, 0, 1))
    assert partner_quartic_h2(1, 2, 2, 4) == Poly((16, 0, -14, 0, 1))
    assert quartic_charpoly_h2(2, 1, 1, 3) == Poly((6, 0, -11, 0, 1))


def test_cospectral_pair():
    g, h, rep = construct_cospectral_pair(1, 2, 2, 4)
    assert (str(g), str(h)) == ("0^1 1^2 0^2 1^4", "0^2 1^1 0^4 1^2")
    assert rep.verdict == Verdict.HOLDS
    assert rep.witness["isomorphic"] is False
    with pytest.raises(PreconditionViolatedError):
        construct_cospectral_pair(1, 2, 2, 5)


def test_degenerate_pair_is_isomorphic():
    # a1 == a2 forces a3 == a4, so the swap is an automorphism of the construction
    g, h, rep = construct_cospectral_pair(2, 2, 3, 3)
    assert rep.holds and rep.witness["isomorphic"]


def test_refutation_and_h1():
    assert refute_conjecture().holds
    for n in (2, 7, 12):
        assert verify_h1_uniqueness(n).holds


def test_F_matrix_small():
    F, rep = build_F_matrix(ChainString((1, 1)))
    assert rep.holds
    F, rep = build_F_matrix(ChainString((2, 3)))
    assert rep.holds


@pytest.mark.parametrize("blocks", [(1, 2, 2, 4), (1, 1, 1, 1), (3, 1, 2, 2, 1, 4), (2, 2, 1, 3, 1, 1, 2, 1)])
def test_F_matrix_matches_display(blocks):
    g = ChainString(blocks)
    assert row_reduce_to_F(g) == F_display_pattern(g)
    assert build_F_matrix(g)[1].holds


@pytest.mark.parametrize("n", range(2, 9))
def test_all_claims_hold_exhaustively(n):
    for g in enumerate_chain_strings(n, dedup=True):
        for rep in run_claims(g):
            assert rep.verdict != Verdict.FAILS, (str(g), rep.claim_id, rep.witness)


def test_seidel_witness():
    rep = verify_seidel_laws(ChainString((2, 3)))
    assert rep.witness["inertia"] == [1, 0, 4]
    assert rep.witness["minus_one_multiplicity"] == 4
    assert verify_quotient_sign_balance(ChainString((2, 3))).holds


def test_sign_split_of_gap_examples():
    assert distinct_sign_split(ChainString((2, 4, 2, 6, 2, 2))) == (3, 2)
    assert distinct_sign_split(ChainString((5, 2, 4, 4, 2, 1))) == (3, 2)


def test_run_claims_unknown():
    with pytest.raises(KeyError):
        run_claims(ChainString((1, 1)), "no-such-claim")
    assert set(CLAIMS) >= {"adjacency-laws", "seidel-laws", "f-matrix"}


def test_run_suite_parallel_matches_serial():
    gs = [random_chain_string(9, 2, s) for s in range(6)]
    a = [r.to_json() for r in run_suite(gs, jobs=1)]
    b = [r.to_json() for r in run_suite(gs, jobs=2)]
    assert a == b
