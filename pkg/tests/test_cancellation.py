from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from scancel.cancellation import (
    check_c_prime,
    check_singular_asphericity_preconditions,
    max_common_prefix_table,
    max_subword_piece_table,
    parse_fraction,
    prefix_piece_table,
)
from scancel.constructions import build_independence_family
from scancel.presentation import Presentation, symmetrize
from scancel.words import Alphabet, cyclic_reduce

AB = Alphabet(("a", "b"))
ABC = Alphabet(("a", "b", "c"))
SIXTH = Fraction(1, 6)


def pres(*rels, alphabet=AB):
    return Presentation(alphabet, tuple(alphabet.parse(r) for r in rels))


def test_table_single_relator_has_no_pieces():
    s = symmetrize(pres("a*b"))
    assert set(max_common_prefix_table(s).values()) == {0}


def test_table_commutator_matches_oracle():
    p = pres("a*b*a^-1*b^-1")
    table = max_common_prefix_table(symmetrize(p))
    assert table == oracles.piece_table(p.relators)
    assert len(table) == 8
    assert set(table.values()) == {1}


def test_torus_fails_sixth_with_checkable_witness():
    p = pres("a*b*a^-1*b^-1")
    report = check_c_prime(p, SIXTH)
    assert not report.holds
    assert report.max_ratio == Fraction(1, 4)
    v = report.violation
    s = symmetrize(p)
    assert v.member in s and v.partner in s and v.member != v.partner
    k = len(v.piece)
    assert k >= 1 and v.member[:k] == v.piece == v.partner[:k]
    assert k * 6 >= len(v.member)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_family_S_ratio_one_seventh(n):
    fam = build_independence_family(n)
    report = check_c_prime(fam.S, SIXTH)
    assert report.holds
    assert report.max_ratio == Fraction(1, 7)
    assert report.max_piece == 8
    assert report.violation is None
    assert {r.max_piece for r in report.per_relator} == {8}
    assert len(report.per_relator) == len(fam.S.relators)


@pytest.mark.parametrize("n", [1, 2, 3, pytest.param(4, marks=pytest.mark.slow)])
def test_family_S_every_member_has_max_piece_8(n):
    fam = build_independence_family(n)
    s = symmetrize(fam.S)
    assert len(s) == n * 2**n * 112
    assert all(len(m) == 56 for m in s.members)
    assert set(max_subword_piece_table(s).values()) == {8}


def test_family_S_n1_table_matches_oracle():
    fam = build_independence_family(1)
    assert max_common_prefix_table(symmetrize(fam.S)) == oracles.piece_table(fam.S.relators)


def test_proper_power_is_a_full_length_piece():
    p = pres("a*b*a*b")
    report = check_c_prime(p, Fraction(1, 2))
    assert not report.holds
    assert report.max_ratio == 1
    assert oracles.max_piece(p.relators) == 4


def test_repeated_relator_reports_full_length_piece():
    p = pres("a*b*b", "a*b*b")
    report = check_c_prime(p, Fraction(1))
    assert not report.holds
    v = report.violation
    assert v.piece == v.member == v.partner
    assert v.member_origin != v.partner_origin


def test_c_prime_strict_at_boundary():
    # largest piece 8 in relators of length 56: 8 < 56/7 fails, 8 < 56 * (1/7 + tiny) holds
    fam = build_independence_family(1)
    assert not check_c_prime(fam.S, Fraction(1, 7)).holds
    assert check_c_prime(fam.S, Fraction(8, 56) + Fraction(1, 10**9)).holds


def test_witness_partner_is_lowest_index():
    p = pres("a*b*a^-1*b^-1")
    s = symmetrize(p)
    table = prefix_piece_table(s)
    for i, (m, piece) in enumerate(zip(s.members, table)):
        sharing = [j for j, u in enumerate(s.members) if j != i and u[: piece.length] == m[: piece.length]]
        assert s.members.index(piece.partner) == min(sharing)


def test_asphericity_preconditions_examples():
    assert check_singular_asphericity_preconditions(pres("a*b*a*b")).no_proper_powers is False
    assert check_singular_asphericity_preconditions(pres("a*b", "b*a")).concise is False
    for n in (1, 2, 3, 4):
        flags = check_singular_asphericity_preconditions(build_independence_family(n).S)
        assert flags.c_prime_one_fifth and flags.concise and flags.no_proper_powers and flags.all
        assert flags.annotations == {"torsion_free": True, "hyperbolic": True}


def test_parse_fraction():
    assert parse_fraction("1/6") == SIXTH
    for bad in ("0.5", "1", "a/b", "1/0"):
        with pytest.raises(ValueError):
            parse_fraction(bad)


def test_lambda_domain():
    with pytest.raises(ValueError):
        check_c_prime(pres("a*b"), Fraction(0))
    with pytest.raises(ValueError):
        check_c_prime(pres("a*b"), Fraction(7, 6))


relator = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=10).map(
    lambda u: cyclic_reduce(tuple(u))
).filter(bool)


@settings(max_examples=400, deadline=None)
@given(st.lists(relator, min_size=1, max_size=6))
def test_table_matches_all_pairs_oracle(rels):
    s = symmetrize(rels)
    assert max_common_prefix_table(s) == oracles.piece_table(rels)


@settings(max_examples=200, deadline=None)
@given(st.lists(relator, min_size=1, max_size=6), st.sampled_from([Fraction(1, 6), Fraction(1, 4), Fraction(1, 2), Fraction(1)]))
def test_verdict_matches_oracle(rels, lam):
    p = Presentation(ABC, tuple(rels))
    assert check_c_prime(p, lam).holds == oracles.c_prime_holds(rels, lam)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(relator, min_size=1, max_size=4),
    st.fractions(min_value=Fraction(1, 20), max_value=1, max_denominator=30),
    st.fractions(min_value=0, max_value=1, max_denominator=30),
)
def test_monotone_in_lambda(rels, lam, bump):
    p = Presentation(ABC, tuple(rels))
    higher = min(Fraction(1), lam + bump)
    if check_c_prime(p, lam).holds:
        assert check_c_prime(p, higher).holds
