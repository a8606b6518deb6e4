from fractions import Fraction
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from relpres.groups import Free, FormalSymbols, cyclic_table
from relpres.small_cancellation import (
    IdentityRelator,
    build_lemma3_family,
    build_section5_family,
    check_cprime,
    family_symbols,
    max_piece,
    symmetrize,
)
from relpres.words import FactorSyllable, FreeProduct, FreeSyllable, Word, cyclic_reduce


def rotations_oracle(relators):
    members = set()
    for w in relators:
        u, _ = cyclic_reduce(w)
        for v in (u, ~u):
            s = v.syllables
            for k in range(len(s)):
                members.add(Word(v.ambient, s[k:] + s[:k]))
    return members


def partial(a, b):
    if isinstance(a, FreeSyllable) and isinstance(b, FreeSyllable):
        return a.gen == b.gen and (a.exp > 0) == (b.exp > 0)
    if isinstance(a, FactorSyllable) and isinstance(b, FactorSyllable):
        return a.factor == b.factor
    return False


def piece_oracle(relators):
    best = 0
    members = rotations_oracle(relators)
    for a, b in itertools.permutations(members, 2):
        n = 0
        while n < min(len(a), len(b)) and a[n] == b[n]:
            n += 1
        if n < min(len(a), len(b)) and partial(a[n], b[n]):
            n += 1
        best = max(best, n)
    return best, len(members)


FREE_ABC = FreeProduct({}, ["a", "b", "c"])


def fw(*letters):
    return FREE_ABC.reduce(FreeSyllable(g, e) for g, e in letters)


def test_commutator_piece_one():
    w = fw(("a", 1), ("b", 1), ("a", -1), ("b", -1))
    s = symmetrize([w])
    assert len(s) == 8
    assert max_piece(s).max_piece_syllables == 1 == piece_oracle([w])[0]


def test_repeated_letter_witness():
    w = fw(("a", 1), ("b", 1), ("a", 1), ("c", 1))
    rep = max_piece(symmetrize([w]))
    assert rep.max_piece_syllables == 1 == piece_oracle([w])[0]
    w1, w2, piece = rep.witness
    assert w1[0] == w2[0] and piece == w1.ambient.reduce([w1[0]])


def test_a4_free_factor_fails():
    amb = FreeProduct({"F": Free(("a",))})
    w = amb.reduce([amb.syllable("F", "a a a a")])
    rep = check_cprime([w], Fraction(1, 6))
    assert not rep.holds and rep.pieces.max_piece_syllables == 1


def test_disjoint_alphabets_no_pieces():
    amb = FreeProduct({}, ["a", "b", "c", "d"])
    w1 = amb.reduce([FreeSyllable("a", 1), FreeSyllable("b", 1)])
    w2 = amb.reduce([FreeSyllable("c", 1), FreeSyllable("d", 2)])
    assert max_piece(symmetrize([w1, w2])).max_piece_syllables == 0
    assert piece_oracle([w1, w2])[0] == 0


def test_same_factor_is_charged_a_partial_syllable():
    amb = FreeProduct({"P": FormalSymbols(frozenset("pq")), "Q": FormalSymbols(frozenset("rs"))})
    w = amb.reduce([amb.syllable("P", "p"), amb.syllable("Q", "r")])
    assert max_piece(symmetrize([w])).max_piece_syllables == 1


def test_member_count_bound():
    w = fw(("a", 1), ("b", 2), ("c", -1))
    s = symmetrize([w])
    assert len(s) <= 2 * len(w)
    assert len(symmetrize(s.words())) == len(s)


def test_not_cyclically_reduced_input():
    w = fw(("c", 1), ("a", 1), ("b", 1), ("c", -1))
    assert set(symmetrize([w]).words()) == set(symmetrize([fw(("a", 1), ("b", 1))]).words())


def test_identity_relator():
    with pytest.raises(IdentityRelator):
        symmetrize([fw(("a", 1), ("a", -1))])


# random small relator sets compared with the all-pairs oracle
AMB = FreeProduct({"G": Free(("a", "b")), "H": cyclic_table(3)}, ["t", "u"])
syl = st.one_of(
    st.builds(lambda g, e: FreeSyllable(g, e), st.sampled_from(["t", "u"]),
              st.sampled_from([-2, -1, 1, 2])),
    st.builds(lambda v: AMB.syllable("G", v), st.sampled_from(["a", "b", "a^-1", "a b"])),
    st.builds(lambda v: AMB.syllable("H", v), st.sampled_from([1, 2])),
)


@given(st.lists(st.lists(syl, min_size=1, max_size=7), min_size=1, max_size=3))
@settings(max_examples=300, deadline=None)
def test_max_piece_matches_all_pairs(raws):
    rels = []
    for r in raws:
        u, _ = cyclic_reduce(AMB.reduce(r))
        if not u.is_identity:
            rels.append(u)
    if not rels:
        return
    s = symmetrize(rels)
    best, count = piece_oracle(rels)
    assert len(s) == count
    rep = max_piece(s)
    assert rep.max_piece_syllables == best
    assert rep.min_relator_syllables == min(len(w) for w in rels)


# -- explicit families ---------------------------------------------------------------

def test_g_block_family_shapes():
    rels, _ = build_lemma3_family(2, 1, 2017)
    assert len(rels) == 1 and len(rels[0]) == 4035
    rels, _ = build_lemma3_family(2, 1, 1)
    assert len(rels[0]) == 3
    rels, _ = build_lemma3_family(3, 3, 50)
    syms = family_symbols(rels)
    assert len(syms) == len(set(syms))


def test_rt_block_family_shapes():
    rels, _ = build_section5_family(1, 1000)
    assert len(rels[0]) == 2001
    rels, _ = build_section5_family(1, 1)
    assert len(rels[0]) == 3
    rels, _ = build_section5_family(2, 5)
    syms = family_symbols(rels)
    assert syms.count("r") == 10
    others = [s for s in syms if s != "r"]
    assert len(others) == len(set(others))


def test_small_families_against_oracle():
    for rels in (build_section5_family(2, 4)[0], build_lemma3_family(2, 2, 3)[0]):
        assert max_piece(symmetrize(rels)).max_piece_syllables == piece_oracle(rels)[0]


def test_rt_block_family_one_hundredth():
    rep = check_cprime(build_section5_family(3, 1000)[0], Fraction(1, 100))
    assert rep.holds and rep.pieces.ratio < Fraction(1, 100)
