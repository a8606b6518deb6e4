import math

import pytest
from hypothesis import given, settings, strategies as st

from relpres.groups import Free, FreeAbelian, cyclic_table
from relpres.presentations import (
    GeneralizedPresentation,
    NotUnimodular,
    PresentationError,
    RelativePresentation,
    SetSystem,
    SplittingCase,
    TooLarge,
    check_omega_conditions,
    coefficients,
    generalized_unimodular_report,
    hypothesis_report,
    is_unimodular,
    rewrite_to_coset_form,
    right_action,
    split_cases,
    translate_cosets,
)
from relpres.words import FreeProduct, FreeSyllable, SubproductSpec

AMB = FreeProduct({"G1": FreeAbelian(2), "G2": FreeAbelian(2)}, ["t", "x1", "x2"])


def g(v, f="G1"):
    return AMB.syllable(f, v)


def x(name, e=1):
    return FreeSyllable(name, e)


def pres(raw):
    return RelativePresentation.from_word(AMB.reduce(raw))


@pytest.mark.parametrize("exps,expected", [((1, 1, -1), True), ((1, -1), False), ((-1,), True)])
def test_is_unimodular(exps, expected):
    raw = []
    for i, e in enumerate(exps):
        raw += [g((i + 1, 0)), x("t", e)]
    assert is_unimodular(pres(raw), "t") is expected


def test_not_cyclically_reduced_rejected():
    w = AMB.reduce([x("t"), g((1, 0)), x("t", -1)])
    with pytest.raises(PresentationError):
        RelativePresentation(AMB, w)


# -- generalised unimodularity -----------------------------------------------------

def gp(T, ts, G=None):
    G = G or Free(("a", "b"))
    gs = [G.element("a" if i % 2 == 0 else "b") for i in range(len(ts))]
    return GeneralizedPresentation(G, T, gs, [T.element(t) for t in ts])


def test_generalized_primitive():
    r = generalized_unimodular_report(gp(FreeAbelian(2), [(1, 0), (0, 1)]))
    assert r.t.value == (1, 1) and r.cond1 and r.cond2 and r.cond3 and r.verdict


def test_generalized_zero_t():
    r = generalized_unimodular_report(gp(FreeAbelian(1), [(1,), (-1,)]))
    assert r.cond1 is False and r.verdict is False


def test_generalized_torsion_quotient():
    r = generalized_unimodular_report(gp(FreeAbelian(2), [(2, 0), (0, 2)]))
    # Smith normal form of [[2, 2]] is [2, 0]: Z^2/<(2,2)> = Z + Z_2
    assert math.gcd(*r.t.value) == 2
    assert r.cond3 is False and r.verdict is False
    assert any("torsion" in n for n in r.notes)


def test_generalized_finite_T():
    r = generalized_unimodular_report(gp(cyclic_table(3), [1, 1]))
    assert r.cond1 is False and r.verdict is False


# -- coset form ---------------------------------------------------------------------

def test_coset_form_example():
    p = gp(FreeAbelian(2), [(1, 0), (0, 1)])
    form = rewrite_to_coset_form(p)
    assert len(form.X1) == 2
    assert form.expand() == p.relator


def test_coset_form_splitting():
    with pytest.raises(SplittingCase):
        rewrite_to_coset_form(gp(FreeAbelian(2), [(1, 1), (2, 2), (-2, -2)]))


def test_coset_form_not_unimodular():
    with pytest.raises(NotUnimodular):
        rewrite_to_coset_form(gp(FreeAbelian(2), [(2, 0), (0, 2)]))


def test_coset_form_trivial_coefficients():
    G = Free(("a",))
    T = FreeAbelian(2)
    p = GeneralizedPresentation(G, T, [G.identity(), G.identity()],
                                [T.element((1, 0)), T.element((0, 1))])
    form = rewrite_to_coset_form(p)
    assert form.entries == ()
    # labels of prefix conjugators 0 and -(1,0) modulo <(1,1)>
    assert len(form.X1) == 2


def _oracle_X1(ts):
    """Coset labels of the prefix conjugators, decided by pairwise membership in <t>."""
    t = tuple(map(sum, zip(*ts)))
    prefixes, acc = [], tuple(0 for _ in t)
    for ti in ts:
        prefixes.append(tuple(-a for a in acc))
        acc = tuple(a + b for a, b in zip(acc, ti))
    classes = []
    for y in prefixes:
        for c in classes:
            d = [a - b for a, b in zip(y, c)]
            i = next(k for k, v in enumerate(t) if v)
            if d[i] % t[i] == 0 and all((d[i] // t[i]) * v == e for v, e in zip(t, d)):
                break
        else:
            classes.append(y)
    return len(classes)


vec2 = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


@given(st.lists(vec2, min_size=2, max_size=5))
@settings(max_examples=150)
def test_coset_round_trip(ts):
    T = FreeAbelian(2)
    p = gp(T, ts)
    rep = generalized_unimodular_report(p)
    if not rep.verdict:
        return
    try:
        form = rewrite_to_coset_form(p)
    except SplittingCase:
        return
    assert form.expand() == p.relator
    assert len(form.X1) == _oracle_X1(ts)
    assert len(form.X1) >= 2
    for e in form.entries:
        y = form.conjugator(e)
        assert y.backend == T


def test_right_action_formula():
    T = FreeAbelian(2)
    t = T.element((1, 1))
    c, l, eps = right_action(T, t, (0, 0), T.element((3, 2)))
    assert eps == 1
    assert tuple(a + l * b for a, b in zip(c, t.value)) == (3, 2)
    moved = translate_cosets(T, t, {(0, 0), (0, 1)}, T.element((0, 1)))
    assert len(moved) == 2


# -- case split ------------------------------------------------------------------------

def test_case_proper_power():
    rep = split_cases(pres([x("x1"), g((1, 0)), x("x2"), x("x1"), g((0, 1)), x("x2")]))
    assert rep.case == "PROPER_POWER" and rep.k == 2
    assert rep.root == AMB.reduce([x("x1"), x("x2")])


def test_case_not_proper_power():
    rep = split_cases(pres([x("x1"), g((1, 0)), x("x2"), x("x1", -1), x("x2", -1)]))
    assert rep.case == "NOT_PROPER_POWER"
    assert len(rep.T_relators) == 3  # one per added generator t, x1, x2
    assert rep.abelianization_rank == 3


def test_case_two_generators():
    amb = FreeProduct({"G1": FreeAbelian(1)}, ["x1", "x2"])
    w = amb.reduce([x("x1"), amb.syllable("G1", (1,)), x("x2"), x("x1", -1), x("x2", -1)])
    rep = split_cases(RelativePresentation.from_word(w))
    assert rep.case == "NOT_PROPER_POWER" and len(rep.T_relators) == 2
    assert rep.abelianization_rank == 2 and rep.T_noncyclic


def test_case_identity_is_proper_power():
    amb = FreeProduct({"G1": FreeAbelian(1)}, ["x1"])
    w = amb.reduce([x("x1"), amb.syllable("G1", (1,)), x("x1", -1), amb.syllable("G1", (2,))])
    rep = split_cases(RelativePresentation.from_word(w))
    assert rep.case == "PROPER_POWER" and rep.erased.is_identity


# -- set systems -------------------------------------------------------------------

def test_omega_example():
    s = SetSystem("abcdef", ["abde", "bcef", "def"])
    rep = check_omega_conditions(s)
    assert rep.ok and rep.failing_subfamily is None
    assert rep.checked == 4


def test_omega_triangle():
    rep = check_omega_conditions(SetSystem("abc", ["ab", "bc", "ca"]))
    assert not rep.ok and rep.failing_subfamily == (0, 1, 2)


def test_omega_singleton():
    rep = check_omega_conditions(SetSystem("ab", ["ab"]))
    assert rep.ok and rep.checked == 0


def test_omega_too_large():
    with pytest.raises(TooLarge):
        check_omega_conditions(SetSystem(range(21), [[i] for i in range(21)]))


def _brute_ok(omega):
    """Every subfamily of size >= 2 has two elements of its union, each in
    exactly one member, lying in different members."""
    import itertools
    for r in range(2, len(omega) + 1):
        for fam in itertools.combinations(omega, r):
            once = [a for a in set().union(*fam) if sum(a in w for w in fam) == 1]
            owners = {next(i for i, w in enumerate(fam) if a in w) for a in once}
            if len(owners) < 2:
                return False
    return True


@given(st.lists(st.sets(st.integers(0, 5), min_size=1), min_size=1, max_size=5))
@settings(max_examples=200)
def test_omega_matches_brute_force(omega):
    s = SetSystem(range(6), omega)
    assert check_omega_conditions(s).ok == _brute_ok([frozenset(w) for w in omega])


def test_translates_of_example():
    """Translates by x of the example family keep the conditions (shifted labels)."""
    s = SetSystem(range(10), [{0, 1, 3, 4}, {1, 2, 4, 5}, {3, 4, 5}, {5, 6, 8, 9}])
    assert check_omega_conditions(s).ok


# -- hypothesis bundle ---------------------------------------------------------------

def test_hypotheses_all_green():
    p = pres([x("t"), g((1, 0)), x("t"), g((0, 1), "G2"), x("t", -1), g((1, 1))])
    rep = hypothesis_report(p, SubproductSpec(["G1"]), "t")
    assert rep.unimodular and rep.coefficients_infinite_order
    assert rep.w_not_conjugate_into_subfamily and not rep.splitting_flag
    assert rep.all_green


def test_hypotheses_conjugate_into_subfamily():
    p = pres([x("t"), g((1, 0)), x("t"), g((0, 1)), x("t", -1), g((1, 1))])
    rep = hypothesis_report(p, SubproductSpec(["G1"]), "t")
    assert not rep.w_not_conjugate_into_subfamily and not rep.all_green


def test_hypotheses_splitting():
    rep = hypothesis_report(pres([x("t")]), SubproductSpec(), "t")
    assert rep.splitting_flag


def test_coefficients_are_cyclic_gaps():
    w = AMB.reduce([x("t"), g((1, 0)), x("t"), g((0, 1)), x("x1"), x("t", -1)])
    cs = coefficients(w, "t")
    assert [repr(c) for c in cs] == ["G1:(1, 0)", "G1:(0, 1) x1"]
