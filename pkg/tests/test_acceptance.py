"""Acceptance gate: one test per criterion, each at its stated tolerance."""
import json
import random
import time
from fractions import Fraction

import pytest

from relpres import fixtures
from relpres.cli import RunConfig, run
from relpres.groups import Free, FreeAbelian, cyclic_table
from relpres.howie import (
    Edge,
    Face,
    FaceType,
    HowieDiagram,
    NontrivialInteriorLabel,
    NotSpherical,
    Side,
    check_parity_invariant,
    corner,
    inv,
    schedule_of,
    simulate,
    validate,
    x_endpoint_offsets,
)
from relpres.presentations import (
    GeneralizedPresentation,
    SetSystem,
    SplittingCase,
    check_omega_conditions,
    generalized_unimodular_report,
    rewrite_to_coset_form,
)
from relpres.up import FiniteSubset, has_strong_up, maximal_cyclic_window
from relpres.words import FreeProduct, FreeSyllable, is_proper_power

from oracles import proper_powers, reduced_words


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_c01_rt_block_family(criterion):
    criterion(1, "s_i prod (r t_ij) family satisfies C'(1/100), ratio < 1/100, < 30 s")
    (status, text), dt = timed(lambda: run(RunConfig(
        "sc-check", lam=Fraction(1, 100), family="section5", count=3, blocks=1000)))
    rep = json.loads(text)
    assert status == 0 and rep["holds"] is True
    assert Fraction(rep["ratio"]) < Fraction(1, 100)
    assert dt < 30


def test_c02_g_block_family(criterion):
    criterion(2, "v_i s_i^-1 family (l=2, J=2017) satisfies C'(1/200), < 60 s")
    (status, text), dt = timed(lambda: run(RunConfig(
        "sc-check", lam=Fraction(1, 200), family="lemma3", l=2, count=3, J=2017)))
    rep = json.loads(text)
    assert status == 0 and rep["holds"] is True
    assert Fraction(rep["ratio"]) < Fraction(1, 200)
    assert dt < 60


def test_c03_proper_power_oracle(criterion):
    criterion(3, "is_proper_power agrees with exhaustive oracle on words of length <= 8, < 60 s")
    amb = FreeProduct({}, ["a", "b"])

    def check():
        powers = proper_powers(8)
        mismatches = []
        for w in reduced_words(8):
            word = amb.reduce(FreeSyllable(g, e) for g, e in w)
            got = is_proper_power(word) is not None
            if got != ((not w) or w in powers):
                mismatches.append(w)
        return mismatches

    mismatches, dt = timed(check)
    assert mismatches == []
    assert dt < 60


def test_c04_normal_form_properties(criterion):
    criterion(4, "reduce is idempotent and a concatenation homomorphism on 10^4 raw words")
    rng = random.Random(4)
    amb = FreeProduct({"F": Free(("a", "b")), "Z": FreeAbelian(2), "C": cyclic_table(3)},
                      ["t", "x"])
    letters = ["a", "b", "a^-1", "b^-1", "a b", "b^-1 a", ""]

    def syl():
        k = rng.randrange(4)
        if k == 0:
            return FreeSyllable(rng.choice("tx"), rng.randint(-2, 2))
        if k == 1:
            return amb.syllable("F", rng.choice(letters))
        if k == 2:
            return amb.syllable("Z", (rng.randint(-1, 1), rng.randint(-1, 1)))
        return amb.syllable("C", rng.randrange(3))

    for _ in range(10_000):
        r1 = [syl() for _ in range(rng.randint(0, 10))]
        r2 = [syl() for _ in range(rng.randint(0, 10))]
        w1, w2 = amb.reduce(r1), amb.reduce(r2)
        assert amb.reduce(list(w1)) == w1
        assert amb.reduce(r1 + r2) == w1 * w2


def test_c05_coset_round_trip(criterion):
    criterion(5, "coset form expands back to the relator; |X1| >= 2 when nonsplitting (200 cases)")
    rng = random.Random(5)
    G = Free(("a", "b", "c"))
    done = nonsplit = 0
    while done < 200:
        rank = rng.choice([2, 3])
        T = FreeAbelian(rank)
        n = rng.randint(2, 5)
        ts = [tuple(rng.randint(-3, 3) for _ in range(rank)) for _ in range(n)]
        p = GeneralizedPresentation(G, T, [G.element(rng.choice(["a", "b", "c a", "b^-1", ""]))
                                           for _ in range(n)], [T.element(t) for t in ts])
        if not generalized_unimodular_report(p).verdict:
            continue  # only primitive t
        done += 1
        try:
            form = rewrite_to_coset_form(p)
        except SplittingCase:
            continue
        nonsplit += 1
        assert form.expand() == p.relator
        assert len(form.X1) >= 2
    assert nonsplit > 50


def test_c06_set_systems(criterion):
    criterion(6, "example set system passes, triangle fails with a witness, < 1 s")
    t0 = time.perf_counter()
    ok = check_omega_conditions(SetSystem("abcdef", ["abde", "bcef", "def"]))
    bad = check_omega_conditions(SetSystem("abc", ["ab", "bc", "ca"]))
    assert ok.ok
    assert not bad.ok and bad.failing_subfamily == (0, 1, 2)
    assert time.perf_counter() - t0 < 1


def test_c07_strong_up(criterion):
    criterion(7, "strong UP on 10^4 random subsets of Z^2; Z_2 full group fails")
    rng = random.Random(7)
    Z2 = FreeAbelian(2)

    def pts(k):
        return [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(k)]

    for _ in range(10_000):
        X = FiniteSubset(Z2, pts(rng.randint(1, 6)))
        ys = set(pts(rng.randint(2, 6)))
        while len(ys) < 2:
            ys |= set(pts(1))
        r = has_strong_up(X, FiniteSubset(Z2, ys))
        assert r.holds is True
        assert r.witnesses[0].y != r.witnesses[1].y
    C2 = cyclic_table(2)
    full = FiniteSubset(C2, [0, 1])
    assert has_strong_up(full, full).holds is False


def test_c08_maximal_cyclic_window(criterion):
    criterion(8, "Z + Z_3 window: <(1,1)>, <(3,1)>, <(9,1)>, <(27,1)> distinct, no containment")
    rep = maximal_cyclic_window(p=3, bound=100, count=4)
    assert rep.generators == ((1, 1), (3, 1), (9, 1), (27, 1))
    assert rep.pairwise_distinct and rep.no_containment and rep.maximal_in_window


def test_c09_schedules(criterion):
    criterion(9, "schedules: period 4m, C period 2, W at a_m at 2m, parity holds (m = 1..3), < 5 s")
    t0 = time.perf_counter()
    for m in (1, 2, 3):
        d = fixtures.sandwich(m)
        assert {f.type for f in d.faces} == set(FaceType)
        for i, f in enumerate(d.faces):
            s = schedule_of(d, i)
            assert (4 * m) % s.period == 0
            if f.type is FaceType.C_FACE:
                assert s.period == 2
            else:
                assert s.period == 4 * m
            if f.type is FaceType.W_FACE:
                j = next(k for k, side in enumerate(f.sides) if side.corner == corner(f"a{m}"))
                assert s.corner_time(j) % (4 * m) == 2 * m
        rep = check_parity_invariant(d)
        assert rep.t_edges_ok and rep.x_edges_ok
    assert time.perf_counter() - t0 < 5


def test_c10_car_crash(criterion):
    criterion(10, "every valid fixture has at least two complete-collision points per period")
    fx = fixtures.all_fixtures()
    assert len(fx) >= 3 and "c_balloon" in fx
    for name, d in fx.items():
        assert validate(d).valid, name
        assert len(simulate(d).complete_points) >= 2, name


def test_c11_x_edge_endpoints(criterion):
    criterion(11, "strongly reduced fixture: no complete collision at x-edge ends, offsets +-1/2")
    for m in (1, 2, 3):
        d = fixtures.sandwich(m)
        ends = {v for e in d.edges if e.label == "x" for v in (e.tail, e.head)}
        for ev in simulate(d).events:
            assert not (ev.kind == "vertex" and ev.where in ends and ev.complete)
        H = 4 * m
        for row in x_endpoint_offsets(d):
            assert row["differences"]
            assert set(row["differences"]) <= {Fraction(1, 2), H - Fraction(1, 2)}


def test_c12_validation_negatives(criterion):
    criterion(12, "corrupted interior label and non-spherical map are rejected with the right errors")
    d = fixtures.c_balloon()
    c2 = corner("c'")
    bad_face = Face("f2", FaceType.C_FACE, (Side("e2", False, inv(c2)), Side("e1", True, c2)))
    corrupted = HowieDiagram(d.m, d.vertices, d.exterior, d.edges, (d.faces[0], bad_face))
    with pytest.raises(NontrivialInteriorLabel):
        validate(corrupted)
    torus = HowieDiagram(
        1, ("v",), "v", (Edge("a", "v", "v", "t"), Edge("b", "v", "v", "t")),
        (Face("f", FaceType.C_FACE, (Side("a", True, c2), Side("b", True, c2),
                                     Side("a", False, c2), Side("b", False, c2))),))
    with pytest.raises(NotSpherical):
        validate(torus)
