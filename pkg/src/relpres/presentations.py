"""One-relator relative presentations and the checkable parts of their analysis.

Two presentation shapes are modelled:

* :class:`RelativePresentation` -- ``<G_1 * ... * G_l, x_1..x_n | w>``, the
  relator being a cyclically reduced word of the ambient free product;
* :class:`GeneralizedPresentation` -- ``<G * T | g_1 t_1 ... g_n t_n>`` with T a
  second group (only free abelian T is analysed exactly).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import reduce as _fold
from typing import Dict, List, Optional, Sequence, Tuple

from .groups import (
    Element,
    FiniteTable,
    FreeAbelian,
    GroupBackend,
    GroupError,
    INFINITE,
    coset_decompose,
)
from .words import (
    FactorSyllable,
    FreeProduct,
    FreeSyllable,
    SubproductSpec,
    Word,
    cyclic_reduce,
    erase_coefficients,
    exponent_sum,
    has_infinite_order,
    is_proper_power,
    membership_in_subproduct,
)


class PresentationError(GroupError):
    pass


class NotUnimodular(PresentationError):
    pass


class SplittingCase(PresentationError):
    pass


class TooLarge(PresentationError):
    pass


@dataclass(frozen=True)
class RelativePresentation:
    ambient: FreeProduct
    relator: Word

    def __post_init__(self):
        cyc, _ = cyclic_reduce(self.relator)
        if cyc != self.relator:
            raise PresentationError("relator must be cyclically reduced")

    @classmethod
    def from_word(cls, w: Word) -> "RelativePresentation":
        return cls(w.ambient, cyclic_reduce(w)[0])

    @property
    def free_gens(self) -> Tuple[str, ...]:
        return self.ambient.free_gens

    def inverted(self) -> "RelativePresentation":
        return RelativePresentation(self.ambient, ~self.relator)


def is_unimodular(p: RelativePresentation, gen: str) -> bool:
    if gen not in p.free_gens:
        raise PresentationError(f"{gen!r} is not an added generator")
    return exponent_sum(p.relator, gen) in (1, -1)


# -- generalised presentations over G * T -------------------------------------

@dataclass(frozen=True)
class GeneralizedPresentation:
    """``prod g_i t_i = 1`` over ``G * T``; coefficients may be trivial."""

    G: GroupBackend
    T: GroupBackend
    coefficients: Tuple[Element, ...]
    t_elements: Tuple[Element, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        object.__setattr__(self, "t_elements", tuple(self.t_elements))
        if len(self.coefficients) != len(self.t_elements) or not self.coefficients:
            raise PresentationError("need matching, nonempty g_i and t_i lists")
        for g in self.coefficients:
            if g.backend != self.G:
                raise PresentationError(f"coefficient {g!r} is not in G")
        for t in self.t_elements:
            if t.backend != self.T:
                raise PresentationError(f"{t!r} is not an element of T")

    @property
    def ambient(self) -> FreeProduct:
        return FreeProduct({"G": self.G, "T": self.T})

    @property
    def relator(self) -> Word:
        amb = self.ambient
        raw = []
        for g, t in zip(self.coefficients, self.t_elements):
            raw += [FactorSyllable("G", g), FactorSyllable("T", t)]
        return amb.reduce(raw)

    @property
    def t(self) -> Element:
        return _fold(lambda a, b: a * b, self.t_elements)


@dataclass
class UnimodularityReport:
    t: Element
    cond1: Optional[bool]
    cond2: Optional[bool]
    cond3: Optional[bool]
    verdict: Optional[bool]
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"t": _json_value(self.t), "cond1_infinite_order": self.cond1,
                "cond2_normal": self.cond2, "cond3_strong_up": self.cond3,
                "verdict": self.verdict, "notes": list(self.notes)}


def _json_value(g: Element):
    v = g.value
    if isinstance(v, tuple) and v and isinstance(v[0], tuple):
        return g.backend.format(v)
    return list(v) if isinstance(v, tuple) else v


def generalized_unimodular_report(p: GeneralizedPresentation) -> UnimodularityReport:
    """Generalised unimodularity: t of infinite order, <t> normal in T,
    and T/<t> with the strong unique product property.

    For T = Z^k everything is decidable: <t> is automatically normal, and
    Z^k/<t> is free abelian (hence right-orderable) exactly when t is
    primitive, otherwise it has torsion and is not even a UP-group.  For a
    finite T the order condition fails.  Other T are reported as
    unverified (None).
    """
    T, t = p.T, p.t
    if isinstance(T, FreeAbelian):
        if t.is_identity:
            return UnimodularityReport(t, False, True, None, False,
                                       ["t = 0 has finite order"])
        g = math.gcd(*t.value)
        primitive = g == 1
        notes = [] if primitive else [f"Z^{T.rank}/<t> has torsion of order {g}"]
        return UnimodularityReport(t, True, True, primitive, primitive, notes)
    if isinstance(T, FiniteTable):
        return UnimodularityReport(t, False, None, None, False,
                                   ["every element of a finite group has finite order"])
    cond1 = T.order(t.value) == INFINITE
    return UnimodularityReport(t, cond1, None, None, None if cond1 else False,
                               [f"normality and strong UP not decidable for {T.kind}"])


# -- coset form: pushing T-letters to the left --------------------------------

@dataclass(frozen=True)
class CosetEntry:
    g: Element
    coset: tuple  # canonical representative c_x of x = y<t>
    k: int


@dataclass(frozen=True)
class CosetForm:
    """``t * prod_i g_i^(c_{x_i} t^{k_i}) = 1`` together with the set X_1."""

    presentation: GeneralizedPresentation
    t: Element
    entries: Tuple[CosetEntry, ...]
    X1: frozenset

    def conjugator(self, entry: CosetEntry) -> Element:
        T = self.presentation.T
        return Element(T, entry.coset) * (self.t ** entry.k)

    def expand(self) -> Word:
        """``prod_i y_i^-1 g_i y_i * t`` in G * T; equals the original relator."""
        amb = self.presentation.ambient
        raw = []
        for e in self.entries:
            y = self.conjugator(e)
            raw += [FactorSyllable("T", ~y), FactorSyllable("G", e.g), FactorSyllable("T", y)]
        raw.append(FactorSyllable("T", self.t))
        return amb.reduce(raw)

    def relation_word(self) -> Word:
        """The form ``t * prod g_i^{y_i}`` (a cyclic conjugate of :meth:`expand`)."""
        amb = self.presentation.ambient
        return amb.elem("T", self.t) * self.expand() * amb.elem("T", ~self.t)


def _in_cyclic(t: Element, s: Element) -> bool:
    # s in <t> for t != 0 in Z^k
    rep, _ = coset_decompose(t.backend, t, s)
    return rep.is_identity


def rewrite_to_coset_form(p: GeneralizedPresentation) -> CosetForm:
    report = generalized_unimodular_report(p)
    if not report.verdict:
        raise NotUnimodular(f"presentation is not unimodular: {report.to_json()}")
    T, t = p.T, p.t
    if all(_in_cyclic(t, ti) for ti in p.t_elements):
        raise SplittingCase("<t_i> = <t>: the cyclic case")
    entries: List[CosetEntry] = []
    X1 = set()
    prefix = T.identity()
    for g, ti in zip(p.coefficients, p.t_elements):
        y = ~prefix
        rep, k = coset_decompose(T, t, y)
        X1.add(rep.value)
        if not g.is_identity:
            if entries and entries[-1].coset == rep.value and entries[-1].k == k:
                merged = entries[-1].g * g
                entries.pop()
                if not merged.is_identity:
                    entries.append(CosetEntry(merged, rep.value, k))
            else:
                entries.append(CosetEntry(g, rep.value, k))
        prefix = prefix * ti
    return CosetForm(p, t, tuple(entries), frozenset(X1))


def right_action(T: FreeAbelian, t: Element, coset: tuple, x: Element) -> Tuple[tuple, int, int]:
    """Action of x in T on the copy G^(c_y): returns ``(c_{yx}, l, eps_x)``.

    ``c_y x = c_{yx} t^l``; T is abelian so x commutes with t and eps_x = 1.
    """
    rep, l = coset_decompose(T, t, Element(T, coset) * x)
    return rep.value, l, 1


def translate_cosets(T: FreeAbelian, t: Element, cosets, x: Element) -> frozenset:
    return frozenset(right_action(T, t, c, x)[0] for c in cosets)


# -- the two cases of the proof pipeline -----------------------------------------

@dataclass
class CaseReport:
    erased: Word
    case: str
    root: Optional[Word] = None
    k: Optional[int] = None
    T_relators: Tuple[Word, ...] = ()
    abelianization_rank: Optional[int] = None
    T_noncyclic: Optional[bool] = None

    def to_json(self) -> dict:
        return {"w_prime": repr(self.erased), "case": self.case,
                "root": None if self.root is None else repr(self.root), "k": self.k,
                "T_relators": [repr(r) for r in self.T_relators],
                "abelianization_rank": self.abelianization_rank,
                "T_noncyclic": self.T_noncyclic}


def commutator(a: Word, b: Word) -> Word:
    return ~a * ~b * a * b


def split_cases(p: RelativePresentation) -> CaseReport:
    gens = p.free_gens
    if not gens:
        raise PresentationError("need at least one added generator")
    w1 = erase_coefficients(p.relator)
    pp = is_proper_power(w1)
    if pp is not None:
        return CaseReport(w1, "PROPER_POWER", pp.root, None if pp.identity else pp.k)
    amb = p.ambient
    rels = tuple(commutator(amb.gen(x), w1) for x in gens)
    # every relator [x_i, w'] is a commutator, so T^ab = Z^n
    n = len(gens)
    return CaseReport(w1, "NOT_PROPER_POWER", T_relators=rels,
                      abelianization_rank=n, T_noncyclic=n >= 2)


# -- set systems ---------------------------------------------------------------

MAX_OMEGA = 20


@dataclass(frozen=True)
class SetSystem:
    I: frozenset
    Omega: Tuple[frozenset, ...]
    N_flags: Tuple[bool, ...] = ()

    def __init__(self, I, Omega, N_flags=None):
        omega = tuple(frozenset(w) for w in Omega)
        I = frozenset(I)
        for w in omega:
            if not w <= I:
                raise PresentationError(f"{sorted(w)} is not a subset of I")
        flags = tuple(N_flags) if N_flags is not None else (True,) * len(omega)
        if len(flags) != len(omega):
            raise PresentationError("one N-flag per member of Omega")
        object.__setattr__(self, "I", I)
        object.__setattr__(self, "Omega", omega)
        object.__setattr__(self, "N_flags", flags)


@dataclass
class OmegaReport:
    ok: bool
    star_certified: bool
    failing_subfamily: Optional[Tuple[int, ...]]
    witnesses: Dict[Tuple[int, ...], tuple]
    checked: int

    def to_json(self, system: SetSystem) -> dict:
        def fam(idx):
            return [sorted(map(str, system.Omega[i])) for i in idx]

        return {
            "ok": self.ok,
            "star_certified": self.star_certified,
            "subfamilies_checked": self.checked,
            "failing_subfamily": None if self.failing_subfamily is None
            else fam(self.failing_subfamily),
            "witnesses": [
                {"subfamily": fam(k), "min": str(v[0]), "omega_min": sorted(map(str, system.Omega[v[1]])),
                 "max": str(v[2]), "omega_max": sorted(map(str, system.Omega[v[3]]))}
                for k, v in self.witnesses.items()
            ],
        }


def _subfamily_witness(family: Sequence[frozenset]) -> Optional[tuple]:
    owners: Dict[object, int] = {}
    counts: Dict[object, int] = {}
    for pos, w in enumerate(family):
        for a in w:
            counts[a] = counts.get(a, 0) + 1
            owners[a] = pos
    unique = sorted((a for a, c in counts.items() if c == 1), key=repr)
    for a, b in itertools.combinations(unique, 2):
        if owners[a] != owners[b]:
            return a, owners[a], b, owners[b]
    return None


def check_omega_conditions(s: SetSystem) -> OmegaReport:
    """Every subfamily F with |F| >= 2 must own two elements of its union,
    each covered exactly once and by different members; checked exhaustively.

    ``min``/``max`` are just two elements of the union each covered exactly
    once, by different members of F; any such pair is a witness.
    """
    n = len(s.Omega)
    if n > MAX_OMEGA:
        raise TooLarge(f"|Omega| = {n} exceeds {MAX_OMEGA}")
    witnesses: Dict[Tuple[int, ...], tuple] = {}
    failing = None
    checked = 0
    for size in range(2, n + 1):
        for idx in itertools.combinations(range(n), size):
            checked += 1
            wit = _subfamily_witness([s.Omega[i] for i in idx])
            if wit is None:
                failing = idx
                break
            a, pa, b, pb = wit
            witnesses[idx] = (a, idx[pa], b, idx[pb])
        if failing is not None:
            break
    return OmegaReport(failing is None, all(s.N_flags), failing, witnesses, checked)


# -- hypothesis bundle for the Freiheitssatz statement -----------------------------

@dataclass
class HypothesisReport:
    unimodular: bool
    coefficients_infinite_order: bool
    coefficient_orders: List[Tuple[str, bool]]
    w_not_conjugate_into_subfamily: bool
    splitting_flag: bool

    @property
    def all_green(self) -> bool:
        return (self.unimodular and self.coefficients_infinite_order
                and self.w_not_conjugate_into_subfamily and not self.splitting_flag)

    def to_json(self) -> dict:
        return {"unimodular": self.unimodular,
                "coefficients_infinite_order": self.coefficients_infinite_order,
                "coefficients": [{"coefficient": c, "infinite_order": ok}
                                 for c, ok in self.coefficient_orders],
                "w_not_conjugate_into_subfamily": self.w_not_conjugate_into_subfamily,
                "splitting_flag": self.splitting_flag,
                "all_green": self.all_green}


def coefficients(w: Word, gen: str) -> List[Word]:
    """Maximal subwords of cyclic ``w`` free of ``gen`` (read cyclically)."""
    amb = w.ambient
    syl = list(w)
    cut = [i for i, s in enumerate(syl) if isinstance(s, FreeSyllable) and s.gen == gen]
    if not cut:
        return [w] if syl else []
    out = []
    for a, b in zip(cut, cut[1:] + [cut[0] + len(syl)]):
        piece = [syl[i % len(syl)] for i in range(a + 1, b)]
        if piece:
            out.append(amb.reduce(piece))
    return out


def hypothesis_report(p: RelativePresentation, subfamily: SubproductSpec,
                      gen: Optional[str] = None) -> HypothesisReport:
    gen = gen or p.free_gens[0]
    coeffs = coefficients(p.relator, gen)
    orders = [(repr(c), has_infinite_order(c)) for c in coeffs if not c.is_identity]
    conj_into = membership_in_subproduct(p.relator, subfamily | SubproductSpec(free_gens=[gen]),
                                         upto_conjugacy=True)
    cyc, _ = cyclic_reduce(p.relator)
    splitting = all(isinstance(s, FreeSyllable) and s.gen == gen for s in cyc)
    return HypothesisReport(is_unimodular(p, gen), all(ok for _, ok in orders), orders,
                            not conj_into, splitting)
