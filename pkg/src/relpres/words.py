"""Words in free products G_1 * ... * G_l * F(free generators).

A :class:`Word` is always in free-product normal form: adjacent syllables
come from different factors (or name different free generators), and no
syllable is trivial.  All operations return new words.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from .groups import (
    Element,
    FiniteTable,
    FormalSymbols,
    Free,
    FreeAbelian,
    GroupBackend,
    GroupError,
    INFINITE,
)


class UnknownFactor(GroupError):
    pass


class UndecidableZ(GroupError):
    pass


class Mode(enum.Enum):
    FREE = "free"
    CYCLIC = "cyclic"


@dataclass(frozen=True)
class FactorSyllable:
    factor: str
    elem: Element

    @property
    def name(self) -> str:
        return self.factor

    def inverse(self) -> "FactorSyllable":
        return FactorSyllable(self.factor, ~self.elem)

    def __repr__(self):
        return f"{self.factor}:{self.elem!r}"


@dataclass(frozen=True)
class FreeSyllable:
    gen: str
    exp: int

    @property
    def name(self) -> str:
        return self.gen

    def inverse(self) -> "FreeSyllable":
        return FreeSyllable(self.gen, -self.exp)

    def __repr__(self):
        return self.gen if self.exp == 1 else f"{self.gen}^{self.exp}"


Syllable = Union[FactorSyllable, FreeSyllable]


def _merge(a: Syllable, b: Syllable) -> Optional[Syllable]:
    """Product of two syllables with the same name; None when trivial."""
    if isinstance(a, FreeSyllable):
        e = a.exp + b.exp
        return FreeSyllable(a.gen, e) if e else None
    g = a.elem * b.elem
    return None if g.is_identity else FactorSyllable(a.factor, g)


def _is_trivial(s: Syllable) -> bool:
    return s.exp == 0 if isinstance(s, FreeSyllable) else s.elem.is_identity


@dataclass(frozen=True)
class SubproductSpec:
    factors: frozenset = frozenset()
    free_gens: frozenset = frozenset()

    def __init__(self, factors: Iterable[str] = (), free_gens: Iterable[str] = ()):
        object.__setattr__(self, "factors", frozenset(factors))
        object.__setattr__(self, "free_gens", frozenset(free_gens))

    def contains(self, s: Syllable) -> bool:
        if isinstance(s, FreeSyllable):
            return s.gen in self.free_gens
        return s.factor in self.factors

    def __or__(self, other: "SubproductSpec") -> "SubproductSpec":
        return SubproductSpec(self.factors | other.factors, self.free_gens | other.free_gens)


@dataclass(frozen=True)
class FreeProduct:
    """The ambient group: named factor backends plus named free generators."""

    factors: Tuple[Tuple[str, GroupBackend], ...]
    free_gens: Tuple[str, ...] = ()

    def __init__(self, factors: Union[Mapping[str, GroupBackend], Iterable] = (),
                 free_gens: Iterable[str] = ()):
        items = factors.items() if isinstance(factors, Mapping) else factors
        object.__setattr__(self, "factors", tuple(items))
        object.__setattr__(self, "free_gens", tuple(free_gens))
        names = [n for n, _ in self.factors] + list(self.free_gens)
        if len(set(names)) != len(names):
            raise GroupError("factor and generator names must be distinct")
        object.__setattr__(self, "_backends", dict(self.factors))

    def backend(self, name: str) -> GroupBackend:
        try:
            return self._backends[name]
        except KeyError:
            raise UnknownFactor(name) from None

    def syllable(self, factor: str, value) -> FactorSyllable:
        b = self.backend(factor)
        return FactorSyllable(factor, value if isinstance(value, Element) else b.element(value))

    def _check(self, s: Syllable) -> None:
        if isinstance(s, FreeSyllable):
            if s.gen not in self.free_gens:
                raise UnknownFactor(s.gen)
        else:
            b = self.backend(s.factor)
            if s.elem.backend != b:
                raise UnknownFactor(f"element {s.elem!r} is not in factor {s.factor}")

    def reduce(self, raw: Iterable[Syllable], mode: Mode = Mode.FREE):
        """Normal form of a raw syllable list.

        In CYCLIC mode returns ``(cyclic_word, conjugator)`` with
        ``w = conjugator * cyclic_word * conjugator^-1``.
        """
        out: list = []
        for s in raw:
            self._check(s)
            if _is_trivial(s):
                continue
            if out and out[-1].name == s.name:
                m = _merge(out.pop(), s)
                if m is not None:
                    out.append(m)
            else:
                out.append(s)
        w = Word(self, tuple(out))
        if mode is Mode.FREE:
            return w
        return cyclic_reduce(w)

    def word(self, raw: Iterable[Syllable]) -> "Word":
        return self.reduce(raw)

    def identity(self) -> "Word":
        return Word(self, ())

    def gen(self, name: str, exp: int = 1) -> "Word":
        return self.reduce([FreeSyllable(name, exp)])

    def elem(self, factor: str, value) -> "Word":
        return self.reduce([self.syllable(factor, value)])


@dataclass(frozen=True)
class Word:
    ambient: FreeProduct
    syllables: Tuple[Syllable, ...]

    def __len__(self):
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def __getitem__(self, i):
        return self.syllables[i]

    def __mul__(self, other: "Word") -> "Word":
        if other.ambient != self.ambient:
            raise GroupError("words live in different free products")
        return self.ambient.reduce(self.syllables + other.syllables)

    def __invert__(self) -> "Word":
        return Word(self.ambient, tuple(s.inverse() for s in reversed(self.syllables)))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else ~self
        out = self.ambient.identity()
        for _ in range(abs(n)):
            out = out * base
        return out

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def __repr__(self):
        return " ".join(map(repr, self.syllables)) or "1"


def reduce(ambient: FreeProduct, raw: Iterable[Syllable], mode: Mode = Mode.FREE):
    return ambient.reduce(raw, mode)


def cyclic_reduce(w: Word) -> Tuple[Word, Word]:
    """Return ``(u, c)`` with u cyclically reduced and ``w == c * u * c^-1``."""
    syl = list(w.syllables)
    conj: list = []
    while len(syl) >= 2 and syl[0].name == syl[-1].name:
        last = syl.pop()
        # u = last^-1 (last * u') last
        conj.append(last.inverse())
        m = _merge(last, syl[0])
        if m is None:
            syl.pop(0)
        else:
            syl[0] = m
    amb = w.ambient
    return Word(amb, tuple(syl)), amb.reduce(conj)


def exponent_sum(w: Word, gen: str) -> int:
    return sum(s.exp for s in w if isinstance(s, FreeSyllable) and s.gen == gen)


def erase_coefficients(w: Word) -> Word:
    return w.ambient.reduce(s for s in w if isinstance(s, FreeSyllable))


class ProperPower(NamedTuple):
    root: Word
    k: int
    conjugator: Word
    identity: bool = False


def _letters(w: Word) -> list:
    out = []
    for s in w:
        if not isinstance(s, FreeSyllable):
            raise GroupError("proper-power test needs a word over free generators")
        out.extend([(s.gen, 1 if s.exp > 0 else -1)] * abs(s.exp))
    return out


def is_proper_power(w: Word) -> Optional[ProperPower]:
    """Detect ``w`` conjugate to ``root^k`` (k >= 2, maximal) in a free group.

    The identity counts as a proper power and is flagged as such.
    """
    cyc, conj = cyclic_reduce(w)
    if cyc.is_identity:
        return ProperPower(cyc, 0, conj, identity=True)
    letters = _letters(cyc)
    n = len(letters)
    for d in range(1, n // 2 + 1):
        if n % d == 0 and letters == letters[:d] * (n // d):
            root = w.ambient.reduce(FreeSyllable(g, e) for g, e in letters[:d])
            return ProperPower(root, n // d, conj)
    return None


def membership_in_subproduct(w: Word, spec: SubproductSpec, upto_conjugacy: bool = False) -> bool:
    if upto_conjugacy:
        w, _ = cyclic_reduce(w)
    return all(spec.contains(s) for s in w)


def has_infinite_order(w: Word) -> bool:
    cyc, _ = cyclic_reduce(w)
    if len(cyc) >= 2:
        return True
    if not cyc.syllables:
        return False
    s = cyc[0]
    if isinstance(s, FreeSyllable):
        return True
    return s.elem.backend.order(s.elem.value) == INFINITE


# -- membership forms for transcendence arguments ------------------------------------------

@dataclass(frozen=True)
class CyclicSubgroup:
    """The subgroup generated by one element of a FreeAbelian/FiniteTable factor."""

    generator: Element

    def contains(self, g: Element) -> bool:
        b = self.generator.backend
        if g.backend != b:
            return False
        if isinstance(b, FiniteTable):
            x = b.identity_value
            for _ in range(b.size):
                if x == g.value:
                    return True
                x = b.mul(x, self.generator.value)
            return False
        if isinstance(b, FreeAbelian):
            gen, v = self.generator.value, g.value
            if not any(gen):
                return not any(v)
            i = next(k for k, c in enumerate(gen) if c)
            if v[i] % gen[i]:
                return False
            q = v[i] // gen[i]
            return all(q * a == b_ for a, b_ in zip(gen, v))
        raise UndecidableZ(f"cyclic membership not implemented for {b!r}")


@dataclass(frozen=True)
class BasisSubgroup:
    """Free factor of a Free/FormalSymbols group spanned by some basis symbols."""

    symbols: frozenset

    def __init__(self, symbols: Iterable[str]):
        object.__setattr__(self, "symbols", frozenset(symbols))

    def contains(self, g: Element) -> bool:
        if not isinstance(g.backend, (Free, FormalSymbols)):
            raise UndecidableZ(f"basis subgroup makes no sense in {g.backend!r}")
        return all(s in self.symbols for s, _ in g.value)


class MembershipForm(enum.Enum):
    IN_XZ_Y_XZ = "in (X*Z)Y(X*Z)"
    X1_U_X2_FORM = "x1 u' x2 with u' of finite order"
    NEITHER = "neither"


class MembershipResult(NamedTuple):
    form: MembershipForm
    x1: Optional[Word] = None
    middle: Optional[Word] = None
    x2: Optional[Word] = None


def lemma4_membership_form(u: Word, X: SubproductSpec, Y: str,
                           Z: Union[CyclicSubgroup, BasisSubgroup]) -> MembershipResult:
    """Classify ``u`` in X * Y against the two shapes (X*Z)Y(X*Z) and x1 u' x2.

    The second shape is found by scanning syllable split points for a prefix
    and suffix in X * Z around a middle of finite order; it is a syntactic
    search, so NEITHER means neither shape was found in the normal form.
    """
    if not isinstance(Z, (CyclicSubgroup, BasisSubgroup)):
        raise UndecidableZ(f"unsupported subgroup description {Z!r}")
    backend = u.ambient.backend(Y)
    if isinstance(Z, CyclicSubgroup) and not isinstance(backend, (FreeAbelian, FiniteTable)):
        raise UndecidableZ("cyclic subgroups are decidable only in FreeAbelian/FiniteTable")
    if isinstance(Z, BasisSubgroup) and not isinstance(backend, (Free, FormalSymbols)):
        raise UndecidableZ("basis subgroups need a Free/FormalSymbols factor")

    def in_xz(s: Syllable) -> bool:
        if X.contains(s):
            return True
        if isinstance(s, FactorSyllable) and s.factor == Y:
            return Z.contains(s.elem)
        return False

    for s in u:
        if not (X.contains(s) or (isinstance(s, FactorSyllable) and s.factor == Y)):
            raise GroupError(f"syllable {s!r} lies outside X * {Y}")

    outside = [i for i, s in enumerate(u) if not in_xz(s)]
    amb = u.ambient
    if len(outside) <= 1:
        if not outside:
            return MembershipResult(MembershipForm.IN_XZ_Y_XZ, u, amb.identity(), amb.identity())
        i = outside[0]
        return MembershipResult(MembershipForm.IN_XZ_Y_XZ, amb.reduce(u[:i]),
                            amb.reduce(u[i:i + 1]), amb.reduce(u[i + 1:]))
    n = len(u)
    first, last = outside[0], outside[-1]
    for i in range(first + 1):
        for j in range(n, last, -1):
            mid = amb.reduce(u[i:j])
            if not has_infinite_order(mid):
                return MembershipResult(MembershipForm.X1_U_X2_FORM, amb.reduce(u[:i]), mid,
                                    amb.reduce(u[j:]))
    return MembershipResult(MembershipForm.NEITHER)
