"""Symmetrized relator sets, pieces, and the metric condition C'(lambda).

Lengths and pieces are counted in syllables of the free-product normal form.
Two members that agree on a prefix and then continue with different
syllables of the same factor are charged one extra (partial) syllable, which
can only make the condition harder to satisfy.  For free-generator syllables
the partial match is charged only when both exponents have the same sign,
i.e. when the underlying letters really agree.

The piece maximum is computed without enumerating all pairs: members are
sorted by their syllable keys, and the best pair is always adjacent in that
order (any member sorted between two members sharing a prefix p and a next
factor shares p and that factor too).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .groups import FormalSymbols, GroupError
from .words import (
    FactorSyllable,
    FreeProduct,
    FreeSyllable,
    Word,
    cyclic_reduce,
)


class IdentityRelator(GroupError):
    pass


def _key(s) -> tuple:
    if isinstance(s, FreeSyllable):
        return ("g", s.gen, s.exp > 0, s.exp)
    return ("f", s.factor, repr(s.elem.value))


def _partial(a: tuple, b: tuple) -> bool:
    return a[:3] == b[:3] if a[0] == "g" else a[:2] == b[:2]


class Member(NamedTuple):
    """Cyclic rotation ``offset`` of relator ``origin`` (or of its inverse)."""

    origin: int
    inverted: bool
    offset: int


@dataclass(frozen=True)
class SymmetrizedSet:
    origin: Tuple[Word, ...]
    members: Tuple[Member, ...]

    def __post_init__(self):
        keys = []
        for w in self.origin:
            fwd = tuple(_key(s) for s in w)
            inv = tuple(_key(s) for s in ~w)
            keys.append((fwd, inv))
        object.__setattr__(self, "_keys", keys)

    def __len__(self):
        return len(self.members)

    def keys(self, m: Member) -> tuple:
        return self._keys[m.origin][1 if m.inverted else 0]

    def length(self, m: Member) -> int:
        return len(self.origin[m.origin])

    def word(self, m: Member) -> Word:
        w = self.origin[m.origin]
        if m.inverted:
            w = ~w
        syl = w.syllables
        return Word(w.ambient, syl[m.offset:] + syl[:m.offset])

    def words(self) -> List[Word]:
        return [self.word(m) for m in self.members]


def _compare(s: SymmetrizedSet):
    def cmp(a: Member, b: Member) -> int:
        ka, kb = s.keys(a), s.keys(b)
        na, nb = len(ka), len(kb)
        for i in range(min(na, nb)):
            x, y = ka[(a.offset + i) % na], kb[(b.offset + i) % nb]
            if x != y:
                return -1 if x < y else 1
        return (na > nb) - (na < nb)

    return cmp


def symmetrize(relators: Sequence[Word]) -> SymmetrizedSet:
    """Close relators under inversion and cyclic permutation, without duplicates."""
    if not relators:
        raise IdentityRelator("need at least one relator")
    cyc = []
    for w in relators:
        u, _ = cyclic_reduce(w)
        if u.is_identity:
            raise IdentityRelator(f"{w!r} is trivial after cyclic reduction")
        cyc.append(u)
    proto = SymmetrizedSet(tuple(cyc), ())
    members = [Member(i, inv, k) for i, u in enumerate(cyc)
               for inv in (False, True) for k in range(len(u))]
    cmp = _compare(proto)
    members.sort(key=cmp_to_key(cmp))
    unique: List[Member] = []
    for m in members:
        if not unique or cmp(unique[-1], m) != 0:
            unique.append(m)
    return SymmetrizedSet(tuple(cyc), tuple(unique))


class PieceReport(NamedTuple):
    max_piece_syllables: int
    witness: Optional[Tuple[Word, Word, Word]]
    min_relator_syllables: int
    ratio: Fraction


def piece_length(s: SymmetrizedSet, a: Member, b: Member) -> Tuple[int, int]:
    """(charged piece length, number of fully shared syllables) for two members."""
    ka, kb = s.keys(a), s.keys(b)
    na, nb = len(ka), len(kb)
    i = 0
    limit = min(na, nb)
    while i < limit and ka[(a.offset + i) % na] == kb[(b.offset + i) % nb]:
        i += 1
    extra = 0
    if i < limit and _partial(ka[(a.offset + i) % na], kb[(b.offset + i) % nb]):
        extra = 1
    return i + extra, i


def max_piece(s: SymmetrizedSet) -> PieceReport:
    best, best_pair = 0, None
    ms = s.members
    for a, b in zip(ms, ms[1:]):
        n, full = piece_length(s, a, b)
        if n > best:
            best, best_pair = n, (a, b, full, n)
    min_len = min(len(w) for w in s.origin)
    witness = None
    if best_pair is not None:
        a, b, full, n = best_pair
        wa, wb = s.word(a), s.word(b)
        witness = (wa, wb, Word(wa.ambient, wa.syllables[:n]))
    return PieceReport(best, witness, min_len, Fraction(best, min_len))


class CPrimeReport(NamedTuple):
    holds: bool
    lam: Fraction
    pieces: PieceReport


def check_cprime(relators: Sequence[Word], lam) -> CPrimeReport:
    """C'(lam): every piece is strictly shorter than lam times every member."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    rep = max_piece(symmetrize(relators))
    holds = rep.max_piece_syllables < lam * rep.min_relator_syllables
    return CPrimeReport(holds, lam, rep)


# -- explicit relator families -----------------------------------------------------

def build_lemma3_family(l: int, count: int, J: int = 2017) -> Tuple[List[Word], FreeProduct]:
    """Relators ``v_i s_i^-1`` with ``v_i = prod_{j<=J} prod_{k<=l} g_ijk``.

    Each g_ijk is a fresh formal symbol of factor ``G{k}``; s_i lives in ``S``.
    """
    if l < 2 or count < 1 or J < 1:
        raise ValueError("need l >= 2, count >= 1, J >= 1")
    alphabets = {f"G{k}": frozenset(f"g_{i}_{j}_{k}" for i in range(1, count + 1)
                                      for j in range(1, J + 1))
                 for k in range(1, l + 1)}
    factors = {name: FormalSymbols(a) for name, a in alphabets.items()}
    factors["S"] = FormalSymbols(frozenset(f"s_{i}" for i in range(1, count + 1)))
    amb = FreeProduct(factors)
    relators = []
    for i in range(1, count + 1):
        raw = [amb.syllable(f"G{k}", f"g_{i}_{j}_{k}")
               for j in range(1, J + 1) for k in range(1, l + 1)]
        raw.append(amb.syllable("S", f"s_{i}^-1"))
        relators.append(amb.reduce(raw))
    return relators, amb


def build_section5_family(count: int, blocks: int = 1000) -> Tuple[List[Word], FreeProduct]:
    """Relators ``s_i prod_{j<=blocks} (r t_ij)`` with one shared symbol r."""
    if count < 1 or blocks < 1:
        raise ValueError("need count >= 1 and blocks >= 1")
    amb = FreeProduct({
        "S": FormalSymbols(frozenset(f"s_{i}" for i in range(1, count + 1))),
        "R": FormalSymbols(frozenset({"r"})),
        "T": FormalSymbols(frozenset(f"t_{i}_{j}" for i in range(1, count + 1)
                                     for j in range(1, blocks + 1))),
    })
    relators = []
    for i in range(1, count + 1):
        raw = [amb.syllable("S", f"s_{i}")]
        for j in range(1, blocks + 1):
            raw += [amb.syllable("R", "r"), amb.syllable("T", f"t_{i}_{j}")]
        relators.append(amb.reduce(raw))
    return relators, amb


def family_symbols(relators: Sequence[Word]) -> List[str]:
    """All formal symbols used by a family, with repetitions."""
    out = []
    for w in relators:
        for s in w:
            if isinstance(s, FactorSyllable):
                out.extend(sym for sym, _ in s.elem.value)
    return out
