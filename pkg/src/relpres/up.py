"""Unique-product checks on finite subsets of a group, by exhaustive counting."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .groups import Element, FiniteTable, GroupBackend, MixedBackend, cyclic_table


@dataclass(frozen=True)
class FiniteSubset:
    backend: GroupBackend
    elements: Tuple[Element, ...]

    def __init__(self, backend: GroupBackend, elements: Iterable):
        elems = []
        for e in elements:
            if not isinstance(e, Element):
                e = backend.element(e)
            if e.backend != backend:
                raise MixedBackend(f"{e!r} does not belong to {backend!r}")
            if e not in elems:
                elems.append(e)
        if not elems:
            raise ValueError("subset must be nonempty")
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "elements", tuple(elems))

    def __len__(self):
        return len(self.elements)

    def inverse(self) -> "FiniteSubset":
        return FiniteSubset(self.backend, [~e for e in self.elements])


class UniqueProduct(NamedTuple):
    product: Element
    x: Element
    y: Element


class UPTable(NamedTuple):
    unique: List[UniqueProduct]
    counts: Dict[Element, int]


def unique_products(X: FiniteSubset, Y: FiniteSubset) -> UPTable:
    if X.backend != Y.backend:
        raise MixedBackend("X and Y live in different groups")
    decomps: Dict[Element, list] = {}
    for x in X.elements:
        for y in Y.elements:
            decomps.setdefault(x * y, []).append((x, y))
    unique = [UniqueProduct(g, *d[0]) for g, d in decomps.items() if len(d) == 1]
    return UPTable(unique, {g: len(d) for g, d in decomps.items()})


class StrongUP(NamedTuple):
    applicable: bool
    holds: Optional[bool]
    witnesses: Tuple[UniqueProduct, ...] = ()
    x_distinct: Optional[bool] = None


def has_strong_up(X: FiniteSubset, Y: FiniteSubset) -> StrongUP:
    """Two uniquely decomposable products x1 y1, x2 y2 with y1 != y2.

    Not applicable when |Y| < 2.  ``x_distinct`` tells whether some witness
    pair also has x1 != x2.
    """
    table = unique_products(X, Y)
    if len(Y) < 2:
        return StrongUP(False, None)
    pairs = [(a, b) for a, b in combinations(table.unique, 2) if a.y != b.y]
    if not pairs:
        return StrongUP(True, False)
    both = [(a, b) for a, b in pairs if a.x != b.x]
    a, b = both[0] if both else pairs[0]
    return StrongUP(True, True, (a, b), bool(both))


# -- Z + Z_p finite window -------------------------------------------------------

class WindowReport(NamedTuple):
    generators: Tuple[Tuple[int, int], ...]
    windows: Tuple[frozenset, ...]
    pairwise_distinct: bool
    no_containment: bool
    maximal_in_window: bool

    @property
    def ok(self) -> bool:
        return self.pairwise_distinct and self.no_containment and self.maximal_in_window


def _zp_mul(Zp: FiniteTable, a, b):
    return a[0] + b[0], Zp.mul(a[1], b[1])


def _zp_power(Zp: FiniteTable, g, k: int):
    return k * g[0], Zp.power(g[1], k)


def cyclic_window(Zp: FiniteTable, g: Tuple[int, int], bound: int) -> frozenset:
    """Elements of <g> in Z + Z_p whose Z-coordinate has absolute value <= bound."""
    a = abs(g[0])
    if a == 0:
        raise ValueError("generator must have nonzero Z-coordinate")
    return frozenset(_zp_power(Zp, g, k) for k in range(-(bound // a), bound // a + 1))


def maximal_cyclic_window(p: int = 3, bound: int = 100, count: int = 4) -> WindowReport:
    """Check <(1,1)>, <(p,1)>, <(p^2,1)>, ... inside the window |Z-coordinate| <= bound.

    Each window must differ from the others and not be contained in any
    other, and no generator may be a proper power of a window element.
    """
    Zp = cyclic_table(p)
    gens = tuple((p ** k, 1) for k in range(count))
    wins = tuple(cyclic_window(Zp, g, bound) for g in gens)
    distinct = len(set(wins)) == len(wins)
    no_contain = all(not wins[i] <= wins[j]
                     for i in range(len(wins)) for j in range(len(wins)) if i != j)
    elements = [(a, b) for a in range(-bound, bound + 1) for b in range(p)]
    maximal = True
    for g in gens:
        for h in elements:
            for k in range(2, abs(g[0]) + 1):
                if _zp_power(Zp, h, k) == g:
                    maximal = False
    return WindowReport(gens, wins, distinct, no_contain, maximal)
