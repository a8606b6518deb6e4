"""Concrete groups with a decidable word problem.

Four backends are provided: free abelian groups Z^k, free groups on a finite
basis, groups given by a full multiplication table, and free groups on a
formal alphabet (optionally carrying a formal automorphism ``phi``).
Values are wrapped in :class:`Element`, which remembers its backend so that
mixing elements of different groups is caught early.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Tuple, Union

INFINITE = math.inf

MAX_TABLE_SIZE = 256

Letter = Tuple[str, int]


class GroupError(ValueError):
    pass


class MixedBackend(GroupError):
    pass


class ZeroDirection(GroupError):
    pass


class InvalidTable(GroupError):
    pass


class InvalidElement(GroupError):
    pass


@dataclass(frozen=True)
class Element:
    backend: "GroupBackend"
    value: object

    def __mul__(self, other: "Element") -> "Element":
        _same_backend(self, other)
        return Element(self.backend, self.backend.mul(self.value, other.value))

    def __invert__(self) -> "Element":
        return Element(self.backend, self.backend.inv(self.value))

    def __pow__(self, n: int) -> "Element":
        return Element(self.backend, self.backend.power(self.value, n))

    @property
    def is_identity(self) -> bool:
        return self.value == self.backend.identity_value

    def __repr__(self) -> str:
        return self.backend.format(self.value)


def _same_backend(a: Element, b: Element) -> None:
    if a.backend is not b.backend and a.backend != b.backend:
        raise MixedBackend(f"{a.backend!r} vs {b.backend!r}")


class GroupBackend:
    kind: str = ""

    @property
    def identity_value(self):
        raise NotImplementedError

    def identity(self) -> Element:
        return Element(self, self.identity_value)

    def element(self, value) -> Element:
        return Element(self, self.normalize(value))

    def normalize(self, value):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def power(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.identity_value
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def order(self, a) -> float:
        return 1 if a == self.identity_value else INFINITE

    def format(self, value) -> str:
        return repr(value)

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class FreeAbelian(GroupBackend):
    rank: int
    kind = "free_abelian"

    def __post_init__(self):
        if self.rank < 1:
            raise GroupError("rank must be positive")

    @property
    def identity_value(self):
        return (0,) * self.rank

    def normalize(self, value):
        vec = tuple(int(c) for c in value)
        if len(vec) != self.rank:
            raise InvalidElement(f"expected {self.rank} coordinates, got {len(vec)}")
        return vec

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def power(self, a, n):
        return tuple(n * x for x in a)

    def to_json(self):
        return {"kind": self.kind, "rank": self.rank}


def _free_reduce(letters: Iterable[Letter]) -> tuple:
    out: list = []
    for sym, e in letters:
        if out and out[-1][0] == sym and out[-1][1] == -e:
            out.pop()
        else:
            out.append((sym, e))
    return tuple(out)


def parse_letters(text: str) -> list:
    """Parse ``"a b^-1 c^2"`` (also ``*``-separated) into unit letters."""
    letters = []
    for token in text.replace("*", " ").split():
        name, _, exp = token.rpartition("^")
        if not name or not exp.lstrip("-").isdigit():
            name, exp = token, "1"
        n = int(exp)
        letters.extend([(name, 1 if n > 0 else -1)] * abs(n))
    return letters


def format_letters(word: Sequence[Letter]) -> str:
    """Inverse of :func:`parse_letters`; runs of one letter become powers."""
    if not word:
        return "1"
    parts = []
    for (sym, e), run in itertools.groupby(word):
        n = e * len(list(run))
        parts.append(sym if n == 1 else f"{sym}^{n}")
    return " ".join(parts)


@dataclass(frozen=True)
class _FreeLike(GroupBackend):
    """Shared machinery: values are freely reduced tuples of (symbol, +-1)."""

    @property
    def identity_value(self):
        return ()

    def _check_symbol(self, sym: str) -> None:
        raise NotImplementedError

    def normalize(self, value):
        if isinstance(value, str):
            value = parse_letters(value)
        letters = []
        for item in value:
            sym, e = item
            if e not in (1, -1):
                # allow compact (sym, n) syllables
                letters.extend([(sym, 1 if e > 0 else -1)] * abs(int(e)))
                continue
            letters.append((sym, int(e)))
        for sym, _ in letters:
            self._check_symbol(sym)
        return _free_reduce(letters)

    def mul(self, a, b):
        return _free_reduce(a + b)

    def inv(self, a):
        return tuple((s, -e) for s, e in reversed(a))

    def format(self, value):
        return format_letters(value)


@dataclass(frozen=True)
class Free(_FreeLike):
    basis: Tuple[str, ...]
    kind = "free"

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))

    def _check_symbol(self, sym):
        if sym not in self.basis:
            raise InvalidElement(f"{sym!r} is not in basis {self.basis}")

    def to_json(self):
        return {"kind": self.kind, "basis": list(self.basis)}


@dataclass(frozen=True)
class FormalSymbols(_FreeLike):
    """Free group on formal symbols; ``alphabet=None`` accepts any symbol.

    ``phi`` is a formal automorphism on symbols; symbols it does not mention
    map to ``sym + "^phi"``.
    """

    alphabet: Union[frozenset, None] = None
    phi: Tuple[Tuple[str, str], ...] = field(default=())
    kind = "formal"

    def __post_init__(self):
        if self.alphabet is not None:
            object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        if isinstance(self.phi, Mapping):
            object.__setattr__(self, "phi", tuple(sorted(self.phi.items())))

    def _check_symbol(self, sym):
        if self.alphabet is not None and sym not in self.alphabet:
            raise InvalidElement(f"{sym!r} is not in the formal alphabet")

    def apply_phi(self, value) -> tuple:
        table = dict(self.phi)
        return tuple((table.get(s, s + "^phi"), e) for s, e in value)

    def to_json(self):
        out = {"kind": self.kind,
               "alphabet": sorted(self.alphabet) if self.alphabet is not None else None}
        if self.phi:
            out["phi"] = dict(self.phi)
        return out


@dataclass(frozen=True)
class FiniteTable(GroupBackend):
    """A finite group given by its Cayley table; validated on construction."""

    table: Tuple[Tuple[int, ...], ...]
    kind = "finite_table"

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n < 1 or n > MAX_TABLE_SIZE:
            raise InvalidTable(f"table size must be in 1..{MAX_TABLE_SIZE}")
        if any(len(row) != n or any(not 0 <= v < n for v in row) for row in table):
            raise InvalidTable("table must be a square matrix of indices in range")
        ids = [e for e in range(n)
               if all(table[e][a] == a and table[a][e] == a for a in range(n))]
        if not ids:
            raise InvalidTable("no identity element")
        e = ids[0]
        inverse = []
        for a in range(n):
            inv = [b for b in range(n) if table[a][b] == e]
            if len(inv) != 1 or table[inv[0]][a] != e:
                raise InvalidTable(f"element {a} has no two-sided inverse")
            inverse.append(inv[0])
        for a in range(n):
            ra = table[a]
            for b in range(n):
                ab = ra[b]
                rb = table[b]
                rab = table[ab]
                for c in range(n):
                    if rab[c] != ra[rb[c]]:
                        raise InvalidTable(f"not associative at ({a}, {b}, {c})")
        object.__setattr__(self, "_identity", e)
        object.__setattr__(self, "_inverse", tuple(inverse))

    @property
    def size(self) -> int:
        return len(self.table)

    @property
    def identity_value(self):
        return self._identity

    def normalize(self, value):
        v = int(value)
        if not 0 <= v < self.size:
            raise InvalidElement(f"index {v} out of range")
        return v

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inverse[a]

    def order(self, a):
        k, x = 1, a
        while x != self._identity:
            x = self.table[x][a]
            k += 1
        return k

    def to_json(self):
        return {"kind": self.kind, "table": [list(r) for r in self.table]}


def cyclic_table(n: int) -> FiniteTable:
    return FiniteTable(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def evaluate(backend: GroupBackend, expr: Iterable) -> Element:
    """Multiply out ``expr``: a sequence of Elements or ``(Element, power)`` pairs."""
    acc = backend.identity_value
    for item in expr:
        if isinstance(item, Element):
            g, n = item, 1
        else:
            g, n = item
        if g.backend is not backend and g.backend != backend:
            raise MixedBackend(f"{g!r} does not belong to {backend!r}")
        acc = backend.mul(acc, backend.power(g.value, n))
    return Element(backend, acc)


def order(backend: GroupBackend, g: Element) -> float:
    if g.backend != backend:
        raise MixedBackend(f"{g!r} does not belong to {backend!r}")
    return backend.order(g.value)


def backend_from_json(spec: Mapping) -> GroupBackend:
    kind = spec.get("kind")
    if kind == "free_abelian":
        return FreeAbelian(int(spec["rank"]))
    if kind == "free":
        return Free(tuple(spec["basis"]))
    if kind == "finite_table":
        return FiniteTable(spec["table"])
    if kind == "formal":
        alphabet = spec.get("alphabet")
        return FormalSymbols(None if alphabet is None else frozenset(alphabet),
                             spec.get("phi") or ())
    raise GroupError(f"unknown backend kind {kind!r}")


# -- coset arithmetic in Z^n / <t> -------------------------------------------

def _basis_change(p: Sequence[int]) -> list:
    """Unimodular integer matrix M (list of rows) with M @ p = gcd(p) * e_1."""
    n = len(p)
    v = list(p)
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    while sum(1 for x in v if x) > 1:
        i = min((k for k in range(n) if v[k]), key=lambda k: abs(v[k]))
        for j in range(n):
            if j != i and v[j]:
                q = v[j] // v[i]
                v[j] -= q * v[i]
                M[j] = [a - q * b for a, b in zip(M[j], M[i])]
    i = next(k for k in range(n) if v[k])
    if i:
        v[0], v[i] = v[i], v[0]
        M[0], M[i] = M[i], M[0]
    if v[0] < 0:
        v[0] = -v[0]
        M[0] = [-a for a in M[0]]
    return M


def _inverse_unimodular(M: list) -> list:
    """Exact inverse of a unimodular integer matrix by Gauss-Jordan on Fractions."""
    from fractions import Fraction

    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    inv = [[A[i][n + j] for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in inv for x in row)
    return [[int(x) for x in row] for row in inv]


def _matvec(M, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def coset_decompose(T: FreeAbelian, t: Element, x: Element) -> tuple:
    """Split ``x = rep + l*t`` with ``rep`` the canonical representative of x + <t>.

    With ``M t = d e_1`` for a unimodular M, the coset of x is determined by
    ``M x`` modulo ``d e_1``; the representative has first coordinate in
    ``[0, d)`` in that basis (zero when t is primitive).
    """
    if not isinstance(T, FreeAbelian):
        raise GroupError("coset_decompose needs a free abelian group")
    _same_backend(t, x)
    if t.is_identity:
        raise ZeroDirection("t must be nonzero")
    M = _basis_change(t.value)
    d = _matvec(M, t.value)[0]
    y = list(_matvec(M, x.value))
    l, r = divmod(y[0], d)
    y[0] = r
    rep = _matvec(_inverse_unimodular(M), y)
    return Element(T, rep), l
