"""Spherical Howie diagrams over the system

    b^-x b^phi = 1          (b in B),
    [t, c] = 1              (c in C),
    x^-1 b_0 a_0^t ... b_m a_m^t b_{m+1} = 1,

together with the car-motion schedule and exact collision detection.

Conventions.  A face boundary is the list of its sides in anticlockwise
order; each side names an edge, says whether it is walked along or against
the edge arrow, and carries the label of the corner that follows it.  With
``next`` the following side of the same face and ``twin`` the other side of
the same edge, ``twin(next(h))`` is the corner clockwise next to ``h``
around their common vertex, so vertex labels are read clockwise.  Corner
labels are formal words; ``phi`` acts on symbols by appending ``^phi``.
"""
from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .groups import FormalSymbols, format_letters

CORNERS = FormalSymbols(None)

Corner = Tuple[Tuple[str, int], ...]
HalfEdge = Tuple[int, int]  # (face index, side index)


class DiagramError(ValueError):
    pass


class NotSpherical(DiagramError):
    pass


class NoExteriorVertex(DiagramError):
    pass


class TemplateMismatch(DiagramError):
    def __init__(self, face: str, reason: str):
        super().__init__(f"face {face}: {reason}")
        self.face = face


class NontrivialInteriorLabel(DiagramError):
    def __init__(self, vertex: str, label: str):
        super().__init__(f"interior vertex {vertex} has label {label}")
        self.vertex = vertex


class NotMergeable(DiagramError):
    pass


class UnknownTemplate(DiagramError):
    pass


class FaceType(enum.Enum):
    B_FACE = "B_FACE"
    C_FACE = "C_FACE"
    W_FACE = "W_FACE"
    W_INV = "W_INV"


_TYPE_ALIASES = {"B_FACE_INV": FaceType.B_FACE, "C_FACE_INV": FaceType.C_FACE,
                 "W_FACE_INV": FaceType.W_INV}


def face_type(name: str) -> FaceType:
    if name in _TYPE_ALIASES:
        return _TYPE_ALIASES[name]
    try:
        return FaceType(name)
    except ValueError:
        raise UnknownTemplate(f"unknown face type {name!r}") from None


def corner(text) -> Corner:
    return CORNERS.normalize(text)


def inv(c: Corner) -> Corner:
    return CORNERS.inv(c)


def mul(*cs: Corner) -> Corner:
    out: Corner = ()
    for c in cs:
        out = CORNERS.mul(out, c)
    return out


def phi(c: Corner) -> Corner:
    return CORNERS.apply_phi(c)


def fmt(c: Corner) -> str:
    return format_letters(c)


def cyclically_trivial(c: Corner) -> bool:
    w = list(c)
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return not w


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    label: str


@dataclass(frozen=True)
class Side:
    edge: str
    along: bool
    corner: Corner


@dataclass(frozen=True)
class Face:
    id: str
    type: FaceType
    sides: Tuple[Side, ...]


@dataclass(frozen=True)
class Equation:
    """Coefficients ``b_0..b_{m+1}`` and ``a_0..a_m`` of the third equation."""

    b: Tuple[Corner, ...]
    a: Tuple[Corner, ...]


@dataclass(frozen=True)
class HowieDiagram:
    m: int
    vertices: Tuple[str, ...]
    exterior: str
    edges: Tuple[Edge, ...]
    faces: Tuple[Face, ...]
    equation: Optional[Equation] = None

    def edge(self, eid: str) -> Edge:
        return self._edge_map()[eid]

    def _edge_map(self) -> Dict[str, Edge]:
        return {e.id: e for e in self.edges}

    def face(self, fid: str) -> Face:
        for f in self.faces:
            if f.id == fid:
                return f
        raise KeyError(fid)

    def face_index(self, fid: str) -> int:
        return next(i for i, f in enumerate(self.faces) if f.id == fid)

    # -- combinatorics ----------------------------------------------------------
    def side_ends(self, h: HalfEdge) -> Tuple[str, str]:
        s = self.faces[h[0]].sides[h[1]]
        e = self.edge(s.edge)
        return (e.tail, e.head) if s.along else (e.head, e.tail)

    def next(self, h: HalfEdge) -> HalfEdge:
        return h[0], (h[1] + 1) % len(self.faces[h[0]].sides)

    def half_edges(self) -> List[HalfEdge]:
        return [(fi, si) for fi, f in enumerate(self.faces) for si in range(len(f.sides))]

    def twins(self) -> Dict[HalfEdge, HalfEdge]:
        by_edge = defaultdict(list)
        for h in self.half_edges():
            by_edge[self.faces[h[0]].sides[h[1]].edge].append(h)
        out = {}
        for hs in by_edge.values():
            if len(hs) == 2:
                out[hs[0]], out[hs[1]] = hs[1], hs[0]
        return out

    def vertex_orbits(self) -> Dict[str, List[List[HalfEdge]]]:
        """Clockwise corner cycles at each vertex; corner ``h`` sits at head(h)."""
        tw = self.twins()
        seen = set()
        orbits: Dict[str, List[List[HalfEdge]]] = defaultdict(list)
        for h in self.half_edges():
            if h in seen:
                continue
            orbit = []
            cur = h
            while cur not in seen:
                seen.add(cur)
                orbit.append(cur)
                cur = tw[self.next(cur)]
            orbits[self.side_ends(h)[1]].append(orbit)
        return dict(orbits)

    def corner_of(self, h: HalfEdge) -> Corner:
        return self.faces[h[0]].sides[h[1]].corner


# -- validation -----------------------------------------------------------------

def _check_map(d: HowieDiagram) -> Dict[str, List[HalfEdge]]:
    if d.m < 1:
        raise DiagramError("m must be at least 1")
    if d.exterior not in d.vertices:
        raise NoExteriorVertex(f"exterior vertex {d.exterior!r} is not a vertex")
    verts = set(d.vertices)
    if len(verts) != len(d.vertices):
        raise NotSpherical("duplicate vertex ids")
    emap = d._edge_map()
    if len(emap) != len(d.edges):
        raise NotSpherical("duplicate edge ids")
    for e in d.edges:
        if e.tail not in verts or e.head not in verts:
            raise NotSpherical(f"edge {e.id} has an unknown endpoint")
        if e.label not in ("t", "x"):
            raise NotSpherical(f"edge {e.id} must be labelled t or x")
    uses = defaultdict(list)
    for fi, f in enumerate(d.faces):
        if not f.sides:
            raise NotSpherical(f"face {f.id} has an empty boundary")
        for si, s in enumerate(f.sides):
            if s.edge not in emap:
                raise NotSpherical(f"face {f.id} uses unknown edge {s.edge}")
            uses[s.edge].append(s.along)
            end = d.side_ends((fi, si))[1]
            start = d.side_ends(d.next((fi, si)))[0]
            if end != start:
                raise NotSpherical(f"boundary of face {f.id} is broken after side {si}")
    for e in d.edges:
        u = uses.get(e.id, [])
        if len(u) != 2 or u[0] == u[1]:
            raise NotSpherical(f"edge {e.id} must be traversed twice in opposite directions")
    orbits = d.vertex_orbits()
    for v in d.vertices:
        if len(orbits.get(v, [])) != 1:
            raise NotSpherical(f"vertex {v} has {len(orbits.get(v, []))} corner cycles")
    # connectivity through shared edges
    adj = defaultdict(set)
    for e in d.edges:
        adj[e.tail].add(e.head)
        adj[e.head].add(e.tail)
    stack, reach = [d.vertices[0]], {d.vertices[0]}
    while stack:
        for w in adj[stack.pop()]:
            if w not in reach:
                reach.add(w)
                stack.append(w)
    if reach != verts:
        raise NotSpherical("map is not connected")
    chi = len(d.vertices) - len(d.edges) + len(d.faces)
    if chi != 2:
        raise NotSpherical(f"Euler characteristic {chi} != 2")
    return {v: o[0] for v, o in orbits.items()}


@dataclass(frozen=True)
class Template:
    """Where a face's pattern starts, and its coefficient."""

    offset: int
    coefficient: Optional[Corner] = None


def match_template(d: HowieDiagram, f: Face) -> Template:
    """Check a face against its type's boundary pattern; return the rotation."""
    n = len(f.sides)
    labels = [d.edge(s.edge).label for s in f.sides]
    if f.type in (FaceType.B_FACE, FaceType.C_FACE):
        want = "x" if f.type is FaceType.B_FACE else "t"
        if n != 2 or labels != [want, want]:
            raise TemplateMismatch(f.id, f"needs exactly two {want}-edges")
        against = [i for i, s in enumerate(f.sides) if not s.along]
        if len(against) != 1:
            raise TemplateMismatch(f.id, "needs one side along and one against the arrows")
        r = against[0]
        first, second = f.sides[r].corner, f.sides[(r + 1) % 2].corner
        coeff = inv(first)
        if not coeff:
            raise TemplateMismatch(f.id, "coefficient must be nontrivial")
        expected = phi(coeff) if f.type is FaceType.B_FACE else coeff
        if second != expected:
            raise TemplateMismatch(f.id, f"corner {fmt(second)} should be {fmt(expected)}")
        return Template(r, coeff)

    m = d.m
    if n != 2 * m + 3:
        raise TemplateMismatch(f.id, f"needs {2 * m + 3} sides for m = {m}")
    xs = [i for i, lab in enumerate(labels) if lab == "x"]
    if len(xs) != 1:
        raise TemplateMismatch(f.id, "needs exactly one x-edge")
    r = xs[0]
    x_along = f.type is FaceType.W_INV
    if f.sides[r].along != x_along:
        raise TemplateMismatch(f.id, "x-edge has the wrong orientation")
    for j in range(1, n):
        if f.sides[(r + j) % n].along != (j % 2 == 0):
            raise TemplateMismatch(f.id, f"t-edge {j} after x has the wrong orientation")
    if d.equation is not None:
        b, a = d.equation.b, d.equation.a
        for j in range(n):
            got = f.sides[(r + j) % n].corner
            if f.type is FaceType.W_FACE:
                want = b[0] if j == 0 else (a[(j - 1) // 2] if j % 2 else b[j // 2])
            else:
                want = inv(b[m + 1] if j == 0 else
                           (a[m - (j - 1) // 2] if j % 2 else b[m - j // 2 + 1]))
            if got != want:
                raise TemplateMismatch(f.id, f"corner {j} is {fmt(got)}, expected {fmt(want)}")
    return Template(r)


@dataclass
class ValidationReport:
    spherical: bool
    face_templates_ok: bool
    interior_vertex_labels_trivial: bool
    exterior_label: str
    errors: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.spherical and self.face_templates_ok and self.interior_vertex_labels_trivial

    def to_json(self) -> dict:
        return {"valid": self.valid, "spherical": self.spherical,
                "face_templates_ok": self.face_templates_ok,
                "interior_vertex_labels_trivial": self.interior_vertex_labels_trivial,
                "exterior_label": self.exterior_label, "errors": list(self.errors)}


def vertex_label(d: HowieDiagram, orbit: Sequence[HalfEdge]) -> Corner:
    return mul(*(d.corner_of(h) for h in orbit))


def validate(d: HowieDiagram, strict: bool = True) -> ValidationReport:
    """Sphericity, face templates, and formally trivial interior vertex labels.

    With ``strict`` the first failure raises; otherwise all problems are
    collected in the report.  Sphericity failures always raise, since
    nothing else is meaningful without it.
    """
    orbits = _check_map(d)
    errors: List[str] = []
    templates_ok = True
    for f in d.faces:
        try:
            match_template(d, f)
        except TemplateMismatch as exc:
            if strict:
                raise
            templates_ok = False
            errors.append(str(exc))
    interior_ok = True
    for v in d.vertices:
        if v == d.exterior:
            continue
        lab = vertex_label(d, orbits[v])
        if not cyclically_trivial(lab):
            if strict:
                raise NontrivialInteriorLabel(v, fmt(lab))
            interior_ok = False
            errors.append(f"interior vertex {v} has label {fmt(lab)}")
    ext = vertex_label(d, orbits[d.exterior])
    return ValidationReport(True, templates_ok, interior_ok, fmt(ext), errors)


# -- labels -----------------------------------------------------------------------

Token = Tuple[str, object]  # ("edge", (label, +-1)) or ("corner", Corner)


def face_tokens(d: HowieDiagram, f: Face, start: int = 0) -> List[Token]:
    n = len(f.sides)
    out: List[Token] = []
    for j in range(n):
        s = f.sides[(start + j) % n]
        out.append(("edge", (d.edge(s.edge).label, 1 if s.along else -1)))
        out.append(("corner", s.corner))
    return out


def format_tokens(tokens: Sequence[Token]) -> str:
    parts = []
    for kind, val in tokens:
        if kind == "edge":
            lab, e = val
            parts.append(lab if e == 1 else f"{lab}^-1")
        else:
            parts.append(fmt(val) if len(val) <= 1 else f"({fmt(val)})")
    return " ".join(parts)


def format_vertex_label(corners: Sequence) -> str:
    """Clockwise corner product, written without cancelling anything."""
    cs = [corner(c) if isinstance(c, str) else c for c in corners]
    return " ".join(fmt(c) for c in cs if c)


def labels(d: HowieDiagram) -> dict:
    """Vertex labels (clockwise corner lists) and face labels (anticlockwise words)."""
    orbits = d.vertex_orbits()
    vertices = {}
    for v in d.vertices:
        cs = [d.corner_of(h) for h in orbits.get(v, [[]])[0]]
        vertices[v] = {"corners": [fmt(c) for c in cs], "label": format_vertex_label(cs),
                       "reduced": fmt(mul(*cs))}
    faces = {}
    for f in d.faces:
        start = 0
        if f.type in (FaceType.B_FACE, FaceType.C_FACE):
            try:
                start = match_template(d, f).offset
            except TemplateMismatch:
                pass
        faces[f.id] = format_tokens(face_tokens(d, f, start))
    return {"vertices": vertices, "faces": faces}


# -- reducedness ---------------------------------------------------------------

def _flat(tokens: Sequence[Token]) -> tuple:
    letters = []
    for kind, val in tokens:
        if kind == "edge":
            letters.append(("#" + val[0], val[1]))
        else:
            letters.extend(val)
    return CORNERS.mul((), tuple(letters))


def is_reducible_pair(d: HowieDiagram, h: HalfEdge, g: HalfEdge) -> bool:
    if h[0] == g[0]:
        return False
    th = face_tokens(d, d.faces[h[0]], h[1])
    tg = face_tokens(d, d.faces[g[0]], g[1])
    return _flat(tg[1:]) == CORNERS.inv(_flat(th[1:]))


@dataclass
class ReducednessReport:
    reduced: bool
    strongly_reduced: bool
    witness_edge: Optional[str]

    def to_json(self):
        return {"reduced": self.reduced, "strongly_reduced": self.strongly_reduced,
                "witness_edge": self.witness_edge}


def reducedness_report(d: HowieDiagram) -> ReducednessReport:
    tw = d.twins()
    reducible = None
    shared = None
    for h in d.half_edges():
        g = tw[h]
        if g < h:
            continue
        eid = d.faces[h[0]].sides[h[1]].edge
        if reducible is None and is_reducible_pair(d, h, g):
            reducible = eid
        fh, fg = d.faces[h[0]], d.faces[g[0]]
        if (shared is None and h[0] != g[0] and fh.type == fg.type
                and fh.type in (FaceType.B_FACE, FaceType.C_FACE)):
            shared = eid
    reduced = reducible is None
    return ReducednessReport(reduced, reduced and shared is None,
                             reducible if reducible is not None else shared)


def reduce_step(d: HowieDiagram, eid: str) -> HowieDiagram:
    """Erase edge ``eid`` between two B-faces (or two C-faces), merging corners.

    The corners on either end of the erased edge are multiplied in clockwise
    order, so every vertex label is unchanged as a formal word.
    """
    validate(d)
    tw = d.twins()
    hs = [h for h in d.half_edges() if d.faces[h[0]].sides[h[1]].edge == eid]
    if len(hs) != 2:
        raise NotMergeable(f"no edge {eid}")
    h, g = hs
    f1, f2 = d.faces[h[0]], d.faces[g[0]]
    if h[0] == g[0] or f1.type != f2.type or f1.type not in (FaceType.B_FACE, FaceType.C_FACE):
        raise NotMergeable(f"edge {eid} does not separate two B-faces or two C-faces")
    if {s.edge for s in f1.sides} == {s.edge for s in f2.sides}:
        raise NotMergeable("the two faces share their whole boundary")
    if is_reducible_pair(d, h, g):
        raise NotMergeable("the faces form a reducible pair")

    def rotated(face: Face, k: int) -> List[Side]:
        n = len(face.sides)
        return [face.sides[(k + 1 + j) % n] for j in range(n)]  # edge side last

    A = rotated(f1, h[1])
    B = rotated(f2, g[1])
    f_e, g_e = A.pop(), B.pop()
    # corner at p: A's last then g's corner after e; at q: B's last then f's after e
    A[-1] = replace(A[-1], corner=mul(A[-1].corner, g_e.corner))
    B[-1] = replace(B[-1], corner=mul(B[-1].corner, f_e.corner))
    merged = Face(f1.id, f1.type, tuple(A + B))
    faces = tuple(merged if f is f1 else f for f in d.faces if f is not f2)
    edges = tuple(e for e in d.edges if e.id != eid)
    out = replace(d, faces=faces, edges=edges)
    validate(out)
    return out


# -- JSON ----------------------------------------------------------------------------

def diagram_to_json(d: HowieDiagram) -> dict:
    out = {
        "m": d.m,
        "exterior": d.exterior,
        "vertices": list(d.vertices),
        "edges": [{"id": e.id, "from": e.tail, "to": e.head, "label": e.label} for e in d.edges],
        "faces": [{"id": f.id, "type": f.type.value,
                   "boundary": [{"edge": s.edge, "along": s.along, "corner": fmt(s.corner)}
                                for s in f.sides]} for f in d.faces],
    }
    if d.equation is not None:
        out["equation"] = {"b": [fmt(c) for c in d.equation.b],
                           "a": [fmt(c) for c in d.equation.a]}
    return out


def diagram_from_json(obj: Mapping) -> HowieDiagram:
    eq = obj.get("equation")
    equation = None
    if eq is not None:
        equation = Equation(tuple(corner(c) for c in eq["b"]), tuple(corner(c) for c in eq["a"]))
    return HowieDiagram(
        m=int(obj["m"]),
        vertices=tuple(obj["vertices"]),
        exterior=obj["exterior"],
        edges=tuple(Edge(e["id"], e["from"], e["to"], e["label"]) for e in obj["edges"]),
        faces=tuple(Face(f["id"], face_type(f["type"]),
                         tuple(Side(s["edge"], bool(s["along"]), corner(s["corner"]))
                               for s in f["boundary"])) for f in obj["faces"]),
        equation=equation,
    )


# -- car motion ------------------------------------------------------------------

@dataclass(frozen=True)
class MotionSchedule:
    """Periodic motion of one car around a face boundary.

    ``durations[j]`` is the time spent on side ``j``; the car sits at the
    corner after side ``anchor`` at time ``phase``.
    """

    face: int
    durations: Tuple[Fraction, ...]
    anchor: int
    phase: Fraction = Fraction(0)

    @property
    def period(self) -> Fraction:
        return sum(self.durations, Fraction(0))

    def corner_time(self, j: int) -> Fraction:
        """One time at which the car is at the corner after side ``j``."""
        n = len(self.durations)
        t = self.phase
        k = self.anchor
        while k != j % n:
            k = (k + 1) % n
            t += self.durations[k]
        return t

    def side_start(self, j: int) -> Fraction:
        return self.corner_time((j - 1) % len(self.durations))

    def copies(self, t: Fraction, horizon: Fraction) -> List[Fraction]:
        P = self.period
        t = t - (t // P) * P
        out = []
        while t < horizon:
            out.append(t)
            t += P
        return out

    def corner_times(self, j: int, horizon: Fraction) -> List[Fraction]:
        return self.copies(self.corner_time(j), horizon)

    def side_intervals(self, j: int, horizon: Fraction) -> List[Tuple[Fraction, Fraction]]:
        """Traversal intervals of side ``j`` clipped to ``[0, horizon)``."""
        s, d = self.side_start(j), self.durations[j]
        P = self.period
        s -= (s // P + 1) * P  # start one period early to catch wrap-around
        out = []
        while s < horizon:
            lo, hi = max(s, Fraction(0)), min(s + d, horizon)
            if lo < hi:
                out.append((lo, hi))
            s += P
        return out

    def shifted(self, delta) -> "MotionSchedule":
        return replace(self, phase=self.phase + Fraction(delta))


def horizon(d: HowieDiagram) -> Fraction:
    return Fraction(4 * d.m)


def schedule_of(d: HowieDiagram, face: int) -> MotionSchedule:
    """The standard schedule: B-cars at speed 1/(2m), C-cars at unit speed,
    W-cars at unit speed except near the x-edge."""
    f = d.faces[face]
    tpl = match_template(d, f)
    r, m = tpl.offset, d.m
    n = len(f.sides)
    one = Fraction(1)
    if f.type is FaceType.B_FACE:
        return MotionSchedule(face, (Fraction(2 * m),) * 2, r)
    if f.type is FaceType.C_FACE:
        return MotionSchedule(face, (one, one), r)
    dur = [one] * n
    dur[r] = Fraction(2 * m - 1)
    dur[(r + 1) % n] = Fraction(1, 2)
    dur[(r - 1) % n] = Fraction(1, 2)
    if f.type is FaceType.W_FACE:
        anchor = (r + 1) % n  # corner a_0
    else:
        anchor = (r - 2) % n  # corner a_0^-1
    return MotionSchedule(face, tuple(dur), anchor)


def standard_schedules(d: HowieDiagram) -> List[MotionSchedule]:
    return [schedule_of(d, i) for i in range(len(d.faces))]


@dataclass(frozen=True)
class CollisionEvent:
    time: Fraction
    kind: str  # "vertex" or "edge"
    where: str
    position: Fraction  # 0 at a vertex, else distance from the edge tail
    faces: Tuple[str, ...]
    complete: bool

    def to_json(self) -> dict:
        return {"time": _q(self.time), "kind": self.kind, "where": self.where,
                "position": _q(self.position), "faces": list(self.faces),
                "complete": self.complete}


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class CollisionReport:
    horizon: Fraction
    events: List[CollisionEvent]

    @property
    def complete_points(self) -> List[Tuple[str, str, Fraction]]:
        pts = {(e.kind, e.where, e.position) for e in self.events if e.complete}
        return sorted(pts)

    def to_json(self) -> dict:
        return {"horizon": _q(self.horizon), "events": [e.to_json() for e in self.events],
                "complete_points": [{"kind": k, "where": w, "position": _q(p)}
                                    for k, w, p in self.complete_points]}


def simulate(d: HowieDiagram, schedules: Optional[Sequence[MotionSchedule]] = None
             ) -> CollisionReport:
    """All collisions during one period ``[0, 4m)``, in exact arithmetic.

    A vertex collision lists the cars sitting at corners of that vertex at
    the same moment; it is complete when every corner is occupied.  Two cars
    meeting inside an edge always form a complete collision.
    """
    validate(d)
    if schedules is None:
        schedules = standard_schedules(d)
    sched = {s.face: s for s in schedules}
    H = horizon(d)
    events: List[CollisionEvent] = []

    for v, orbit in ((v, o[0]) for v, o in d.vertex_orbits().items()):
        at: Dict[Fraction, List[str]] = defaultdict(list)
        for fi, si in orbit:
            for t in sched[fi].corner_times(si, H):
                at[t].append(d.faces[fi].id)
        for t, cars in at.items():
            if len(cars) >= 2 or len(orbit) == 1:
                events.append(CollisionEvent(t, "vertex", v, Fraction(0),
                                             tuple(sorted(cars)), len(cars) == len(orbit)))

    tw = d.twins()
    for h in d.half_edges():
        g = tw[h]
        if g < h:
            continue
        sh, sg = d.faces[h[0]].sides[h[1]], d.faces[g[0]].sides[g[1]]
        if not sh.along:
            h, g, sh, sg = g, h, sg, sh
        ph, pg = sched[h[0]], sched[g[0]]
        dh, dg = ph.durations[h[1]], pg.durations[g[1]]
        found = set()
        # enumerate traversal starts over three periods and solve the linear meeting
        for s1 in _starts(ph, h[1], H):
            for s2 in _starts(pg, g[1], H):
                # along: (tau - s1)/dh ; against: 1 - (tau - s2)/dg
                tau = (1 + s1 / dh + s2 / dg) / (1 / dh + 1 / dg)
                if s1 < tau < s1 + dh and s2 < tau < s2 + dg:
                    pos = (tau - s1) / dh
                    found.add((tau % H, pos))
        for tau, pos in found:
            events.append(CollisionEvent(tau, "edge", sh.edge, pos,
                                         tuple(sorted((d.faces[h[0]].id, d.faces[g[0]].id))),
                                         True))

    events.sort(key=lambda e: (e.time, e.kind, e.where, e.position))
    return CollisionReport(H, events)


def _starts(s: MotionSchedule, j: int, H: Fraction) -> List[Fraction]:
    P = s.period
    t = s.side_start(j)
    t -= (t // P + 1) * P
    out = []
    while t < 2 * H:
        out.append(t)
        t += P
    return out


@dataclass
class ParityReport:
    t_edges_ok: bool
    x_edges_ok: bool
    violations: List[dict]

    @property
    def ok(self) -> bool:
        return self.t_edges_ok and self.x_edges_ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "t_edges_ok": self.t_edges_ok, "x_edges_ok": self.x_edges_ok,
                "violations": self.violations}


def check_parity_invariant(d: HowieDiagram,
                           schedules: Optional[Sequence[MotionSchedule]] = None) -> ParityReport:
    """On t-edges cars move with the arrow exactly during even unit intervals;
    on x-edges they move with the arrow during [0, 2m] and against it during
    [2m, 4m], modulo 4m."""
    validate(d)
    if schedules is None:
        schedules = standard_schedules(d)
    H = horizon(d)
    half = H / 2
    violations = []
    t_ok = x_ok = True
    for s in schedules:
        f = d.faces[s.face]
        for j, side in enumerate(f.sides):
            lab = d.edge(side.edge).label
            for lo, hi in s.side_intervals(j, H):
                bad = False
                if lab == "t":
                    n = int(lo // 1)
                    while n < hi:
                        if max(lo, n) < min(hi, n + 1) and (n % 2 == 0) != side.along:
                            bad = True
                        n += 1
                else:
                    bad = not (hi <= half if side.along else lo >= half)
                if bad:
                    if lab == "t":
                        t_ok = False
                    else:
                        x_ok = False
                    violations.append({"face": f.id, "side": j, "edge": side.edge,
                                       "interval": [_q(lo), _q(hi)]})
    return ParityReport(t_ok, x_ok, violations)


def x_endpoint_offsets(d: HowieDiagram,
                       schedules: Optional[Sequence[MotionSchedule]] = None) -> List[dict]:
    """At each end of each x-edge, arrival-time differences between the
    W-type car and the B-car whose corners touch that edge, modulo 4m."""
    if schedules is None:
        schedules = standard_schedules(d)
    sched = {s.face: s for s in schedules}
    H = horizon(d)
    out = []
    for e in d.edges:
        if e.label != "x":
            continue
        hs = [h for h in d.half_edges() if d.faces[h[0]].sides[h[1]].edge == e.id]
        for v in (e.tail, e.head):
            b_times, w_times = [], []
            for h in hs:
                f = d.faces[h[0]]
                # corner at v adjacent to this side: the side's own corner or the previous one
                for j in (h[1], (h[1] - 1) % len(f.sides)):
                    if d.side_ends((h[0], j))[1] == v:
                        times = sched[h[0]].corner_times(j, H)
                        (b_times if f.type is FaceType.B_FACE else w_times).extend(times)
                        break
            diffs = sorted({(w - b) % H for w in w_times for b in b_times})
            out.append({"edge": e.id, "vertex": v, "differences": diffs,
                        "b_times": sorted(b_times), "w_times": sorted(w_times)})
    return out
