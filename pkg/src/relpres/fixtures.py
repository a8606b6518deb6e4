"""Small hand-built Howie diagrams used by tests, scripts and the CLI."""
from __future__ import annotations

from typing import Dict, List, Tuple

from .howie import (
    Corner,
    Edge,
    Equation,
    Face,
    FaceType,
    HowieDiagram,
    Side,
    corner,
    cyclically_trivial,
    inv,
    mul,
    phi,
)

_UNKNOWN = "?"


def _solve_unknowns(d: HowieDiagram, order: List[Tuple[str, str]]) -> HowieDiagram:
    """Replace placeholder letters ``?k`` by solving vertex equations in turn.

    ``order`` pairs each unknown with the vertex whose label must become
    trivial; at that point the unknown must be the only one left there.
    """
    values: Dict[str, Corner] = {}

    def subst(c: Corner) -> Corner:
        out: Corner = ()
        for sym, e in c:
            base, k = sym, 0
            while base.endswith("^phi"):
                base, k = base[:-4], k + 1
            if base in values:
                piece = values[base]
                for _ in range(k):
                    piece = phi(piece)
            else:
                piece = ((sym, 1),)
            out = mul(out, piece if e == 1 else inv(piece))
        return out

    for name, v in order:
        orbit = d.vertex_orbits()[v][0]
        cs = [subst(d.corner_of(h)) for h in orbit]
        k = next(i for i, c in enumerate(cs) if any(s == name for s, _ in c))
        target = cs[k]
        rest = mul(*cs[k + 1:], *cs[:k])
        # target * rest = 1 and target is (name, e)
        assert len(target) == 1, target
        val = inv(rest) if target[0][1] == 1 else rest
        values[name] = val
    faces = tuple(Face(f.id, f.type, tuple(Side(s.edge, s.along, subst(s.corner))
                                           for s in f.sides)) for f in d.faces)
    out = HowieDiagram(d.m, d.vertices, d.exterior, d.edges, faces, d.equation)
    for f in out.faces:
        for s in f.sides:
            if not s.corner:
                raise ValueError("solved corner label is trivial")
    return out


def c_balloon(m: int = 1, c: str = "c") -> HowieDiagram:
    """Two C-faces glued along both of their t-edges."""
    cc = corner(c)
    return HowieDiagram(
        m=m, vertices=("v0", "v1"), exterior="v0",
        edges=(Edge("e1", "v0", "v1", "t"), Edge("e2", "v0", "v1", "t")),
        faces=(Face("f1", FaceType.C_FACE, (Side("e1", False, inv(cc)), Side("e2", True, cc))),
               Face("f2", FaceType.C_FACE, (Side("e2", False, cc), Side("e1", True, inv(cc))))),
    )


def b_balloon(m: int = 1, b: str = "b") -> HowieDiagram:
    """Two B-faces glued along both x-edges; a reducible pair."""
    bb = corner(b)
    return HowieDiagram(
        m=m, vertices=("V", "U"), exterior="U",
        edges=(Edge("e1", "V", "U", "x"), Edge("e2", "V", "U", "x")),
        faces=(Face("B1", FaceType.B_FACE, (Side("e1", False, inv(bb)), Side("e2", True, phi(bb)))),
               Face("B2", FaceType.B_FACE, (Side("e2", False, bb), Side("e1", True, phi(inv(bb)))))),
    )


def three_b(m: int = 1) -> HowieDiagram:
    """Three B-faces between two vertices; reduced but not strongly reduced."""
    b, b2 = corner("b"), corner("b'")
    u = ((_UNKNOWN + "1", 1),)
    d = HowieDiagram(
        m=m, vertices=("V", "U"), exterior="U",
        edges=(Edge("e1", "V", "U", "x"), Edge("e", "V", "U", "x"), Edge("e2", "V", "U", "x")),
        faces=(
            Face("B1", FaceType.B_FACE, (Side("e1", False, inv(b)), Side("e", True, phi(b)))),
            Face("B2", FaceType.B_FACE, (Side("e", False, inv(b2)), Side("e2", True, phi(b2)))),
            Face("B3", FaceType.B_FACE, (Side("e2", False, inv(u)), Side("e1", True, phi(u)))),
        ),
    )
    return _solve_unknowns(d, [(_UNKNOWN + "1", "V")])


def three_c(m: int = 1) -> HowieDiagram:
    """Three C-faces between two vertices."""
    c, c2 = corner("c"), corner("c'")
    u = ((_UNKNOWN + "1", 1),)
    d = HowieDiagram(
        m=m, vertices=("V", "U"), exterior="U",
        edges=(Edge("e1", "V", "U", "t"), Edge("e", "V", "U", "t"), Edge("e2", "V", "U", "t")),
        faces=(
            Face("C1", FaceType.C_FACE, (Side("e1", False, inv(c)), Side("e", True, c))),
            Face("C2", FaceType.C_FACE, (Side("e", False, inv(c2)), Side("e2", True, c2))),
            Face("C3", FaceType.C_FACE, (Side("e2", False, inv(u)), Side("e1", True, u))),
        ),
    )
    return _solve_unknowns(d, [(_UNKNOWN + "1", "V")])


def equation(m: int) -> Equation:
    return Equation(tuple(corner(f"b{i}") for i in range(m + 2)),
                    tuple(corner(f"a{i}") for i in range(m + 1)))


def sandwich(m: int = 1) -> HowieDiagram:
    """A W-face and a W^-1-face joined through a chain of C-faces along their
    t-paths, closed up by one B-face between their x-edges.

    Vertices P0..P_L (L = 2m + 2) lie on the common t-path; P_L is exterior.
    The C-face labels are solved so every interior vertex label is trivial.
    """
    L = 2 * m + 2
    eq = equation(m)
    P = [f"P{i}" for i in range(L + 1)]

    def w_corner(i: int) -> Corner:
        if i == 0:
            return eq.b[0]
        return eq.a[(i - 1) // 2] if i % 2 else eq.b[i // 2]

    def w_along(k: int) -> bool:
        return k % 2 == 0

    edges = [Edge("xW", P[0], P[L], "x"), Edge("xI", P[0], P[L], "x")]
    for k in range(1, L + 1):
        tail, head = (P[k - 1], P[k]) if w_along(k) else (P[k], P[k - 1])
        edges.append(Edge(f"eW{k}", tail, head, "t"))
        edges.append(Edge(f"eI{k}", tail, head, "t"))

    W = [Side("xW", False, w_corner(0))]
    W += [Side(f"eW{k}", w_along(k), w_corner(k)) for k in range(1, L + 1)]
    WI = [Side("xI", True, inv(w_corner(L)))]
    for j in range(1, L + 1):
        k = L + 1 - j
        WI.append(Side(f"eI{k}", not w_along(k), inv(w_corner(k - 1))))
    faces = [Face("W", FaceType.W_FACE, tuple(W)), Face("Winv", FaceType.W_INV, tuple(WI))]
    for k in range(1, L + 1):
        u = ((f"{_UNKNOWN}{k}", 1),)
        # the side walked against its arrow carries c^-1
        s1 = Side(f"eW{k}", not w_along(k), None)
        s2 = Side(f"eI{k}", w_along(k), None)
        s1 = Side(s1.edge, s1.along, inv(u) if not s1.along else u)
        s2 = Side(s2.edge, s2.along, inv(u) if not s2.along else u)
        faces.append(Face(f"C{k}", FaceType.C_FACE, (s1, s2)))
    bb = corner("b")
    faces.append(Face("B", FaceType.B_FACE, (Side("xI", False, inv(bb)),
                                             Side("xW", True, phi(bb)))))
    d = HowieDiagram(m, tuple(P), P[L], tuple(edges), tuple(faces), eq)
    return _solve_unknowns(d, [(f"{_UNKNOWN}{k}", P[k - 1]) for k in range(1, L + 1)])


def all_fixtures() -> Dict[str, HowieDiagram]:
    return {
        "c_balloon": c_balloon(),
        "three_b": three_b(),
        "three_c": three_c(),
        "sandwich_m1": sandwich(1),
        "sandwich_m2": sandwich(2),
        "sandwich_m3": sandwich(3),
    }


__all__ = ["c_balloon", "b_balloon", "three_b", "three_c", "sandwich", "equation",
           "all_fixtures", "cyclically_trivial"]
