"""Cube of resolutions, commutativity obstruction and sign assignments.

Vertices are integers whose bit ``k`` is the smoothing type at crossing ``k``.
An edge is a pair ``(xi, k)`` with bit ``k`` of ``xi`` clear.  A face is
``(xi, j, k)`` with ``j < k`` and both bits clear; its four edges are

* ``e_j0 = (xi, j)`` and ``e_k1 = (xi | 1<<j, k)`` on the path flipping j first
* ``e_k0 = (xi, k)`` and ``e_j1 = (xi | 1<<k, j)`` on the other path

and ``psi`` is defined by ``F(e_k1) F(e_j0) = psi * F(e_j1) F(e_k0)``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .diagram import PlanarDiagram, ResolutionState, SurgeryArc, resolve, surgery_arc
from .scalars import (
    MERGE_DEGREE,
    ONE,
    SPLIT_DEGREE,
    X,
    XY,
    Y,
    Z,
    Z_INV,
    BiDegree,
    UnitMonomial,
    boundary_balance_holds,
    render_monomial,
)

DEFAULT_LIMIT = 20
LIMIT_ENV = "CHRONOKH_MAX_CROSSINGS"

# Ladybug faces: the two arcs sit on one circle with interleaved endpoints.
# With the circle oriented so the first arc's saddle lies on its left, the
# arrow pattern is "parallel" when the tails and heads alternate as
# (tail_A, tail_B, head_A, head_B).  The value for each pattern was fixed by
# requiring a solvable sign assignment and Reidemeister-invariant odd homology.
LADYBUG_PSI = {"parallel": ONE, "antiparallel": XY}


class TooLarge(ValueError):
    pass


class UnclassifiableFace(RuntimeError):
    pass


class InconsistentObstruction(RuntimeError):
    pass


def crossing_limit() -> int:
    try:
        return int(os.environ.get(LIMIT_ENV, DEFAULT_LIMIT))
    except ValueError:
        return DEFAULT_LIMIT


def bits(xi: int, n: int) -> tuple[int, ...]:
    return tuple((xi >> k) & 1 for k in range(n))


def weight(xi: int) -> int:
    return bin(xi).count("1")


@dataclass
class CubeVertex:
    xi: int
    weight: int
    state: ResolutionState
    shift: BiDegree


@dataclass
class CubeEdge:
    xi: int
    k: int
    arc: SurgeryArc

    @property
    def kind(self) -> str:
        return self.arc.kind

    @property
    def target(self) -> int:
        return self.xi | (1 << self.k)

    @property
    def degree(self) -> BiDegree:
        return MERGE_DEGREE if self.arc.kind == "merge" else SPLIT_DEGREE


@dataclass
class Face:
    xi: int
    j: int
    k: int
    psi: UnitMonomial
    label: str = ""


@dataclass
class ResolutionCube:
    diagram: PlanarDiagram
    vertices: list[CubeVertex]
    edges: dict[tuple[int, int], CubeEdge]
    ell0: int
    _faces: list[Face] | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.diagram.n

    def faces(self) -> list[Face]:
        if self._faces is None:
            self._faces = [classify_face(self, xi, j, k) for xi, j, k in face_indices(self.n)]
        return self._faces

    def edge_list(self) -> list[CubeEdge]:
        return [self.edges[key] for key in sorted(self.edges)]


def face_indices(n: int):
    for j, k in combinations(range(n), 2):
        mask = (1 << j) | (1 << k)
        for xi in range(1 << n):
            if not xi & mask:
                yield xi, j, k


def vertex_shift(w: int, ell: int, ell0: int) -> BiDegree:
    """Bracket shift ``((w - l + l0)/2, (w + l - l0)/2)``."""
    a2, b2 = w - ell + ell0, w + ell - ell0
    if a2 % 2 or b2 % 2:
        raise ValueError(f"parity violated: w={w}, l={ell}, l0={ell0}")
    return BiDegree(a2 // 2, b2 // 2)


def build_cube(D: PlanarDiagram, limit: int | None = None) -> ResolutionCube:
    limit = crossing_limit() if limit is None else limit
    n = D.n
    if n > limit:
        raise TooLarge(f"{n} crossings exceed the limit of {limit}")
    states = [resolve(D, bits(xi, n)) for xi in range(1 << n)]
    ell0 = states[0].circleCount
    vertices = [
        CubeVertex(xi, weight(xi), st, vertex_shift(weight(xi), st.circleCount, ell0))
        for xi, st in enumerate(states)
    ]
    edges = {}
    for xi in range(1 << n):
        for k in range(n):
            if not (xi >> k) & 1:
                arc = surgery_arc(D, bits(xi, n), k, states[xi], states[xi | (1 << k)])
                edges[(xi, k)] = CubeEdge(xi, k, arc)
    return ResolutionCube(D, vertices, edges, ell0)


# face classification --------------------------------------------------------

def _positions(turns, k):
    return [i for i, t in enumerate(turns) if t.k == k]


def _strand(slot_pair_start: int) -> frozenset:
    return frozenset((0, 1)) if slot_pair_start in (0, 1) else frozenset((2, 3))


def _ladybug_type(cube: ResolutionCube, xi: int, A: SurgeryArc, B: SurgeryArc, c: int) -> str:
    st = cube.vertices[xi].state
    turns = st.turns[c]
    pa, pb = _positions(turns, A.k), _positions(turns, B.k)
    if len(pa) != 2 or len(pb) != 2:
        raise UnclassifiableFace("ladybug arcs do not touch the circle twice")

    def left(t) -> bool:
        # walking 0->1 or 2->3 turns right around the crossing center
        return (t.pin, t.pout) in ((0, 1), (2, 3))

    sides_a = {left(turns[i]) for i in pa}
    sides_b = {left(turns[i]) for i in pb}
    if len(sides_a) != 1 or len(sides_b) != 1:
        raise UnclassifiableFace("saddle on both sides of its circle")
    m = len(turns)
    order = list(range(m))
    if not sides_a.pop():
        order = order[::-1]
        sides_b = {not s for s in sides_b}
    if sides_b.pop():
        raise UnclassifiableFace("interleaved saddles on the same side of the circle")
    rank = {i: r for r, i in enumerate(order)}

    def tail_first(arc, ps):
        tail = _strand(arc.tailSlot)
        t0 = turns[ps[0]]
        return (ps[0], ps[1]) if t0.pin in tail else (ps[1], ps[0])

    a1, a2 = tail_first(A, pa)
    b1, b2 = tail_first(B, pb)
    seq = sorted([(rank[a1], "a1"), (rank[a2], "a2"), (rank[b1], "b1"), (rank[b2], "b2")])
    names = [s for _, s in seq]
    i = names.index("a1")
    names = names[i:] + names[:i]
    if names == ["a1", "b1", "a2", "b2"]:
        return "parallel"
    if names == ["a1", "b2", "a2", "b1"]:
        return "antiparallel"
    raise UnclassifiableFace(f"ladybug endpoints not interleaved: {names}")


def classify_face(cube: ResolutionCube, xi: int, j: int, k: int) -> Face:
    A = cube.edges[(xi, j)].arc
    B = cube.edges[(xi, k)].arc
    if A.kind == "merge" and B.kind == "merge":
        ca, cb = set(A.inputs), set(B.inputs)
        inter = ca & cb
        if not inter:
            return Face(xi, j, k, X, "DisMM")
        if len(inter) == 1:
            return Face(xi, j, k, X, "ConnMM")
        if A.inputs[0] == B.inputs[0]:
            return Face(xi, j, k, Y, "ConnX-parallel")
        return Face(xi, j, k, X, "ConnX-antiparallel")
    if A.kind == "split" and B.kind == "split":
        (ca,), (cb,) = A.inputs, B.inputs
        if ca != cb:
            return Face(xi, j, k, Y, "DisSS")
        turns = cube.vertices[xi].state.turns[ca]
        marks = [t.k for t in turns if t.k in (j, k)]
        if len(marks) != 4:
            raise UnclassifiableFace(f"face {xi},{j},{k}: split arcs not on circle")
        interleaved = marks[0] != marks[1] and marks[1] != marks[2] and marks[2] != marks[3]
        if not interleaved:
            return Face(xi, j, k, Y, "ConnSS")
        kind = _ladybug_type(cube, xi, A, B, ca)
        return Face(xi, j, k, LADYBUG_PSI[kind], f"ladybug-{kind}")
    merge, split = (A, B) if A.kind == "merge" else (B, A)
    label = "ConnMS" if split.inputs[0] in merge.inputs else "DisMS"
    # merge first on the j-then-k path gives Z^-1
    return Face(xi, j, k, Z_INV if A.kind == "merge" else Z, label)


# sign assignments -----------------------------------------------------------

@dataclass
class SignAssignment:
    eps: dict[tuple[int, int], UnitMonomial]

    def __getitem__(self, key):
        return self.eps[key]

    def copy(self) -> "SignAssignment":
        return SignAssignment(dict(self.eps))


def face_condition(eps, face: Face) -> bool:
    """``eps(e_k1) eps(e_j0) psi == -eps(e_j1) eps(e_k0)``."""
    xi, j, k = face.xi, face.j, face.k
    lhs = eps[(xi | (1 << j), k)] * eps[(xi, j)] * face.psi
    rhs = -(eps[(xi | (1 << k), j)] * eps[(xi, k)])
    return lhs == rhs


def solve_sign_assignment(cube: ResolutionCube, verify: bool = True) -> SignAssignment:
    """Solve ``delta eps = -psi``.

    Edges ``(xi, m)`` where ``xi`` has no bit above ``m`` form a spanning tree
    and get 1.  Any other edge is the ``e_j1`` edge of the face spanned by
    ``m`` and the highest bit ``k`` of ``xi``, whose other three edges are
    already known when edges are processed by increasing weight.
    """
    n = cube.n
    psi = {}
    for f in cube.faces():
        psi[(f.xi, f.j, f.k)] = f.psi
    eps: dict[tuple[int, int], UnitMonomial] = {}
    for xi in sorted(range(1 << n), key=lambda v: (weight(v), v)):
        for m in range(n):
            if (xi >> m) & 1:
                continue
            if xi >> (m + 1) == 0:
                eps[(xi, m)] = ONE
                continue
            k = xi.bit_length() - 1
            base = xi ^ (1 << k)
            p = psi[(base, m, k)]
            val = -(p * eps[(base | (1 << m), k)] * eps[(base, m)] * eps[(base, k)].inverse())
            eps[(xi, m)] = val
    sa = SignAssignment(eps)
    if verify:
        bad = [f for f in cube.faces() if not face_condition(eps, f)]
        if bad:
            f = bad[0]
            raise InconsistentObstruction(
                f"{len(bad)} faces violate delta eps = -psi, first at xi={f.xi} j={f.j} k={f.k} ({f.label})"
            )
    return sa


def verify_sign_assignment(cube: ResolutionCube, eps) -> list[Face]:
    """Faces where the anticommutation condition fails."""
    return [f for f in cube.faces() if not face_condition(eps, f)]


# degree bookkeeping ---------------------------------------------------------

def path_degree(cube: ResolutionCube, xi: int) -> BiDegree:
    """Chronological degree of the composite along the path setting bits low to high."""
    deg = BiDegree(0, 0)
    cur = 0
    for k in range(cube.n):
        if (xi >> k) & 1:
            deg = deg + cube.edges[(cur, k)].degree
            cur |= 1 << k
    return deg


def degree_lemma_holds(cube: ResolutionCube) -> bool:
    """``a + n = b + m`` on every edge and every path from the initial vertex."""
    for e in cube.edges.values():
        n_in = cube.vertices[e.xi].state.circleCount
        n_out = cube.vertices[e.target].state.circleCount
        if not boundary_balance_holds(e.degree, n_in, n_out):
            return False
    for v in cube.vertices:
        deg = path_degree(cube, v.xi)
        if not boundary_balance_holds(deg, cube.ell0, v.state.circleCount):
            return False
        # the bracket shift undoes the degree of the path cobordism
        if v.shift != -deg:
            return False
    return True


def global_shift(D: PlanarDiagram, ell0: int) -> tuple[Fraction, Fraction]:
    plus, minus = D.crossingSigns()
    return (Fraction(plus - ell0, 2) - minus, Fraction(plus + ell0, 2) - minus)


def dump(cube: ResolutionCube, eps: SignAssignment | None = None) -> str:
    """One line per edge ``xi dir kind eps`` and per face ``xi j k psi``."""
    n = cube.n
    lines = []
    for (xi, k), e in sorted(cube.edges.items()):
        val = render_monomial(eps[(xi, k)]) if eps is not None else "-"
        lines.append(f"{''.join(map(str, bits(xi, n)))} {k} {e.kind} {val}")
    for f in cube.faces():
        lines.append(f"{''.join(map(str, bits(f.xi, n)))} {f.j} {f.k} {render_monomial(f.psi)}")
    return "\n".join(lines) + ("\n" if lines else "")
