"""The algebra A' on a shifted circle and its actions on based complexes.

A' is the circle algebra with degrees lowered by ``(1, 0)``, so
``deg'(v+) = (0, 0)`` and ``deg'(v-) = (-1, -1)``.  Its product is the merge
conjugated by the shift isomorphisms, which contributes
``lambda((1, 0), deg' a)`` and makes the product associative and of degree
zero.

On a complex the left action merges a fresh circle (placed first) into the
circle through the basepoint.  The right action merges it placed last.
Both carry a per-vertex scalar that makes them commute with the
differential; see ``build_action``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .complex import (
    Differential,
    GradedChainComplex,
    chain_map_defect,
    compose,
    reduce_entries,
    specialize_codes,
)
from .diagram import InvalidBasepoint, PlanarDiagram
from .scalars import (
    ALL_SPECIALIZATIONS,
    EVEN,
    ONE,
    X,
    Z_INV,
    BiDegree,
    RingElement,
    Specialization,
    UnitMonomial,
    lam,
)
from .tqft import (
    MINUS,
    PLUS,
    SparseMap,
    code_mul,
    edge_arrays,
    elementary_merge,
    elementary_split,
    word_degree,
)

SHIFT = BiDegree(1, 0)
APRIME_DEGREE = {PLUS: BiDegree(0, 0), MINUS: BiDegree(-1, -1)}
LETTERS = (PLUS, MINUS)


# the algebra ----------------------------------------------------------------

def _shifted_word_degree(word: int, length: int) -> BiDegree:
    deg = BiDegree(0, 0)
    for i in range(length):
        deg = deg + APRIME_DEGREE[(word >> i) & 1]
    return deg


def _tensor_shifted(f: SparseMap, g: SparseMap) -> SparseMap:
    """Graded tensor of maps between powers of A', using primed degrees."""
    out = SparseMap(f.n_in + g.n_in, f.n_out + g.n_out, f.degree + g.degree)
    for m, fcol in f.cols.items():
        tw = lam(g.degree, _shifted_word_degree(m, f.n_in))
        for nn, gcol in g.cols.items():
            src = m | (nn << f.n_in)
            for a, va in fcol.items():
                for b, vb in gcol.items():
                    out.add(src, a | (b << f.n_out), va * vb * tw)
    return out


def _identity(n: int) -> SparseMap:
    f = SparseMap(n, n, BiDegree(0, 0))
    for w in range(1 << n):
        f.add(w, w, ONE)
    return f


def _twist_shifted() -> SparseMap:
    f = SparseMap(2, 2, BiDegree(0, 0))
    for a, b in product(LETTERS, repeat=2):
        f.add(a | (b << 1), b | (a << 1), lam(APRIME_DEGREE[a], APRIME_DEGREE[b]))
    return f


@dataclass
class AlgebraAPrime:
    """A' over the full ring; ``table`` gives the product of basis letters."""

    mul: SparseMap
    unit: int = PLUS

    def product(self, a: int, b: int) -> dict[int, RingElement]:
        return dict(self.mul.cols.get(a | (b << 1), {}))

    def table(self, s: Specialization | None = None) -> dict[tuple[str, str], dict[str, object]]:
        names = {PLUS: "v+", MINUS: "v-"}
        out = {}
        for a, b in product(LETTERS, repeat=2):
            row = {}
            for c, coeff in sorted(self.product(a, b).items()):
                row[names[c]] = coeff.specialize(s) if s is not None else str(coeff)
            out[(names[a], names[b])] = row
        return out

    def associative(self, s: Specialization | None = None) -> bool:
        left = self.mul.compose(_tensor_shifted(self.mul, _identity(1)))
        right = self.mul.compose(_tensor_shifted(_identity(1), self.mul))
        return _maps_equal(left, right, s)

    def unital(self, s: Specialization | None = None) -> bool:
        for a in LETTERS:
            for prod in (self.product(self.unit, a), self.product(a, self.unit)):
                expect = {a: RingElement.of(ONE)}
                if not _vectors_equal(prod, expect, s):
                    return False
        return True

    def symmetric(self, s: Specialization | None = None) -> bool:
        return _maps_equal(self.mul.compose(_twist_shifted()), self.mul, s)


def _maps_equal(f: SparseMap, g: SparseMap, s: Specialization | None) -> bool:
    if s is None:
        return f == g
    return {k: v for k, v in f.specialize(s).items() if v} == {k: v for k, v in g.specialize(s).items() if v}


def _vectors_equal(u: dict, v: dict, s: Specialization | None) -> bool:
    keys = set(u) | set(v)
    for k in keys:
        a, b = u.get(k, RingElement()), v.get(k, RingElement())
        if s is None:
            if a != b:
                return False
        elif a.specialize(s) != b.specialize(s):
            return False
    return True


def raw_merge() -> SparseMap:
    return elementary_merge()


def algebra_product() -> AlgebraAPrime:
    """Merge conjugated by the shift isomorphisms: ``lambda((1,0), deg' a) m(a ⊗ b)``."""
    m = elementary_merge()
    out = SparseMap(2, 1, BiDegree(0, 0))
    for src, col in m.cols.items():
        tw = lam(SHIFT, APRIME_DEGREE[src & 1])
        for tgt, coeff in col.items():
            for code, c in coeff.terms.items():
                out.add(src, tgt, RingElement({(UnitMonomial._from_code(code) * tw).code: c}))
    return AlgebraAPrime(out)


def algebra_axioms(s: Specialization | None = None) -> dict[str, bool]:
    A = algebra_product()
    return {"associative": A.associative(s), "unital": A.unital(s), "symmetric": A.symmetric(s)}


# actions on complexes -------------------------------------------------------

@dataclass
class ModuleAction:
    """Endomorphisms ``a · -`` (or ``- · a``) of a complex, one per letter of A'."""

    complex: GradedChainComplex
    basepoint: object
    side: str
    maps: dict[int, dict[int, Differential]]
    meta: dict = field(default_factory=dict)

    def __getitem__(self, a: int) -> dict[int, Differential]:
        return self.maps[a]

    def apply(self, element: dict[int, int]) -> dict[int, Differential]:
        """Action of a combination ``sum c_a a`` (integer coefficients)."""
        if self.complex.full:
            raise ValueError("combinations need an integral complex")
        out: dict[int, list] = {}
        for a, c in element.items():
            if not c:
                continue
            for i, M in self.maps[a].items():
                out.setdefault(i, []).append(Differential(M.rows, M.cols, M.vals * c))
        return {i: _concat(ms) for i, ms in out.items()}

    def chain_map(self) -> bool:
        C = self.complex
        return all(not chain_map_defect(self.maps[a], C, C) for a in LETTERS)


def _concat(ms: list[Differential]) -> Differential:
    return Differential(np.concatenate([m.rows for m in ms]), np.concatenate([m.cols for m in ms]),
                        np.concatenate([m.vals for m in ms]))


def _basepoint(C: GradedChainComplex, bp):
    D: PlanarDiagram = C.meta["diagram"]
    if bp is None:
        if not D.basepoints:
            raise InvalidBasepoint("diagram has no basepoint")
        bp = D.basepoints[0]
    if bp not in D.componentMap:
        raise InvalidBasepoint(f"basepoint {bp} is not an arc or loop of the diagram")
    return bp


def build_action(C: GradedChainComplex, basepoint=None, side: str = "left") -> ModuleAction:
    """Left or right action of A' through the basepoint circle.

    Left: ``a · x = lambda(-g, deg' a) m(a ⊗ x)`` with the fresh circle
    placed first; ``g`` is the bracket shift of the vertex.
    Right: ``x · a = lambda((1, 0), deg x) m(x ⊗ a)`` with the fresh circle
    placed last and entering the merge as its tail; ``deg x`` is the word
    degree.  Each scalar is the one produced by tensoring a shift
    isomorphism with an identity, and with them both actions are unital
    chain maps.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    bp = _basepoint(C, basepoint)
    cube = C.meta["cube"]
    off = C.meta["offset"]
    nminus = C.meta["nminus"]
    spec = C.meta.get("specialization") if not C.full else None
    parts: dict[int, dict[int, list]] = {a: {} for a in LETTERS}
    for v in cube.vertices:
        i = v.weight - nminus
        st = v.state
        ell = st.circleCount
        c = st.arcCircle[bp]
        rest = [t for t in range(ell) if t != c]
        if side == "left":
            s, t, codes = edge_arrays(ell + 1, ell, "merge", [0, c + 1], [c], rest)
            letters = s & 1
            x = s >> 1
        else:
            s, t, codes = edge_arrays(ell + 1, ell, "merge", [ell, c], [c], rest)
            letters = (s >> ell) & 1
            x = s & ((1 << ell) - 1)
            # lambda((1,0), deg x) = X^{#plus} Z^{-#minus}
            minus = np.bitwise_count(x).astype(np.int64)
            codes = code_mul(codes, (-minus << 3) | (((ell - minus) & 1) << 1))
        for a in LETTERS:
            sel = letters == a
            if side == "left":
                cc = code_mul(codes[sel], np.int64(lam(-v.shift, APRIME_DEGREE[a]).code))
            else:
                cc = codes[sel]
            if spec is not None:
                cc = specialize_codes(cc, spec)
            parts[a].setdefault(i, []).append(
                Differential(t[sel] + off[v.xi], x[sel] + off[v.xi], cc)
            )
    maps = {a: {i: _concat(ms) for i, ms in per.items()} for a, per in parts.items()}
    return ModuleAction(C, bp, side, maps)


def maps_equal(F: dict[int, Differential], G: dict[int, Differential], full: bool) -> bool:
    for i in set(F) | set(G):
        a = reduce_entries(F.get(i, Differential.empty()), full)
        b = reduce_entries(G.get(i, Differential.empty()), full)
        if a != b:
            return False
    return True


def compose_maps(F: dict[int, Differential], G: dict[int, Differential], full: bool) -> dict[int, Differential]:
    """``G o F`` for degree-preserving maps given per homological degree."""
    return {i: compose(F[i], G[i], full) for i in F if i in G}


def identity_map(C: GradedChainComplex) -> dict[int, Differential]:
    out = {}
    for i in C.degrees():
        r = np.arange(C.rank(i), dtype=np.int64)
        out[i] = Differential(r, r, np.zeros(len(r), dtype=np.int64) if C.full else np.ones(len(r), dtype=np.int64))
    return out


def _scaled(F: dict[int, Differential], coeff: RingElement, full: bool,
            spec: Specialization | None) -> list[dict[int, Differential]]:
    """``coeff · F`` as a list of maps whose entries add up."""
    out = []
    for code, c in coeff.terms.items():
        for _ in range(abs(c)):
            m = UnitMonomial._from_code(code)
            if c < 0:
                m = -m
            if full:
                out.append({i: Differential(M.rows, M.cols, code_mul(M.vals, np.int64(m.code)))
                            for i, M in F.items()})
            else:
                out.append({i: Differential(M.rows, M.cols, M.vals * m.specialize(spec))
                            for i, M in F.items()})
    return out


def _sum_maps(ms: list[dict[int, Differential]]) -> dict[int, Differential]:
    out: dict[int, list] = {}
    for F in ms:
        for i, M in F.items():
            out.setdefault(i, []).append(M)
    return {i: _concat(v) for i, v in out.items()}


@dataclass
class ModuleReport:
    chain_map: bool
    associative: bool
    unital: bool
    commute: bool | None = None
    symmetric: bool | None = None

    @property
    def ok(self) -> bool:
        return all(v is not False for v in (self.chain_map, self.associative, self.unital,
                                             self.commute, self.symmetric))

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


def module_axioms(act: ModuleAction) -> ModuleReport:
    """Action associativity and unit for one action (left or right)."""
    C = act.complex
    full = C.full
    spec = C.meta.get("specialization")
    A = algebra_product()
    assoc = True
    for a, b in product(LETTERS, repeat=2):
        if act.side == "left":
            lhs = compose_maps(act[b], act[a], full)   # a · (b · x)
            prod = A.product(a, b)
        else:
            lhs = compose_maps(act[a], act[b], full)   # (x · a) · b
            prod = A.product(a, b)
        parts = []
        for c, coeff in prod.items():
            parts.extend(_scaled(act[c], coeff, full, spec))
        rhs = _sum_maps(parts) if parts else {}
        if not maps_equal(lhs, rhs, full):
            assoc = False
    unital = maps_equal(act[PLUS], identity_map(C), full)
    return ModuleReport(act.chain_map(), assoc, unital)


def bimodule_axioms(C: GradedChainComplex, basepoint=None) -> ModuleReport:
    """Left and right actions: module axioms, commutation and symmetry."""
    L = build_action(C, basepoint, "left")
    R = build_action(C, basepoint, "right")
    rl, rr = module_axioms(L), module_axioms(R)
    full = C.full
    commute = all(
        maps_equal(compose_maps(L[a], R[b], full), compose_maps(R[b], L[a], full), full)
        for a, b in product(LETTERS, repeat=2)
    )
    symmetric = symmetric_bimodule(L, R)
    return ModuleReport(rl.chain_map and rr.chain_map, rl.associative and rr.associative,
                        rl.unital and rr.unital, commute, symmetric)


def symmetric_bimodule(L: ModuleAction, R: ModuleAction) -> bool:
    """``a · x = lambda(deg' a, deg x) x · a`` where ``deg x`` is the bracket degree."""
    C = L.complex
    cube = C.meta["cube"]
    full = C.full
    spec = C.meta.get("specialization")
    for a in LETTERS:
        twisted = {}
        for i, M in R[a].items():
            gens = C.groups[i]
            sc = []
            for col in M.cols.tolist():
                xi, w = gens[col]
                v = cube.vertices[xi]
                deg = word_degree(w, v.state.circleCount) + v.shift
                sc.append(lam(APRIME_DEGREE[a], deg).code)
            sc = np.array(sc, dtype=np.int64)
            if full:
                vals = code_mul(M.vals, sc)
            else:
                vals = M.vals * specialize_codes(sc, spec)
            twisted[i] = Differential(M.rows, M.cols, vals)
        if not maps_equal(L[a], twisted, full):
            return False
    return True


def multi_basepoint_actions(C: GradedChainComplex, basepoints=None) -> list[ModuleAction]:
    """One left action per component; basepoints default to the diagram's."""
    D: PlanarDiagram = C.meta["diagram"]
    bps = tuple(basepoints) if basepoints is not None else D.basepoints
    comps = [D.componentMap.get(b) for b in bps]
    if None in comps:
        raise InvalidBasepoint("basepoint is not on the diagram")
    if sorted(comps) != list(range(D.componentCount)):
        raise InvalidBasepoint("need exactly one basepoint per component")
    return [build_action(C, b, "left") for b in bps]


def actions_commute(acts: list[ModuleAction], twisted: bool = True) -> bool:
    """Pairwise commutation of actions at different basepoints.

    With ``twisted`` the check is graded: ``a·(b·x) = lambda(deg' a, deg' b) b·(a·x)``,
    the symmetry of the monoidal structure.  For ``a = b = v-`` the scalar is
    ``XY``, so in ODD the two ``v-`` actions anticommute.
    """
    if not acts:
        return True
    C = acts[0].complex
    full = C.full
    spec = C.meta.get("specialization")
    for k, s in enumerate(acts):
        for t in acts[k + 1:]:
            for a, b in product(LETTERS, repeat=2):
                lhs = compose_maps(t[b], s[a], full)
                rhs = compose_maps(s[a], t[b], full)
                tw = lam(APRIME_DEGREE[a], APRIME_DEGREE[b]) if twisted else ONE
                if tw != ONE:
                    rhs = _sum_maps(_scaled(rhs, RingElement.of(tw), full, spec))
                if not maps_equal(lhs, rhs, full):
                    return False
    return True


def action_support(act: ModuleAction) -> set[int]:
    """Link components met by the circles whose letter ``v-`` changes."""
    C = act.complex
    D: PlanarDiagram = C.meta["diagram"]
    cube = C.meta["cube"]
    out: set[int] = set()
    for i, M in act[MINUS].items():
        gens = C.groups[i]
        for r, c in zip(M.rows.tolist(), M.cols.tolist()):
            xi, w_out = gens[r]
            _, w_in = gens[c]
            st = cube.vertices[xi].state
            changed = w_out ^ w_in
            for j, circ in enumerate(st.circles):
                if (changed >> j) & 1:
                    out.update(D.componentMap[a] for a in circ)
    return out


# basepoint slide ------------------------------------------------------------

def punctured_torus() -> SparseMap:
    """``T = m o Delta`` on one circle."""
    return elementary_merge().compose(elementary_split())


@dataclass
class SlideMap:
    """``phi = id - X Z^-1 T`` on A, as columns ``phi(v+), phi(v-)``."""

    full: dict[int, dict[int, RingElement]]
    spec: Specialization | None

    def matrix(self, s: Specialization | None = None) -> list[list[int]]:
        s = s or self.spec
        if s is None:
            raise ValueError("matrix needs a specialization")
        m = [[0, 0], [0, 0]]
        for src, col in self.full.items():
            for tgt, c in col.items():
                m[tgt][src] = c.specialize(s)
        return m

    def squared(self, s: Specialization) -> list[list[int]]:
        m = self.matrix(s)
        return [[sum(m[r][k] * m[k][c] for k in range(2)) for c in range(2)] for r in range(2)]

    def determinant(self, s: Specialization) -> int:
        m = self.matrix(s)
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]

    def is_identity(self, s: Specialization) -> bool:
        return self.matrix(s) == [[1, 0], [0, 1]]

    def report(self, s: Specialization) -> dict:
        m = self.matrix(s)
        stated = [[1, 0], [0, -1]]
        out = {
            "specialization": s.name,
            "phi": m,
            "phi_squared": self.squared(s),
            "determinant": self.determinant(s),
            "identity": self.is_identity(s),
        }
        if s == EVEN:
            out["stated_conjugation"] = stated
            out["matches_stated_conjugation"] = m == stated
            if m != stated:
                out["discrepancy"] = (
                    f"computed phi(v+) = {m[0][0]} v+ + {m[1][0]} v-, phi(v-) = {m[0][1]} v+ + {m[1][1]} v-; "
                    "the stated conjugation fixes v+ and negates v-"
                )
        return out


def slide_map(s: Specialization | None = None) -> SlideMap:
    T = punctured_torus()
    scale = X * Z_INV
    cols: dict[int, dict[int, RingElement]] = {a: {a: RingElement.of(ONE)} for a in LETTERS}
    for src, col in T.cols.items():
        for tgt, coeff in col.items():
            cur = cols[src].get(tgt, RingElement())
            cols[src][tgt] = cur - coeff * RingElement.of(scale)
    cols = {a: {t: c for t, c in col.items() if c} for a, col in cols.items()}
    return SlideMap(cols, s)


# checkerboard colouring ------------------------------------------------------

def region_colors(D: PlanarDiagram) -> dict[int, int]:
    """Colour (0 or 1) of the region to the left of each oriented arc.

    Regions are corners of crossings glued along arcs; adjacent corners of
    a crossing get opposite colours.  The region left of the smallest arc
    of the first component is colour 0.
    """
    parent: dict = {}

    def find(u):
        parent.setdefault(u, u)
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    def union(u, v):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv

    for a, ((k1, p1), (k2, p2)) in D.occurrences.items():
        # the corner counterclockwise of one end faces the corner clockwise of the other
        union((k1, p1), (k2, (p2 - 1) % 4))
        union((k1, (p1 - 1) % 4), (k2, p2))
    # corner (k, p) lies between slots p and p+1
    adj: dict = {}
    for k in range(D.n):
        for p in range(4):
            u, v = find((k, p)), find((k, (p + 1) % 4))
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
    color: dict = {}
    for start in sorted(adj):
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    raise ValueError("diagram regions are not two-colourable")
    out = {}
    for a in sorted(D.occurrences):
        k, p = D.heads[a]
        out[a] = color[find((k, (p - 1) % 4))]
    if out:
        first = min(out)
        if out[first]:
            out = {a: 1 - c for a, c in out.items()}
    return out


def compensated_action(C: GradedChainComplex, basepoint=None) -> ModuleAction:
    """Left action with the checkerboard slide compensation.

    From a black region the action is precomposed with the computed ``phi``
    (only for integral complexes; in ODD ``phi`` is the identity).
    """
    L = build_action(C, basepoint, "left")
    if C.full:
        return L
    s = C.meta["specialization"]
    D = C.meta["diagram"]
    bp = L.basepoint
    colors = region_colors(D)
    if colors.get(bp, 0) == 0:
        return L
    phi = slide_map().matrix(s)
    maps = {a: L.apply({b: phi[b][a] for b in LETTERS}) for a in LETTERS}
    return ModuleAction(C, bp, "left", maps, {"compensated": True})


# actions on homology --------------------------------------------------------

def _dense(M: Differential, nrows: int, ncols: int):
    from sympy.polys.domains import QQ
    from sympy.polys.matrices import DomainMatrix

    rows = [[0] * ncols for _ in range(nrows)]
    for r, c, v in zip(M.rows.tolist(), M.cols.tolist(), M.vals.tolist()):
        rows[r][c] += int(v)
    return DomainMatrix([[QQ(x) for x in row] for row in rows], (nrows, ncols), QQ)


def _to_domain(dm, p):
    if p is None:
        return dm
    from sympy.polys.domains import GF

    return dm.convert_to(GF(p))


def induced_maps_equal(C: GradedChainComplex, F: dict[int, Differential],
                       G: dict[int, Differential], field: int | None = None) -> bool:
    """Do two chain endomorphisms induce the same map on homology?

    Checks ``(F - G)(ker d) ⊆ im d`` degree by degree over Q (``None``) or F_p.
    """
    if C.full:
        raise ValueError("specialize the complex first")
    for i in C.degrees():
        n = C.rank(i)
        if not n:
            continue
        Fi = F.get(i, Differential.empty())
        Gi = G.get(i, Differential.empty())
        diff = Differential(np.concatenate([Fi.rows, Gi.rows]), np.concatenate([Fi.cols, Gi.cols]),
                            np.concatenate([Fi.vals, -Gi.vals]))
        if not any(reduce_entries(diff, False).values()):
            continue
        dmat = _to_domain(_dense(C.diff(i), C.rank(i + 1), n), field)
        fmat = _to_domain(_dense(diff, n, n), field)
        kernel = dmat.nullspace().transpose() if C.rank(i + 1) else _eye(n, fmat.domain)
        if kernel.shape[1] == 0:
            continue
        image = fmat * kernel
        if C.rank(i - 1):
            bmat = _to_domain(_dense(C.diff(i - 1), n, C.rank(i - 1)), field)
            base = bmat.rank()
            joined = bmat.hstack(image)
            if joined.rank() != base:
                return False
        elif image.rank():
            return False
    return True


def _eye(n, dom):
    from sympy.polys.matrices import DomainMatrix

    return DomainMatrix.eye(n, dom)


def _grading_sign(C: GradedChainComplex) -> dict[int, Differential]:
    """Diagonal ``(-1)^floor(p)``, a grading-preserving chain automorphism."""
    out = {}
    for i in C.degrees():
        r = np.arange(C.rank(i), dtype=np.int64)
        p2 = C.p2[i]
        sign = 1 - 2 * ((np.floor_divide(p2, 2)) & 1)
        out[i] = Differential(r, r, sign.astype(np.int64))
    return out


@dataclass
class SlideReport:
    specialization: str
    literal_equal: bool
    isomorphic: bool
    witness: str | None
    fields: tuple
    details: dict = field(default_factory=dict)


def slide_invariance_check(D: PlanarDiagram, bpA: int, bpB: int, s: Specialization,
                           fields=(None, 2)) -> SlideReport:
    """Compare the left actions at two basepoints on homology.

    ``literal_equal`` asks for equal induced maps.  Otherwise a bounded
    search tries ``Psi L^A_{psi(a)} Psi^-1 = L^B_a`` with ``psi`` in
    {id, phi, bar} and ``Psi`` in {id, (-1)^floor(p)}.
    """
    from .complex import assemble

    if bpA not in D.occurrences or bpB not in D.occurrences:
        raise InvalidBasepoint("slide basepoints must be arcs")
    C = assemble(D).specialize(s)
    LA = build_action(C, bpA, "left")
    LB = build_action(C, bpB, "left")

    def same(F, G):
        return all(induced_maps_equal(C, F, G, p) for p in fields)

    literal = all(same(LA[a], LB[a]) for a in LETTERS)
    if literal:
        return SlideReport(s.name, True, True, "identity", fields)
    phi = slide_map().matrix(s)
    psis = {"id": [[1, 0], [0, 1]], "phi": phi, "bar": [[1, 0], [0, -1]]}
    Psi = _grading_sign(C)
    for pname, m in psis.items():
        for sname in ("id", "grading sign"):
            ok = True
            for a in LETTERS:
                F = LA.apply({b: m[b][a] for b in LETTERS})
                if sname != "id":
                    F = compose_maps(compose_maps(Psi, F, False), Psi, False)
                if not same(F, LB[a]):
                    ok = False
                    break
            if ok:
                return SlideReport(s.name, False, True, f"psi={pname}, Psi={sname}", fields)
    return SlideReport(s.name, False, False, None, fields)


__all__ = [
    "APRIME_DEGREE",
    "ALL_SPECIALIZATIONS",
    "AlgebraAPrime",
    "ModuleAction",
    "ModuleReport",
    "SlideMap",
    "SlideReport",
    "actions_commute",
    "algebra_axioms",
    "algebra_product",
    "bimodule_axioms",
    "build_action",
    "compensated_action",
    "induced_maps_equal",
    "module_axioms",
    "multi_basepoint_actions",
    "punctured_torus",
    "region_colors",
    "slide_invariance_check",
    "slide_map",
]

