"""Disjoint unions and connected sums at the level of complexes.

The cube of ``D ⊔ D'`` is the product cube: bits ``0..n-1`` are the
crossings of ``D`` and bits ``n..n+n'-1`` those of ``D'``.  In every state
the circles of ``D`` come first, which matches the order of tensor factors
in ``Kh(D) ⊗ Kh(D')``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complex import (
    Differential,
    GradedChainComplex,
    assemble,
    chain_map_defect,
    check_d_squared,
    compose,
    reduce_entries,
    specialize_map,
)
from .cube import (
    InconsistentObstruction,
    ResolutionCube,
    SignAssignment,
    build_cube,
    solve_sign_assignment,
    verify_sign_assignment,
    weight,
)
from .diagram import InvalidBasepoint, PlanarDiagram, disjoint_union, relabel_oriented
from .scalars import X, Y, Z, BiDegree, Specialization, UnitMonomial, lam
from .tqft import code_mul, word_degree

# exponent conventions for the twist on D'-edges: (sign of Z exponent for a
# merge, sign of Z exponent for a split), relative to X^a Z^b and Y^b Z^-a
STAR_VARIANTS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def star_twist(kind: str, shift: BiDegree, variant=(1, 1)) -> UnitMonomial:
    """Twist for a D'-edge sitting over a D-vertex with bracket shift ``shift``.

    ``(a, b)`` is the degree of the path cobordism into the D-vertex, that
    is minus its bracket shift.
    """
    a, b = -shift.a, -shift.b
    zm, zs = variant
    if kind == "merge":
        return X ** a * Z ** (zm * b)
    return Y ** b * Z ** (-zs * a)


def star_sign(cube: ResolutionCube, eps: SignAssignment, cube2: ResolutionCube,
              eps2: SignAssignment, variant=(1, 1)) -> SignAssignment:
    """The sign assignment ``eps ⋆ eps'`` on the cube of ``D ⊔ D'``."""
    n, n2 = cube.n, cube2.n
    out: dict[tuple[int, int], UnitMonomial] = {}
    for xi2 in range(1 << n2):
        for xi in range(1 << n):
            full = xi | (xi2 << n)
            for k in range(n):
                if not (xi >> k) & 1:
                    out[(full, k)] = eps[(xi, k)]
            odd = weight(xi) % 2
            shift = cube.vertices[xi].shift
            for k in range(n2):
                if not (xi2 >> k) & 1:
                    e = cube2.edges[(xi2, k)]
                    t = star_twist(e.kind, shift, variant) * eps2[(xi2, k)]
                    out[(full, n + k)] = -t if odd else t
    return SignAssignment(out)


def union_cube(D: PlanarDiagram, E: PlanarDiagram):
    """Cube of ``D ⊔ E`` with ``eps ⋆ eps'``, checked against ``delta = -psi``."""
    cD, cE = build_cube(D), build_cube(E)
    eD, eE = solve_sign_assignment(cD), solve_sign_assignment(cE)
    U = disjoint_union(D, E)
    cU = build_cube(U)
    star = star_sign(cD, eD, cE, eE)
    bad = verify_sign_assignment(cU, star)
    if bad:
        f = bad[0]
        raise InconsistentObstruction(
            f"eps*eps' fails on {len(bad)} faces, first xi={f.xi} j={f.j} k={f.k} ({f.label})"
        )
    return U, cU, star, (cD, eD), (cE, eE)


# tensor products of complexes -----------------------------------------------

def tensor_complex(C: GradedChainComplex, C2: GradedChainComplex) -> GradedChainComplex:
    """``C ⊗ C'`` with differential ``d ⊗ id + (-1)^p id ⊗ d'``.

    Both factors have degree-(0,0) differentials, so the graded tensor rule
    contributes no lambda factor.  Generators are pairs ``(x, y)``, grouped
    by ``(p, q)`` with ``p`` increasing, ``x`` major.
    """
    if C.full != C2.full:
        raise ValueError("factors live over different rings")
    full = C.full
    groups: dict[int, list] = {}
    p2: dict[int, list] = {}
    q2: dict[int, list] = {}
    offsets: dict[tuple[int, int], int] = {}
    for p in C.degrees():
        for q in C2.degrees():
            i = p + q
            g = groups.setdefault(i, [])
            offsets[(p, q)] = len(g)
            g.extend((x, y) for x in C.groups[p] for y in C2.groups[q])
            p2.setdefault(i, []).append(np.add.outer(C.p2[p], C2.p2[q]).ravel())
            q2.setdefault(i, []).append(np.add.outer(C.q2[p], C2.q2[q]).ravel())
    rows: dict[int, list] = {}
    cols: dict[int, list] = {}
    vals: dict[int, list] = {}
    for p in C.degrees():
        for q in C2.degrees():
            i = p + q
            nq = C2.rank(q)
            df = C.diff(p)
            if len(df) and nq:
                b = np.arange(nq, dtype=np.int64)
                cols.setdefault(i, []).append((offsets[(p, q)] + df.cols[:, None] * nq + b).ravel())
                rows.setdefault(i, []).append((offsets[(p + 1, q)] + df.rows[:, None] * nq + b).ravel())
                vals.setdefault(i, []).append(np.repeat(df.vals, nq))
            df2 = C2.diff(q)
            npr = C.rank(p)
            if len(df2) and npr:
                nq1 = C2.rank(q + 1)
                a = np.arange(npr, dtype=np.int64)
                cols.setdefault(i, []).append((offsets[(p, q)] + a[:, None] * nq + df2.cols).ravel())
                rows.setdefault(i, []).append((offsets[(p, q + 1)] + a[:, None] * nq1 + df2.rows).ravel())
                v = np.tile(df2.vals, npr)
                if p % 2:
                    v = v ^ 1 if full else -v
                vals.setdefault(i, []).append(v)
    d = {i: Differential(np.concatenate(rows[i]), np.concatenate(cols[i]), np.concatenate(vals[i]))
         for i in rows}
    meta = {"factors": (C, C2), "offsets": offsets}
    return GradedChainComplex(
        groups,
        {i: np.concatenate(v) for i, v in p2.items()},
        {i: np.concatenate(v) for i, v in q2.items()},
        d,
        full,
        meta,
    )


def tensor_index(T: GradedChainComplex, p: int, q: int, ix: int, iy: int) -> int:
    C2 = T.meta["factors"][1]
    return T.meta["offsets"][(p, q)] + ix * C2.rank(q) + iy


# disjoint union -------------------------------------------------------------

@dataclass
class UnionResult:
    diagram: PlanarDiagram
    complex: GradedChainComplex
    tensor: GradedChainComplex
    comparison: dict[int, Differential]
    naive: dict[int, Differential]
    factors: tuple = field(default_factory=tuple)

    def comparison_ok(self, s: Specialization | None = None) -> bool:
        return not _map_defect(self.comparison, self.complex, self.tensor, s)

    def naive_ok(self, s: Specialization | None = None) -> bool:
        return not _map_defect(self.naive, self.complex, self.tensor, s)

    def bijective(self) -> bool:
        """The comparison map is a signed monomial permutation in each degree."""
        for i, F in self.comparison.items():
            r = self.complex.rank(i)
            if self.tensor.rank(i) != r or len(F) != r:
                return False
            if len(set(F.rows.tolist())) != r or len(set(F.cols.tolist())) != r:
                return False
        return True


def _map_defect(F, C, C2, s):
    if s is None:
        return chain_map_defect(F, C, C2)
    return chain_map_defect(specialize_map(F, s), C.specialize(s), C2.specialize(s))


def union_complex(D: PlanarDiagram, E: PlanarDiagram) -> UnionResult:
    """``Kh(D ⊔ E)`` built with ``eps ⋆ eps'`` and its comparison to ``Kh(D) ⊗ Kh(E)``.

    The comparison sends ``x ⊗ y`` to ``c · x ⊗ y`` with
    ``c = (-1)^{n_-(D) |xi'|} lambda(h, deg x + g)``; here ``g`` and ``h`` are the
    bracket shifts of the two vertices and ``deg x`` is the word degree of the
    first factor.  The sign accounts for ``(-1)^{|xi|}`` in ``eps ⋆ eps'``
    versus ``(-1)^p`` in the tensor differential.
    """
    U, cU, star, (cD, eD), (cE, eE) = union_cube(D, E)
    KU = assemble(U, cU, star)
    KD = assemble(D, cD, eD)
    KE = assemble(E, cE, eE)
    T = tensor_complex(KD, KE)
    n = D.n
    nmD = KD.meta["nminus"]
    nmU = KU.meta["nminus"]
    comp: dict[int, Differential] = {}
    naive: dict[int, Differential] = {}
    for i, gens in KU.groups.items():
        rows, cols, codes = [], [], []
        for col, (xi_u, word) in enumerate(gens):
            xi, xi2 = xi_u & ((1 << n) - 1), xi_u >> n
            ell = cD.vertices[xi].state.circleCount
            wx, wy = word & ((1 << ell) - 1), word >> ell
            p, q = weight(xi) - nmD, weight(xi2) - (nmU - nmD)
            row = tensor_index(T, p, q, KD.index(p)[(xi, wx)], KE.index(q)[(xi2, wy)])
            g = cD.vertices[xi].shift
            h = cE.vertices[xi2].shift
            c = lam(h, word_degree(wx, ell) + g)
            if (nmD * weight(xi2)) % 2:
                c = -c
            rows.append(row)
            cols.append(col)
            codes.append(c.code)
        r = np.array(rows, dtype=np.int64)
        cl = np.array(cols, dtype=np.int64)
        comp[i] = Differential(r, cl, np.array(codes, dtype=np.int64))
        naive[i] = Differential(r, cl, np.zeros(len(r), dtype=np.int64))
    return UnionResult(U, KU, T, comp, naive, (KD, KE))


# connected sum --------------------------------------------------------------

def _basepoint_arc(D: PlanarDiagram, bp) -> int | None:
    if bp is None:
        if not D.basepoints:
            raise InvalidBasepoint("diagram has no basepoint")
        bp = D.basepoints[0]
    if bp in D.occurrences:
        return bp
    if bp in D.loopKeys:
        return None
    raise InvalidBasepoint(f"basepoint {bp} is not an arc or loop of the diagram")


def connected_sum(D: PlanarDiagram, E: PlanarDiagram, bp=None, bp2=None) -> PlanarDiagram:
    """Cut both diagrams at the basepoint arcs and cross-join them.

    The arc of ``D`` leaving its tail crossing continues into ``E``; the arc
    of ``E`` leaving its tail crossing returns into ``D``.  Orientations
    agree, so crossing signs are unchanged.  The result carries a single
    basepoint on the joining arc that leaves ``D``.
    """
    a = _basepoint_arc(D, bp)
    b = _basepoint_arc(E, bp2)
    if a is None:
        # summing into a based free loop just absorbs that loop
        bpD = D.basepoints[0] if bp is None else bp
        rest = tuple(k for k in D.loopKeys if k != bpD)
        Dm = PlanarDiagram(D.crossings, D.freeLoops - 1, (), rest)
        U = disjoint_union(Dm, E.with_basepoints(b if b is not None else _loop_bp(E, bp2)))
        return U
    if b is None:
        bpE = E.basepoints[0] if bp2 is None else bp2
        rest = tuple(k for k in E.loopKeys if k != bpE)
        Em = PlanarDiagram(E.crossings, E.freeLoops - 1, (), rest)
        return disjoint_union(D.with_basepoints(a), Em)
    off = D.arcCount
    n = D.n
    raw = [list(c.slots) for c in D.crossings] + [[x + off for x in c.slots] for c in E.crossings]
    headD = D.heads[a]
    headE = E.heads[b]
    # D's tail of a keeps label a and now ends at E's head of b
    raw[n + headE[0]][headE[1]] = a
    # E's tail of b keeps label b+off and now ends at D's head of a
    raw[headD[0]][headD[1]] = b + off
    signs = list(D.signs) + list(E.signs)
    S = relabel_oriented([tuple(s) for s in raw], signs, D.freeLoops + E.freeLoops)
    # the arc leaving D's tail crossing carries the new basepoint
    tk, tp = [o for o in D.occurrences[a] if o != headD][0]
    return S.with_basepoints(S.crossings[tk].slots[tp])


def _loop_bp(E: PlanarDiagram, bp2):
    return E.basepoints[0] if bp2 is None else bp2


def connected_sum_complex(D: PlanarDiagram, E: PlanarDiagram, bp=None, bp2=None) -> GradedChainComplex:
    return assemble(connected_sum(D, E, bp, bp2))


# tensor product over A' ------------------------------------------------------

def _invert_codes(codes: np.ndarray) -> np.ndarray:
    return ((-(codes >> 3)) << 3) | (codes & 7)


def tensor_over_aprime(C: GradedChainComplex, C2: GradedChainComplex, bp=None,
                       bp2=None, unit_shift: bool = True) -> GradedChainComplex:
    """``C ⊗_{A'} C'`` using the right action on ``C`` and the left action on ``C'``.

    ``C'`` is free over A' on the generators whose basepoint letter is
    ``v+``, so the quotient has basis ``x ⊗ y°``.  A product generator whose
    basepoint letter is ``v-`` is rewritten with ``x ⊗ (v- · y°) = (x · v-) ⊗ y°``.
    The differential is the quotient map applied to the tensor differential.

    The unknot complex is ``A'`` shifted by ``(1/2, 1/2)``, and it is the unit
    for connected sum.  With ``unit_shift`` the gradings are lowered by that
    amount so the result is graded like ``Kh(D # D')``.
    """
    from .modstruct import MINUS, build_action

    if C.full != C2.full:
        raise ValueError("factors live over different rings")
    full = C.full
    R = build_action(C, bp, "right")
    L = build_action(C2, bp2, "left")
    T = tensor_complex(C, C2)
    cube2 = C2.meta["cube"]
    bpk = L.basepoint
    # letter of the basepoint circle for each generator of C2, and the
    # generator reached from y° by v- together with its coefficient
    letter2: dict[int, np.ndarray] = {}
    lift: dict[int, dict[int, tuple[int, int]]] = {}
    for q, gens in C2.groups.items():
        letter2[q] = np.array(
            [(w >> cube2.vertices[xi].state.arcCircle[bpk]) & 1 for xi, w in gens], dtype=np.int64
        )
        M = L[MINUS].get(q, Differential.empty())
        lift[q] = {int(r): (int(c), int(v)) for r, c, v in zip(M.rows, M.cols, M.vals)}
    rmaps = {p: {int(c): (int(r), int(v)) for r, c, v in zip(M.rows, M.cols, M.vals)}
             for p, M in R[MINUS].items()}
    groups: dict[int, list] = {}
    p2: dict[int, list] = {}
    q2: dict[int, list] = {}
    qidx: dict[int, dict[int, int]] = {}
    for i, tg in T.groups.items():
        keep = []
        for p in C.degrees():
            q = i - p
            if (p, q) not in T.meta["offsets"]:
                continue
            base = T.meta["offsets"][(p, q)]
            nq = C2.rank(q)
            plus = np.nonzero(letter2[q] == 0)[0]
            for ix in range(C.rank(p)):
                keep.extend((base + ix * nq + plus).tolist())
        qidx[i] = {t: n for n, t in enumerate(keep)}
        groups[i] = [tg[t] for t in keep]
        p2[i] = T.p2[i][keep] - (1 if unit_shift else 0)
        q2[i] = T.q2[i][keep] - (1 if unit_shift else 0)
    # quotient map T -> Q as sparse arrays per degree
    Qmap: dict[int, Differential] = {}
    for i in T.groups:
        rows, cols, vals = [], [], []
        for p in C.degrees():
            q = i - p
            if (p, q) not in T.meta["offsets"]:
                continue
            base = T.meta["offsets"][(p, q)]
            nq = C2.rank(q)
            for ix in range(C.rank(p)):
                for iy in range(nq):
                    t = base + ix * nq + iy
                    if letter2[q][iy] == 0:
                        rows.append(qidx[i][t])
                        cols.append(t)
                        vals.append(0 if full else 1)
                        continue
                    y0, kappa = lift[q][iy]
                    hit = rmaps.get(p, {}).get(ix)
                    if hit is None:
                        continue
                    x1, rho = hit
                    t1 = base + x1 * nq + y0
                    rows.append(qidx[i][t1])
                    cols.append(t)
                    if full:
                        vals.append(int(code_mul(np.int64(rho), _invert_codes(np.int64(kappa)))))
                    else:
                        vals.append(rho * kappa)  # kappa = +-1 is its own inverse
        Qmap[i] = Differential(np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64),
                               np.array(vals, dtype=np.int64))
    d: dict[int, Differential] = {}
    for i in T.groups:
        if i + 1 not in T.groups or not len(T.diff(i)):
            continue
        keep = np.array(sorted(qidx[i], key=qidx[i].get), dtype=np.int64)
        J = Differential(keep, np.arange(len(keep), dtype=np.int64),
                         np.zeros(len(keep), dtype=np.int64) if full else np.ones(len(keep), dtype=np.int64))
        M = compose(compose(J, T.diff(i), full), Qmap[i + 1], full)
        red = reduce_entries(M, full)
        if full:
            rr, cc, vv = [], [], []
            for (r, c, code), coeff in red.items():
                for _ in range(abs(coeff)):
                    rr.append(r)
                    cc.append(c)
                    vv.append(code | (1 if coeff < 0 else 0))
        else:
            items = [(r, c, v) for (r, c), v in red.items()]
            rr = [x[0] for x in items]
            cc = [x[1] for x in items]
            vv = [x[2] for x in items]
        d[i] = Differential(np.array(rr, dtype=np.int64), np.array(cc, dtype=np.int64),
                            np.array(vv, dtype=np.int64))
    meta = {"tensor": T, "quotient": Qmap}
    if not full:
        meta["specialization"] = C.meta.get("specialization")
    return GradedChainComplex(groups, p2, q2, d, full, meta)


def union_verify(D: PlanarDiagram, E: PlanarDiagram) -> bool:
    _, cU, star, _, _ = union_cube(D, E)
    return not verify_sign_assignment(cU, star) and bool(check_d_squared(assemble(disjoint_union(D, E), cU, star)))


__all__ = [
    "STAR_VARIANTS",
    "UnionResult",
    "connected_sum",
    "connected_sum_complex",
    "star_sign",
    "star_twist",
    "tensor_complex",
    "tensor_index",
    "tensor_over_aprime",
    "union_complex",
    "union_cube",
]
