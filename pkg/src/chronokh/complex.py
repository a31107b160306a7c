"""The generalized Khovanov complex, its specializations and homology.

Chain groups are indexed by homological degree ``i``.  Every generator
carries twice its bidegree ``(2p, 2q)`` so that half-integral gradings stay
exact integers.  Differentials are stored as coordinate arrays
``(rows, cols, vals)`` mapping degree ``i`` to ``i+1``.  Over the full ring
``vals`` are packed unit-monomial codes (duplicate positions add up); after
specialization they are plain integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cube import ResolutionCube, SignAssignment, build_cube, global_shift, solve_sign_assignment
from .diagram import PlanarDiagram
from .scalars import Specialization, UnitMonomial
from .snf import invariant_factors, rank_mod_p
from .tqft import code_mul, edge_arrays, edge_layout

EMPTY = np.zeros(0, dtype=np.int64)


@dataclass
class Differential:
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray

    @classmethod
    def empty(cls) -> "Differential":
        return cls(EMPTY, EMPTY, EMPTY)

    def __len__(self) -> int:
        return len(self.rows)


@dataclass
class GradedChainComplex:
    """A cochain complex of free modules with (i, p, q) graded bases."""

    groups: dict[int, list]            # i -> generator labels
    p2: dict[int, np.ndarray]          # i -> twice p per generator
    q2: dict[int, np.ndarray]
    d: dict[int, Differential]         # i -> map from C^i to C^{i+1}
    full: bool = True
    meta: dict = field(default_factory=dict)

    def degrees(self) -> list[int]:
        return sorted(self.groups)

    def rank(self, i: int) -> int:
        return len(self.groups.get(i, ()))

    def diff(self, i: int) -> Differential:
        return self.d.get(i, Differential.empty())

    def index(self, i: int) -> dict:
        cache = self.meta.setdefault("_index", {})
        if i not in cache:
            cache[i] = {g: n for n, g in enumerate(self.groups.get(i, ()))}
        return cache[i]

    def specialize(self, s: Specialization) -> "GradedChainComplex":
        if not self.full:
            raise ValueError("complex is already integral")
        d = {i: Differential(df.rows, df.cols, specialize_codes(df.vals, s))
             for i, df in self.d.items()}
        meta = {k: v for k, v in self.meta.items() if not k.startswith("_")}
        meta["specialization"] = s
        return GradedChainComplex(self.groups, self.p2, self.q2, d, False, meta)

    def ranks(self) -> dict[int, int]:
        return {i: self.rank(i) for i in self.degrees()}


def specialize_codes(codes: np.ndarray, s: Specialization) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    sign = 1 - 2 * (codes & 1)
    if s.x == -1:
        sign = sign * (1 - 2 * ((codes >> 1) & 1))
    if s.y == -1:
        sign = sign * (1 - 2 * ((codes >> 2) & 1))
    if s.z == -1:
        sign = sign * (1 - 2 * ((codes >> 3) & 1))
    return sign.astype(np.int64)


# assembly -------------------------------------------------------------------

def assemble(D: PlanarDiagram, cube: ResolutionCube | None = None,
             eps: SignAssignment | None = None) -> GradedChainComplex:
    """The Khovanov complex ``Kh(D)`` over the full ground ring."""
    cube = cube or build_cube(D)
    eps = eps or solve_sign_assignment(cube)
    nplus, nminus = D.crossingSigns()
    ell0 = cube.ell0
    ga, gb = global_shift(D, ell0)
    groups: dict[int, list] = {}
    p2: dict[int, list] = {}
    q2: dict[int, list] = {}
    offset: dict[int, int] = {}
    for v in sorted(cube.vertices, key=lambda v: (v.weight, v.xi)):
        i = v.weight - nminus
        g = groups.setdefault(i, [])
        offset[v.xi] = len(g)
        ell = v.state.circleCount
        words = np.arange(1 << ell, dtype=np.int64)
        minus = np.bitwise_count(words).astype(np.int64)
        g.extend((v.xi, int(w)) for w in words)
        p2.setdefault(i, []).append(2 * (ell - minus + v.shift.a) + int(2 * ga))
        q2.setdefault(i, []).append(2 * (-minus + v.shift.b) + int(2 * gb))
    rows: dict[int, list] = {}
    cols: dict[int, list] = {}
    vals: dict[int, list] = {}
    for (xi, k), e in sorted(cube.edges.items()):
        i = cube.vertices[xi].weight - nminus
        n_in, n_out, ins, outs, rest_after = edge_layout(e, cube)
        s, t, c = edge_arrays(n_in, n_out, e.kind, ins, outs, rest_after)
        c = code_mul(c, np.int64(eps[(xi, k)].code))
        cols.setdefault(i, []).append(s + offset[xi])
        rows.setdefault(i, []).append(t + offset[e.target])
        vals.setdefault(i, []).append(c)
    d = {
        i: Differential(np.concatenate(rows[i]), np.concatenate(cols[i]), np.concatenate(vals[i]))
        for i in rows
    }
    meta = {
        "diagram": D,
        "cube": cube,
        "eps": eps,
        "nplus": nplus,
        "nminus": nminus,
        "ell0": ell0,
        "offset": offset,
    }
    return GradedChainComplex(
        groups,
        {i: np.concatenate(v) for i, v in p2.items()},
        {i: np.concatenate(v) for i, v in q2.items()},
        d,
        True,
        meta,
    )


def khovanov_complex(D: PlanarDiagram, s: Specialization | None = None) -> GradedChainComplex:
    C = assemble(D)
    return C if s is None else C.specialize(s)


# d squared ------------------------------------------------------------------

def compose(A: Differential, B: Differential, full: bool) -> Differential:
    """``B o A`` as unreduced coordinate arrays."""
    if not len(A) or not len(B):
        return Differential.empty()
    order = np.argsort(B.cols, kind="stable")
    bc, br, bv = B.cols[order], B.rows[order], B.vals[order]
    lo = np.searchsorted(bc, A.rows, "left")
    hi = np.searchsorted(bc, A.rows, "right")
    cnt = hi - lo
    tot = int(cnt.sum())
    if not tot:
        return Differential.empty()
    ai = np.repeat(np.arange(len(A)), cnt)
    start = np.repeat(lo, cnt)
    within = np.arange(tot) - np.repeat(np.cumsum(cnt) - cnt, cnt)
    bi = start + within
    if full:
        v = code_mul(A.vals[ai], bv[bi])
    else:
        v = A.vals[ai] * bv[bi]
    return Differential(br[bi], A.cols[ai], v)


def reduce_entries(M: Differential, full: bool) -> dict:
    """Sum duplicate positions.  Full ring: ``{(row, col, monic code): coeff}``."""
    if not len(M):
        return {}
    if full:
        monic = M.vals & ~np.int64(1)
        coeff = 1 - 2 * (M.vals & 1)
        keys = np.stack([M.rows, M.cols, monic])
    else:
        coeff = M.vals
        keys = np.stack([M.rows, M.cols])
    uniq, inv = np.unique(keys, axis=1, return_inverse=True)
    sums = np.zeros(uniq.shape[1], dtype=object if not full else np.int64)
    np.add.at(sums, inv.ravel(), coeff)
    nz = np.nonzero(sums)[0]
    return {tuple(int(x) for x in uniq[:, j]): int(sums[j]) for j in nz}


@dataclass
class DSquaredReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def check_d_squared(C: GradedChainComplex, limit: int = 20) -> DSquaredReport:
    rep = DSquaredReport()
    for i in C.degrees():
        if i + 1 not in C.d:
            continue
        red = reduce_entries(compose(C.diff(i), C.diff(i + 1), C.full), C.full)
        for key, val in sorted(red.items())[:limit]:
            rep.violations.append((i, key, val))
    return rep


def homogeneous(C: GradedChainComplex) -> bool:
    """Every nonzero entry of every differential preserves (p, q)."""
    for i, df in C.d.items():
        if not len(df):
            continue
        if not (np.array_equal(C.p2[i][df.cols], C.p2[i + 1][df.rows])
                and np.array_equal(C.q2[i][df.cols], C.q2[i + 1][df.rows])):
            return False
    return True


# homology -------------------------------------------------------------------

@dataclass
class HomologyTable:
    """Free rank and torsion per (i, p, q); p and q may be half-integers."""

    entries: dict[tuple[int, Fraction, Fraction], tuple[int, tuple[int, ...]]]
    field: int | None = 0  # 0 = integers, None = rationals, p = F_p

    def nonzero(self):
        for key in sorted(self.entries):
            r, t = self.entries[key]
            if r or t:
                yield key, r, t

    def collapsed(self) -> dict[tuple[int, int], tuple[int, tuple[int, ...]]]:
        out: dict = {}
        for (i, p, q), r, t in self.nonzero():
            j = int(p + q)
            r0, t0 = out.get((i, j), (0, ()))
            out[(i, j)] = (r0 + r, tuple(sorted(t0 + t)))
        return out

    def betti(self) -> dict[tuple[int, Fraction, Fraction], int]:
        return {k: r for k, r, _ in self.nonzero() if r}

    def __eq__(self, other) -> bool:
        return isinstance(other, HomologyTable) and list(self.nonzero()) == list(other.nonzero())

    def rows(self) -> list[dict]:
        return [
            {"i": i, "p": _num(p), "q": _num(q), "rank": r, "torsion": list(t)}
            for (i, p, q), r, t in self.nonzero()
        ]

    def __str__(self) -> str:
        lines = []
        for (i, p, q), r, t in self.nonzero():
            tors = " + ".join(f"Z/{x}" for x in t)
            free = f"Z^{r}" if r else ""
            lines.append(f"i={i:3d} p={str(p):>5} q={str(q):>5}  {' + '.join(s for s in (free, tors) if s)}")
        return "\n".join(lines)


def _num(x: Fraction):
    return int(x) if x.denominator == 1 else float(x)


def _blocks(C: GradedChainComplex, i: int) -> dict:
    out: dict = {}
    if i not in C.groups:
        return out
    for idx, (a, b) in enumerate(zip(C.p2[i].tolist(), C.q2[i].tolist())):
        out.setdefault((a, b), []).append(idx)
    return out


def _block_matrix(C: GradedChainComplex, i: int, blocks_src: dict, blocks_tgt: dict):
    """Split ``d^i`` into per-(p,q) coordinate lists with local indices."""
    df = C.diff(i)
    per: dict = {}
    if not len(df):
        return per
    loc_src = {}
    for key, idxs in blocks_src.items():
        for n, g in enumerate(idxs):
            loc_src[g] = (key, n)
    loc_tgt = {}
    for key, idxs in blocks_tgt.items():
        for n, g in enumerate(idxs):
            loc_tgt[g] = n
    for r, c, v in zip(df.rows.tolist(), df.cols.tolist(), df.vals.tolist()):
        key, cn = loc_src[c]
        per.setdefault(key, []).append((loc_tgt[r], cn, int(v)))
    return per


def homology(C: GradedChainComplex, field: int | None = 0) -> HomologyTable:
    """Homology of an integral complex.

    ``field=0`` computes over Z (rank and torsion); ``None`` over Q; a prime
    ``p`` over F_p (ranks only).
    """
    if C.full:
        raise ValueError("specialize the complex before taking homology")
    degs = C.degrees()
    blocks = {i: _blocks(C, i) for i in degs}
    mats = {}
    for i in degs:
        mats[i] = _block_matrix(C, i, blocks[i], blocks.get(i + 1, {}))
    inv_cache: dict = {}

    def invs(i, key):
        if (i, key) not in inv_cache:
            ents = mats.get(i, {}).get(key, [])
            inv_cache[(i, key)] = invariant_factors(ents)
        return inv_cache[(i, key)]

    entries = {}
    for i in degs:
        for key, idxs in blocks[i].items():
            dim = len(idxs)
            out_inv = invs(i, key)
            in_inv = invs(i - 1, key) if i - 1 in blocks else []
            p = None if field == 0 else field
            rk = dim - rank_mod_p(out_inv, p) - rank_mod_p(in_inv, p)
            tors = tuple(x for x in in_inv if x > 1) if field == 0 else ()
            if rk or tors:
                entries[(i, Fraction(key[0], 2), Fraction(key[1], 2))] = (rk, tors)
    return HomologyTable(entries, field)


# Euler characteristic -------------------------------------------------------

@dataclass
class LaurentPoly2:
    """Integer polynomial in u^p v^q with (possibly half-integral) exponents."""

    coeffs: dict[tuple[Fraction, Fraction], int]

    def collapsed(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (p, q), c in self.coeffs.items():
            j = p + q
            if j.denominator != 1:
                raise ValueError("collapsed exponent is not integral")
            out[int(j)] = out.get(int(j), 0) + c
        return {j: c for j, c in sorted(out.items()) if c}

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly2) and self.coeffs == other.coeffs


def euler_characteristic(C: GradedChainComplex) -> LaurentPoly2:
    out: dict = {}
    for i in C.degrees():
        sgn = -1 if i % 2 else 1
        for a, b in zip(C.p2[i].tolist(), C.q2[i].tolist()):
            key = (Fraction(a, 2), Fraction(b, 2))
            out[key] = out.get(key, 0) + sgn
    return LaurentPoly2({k: v for k, v in sorted(out.items()) if v})


def euler_from_homology(H: HomologyTable) -> LaurentPoly2:
    out: dict = {}
    for (i, p, q), r, _ in H.nonzero():
        out[(p, q)] = out.get((p, q), 0) + (-1 if i % 2 else 1) * r
    return LaurentPoly2({k: v for k, v in sorted(out.items()) if v})


def diagonal_support(H: HomologyTable) -> bool:
    return all(p == q for (_, p, q), _, _ in H.nonzero())


def corrupt(C: GradedChainComplex, i: int, entry: int, by: UnitMonomial) -> GradedChainComplex:
    """Copy of ``C`` with one differential entry multiplied by ``by`` (fault injection)."""
    d = dict(C.d)
    df = d[i]
    vals = df.vals.copy()
    vals[entry] = code_mul(vals[entry], np.int64(by.code))
    d[i] = Differential(df.rows, df.cols, vals)
    return GradedChainComplex(C.groups, C.p2, C.q2, d, C.full, dict(C.meta))


# chain maps -----------------------------------------------------------------

def specialize_map(F: dict[int, Differential], s: Specialization) -> dict[int, Differential]:
    return {i: Differential(M.rows, M.cols, specialize_codes(M.vals, s)) for i, M in F.items()}


def chain_map_defect(F: dict[int, Differential], C: GradedChainComplex,
                     C2: GradedChainComplex, limit: int = 20) -> list:
    """Entries where ``F o d`` and ``d' o F`` disagree (empty for a chain map).

    ``F[i]`` maps ``C^i`` to ``C2^i``; both complexes must be over the same
    ring (both full or both integral).
    """
    full = C.full
    if C2.full != full:
        raise ValueError("complexes live over different rings")
    bad = []
    for i in sorted(set(C.groups) | set(C2.groups)):
        lhs = compose(C.diff(i), F.get(i + 1, Differential.empty()), full)
        rhs = compose(F.get(i, Differential.empty()), C2.diff(i), full)
        a = reduce_entries(lhs, full)
        b = reduce_entries(rhs, full)
        if a != b:
            keys = sorted(set(a) | set(b))
            for key in keys:
                if a.get(key, 0) != b.get(key, 0):
                    bad.append((i, key, a.get(key, 0), b.get(key, 0)))
                    if len(bad) >= limit:
                        return bad
    return bad
