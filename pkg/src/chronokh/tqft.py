"""The chronological TQFT as explicit sparse matrices over the ground ring.

A basis vector of ``A^{\\otimes l}`` is a word of letters, one per tensor
factor.  Words are stored as integers: bit ``i`` set means factor ``i``
carries ``v-``.  ``deg(v+) = (1, 0)`` and ``deg(v-) = (0, -1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .scalars import (
    BIRTH_DEGREE,
    DEATH_DEGREE,
    MERGE_DEGREE,
    ONE,
    SPLIT_DEGREE,
    X,
    Y,
    Z,
    BiDegree,
    RingElement,
    Specialization,
    UnitMonomial,
    lam,
)

PLUS, MINUS = 0, 1
LETTER_DEGREE = {PLUS: BiDegree(1, 0), MINUS: BiDegree(0, -1)}
XZ = X * Z
YZ = Y * Z


def letter(word: int, i: int) -> int:
    return (word >> i) & 1


def word_degree(word: int, length: int) -> BiDegree:
    m = bin(word & ((1 << length) - 1)).count("1")
    return BiDegree(length - m, -m)


def word_from_text(text: str) -> int:
    """``"+-+"`` -> word with factor 1 minus."""
    w = 0
    for i, ch in enumerate(text):
        if ch == "-":
            w |= 1 << i
        elif ch != "+":
            raise ValueError(f"bad letter {ch!r}")
    return w


def word_text(word: int, length: int) -> str:
    return "".join("-" if letter(word, i) else "+" for i in range(length))


@dataclass
class SparseMap:
    """Linear map ``A^{l_in} -> A^{l_out}`` of declared bidegree.

    ``cols[src][tgt]`` is the coefficient of ``tgt`` in the image of ``src``.
    """

    n_in: int
    n_out: int
    degree: BiDegree
    cols: dict[int, dict[int, RingElement]] = field(default_factory=dict)

    def add(self, src: int, tgt: int, coeff) -> None:
        if isinstance(coeff, UnitMonomial):
            coeff = RingElement.of(coeff)
        col = self.cols.setdefault(src, {})
        v = col.get(tgt, RingElement()) + coeff
        if v:
            col[tgt] = v
        else:
            col.pop(tgt, None)
            if not col:
                self.cols.pop(src)

    def image(self, src: int) -> dict[int, RingElement]:
        return self.cols.get(src, {})

    def __call__(self, vec: dict[int, RingElement]) -> dict[int, RingElement]:
        out: dict[int, RingElement] = {}
        for s, c in vec.items():
            for t, v in self.image(s).items():
                out[t] = out.get(t, RingElement()) + c * v
        return {t: v for t, v in out.items() if v}

    def compose(self, other: "SparseMap") -> "SparseMap":
        """``self o other``."""
        if other.n_out != self.n_in:
            raise ValueError("incompatible shapes")
        out = SparseMap(other.n_in, self.n_out, other.degree + self.degree)
        for s, col in other.cols.items():
            for t, v in self(col).items():
                out.add(s, t, v)
        return out

    def scale(self, m) -> "SparseMap":
        out = SparseMap(self.n_in, self.n_out, self.degree)
        for s, col in self.cols.items():
            for t, v in col.items():
                out.add(s, t, v * m)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMap)
            and (self.n_in, self.n_out) == (other.n_in, other.n_out)
            and self.cols == other.cols
        )

    def is_zero(self) -> bool:
        return not self.cols

    def is_homogeneous(self) -> bool:
        for s, col in self.cols.items():
            ds = word_degree(s, self.n_in)
            for t in col:
                if word_degree(t, self.n_out) - ds != self.degree:
                    return False
        return True

    def specialize(self, s: Specialization) -> dict[tuple[int, int], int]:
        out = {}
        for src, col in self.cols.items():
            for t, v in col.items():
                val = v.specialize(s)
                if val:
                    out[(src, t)] = val
        return out

    def __repr__(self) -> str:
        rows = []
        for s in sorted(self.cols):
            terms = " + ".join(
                f"({v}){word_text(t, self.n_out)}" for t, v in sorted(self.cols[s].items())
            )
            rows.append(f"{word_text(s, self.n_in)} -> {terms}")
        return f"SparseMap[{self.n_in}->{self.n_out}, deg {tuple(self.degree)}](" + "; ".join(rows) + ")"


def identity(n: int) -> SparseMap:
    f = SparseMap(n, n, BiDegree(0, 0))
    for w in range(1 << n):
        f.add(w, w, ONE)
    return f


def elementary_merge() -> SparseMap:
    f = SparseMap(2, 1, MERGE_DEGREE)
    f.add(word_from_text("++"), word_from_text("+"), ONE)
    f.add(word_from_text("+-"), word_from_text("-"), ONE)
    f.add(word_from_text("-+"), word_from_text("-"), XZ)
    return f


def elementary_split() -> SparseMap:
    f = SparseMap(1, 2, SPLIT_DEGREE)
    f.add(word_from_text("+"), word_from_text("-+"), ONE)
    f.add(word_from_text("+"), word_from_text("+-"), YZ)
    f.add(word_from_text("-"), word_from_text("--"), ONE)
    return f


def elementary_birth() -> SparseMap:
    f = SparseMap(0, 1, BIRTH_DEGREE)
    f.add(0, word_from_text("+"), ONE)
    return f


def elementary_death() -> SparseMap:
    f = SparseMap(1, 0, DEATH_DEGREE)
    f.add(word_from_text("-"), 0, ONE)
    return f


def tensor(f: SparseMap, g: SparseMap) -> SparseMap:
    """``(f (x) g)(m (x) n) = lambda(deg g, deg m) f(m) (x) g(n)``."""
    out = SparseMap(f.n_in + g.n_in, f.n_out + g.n_out, f.degree + g.degree)
    for m, fcol in f.cols.items():
        tw = lam(g.degree, word_degree(m, f.n_in))
        for nn, gcol in g.cols.items():
            src = m | (nn << f.n_in)
            for a, va in fcol.items():
                for b, vb in gcol.items():
                    out.add(src, a | (b << f.n_out), va * vb * tw)
    return out


def twist(i: int, n: int) -> SparseMap:
    """Swap factors ``i`` and ``i+1``: ``m (x) n -> lambda(deg m, deg n) n (x) m``."""
    if not 0 <= i < n - 1:
        raise ValueError("invalid twist position")
    f = SparseMap(n, n, BiDegree(0, 0))
    for w in range(1 << n):
        a, b = letter(w, i), letter(w, i + 1)
        t = w & ~((1 << i) | (1 << (i + 1))) | (b << i) | (a << (i + 1))
        f.add(w, t, lam(LETTER_DEGREE[a], LETTER_DEGREE[b]))
    return f


def permute_word(word: int, order) -> int:
    """Word whose factor ``r`` is factor ``order[r]`` of ``word``."""
    out = 0
    for r, i in enumerate(order):
        out |= letter(word, i) << r
    return out


def permutation_scalar(word: int, order) -> UnitMonomial:
    """Scalar of reordering factors by ``order`` using twists.

    Each pair that ends up inverted is swapped exactly once, with the
    earlier factor on the left, so the scalar is a product of ``lambda``
    over inverted pairs.
    """
    pos = {i: r for r, i in enumerate(order)}
    out = ONE
    n = len(order)
    for i in range(n):
        for j in range(i + 1, n):
            if pos[i] > pos[j]:
                out = out * lam(LETTER_DEGREE[letter(word, i)], LETTER_DEGREE[letter(word, j)])
    return out


def permutation_map(order) -> SparseMap:
    """Reordering map computed from the direct inverted-pair formula."""
    n = len(order)
    f = SparseMap(n, n, BiDegree(0, 0))
    for w in range(1 << n):
        f.add(w, permute_word(w, order), permutation_scalar(w, order))
    return f


def permutation_map_by_twists(order) -> SparseMap:
    """The same reordering built as a composite of adjacent twists (bubble sort)."""
    n = len(order)
    cur = list(range(n))
    f = identity(n)
    target = list(order)
    for r in range(n):
        idx = cur.index(target[r])
        while idx > r:
            f = twist(idx - 1, n).compose(f)
            cur[idx - 1], cur[idx] = cur[idx], cur[idx - 1]
            idx -= 1
    return f


def extend_to_positions(f: SparseMap, inputs, n_before: int, outputs, n_after: int,
                        rest_after=None) -> SparseMap:
    """``id (x) .. (x) f (x) .. (x) id`` on arbitrary factor positions.

    ``inputs`` are the source factors fed to ``f`` in order, ``outputs`` the
    target positions of ``f``'s outputs.  The remaining source factors keep
    their relative order and land at ``rest_after`` (default: the free target
    positions in increasing order).  Realized as permutation, then
    ``f (x) id``, then permutation.
    """
    inputs, outputs = list(inputs), list(outputs)
    rest = [i for i in range(n_before) if i not in inputs]
    if rest_after is None:
        rest_after = [i for i in range(n_after) if i not in outputs]
    if len(rest_after) != len(rest) or len(rest) + len(outputs) != n_after:
        raise ValueError("inconsistent factor counts")
    pre = permutation_map(inputs + rest)
    mid = tensor(f, identity(len(rest)))
    # after f the factors are outputs..., rest...; send them home
    placed = outputs + list(rest_after)
    order = [placed.index(t) for t in range(n_after)]
    post = permutation_map(order)
    return post.compose(mid.compose(pre))


# vectorized edge maps used by complex assembly ----------------------------

def _popcount(a):
    return np.bitwise_count(a).astype(np.int64)


def _lam_counts(words, left_masks, right_masks, n):
    """Scalar code of prod lambda over given pairs, vectorized over words.

    ``left_masks[i]`` is the bitmask of factors j paired with factor i where
    i is the left factor of the twist.
    """
    xs = np.zeros(len(words), dtype=np.int64)
    ys = np.zeros(len(words), dtype=np.int64)
    zs = np.zeros(len(words), dtype=np.int64)
    full = (1 << n) - 1
    for i, mask in enumerate(left_masks):
        if not mask:
            continue
        mi = (words >> i) & 1
        minus_j = _popcount(words & mask)
        plus_j = _popcount(~words & full & mask)
        # i plus: X per plus j, Z^-1 per minus j ; i minus: Y per minus j, Z per plus j
        xs += np.where(mi == 0, plus_j, 0)
        ys += np.where(mi == 1, minus_j, 0)
        zs += np.where(mi == 0, -minus_j, plus_j)
    return ((zs << 3) | ((ys & 1) << 2) | ((xs & 1) << 1)).astype(np.int64)


def _inversion_masks(order):
    """For a reordering, masks of inverted pairs keyed by the earlier factor."""
    pos = {i: r for r, i in enumerate(order)}
    n = len(order)
    masks = []
    for i in range(n):
        m = 0
        for j in range(i + 1, n):
            if pos[i] > pos[j]:
                m |= 1 << j
        masks.append(m)
    return masks


def _permute_words(words, order):
    out = np.zeros_like(words)
    for r, i in enumerate(order):
        out |= ((words >> i) & 1) << r
    return out


def code_mul(a, b):
    return (((a >> 3) + (b >> 3)) << 3) | ((a ^ b) & 7)


def edge_arrays(n_in: int, n_out: int, kind: str, inputs, outputs, rest_after):
    """All nonzero entries of an edge map as arrays ``(src, tgt, code)``.

    ``inputs``/``outputs`` are circle indices of the saddle in the source and
    target states; ``rest_after[i]`` is the target index of the i-th untouched
    source circle (sources in increasing order).
    """
    words = np.arange(1 << n_in, dtype=np.int64)
    rest = [i for i in range(n_in) if i not in inputs]
    pre_order = list(inputs) + rest
    c_pre = _lam_counts(words, _inversion_masks(pre_order), None, n_in)
    w1 = _permute_words(words, pre_order)
    k_in = len(inputs)
    head = w1 & ((1 << k_in) - 1)
    tail = w1 >> k_in
    placed = list(outputs) + list(rest_after)
    post_order = [placed.index(t) for t in range(n_out)]
    post_masks = _inversion_masks(post_order)
    srcs, tgts, codes = [], [], []
    k_out = len(outputs)
    if kind == "merge":
        table = [(0b00, 0, 0), (0b10, 1, 0), (0b01, 1, XZ.code)]  # (in word, out word, code)
        for win, wout, cc in table:
            sel = head == win
            mid = (tail[sel] << k_out) | wout
            c_post = _lam_counts(mid, post_masks, None, n_out)
            srcs.append(words[sel])
            tgts.append(_permute_words(mid, post_order))
            codes.append(code_mul(code_mul(c_pre[sel], c_post), np.int64(cc)))
    else:
        table = [(0, 0b01, 0), (0, 0b10, YZ.code), (1, 0b11, 0)]
        for win, wout, cc in table:
            sel = head == win
            mid = (tail[sel] << k_out) | wout
            c_post = _lam_counts(mid, post_masks, None, n_out)
            srcs.append(words[sel])
            tgts.append(_permute_words(mid, post_order))
            codes.append(code_mul(code_mul(c_pre[sel], c_post), np.int64(cc)))
    return np.concatenate(srcs), np.concatenate(tgts), np.concatenate(codes)


def edge_layout(edge, cube):
    """Circle bookkeeping for an edge: (n_in, n_out, inputs, outputs, rest_after)."""
    src = cube.vertices[edge.xi].state
    tgt = cube.vertices[edge.target].state
    arc = edge.arc
    rest = [i for i in range(src.circleCount) if i not in arc.inputs]
    rest_after = [tgt.arcCircle[src.circles[i][0]] for i in rest]
    return src.circleCount, tgt.circleCount, list(arc.inputs), list(arc.outputs), rest_after


def edge_map(edge, cube) -> SparseMap:
    """The TQFT image of an edge cobordism, via the generic factor calculus."""
    n_in, n_out, ins, outs, rest_after = edge_layout(edge, cube)
    f = elementary_merge() if edge.kind == "merge" else elementary_split()
    return extend_to_positions(f, ins, n_in, outs, n_out, rest_after)


def edge_map_fast(edge, cube) -> SparseMap:
    n_in, n_out, ins, outs, rest_after = edge_layout(edge, cube)
    s, t, c = edge_arrays(n_in, n_out, edge.kind, ins, outs, rest_after)
    f = SparseMap(n_in, n_out, edge.degree)
    for a, b, code in zip(s.tolist(), t.tolist(), c.tolist()):
        f.add(a, b, UnitMonomial._from_code(code))
    return f
