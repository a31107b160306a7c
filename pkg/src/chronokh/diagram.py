"""Oriented link diagrams in PD notation, their resolutions and surgery arcs.

Text input lists ``X(a,b,c,d)`` terms whose labels are read clockwise starting
at the incoming under-strand (so ``X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)`` is the
right-handed trefoil).  Internally the four slots are stored counterclockwise:
``slots = (s0, s1, s2, s3) = (a, d, c, b)``.  ``s0 -> s2`` is the under-strand,
``s1``/``s3`` carry the over-strand.

Smoothing conventions at a crossing (slot positions 0..3):

* type 0 joins (0,1) and (2,3)
* type 1 joins (0,3) and (1,2)

The type-0 smoothing is the oriented resolution of a positive crossing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class MalformedInput(ValueError):
    """Syntax error in PD text."""


class InvalidDiagram(ValueError):
    """Well-formed text that does not describe an oriented link diagram."""


class InvalidBasepoint(ValueError):
    pass


SMOOTHING = (
    {0: 1, 1: 0, 2: 3, 3: 2},
    {0: 3, 3: 0, 1: 2, 2: 1},
)


@dataclass(frozen=True)
class Crossing:
    """A crossing with slots stored counterclockwise from the incoming under-strand."""

    slots: tuple[int, int, int, int]
    arrowFlip: bool = False

    def text(self) -> str:
        s0, s1, s2, s3 = self.slots
        return f"X({s0},{s3},{s2},{s1})"


@dataclass
class PlanarDiagram:
    crossings: tuple[Crossing, ...]
    freeLoops: int = 0
    basepoints: tuple[int, ...] = ()
    loopKeys: tuple | None = None
    arcCount: int = field(init=False)
    componentMap: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.crossings = tuple(self.crossings)
        labels: dict[int, list[tuple[int, int]]] = {}
        for k, c in enumerate(self.crossings):
            if len(c.slots) != 4:
                raise InvalidDiagram("crossing needs four slots")
            for p, a in enumerate(c.slots):
                labels.setdefault(a, []).append((k, p))
        self.arcCount = len(labels)
        if labels and sorted(labels) != list(range(1, self.arcCount + 1)):
            raise InvalidDiagram(
                f"arc labels must be exactly 1..{self.arcCount}, got {sorted(labels)}"
            )
        for a, occ in labels.items():
            if len(occ) != 2:
                raise InvalidDiagram(f"arc {a} appears {len(occ)} times, expected 2")
        self.occurrences = {a: tuple(occ) for a, occ in labels.items()}
        if self.loopKeys is None:
            self.loopKeys = tuple(self.arcCount + 1 + i for i in range(self.freeLoops))
        elif len(self.loopKeys) != self.freeLoops:
            raise InvalidDiagram("one key per free loop required")
        self._orient()
        for b in self.basepoints:
            if b not in self.componentMap:
                raise InvalidBasepoint(f"basepoint {b} is not an arc or loop id")

    # orientation -------------------------------------------------------

    def _orient(self) -> None:
        """Trace components, fix directions and compute crossing signs."""
        occ = self.occurrences
        seen: set[int] = set()
        components: list[list[int]] = []
        # head[a] = occurrence where arc a enters a crossing
        head: dict[int, tuple[int, int]] = {}
        for start in sorted(occ):
            if start in seen:
                continue
            # walk in the direction leaving through occ[start][1]
            seq: list[tuple[int, tuple[int, int]]] = []
            a, exit_ = start, occ[start][1]
            while True:
                seq.append((a, exit_))
                seen.add(a)
                k, p = exit_
                q = (p + 2) % 4
                b = self.crossings[k].slots[q]
                o1, o2 = occ[b]
                entry = (k, q)
                nxt = o2 if o1 == entry else o1
                if b == start and entry == occ[start][0]:
                    break
                if b in seen and b != start:
                    raise InvalidDiagram("inconsistent strand structure")
                a, exit_ = b, nxt
            votes = set()
            for a, (k, p) in seq:
                if p == 0:
                    votes.add(1)
                elif p == 2:
                    votes.add(-1)
            if len(votes) > 1:
                raise InvalidDiagram("under-strands along a component disagree in direction")
            arcs = [a for a, _ in seq]
            if votes:
                forward = votes.pop() == 1
            else:
                forward = _increasing_direction(arcs)
            if not forward:
                # reverse traversal: entries become the other occurrences
                rev = []
                for a, exit_ in reversed(seq):
                    o1, o2 = occ[a]
                    rev.append((a, o2 if o1 == exit_ else o1))
                seq = rev
                arcs = [a for a, _ in seq]
            if not _consecutive_cyclic(arcs):
                raise InvalidDiagram(
                    f"arc numbering does not increase along component {arcs}"
                )
            for a, h in seq:
                head[a] = h
            components.append(arcs)
        self.components = components
        self.componentMap = {}
        for ci, arcs in enumerate(components):
            for a in arcs:
                self.componentMap[a] = ci
        base = len(components)
        for i, key in enumerate(self.loopKeys):
            self.componentMap[key] = base + i
        signs = []
        for k, c in enumerate(self.crossings):
            s0, s1, s2, s3 = c.slots
            if head.get(s0) != (k, 0) and s0 != s2:
                raise InvalidDiagram(f"crossing {k}: slot 0 is not incoming")
            if head[s3] == (k, 3):
                signs.append(1)
            elif head[s1] == (k, 1):
                signs.append(-1)
            else:
                raise InvalidDiagram(f"crossing {k}: over-strand has no direction")
        self.signs = tuple(signs)
        self.heads = head

    # basic data --------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def componentCount(self) -> int:
        return len(self.components) + self.freeLoops

    def crossingSigns(self) -> tuple[int, int]:
        plus = sum(1 for s in self.signs if s > 0)
        return plus, self.n - plus

    def writhe(self) -> int:
        return sum(self.signs)

    def text(self) -> str:
        parts = [c.text() for c in self.crossings]
        if self.freeLoops:
            parts.append(f"loops={self.freeLoops}")
        parts.extend(f"basepoint={b}" for b in self.basepoints)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.text()

    def with_basepoints(self, *bps: int) -> "PlanarDiagram":
        return PlanarDiagram(self.crossings, self.freeLoops, tuple(bps), self.loopKeys)

    def with_flips(self, flips: Sequence[bool]) -> "PlanarDiagram":
        cs = tuple(Crossing(c.slots, bool(f)) for c, f in zip(self.crossings, flips))
        return PlanarDiagram(cs, self.freeLoops, self.basepoints, self.loopKeys)

    def mirror(self) -> "PlanarDiagram":
        """Swap over- and under-strands at every crossing."""
        out = []
        for c, s in zip(self.crossings, self.signs):
            s0, s1, s2, s3 = c.slots
            if s > 0:
                out.append(Crossing((s3, s0, s1, s2), c.arrowFlip))
            else:
                out.append(Crossing((s1, s2, s3, s0), c.arrowFlip))
        return PlanarDiagram(tuple(out), self.freeLoops, self.basepoints, self.loopKeys)

    def basepoint_component(self, bp: int) -> int:
        return self.componentMap[bp]

    # resolutions ------------------------------------------------------------

    def resolve(self, xi: Sequence[int]) -> "ResolutionState":
        return resolve(self, xi)


def _increasing_direction(arcs: list[int]) -> bool:
    """Direction for a component with no under-passes: labels should increase."""
    m = len(arcs)
    if m == 1:
        return True
    fwd = sum(1 for i in range(m) if arcs[(i + 1) % m] == arcs[i] + 1)
    bwd = sum(1 for i in range(m) if arcs[(i + 1) % m] == arcs[i] - 1)
    return fwd >= bwd


def _consecutive_cyclic(arcs: list[int]) -> bool:
    m = len(arcs)
    lo = min(arcs)
    i0 = arcs.index(lo)
    rot = arcs[i0:] + arcs[:i0]
    return rot == list(range(lo, lo + m))


@dataclass(frozen=True)
class Turn:
    """A circle passing through crossing ``k`` from slot ``pin`` to slot ``pout``."""

    k: int
    pin: int
    pout: int


@dataclass
class ResolutionState:
    xi: tuple[int, ...]
    circles: list[tuple]  # each: cyclic tuple of arc ids (or a loop key)
    arcCircle: dict       # arc id or loop key -> circle index
    turns: list[list[Turn]]

    @property
    def circleCount(self) -> int:
        return len(self.circles)

    def circle_of(self, k: int, p: int, D: PlanarDiagram) -> int:
        return self.arcCircle[D.crossings[k].slots[p]]


def circle_count(D: PlanarDiagram, xi: Sequence[int]) -> int:
    """Number of circles, by union-find over arc labels."""
    parent = list(range(D.arcCount + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    count = D.arcCount
    for c, b in zip(D.crossings, xi):
        s = c.slots
        pairs = ((s[0], s[1]), (s[2], s[3])) if b == 0 else ((s[0], s[3]), (s[1], s[2]))
        for u, v in pairs:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                count -= 1
    return count + D.freeLoops


def resolve(D: PlanarDiagram, xi: Sequence[int]) -> ResolutionState:
    xi = tuple(int(b) for b in xi)
    if len(xi) != D.n:
        raise ValueError(f"state has length {len(xi)}, diagram has {D.n} crossings")
    occ = D.occurrences
    seen: set[int] = set()
    raw = []
    for start in sorted(occ):
        if start in seen:
            continue
        arcs, turns = [], []
        a, exit_ = start, occ[start][1]
        while True:
            arcs.append(a)
            seen.add(a)
            k, p = exit_
            q = SMOOTHING[xi[k]][p]
            turns.append(Turn(k, p, q))
            b = D.crossings[k].slots[q]
            o1, o2 = occ[b]
            entry = (k, q)
            if b == start and entry == occ[start][0]:
                break
            a, exit_ = b, (o2 if o1 == entry else o1)
        raw.append((min(arcs), tuple(arcs), turns))
    for key in D.loopKeys:
        raw.append((key, (key,), []))
    raw.sort(key=lambda t: t[0])
    circles = [r[1] for r in raw]
    arcCircle = {}
    for i, arcs in enumerate(circles):
        for a in arcs:
            arcCircle[a] = i
    return ResolutionState(xi, circles, arcCircle, [r[2] for r in raw])


@dataclass(frozen=True)
class SurgeryArc:
    """Data of the saddle that changes crossing ``k`` from type 0 to type 1.

    ``kind`` is "merge" or "split".  For a merge, ``inputs`` is (tail circle,
    head circle) in the source state; for a split, ``outputs`` is (circle left
    of the arrow, circle right of the arrow) in the target state.
    """

    k: int
    kind: str
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    tailSlot: int
    headSlot: int


def surgery_arc(D: PlanarDiagram, xi: Sequence[int], k: int,
                source: ResolutionState | None = None,
                target: ResolutionState | None = None) -> SurgeryArc:
    xi = tuple(xi)
    if xi[k] != 0:
        raise ValueError("surgery arcs are only defined on edges leaving type-0 smoothings")
    src = source or resolve(D, xi)
    tgt_xi = xi[:k] + (1,) + xi[k + 1:]
    tgt = target or resolve(D, tgt_xi)
    c = D.crossings[k]
    s = c.slots
    tail_slot, head_slot = (2, 0) if c.arrowFlip else (0, 2)
    ct, ch = src.arcCircle[s[tail_slot]], src.arcCircle[s[head_slot]]
    if ct != ch:
        out = tgt.arcCircle[s[0]]
        return SurgeryArc(k, "merge", (ct, ch), (out,), tail_slot, head_slot)
    left = tgt.arcCircle[s[1] if c.arrowFlip else s[0]]
    right = tgt.arcCircle[s[0] if c.arrowFlip else s[1]]
    if left == right:
        raise InvalidDiagram("surgery neither merges nor splits")
    return SurgeryArc(k, "split", (ct,), (left, right), tail_slot, head_slot)


# parsing --------------------------------------------------------------------

_TERM = re.compile(r"^X\((-?\d+),(-?\d+),(-?\d+),(-?\d+)\)$")


def parse_pd(text: str, freeLoops: int | None = None) -> PlanarDiagram:
    """Parse PD text: ``X(a,b,c,d)`` terms plus ``loops=k`` and ``basepoint=a``."""
    body = re.sub(r"#[^\n]*", " ", text)
    body = re.sub(r"\s*([(,=])\s*", r"\1", body)
    body = re.sub(r"\s+\)", ")", body)
    crossings, loops, bps = [], 0, []
    for tok in re.findall(r"X\([^)]*\)|[^\sX]\S*|X\S*", body):
        m = _TERM.match(tok)
        if m:
            a, b, c, d = (int(g) for g in m.groups())
            crossings.append(Crossing((a, d, c, b)))
            continue
        if tok.startswith("loops="):
            try:
                loops = int(tok[6:])
            except ValueError:
                raise MalformedInput(f"bad loops directive {tok!r}") from None
            if loops < 0:
                raise MalformedInput("loops must be non-negative")
            continue
        if tok.startswith("basepoint="):
            try:
                bps.append(int(tok[10:]))
            except ValueError:
                raise MalformedInput(f"bad basepoint directive {tok!r}") from None
            continue
        raise MalformedInput(f"unrecognized token {tok!r}")
    if freeLoops is not None:
        loops = freeLoops
    for c in crossings:
        if min(c.slots) < 1:
            raise InvalidDiagram("arc labels must be positive")
    return PlanarDiagram(tuple(crossings), loops, tuple(bps))


def render_pd(D: PlanarDiagram) -> str:
    return D.text()


# construction helpers -------------------------------------------------------

def relabel_oriented(raw: list[tuple[int, int, int, int]], signs: list[int],
                     loops: int = 0) -> PlanarDiagram:
    """Build a diagram from internal slot tuples with arbitrary arc ids.

    Arcs are renumbered so labels increase by one along each oriented
    component, components ordered by their smallest raw id.
    """
    heads = {}
    for k, (s, sg) in enumerate(zip(raw, signs)):
        heads[s[0]] = (k, 0)
        if sg > 0:
            heads[s[3]] = (k, 3)
        else:
            heads[s[1]] = (k, 1)
    succ = {}
    for a, (k, p) in heads.items():
        succ[a] = raw[k][(p + 2) % 4]
    new, nxt = {}, 1
    for a in sorted(heads):
        if a in new:
            continue
        b = a
        while b not in new:
            new[b] = nxt
            nxt += 1
            b = succ[b]
    cs = tuple(Crossing(tuple(new[x] for x in s)) for s in raw)
    return PlanarDiagram(cs, loops)


def from_braid(word: Iterable[int], strands: int | None = None) -> PlanarDiagram:
    """Closure of a braid word; ``i`` is sigma_i, ``-i`` its inverse.

    Strands run upward; strands that never cross become free loops.
    """
    word = list(word)
    if strands is None:
        strands = max((abs(g) for g in word), default=0) + 1
    pos = list(range(strands))
    fresh = strands
    raw, signs = [], []
    touched = set()
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        sw, se = pos[i], pos[i + 1]
        nw, ne = fresh, fresh + 1
        fresh += 2
        touched.update((i, i + 1))
        if g > 0:
            raw.append((se, ne, nw, sw))
        else:
            raw.append((sw, se, ne, nw))
        signs.append(1 if g > 0 else -1)
        pos[i], pos[i + 1] = nw, ne
    # closure: top arc at position j is the bottom arc at position j
    alias = {pos[j]: j for j in range(strands) if pos[j] != j}
    raw = [tuple(alias.get(x, x) for x in s) for s in raw]
    loops = strands - len(touched)
    return relabel_oriented(raw, signs, loops)


def disjoint_union(D: PlanarDiagram, E: PlanarDiagram) -> PlanarDiagram:
    """``D`` placed to the left of ``E``; every circle of ``D`` sorts first."""
    off = D.arcCount
    cs = list(D.crossings)
    cs += [Crossing(tuple(a + off for a in c.slots), c.arrowFlip) for c in E.crossings]
    # D's loops sort strictly between D's arcs and E's arcs
    dkeys = tuple(D.arcCount + (i + 1) / (D.freeLoops + 1) for i in range(D.freeLoops))
    ekeys = tuple(k + off for k in E.loopKeys)
    bps = tuple(_map_bp(D, b, 0, dkeys) for b in D.basepoints)
    bps += tuple(_map_bp(E, b, off, ekeys) for b in E.basepoints)
    return PlanarDiagram(tuple(cs), D.freeLoops + E.freeLoops, bps, dkeys + ekeys)


def _map_bp(D: PlanarDiagram, b, off, newkeys):
    if b in D.occurrences:
        return b + off
    return newkeys[D.loopKeys.index(b)]
