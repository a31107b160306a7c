"""Ground ring arithmetic.

The ground ring is ``Z[X, Y, Z^{\\pm 1}] / (X^2 - 1, Y^2 - 1)``.  Its unit group
is generated by -1, X, Y and Z; every scalar that shows up in the cube of
resolutions (twists, obstructions, sign assignments) is such a unit.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, NamedTuple


class BiDegree(NamedTuple):
    """Chronological bidegree ``(a, b)``.

    ``a`` counts births minus merges, ``b`` counts deaths minus splits.
    """

    a: int
    b: int

    def __add__(self, other):  # type: ignore[override]
        return BiDegree(self.a + other[0], self.b + other[1])

    def __sub__(self, other):
        return BiDegree(self.a - other[0], self.b - other[1])

    def __neg__(self):
        return BiDegree(-self.a, -self.b)

    def collapsed(self) -> int:
        return self.a + self.b


MERGE_DEGREE = BiDegree(-1, 0)
SPLIT_DEGREE = BiDegree(0, -1)
BIRTH_DEGREE = BiDegree(1, 0)
DEATH_DEGREE = BiDegree(0, 1)
ZERO_DEGREE = BiDegree(0, 0)


def boundary_balance_holds(degree, n_in: int, n_out: int) -> bool:
    """Check ``a + n_in == b + n_out`` for a cobordism of the given degree."""
    return degree[0] + n_in == degree[1] + n_out


class UnitMonomial:
    """An invertible scalar ``±X^x Y^y Z^z`` with ``x, y`` in {0, 1}.

    Stored as one packed integer: bit 0 is the sign, bits 1 and 2 the X and
    Y exponents, the remaining bits the (signed) Z exponent.
    """

    __slots__ = ("code",)

    def __init__(self, sign: int = 1, x: int = 0, y: int = 0, z: int = 0):
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        self.code = (z << 3) | ((y & 1) << 2) | ((x & 1) << 1) | (sign == -1)

    @classmethod
    def _from_code(cls, code: int) -> "UnitMonomial":
        m = object.__new__(cls)
        m.code = code
        return m

    @property
    def sign(self) -> int:
        return -1 if self.code & 1 else 1

    @property
    def x(self) -> int:
        return (self.code >> 1) & 1

    @property
    def y(self) -> int:
        return (self.code >> 2) & 1

    @property
    def z(self) -> int:
        return self.code >> 3

    def __mul__(self, other: "UnitMonomial") -> "UnitMonomial":
        if not isinstance(other, UnitMonomial):
            return NotImplemented
        a, b = self.code, other.code
        return UnitMonomial._from_code((((a >> 3) + (b >> 3)) << 3) | ((a ^ b) & 7))

    def __neg__(self) -> "UnitMonomial":
        return UnitMonomial._from_code(self.code ^ 1)

    def inverse(self) -> "UnitMonomial":
        return UnitMonomial._from_code(((-(self.code >> 3)) << 3) | (self.code & 7))

    def __pow__(self, k: int) -> "UnitMonomial":
        base = self if k >= 0 else self.inverse()
        out = ONE
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, UnitMonomial) and self.code == other.code

    def __hash__(self) -> int:
        return hash(self.code)

    def monic(self) -> "UnitMonomial":
        """The same monomial with sign +1."""
        return UnitMonomial._from_code(self.code & ~1)

    def specialize(self, s: "Specialization") -> int:
        v = self.sign
        if self.x and s.x == -1:
            v = -v
        if self.y and s.y == -1:
            v = -v
        if self.z & 1 and s.z == -1:
            v = -v
        return v

    def __str__(self) -> str:
        return render_monomial(self)

    def __repr__(self) -> str:
        return f"UnitMonomial({render_monomial(self)!r})"


ONE = UnitMonomial()
MINUS_ONE = UnitMonomial(-1)
X = UnitMonomial(x=1)
Y = UnitMonomial(y=1)
Z = UnitMonomial(z=1)
Z_INV = UnitMonomial(z=-1)
XY = UnitMonomial(x=1, y=1)


def monomial_mul(m1: UnitMonomial, m2: UnitMonomial) -> UnitMonomial:
    return m1 * m2


def lam(d1, d2) -> UnitMonomial:
    """Twisting function ``X^{a a'} Y^{b b'} Z^{a b' - a' b}``."""
    a1, b1 = d1
    a2, b2 = d2
    return UnitMonomial(1, (a1 * a2) & 1, (b1 * b2) & 1, a1 * b2 - a2 * b1)


def render_monomial(m: UnitMonomial) -> str:
    parts = []
    if m.x:
        parts.append("X")
    if m.y:
        parts.append("Y")
    if m.z == 1:
        parts.append("Z")
    elif m.z:
        parts.append(f"Z^{m.z}")
    body = "*".join(parts) if parts else "1"
    return ("-" if m.sign < 0 else "") + body


_FACTOR = re.compile(r"^([XYZ])(?:\^(-?\d+))?$")


def parse_monomial(text: str) -> UnitMonomial:
    """Inverse of :func:`render_monomial`; also accepts repeated factors."""
    s = text.strip().replace(" ", "")
    sign = 1
    while s[:1] in "+-" and s:
        if s[0] == "-":
            sign = -sign
        s = s[1:]
    if not s:
        raise ValueError(f"empty monomial: {text!r}")
    out = UnitMonomial(sign)
    if s == "1":
        return out
    for factor in s.split("*"):
        match = _FACTOR.match(factor)
        if match is None:
            raise ValueError(f"bad monomial factor {factor!r} in {text!r}")
        k = int(match.group(2)) if match.group(2) is not None else 1
        base = {"X": X, "Y": Y, "Z": Z}[match.group(1)]
        out = out * base**k
    return out


class Specialization(NamedTuple):
    """A ring map sending X, Y, Z to ±1."""

    x: int
    y: int
    z: int

    @property
    def name(self) -> str:
        if self == EVEN:
            return "even"
        if self == ODD:
            return "odd"
        return f"({self.x},{self.y},{self.z})"


EVEN = Specialization(1, 1, 1)
ODD = Specialization(1, -1, 1)
ALL_SPECIALIZATIONS = tuple(
    Specialization(x, y, z) for x in (1, -1) for y in (1, -1) for z in (1, -1)
)


class RingElement:
    """Element of the integral group ring of the unit group, i.e. of the ground ring.

    Stored as ``{monic monomial code: integer coefficient}``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def of(cls, *items: UnitMonomial | tuple[int, UnitMonomial]) -> "RingElement":
        out = cls()
        for item in items:
            if isinstance(item, UnitMonomial):
                out.add_monomial(item)
            else:
                c, m = item
                out.add_monomial(m, c)
        return out

    def add_monomial(self, m: UnitMonomial, coeff: int = 1) -> None:
        code = m.code
        if code & 1:
            coeff = -coeff
            code ^= 1
        v = self.terms.get(code, 0) + coeff
        if v:
            self.terms[code] = v
        else:
            self.terms.pop(code, None)

    def __add__(self, other: "RingElement") -> "RingElement":
        out = RingElement(dict(self.terms))
        for k, v in other.terms.items():
            out.add_monomial(UnitMonomial._from_code(k), v)
        return out

    def __neg__(self) -> "RingElement":
        return RingElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other) -> "RingElement":
        if isinstance(other, UnitMonomial):
            out = RingElement()
            for k, v in self.terms.items():
                out.add_monomial(UnitMonomial._from_code(k) * other, v)
            return out
        if isinstance(other, int):
            return RingElement({k: v * other for k, v in self.terms.items()})
        if isinstance(other, RingElement):
            out = RingElement()
            for k1, v1 in self.terms.items():
                m1 = UnitMonomial._from_code(k1)
                for k2, v2 in other.terms.items():
                    out.add_monomial(m1 * UnitMonomial._from_code(k2), v1 * v2)
            return out
        return NotImplemented

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, UnitMonomial):
            other = RingElement.of(other)
        if isinstance(other, int):
            other = RingElement({ONE.code: other})
        return isinstance(other, RingElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def monomials(self) -> Iterator[tuple[int, UnitMonomial]]:
        for k in sorted(self.terms):
            yield self.terms[k], UnitMonomial._from_code(k)

    def specialize(self, s: Specialization) -> int:
        return sum(c * m.specialize(s) for c, m in self.monomials())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for c, m in self.monomials():
            body = render_monomial(m)
            if c == 1:
                pieces.append(body)
            elif c == -1:
                pieces.append("-" + body)
            else:
                pieces.append(f"{c}*{body}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"RingElement({str(self)!r})"


def ring_sum(items: Iterable[RingElement]) -> RingElement:
    out = RingElement()
    for item in items:
        for k, v in item.terms.items():
            out.add_monomial(UnitMonomial._from_code(k), v)
    return out


def specialize(x: RingElement | UnitMonomial | int, s: Specialization) -> int:
    if isinstance(x, int):
        return x
    return x.specialize(s)
