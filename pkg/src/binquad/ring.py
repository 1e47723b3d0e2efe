"""Exact coefficient rings: the integers, Z/n, and the rationals.

Elements are plain Python values -- ``int`` for integers and for residues
(kept in the canonical range ``[0, n)``), ``Fraction`` for rationals -- and
a small ring object carries the arithmetic.  Everything is exact; no
floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import IncompatibleHom, NotInvertible, UnsupportedRing, UsageError


class Ring:
    kind: str = ""

    def normalize(self, v):
        raise NotImplementedError

    def add(self, u, v):
        return self.normalize(u + v)

    def sub(self, u, v):
        return self.normalize(u - v)

    def mul(self, u, v):
        return self.normalize(u * v)

    def neg(self, v):
        return self.normalize(-v)

    @property
    def zero(self):
        return self.normalize(0)

    @property
    def one(self):
        return self.normalize(1)

    def is_unit(self, v) -> bool:
        raise NotImplementedError

    def inv(self, v):
        raise NotImplementedError

    def units(self) -> list:
        """All units, for rings where that list is finite and small."""
        raise UnsupportedRing(f"cannot enumerate units of {self!r}")

    def half(self, v):
        """v/2 if it exists in the ring, else None."""
        raise NotImplementedError

    def two_is_regular(self) -> bool:
        """True when 2 is not a zero divisor (includes 2 being a unit)."""
        raise NotImplementedError

    def elem_to_json(self, v):
        return v

    def elem_from_json(self, obj):
        if not isinstance(obj, int) or isinstance(obj, bool):
            raise UsageError(f"expected an integer element, got {obj!r}")
        return self.normalize(obj)

    def to_json(self) -> dict:
        raise NotImplementedError


class IntegerRing(Ring):
    kind = "int"

    def normalize(self, v):
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise UsageError(f"{v} is not an integer")
            return int(v)
        return int(v)

    def is_unit(self, v) -> bool:
        return v in (1, -1)

    def inv(self, v):
        if v in (1, -1):
            return v
        raise NotInvertible(f"{v} is not a unit in Z")

    def units(self) -> list:
        return [1, -1]

    def half(self, v):
        return v // 2 if v % 2 == 0 else None

    def two_is_regular(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {"ring": "int"}

    def __repr__(self):
        return "Z"

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("int")


class ModularRing(Ring):
    kind = "mod"

    def __init__(self, n: int):
        if n < 2:
            raise UsageError(f"modulus must be >= 2, got {n}")
        self.n = int(n)

    def normalize(self, v):
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise UsageError(f"{v} is not an integer")
            v = int(v)
        return int(v) % self.n

    def is_unit(self, v) -> bool:
        return gcd(self.normalize(v), self.n) == 1

    def inv(self, v):
        v = self.normalize(v)
        if gcd(v, self.n) != 1:
            raise NotInvertible(f"{v} is not a unit mod {self.n}")
        return pow(v, -1, self.n)

    def units(self) -> list:
        return [u for u in range(1, self.n) if gcd(u, self.n) == 1]

    def half(self, v):
        v = self.normalize(v)
        if self.n % 2 == 1:
            return self.mul(v, self.inv(2))
        if v % 2 == 0:
            # Not unique when n is even; pick the canonical small lift.
            return self.normalize(v // 2)
        return None

    def two_is_regular(self) -> bool:
        return self.n % 2 == 1

    def to_json(self) -> dict:
        return {"ring": "mod", "n": self.n}

    def __repr__(self):
        return f"Z/{self.n}"

    def __eq__(self, other):
        return isinstance(other, ModularRing) and other.n == self.n

    def __hash__(self):
        return hash(("mod", self.n))


class RationalRing(Ring):
    kind = "rat"

    def normalize(self, v):
        return Fraction(v)

    def is_unit(self, v) -> bool:
        return self.normalize(v) != 0

    def inv(self, v):
        v = self.normalize(v)
        if v == 0:
            raise NotInvertible("0 is not a unit in Q")
        return 1 / v

    def half(self, v):
        return self.normalize(v) / 2

    def two_is_regular(self) -> bool:
        return True

    def elem_to_json(self, v):
        v = self.normalize(v)
        if v.denominator == 1:
            return int(v)
        return {"num": v.numerator, "den": v.denominator}

    def elem_from_json(self, obj):
        if isinstance(obj, bool):
            raise UsageError(f"expected a number, got {obj!r}")
        if isinstance(obj, int):
            return Fraction(obj)
        if isinstance(obj, dict) and set(obj) == {"num", "den"}:
            return Fraction(obj["num"], obj["den"])
        raise UsageError(f"expected an integer or {{num,den}} object, got {obj!r}")

    def to_json(self) -> dict:
        return {"ring": "rat"}

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("rat")


ZZ = IntegerRing()
QQ = RationalRing()


def ring_from_json(obj) -> Ring:
    if not isinstance(obj, dict) or "ring" not in obj:
        raise UsageError(f"expected a ring object, got {obj!r}")
    kind = obj["ring"]
    if kind == "int":
        return ZZ
    if kind == "rat":
        return QQ
    if kind == "mod":
        if "n" not in obj:
            raise UsageError("modular ring needs a modulus field 'n'")
        return ModularRing(obj["n"])
    raise UsageError(f"unknown ring kind {kind!r}")


def content(values, ring: Ring) -> int:
    """Non-negative gcd of a sequence of integers; 0 only for all-zero input."""
    if not isinstance(ring, IntegerRing):
        raise UnsupportedRing(f"content is only defined over Z, not {ring!r}")
    if not values:
        raise UsageError("content of an empty sequence")
    g = 0
    for v in values:
        g = gcd(g, ring.normalize(v))
    return g


def is_unit(v, ring: Ring) -> bool:
    return ring.is_unit(ring.normalize(v))


@dataclass(frozen=True)
class RingHom:
    """One of the supported canonical homomorphisms.

    Arrows: Z -> Z/n, Z -> Q, and Z/n -> Z/m with m | n.
    """

    src: Ring
    dst: Ring

    def __post_init__(self):
        s, d = self.src, self.dst
        if isinstance(s, IntegerRing) and isinstance(d, (ModularRing, RationalRing)):
            return
        if isinstance(s, ModularRing) and isinstance(d, ModularRing) and s.n % d.n == 0:
            return
        raise IncompatibleHom(f"no canonical homomorphism {s!r} -> {d!r}")

    def __call__(self, v):
        return self.dst.normalize(self.src.normalize(v))


def hom_apply(v, hom: RingHom):
    return hom(v)
