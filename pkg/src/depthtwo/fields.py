"""Exact scalars: arbitrary-precision rationals and prime fields F_p.

Every computation in this package runs over one of these two kinds of
field; there is no floating point anywhere.  Rational values are plain
``fractions.Fraction`` objects, prime-field values are ``FpElement``
wrappers that stay reduced mod p, so generic linear algebra can use the
ordinary arithmetic operators on either.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    """Invalid field data: composite modulus, mixed-field arithmetic, bad literal."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class FpElement:
    """A residue mod the prime p.  Arithmetic only combines equal moduli."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FpElement(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.v == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return FpElement(self.v * pow(o.v, self.p - 2, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __repr__(self):
        return f"{self.v}#(mod {self.p})".replace("#", "")


class Rationals:
    """The field Q, elements represented as ``Fraction``."""

    char = 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def of(self, n) -> Fraction:
        return Fraction(n)

    def parse(self, obj) -> Fraction:
        if isinstance(obj, bool):
            raise FieldError(f"not a rational literal: {obj!r}")
        if isinstance(obj, int):
            return Fraction(obj)
        if isinstance(obj, str):
            try:
                return Fraction(obj)
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"bad rational literal {obj!r}") from exc
        raise FieldError(f"not a rational literal: {obj!r}")

    def render(self, x: Fraction):
        if x.denominator == 1:
            return int(x)
        return f"{x.numerator}/{x.denominator}"

    def to_json(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The field F_p for a prime p."""

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise FieldError(f"modulus {p!r} is not prime")
        self.p = p
        self.char = p

    @property
    def zero(self):
        return FpElement(0, self.p)

    @property
    def one(self):
        return FpElement(1, self.p)

    def of(self, n) -> FpElement:
        if isinstance(n, FpElement):
            if n.p != self.p:
                raise FieldError(f"mixed moduli {self.p} and {n.p}")
            return n
        return FpElement(n, self.p)

    def parse(self, obj) -> FpElement:
        if isinstance(obj, bool):
            raise FieldError(f"not an F_{self.p} literal: {obj!r}")
        if isinstance(obj, int):
            return FpElement(obj, self.p)
        if isinstance(obj, str):
            # accept "a/b" so rational catalogs port to F_p unchanged
            try:
                q = Fraction(obj)
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"bad F_{self.p} literal {obj!r}") from exc
            return FpElement(q.numerator, self.p) / FpElement(q.denominator, self.p)
        raise FieldError(f"not an F_{self.p} literal: {obj!r}")

    def render(self, x: FpElement):
        return x.v

    def to_json(self):
        return {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F_{self.p}"


QQ = Rationals()

_gf_cache: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def field_from_json(obj):
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"Fp"}:
        return GF(obj["Fp"])
    raise FieldError(f"unrecognized field tag {obj!r}")
