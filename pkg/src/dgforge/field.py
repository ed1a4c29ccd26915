"""Exact scalars: arbitrary-precision rationals and prime fields F_p.

Every matrix, structure constant and cohomology computation in this
package runs over one of these two kinds of field.  Rationals are
represented by fractions.Fraction, prime-field elements by the Fp
wrapper below; both support +, -, *, / and truth-testing, so the
linear algebra layer is field-agnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Fp:
    """Element of F_p.  Immutable; arithmetic assumes matching p."""

    __slots__ = ("val", "p")

    def __init__(self, val: int, p: int):
        object.__setattr__(self, "val", val % p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):
        raise AttributeError("Fp is immutable")

    def __add__(self, other):
        return Fp(self.val + other.val, self.p)

    def __sub__(self, other):
        return Fp(self.val - other.val, self.p)

    def __mul__(self, other):
        return Fp(self.val * other.val, self.p)

    def __truediv__(self, other):
        if other.val == 0:
            raise ZeroDivisionError("division by zero in F_p")
        # p is prime, so Fermat inversion is exact
        return Fp(self.val * pow(other.val, self.p - 2, self.p), self.p)

    def __neg__(self):
        return Fp(-self.val, self.p)

    def __eq__(self, other):
        return isinstance(other, Fp) and self.val == other.val and self.p == other.p

    def __hash__(self):
        return hash((self.val, self.p))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return f"{self.val}ₚ" if self.p > 0 else "?"


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: rationals when p is None, else F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    @property
    def kind(self) -> str:
        return "rational" if self.p is None else "prime"

    @property
    def label(self) -> str:
        return "Q" if self.p is None else f"Fp:{self.p}"

    def zero(self):
        return Fraction(0) if self.p is None else Fp(0, self.p)

    def one(self):
        return Fraction(1) if self.p is None else Fp(1, self.p)

    def of(self, x):
        """Coerce an int, Fraction or already-coerced scalar."""
        if self.p is None:
            if isinstance(x, Fp):
                raise FieldError("cannot coerce F_p element into Q")
            return Fraction(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldError(f"F_{x.p} element used over F_{self.p}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"denominator divisible by {self.p}")
            return Fp(x.numerator, self.p) / Fp(x.denominator, self.p)
        return Fp(int(x), self.p)

    def parse_scalar(self, text: str):
        """Parse '3', '-1/2' style literals."""
        try:
            frac = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad scalar literal {text!r}") from exc
        return self.of(frac)

    def format_scalar(self, x) -> str:
        if self.p is None:
            return str(x)
        return str(x.val)

    @staticmethod
    def parse(label: str) -> "FieldSpec":
        """Inverse of .label: 'Q' or 'Fp:<p>'."""
        if label == "Q":
            return FieldSpec()
        if label.startswith("Fp:"):
            try:
                return FieldSpec(int(label[3:]))
            except ValueError as exc:
                raise FieldError(f"bad field label {label!r}") from exc
        raise FieldError(f"bad field label {label!r}")


QQ = FieldSpec()
