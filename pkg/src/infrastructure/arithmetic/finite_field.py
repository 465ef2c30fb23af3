# src/infrastructure/arithmetic/finite_field.py
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcdex, gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem, gf_strip

from ...domain.exceptions import ParameterError
from ...domain.models import FieldDesc

logger = logging.getLogger(__name__)


def _to_gf(coeffs) -> List[int]:
    return gf_strip([int(c) for c in reversed(coeffs)])


def _from_gf(poly, degree: int) -> Tuple[int, ...]:
    out = [int(c) for c in reversed(poly)]
    return tuple(out + [0] * (degree - len(out)))


def _digits(code: int, p: int, length: int) -> Tuple[int, ...]:
    out = []
    for _ in range(length):
        code, r = divmod(code, p)
        out.append(r)
    return tuple(out)


@lru_cache(maxsize=None)
def build_field(p: int, degree: int) -> FieldDesc:
    """F_{p^degree} with the monic irreducible modulus of smallest encoding sum c_i p^i."""
    if not isprime(p):
        raise ParameterError(f"p={p} is not a prime.")
    if degree < 1:
        raise ParameterError(f"Field degree must be at least 1, got {degree}.")
    for code in range(p ** degree):
        modulus = _digits(code, p, degree) + (1,)
        if gf_irreducible_p(_to_gf(modulus), p, ZZ):
            logger.debug(f"F_{p}^{degree}: modulus {modulus}")
            return FieldDesc(p=p, degree=degree, modulus=modulus)
    raise ArithmeticError(f"No irreducible polynomial of degree {degree} over F_{p}.")


@dataclass(frozen=True)
class FqElem:
    """Element of F_{p^degree} in the power basis of the modulus root."""
    field: FieldDesc
    coeffs: Tuple[int, ...]

    @classmethod
    def zero(cls, field: FieldDesc) -> "FqElem":
        return cls(field, (0,) * field.degree)

    @classmethod
    def one(cls, field: FieldDesc) -> "FqElem":
        return cls.from_int(field, 1)

    @classmethod
    def from_int(cls, field: FieldDesc, value: int) -> "FqElem":
        return cls(field, (value % field.p,) + (0,) * (field.degree - 1))

    @classmethod
    def from_code(cls, field: FieldDesc, code: int) -> "FqElem":
        return cls(field, _digits(code, field.p, field.degree))

    @classmethod
    def of(cls, field: FieldDesc, coeffs) -> "FqElem":
        coeffs = [int(c) % field.p for c in coeffs]
        if len(coeffs) > field.degree:
            raise ParameterError(f"Coefficient vector {coeffs} too long for degree {field.degree}.")
        return cls(field, tuple(coeffs + [0] * (field.degree - len(coeffs))))

    @property
    def code(self) -> int:
        return sum(c * self.field.p ** i for i, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _check(self, other: "FqElem") -> None:
        if other.field != self.field:
            raise ParameterError(f"Field mismatch: {self.field} vs {other.field}.")

    def _wrap(self, poly) -> "FqElem":
        reduced = gf_rem(poly, _to_gf(self.field.modulus), self.field.p, ZZ)
        return FqElem(self.field, _from_gf(reduced, self.field.degree))

    def _lift(self, other) -> "FqElem":
        if isinstance(other, int):
            return FqElem.from_int(self.field, other)
        self._check(other)
        return other

    def __add__(self, other) -> "FqElem":
        other = self._lift(other)
        p = self.field.p
        return FqElem(self.field, tuple((x + y) % p for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other) -> "FqElem":
        other = self._lift(other)
        p = self.field.p
        return FqElem(self.field, tuple((x - y) % p for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FqElem":
        p = self.field.p
        return FqElem(self.field, tuple(-x % p for x in self.coeffs))

    def __mul__(self, other) -> "FqElem":
        other = self._lift(other)
        if self.field.degree == 1:
            return FqElem(self.field, ((self.coeffs[0] * other.coeffs[0]) % self.field.p,))
        return self._wrap(gf_mul(_to_gf(self.coeffs), _to_gf(other.coeffs), self.field.p, ZZ))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "FqElem":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        p = self.field.p
        if self.field.degree == 1:
            return FqElem(self.field, (pow(self.coeffs[0], exponent, p),))
        powered = gf_pow_mod(_to_gf(self.coeffs), exponent, _to_gf(self.field.modulus), p, ZZ)
        return FqElem(self.field, _from_gf(powered, self.field.degree))

    def inverse(self) -> "FqElem":
        if self.is_zero():
            raise ZeroDivisionError("Zero has no inverse in a field.")
        p = self.field.p
        s, _, g = gf_gcdex(_to_gf(self.coeffs), _to_gf(self.field.modulus), p, ZZ)
        if [int(c) for c in g] != [1]:
            raise ArithmeticError(f"Modulus {self.field.modulus} is not irreducible.")
        return self._wrap(s)

    def __truediv__(self, other) -> "FqElem":
        return self * self._lift(other).inverse()

    def frobenius(self, times: int = 1) -> "FqElem":
        """x -> x^(p^times)."""
        return self ** (self.field.p ** (times % self.field.degree))

    def __repr__(self) -> str:
        return f"FqElem({list(self.coeffs)} mod {list(self.field.modulus)})"


def trace(x: FqElem) -> int:
    """Absolute trace to F_p."""
    total = FqElem.zero(x.field)
    y = x
    for _ in range(x.field.degree):
        total = total + y
        y = y ** x.field.p
    if any(total.coeffs[1:]):
        raise ArithmeticError(f"Trace of {x} left the prime field: {total}.")
    return total.coeffs[0]


def polynomial_root_in(modulus: Tuple[int, ...], target: FieldDesc) -> FqElem:
    """Root of a little-endian F_p polynomial in the target field with the smallest code."""
    for code in range(target.size):
        x = FqElem.from_code(target, code)
        value = FqElem.zero(target)
        for c in reversed(modulus):
            value = value * x + c
        if value.is_zero():
            return x
    raise ArithmeticError(f"{modulus} has no root in F_{target.p}^{target.degree}.")


@lru_cache(maxsize=None)
def generator_image(source: FieldDesc, target: FieldDesc) -> FqElem:
    if source.p != target.p or target.degree % source.degree != 0:
        raise ParameterError(f"F_{source.p}^{source.degree} does not embed in F_{target.p}^{target.degree}.")
    return polynomial_root_in(source.modulus, target)


def embed(x: FqElem, target: FieldDesc) -> FqElem:
    """Image of x under the fixed embedding sending the source generator to generator_image."""
    if x.field == target:
        return x
    root = generator_image(x.field, target)
    out = FqElem.zero(target)
    power = FqElem.one(target)
    for c in x.coeffs:
        out = out + power * c
        power = power * root
    return out
