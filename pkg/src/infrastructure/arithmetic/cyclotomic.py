# src/infrastructure/arithmetic/cyclotomic.py
import logging
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence, Tuple

logger = logging.getLogger(__name__)


def _p_adic_order(x: int, p: int) -> int:
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


@dataclass(frozen=True)
class CycInt:
    """Element sum c_i zeta^i of Z[zeta_p], i < p-1."""
    p: int
    coeffs: Tuple[int, ...]

    @classmethod
    def zero(cls, p: int) -> "CycInt":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def from_int(cls, p: int, value: int) -> "CycInt":
        return cls(p, (value,) + (0,) * (p - 2))

    @classmethod
    def from_powers(cls, p: int, values: Sequence[int]) -> "CycInt":
        """sum values[t] zeta^t for t < len(values), reduced by 1 + zeta + ... + zeta^{p-1} = 0."""
        folded = [0] * p
        for t, v in enumerate(values):
            folded[t % p] += v
        top = folded[p - 1]
        return cls(p, tuple(c - top for c in folded[:p - 1]))

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "CycInt":
        """sum_t N_t zeta^t from the trace-value counts N_0..N_{p-1}."""
        return cls.from_powers(len(counts), counts)

    @classmethod
    def zeta(cls, p: int, power: int = 1) -> "CycInt":
        values = [0] * p
        values[power % p] = 1
        return cls.from_powers(p, values)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "CycInt") -> "CycInt":
        return CycInt(self.p, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycInt") -> "CycInt":
        return CycInt(self.p, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycInt":
        return CycInt(self.p, tuple(-x for x in self.coeffs))

    def __mul__(self, other) -> "CycInt":
        if isinstance(other, int):
            return CycInt(self.p, tuple(other * x for x in self.coeffs))
        product = [0] * (2 * self.p - 3)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    product[i + j] += x * y
        return CycInt.from_powers(self.p, product)

    __rmul__ = __mul__

    def exact_div(self, k: int) -> "CycInt":
        """Division by an integer; the power basis is a Z-basis so it is coordinatewise."""
        if any(x % k for x in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {k} in Z[zeta_{self.p}].")
        return CycInt(self.p, tuple(x // k for x in self.coeffs))

    def shifted(self) -> Tuple[int, ...]:
        """Coefficients of h(y) = value at zeta = 1 + y."""
        return tuple(sum(c * comb(i, j) for i, c in enumerate(self.coeffs) if i >= j)
                     for j in range(self.p - 1))


def pi_valuation(alpha: CycInt) -> Optional[int]:
    """ord_pi with ord_pi(p) = p - 1; None for zero."""
    if alpha.is_zero():
        return None
    p = alpha.p
    return min((p - 1) * _p_adic_order(h, p) + i for i, h in enumerate(alpha.shifted()) if h)


def pi_residue(alpha: CycInt, v: int) -> int:
    """Leading coefficient of alpha / pi^v in F_p, using p = -pi^(p-1) and pi = zeta - 1 to first order."""
    p = alpha.p
    actual = pi_valuation(alpha)
    if actual != v:
        raise ArithmeticError(f"pi-adic valuation of {alpha} is {actual}, not {v}.")
    k_star, i_star = divmod(v, p - 1)
    h = alpha.shifted()[i_star]
    unit = h // p ** k_star
    return (unit * (-1) ** k_star) % p
