# src/infrastructure/arithmetic/sparse_poly.py
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from ...domain.models import LatticePoint

Monomial = Tuple[Tuple[LatticePoint, int], ...]


def _merge(x: Monomial, y: Monomial) -> Monomial:
    exps: Dict[LatticePoint, int] = dict(x)
    for w, e in y:
        exps[w] = exps.get(w, 0) + e
    return tuple(sorted(exps.items()))


@dataclass(frozen=True)
class SparsePoly:
    """Polynomial over F_p in variables a_w; monomials are sorted (w, exponent) tuples."""
    p: int
    terms: Tuple[Tuple[Monomial, int], ...] = ()

    @classmethod
    def from_dict(cls, p: int, terms: Mapping[Monomial, int]) -> "SparsePoly":
        return cls(p, tuple(sorted((m, c % p) for m, c in terms.items() if c % p)))

    @classmethod
    def constant(cls, p: int, value: int) -> "SparsePoly":
        return cls.from_dict(p, {(): value})

    @classmethod
    def monomial(cls, p: int, exponents: Mapping[LatticePoint, int], coeff: int = 1) -> "SparsePoly":
        key = tuple(sorted((LatticePoint(w), e) for w, e in exponents.items() if e))
        return cls.from_dict(p, {key: coeff})

    def as_dict(self) -> Dict[Monomial, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        out = self.as_dict()
        for m, c in other.terms:
            out[m] = out.get(m, 0) + c
        return SparsePoly.from_dict(self.p, out)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.p, tuple((m, -c % self.p) for m, c in self.terms))

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, int):
            return SparsePoly.from_dict(self.p, {m: c * other for m, c in self.terms})
        out: Dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                key = _merge(m1, m2)
                out[key] = (out.get(key, 0) + c1 * c2) % self.p
        return SparsePoly.from_dict(self.p, out)

    __rmul__ = __mul__

    def frobenius_twist(self, times: int) -> "SparsePoly":
        """P^(p^times); coefficients lie in F_p so only exponents move."""
        factor = self.p ** times
        return SparsePoly(self.p, tuple(
            (tuple((w, e * factor) for w, e in m), c) for m, c in self.terms))

    def variables(self) -> List[LatticePoint]:
        return sorted({w for m, _ in self.terms for w, _ in m})

    def degree(self, selector: Optional[Callable[[LatticePoint], bool]] = None) -> int:
        """Total degree, counting only variables accepted by selector; -1 for zero."""
        if not self.terms:
            return -1
        return max(sum(e for w, e in m if selector is None or selector(w)) for m, _ in self.terms)

    def evaluate(self, values: Mapping[LatticePoint, object], one):
        """Substitute a_w := values[w] (missing variables are zero) in a ring with unit `one`."""
        total = one * 0
        for m, c in self.terms:
            term = one * c
            for w, e in m:
                x = values.get(w)
                if x is None:
                    term = one * 0
                    break
                term = term * (x ** e)
            total = total + term
        return total

    def to_text(self) -> str:
        """Canonical form: terms sorted by exponent vector over the sorted variable list."""
        if not self.terms:
            return "0"
        names = self.variables()

        def vector(m: Monomial) -> Tuple[int, ...]:
            exps = dict(m)
            return tuple(exps.get(w, 0) for w in names)

        parts = []
        for m, c in sorted(self.terms, key=lambda t: vector(t[0])):
            factors = [str(c)] + [f"a[{','.join(map(str, w))}]^{e}" for w, e in m]
            parts.append("*".join(factors))
        return "+".join(parts)

    def __str__(self) -> str:
        return self.to_text()


def product(p: int, factors: Iterable[SparsePoly]) -> SparsePoly:
    out = SparsePoly.constant(p, 1)
    for f in factors:
        out = out * f
        if out.is_zero():
            break
    return out
