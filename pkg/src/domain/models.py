# src/domain/models.py
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple


class LatticePoint(tuple):
    """Point of N^n, the exponent vector of a monomial x^u."""

    __slots__ = ()

    def __new__(cls, coords: Iterable[int]):
        return super().__new__(cls, (int(c) for c in coords))

    @property
    def n(self) -> int:
        return len(self)

    def degree(self, d: int) -> Fraction:
        """Degree (u_1 + ... + u_n)/d with respect to Simp(n,d)."""
        return Fraction(sum(self), d)

    def is_fundamental(self, d: int) -> bool:
        return all(0 < c < d for c in self)

    def scaled(self, factor: int) -> "LatticePoint":
        return LatticePoint(factor * c for c in self)

    def plus(self, other: Iterable[int]) -> "LatticePoint":
        return LatticePoint(a + b for a, b in zip(self, other))

    def minus(self, other: Iterable[int]) -> "LatticePoint":
        return LatticePoint(a - b for a, b in zip(self, other))

    def __repr__(self) -> str:
        return f"LatticePoint({tuple(self)!r})"


@dataclass(frozen=True)
class FrobeniusData:
    """Hodge and Frobenius numbers of Simp(n,d) at a prime p."""
    n: int
    d: int
    p: int
    h: Tuple[int, ...]
    H: Tuple[int, ...]
    hsplit: Tuple[Tuple[int, int], ...]
    slopes: Tuple[Tuple[Fraction, Fraction], ...]
    hodge_vertices: Tuple[int, ...]
    frobenius_vertices: Tuple[int, ...]

    @property
    def dimension(self) -> int:
        return (self.d - 1) ** self.n

    def hodge_sum(self, i: int) -> int:
        """H_i, with H_i = 0 for negative i."""
        return self.H[i] if i >= 0 else 0


@dataclass(frozen=True)
class Polygon:
    """Convex polygon from the origin, stored as ascending (slope, multiplicity) segments."""
    segments: Tuple[Tuple[Fraction, int], ...] = ()

    @property
    def length(self) -> int:
        return sum(m for _, m in self.segments)

    @property
    def endpoint(self) -> Tuple[int, Fraction]:
        return self.length, sum((s * m for s, m in self.segments), Fraction(0))

    def slopes(self) -> List[Fraction]:
        """Slope of each unit step, ascending."""
        out: List[Fraction] = []
        for s, m in self.segments:
            out.extend([s] * m)
        return out


@dataclass(frozen=True)
class PointTuple:
    """An a-tuple of sets of fundamental lattice points, indexed by Z/(a)."""
    layers: Tuple[Tuple[LatticePoint, ...], ...]

    @classmethod
    def of(cls, sets: Iterable[Iterable[Iterable[int]]]) -> "PointTuple":
        return cls(tuple(tuple(sorted(LatticePoint(u) for u in s)) for s in sets))

    @classmethod
    def power(cls, points: Iterable[Iterable[int]], a: int) -> "PointTuple":
        layer = tuple(sorted(LatticePoint(u) for u in points))
        return cls((layer,) * a)

    @property
    def a(self) -> int:
        return len(self.layers)

    def layer(self, l: int) -> Tuple[LatticePoint, ...]:
        return self.layers[l % self.a]


@dataclass(frozen=True)
class TwistedPermutation:
    """Bijections maps[l]: A_l -> A_{l-1}, each stored as sorted (u, image) pairs."""
    maps: Tuple[Tuple[Tuple[LatticePoint, LatticePoint], ...], ...]

    @classmethod
    def from_dicts(cls, maps: Iterable[Mapping[LatticePoint, LatticePoint]]) -> "TwistedPermutation":
        return cls(tuple(tuple(sorted((LatticePoint(u), LatticePoint(w)) for u, w in m.items()))
                         for m in maps))

    @classmethod
    def identity(cls, A: PointTuple) -> "TwistedPermutation":
        return cls(tuple(tuple((u, u) for u in layer) for layer in A.layers))

    @property
    def a(self) -> int:
        return len(self.maps)

    def as_dicts(self) -> List[Dict[LatticePoint, LatticePoint]]:
        return [dict(m) for m in self.maps]

    def image(self, l: int, u: LatticePoint) -> LatticePoint:
        return dict(self.maps[l % self.a])[u]


@dataclass(frozen=True)
class Section:
    """Integral section: multiplicities on lattice points of Simp(n,d)."""
    d: int
    counts: Tuple[Tuple[LatticePoint, int], ...]

    @property
    def degree(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def interior_degree(self) -> int:
        return sum(c for w, c in self.counts if sum(w) < self.d)

    def vec(self, n: int) -> LatticePoint:
        total = [0] * n
        for w, c in self.counts:
            for i, x in enumerate(w):
                total[i] += c * x
        return LatticePoint(total)


@dataclass(frozen=True)
class MultiplicityVector:
    """Vector (m_0, ..., m_d); compared from the highest index down."""
    values: Tuple[Fraction, ...]

    @property
    def key(self) -> Tuple[Fraction, ...]:
        return tuple(reversed(self.values))

    def __lt__(self, other: "MultiplicityVector") -> bool:
        return self.key < other.key

    def __le__(self, other: "MultiplicityVector") -> bool:
        return self.key <= other.key

    def __add__(self, other: "MultiplicityVector") -> "MultiplicityVector":
        return MultiplicityVector(tuple(a + b for a, b in zip(self.values, other.values)))

    def scaled(self, factor: Fraction) -> "MultiplicityVector":
        return MultiplicityVector(tuple(factor * v for v in self.values))


@dataclass(frozen=True)
class FieldDesc:
    """F_{p^degree} as F_p[x]/(modulus); modulus is little-endian and monic."""
    p: int
    degree: int
    modulus: Tuple[int, ...]

    @property
    def size(self) -> int:
        return self.p ** self.degree


@dataclass(frozen=True)
class FqPolynomial:
    """Polynomial over F_{p^a} supported on Simp(n,d); zero coefficients are omitted."""
    field: FieldDesc
    n: int
    d: int
    terms: Tuple[Tuple[LatticePoint, Tuple[int, ...]], ...]

    def coefficient(self, u: Iterable[int]) -> Tuple[int, ...]:
        return self.as_dict().get(LatticePoint(u), (0,) * self.field.degree)

    def as_dict(self) -> Dict[LatticePoint, Tuple[int, ...]]:
        return dict(self.terms)

    def leading_terms(self) -> Dict[LatticePoint, Tuple[int, ...]]:
        return {u: c for u, c in self.terms if sum(u) == self.d}


@dataclass(frozen=True)
class Assertion:
    """One checked claim of a verification run."""
    name: str
    passed: bool
    witness: str = ""


@dataclass(frozen=True)
class CongruenceRecord:
    """Valuation and residue of nu_k against the twisted Hasse value at one vertex."""
    sample: int
    k: int
    premium: Fraction
    ord_pi: Optional[int]
    hasse_value: Tuple[int, ...]
    residue: Optional[int]
    sign: Optional[int]


@dataclass(frozen=True)
class SampleSummary:
    """Newton polygon of one sampled polynomial."""
    index: int
    polynomial: str
    newton_polygon: Polygon


@dataclass(frozen=True)
class ExperimentReport:
    """Outcome of a sampling experiment or a verification suite."""
    kind: str
    n: Optional[int] = None
    d: Optional[int] = None
    p: Optional[int] = None
    a: Optional[int] = None
    seed: Optional[int] = None
    parameters: Tuple[Tuple[str, str], ...] = ()
    samples: int = 0
    sample_summaries: Tuple[SampleSummary, ...] = ()
    min_polygon: Optional[Polygon] = None
    stabilized_at: Optional[int] = None
    reference_polygons: Tuple[Tuple[str, Polygon], ...] = ()
    comparisons: Tuple[Tuple[str, str], ...] = ()
    congruence: Tuple[CongruenceRecord, ...] = ()
    assertions: Tuple[Assertion, ...] = field(default_factory=tuple)

    @property
    def failed(self) -> List[Assertion]:
        return [a for a in self.assertions if not a.passed]

    @property
    def passed(self) -> bool:
        return not self.failed
