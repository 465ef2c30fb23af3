# src/infrastructure/arithmetic/fq_polynomial.py
import logging
from typing import Dict, Iterable, Mapping, Tuple

from ...domain.exceptions import ParameterError
from ...domain.models import FieldDesc, FqPolynomial, LatticePoint
from .finite_field import FqElem, build_field

logger = logging.getLogger(__name__)


def make_polynomial(field: FieldDesc, n: int, d: int,
                    coefficients: Mapping[Iterable[int], object]) -> FqPolynomial:
    """Build an FqPolynomial from u -> coefficient (FqElem, int or coefficient vector)."""
    terms: Dict[LatticePoint, Tuple[int, ...]] = {}
    for u, c in coefficients.items():
        u = LatticePoint(u)
        if len(u) != n or min(u) < 0 or sum(u) > d:
            raise ParameterError(f"Exponent {tuple(u)} is not a lattice point of Simp({n},{d}).")
        if isinstance(c, FqElem):
            if c.field != field:
                raise ParameterError(f"Coefficient field {c.field} differs from {field}.")
            elem = c
        elif isinstance(c, int):
            elem = FqElem.from_int(field, c)
        else:
            elem = FqElem.of(field, c)
        if not elem.is_zero():
            terms[u] = elem.coeffs
    return FqPolynomial(field=field, n=n, d=d, terms=tuple(sorted(terms.items())))


def coefficient(f: FqPolynomial, u: Iterable[int]) -> FqElem:
    return FqElem(f.field, f.coefficient(u))


def format_polynomial(f: FqPolynomial) -> str:
    """p=<p>;a=<a>;n=<n>;d=<d>;terms=<u1>,<u2>:<c0>,<c1>|..."""
    terms = "|".join(
        f"{','.join(map(str, u))}:{','.join(map(str, c))}" for u, c in f.terms)
    return f"p={f.field.p};a={f.field.degree};n={f.n};d={f.d};terms={terms}"


def parse_polynomial(text: str) -> FqPolynomial:
    try:
        fields = dict(part.split("=", 1) for part in text.strip().split(";"))
        p, a, n, d = (int(fields[key]) for key in ("p", "a", "n", "d"))
        coefficients = {}
        body = fields.get("terms", "")
        for chunk in filter(None, body.split("|")):
            exponent, coeffs = chunk.split(":")
            u = tuple(int(x) for x in exponent.split(","))
            if u in coefficients:
                raise ValueError(f"exponent {u} appears twice")
            coefficients[u] = [int(c) for c in coeffs.split(",")]
    except (KeyError, ValueError) as e:
        raise ParameterError(f"Malformed polynomial text '{text}': {e}")
    return make_polynomial(build_field(p, a), n, d, coefficients)
