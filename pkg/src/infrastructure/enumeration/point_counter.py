# src/infrastructure/enumeration/point_counter.py
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np
from sympy import factorint

from ...config.settings import settings
from ...domain.exceptions import BudgetExceededError
from ...domain.interfaces import IPointCounter
from ...domain.models import FieldDesc, FqPolynomial
from ..arithmetic.finite_field import FqElem, build_field, embed, trace

logger = logging.getLogger(__name__)

# Grid cells processed per block
_BLOCK_CELLS = 1 << 22


@dataclass(frozen=True)
class FieldTables:
    """Log/exp tables of F_Q for a fixed primitive element g."""
    field: FieldDesc
    exp: np.ndarray            # exp[e] = code of g^e, e < Q-1
    log: np.ndarray            # log[code], -1 at zero
    trace_of_exp: np.ndarray   # Tr(g^e)
    powers: np.ndarray         # p^i, i < degree

    @property
    def order(self) -> int:
        return self.field.size - 1


def _primitive_element(field: FieldDesc) -> FqElem:
    order = field.size - 1
    if order == 1:
        return FqElem.one(field)
    primes = list(factorint(order))
    for code in range(2, field.size):
        g = FqElem.from_code(field, code)
        if all(not (g ** (order // r) - 1).is_zero() for r in primes):
            return g
    raise ArithmeticError(f"No primitive element found in F_{field.p}^{field.degree}.")


def _multiplication_matrix(h: FqElem) -> np.ndarray:
    """Row i holds the coordinates of x^i * h."""
    field = h.field
    rows = []
    for i in range(field.degree):
        basis = FqElem.of(field, [0] * i + [1])
        rows.append((basis * h).coeffs)
    return np.array(rows, dtype=np.int64)


@lru_cache(maxsize=8)
def field_tables(field: FieldDesc) -> FieldTables:
    p, m, order = field.p, field.degree, field.size - 1
    g = _primitive_element(field)
    coords = np.zeros((1, m), dtype=np.int64)
    coords[0, 0] = 1
    # doubling: coordinates of g^N..g^{2N-1} are those of g^0..g^{N-1} times g^N
    while coords.shape[0] < order:
        step = _multiplication_matrix(g ** coords.shape[0])
        coords = np.vstack([coords, (coords @ step) % p])
    coords = coords[:order]
    powers = np.array([p ** i for i in range(m)], dtype=np.int64)
    exp = coords @ powers
    log = np.full(field.size, -1, dtype=np.int64)
    log[exp] = np.arange(order, dtype=np.int64)
    basis_traces = np.array([trace(FqElem.of(field, [0] * i + [1])) for i in range(m)], dtype=np.int64)
    trace_of_exp = ((coords @ basis_traces) % p).astype(np.int32)
    logger.debug(f"Built log/exp tables for F_{p}^{m} with generator {g.coeffs}")
    return FieldTables(field=field, exp=exp, log=log, trace_of_exp=trace_of_exp, powers=powers)


def _add_codes(x: np.ndarray, y: np.ndarray, tables: FieldTables) -> np.ndarray:
    p, powers = tables.field.p, tables.powers
    digits = (x[:, None] // powers) % p + (y[:, None] // powers) % p
    return (digits % p) @ powers


class VectorizedPointCounter(IPointCounter):
    """Counts N_t = #{x in F_{q^k}^n : Tr f(x) = t} over a log/exp table grid."""

    def __init__(self, budget: Optional[int] = None, threads: Optional[int] = None,
                 table_limit: Optional[int] = None):
        self._budget = budget or settings.ENUMERATION_BUDGET
        self._threads = threads or settings.WORKER_THREADS
        self._table_limit = table_limit or settings.ZECH_TABLE_LIMIT

    def trace_counts(self, f: FqPolynomial, k: int) -> List[int]:
        field = f.field
        big = build_field(field.p, field.degree * k)
        points = big.size ** f.n
        if points > self._budget:
            raise BudgetExceededError(
                f"S_{k} over F_{big.p}^{big.degree} needs {points} points, budget is {self._budget}.")
        coefficients = [(u, embed(FqElem(field, c), big)) for u, c in f.terms]
        if big.size > self._table_limit:
            logger.info(f"F_{big.p}^{big.degree} exceeds the table limit; using direct evaluation.")
            counts = self._count_direct(f.n, big, coefficients)
        else:
            counts = self._count_tables(f, big, coefficients)
        if sum(counts) != points:
            raise ArithmeticError(f"Trace counts sum to {sum(counts)}, expected {points}.")
        logger.debug(f"S_{k} counts for {f.n} variables over F_{big.p}^{big.degree}: {counts}")
        return counts

    def _count_direct(self, n: int, big: FieldDesc, coefficients) -> List[int]:
        counts = [0] * big.p
        elements = [FqElem.from_code(big, c) for c in range(big.size)]
        for x in itertools.product(elements, repeat=n):
            value = FqElem.zero(big)
            for u, c in coefficients:
                term = c
                for xi, e in zip(x, u):
                    if e:
                        term = term * xi ** e
                value = value + term
            counts[trace(value)] += 1
        return counts

    def _count_tables(self, f: FqPolynomial, big: FieldDesc, coefficients) -> List[int]:
        tables = field_tables(big)
        Q, order, n, p = big.size, tables.order, f.n, big.p

        groups: Dict[int, List[Tuple[Tuple[int, ...], int]]] = {}
        for u, c in coefficients:
            if not c.is_zero():
                groups.setdefault(u[-1], []).append((tuple(u[:-1]), int(tables.log[c.code])))
        top = max(groups) if groups else 0

        sentinel = (top + 1) * order
        extended = np.zeros(2 * sentinel + 1, dtype=np.int32)
        extended[:sentinel] = np.tile(tables.trace_of_exp, top + 1)
        column_logs = np.arange(order, dtype=np.int64)

        prefixes = Q ** (n - 1)
        rows = max(1, _BLOCK_CELLS // Q)
        blocks = [(s, min(s + rows, prefixes)) for s in range(0, prefixes, rows)]

        def count_block(block: Tuple[int, int]) -> np.ndarray:
            start, stop = block
            index = np.arange(start, stop, dtype=np.int64)
            coord_logs = [tables.log[(index // Q ** i) % Q] for i in range(n - 1)]
            grid = np.zeros((stop - start, order), dtype=np.int32)
            zero_column = np.zeros(stop - start, dtype=np.int32)
            for j, terms in groups.items():
                acc = np.zeros(stop - start, dtype=np.int64)
                for prefix, log_c in terms:
                    logs = np.full(stop - start, log_c, dtype=np.int64)
                    vanish = np.zeros(stop - start, dtype=bool)
                    for i, e in enumerate(prefix):
                        if e:
                            logs += e * coord_logs[i]
                            vanish |= coord_logs[i] < 0
                    codes = np.where(vanish, 0, tables.exp[logs % order])
                    acc = _add_codes(acc, codes, tables)
                base = np.where(acc == 0, sentinel, tables.log[acc])
                grid += extended[base[:, None] + j * column_logs[None, :]]
                if j == 0:
                    zero_column += extended[base]
            counts = np.bincount((grid % p).ravel(), minlength=p)
            counts += np.bincount(zero_column % p, minlength=p)
            return counts

        if self._threads > 1 and len(blocks) > 1:
            with ThreadPoolExecutor(max_workers=self._threads) as pool:
                partials = list(pool.map(count_block, blocks))
        else:
            partials = [count_block(b) for b in blocks]
        total = np.sum(partials, axis=0)
        return [int(x) for x in total]
