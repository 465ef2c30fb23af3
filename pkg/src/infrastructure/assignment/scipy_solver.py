# src/infrastructure/assignment/scipy_solver.py
import itertools
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from ...config.settings import settings
from ...domain.interfaces import IAssignmentSolver

logger = logging.getLogger(__name__)

Cost = Sequence[Sequence[Optional[int]]]


class AssignmentSolver(IAssignmentSolver):
    """Exact min-cost assignment; None marks a forbidden edge.

    Layers up to `exhaustive_size` rows are solved by enumerating permutations.
    Larger layers use scipy's linear_sum_assignment, and all optimal matchings are
    recovered by fixing rows one at a time and re-solving the remaining block.
    """

    def __init__(self, exhaustive_size: Optional[int] = None):
        self._exhaustive_size = settings.EXHAUSTIVE_ASSIGNMENT_SIZE if exhaustive_size is None else exhaustive_size

    def minimum(self, cost: Cost) -> Optional[int]:
        if len(cost) <= self._exhaustive_size:
            best, _ = self._exhaustive(cost)
            return best
        return self._solve(self._matrix(cost))

    def minimizers(self, cost: Cost) -> Tuple[Optional[int], List[Tuple[int, ...]]]:
        if len(cost) <= self._exhaustive_size:
            return self._exhaustive(cost)
        return self._enumerate(self._matrix(cost))

    @staticmethod
    def _exhaustive(cost: Cost) -> Tuple[Optional[int], List[Tuple[int, ...]]]:
        n = len(cost)
        best: Optional[int] = None
        argmin: List[Tuple[int, ...]] = []
        for perm in itertools.permutations(range(n)):
            total = 0
            for row, col in enumerate(perm):
                c = cost[row][col]
                if c is None:
                    break
                total += c
            else:
                if best is None or total < best:
                    best, argmin = total, [perm]
                elif total == best:
                    argmin.append(perm)
        return best, argmin

    @staticmethod
    def _matrix(cost: Cost) -> np.ndarray:
        return np.array([[np.inf if c is None else float(c) for c in row] for row in cost], dtype=np.float64)

    @staticmethod
    def _solve(matrix: np.ndarray) -> Optional[int]:
        if matrix.shape[0] == 0:
            return 0
        try:
            rows, cols = linear_sum_assignment(matrix)
        except ValueError:
            return None
        total = matrix[rows, cols].sum()
        return None if np.isinf(total) else int(round(total))

    def _enumerate(self, matrix: np.ndarray) -> Tuple[Optional[int], List[Tuple[int, ...]]]:
        n = matrix.shape[0]
        best = self._solve(matrix)
        if best is None:
            return None, []
        found: List[Tuple[int, ...]] = []

        def walk(row: int, free: List[int], spent: int, chosen: List[int]) -> None:
            if row == n:
                found.append(tuple(chosen))
                return
            for col in free:
                if np.isinf(matrix[row, col]):
                    continue
                step = spent + int(round(matrix[row, col]))
                rest = [c for c in free if c != col]
                tail = self._solve(matrix[np.ix_(np.arange(row + 1, n), np.array(rest, dtype=np.intp))])
                if tail is not None and step + tail == best:
                    walk(row + 1, rest, step, chosen + [col])

        walk(0, list(range(n)), 0, [])
        logger.debug(f"Assignment of size {n}: minimum {best}, {len(found)} optimal matchings")
        return best, found
