import itertools

import numpy as np
import pytest

from src.infrastructure.assignment.scipy_solver import AssignmentSolver


def test_known_matrix():
    cost = [[4, 1, 3], [2, 0, 5], [3, 2, 2]]
    best, perms = AssignmentSolver().minimizers(cost)
    assert best == 5
    assert perms == [(1, 0, 2)]


def test_forbidden_edges():
    solver = AssignmentSolver()
    cost = [[None, 1], [2, None]]
    assert solver.minimizers(cost) == (3, [(1, 0)])
    assert solver.minimum([[None, None], [1, 2]]) is None
    assert solver.minimizers([[None, None], [1, 2]]) == (None, [])
    scipy_only = AssignmentSolver(exhaustive_size=0)
    assert scipy_only.minimum([[None, None], [1, 2]]) is None
    assert scipy_only.minimizers(cost) == (3, [(1, 0)])


def test_empty_matrix():
    assert AssignmentSolver().minimizers([]) == (0, [()])


@pytest.mark.parametrize("size", range(1, 9))
def test_scipy_path_agrees_with_enumeration(size):
    rng = np.random.Generator(np.random.Philox(size))
    exhaustive, scipy_only = AssignmentSolver(exhaustive_size=10), AssignmentSolver(exhaustive_size=0)
    for _ in range(20):
        values = rng.integers(0, 4, size=(size, size))
        forbidden = rng.random((size, size)) < 0.15
        cost = [[None if forbidden[i, j] else int(values[i, j]) for j in range(size)] for i in range(size)]
        best, perms = exhaustive.minimizers(cost)
        other_best, other_perms = scipy_only.minimizers(cost)
        assert best == other_best == scipy_only.minimum(cost)
        assert sorted(perms) == sorted(other_perms)


@pytest.mark.parametrize("size", [6, 7, 8])
def test_default_switch_matches_brute_force(size):
    rng = np.random.Generator(np.random.Philox(100 + size))
    solver = AssignmentSolver()
    for _ in range(5):
        cost = rng.integers(0, 3, size=(size, size)).tolist()
        totals = {perm: sum(cost[i][perm[i]] for i in range(size)) for perm in itertools.permutations(range(size))}
        best = min(totals.values())
        found_best, perms = solver.minimizers(cost)
        assert found_best == best
        assert sorted(perms) == sorted(perm for perm, total in totals.items() if total == best)
