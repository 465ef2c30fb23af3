# tests/conftest.py
import pytest

from src.application.services.hasse_service import HasseService
from src.application.services.newton_service import NewtonService
from src.application.services.premium_service import PremiumService
from src.application.services.sampling_service import SamplingService
from src.application.use_cases.verification_suites import VerificationSuites
from src.infrastructure.assignment.scipy_solver import AssignmentSolver
from src.infrastructure.enumeration.point_counter import VectorizedPointCounter


@pytest.fixture(scope="session")
def solver():
    return AssignmentSolver()


@pytest.fixture(scope="session")
def counter():
    return VectorizedPointCounter(budget=500_000_000, threads=1)


@pytest.fixture(scope="session")
def premium(solver):
    return PremiumService(solver=solver)


@pytest.fixture(scope="session")
def hasse(premium, solver):
    return HasseService(premium_service=premium, solver=solver)


@pytest.fixture(scope="session")
def newton(counter):
    return NewtonService(counter=counter)


@pytest.fixture(scope="session")
def sampling(newton, premium):
    return SamplingService(newton_service=newton, premium_service=premium, retry_cap=1000, threads=1)


@pytest.fixture(scope="session")
def suites(premium, hasse, newton, sampling):
    return VerificationSuites(premium_service=premium, hasse_service=hasse,
                              newton_service=newton, sampling_service=sampling)
