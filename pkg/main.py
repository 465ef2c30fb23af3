# main.py - command-line entry point
import logging
import sys
from typing import List, Optional

from src.config.settings import settings
from src.domain.exceptions import BudgetExceededError, ParameterError, SuiteFailure
from src.domain.interfaces import IAssignmentSolver, IPointCounter, IReportRepository
from src.infrastructure.assignment.scipy_solver import AssignmentSolver
from src.infrastructure.enumeration.point_counter import VectorizedPointCounter
from src.infrastructure.persistence.report_repository import FileReportRepository
from src.application.services.hasse_service import HasseService
from src.application.services.newton_service import NewtonService
from src.application.services.premium_service import PremiumService
from src.application.services.sampling_service import SamplingService
from src.application.use_cases.verification_suites import VerificationSuites
from src.presentation.cli import CommandLineHandlers, build_parser

EXIT_PARAMETER = 2
EXIT_BUDGET = 3
EXIT_SUITE = 4


def configure_logging():
    """Configures application-wide logging."""
    logging.basicConfig(
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        level=settings.LOG_LEVEL
    )
    logging.getLogger("matplotlib").setLevel(logging.WARNING)


def initialize_components(budget: Optional[int] = None, threads: Optional[int] = None) -> CommandLineHandlers:
    """Wire repositories, backends, services and use cases."""
    logger = logging.getLogger(__name__)

    # 1. Backends
    counter: IPointCounter = VectorizedPointCounter(budget=budget, threads=threads)
    solver: IAssignmentSolver = AssignmentSolver()
    repository: IReportRepository = FileReportRepository()
    logger.debug("Backends initialized.")

    # 2. Services
    premium_service = PremiumService(solver=solver)
    hasse_service = HasseService(premium_service=premium_service, solver=solver)
    newton_service = NewtonService(counter=counter)
    sampling_service = SamplingService(newton_service=newton_service, premium_service=premium_service,
                                       threads=threads)
    logger.debug("Services initialized.")

    # 3. Use cases
    suites = VerificationSuites(premium_service=premium_service, hasse_service=hasse_service,
                                newton_service=newton_service, sampling_service=sampling_service)

    return CommandLineHandlers(premium_service=premium_service, hasse_service=hasse_service,
                               newton_service=newton_service, sampling_service=sampling_service,
                               suites=suites, repository=repository)


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    logger = logging.getLogger(__name__)
    args = build_parser().parse_args(argv)
    try:
        handlers = initialize_components(budget=args.budget, threads=args.threads)
        return handlers.run(args)
    except ParameterError as e:
        logger.error(f"Parameter error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAMETER
    except BudgetExceededError as e:
        logger.error(f"Budget exceeded: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except SuiteFailure as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SUITE
    except Exception as e:
        logger.critical(f"Unhandled exception: {e}", exc_info=True)
        raise


if __name__ == "__main__":
    sys.exit(main())
