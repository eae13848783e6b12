from greenroute.commands.deps import EXIT_OK, EXIT_VIOLATIONS, get_instance, write_document
from greenroute.core.logging import get_logger
from greenroute.schemas.reports import CheckReportFile, InstanceSummary, SolutionFile
from greenroute.schemas.run_config import RunConfig
from greenroute.services.validate.checker import check_solution

logger = get_logger(__name__)


def cmd_validate(config: RunConfig) -> int:
    """Validate the instance and, when given, check a solution file against it."""
    instance = get_instance(config.instance_path)
    if config.solution_path is None:
        write_document(InstanceSummary.from_instance(instance), config.output_path)
        return EXIT_OK

    solution_file = SolutionFile.model_validate_json(config.solution_path.read_text(encoding="utf-8"))
    report = check_solution(instance, solution_file.to_solution(instance), config.variant)
    write_document(CheckReportFile.from_report(instance, report), config.output_path)
    if report.passed:
        return EXIT_OK
    logger.warning(f"{len(report.violations)} violated rows: {', '.join(report.violated_names()[:5])}")
    return EXIT_VIOLATIONS
