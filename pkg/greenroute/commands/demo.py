from greenroute.commands.deps import EXIT_OK, get_instance, write_document
from greenroute.core.logging import get_logger
from greenroute.schemas.reports import DefectReportFile
from greenroute.schemas.run_config import RunConfig
from greenroute.services.validate.defects import demonstrate_defects

logger = get_logger(__name__)


def cmd_demo(config: RunConfig) -> int:
    """Report both defects of the original model on one instance."""
    instance = get_instance(config.instance_path)
    report = demonstrate_defects(instance, budget=config.budget, threads=config.threads)
    logger.info(
        f"{len(report.error1)} structural defects; "
        f"symmetry gap {'absent' if report.error2 is None else report.error2.gap}"
    )
    write_document(DefectReportFile.from_report(instance, report), config.output_path)
    return EXIT_OK
