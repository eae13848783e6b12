from greenroute.commands.deps import EXIT_OK, get_instance, write_text
from greenroute.schemas.run_config import RunConfig
from greenroute.services.formulation.builders import build_model
from greenroute.services.lpexport.writer import export_lp


def cmd_export(config: RunConfig) -> int:
    instance = get_instance(config.instance_path)
    write_text(export_lp(build_model(instance, config.variant)), config.output_path)
    return EXIT_OK
