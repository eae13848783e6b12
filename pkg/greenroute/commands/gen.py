from greenroute.commands.deps import EXIT_OK, write_text
from greenroute.schemas.run_config import RunConfig
from greenroute.services.generate.random_instance import dump_instance_file, generate_instance_file


def cmd_gen(config: RunConfig) -> int:
    write_text(dump_instance_file(generate_instance_file(config.seed)), config.output_path)
    return EXIT_OK
