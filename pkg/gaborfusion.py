# gaborfusion.py

"""
Entry point for the gaborfusion command line.

Sets up logging, loads settings, builds the command group and loads every
command module from the 'commands' directory.
"""

import importlib
import logging
from pathlib import Path

import click

from errors import GaborFusionError
from utilities import Config

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)
logger = logging.getLogger("gaborfusion")

COMMAND_DIRECTORY = Path(__file__).resolve().parent / "commands"


def set_log_level(level: str) -> None:
    """Apply a level to every logger of the package, including the per-module ones."""
    logging.getLogger().setLevel(level)
    logger.setLevel(level)
    for name in list(logging.root.manager.loggerDict):
        if name.startswith("gaborfusion."):
            logging.getLogger(name).setLevel(level)


class FrameToolGroup(click.Group):
    """Command group that reports library errors and exits with their codes."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except GaborFusionError as error:
            logger.error(f"{type(error).__name__}: {error}")
            click.echo(f"error: {error}", err=True)
            ctx.exit(error.exit_code)


@click.group(cls=FrameToolGroup)
@click.option("--verbose", is_flag=True, help="Log debug detail to stderr.")
@click.option("--settings", default="gaborfusion.json", show_default=True, help="Settings JSON file.")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, settings: str) -> None:
    """Build Gabor fusion frames, verify them, and recover signals modulo phase."""
    config = Config.reload_config(settings)
    set_log_level("DEBUG" if verbose else str(config.get("log_level", "INFO")).upper())
    ctx.obj = {"config": config}


def load_commands(group: click.Group) -> None:
    """Load every command module in the 'commands' directory and let it register its commands."""
    for command_file in sorted(COMMAND_DIRECTORY.glob("*.py")):
        if command_file.name.startswith("_"):
            continue  # Skip any files that start with an underscore
        module_name = f"commands.{command_file.stem}"
        try:
            module = importlib.import_module(module_name)
            module.setup(group)
            logger.debug(f"Loaded command module: {module_name}")
        except Exception:
            logger.exception(f"Failed to load command module {module_name}.")


load_commands(cli)


def main() -> None:
    cli(prog_name="gaborfusion")


if __name__ == "__main__":
    main()
