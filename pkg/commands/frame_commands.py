# commands/frame_commands.py

import logging
from typing import Optional

import click
import numpy as np

from fusion import FusionFrame, GaborFusionFrame, build_gabor_fusion, frame_bounds, is_tight
from phase_retrieval import divisibility_condition, injectivity_certificate
from utilities import dump_frame, load_build_config, read_frame, write_output

# Configure logging for this module
logger = logging.getLogger("gaborfusion.frame_commands")
logger.setLevel(logging.INFO)


def window_support(frame: FusionFrame) -> Optional[int]:
    """Support size of the first window row, when the frame has one."""
    if not isinstance(frame, GaborFusionFrame):
        return None
    return int(np.count_nonzero(np.abs(frame.window[0]) > 0))


def condition_line(frame: FusionFrame) -> str:
    n = frame.ambient_dim
    support = window_support(frame)
    if support is None or not 0 < support < n:
        return "condition: n/a"
    return f"condition({n},{support}) = {str(divisibility_condition(n, support)).lower()}"


@click.command()
@click.option("--config", "config_path", required=True, help="Build configuration JSON file.")
@click.option("--out", type=click.File("w"), default=None, help="Frame file to write (default stdout).")
@click.option("--tol", type=float, default=None, help="Tolerance for the construction hypotheses.")
@click.pass_context
def build(ctx: click.Context, config_path: str, out, tol: Optional[float]) -> None:
    """Build a Gabor fusion frame from a configuration file and write the frame file."""
    settings = ctx.obj["config"]
    tol = settings["hypothesis_tol"] if tol is None else tol
    config = load_build_config(config_path)
    frame = build_gabor_fusion(config.windows, config.tight_bound, config.lattice, tol=tol)
    write_output(dump_frame(frame), out)
    logger.info(f"Wrote frame with {len(frame)} subspaces in C^{frame.ambient_dim}.")


@click.command()
@click.option("--frame", "frame_path", required=True, help="Frame file to verify.")
@click.option("--tol", type=float, default=None, help="Relative tolerance for the tightness check.")
@click.pass_context
def verify(ctx: click.Context, frame_path: str, tol: Optional[float]) -> None:
    """Report frame bounds, tightness, the injectivity certificate and the divisibility condition."""
    settings = ctx.obj["config"]
    tol = settings["tol"] if tol is None else tol
    frame = read_frame(frame_path)
    bounds = frame_bounds(frame, tol)
    constant = is_tight(frame, tol)
    certificate = injectivity_certificate(frame)

    click.echo(f"subspaces: {len(frame)} in C^{frame.ambient_dim}")
    if bounds.is_fusion_frame:
        click.echo(f"frame bounds: A = {bounds.lower:.12g}, B = {bounds.upper:.12g}")
    else:
        click.echo(f"frame bounds: A = 0, B = {bounds.upper:.12g} (not a fusion frame)")
    click.echo("not tight" if constant is None else f"tight, A = {constant:.12g}")
    click.echo(f"certificate rank {certificate.rank}/{certificate.full_rank} ({certificate.verdict})")
    click.echo(condition_line(frame))
    if constant is None:
        ctx.exit(1)


def setup(cli: click.Group) -> None:
    cli.add_command(build)
    cli.add_command(verify)
