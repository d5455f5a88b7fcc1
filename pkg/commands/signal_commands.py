# commands/signal_commands.py

import logging
from typing import Optional

import click

from phase_retrieval import measure as measure_signal
from phase_retrieval import mod_phase_distance, reconstruct as reconstruct_signal
from utilities import (
    dump_measurements,
    dump_signal,
    load_measurements,
    load_signal,
    read_frame,
    read_text,
    write_output,
)

# Configure logging for this module
logger = logging.getLogger("gaborfusion.signal_commands")
logger.setLevel(logging.INFO)


@click.command()
@click.option("--frame", "frame_path", required=True, help="Frame file.")
@click.option("--signal", "signal_path", required=True, help="Signal file.")
@click.option("--out", type=click.File("w"), default=None, help="Measurement file to write.")
def measure(frame_path: str, signal_path: str, out) -> None:
    """Write the magnitudes ν‖P x‖ of a signal, one row per lattice point."""
    frame = read_frame(frame_path)
    x = load_signal(read_text(signal_path, "signal"))
    measurements = measure_signal(x, frame)
    write_output(dump_measurements(measurements), out)
    logger.info(f"Measured a signal in C^{x.size} against {len(frame)} subspaces.")


@click.command()
@click.option("--frame", "frame_path", required=True, help="Frame file.")
@click.option("--measurements", "measurements_path", required=True, help="Measurement file.")
@click.option("--truth", "truth_path", default=None, help="Signal file to compare the estimate against.")
@click.option("--out", type=click.File("w"), default=None, help="Signal file to write (default stdout).")
@click.pass_context
def reconstruct(
    ctx: click.Context, frame_path: str, measurements_path: str, truth_path: Optional[str], out
) -> None:
    """Recover a signal modulo global phase from its fusion frame magnitudes."""
    settings = ctx.obj["config"]
    frame = read_frame(frame_path)
    measurements = load_measurements(read_text(measurements_path, "measurement"))
    measurements = measurements.reorder(frame.labels())
    estimate = reconstruct_signal(measurements, frame, residual_rtol=float(settings["residual_rtol"]))
    write_output(dump_signal(estimate.representative), out)
    if truth_path is not None:
        truth = load_signal(read_text(truth_path, "signal"))
        click.echo(f"mod-phase distance: {mod_phase_distance(truth, estimate.representative):.3e}")


def setup(cli: click.Group) -> None:
    cli.add_command(measure)
    cli.add_command(reconstruct)
