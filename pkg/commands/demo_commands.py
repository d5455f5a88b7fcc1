# commands/demo_commands.py

import logging
from typing import Optional

import click
import numpy as np

from fusion import build_gabor_fusion, is_tight
from phase_retrieval import (
    divisibility_condition,
    injectivity_certificate,
    measure,
    mod_phase_distance,
    reconstruct,
)

# Configure logging for this module
logger = logging.getLogger("gaborfusion.demo_commands")
logger.setLevel(logging.INFO)

RECOVERY_TOL = 1e-6


def demo_windows(n: int, support: int) -> np.ndarray:
    """Two orthonormal window rows: an indicator of ``support`` positions and a delta off that support.

    For N = 7 with three positions the indicator sits on the difference set {1, 2, 4} and the
    delta on 3; otherwise the indicator covers 1..support and the delta sits on 0.
    """
    windows = np.zeros((2, n), dtype=np.complex128)
    if (n, support) == (7, 3):
        positions, delta = [1, 2, 4], 3
    else:
        positions, delta = list(range(1, support + 1)), 0
    windows[0, positions] = 1 / np.sqrt(support)
    windows[1, delta] = 1.0
    return windows


def random_signal(rng: np.random.Generator, n: int) -> np.ndarray:
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2)


@click.command()
@click.option("--seed", type=int, default=None, help="Random seed (default from settings).")
@click.option("--n", "n", type=int, default=7, show_default=True, help="Ambient dimension N.")
@click.option("--support", type=int, default=3, show_default=True, help="Indicator window support size.")
@click.option("--trials", type=int, default=5, show_default=True, help="Number of random signals.")
@click.pass_context
def demo(ctx: click.Context, seed: Optional[int], n: int, support: int, trials: int) -> None:
    """Build a two-row Gabor fusion frame and recover random signals from their magnitudes."""
    settings = ctx.obj["config"]
    seed = int(settings["seed"]) if seed is None else seed
    if not 0 < support < n:
        raise click.BadParameter(f"need 0 < support < N, got support={support}, N={n}")
    if trials < 1:
        raise click.BadParameter("need at least one trial", param_hint="--trials")

    click.echo(f"seed = {seed}")
    if not divisibility_condition(n, support):
        click.echo(f"condition({n},{support}) fails")
        ctx.exit(3)

    frame = build_gabor_fusion(demo_windows(n, support), 1.0)
    constant = is_tight(frame)
    certificate = injectivity_certificate(frame)
    click.echo(f"frame: {len(frame)} subspaces of dimension 2 in C^{n}")
    if constant is None:
        click.echo("not tight")
        ctx.exit(1)
    click.echo(f"tight, A = {constant:.12g} (expected {frame.expected_constant:.12g})")
    click.echo(f"certificate rank {certificate.rank}/{certificate.full_rank} ({certificate.verdict})")
    if not certificate.certified:
        ctx.exit(1)

    rng = np.random.default_rng(seed)
    worst = 0.0
    recovered = 0
    for trial in range(1, trials + 1):
        x = random_signal(rng, n)
        estimate = reconstruct(measure(x, frame), frame)
        distance = mod_phase_distance(x, estimate.representative) / np.linalg.norm(x)
        worst = max(worst, distance)
        recovered += distance <= RECOVERY_TOL
        click.echo(f"trial {trial}: relative mod-phase distance {distance:.3e}")

    logger.info(f"Demo finished with worst relative distance {worst:.3e}")
    click.echo(f"recovered {recovered}/{trials}")
    if worst > RECOVERY_TOL:
        ctx.exit(1)


def setup(cli: click.Group) -> None:
    cli.add_command(demo)
