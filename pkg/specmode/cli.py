"""
Command line front end.

    specmode phard {exact,iid,mc,bound-purity,bound-fidelity}
    specmode figure {purity,fidelity,region}
    specmode simulate {ideal,pure,mixed,hom}

Every command reads an optional JSON config (--config) and then applies the
flags on top. Exit codes: 0 ok, 2 bad config, 3 over budget.
"""

import functools
import json
import logging
import sys

import click

from specmode import report
from specmode.config import RunConfig
from specmode.errors import BudgetExceeded, ConfigError, SpecModeError
from specmode.hardness import bounds
from specmode.hardness.instances import DEFAULT_BUDGET, HardnessQuery
from specmode.hardness.phard import (
    p_hard_exact,
    p_hard_iid_exact,
    p_hard_monte_carlo,
)
from specmode.photonics import fock, spectral_sim
from specmode.spectral import MixtureWeights, PhotonSource, Pure, SpectralAmplitudes
from specmode.wavepackets import FunctionBasis, WavepacketSpec, decompose

logger = logging.getLogger(__name__)

EXIT_CONFIG = 2
EXIT_BUDGET = 3
DEFAULT_SAMPLES = 10**6
# Command-specific flags handed to the command as keyword arguments
EXTRA_FLAGS = ("sweep", "unitary", "oracle")


def run_options(default_format):
    """Flags shared by every leaf command. Unset flags stay None and don't
    override the config file."""

    def decorator(func):
        options = [
            click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="JSON config file."),
            click.option("--out", "out", type=click.Path(dir_okay=False), help="Output path, stdout if omitted."),
            click.option("--format", "fmt", type=click.Choice(["csv", "json"]), help="Output format (default {}).".format(default_format)),
            click.option("--seed", type=click.IntRange(0, 2**64 - 1), help="Seed for random draws."),
            click.option("--samples", type=click.IntRange(1), help="Monte-Carlo sample count."),
            click.option("--n", "n", type=click.IntRange(1), help="Number of photons."),
            click.option("--n-hard", "n_hard", type=click.IntRange(1), help="Hardness threshold."),
            click.option("--epsilon", type=float, help="Threshold for p_hard > epsilon."),
            click.option("--purity", type=float, help="Single photon purity P."),
            click.option("--fmin", "f_min", type=float, help="Worst-case pairwise fidelity."),
            click.option("--m", "m", type=click.IntRange(1), help="Number of spatial modes."),
            click.option("--budget", type=click.IntRange(1), help="Enumeration budget."),
            click.option("--steps", type=click.IntRange(1), help="Grid points per axis."),
        ]
        for option in reversed(options):
            func = option(func)

        @functools.wraps(func)
        def wrapper(config_path, out, fmt, **flags):
            try:
                extras = {name: flags.pop(name) for name in EXTRA_FLAGS if name in flags}
                config = RunConfig.load(config_path, flags)
                if fmt is not None:
                    config = config.merged({"format": fmt})
                text = func(config, **extras)
                _emit(text, out)
            except BudgetExceeded as e:
                click.echo("budget error: {}".format(e), err=True)
                sys.exit(EXIT_BUDGET)
            except (SpecModeError, ValueError, KeyError, TypeError) as e:
                click.echo("config error: {}".format(e), err=True)
                sys.exit(EXIT_CONFIG)

        return wrapper

    return decorator


def _emit(text, out):
    if out is None:
        click.echo(text, nl=False)
    else:
        report.write_atomic(out, text)
        logger.info("Wrote %s", out)


def _format(config, default):
    return config.get("format", default)


# Photon lists


def _construction(config):
    name = config.get("construction")
    n = config.require("n")
    if name == "identical":
        return [Pure(SpectralAmplitudes([1.0])) for _ in range(n)]
    if name == "distinguishable":
        sources = []
        for j in range(n):
            coeffs = [0.0] * n
            coeffs[j] = 1.0
            sources.append(Pure(SpectralAmplitudes(coeffs)))
        return sources
    if name == "worst_case":
        return bounds.worst_case_pure_sources(config.require("f_min"), n)
    if name == "best_case":
        return bounds.best_case_pure_sources(config.require("f_min"), n)
    if name == "maximally_mixed":
        return bounds.maximally_mixed_sources(config.require("b"), n)
    raise ConfigError("Unknown construction '{}'".format(name))


def photons_from_config(config):
    """
    Photons come from one of: an explicit "photons" list of source objects,
    "wavepackets" decomposed onto "basis", "weights" shared by n identical
    mixed photons, or a named "construction".
    """
    if "photons" in config:
        return [PhotonSource.from_dict(p) for p in config.get("photons")]
    if "wavepackets" in config:
        basis = FunctionBasis.from_dict(config.require("basis"))
        sources = []
        for spec in config.get("wavepackets"):
            amplitudes, residual = decompose(WavepacketSpec.from_dict(spec), basis)
            logger.info("Decomposed wavepacket with residual %g", residual)
            sources.append(Pure(amplitudes))
        return sources
    if "weights" in config:
        return bounds.iid_mixed_sources(config.get("weights"), config.require("n"))
    if "construction" in config:
        return _construction(config)
    raise ConfigError("No photons given: need photons, wavepackets, weights or construction")


def query_from_config(config):
    return HardnessQuery(
        photons_from_config(config),
        config.require("n_hard"),
        config.require("epsilon"),
    )


def _hardness_output(config, result, q):
    data = report.hardness_report(
        result,
        n=q.n,
        n_hard=q.n_hard,
        epsilon=q.epsilon,
        exceeds_epsilon=result.p_hard > q.epsilon,
    )
    if _format(config, "json") == "csv":
        return report.hardness_csv(data)
    return report.json_text(data)


def _bound_output(config, kind, parameter, value, n, n_hard):
    data = {
        "lower_bound": value,
        "bound": kind,
        kind: parameter,
        "n": n,
        "n_hard": n_hard,
        "disclaimer": report.DISCLAIMER,
    }
    if _format(config, "json") == "csv":
        return report.hardness_csv(data)
    return report.json_text(data)


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log debug messages.")
@click.option("--log-file", type=click.Path(dir_okay=False), help="Log to a file instead of stderr.")
def main(verbose, log_file):
    """Boson-sampling with spectrally impure and partially distinguishable photons."""
    level = logging.DEBUG if verbose else logging.WARNING
    fmt = "%(asctime)s %(name)s %(levelname)s %(message)s"
    if log_file is None:
        logging.basicConfig(level=level, format=fmt, stream=sys.stderr)
    else:
        logging.basicConfig(level=level, format=fmt, filename=log_file)


@main.group()
def phard():
    """Probability of sampling a hard instance."""


@phard.command("exact")
@run_options("json")
def phard_exact(config):
    """Enumerate every instance vector."""
    q = query_from_config(config)
    return _hardness_output(config, p_hard_exact(q, config.get("budget", DEFAULT_BUDGET)), q)


@phard.command("iid")
@run_options("json")
def phard_iid(config):
    """Closed form for identical mixed photons."""
    if "weights" in config:
        weights = MixtureWeights(config.get("weights"))
    else:
        weights = MixtureWeights.uniform(config.require("b"))
    n = config.require("n")
    q = HardnessQuery(bounds.iid_mixed_sources(weights, n), config.require("n_hard"), config.require("epsilon"))
    result = p_hard_iid_exact(weights.size, n, q.n_hard, weights)
    return _hardness_output(config, result, q)


@phard.command("mc")
@run_options("json")
def phard_mc(config):
    """Monte-Carlo estimate over sampled instance vectors."""
    q = query_from_config(config)
    result = p_hard_monte_carlo(q, config.get("samples", DEFAULT_SAMPLES), config.get("seed", 0))
    return _hardness_output(config, result, q)


@phard.command("bound-purity")
@run_options("json")
def phard_bound_purity(config):
    """Binomial lower bound for identical, maximally mixed photons."""
    purity, n, n_hard = config.require("purity", "n", "n_hard")
    value = bounds.p_hard_lower_bound_mixed(purity, n, n_hard)
    return _bound_output(config, "purity", purity, value, n, n_hard)


@phard.command("bound-fidelity")
@run_options("json")
def phard_bound_fidelity(config):
    """Binomial lower bound from the worst pairwise fidelity."""
    f_min, n, n_hard = config.require("f_min", "n", "n_hard")
    value = bounds.p_hard_lower_bound_fidelity(f_min, n, n_hard)
    return _bound_output(config, "f_min", f_min, value, n, n_hard)


@main.group()
def figure():
    """Plot-ready grids of the analytic bounds."""


def _surface(config, bound, column):
    n_hard = config.require("n_hard")
    ns = config.integer_range("n_min", "n_max", 1, 20)
    grid = config.grid("p_min", "p_max", 0.0, 1.0)
    rows = []
    for n in ns:
        for p in grid:
            # n_hard > n rows are legitimately zero, not an error
            value = bounds.binomial_tail(p, n, n_hard)
            rows.append([n, p, value])
    logger.info("%s surface: %d rows", bound, len(rows))
    return report.csv_text(["n", column, "bound"], rows)


@figure.command("purity")
@run_options("csv")
def figure_purity(config):
    """Lower bound over (n, P) for maximally mixed photons."""
    return _surface(config, "purity", "P")


@figure.command("fidelity")
@run_options("csv")
def figure_fidelity(config):
    """Lower bound over (n, F_min) for pure photons."""
    return _surface(config, "fidelity", "F_min")


@figure.command("region")
@click.option("--sweep", type=click.Choice(["n", "n_hard"]), default=None, help="Axis swept against F_min.")
@run_options("csv")
def figure_region(config, sweep=None):
    """Where the combined inequality clears epsilon."""
    epsilon = config.require("epsilon")
    sweep = sweep or config.get("sweep", "n_hard")
    grid = config.grid("f_min_start", "f_min_stop", 0.0, 1.0)
    rows = []
    if sweep == "n_hard":
        n = config.require("n")
        for n_hard in config.integer_range("n_hard_min", "n_hard_max", 2, n - 1):
            for point in bounds.inequality_region(grid, n, n_hard, epsilon):
                rows.append([point.f_min, n_hard, point.lower_bound, point.in_region])
    elif sweep == "n":
        n_hard = config.require("n_hard")
        for n in config.integer_range("n_min", "n_max", n_hard + 1, 20):
            for point in bounds.inequality_region(grid, n, n_hard, epsilon):
                rows.append([point.f_min, n, point.lower_bound, point.in_region])
    else:
        raise ConfigError("sweep must be n or n_hard")
    return report.csv_text(["F_min", sweep, "bound", "in_region"], rows)


@main.group()
def simulate():
    """Exact linear-optics simulation."""


def _unitary(config, m):
    path = config.get("unitary")
    if path is not None:
        try:
            with open(path) as f:
                U = fock.UnitaryMatrix.from_dict(json.load(f))
        except (OSError, ValueError) as e:
            raise ConfigError("Can't read unitary {}: {}".format(path, e))
        if U.m != m:
            raise ConfigError("Unitary has {} modes, expected {}".format(U.m, m))
        return U
    return fock.haar_random_unitary(m, config.get("seed", 0))


def _modes(config, n):
    # Boson-sampling wants m = O(n^2); any m >= n works
    m = config.get("m", n * n)
    if m < n:
        raise ConfigError("{} modes can't hold {} photons".format(m, n))
    return m


def _distribution_output(config, distribution):
    header, rows = report.distribution_rows(distribution)
    if _format(config, "csv") == "json":
        return report.json_text({"m": distribution.m, "n": distribution.n, "header": header, "rows": rows})
    return report.csv_text(header, rows)


@simulate.command("ideal")
@click.option("--unitary", "unitary", type=click.Path(exists=True, dir_okay=False), help="Unitary JSON; Haar random from --seed otherwise.")
@run_options("csv")
def simulate_ideal(config, unitary=None):
    """Identical photons in the first n modes."""
    if unitary is not None:
        config = config.merged({"unitary": unitary})
    n = config.require("n")
    m = _modes(config, n)
    U = _unitary(config, m)
    return _distribution_output(config, fock.output_distribution(U, spectral_sim.default_input(m, n)))


@simulate.command("pure")
@click.option("--unitary", "unitary", type=click.Path(exists=True, dir_okay=False), help="Unitary JSON; Haar random from --seed otherwise.")
@run_options("csv")
def simulate_pure(config, unitary=None):
    """Pure photons with arbitrary spectra, enlarged-space simulation."""
    if unitary is not None:
        config = config.merged({"unitary": unitary})
    photons = photons_from_config(config)
    U = _unitary(config, _modes(config, len(photons)))
    return _distribution_output(config, spectral_sim.spatial_distribution_pure(U, photons))


@simulate.command("mixed")
@click.option("--unitary", "unitary", type=click.Path(exists=True, dir_okay=False), help="Unitary JSON; Haar random from --seed otherwise.")
@click.option("--oracle", is_flag=True, default=False, help="Also run the enlarged-space oracle and report the deviation.")
@run_options("csv")
def simulate_mixed(config, unitary=None, oracle=False):
    """Mixed photons as a mixture over instance vectors."""
    if unitary is not None:
        config = config.merged({"unitary": unitary})
    photons = photons_from_config(config)
    U = _unitary(config, _modes(config, len(photons)))
    distribution = spectral_sim.spatial_distribution_mixed(U, photons)
    if oracle:
        dephased = spectral_sim.spatial_distribution_dephased(U, photons)
        click.echo(
            "max abs deviation from enlarged-space oracle: {:.17g}".format(
                distribution.max_abs_deviation(dephased)
            ),
            err=True,
        )
    return _distribution_output(config, distribution)


@simulate.command("hom")
@run_options("json")
def simulate_hom(config):
    """Coincidence probability of two photons on a balanced beamsplitter."""
    f = config.require("f_min")
    if not 0 <= f <= 1:
        raise ConfigError("Fidelity must lie in [0, 1]")
    coincidence = spectral_sim.hom_coincidence(f)
    reference = (1 - f) / 2
    data = {"fidelity": f, "coincidence": coincidence, "reference": reference}
    logger.info("HOM coincidence %g, reference %g", coincidence, reference)
    if _format(config, "json") == "csv":
        return report.csv_text(list(data), [list(data.values())])
    return report.json_text(data)


if __name__ == "__main__":
    main()
