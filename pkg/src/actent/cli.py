"""Command-line harness.

Subcommands: measure, classify, scan-ghz, scan-w, haar-scatter,
simulate-optics, plot.  Exit codes: 0 success, 1 usage or parse error,
2 numerical failure.  Batch outputs are CSV with a #-prefixed JSON
metadata line; single-state reports are JSON.
"""

from __future__ import annotations

import dataclasses
import json
import math
import sys

import click

from . import __version__
from .batch import INDETERMINATE_LABEL, haar_rows, w2_scan_rows
from .classify import (
    DEFAULT_ABE_TOL,
    DEFAULT_TAU_TOL,
    IndeterminateClassError,
    classify,
)
from .core import DEFAULT_RANK_TOL, PSDViolationError, PureTripartiteState, StateValidationError
from .families import acin_state, ghz_one_param, haar_random, w_three_param, w_two_param, SchmidtCoefficients
from .measures import MonogamyViolationError, abe, binary_entropy, w2_analytic
from .optics import build_ghz_circuit, build_w_circuit, estimate_abe_from_circuit, run as run_circuit
from .optimize import DEFAULT_SETTINGS
from .reporting import RunMetadata, write_csv

FAMILIES = ("ghz", "w2", "w3", "acin", "haar", "amplitudes")
_PARAM_COUNT = {"ghz": 1, "w2": 2, "w3": 4, "acin": 6, "haar": 1, "amplitudes": 8}


def _parse_state(family: str, params: tuple[str, ...]):
    family = family.lower()
    if family not in FAMILIES:
        raise click.UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    expected = _PARAM_COUNT[family]
    if len(params) != expected:
        raise click.UsageError(f"family {family!r} takes {expected} parameter(s), got {len(params)}")
    spec = {"family": family, "parameters": list(params)}
    if family == "haar":
        try:
            seed = int(params[0])
        except ValueError as exc:
            raise click.UsageError(f"haar seed must be an integer: {exc}") from exc
        return haar_random(seed), spec, seed
    if family == "amplitudes":
        try:
            amps = [complex(tok.replace("i", "j")) for tok in params]
        except ValueError as exc:
            raise click.UsageError(f"bad amplitude: {exc}") from exc
        return PureTripartiteState(amps), spec, None
    try:
        values = [float(tok) for tok in params]
    except ValueError as exc:
        raise click.UsageError(f"bad parameter: {exc}") from exc
    if family == "ghz":
        return ghz_one_param(values[0]), spec, None
    if family == "w2":
        return w_two_param(values[0], values[1]), spec, None
    if family == "w3":
        return w_three_param(*values), spec, None
    return acin_state(SchmidtCoefficients(*values)), spec, None


def _report_payload(report, label: str, partition) -> dict:
    return {
        "e_f": report.e_f,
        "e_a": report.e_a,
        "abe": report.abe,
        "delta_s": report.delta_s,
        "tangle": report.tangle,
        "tangle_raw": report.tangle_raw,
        "e_f_projective": report.e_f_projective,
        "ranks": {"r_a": report.ranks[0], "r_b": report.ranks[1], "r_c": report.ranks[2]},
        "argmax_basis": {"theta": report.argmax_basis[0], "phi": report.argmax_basis[1]},
        "argmin_basis": {"theta": report.argmin_basis[0], "phi": report.argmin_basis[1]},
        "optimizer_evals": report.optimizer_evals,
        "converged": report.converged,
        "assisting": report.assisting,
        "class": label,
        "partition": partition,
    }


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        click.echo(text, nl=not text.endswith("\n"))
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _tolerance_options(fn):
    fn = click.option("--tol-abe", type=float, default=DEFAULT_ABE_TOL, show_default=True,
                      help="Activated-entanglement threshold for the W/GHZ split.")(fn)
    fn = click.option("--tol-tangle", type=float, default=DEFAULT_TAU_TOL, show_default=True,
                      help="Residual-tangle threshold for the W/GHZ split.")(fn)
    fn = click.option("--tol-rank", type=float, default=DEFAULT_RANK_TOL, show_default=True,
                      help="Relative eigenvalue threshold for marginal ranks.")(fn)
    return fn


def _metadata(command: str, schema: str, seed=None, tolerances=None, **parameters) -> RunMetadata:
    return RunMetadata(
        command=command,
        schema=f"actent.{schema}",
        seed=seed,
        tolerances=tolerances or {},
        optimizer=dataclasses.asdict(DEFAULT_SETTINGS),
        parameters=parameters,
    )


@click.group(name="actent")
@click.version_option(version=__version__)
def cli():
    """Activated bipartite entanglement: measures, classification, circuit simulation."""


@cli.command()
@click.argument("family")
@click.argument("params", nargs=-1)
@click.option("--assist", type=click.Choice(["C", "A", "B"]), default="C", show_default=True,
              help="Qubit measured to assist the kept pair.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output path (default stdout).")
@_tolerance_options
def measure(family, params, assist, fmt, out, tol_abe, tol_tangle, tol_rank):
    """Full measure report for one state, e.g. `measure ghz 0.70710678`."""
    state, spec, seed = _parse_state(family, params)
    report = abe(state, assisting=assist, rank_tol=tol_rank)
    try:
        result = classify(state, abe_tol=tol_abe, tau_tol=tol_tangle, rank_tol=tol_rank, report=report)
        label, partition = result.label, result.partition
    except IndeterminateClassError:
        label, partition = INDETERMINATE_LABEL, None
    tolerances = {"abe": tol_abe, "tangle": tol_tangle, "rank": tol_rank}
    metadata = _metadata("measure", "measure", seed=seed, tolerances=tolerances, state=spec)
    if fmt == "json":
        payload = {"metadata": dataclasses.asdict(metadata), "report": _report_payload(report, label, partition)}
        _emit(json.dumps(payload, indent=2, sort_keys=True), out)
    else:
        columns = ["abe", "delta_s", "tangle", "r_a", "r_b", "r_c", "class",
                   "e_f", "e_a", "argmax_theta", "argmax_phi"]
        row = (report.abe, report.delta_s, report.tangle, *report.ranks,
               label if partition is None else f"Biseparable({partition})",
               report.e_f, report.e_a, *report.argmax_basis)
        from .reporting import render_csv

        _emit(render_csv(metadata, columns, [row]), out)


@cli.command("classify")
@click.argument("family")
@click.argument("params", nargs=-1)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_tolerance_options
def classify_cmd(family, params, out, tol_abe, tol_tangle, tol_rank):
    """Class decision for one state; indeterminate evidence exits with code 2."""
    state, spec, seed = _parse_state(family, params)
    result = classify(state, abe_tol=tol_abe, tau_tol=tol_tangle, rank_tol=tol_rank)
    tolerances = {"abe": tol_abe, "tangle": tol_tangle, "rank": tol_rank}
    metadata = _metadata("classify", "classify", seed=seed, tolerances=tolerances, state=spec)
    payload = {
        "metadata": dataclasses.asdict(metadata),
        "class": result.label,
        "partition": result.partition,
        "evidence": dataclasses.asdict(result.evidence),
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True), out)


@cli.command("haar-scatter")
@click.option("--n", type=int, required=True, help="Number of sampled states.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--workers", type=int, default=1, show_default=True)
@_tolerance_options
def haar_scatter(n, seed, out, workers, tol_abe, tol_tangle, tol_rank):
    """Measure and classify n Haar-random states; row i uses seed+i."""
    if n < 1:
        raise click.UsageError("--n must be at least 1")
    rows = haar_rows(n, seed, abe_tol=tol_abe, tau_tol=tol_tangle, rank_tol=tol_rank, workers=workers)
    tolerances = {"abe": tol_abe, "tangle": tol_tangle, "rank": tol_rank}
    metadata = _metadata("haar-scatter", "haar-scatter", seed=seed, tolerances=tolerances,
                         n=n, row_seed="seed+index")
    columns = ["index", "seed", "abe", "delta_s", "tangle", "r_a", "r_b", "r_c",
               "class", "e_f", "e_a", "argmax_theta", "argmax_phi"]
    with open(out, "w", newline="") as fh:
        write_csv(fh, metadata, columns, rows)


@cli.command("scan-ghz")
@click.option("--steps", type=int, required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def scan_ghz(steps, out):
    """Variational and closed-form measures along the one-parameter GHZ curve."""
    if steps < 2:
        raise click.UsageError("--steps must be at least 2")
    rows = []
    for i in range(steps):
        l1 = i / (steps - 1)
        report = abe(ghz_one_param(l1))
        analytic = binary_entropy(l1 * l1)
        rows.append((i, l1, math.sqrt(max(0.0, 1 - l1 * l1)), report.e_f, report.e_a,
                     report.abe, report.delta_s, analytic, analytic, analytic))
    metadata = _metadata("scan-ghz", "scan-ghz", steps=steps)
    columns = ["index", "lambda1", "lambda2", "e_f", "e_a", "abe", "delta_s",
               "e_a_analytic", "abe_analytic", "delta_s_analytic"]
    with open(out, "w", newline="") as fh:
        write_csv(fh, metadata, columns, rows)


@cli.command("scan-w")
@click.option("--steps", type=int, required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--workers", type=int, default=1, show_default=True)
def scan_w(steps, out, workers):
    """Variational and closed-form measures over the two-parameter W simplex.

    The variational columns assist with the qubit carrying the dependent
    amplitude, matching the closed forms' pair convention (see metadata).
    """
    if steps < 2:
        raise click.UsageError("--steps must be at least 2")
    rows = w2_scan_rows(steps, workers=workers)
    metadata = _metadata("scan-w", "scan-w", steps=steps,
                         variational_assisting="B", formula_arguments="kept-pair excitation amplitudes")
    columns = ["index", "lambda0", "lambda3", "lambda2", "e_f", "e_a", "abe", "delta_s",
               "e_f_analytic", "e_a_analytic", "abe_analytic", "delta_s_analytic"]
    with open(out, "w", newline="") as fh:
        write_csv(fh, metadata, columns, rows)


@cli.command("simulate-optics")
@click.argument("circuit", type=click.Choice(["ghz", "w"]))
@click.option("--theta", type=float, default=None, help="GHZ wave-plate angle in degrees.")
@click.option("--alpha", type=float, default=None, help="First W wave-plate angle in degrees.")
@click.option("--beta", type=float, default=None, help="Second W wave-plate angle in degrees.")
@click.option("--trials", type=int, default=1, show_default=True)
@click.option("--error-halfwidth", type=float, default=1.0, show_default=True,
              help="Uniform wave-plate angle error in degrees; 0 disables perturbation.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--perturb-all/--perturb-named", default=True, show_default=True,
              help="Perturb every wave plate or only the parameter-setting ones.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
def simulate_optics(circuit, theta, alpha, beta, trials, error_halfwidth, seed, perturb_all, out):
    """Monte-Carlo circuit runs; trial t uses seed+t."""
    if trials < 1:
        raise click.UsageError("--trials must be at least 1")
    if circuit == "ghz":
        if theta is None:
            raise click.UsageError("ghz circuit needs --theta")
        build = lambda s: build_ghz_circuit(theta, seed=s, error_halfwidth_deg=error_halfwidth,
                                            perturb_all=perturb_all)
        angle_labels = ["theta"]
        params = {"theta_deg": theta}
    else:
        if alpha is None or beta is None:
            raise click.UsageError("w circuit needs --alpha and --beta")
        build = lambda s: build_w_circuit(alpha, beta, seed=s, error_halfwidth_deg=error_halfwidth,
                                          perturb_all=perturb_all)
        angle_labels = ["alpha", "hwp45", "beta"]
        params = {"alpha_deg": alpha, "beta_deg": beta}
    perturb = error_halfwidth > 0
    ideal = run_circuit(build(seed), perturb=False).state
    rows = []
    for t in range(trials):
        estimate = estimate_abe_from_circuit(build(seed + t), perturb=perturb)
        used = {draw.label: draw.used_deg for draw in estimate.run.angles}
        rows.append((t, seed + t, *(used[lbl] for lbl in angle_labels),
                     estimate.sigma_z_entropy, estimate.sigma_x_entropy,
                     estimate.estimate, estimate.run.state.fidelity(ideal)))
    metadata = _metadata("simulate-optics", f"simulate-optics-{circuit}", seed=seed,
                         circuit=circuit, trials=trials, error_halfwidth_deg=error_halfwidth,
                         perturb_all=perturb_all, **params)
    columns = ["trial", "seed", *(f"{lbl}_deg" for lbl in angle_labels),
               "sigma_z_entropy", "sigma_x_entropy", "abe_estimate", "fidelity"]
    with open(out, "w", newline="") as fh:
        write_csv(fh, metadata, columns, rows)


@cli.command("plot")
@click.argument("in_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--kind", type=click.Choice(["scatter", "curve"]), required=True)
def plot(in_csv, out, kind):
    """Render a CSV produced by a batch command to a static SVG."""
    from .plots import render

    metadata = _metadata("plot", f"plot-{kind}", source=in_csv)
    try:
        render(in_csv, out, kind, metadata)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Abort:
        return 130
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except StateValidationError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except (PSDViolationError, MonogamyViolationError, IndeterminateClassError) as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
