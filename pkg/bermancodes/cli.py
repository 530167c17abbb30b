"""Command line interface for Berman code construction, decoding, DFT checks and BEC sweeps."""
from __future__ import annotations

import json
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence

import click

from . import __version__, reporting
from .abelian import (
    GroupSpec,
    ZeroSet,
    code_from_zero_set,
    equivalence_check,
    validate_capacity_family_zero_set,
)
from .bec import DEFAULT_TRIALS, SimConfig, SimMode, exit_and_erasure_rates, parse_grid
from .codes import (
    CodeSpec,
    Family,
    encode as encode_message,
    generator_matrix,
    is_codeword,
    parameters,
    patterned_basis,
)
from .decoding import decode as decode_word
from .errors import BermanError
from .gf2 import BitMatrix, BitVector, row_space_equal
from .manifest import RunManifest, record_run, write_with_manifest
from .rates import RateModel, exact_rate, gaussian_rate_approx, rate_change_bounds, select_r_for_target_rate
from .symmetry import (
    DirectProductSubset,
    double_transitivity_necessary_check,
    orbit_lower_bound,
    puncture_code,
    punctured_spec,
    weight_class_orbit,
)

PROG_NAME = "berman"
SEED_ENV = "BERMAN_SEED"
DEFAULT_GRID = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1"


# ---------- helpers ----------

@contextmanager
def _validation() -> Iterator[None]:
    """Report library validation failures as usage errors."""
    try:
        yield
    except BermanError as exc:
        raise click.UsageError(str(exc)) from exc


def _sig(x: float) -> float:
    return float(f"{float(x):.6g}")


def _ints(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise click.BadParameter(f"expected comma separated integers, got {text!r}") from exc


def _emit(payload: Dict[str, Any], manifest: RunManifest, out: Optional[Path]) -> None:
    payload = dict(payload, manifest=manifest.stable())
    text = json.dumps(payload, sort_keys=True) + "\n"
    if out:
        write_with_manifest(text, out, manifest)
    else:
        click.echo(text, nl=False)


def _params(ctx: click.Context) -> Dict[str, Any]:
    return {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(ctx.params.items())}


def _rows(G: BitMatrix) -> List[str]:
    return [str(row) for row in G.iter_rows()]


def code_options(func):
    for option in reversed(
        [
            click.option("--family", type=click.Choice([f.value for f in Family]), required=True),
            click.option("--n", "n", type=int, required=True, help="Alphabet size of each coordinate."),
            click.option("--r", "r", type=int, required=True),
            click.option("--m", "m", type=int, required=True, help="Number of coordinates; length is n^m."),
        ]
    ):
        func = option(func)
    return func


def _out_option(func):
    return click.option("--out", type=click.Path(path_type=Path), help="Write to this file instead of stdout.")(func)


def _info_payload(spec: CodeSpec) -> Dict[str, Any]:
    params = parameters(spec)
    payload: Dict[str, Any] = {
        "family": spec.family.value,
        "n": spec.n,
        "r": spec.r,
        "m": spec.m,
        "label": spec.label,
        "length": params.length,
        "dimension": params.dimension,
        "dmin": params.min_distance,
        "rate": _sig(params.rate),
        "rate_exact": str(params.rate),
    }
    if 1 <= spec.r <= spec.m - 1:
        check = double_transitivity_necessary_check(spec)
        payload["double_transitivity"] = {"product": check.product, "bound": check.bound, "passes": check.passes}
    return payload


# ---------- commands ----------

@click.group()
@click.version_option(__version__, prog_name=PROG_NAME)
def cli() -> None:
    """Berman and dual Berman codes: construction, decoding, DFT checks and BEC simulation."""


@cli.command()
@code_options
@_out_option
@click.option("--show", is_flag=True, help="Also print a table on stderr.")
@click.pass_context
def info(ctx: click.Context, family: str, n: int, r: int, m: int, out: Optional[Path], show: bool) -> None:
    """Length, dimension, minimum distance and rate of a code."""
    with _validation():
        payload = _info_payload(CodeSpec(n, r, m, family))
    if show:
        reporting.display_parameters(payload)
    _emit(payload, RunManifest("info", _params(ctx)), out)


@cli.command()
@code_options
@click.option(
    "--basis",
    type=click.Choice(["natural", "patterned"]),
    default="natural",
    show_default=True,
    help="Recursive generator rows or the containment-pattern basis.",
)
@_out_option
@click.pass_context
def genmat(ctx: click.Context, family: str, n: int, r: int, m: int, basis: str, out: Optional[Path]) -> None:
    """Print a generator matrix as bitstrings in coordinate order."""
    with _validation():
        spec = CodeSpec(n, r, m, family)
        if basis == "natural":
            G = generator_matrix(spec)
        else:
            G = BitMatrix.from_rows(patterned_basis(spec), cols=spec.length)
    payload = {"label": spec.label, "basis": basis, "rows": G.rows, "cols": G.cols, "generator": _rows(G)}
    _emit(payload, RunManifest("genmat", _params(ctx)), out)


@cli.command()
@code_options
@click.option("--word", required=True, help="Message bitstring of length equal to the dimension.")
@_out_option
@click.pass_context
def encode(ctx: click.Context, family: str, n: int, r: int, m: int, word: str, out: Optional[Path]) -> None:
    """Encode a message with the generator matrix."""
    with _validation():
        spec = CodeSpec(n, r, m, family)
        codeword = encode_message(spec, BitVector.from_string(word))
    payload = {"label": spec.label, "message": word, "codeword": str(codeword)}
    _emit(payload, RunManifest("encode", _params(ctx)), out)


@cli.command()
@code_options
@click.option("--word", required=True, help="Received bitstring of length n^m.")
@_out_option
@click.pass_context
def decode(ctx: click.Context, family: str, n: int, r: int, m: int, word: str, out: Optional[Path]) -> None:
    """Run the recursive bounded-distance decoder on a received word."""
    with _validation():
        spec = CodeSpec(n, r, m, family)
        received = BitVector.from_string(word)
        result = decode_word(spec, received)
    payload = {
        "label": spec.label,
        "input": word,
        "codeword": str(result.codeword),
        "corrected_positions": sorted(result.corrected_positions),
        "is_codeword": is_codeword(spec, result.codeword),
    }
    _emit(payload, RunManifest("decode", _params(ctx)), out)


@cli.command()
@code_options
@click.option("--positions", default="", help="Comma separated positions K that are held fixed.")
@click.option("--values", default="", help="Comma separated values b taken on K.")
@_out_option
@click.pass_context
def puncture(
    ctx: click.Context, family: str, n: int, r: int, m: int, positions: str, values: str, out: Optional[Path]
) -> None:
    """Puncture a code onto {i : i_K = b} and compare with the predicted shorter code."""
    with _validation():
        spec = CodeSpec(n, r, m, family)
        H = DirectProductSubset(tuple(_ints(positions)), tuple(_ints(values)))
        target = punctured_spec(spec, H)
        G = puncture_code(spec, H)
        matches = row_space_equal(G, generator_matrix(target))
    payload = {
        "label": spec.label,
        "positions": list(H.K),
        "values": list(H.b),
        "punctured": target.label,
        "rows": G.rows,
        "cols": G.cols,
        "generator": _rows(G),
        "matches": matches,
    }
    _emit(payload, RunManifest("puncture", _params(ctx)), out)


@cli.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--tuple", "entries", required=True, help="Comma separated coordinate tuple, e.g. 1,0,2.")
@click.option("--abelian", is_flag=True, help="Report the weaker lower bound valid for abelian codes.")
@_out_option
@click.pass_context
def orbit(ctx: click.Context, n: int, m: int, entries: str, abelian: bool, out: Optional[Path]) -> None:
    """Weight class of a coordinate: a guaranteed subset of its automorphism orbit."""
    with _validation():
        i = tuple(_ints(entries))
        members = sorted(weight_class_orbit(i, n, m))
        w = sum(1 for x in i if x)
        bound = orbit_lower_bound(n, m, w, abelian=abelian)
    payload = {
        "tuple": list(i),
        "weight": w,
        "size": len(members),
        "lower_bound": bound,
        "members": [list(t) for t in members],
    }
    _emit(payload, RunManifest("orbit", _params(ctx)), out)


@cli.command()
@click.option("--family", type=click.Choice([f.value for f in Family]), default=Family.DUAL.value, show_default=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--r", "r", type=int, default=None, help="Code order; omit when only selecting by --target.")
@click.option("--m", "m", type=int, required=True)
@click.option("--target", type=float, default=None, help="Pick the r whose rate is closest to this value.")
@click.option("--k", "k", type=int, default=None, help="Also check the rate change from m to m+k.")
@click.option("--kappa", type=float, default=None, help="Berry-Esseen constant (default: Shevtsova-based).")
@_out_option
@click.pass_context
def rate(
    ctx: click.Context,
    family: str,
    n: int,
    r: Optional[int],
    m: int,
    target: Optional[float],
    k: Optional[int],
    kappa: Optional[float],
    out: Optional[Path],
) -> None:
    """Exact rate, Gaussian approximation, target-rate selection and rate-change bounds."""
    if r is None and target is None:
        raise click.UsageError("give --r, --target or both")
    payload: Dict[str, Any] = {"family": family, "n": n, "m": m}
    with _validation():
        model = RateModel(n, kappa)
        payload["kappa"] = _sig(model.kappa)
        if target is not None:
            selection = select_r_for_target_rate(n, m, target, family)
            payload["selection"] = {
                "target": target,
                "r": selection.r,
                "rate": _sig(selection.rate),
                "gaussian_r": selection.gaussian_r,
            }
        if r is not None:
            exact = exact_rate(n, r, m, family)
            approx = gaussian_rate_approx(n, r, m)
            if Family(family) is Family.BERMAN:
                approx = 1.0 - approx
            payload.update(r=r, rate=_sig(exact), rate_exact=str(exact), gaussian_approx=_sig(approx))
            if k is not None:
                report = rate_change_bounds(n, r, m, k, model)
                payload["rate_change"] = {
                    "k": k,
                    "dual_difference": _sig(report.dual_difference),
                    "berman_difference": _sig(report.berman_difference),
                    "dual_bound": _sig(report.dual_bound),
                    "berman_bound": _sig(report.berman_bound),
                    "nonnegative": report.nonnegative,
                    "within_bounds": report.within_bounds,
                }
    _emit(payload, RunManifest("rate", _params(ctx)), out)


@cli.command("dft-verify")
@click.option("--group", "group_text", required=True, help="Comma separated odd cyclic orders of G.")
@click.option("--m", "m", type=int, default=1, show_default=True)
@click.option("--r", "r", type=int, default=None, help="Check a single r; all r in [0, m] by default.")
@_out_option
@click.pass_context
def dft_verify(ctx: click.Context, group_text: str, m: int, r: Optional[int], out: Optional[Path]) -> None:
    """Check that weight-class zero-sets reproduce the Berman pair C_n(r,m), D_n(r,m)."""
    with _validation():
        group = GroupSpec.parse(group_text, m)
        orders = range(m + 1) if r is None else [r]
        results = []
        for rr in orders:
            report = equivalence_check(group, rr)
            results.append(
                {
                    "r": rr,
                    "dual_matches": report.dual_matches,
                    "berman_matches": report.berman_matches,
                    "complementary": report.complementary,
                }
            )
    payload = {
        "group": list(group.cyclic_orders),
        "m": m,
        "n": group.order,
        "results": results,
        "equivalent": all(x["dual_matches"] and x["berman_matches"] and x["complementary"] for x in results),
    }
    _emit(payload, RunManifest("dft-verify", _params(ctx)), out)


@cli.command("zeroset-check")
@click.option("--zero-set", "zero_set_path", type=click.Path(path_type=Path, exists=True), required=True)
@click.option("--show", is_flag=True, help="Also print a table on stderr.")
@_out_option
@click.pass_context
def zeroset_check(ctx: click.Context, zero_set_path: Path, show: bool, out: Optional[Path]) -> None:
    """Closure conditions of a zero-set and the dimension of its code."""
    with _validation():
        Z = ZeroSet.load(zero_set_path)
        report = validate_capacity_family_zero_set(Z)
        dimension = code_from_zero_set(Z).rows if report.doubling_closed else None
    payload = {
        "group": list(Z.group.cyclic_orders),
        "m": Z.group.m,
        "length": Z.group.size,
        "zero_set_size": len(Z),
        "dimension": dimension,
        "doubling_closed": report.doubling_closed,
        "pi_closed": list(report.pi_closed),
        "position_closed": report.position_closed,
        "holds": report.holds,
    }
    if show:
        reporting.display_zero_set_report(payload)
    _emit(payload, RunManifest("zeroset-check", _params(ctx)), out)


@cli.command()
@click.option("--family", type=click.Choice([f.value for f in Family]), default=None)
@click.option("--n", "n", type=int, default=None)
@click.option("--r", "r", type=int, default=None)
@click.option("--m", "m", type=int, default=None)
@click.option("--zero-set", "zero_set_path", type=click.Path(path_type=Path, exists=True), default=None,
              help="Simulate the abelian code of this zero-set instead of a Berman code.")
@click.option("--epsilon-grid", default=DEFAULT_GRID, show_default=True, help="Comma separated erasure probabilities.")
@click.option("--trials", type=int, default=DEFAULT_TRIALS, show_default=True)
@click.option("--seed", type=int, envvar=SEED_ENV, default=0, show_default=True, help=f"Falls back to ${SEED_ENV}.")
@click.option("--threads", type=int, default=1, show_default=True, help="Worker threads; results do not depend on it.")
@click.option("--mode", type=click.Choice([x.value for x in SimMode]), default=SimMode.BITMAP_AT_ZERO.value,
              show_default=True)
@click.option("--show", is_flag=True, help="Also print a table on stderr.")
@click.option("--log", type=click.Path(path_type=Path), default=None, help="Append the run manifest to this CSV.")
@_out_option
@click.pass_context
def simulate(
    ctx: click.Context,
    family: Optional[str],
    n: Optional[int],
    r: Optional[int],
    m: Optional[int],
    zero_set_path: Optional[Path],
    epsilon_grid: str,
    trials: int,
    seed: int,
    threads: int,
    mode: str,
    show: bool,
    log: Optional[Path],
    out: Optional[Path],
) -> None:
    """Monte Carlo EXIT function and erasure rates on the binary erasure channel (CSV)."""
    with _validation():
        if zero_set_path is not None:
            G = code_from_zero_set(ZeroSet.load(zero_set_path))
        elif None in (family, n, r, m):
            raise click.UsageError("give --family, --n, --r and --m, or --zero-set")
        else:
            G = generator_matrix(CodeSpec(n, r, m, family))
        cfg = SimConfig(parse_grid(epsilon_grid), trials, seed, SimMode(mode), threads)
        result = exit_and_erasure_rates(G, cfg)

    text = result.to_csv()
    manifest = RunManifest("simulate", _params(ctx), seed=seed)
    if out:
        write_with_manifest(text, out, manifest)
    else:
        click.echo(text, nl=False)
    if show:
        reporting.display_simulation(result.to_frame())
    if log:
        record_run(manifest, log)


# ---------- entry points ----------

def run_command(argv: Sequence[str]) -> int:
    """Run one command; 0 on success, 1 on usage or validation errors, 2 on internal failure."""
    try:
        rv = cli.main(args=list(argv), prog_name=PROG_NAME, standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except BermanError as exc:
        click.echo(f"Error: {exc}", err=True)
        return 1
    except Exception as exc:  # noqa: BLE001
        click.echo(f"Internal error: {exc!r}", err=True)
        return 2
    return rv if isinstance(rv, int) else 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":  # pragma: no cover
    main()
