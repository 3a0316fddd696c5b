"""Command-line interface.

Exit codes form the contract shell pipelines branch on: 0 means compliant
(or plain success), 3 means the theory was proven in violation, 2 means a
verification failed, 1 means malformed input.  All reports are canonical
JSON on stdout with exact rational strings; ``--approx`` adds clearly
marked decimal renderings.  The environment variable SECONDLAW_LOG
(quiet, info, debug) controls stderr log verbosity and nothing else.
"""

from __future__ import annotations

import hashlib
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import click

from . import histories, serialize
from .separation import (
    Compliant,
    NotKelvinPlanck,
    Violated,
    analyze_directions,
    check_kelvin_planck,
    synthesize_cd_pair,
    verify_cd_pair,
    verify_violation,
)
from .ingest import derive_history, derive_process
from .serialize import SchemaError, dumps_canonical, load_json
from .theory import example_a, example_b

log = logging.getLogger("secondlaw")

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFY_FAILED = 2
EXIT_VIOLATED = 3


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


def _approx_table(table: dict[str, str]) -> dict[str, float]:
    return {k: float(Fraction(v)) for k, v in table.items()}


def _emit(payload, out: str | None) -> None:
    text = dumps_canonical(payload)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _fail_input(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_INPUT_ERROR)


@click.group()
def main() -> None:
    """Decide the Kelvin-Planck Second Law for finite theories, exactly."""
    level = os.environ.get("SECONDLAW_LOG", "quiet").lower()
    levels = {"quiet": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(
        stream=sys.stderr,
        level=levels.get(level, logging.WARNING),
        format="%(levelname)s %(message)s",
    )


_EXAMPLES = {
    "a": example_a,
    "b": example_b,
    "example-a": example_a,
    "example-b": example_b,
}


@main.command()
@click.argument("example")
@click.option("--n", "n_max", type=int, required=True, help="Truncation index N >= 1.")
@click.option("-o", "--out", type=click.Path(), default=None, help="Output file (default stdout).")
def generate(example: str, n_max: int, out: str | None) -> None:
    """Emit the truncated built-in family A or B as a theory file."""
    maker = _EXAMPLES.get(example.lower())
    if maker is None:
        _fail_input(f"unknown example {example!r}; choose A or B")
    if n_max < 1:
        _fail_input(f"--n must be >= 1, got {n_max}")
    theory = maker(n_max)
    _emit(serialize.theory_to_obj(theory), out)


def _check_one(path: str, gauge: str | None, approx: bool) -> tuple[dict, int]:
    theory = serialize.theory_from_obj(load_json(path), where=path)
    verdict = check_kelvin_planck(theory, gauge)
    report: dict = {
        "command": "check",
        "inputs": {path: _digest(path)},
    }
    if isinstance(verdict, Compliant):
        pair_obj = serialize.pair_to_obj(verdict.pair)
        margins = verify_cd_pair(theory, verdict.pair)
        report["verdict"] = "compliant"
        report["pair"] = pair_obj
        report["margins"] = serialize.margin_report_to_obj(margins)
        report["summary"] = (
            f"{path}: compliant; Clausius-Duhem pair synthesized over "
            f"{len(theory.space)} states, all {len(theory.processes)} margins nonnegative"
        )
        if approx:
            report["approx"] = {
                "note": "decimal renderings are not authoritative",
                "T": _approx_table(pair_obj["T"]),
                "eta": _approx_table(pair_obj["eta"]),
            }
        code = EXIT_OK
    else:
        assert isinstance(verdict, Violated)
        cert = verdict.certificate
        report["verdict"] = "violated"
        report["certificate"] = serialize.certificate_to_obj(cert)
        active = sum(1 for w in cert.weights if w)
        report["summary"] = (
            f"{path}: violated; {active} generator(s) combine into a forbidden "
            "cyclic process with pure heat absorption"
        )
        code = EXIT_VIOLATED
    report["exit_code"] = code
    log.info("%s", report["summary"])
    return report, code


@main.command()
@click.argument("theory_files", nargs=-1, required=True, type=click.Path())
@click.option("--gauge", default=None, help="State where eta is pinned to 0 (default: first state).")
@click.option("--jobs", type=int, default=1, help="Check several files concurrently.")
@click.option("--approx", is_flag=True, help="Add non-authoritative decimal renderings.")
def check(theory_files: tuple[str, ...], gauge: str | None, jobs: int, approx: bool) -> None:
    """Decide the Second Law for each theory file; certificates included."""
    results: list[tuple[dict, int] | SchemaError] = []
    if jobs > 1 and len(theory_files) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_check_one, f, gauge, approx) for f in theory_files]
            for fut in futures:
                try:
                    results.append(fut.result())
                except SchemaError as exc:
                    results.append(exc)
    else:
        for f in theory_files:
            try:
                results.append(_check_one(f, gauge, approx))
            except SchemaError as exc:
                results.append(exc)
    reports = []
    worst = EXIT_OK
    saw_error = False
    for res in results:
        if isinstance(res, SchemaError):
            click.echo(f"error: {res}", err=True)
            saw_error = True
            continue
        report, code = res
        reports.append(report)
        worst = max(worst, code)
    if reports:
        _emit(reports[0] if len(theory_files) == 1 else reports, None)
    sys.exit(EXIT_INPUT_ERROR if saw_error else worst)


@main.command()
@click.argument("theory_file", type=click.Path())
@click.option("--gauge", default=None, help="State where eta is pinned to 0 (default: first state).")
@click.option("--approx", is_flag=True, help="Add non-authoritative decimal renderings.")
def synthesize(theory_file: str, gauge: str | None, approx: bool) -> None:
    """Construct an entropy/temperature pair for a compliant theory."""
    try:
        theory = serialize.theory_from_obj(load_json(theory_file), where=theory_file)
        if gauge is not None and gauge not in theory.space:
            raise SchemaError(f"--gauge: unknown state {gauge!r}")
    except SchemaError as exc:
        _fail_input(str(exc))
    report: dict = {"command": "synthesize", "inputs": {theory_file: _digest(theory_file)}}
    try:
        pair = synthesize_cd_pair(theory, gauge)
    except NotKelvinPlanck as exc:
        report["verdict"] = "violated"
        report["certificate"] = serialize.certificate_to_obj(exc.certificate)
        report["summary"] = f"{theory_file}: no Clausius-Duhem pair exists; certificate attached"
        report["exit_code"] = EXIT_VIOLATED
        _emit(report, None)
        sys.exit(EXIT_VIOLATED)
    pair_obj = serialize.pair_to_obj(pair)
    report["verdict"] = "compliant"
    report["pair"] = pair_obj
    report["margins"] = serialize.margin_report_to_obj(verify_cd_pair(theory, pair))
    gauge_label = gauge if gauge is not None else theory.space.states[0]
    report["summary"] = f"{theory_file}: pair synthesized with eta({gauge_label}) = 0"
    if approx:
        report["approx"] = {
            "note": "decimal renderings are not authoritative",
            "T": _approx_table(pair_obj["T"]),
            "eta": _approx_table(pair_obj["eta"]),
        }
    report["exit_code"] = EXIT_OK
    _emit(report, None)


@main.command()
@click.argument("theory_file", type=click.Path())
@click.argument("payload_file", type=click.Path())
def verify(theory_file: str, payload_file: str) -> None:
    """Re-check a pair or violation certificate against a theory file."""
    try:
        theory = serialize.theory_from_obj(load_json(theory_file), where=theory_file)
        payload = load_json(payload_file)
        if not isinstance(payload, dict):
            raise SchemaError(f"{payload_file}: expected an object")
        if "pair" in payload or "certificate" in payload:
            payload = payload.get("pair", payload.get("certificate"))
        if "lambda" in payload:
            kind = "certificate"
            cert = serialize.certificate_from_obj(payload, theory, where=payload_file)
        elif "eta" in payload:
            kind = "pair"
            pair = serialize.pair_from_obj(payload, theory.space, where=payload_file)
        else:
            raise SchemaError(
                f"{payload_file}: neither a pair ('eta') nor a certificate ('lambda')"
            )
    except SchemaError as exc:
        _fail_input(str(exc))
    report: dict = {
        "command": "verify",
        "inputs": {
            theory_file: _digest(theory_file),
            payload_file: _digest(payload_file),
        },
        "payload_kind": kind,
    }
    if kind == "certificate":
        ok = verify_violation(theory, cert)
        report["passed"] = ok
        report["summary"] = (
            f"{payload_file}: violation certificate "
            + ("re-verifies exactly" if ok else "FAILED re-verification")
        )
    else:
        margins = verify_cd_pair(theory, pair)
        ok = margins.passed
        report["margins"] = serialize.margin_report_to_obj(margins)
        report["passed"] = ok
        report["summary"] = (
            f"{payload_file}: Clausius-Duhem pair "
            + ("passes every margin" if ok else "FAILED a margin or positivity check")
        )
    report["exit_code"] = EXIT_OK if ok else EXIT_VERIFY_FAILED
    _emit(report, None)
    sys.exit(report["exit_code"])


@main.command()
@click.argument("family_file", required=False, type=click.Path())
@click.option("--example", "example_name", default=None, help="Analyze built-in family A or B.")
@click.option("--n-max", type=int, default=None, help="Truncation for --example.")
@click.option("--approx", is_flag=True, help="Add non-authoritative decimal renderings.")
def analyze(family_file: str | None, example_name: str | None, n_max: int | None, approx: bool) -> None:
    """Report how close a process family drifts toward a forbidden direction."""
    inputs = {}
    try:
        if family_file is not None:
            theory = serialize.theory_from_obj(load_json(family_file), where=family_file)
            inputs[family_file] = _digest(family_file)
            source = family_file
        elif example_name is not None:
            maker = _EXAMPLES.get(example_name.lower())
            if maker is None:
                raise SchemaError(f"unknown example {example_name!r}; choose A or B")
            if n_max is None or n_max < 1:
                raise SchemaError("--example requires --n-max N with N >= 1")
            theory = maker(n_max)
            source = f"example-{example_name.upper()}(N={n_max})"
        else:
            raise SchemaError("give a family file or --example {A|B} --n-max N")
        if not theory.processes:
            raise SchemaError(f"{source}: the family is empty")
        try:
            direction = analyze_directions(list(theory.processes))
        except ValueError as exc:
            raise SchemaError(f"{source}: {exc}") from None
    except SchemaError as exc:
        _fail_input(str(exc))
    report: dict = {
        "command": "analyze",
        "inputs": inputs,
        "family": source,
        "distances": [
            {
                "process": p.id if p.id is not None else f"#{i}",
                "forbidden_distance": serialize.rational_str(d),
            }
            for i, (p, d) in enumerate(zip(theory.processes, direction.distances))
        ],
        "strictly_decreasing": direction.strictly_decreasing,
        "final_normalized": {
            "delta_m": serialize.measure_to_obj(direction.final_delta_m),
            "q": serialize.measure_to_obj(direction.final_q),
        },
        "nearest_forbidden": {
            "delta_m": {},
            "q": serialize.measure_to_obj(direction.nearest_forbidden),
        },
        "summary": (
            f"{source}: forbidden-distance "
            + ("strictly decreasing" if direction.strictly_decreasing else "not strictly decreasing")
            + f"; last distance {direction.distances[-1]}"
        ),
        "exit_code": EXIT_OK,
    }
    if approx:
        report["approx"] = {
            "note": "decimal renderings are not authoritative",
            "distances": [float(d) for d in direction.distances],
        }
    _emit(report, None)


@main.command()
@click.argument("record_file", type=click.Path())
@click.option("--space", "space_file", required=True, type=click.Path(), help="State space file.")
@click.option("--history", "as_history", is_flag=True, help="Emit the full cumulative history.")
@click.option("-o", "--out", type=click.Path(), default=None, help="Output file (default stdout).")
def ingest(record_file: str, space_file: str, as_history: bool, out: str | None) -> None:
    """Push a body-process record forward into a process or history."""
    try:
        rec = serialize.record_from_obj(load_json(record_file), where=record_file)
        space = serialize.space_from_obj(load_json(space_file), where=space_file)
        if as_history:
            payload = serialize.history_to_obj(derive_history(rec, space))
        else:
            obj = serialize.process_to_obj(derive_process(rec, space))
            payload = {**serialize.space_to_obj(space), **obj}
    except (SchemaError, KeyError, ValueError) as exc:
        _fail_input(str(exc))
    _emit(payload, out)


@main.group("history-ops")
def history_ops() -> None:
    """Operate on history files: restrict, compose, subdivide, combine."""


def _load_history(path: str) -> histories.ProcessHistory:
    return serialize.history_from_obj(load_json(path), where=path)


@history_ops.command("restrict")
@click.argument("history_file", type=click.Path())
@click.option("--from", "t_from", required=True, help="Start instant (on the grid).")
@click.option("--to", "t_to", required=True, help="End instant (on the grid).")
@click.option("-o", "--out", type=click.Path(), default=None)
def history_restrict(history_file: str, t_from: str, t_to: str, out: str | None) -> None:
    """Emit the sub-process between two on-grid instants."""
    try:
        h = _load_history(history_file)
        a = serialize.parse_rational(t_from, "--from")
        b = serialize.parse_rational(t_to, "--to")
        p = histories.restrict(h, a, b)
    except (SchemaError, ValueError) as exc:
        _fail_input(str(exc))
    _emit({**serialize.space_to_obj(h.space), **serialize.process_to_obj(p)}, out)


@history_ops.command("compose")
@click.argument("history_files", nargs=2, type=click.Path())
@click.option("-o", "--out", type=click.Path(), default=None)
def history_compose(history_files: tuple[str, str], out: str | None) -> None:
    """Simultaneous execution of two equal-duration histories."""
    try:
        h1, h2 = (_load_history(f) for f in history_files)
        combined = histories.parallel_compose(h1, h2)
    except (SchemaError, ValueError) as exc:
        _fail_input(str(exc))
    _emit(serialize.history_to_obj(combined), out)


@history_ops.command("subdivide")
@click.argument("history_file", type=click.Path())
@click.option("--n", "n", type=int, required=True, help="Number of simultaneous segments.")
@click.option("-o", "--out", type=click.Path(), default=None)
def history_subdivide(history_file: str, n: int, out: str | None) -> None:
    """Fold a history into n simultaneous segments of duration d/n."""
    try:
        h = histories.subdivide(_load_history(history_file), n)
    except (SchemaError, ValueError) as exc:
        _fail_input(str(exc))
    _emit(serialize.history_to_obj(h), out)


@history_ops.command("rational-sum")
@click.argument("history_files", nargs=2, type=click.Path())
@click.option("-o", "--out", type=click.Path(), default=None)
def history_rational_sum(history_files: tuple[str, str], out: str | None) -> None:
    """Sum two histories whose durations have a rational ratio."""
    try:
        h1, h2 = (_load_history(f) for f in history_files)
        endpoint, combined = histories.rational_sum(h1, h2)
    except (SchemaError, ValueError) as exc:
        _fail_input(str(exc))
    _emit(
        {
            "endpoint": serialize.process_to_obj(endpoint),
            "history": serialize.history_to_obj(combined),
        },
        out,
    )


@history_ops.command("conic-combination")
@click.argument("history_files", nargs=-1, required=True, type=click.Path())
@click.option("--alpha", "alphas", multiple=True, required=True, help="One positive rational per file.")
@click.option("-o", "--out", type=click.Path(), default=None)
def history_conic(history_files: tuple[str, ...], alphas: tuple[str, ...], out: str | None) -> None:
    """Realize sum(alpha_i * h_i) constructively on the trajectories."""
    try:
        if len(alphas) != len(history_files):
            raise SchemaError(
                f"{len(alphas)} --alpha values for {len(history_files)} history files"
            )
        items = []
        for raw, path in zip(alphas, history_files):
            items.append((serialize.parse_rational(raw, "--alpha"), _load_history(path)))
        endpoint, combined = histories.conic_combination(items)
    except (SchemaError, ValueError) as exc:
        _fail_input(str(exc))
    _emit(
        {
            "endpoint": serialize.process_to_obj(endpoint),
            "history": serialize.history_to_obj(combined),
        },
        out,
    )


if __name__ == "__main__":
    main()
