"""JSON interchange for every on-disk object the tool reads or writes.

All numbers travel as exact rational strings "p/q" (integers may appear
as bare "p", and JSON integers are accepted); floats are rejected because
they cannot round-trip exactly.  Measures serialize as objects mapping
state label to rational string, with zero components omitted.  Emission
is canonical: sorted keys, fixed indentation, no trailing whitespace, so
byte-identical inputs give byte-identical outputs.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .histories import ProcessHistory
from .ingest import BodyProcessRecord
from .measures import SignedMeasure, StateSpace, UnknownState, zero
from .separation import ClausiusDuhemPair, MarginReport, ViolationCertificate
from .theory import Process, TheorySpec


class SchemaError(ValueError):
    """Malformed input document; the message names the offending field."""


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{where}: not a rational string: {value!r} ({exc})") from None
    if isinstance(value, float):
        raise SchemaError(
            f"{where}: floats are not exact; write the value as a rational string"
        )
    raise SchemaError(f"{where}: expected a rational, got {type(value).__name__}")


def rational_str(x: Fraction) -> str:
    return str(x)


def _expect(obj: Any, typ: type, where: str) -> Any:
    if not isinstance(obj, typ):
        raise SchemaError(f"{where}: expected {typ.__name__}, got {type(obj).__name__}")
    return obj


def measure_to_obj(m: SignedMeasure) -> dict[str, str]:
    return {
        label: rational_str(v)
        for label, v in zip(m.space.states, m.values)
        if v != 0
    }


def measure_from_obj(obj: Any, space: StateSpace, where: str) -> SignedMeasure:
    _expect(obj, dict, where)
    values = [Fraction(0)] * len(space)
    for label, raw in obj.items():
        try:
            idx = space.index(label)
        except UnknownState:
            raise SchemaError(f"{where}: unknown state label {label!r}") from None
        values[idx] = parse_rational(raw, f"{where}[{label!r}]")
    return SignedMeasure(space, tuple(values))


def space_to_obj(space: StateSpace) -> dict[str, Any]:
    obj: dict[str, Any] = {"states": list(space.states)}
    if space.coords is not None:
        obj["coordinates"] = {
            label: rational_str(c) for label, c in zip(space.states, space.coords)
        }
    return obj


def space_from_obj(obj: Any, where: str = "space") -> StateSpace:
    _expect(obj, dict, where)
    if "states" not in obj:
        raise SchemaError(f"{where}: missing required field 'states'")
    raw_states = _expect(obj["states"], list, f"{where}.states")
    states = []
    for i, s in enumerate(raw_states):
        states.append(_expect(s, str, f"{where}.states[{i}]"))
    coords = None
    if "coordinates" in obj:
        table = _expect(obj["coordinates"], dict, f"{where}.coordinates")
        missing = [s for s in states if s not in table]
        if missing:
            raise SchemaError(f"{where}.coordinates: missing entry for state {missing[0]!r}")
        coords = tuple(parse_rational(table[s], f"{where}.coordinates[{s!r}]") for s in states)
    try:
        return StateSpace(tuple(states), coords)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def process_to_obj(p: Process) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "delta_m": measure_to_obj(p.delta_m),
        "q": measure_to_obj(p.q),
    }
    if p.id is not None:
        obj["id"] = p.id
    return obj


def process_from_obj(obj: Any, space: StateSpace, where: str) -> Process:
    _expect(obj, dict, where)
    for field in ("delta_m", "q"):
        if field not in obj:
            raise SchemaError(f"{where}: missing required field {field!r}")
    pid = obj.get("id")
    if pid is not None:
        _expect(pid, str, f"{where}.id")
    try:
        return Process(
            measure_from_obj(obj["delta_m"], space, f"{where}.delta_m"),
            measure_from_obj(obj["q"], space, f"{where}.q"),
            id=pid,
        )
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def theory_to_obj(theory: TheorySpec) -> dict[str, Any]:
    obj = space_to_obj(theory.space)
    obj["processes"] = [process_to_obj(p) for p in theory.processes]
    return obj


def theory_from_obj(obj: Any, where: str = "theory") -> TheorySpec:
    space = space_from_obj(obj, where)
    raw = obj.get("processes", [])
    _expect(raw, list, f"{where}.processes")
    procs = tuple(
        process_from_obj(p, space, f"{where}.processes[{i}]") for i, p in enumerate(raw)
    )
    try:
        return TheorySpec(space, procs)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def history_to_obj(h: ProcessHistory) -> dict[str, Any]:
    obj = space_to_obj(h.space)
    obj["duration"] = rational_str(h.duration)
    obj["samples"] = [
        {
            "t": rational_str(t),
            "delta_m": measure_to_obj(dm),
            "q": measure_to_obj(qq),
        }
        for t, dm, qq in zip(h.times, h.delta_m, h.q)
    ]
    return obj


def history_from_obj(obj: Any, where: str = "history") -> ProcessHistory:
    _expect(obj, dict, where)
    if "samples" not in obj:
        raise SchemaError(f"{where}: missing required field 'samples'")
    samples = _expect(obj["samples"], list, f"{where}.samples")
    if "states" in obj:
        space = space_from_obj(obj, where)
    else:
        labels: set[str] = set()
        for i, s in enumerate(samples):
            _expect(s, dict, f"{where}.samples[{i}]")
            for field in ("delta_m", "q"):
                labels |= set(_expect(s.get(field, {}), dict, f"{where}.samples[{i}].{field}"))
        if not labels:
            raise SchemaError(f"{where}: no 'states' field and no labels to infer a space from")
        space = StateSpace(tuple(sorted(labels)))
    times, dm, qq = [], [], []
    for i, s in enumerate(samples):
        here = f"{where}.samples[{i}]"
        _expect(s, dict, here)
        if "t" not in s:
            raise SchemaError(f"{here}: missing required field 't'")
        times.append(parse_rational(s["t"], f"{here}.t"))
        dm.append(measure_from_obj(s.get("delta_m", {}), space, f"{here}.delta_m"))
        qq.append(measure_from_obj(s.get("q", {}), space, f"{here}.q"))
    try:
        h = ProcessHistory(space, tuple(times), tuple(dm), tuple(qq))
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None
    if "duration" in obj:
        declared = parse_rational(obj["duration"], f"{where}.duration")
        if declared != h.duration:
            raise SchemaError(
                f"{where}: declared duration {declared} but samples end at {h.duration}"
            )
    return h


def record_to_obj(rec: BodyProcessRecord) -> dict[str, Any]:
    return {
        "points": [
            {"id": pid, "mass": rational_str(m)}
            for pid, m in zip(rec.point_ids, rec.masses)
        ],
        "times": [rational_str(t) for t in rec.times],
        "states": {
            pid: list(row) for pid, row in zip(rec.point_ids, rec.states)
        },
        "heat": {
            pid: [rational_str(h) for h in row]
            for pid, row in zip(rec.point_ids, rec.heat)
        },
    }


def record_from_obj(obj: Any, where: str = "record") -> BodyProcessRecord:
    _expect(obj, dict, where)
    for field in ("points", "times", "states", "heat"):
        if field not in obj:
            raise SchemaError(f"{where}: missing required field {field!r}")
    raw_points = _expect(obj["points"], list, f"{where}.points")
    ids, masses = [], []
    for i, entry in enumerate(raw_points):
        _expect(entry, dict, f"{where}.points[{i}]")
        if "id" not in entry or "mass" not in entry:
            raise SchemaError(f"{where}.points[{i}]: needs 'id' and 'mass'")
        ids.append(_expect(entry["id"], str, f"{where}.points[{i}].id"))
        masses.append(parse_rational(entry["mass"], f"{where}.points[{i}].mass"))
    times = [
        parse_rational(t, f"{where}.times[{i}]")
        for i, t in enumerate(_expect(obj["times"], list, f"{where}.times"))
    ]
    state_table = _expect(obj["states"], dict, f"{where}.states")
    heat_table = _expect(obj["heat"], dict, f"{where}.heat")
    states, heat = [], []
    for pid in ids:
        if pid not in state_table:
            raise SchemaError(f"{where}.states: missing entry for point {pid!r}")
        if pid not in heat_table:
            raise SchemaError(f"{where}.heat: missing entry for point {pid!r}")
        row = _expect(state_table[pid], list, f"{where}.states[{pid!r}]")
        states.append(tuple(_expect(s, str, f"{where}.states[{pid!r}][{k}]") for k, s in enumerate(row)))
        hrow = _expect(heat_table[pid], list, f"{where}.heat[{pid!r}]")
        heat.append(tuple(parse_rational(hh, f"{where}.heat[{pid!r}][{k}]") for k, hh in enumerate(hrow)))
    try:
        return BodyProcessRecord(
            point_ids=tuple(ids),
            masses=tuple(masses),
            times=tuple(times),
            states=tuple(states),
            heat=tuple(heat),
        )
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def pair_to_obj(pair: ClausiusDuhemPair) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "eta": {
            label: rational_str(e) for label, e in zip(pair.space.states, pair.eta)
        },
        "beta": {
            label: rational_str(b) for label, b in zip(pair.space.states, pair.beta)
        },
    }
    if pair.beta_positive():  # T is derived display data; beta is authoritative
        obj["T"] = {
            label: rational_str(t)
            for label, t in zip(pair.space.states, pair.temperature)
        }
    return obj


def pair_from_obj(obj: Any, space: StateSpace, where: str = "pair") -> ClausiusDuhemPair:
    _expect(obj, dict, where)
    if "eta" not in obj:
        raise SchemaError(f"{where}: missing required field 'eta'")
    if "beta" not in obj and "T" not in obj:
        raise SchemaError(f"{where}: needs 'beta' (coldness) or 'T' (temperature)")
    eta_table = _expect(obj["eta"], dict, f"{where}.eta")
    eta = []
    for label in space.states:
        if label not in eta_table:
            raise SchemaError(f"{where}.eta: missing entry for state {label!r}")
        eta.append(parse_rational(eta_table[label], f"{where}.eta[{label!r}]"))
    if "beta" in obj:
        beta_table = _expect(obj["beta"], dict, f"{where}.beta")
        beta = []
        for label in space.states:
            if label not in beta_table:
                raise SchemaError(f"{where}.beta: missing entry for state {label!r}")
            beta.append(parse_rational(beta_table[label], f"{where}.beta[{label!r}]"))
    else:
        t_table = _expect(obj["T"], dict, f"{where}.T")
        beta = []
        for label in space.states:
            if label not in t_table:
                raise SchemaError(f"{where}.T: missing entry for state {label!r}")
            t_val = parse_rational(t_table[label], f"{where}.T[{label!r}]")
            if t_val == 0:
                raise SchemaError(f"{where}.T[{label!r}]: temperature cannot be zero")
            beta.append(1 / t_val)
    try:
        return ClausiusDuhemPair(space, tuple(eta), tuple(beta))
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def certificate_to_obj(cert: ViolationCertificate) -> dict[str, Any]:
    return {
        "lambda": [rational_str(w) for w in cert.weights],
        "witness": {
            "delta_m": measure_to_obj(cert.witness.delta_m),
            "q": measure_to_obj(cert.witness.q),
        },
    }


def certificate_from_obj(
    obj: Any, theory: TheorySpec, where: str = "certificate"
) -> ViolationCertificate:
    _expect(obj, dict, where)
    if "lambda" not in obj:
        raise SchemaError(f"{where}: missing required field 'lambda'")
    raw = _expect(obj["lambda"], list, f"{where}.lambda")
    if len(raw) != len(theory.processes):
        raise SchemaError(
            f"{where}.lambda: {len(raw)} weights for {len(theory.processes)} generators"
        )
    weights = tuple(parse_rational(w, f"{where}.lambda[{i}]") for i, w in enumerate(raw))
    if "witness" in obj:
        wobj = _expect(obj["witness"], dict, f"{where}.witness")
        dm = measure_from_obj(wobj.get("delta_m", {}), theory.space, f"{where}.witness.delta_m")
        qq = measure_from_obj(wobj.get("q", {}), theory.space, f"{where}.witness.q")
    else:
        dm = zero(theory.space)
        qq = zero(theory.space)
        for w, p in zip(weights, theory.processes):
            dm = dm + p.delta_m.scaled(w)
            qq = qq + p.q.scaled(w)
    try:
        witness = Process(dm, qq)
    except ValueError as exc:
        raise SchemaError(f"{where}.witness: {exc}") from None
    return ViolationCertificate(weights=weights, witness=witness)


def margin_report_to_obj(report: MarginReport) -> dict[str, Any]:
    return {
        "margins": [
            {"process": pid if pid is not None else f"#{i}", "margin": rational_str(m)}
            for i, (pid, m) in enumerate(zip(report.process_ids, report.margins))
        ],
        "beta_positive": report.beta_positive,
        "passed": report.passed,
    }


def dumps_canonical(obj: Any) -> str:
    """Deterministic rendering: sorted keys, two-space indent, newline end."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SchemaError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
