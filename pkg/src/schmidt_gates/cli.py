"""Command-line front end: scenario files in, reports and sweep tables out.

Four subcommands (`simulate`, `classify`, `sweep-map`, `trotter-sweep`)
each read a JSON scenario, validate it against the published schema, run
the corresponding pipeline, and write a JSON report or a CSV table. All
floating-point output is rendered with 17 significant digits so identical
scenarios produce byte-identical files. Exit status is 0 iff every
tolerance check requested by the scenario passes; scenario and schema
problems exit with status 2 and a field diagnostic.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import jsonschema
import numpy as np

from .dynamics import (
    TrotterPlan,
    composed_tilted_gate,
    dynamical_phase,
    extract_rotation_angle,
    orange_slice_path,
    propagate,
    reverse_engineer,
    tilted_segment_propagator,
    trotter_propagate,
)
from .gates import lambda_gate, schmidt_gate, u_general
from .invariants import classify, closed_form_invariants, makhlin_invariants
from .linalg import gate_fidelity, phase_aligned_distance, unitarity_defect
from .sphere import (
    LinearSegment,
    RotationSegment,
    SampledSegment,
    SchmidtPath,
    solid_angle,
)

DEFAULT_TOLERANCE = 1e-9

SCHEMA_VERSION = 1


class ScenarioError(Exception):
    """Problem with the scenario file; reported with exit status 2."""


# --------------------------------------------------------------------------
# Scenario schemas
# --------------------------------------------------------------------------

_NUMBER = {"type": "number"}

_GRID = {
    "type": "object",
    "properties": {
        "start": _NUMBER,
        "stop": _NUMBER,
        "count": {"type": "integer", "minimum": 2},
    },
    "required": ["start", "stop", "count"],
    "additionalProperties": False,
}

_SEGMENT = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "kind": {"const": "linear"},
                "alpha_start": _NUMBER,
                "beta_start": _NUMBER,
                "alpha_end": _NUMBER,
                "beta_end": _NUMBER,
                "duration": {"type": "number", "exclusiveMinimum": 0},
            },
            "required": ["kind", "alpha_start", "beta_start", "alpha_end",
                         "beta_end", "duration"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "rotation"},
                "alpha_start": _NUMBER,
                "beta_start": _NUMBER,
                "axis": {"type": "array", "items": _NUMBER,
                         "minItems": 3, "maxItems": 3},
                "angle": _NUMBER,
                "duration": {"type": "number", "exclusiveMinimum": 0},
            },
            "required": ["kind", "alpha_start", "beta_start", "axis",
                         "angle", "duration"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "sampled"},
                "alpha": {"type": "array", "items": _NUMBER, "minItems": 2},
                "beta": {"type": "array", "items": _NUMBER, "minItems": 2},
                "duration": {"type": "number", "exclusiveMinimum": 0},
            },
            "required": ["kind", "alpha", "beta", "duration"],
            "additionalProperties": False,
        },
    ]
}

_PATH = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "preset": {"const": "orange_slice"},
                "t1": {"type": "number", "exclusiveMinimum": 0},
                "tau": {"type": "number", "exclusiveMinimum": 0},
            },
            "required": ["preset", "t1", "tau"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "segments": {"type": "array", "items": _SEGMENT, "minItems": 1},
                "closed": {"type": "boolean"},
            },
            "required": ["segments"],
            "additionalProperties": False,
        },
    ]
}

_ENVELOPE = {
    "schema_version": {"const": SCHEMA_VERSION},
    "tolerance": {"type": "number", "exclusiveMinimum": 0},
    "out": {"type": "string"},
}

_COMPLEX_ENTRY = {
    "type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2,
}

_MATRIX = {
    "type": "array",
    "items": {"type": "array", "items": _COMPLEX_ENTRY,
              "minItems": 4, "maxItems": 4},
    "minItems": 4,
    "maxItems": 4,
}

_GATE = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "kind": {"const": "geometric"},
                "alpha0": _NUMBER,
                "beta0": _NUMBER,
                "omega": _NUMBER,
                "sector": {"enum": ["gamma", "lambda"]},
            },
            "required": ["kind", "alpha0", "beta0", "omega"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "rotation"},
                "omega": _NUMBER,
            },
            "required": ["kind", "omega"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "kind": {"const": "matrix"},
                "matrix": _MATRIX,
            },
            "required": ["kind", "matrix"],
            "additionalProperties": False,
        },
    ]
}

SCENARIO_SCHEMAS = {
    "simulate": {
        "type": "object",
        "properties": {
            **_ENVELOPE,
            "command": {"const": "simulate"},
            "path": _PATH,
            "sector": {"enum": ["gamma", "lambda"]},
            "loop": {"type": "boolean"},
            "samples_per_segment": {"type": "integer", "minimum": 2},
        },
        "required": ["schema_version", "command", "path"],
        "additionalProperties": False,
    },
    "classify": {
        "type": "object",
        "properties": {
            **_ENVELOPE,
            "command": {"const": "classify"},
            "gate": _GATE,
        },
        "required": ["schema_version", "command", "gate"],
        "additionalProperties": False,
    },
    "sweep-map": {
        "type": "object",
        "properties": {
            **_ENVELOPE,
            "command": {"const": "sweep-map"},
            "alpha0": _GRID,
            "omega": _GRID,
            "beta0": _NUMBER,
        },
        "required": ["schema_version", "command", "alpha0", "omega"],
        "additionalProperties": False,
    },
    "trotter-sweep": {
        "type": "object",
        "properties": {
            **_ENVELOPE,
            "command": {"const": "trotter-sweep"},
            "theta": {
                "oneOf": [
                    _GRID,
                    {"type": "array", "items": _NUMBER, "minItems": 1},
                ]
            },
            "n_values": {
                "type": "array",
                "items": {"type": "integer", "minimum": 1},
                "minItems": 1,
            },
        },
        "required": ["schema_version", "command", "theta", "n_values"],
        "additionalProperties": False,
    },
}


def load_scenario(path: str, command: str) -> dict:
    """Read and validate a scenario file for the given subcommand."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"scenario is not valid JSON (line {exc.lineno}, "
            f"column {exc.colno}): {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ScenarioError("scenario must be a JSON object")
    declared = raw.get("command")
    if declared != command:
        raise ScenarioError(
            f"scenario declares command {declared!r} but was run "
            f"under {command!r}")
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMAS[command])
    errors = sorted(validator.iter_errors(raw),
                    key=lambda e: list(e.absolute_path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        while err.context:
            err = jsonschema.exceptions.best_match(err.context)
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise ScenarioError(f"scenario field {where!r}: {err.message}")
    return raw


# --------------------------------------------------------------------------
# Deterministic serialization (17 significant digits)
# --------------------------------------------------------------------------


def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise ValueError("refusing to serialize a non-finite value")
    return format(x, ".17g")


def _dump(obj, indent: int) -> str:
    pad = "  " * indent
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_dump(v, 0) for v in obj) + "]"
        inner = ",\n".join(pad + "  " + _dump(v, indent + 1) for v in obj)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            pad + "  " + json.dumps(str(k)) + ": " + _dump(v, indent + 1)
            for k, v in obj.items())
        return "{\n" + inner + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dump_report(report: dict) -> str:
    return _dump(report, 0) + "\n"


def matrix_entries(u: np.ndarray) -> list:
    """4x4 complex matrix as nested [re, im] pairs (row-major)."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(u)]


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Scenario -> library objects
# --------------------------------------------------------------------------


def _build_segment(spec: dict):
    if spec["kind"] == "linear":
        return LinearSegment(spec["alpha_start"], spec["beta_start"],
                             spec["alpha_end"], spec["beta_end"],
                             spec["duration"])
    if spec["kind"] == "rotation":
        return RotationSegment(spec["alpha_start"], spec["beta_start"],
                               tuple(spec["axis"]), spec["angle"],
                               spec["duration"])
    return SampledSegment(np.asarray(spec["alpha"], dtype=float),
                          np.asarray(spec["beta"], dtype=float),
                          spec["duration"])


def _build_path(spec: dict, loop: bool) -> SchmidtPath:
    try:
        if spec.get("preset") == "orange_slice":
            return orange_slice_path(spec["t1"], spec["tau"])
        segments = tuple(_build_segment(s) for s in spec["segments"])
        closed = spec.get("closed", loop)
        return SchmidtPath(segments, closed=closed)
    except ValueError as exc:
        raise ScenarioError(f"invalid path: {exc}") from exc


def _build_gate(spec: dict, tol: float):
    """Returns (matrix, echo-dict, closed_form_invariants or None)."""
    if spec["kind"] == "geometric":
        sector = spec.get("sector", "gamma")
        build = schmidt_gate if sector == "gamma" else lambda_gate
        u = build(spec["alpha0"], spec["beta0"], spec["omega"])
        echo = {"kind": "geometric", "alpha0": spec["alpha0"],
                "beta0": spec["beta0"], "omega": spec["omega"],
                "sector": sector}
        closed = closed_form_invariants(spec["alpha0"], spec["omega"])
        return u, echo, closed
    if spec["kind"] == "rotation":
        u = u_general(spec["omega"])
        closed = closed_form_invariants(np.pi / 2, spec["omega"])
        return u, {"kind": "rotation", "omega": spec["omega"]}, closed
    u = np.array([[complex(re, im) for re, im in row]
                  for row in spec["matrix"]])
    if unitarity_defect(u) > tol:
        raise ScenarioError("gate matrix is not unitary within tolerance")
    return u, {"kind": "matrix"}, None


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------


def _pulse_summary(pulse) -> dict:
    if hasattr(pulse, "times"):
        t = pulse.times
        return {
            "kind": "sampled",
            "duration": pulse.duration,
            "samples": int(t.size),
            "area_xy": float(np.trapezoid(pulse.c_xy, x=t)),
            "area_dm": float(np.trapezoid(pulse.c_dm, x=t)),
            "area_z": float(np.trapezoid(pulse.c_z, x=t)),
        }
    return {"kind": "constant", "duration": pulse.duration,
            "c_xy": pulse.c_xy, "c_dm": pulse.c_dm, "c_z": pulse.c_z}


def run_simulate(scenario: dict, tol: float) -> tuple[dict, bool]:
    sector = scenario.get("sector", "gamma")
    loop = scenario.get("loop", True)
    samples = scenario.get("samples_per_segment", 1000)
    path = _build_path(scenario["path"], loop)
    if loop and not path.closed:
        raise ScenarioError("simulate in loop mode requires a closed path "
                            "(endpoints differ on the sphere)")
    schedule = reverse_engineer(path, sector=sector,
                                samples_per_segment=samples)
    u = propagate(schedule)
    phi_plus, phi_minus = dynamical_phase(path, samples=samples)
    phase_zero = abs(phi_plus) <= tol
    start = path.start_coords()

    checks = {"propagator_unitary": unitarity_defect(u) <= tol}
    omega = None
    predicted = None
    fidelity = None
    if path.closed:
        omega = solid_angle(path, samples=samples)
        if phase_zero:
            build = schmidt_gate if sector == "gamma" else lambda_gate
            target = build(start.alpha, start.beta, omega)
            fidelity = gate_fidelity(u, target)
            predicted = {"alpha0": start.alpha, "beta0": start.beta,
                         "omega": omega}
            checks["holonomy_fidelity"] = fidelity >= 1.0 - tol

    inv = makhlin_invariants(u)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "simulate",
        "sector": sector,
        "loop": loop,
        "base_point": {"alpha": start.alpha, "beta": start.beta},
        "duration": path.duration,
        "schedule": [_pulse_summary(p) for p in schedule.pulses],
        "solid_angle": omega,
        "dynamical_phase": {"plus": phi_plus, "minus": phi_minus},
        "dynamical_phase_zero": phase_zero,
        "holonomy_fidelity": fidelity,
        "holonomy_fidelity_applicable": path.closed and phase_zero,
        "predicted_gate": predicted,
        "propagator": matrix_entries(u),
        "invariants": {"g1_re": inv.g1.real, "g1_im": inv.g1.imag,
                       "g2": inv.g2},
        "entangler_class": classify(inv, tol).value,
        "tolerance": tol,
        "checks": checks,
        "passed": all(checks.values()),
    }
    return report, report["passed"]


def run_classify(scenario: dict, tol: float) -> tuple[dict, bool]:
    u, echo, closed = _build_gate(scenario["gate"], tol)
    try:
        inv = makhlin_invariants(u, atol=tol)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    checks = {"gate_unitary": unitarity_defect(u) <= tol}
    closed_entry = None
    deviation = None
    if closed is not None:
        deviation = max(abs(inv.g1 - closed.g1), abs(inv.g2 - closed.g2))
        closed_entry = {"g1_re": closed.g1.real, "g1_im": closed.g1.imag,
                        "g2": closed.g2}
        checks["matches_closed_form"] = deviation <= tol
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": "classify",
        "gate": echo,
        "invariants": {"g1_re": inv.g1.real, "g1_im": inv.g1.imag,
                       "g2": inv.g2},
        "closed_form": closed_entry,
        "closed_form_deviation": deviation,
        "entangler_class": classify(inv, tol).value,
        "tolerance": tol,
        "checks": checks,
        "passed": all(checks.values()),
    }
    return report, report["passed"]


def _grid(spec) -> np.ndarray:
    if isinstance(spec, list):
        return np.asarray(spec, dtype=float)
    return np.linspace(spec["start"], spec["stop"], spec["count"])


def run_sweep_map(scenario: dict, tol: float) -> tuple[str, str, bool]:
    """Returns (csv text, summary line, passed)."""
    alphas = _grid(scenario["alpha0"])
    omegas = _grid(scenario["omega"])
    beta0 = scenario.get("beta0", 0.0)
    rows = []
    max_dev = 0.0
    for a in alphas:
        for w in omegas:
            inv = makhlin_invariants(schmidt_gate(a, beta0, w))
            closed = closed_form_invariants(a, w)
            max_dev = max(max_dev, abs(inv.g1 - closed.g1),
                          abs(inv.g2 - closed.g2))
            rows.append([
                format_float(a), format_float(w),
                format_float(inv.g1.real), format_float(inv.g1.imag),
                format_float(inv.g2), classify(inv, tol).value,
            ])
    text = _csv_text(
        ["alpha0", "omega", "g1_re", "g1_im", "g2", "entangler_class"], rows)
    passed = max_dev <= tol
    summary = (f"sweep-map: {len(rows)} rows, "
               f"max closed-form deviation {max_dev:.3e}, "
               f"checks {'pass' if passed else 'FAIL'}")
    return text, summary, passed


def run_trotter_sweep(scenario: dict, tol: float) -> tuple[str, str, bool]:
    thetas = _grid(scenario["theta"])
    n_values = scenario["n_values"]
    rows = []
    max_resid = 0.0
    for theta in thetas:
        exact = tilted_segment_propagator(theta)
        omega, resid = extract_rotation_angle(composed_tilted_gate(theta))
        max_resid = max(max_resid, resid)
        for n in n_values:
            approx = trotter_propagate(TrotterPlan(float(theta), int(n)))
            infid = max(0.0, 1.0 - gate_fidelity(exact, approx))
            err = phase_aligned_distance(exact, approx)
            rows.append([
                format_float(theta), str(int(n)), format_float(infid),
                format_float(err), format_float(omega),
            ])
    text = _csv_text(
        ["theta", "n", "infidelity", "trotter_error", "omega_empirical"],
        rows)
    passed = max_resid <= tol
    summary = (f"trotter-sweep: {len(rows)} rows, "
               f"max rotation-form residual {max_resid:.3e}, "
               f"checks {'pass' if passed else 'FAIL'}")
    return text, summary, passed


# --------------------------------------------------------------------------
# Entry point
# --------------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("scenario", help="path to the JSON scenario file")
    sub.add_argument("--out", default=None,
                     help="output file (default: scenario's 'out' field, "
                          "else stdout)")
    sub.add_argument("--tol", type=float, default=None,
                     help="tolerance override for all checks "
                          f"(default {DEFAULT_TOLERANCE:g})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schmidt-gates",
        description="Simulate and classify geometric two-qubit gates "
                    "driven by loops on the Schmidt sphere.")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser(
        "simulate", help="reverse-engineer and propagate a path scenario"))
    _add_common(sub.add_parser(
        "classify", help="local invariants and entangler class of a gate"))
    _add_common(sub.add_parser(
        "sweep-map", help="CSV map of invariants over an (alpha0, omega) grid"))
    _add_common(sub.add_parser(
        "trotter-sweep", help="CSV table of Trotter errors and the empirical "
                              "rotation-angle curve"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = load_scenario(args.scenario, args.command)
        tol = args.tol if args.tol is not None else scenario.get(
            "tolerance", DEFAULT_TOLERANCE)
        if not tol > 0:
            raise ScenarioError("tolerance must be positive")
        out = args.out if args.out is not None else scenario.get("out")
        if args.command == "simulate":
            report, passed = run_simulate(scenario, tol)
            _write_text(dump_report(report), out)
        elif args.command == "classify":
            report, passed = run_classify(scenario, tol)
            _write_text(dump_report(report), out)
        elif args.command == "sweep-map":
            text, summary, passed = run_sweep_map(scenario, tol)
            _write_text(text, out)
            print(summary, file=sys.stderr)
        else:
            text, summary, passed = run_trotter_sweep(scenario, tol)
            _write_text(text, out)
            print(summary, file=sys.stderr)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
