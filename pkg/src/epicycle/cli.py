"""Command-line interface.

Subcommands::

    epicycle coeffs  --alpha 3 --eps 1e-3 [--phi0 0 --delta 0]
    epicycle orbit   --alpha 0.5 --eps 1e-3 --t-end 12.566 --samples 512 --decompose -o orbit.csv
    epicycle period  --alpha 2.5 [--max-den 64]
    epicycle compare --alpha 3 --eps 1e-4 --mode full --dt 1e-3 --t-end 6.283
    epicycle sweep   --alpha-range 2.5 10 --steps 50 --eps 1e-3 -o sweep.csv
    epicycle replay  orbit.csv.manifest.json

Configuration is given either in scaled units (``--alpha --eps``) or in
physical units (``--k --q --m --r0 --a --omega``); the two groups are
mutually exclusive. Every file written with ``-o`` gets a
``<output>.manifest.json`` next to it recording the resolved parameters and
the exact argument list, which ``replay`` uses to regenerate the output.

Exit codes: 0 success, 1 usage error, 2 resonant input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .coefficients import (
    DEFAULT_GUARD,
    NearResonant,
    Resonant,
    classify,
    residuals,
    solve_coefficients,
)
from .errors import (
    EpicycleError,
    InvalidConfig,
    NearResonanceError,
    ResonantDivergence,
    SingularRadius,
    TranscriptionError,
    WindowMismatch,
)
from .model import AtomConfig, LightConfig, ScaledConfig, kepler_frequency, scale
from .orbit import SAMPLES_PER_TAU0, TAU0, components, period, positions, solve, velocities
from .oracle import IntegratorSettings, compare, integrate_full, integrate_linearized

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RESONANT = 2
EXIT_NUMERICAL = 3

GUARD_ENV = "EPICYCLE_GUARD"
SI_FLAGS = ("k", "q", "m", "r0", "a", "omega")
SCALED_FLAGS = ("alpha", "eps")
COMPONENT_COLUMNS = {
    "eccentric": ("x0", "y0"),
    "deferent": ("x1", "y1"),
    "epicycle2": ("x2", "y2"),
    "epicycleB": ("xB", "yB"),
    "epicycleA": ("xA", "yA"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    """17 significant digits, the fixed numeric format of every output."""
    x = float(x)
    if x == 0.0:
        x = 0.0  # fold -0.0
    return format(x, ".17g")


def _json_value(v, indent: str) -> str:
    if v is None or isinstance(v, bool):
        return json.dumps(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return fmt(v) if math.isfinite(v) else "null"
    if isinstance(v, str):
        return json.dumps(v)
    inner = indent + "  "
    if isinstance(v, dict):
        if not v:
            return "{}"
        body = ",\n".join(f"{inner}{json.dumps(str(k))}: {_json_value(val, inner)}" for k, val in v.items())
        return "{\n" + body + "\n" + indent + "}"
    if isinstance(v, (list, tuple)):
        if not v:
            return "[]"
        body = ",\n".join(inner + _json_value(val, inner) for val in v)
        return "[\n" + body + "\n" + indent + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def dump_json(obj) -> str:
    """JSON with floats written by ``fmt`` so output is byte-stable."""
    return _json_value(obj, "") + "\n"


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _angle(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def resolve_guard() -> float:
    raw = os.environ.get(GUARD_ENV)
    if raw is None or raw == "":
        return DEFAULT_GUARD
    try:
        guard = float(raw)
    except ValueError:
        raise UsageError(f"{GUARD_ENV} must be a number, got {raw!r}") from None
    if not (guard > 0 and math.isfinite(guard)):
        raise UsageError(f"{GUARD_ENV} must be positive, got {raw!r}")
    return guard


def resolve_config(args) -> tuple[ScaledConfig, dict]:
    """Build the scaled configuration from either flag group."""
    phi0 = _angle(args.phi0, args.degrees)
    delta = _angle(args.delta, args.degrees)
    si_given = [f for f in SI_FLAGS if getattr(args, f) is not None]
    scaled_given = [f for f in SCALED_FLAGS if getattr(args, f) is not None]
    if si_given and scaled_given:
        raise UsageError(
            "physical flags (--" + " --".join(si_given) + ") cannot be combined with scaled flags (--"
            + " --".join(scaled_given) + ")"
        )
    if si_given:
        missing = [f for f in SI_FLAGS if getattr(args, f) is None]
        if missing:
            raise UsageError("physical units need all of --k --q --m --r0 --a --omega; missing --" + " --".join(missing))
        atom = AtomConfig(args.k, args.q, args.m, args.r0, phi0)
        light = LightConfig(args.a, args.omega, delta)
        cfg = scale(atom, light)
        echo = {"units": "physical", "omega0": kepler_frequency(atom)}
        echo.update({f: getattr(args, f) for f in SI_FLAGS})
    else:
        missing = [f for f in SCALED_FLAGS if getattr(args, f) is None]
        if missing:
            raise UsageError("missing --" + " --".join(missing) + " (or give the physical flags instead)")
        cfg = ScaledConfig(args.alpha, args.eps, phi0, delta)
        echo = {"units": "scaled"}
    echo.update({"alpha": cfg.alpha, "eps": cfg.eps, "phi0": cfg.phi0, "delta": cfg.delta})
    return cfg, echo


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("scaled configuration")
    g.add_argument("--alpha", type=float, help="light frequency / Kepler frequency")
    g.add_argument("--eps", type=float, help="forcing strength q a / (m omega0^2 r0)")
    s = p.add_argument_group("physical configuration (alternative to --alpha/--eps)")
    s.add_argument("--k", type=float, help="electrostatic constant")
    s.add_argument("--q", type=float, help="electron charge magnitude")
    s.add_argument("--m", type=float, help="electron mass")
    s.add_argument("--r0", type=float, help="orbit radius")
    s.add_argument("--a", type=float, help="field amplitude")
    s.add_argument("--omega", type=float, help="light angular frequency")
    p.add_argument("--phi0", type=float, default=0.0, help="electron phase at switch-on")
    p.add_argument("--delta", type=float, default=0.0, help="light phase")
    p.add_argument("--degrees", action="store_true", help="read --phi0/--delta in degrees")
    p.add_argument("--allow-near-resonant", action="store_true", help="proceed inside the resonance guard band")


def _add_output_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", help="write to this file (and a .manifest.json beside it)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="epicycle", description="First-order driven hydrogen orbits and their numerical check.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeffs", help="coefficient table, resonance class and residuals")
    _add_config_flags(p)
    p.add_argument("--format", choices=("table", "json"), default="table")
    _add_output_flag(p)

    p = sub.add_parser("orbit", help="sample the analytic orbit as CSV")
    _add_config_flags(p)
    p.add_argument("--t-end", type=float, default=TAU0, help="end time in units of 1/omega0 (default 2 pi)")
    p.add_argument("--samples", type=int, help=f"rows, evenly spaced over [0, t_end] (default {SAMPLES_PER_TAU0} per Kepler period)")
    p.add_argument("--velocity", action="store_true", help="add vx, vy columns")
    p.add_argument("--decompose", action="store_true", help="add per-harmonic columns")
    _add_output_flag(p)

    p = sub.add_parser("period", help="orbit period as a multiple of the Kepler period")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--max-den", type=int, default=64, help="denominator cap for rationalizing alpha")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_output_flag(p)

    p = sub.add_parser("compare", help="analytic orbit against RK4 integration (JSON)")
    _add_config_flags(p)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--t-end", type=float, default=TAU0)
    p.add_argument("--mode", choices=("full", "linearized"), default="full")
    _add_output_flag(p)

    p = sub.add_parser("sweep", help="coefficient magnitudes and periods over a range of alpha (CSV)")
    p.add_argument("--alpha-range", type=float, nargs=2, metavar=("START", "STOP"), required=True)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--phi0", type=float, default=0.0)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--degrees", action="store_true")
    p.add_argument("--max-den", type=int, default=64)
    p.add_argument("--allow-near-resonant", action="store_true")
    _add_output_flag(p)

    p = sub.add_parser("replay", help="re-run the command recorded in a manifest")
    p.add_argument("manifest")
    _add_output_flag(p)
    return parser


def cmd_coeffs(args) -> str:
    cfg, echo = resolve_config(args)
    guard = resolve_guard()
    cls = classify(cfg.alpha, guard)
    coeffs = solve_coefficients(cfg, guard, args.allow_near_resonant)
    report = residuals(coeffs, cfg)
    if isinstance(cls, NearResonant):
        cls_text = f"near-resonant {cls.which} (distance {fmt(cls.distance)})"
    else:
        cls_text = "non-resonant"
    rows = [(name, c.re, c.im, abs(c), c.arg()) for name, c in coeffs.items()]
    if args.format == "json":
        return dump_json({
            "config": echo,
            "classification": cls_text,
            "guard": guard,
            "coefficients": {n: {"re": re, "im": im, "magnitude": mag, "phase": ph} for n, re, im, mag, ph in rows},
            "residuals": report.as_dict(),
            "max_residual": report.max_residual(),
        })
    lines = [f"# {k} = {fmt(v) if isinstance(v, float) else v}" for k, v in echo.items()]
    lines.append(f"# classification = {cls_text}")
    lines.append(f"{'name':<6} {'re':>25} {'im':>25} {'magnitude':>25} {'phase':>25}")
    for name, re, im, mag, ph in rows:
        lines.append(f"{name:<6} {fmt(re):>25} {fmt(im):>25} {fmt(mag):>25} {fmt(ph):>25}")
    lines.append("residuals:")
    for name, value in report.as_dict().items():
        note = "  (reported, not enforced)" if name not in report.ASSERTED else ""
        lines.append(f"  {name:<18} {fmt(value)}{note}")
    lines.append(f"  {'max':<18} {fmt(report.max_residual())}")
    return "\n".join(lines) + "\n"


def cmd_orbit(args) -> str:
    cfg, _ = resolve_config(args)
    if not (args.t_end > 0 and math.isfinite(args.t_end)):
        raise UsageError("--t-end must be positive")
    samples = args.samples
    if samples is None:
        samples = max(2, math.ceil(args.t_end / TAU0 * SAMPLES_PER_TAU0))
    if samples < 2:
        raise UsageError("--samples must be at least 2")
    sol = solve(cfg, resolve_guard(), args.allow_near_resonant)
    t = np.linspace(0.0, args.t_end, samples)
    columns = [t, *positions(sol, t).T]
    header = ["t", "x", "y"]
    if args.velocity:
        columns += list(velocities(sol, t).T)
        header += ["vx", "vy"]
    if args.decompose:
        for term in sol.terms:
            z = complex(term.coeff) * np.exp(1j * term.freq_mult * t)
            columns += [z.real, z.imag]
            header += list(COMPONENT_COLUMNS[term.name])
    rows = ([fmt(v) for v in row] for row in zip(*columns))
    return _csv_text(header, rows)


def cmd_period(args) -> str:
    if args.max_den < 1:
        raise UsageError("--max-den must be >= 1")
    if not math.isfinite(args.alpha):
        raise UsageError("--alpha must be finite")
    result = period(args.alpha, args.max_den)
    if args.format == "json":
        return dump_json({
            "alpha": args.alpha,
            "max_den": args.max_den,
            "periodic": result.periodic,
            "alpha_rational": None if result.alpha_rational is None else str(result.alpha_rational),
            "tau_over_tau0": None if result.multiple is None else str(result.multiple),
            "n": result.n,
        })
    if not result.periodic:
        return f"alpha = {fmt(args.alpha)}\naperiodic (denominator cap {args.max_den})\n"
    return (
        f"alpha = {fmt(args.alpha)} ~ {result.alpha_rational}\n"
        f"tau/tau0 = {result.multiple}\n"
        f"n = {result.n}\n"
    )


def cmd_compare(args) -> str:
    cfg, echo = resolve_config(args)
    settings = IntegratorSettings(args.dt, args.t_end)
    sol = solve(cfg, resolve_guard(), args.allow_near_resonant)
    integrate = integrate_full if args.mode == "full" else integrate_linearized
    report = compare(sol, integrate(cfg, settings))
    out = report.as_dict()
    out["mode"] = args.mode
    out["settings"] = {"dt": args.dt, "step": settings.step, "n_steps": settings.n_steps, "t_end": settings.t_end, "method": settings.method}
    out["config"] = echo
    return dump_json(out)


def cmd_sweep(args) -> str:
    if args.steps < 1:
        raise UsageError("--steps must be >= 1")
    start, stop = args.alpha_range
    guard = resolve_guard()
    phi0 = _angle(args.phi0, args.degrees)
    delta = _angle(args.delta, args.degrees)
    header = ["alpha", "status", "abs_b_m1", "abs_b_p1", "abs_c_m1", "abs_c_0", "abs_c_p1", "period_n"]
    rows = []
    for alpha in np.linspace(start, stop, args.steps):
        alpha = float(alpha)
        cls = classify(alpha, guard)
        p = period(alpha, args.max_den)
        period_cell = "" if p.n is None else str(p.n)
        if isinstance(cls, Resonant) or (isinstance(cls, NearResonant) and not args.allow_near_resonant):
            rows.append([fmt(alpha), "skipped-resonant", "", "", "", "", "", period_cell])
            continue
        coeffs = solve_coefficients(ScaledConfig(alpha, args.eps, phi0, delta), guard, args.allow_near_resonant)
        rows.append([fmt(alpha), "ok", *(fmt(abs(c)) for _, c in coeffs.items()), period_cell])
    return _csv_text(header, rows)


COMMANDS = {
    "coeffs": cmd_coeffs,
    "orbit": cmd_orbit,
    "period": cmd_period,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
}


def _manifest(command: str, argv: list[str], args) -> dict:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "output")}
    if command in ("coeffs", "orbit", "compare"):
        params["resolved"] = resolve_config(args)[1]
    params["guard"] = resolve_guard()
    return {
        "command": command,
        "argv": argv,
        "parameters": params,
        "tool": "epicycle",
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _strip_output(argv: list[str]) -> list[str]:
    out = []
    skip = False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok in ("-o", "--output"):
            skip = True
            continue
        if tok.startswith("--output="):
            continue
        out.append(tok)
    return out


def run(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "replay":
        try:
            with open(args.manifest, encoding="utf-8") as fh:
                manifest = json.load(fh)
            recorded = list(manifest["argv"])
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read manifest {args.manifest!r}: {exc}") from None
        if args.output:
            recorded = _strip_output(recorded) + ["-o", args.output]
        return run(recorded)

    text = COMMANDS[args.command](args)
    if args.output:
        _write(args.output, text)
        _write(args.output + ".manifest.json", dump_json(_manifest(args.command, list(argv), args)))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        return run(argv)
    except UsageError as exc:
        print(f"epicycle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResonantDivergence, NearResonanceError) as exc:
        print(f"epicycle: {exc}", file=sys.stderr)
        return EXIT_RESONANT
    except SingularRadius as exc:
        print(f"epicycle: {exc}; try a shorter --t-end or move alpha away from 0, 1 and 2", file=sys.stderr)
        return EXIT_NUMERICAL
    except (TranscriptionError, WindowMismatch) as exc:
        print(f"epicycle: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InvalidConfig, EpicycleError, ValueError) as exc:
        print(f"epicycle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
