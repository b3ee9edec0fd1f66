"""Command-line front end: every experiment as one deterministic invocation.

Each subcommand reads knobs from flags and/or a JSON config file (flags win;
unknown config keys are rejected), runs the experiment, and emits a JSON
report that embeds the full resolved configuration.  ``--csv`` writes the
report's tabular core next to it and ``--figures`` renders matplotlib
figures into a directory.  Numeric findings (a function outside the space, a
truncation warning, an unreliable fit) are structured report flags with exit
status 0; broken configs exit 2 and genuine numeric failures exit 3.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from . import acceptance as acceptance_mod
from . import plotting
from .boundary import LineFunction
from .disk import dyadic_radii, hardy_norm, membership_pair_report, szego_boundedness_experiment
from .exponents import ExponentError, essential_bounds, log_holder_constant, resolve_exponent
from .families import (
    FamilyError,
    resolve_circle_function,
    resolve_disk_sampler,
    resolve_halfplane_sampler,
    resolve_line_function,
)
from .halfplane import approximate_identity_check, halfplane_hardy_norm, hk_bound_check
from .kernels import evaluation_bound_experiment, forelli_rudin_check, phi_majorization_check
from .norms import luxemburg_norm, modular
from .reporting import assemble_report, canonical_json, write_csv

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


@dataclass(frozen=True)
class Opt:
    name: str
    type: Callable = str
    default: object = None
    required: bool = False
    flag: bool = False
    help: str = ""


def _floats(value):
    if isinstance(value, (list, tuple)):
        return tuple(float(x) for x in value)
    return tuple(float(x) for x in str(value).split(","))


def _ints(value):
    if isinstance(value, (list, tuple)):
        return tuple(int(x) for x in value)
    return tuple(int(x) for x in str(value).split(","))


def _complexes(value):
    if isinstance(value, (list, tuple)):
        return tuple(complex(re, im) for re, im in value)
    out = []
    for token in str(value).split(";"):
        re, im = (float(x) for x in token.split(","))
        out.append(complex(re, im))
    return tuple(out)


def _exponent_spec(value):
    # reserved name / family string from the flag, or an inline piecewise
    # definition object from a config file
    return value if isinstance(value, dict) else str(value)


COMMON = [
    Opt("output", str, None, help="write the JSON report here instead of stdout"),
    Opt("csv", str, None, help="write the report's tabular core as CSV"),
    Opt("figures", str, None, help="directory for rendered figures"),
    Opt("no-timestamp", flag=True, default=False,
        help="suppress the timestamp field (byte-identical reruns)"),
]

COMMANDS: dict[str, list[Opt]] = {
    "exponent-diag": [
        Opt("exponent", _exponent_spec, required=True),
        Opt("grid-size", int, 256),
    ],
    "norm": [
        Opt("exponent", _exponent_spec, required=True),
        Opt("function", str, required=True),
        Opt("n", int, 1024),
    ],
    "modular": [
        Opt("exponent", _exponent_spec, required=True),
        Opt("function", str, required=True),
        Opt("n", int, 1024),
    ],
    "hardy-disk": [
        Opt("exponent", _exponent_spec, required=True),
        Opt("sampler", str, required=True),
        Opt("n", int, 2**14),
        Opt("radius-depth", int, 12),
        Opt("workers", int, 1),
    ],
    "kernel-scaling": [
        Opt("exponent", _exponent_spec, required=True),
        Opt("theta", float, 0.0),
        Opt("k-range", _ints, tuple(range(3, 11))),
        Opt("n", int, 2**13),
    ],
    "forelli-rudin": [
        Opt("s", float, required=True),
        Opt("rho-depth", int, 10),
        Opt("n", int, 2**12),
    ],
    "phi-check": [
        Opt("exponent", _exponent_spec, required=True),
        Opt("z-abs", _floats, (0.5, 0.7, 0.9, 0.99)),
        Opt("r", _floats, (0.6, 0.75, 0.95)),
        Opt("theta", _floats, (0.0, math.pi / 2.0, math.pi)),
        Opt("n", int, 2**12),
    ],
    "sec3": [
        Opt("q", float, required=True),
        Opt("eps", float, required=True),
        Opt("n", int, 2**14),
        Opt("radius-depth", int, 14),
        Opt("workers", int, 1),
    ],
    "szego": [
        Opt("exponent", _exponent_spec, "paper-sec3"),
        Opt("trials", int, 1000),
        Opt("seed", int, 0),
        Opt("degree", int, 8),
        Opt("n", int, 256),
    ],
    "halfplane-hardy": [
        Opt("exponent", _exponent_spec, required=True),
        Opt("sampler", str, required=True),
        Opt("halfwidth", float, 32.0),
    ],
    "approx-identity": [
        Opt("exponent", _exponent_spec, required=True),
        Opt("function", str, required=True),
        Opt("y-depth", int, 10),
    ],
    "hk-bound": [
        Opt("exponent", _exponent_spec, required=True),
        Opt("sampler", str, required=True),
        Opt("k", float, 1.0),
        Opt("probes", _complexes, (1j, 1 + 2j, -2 + 1.5j)),
    ],
    "acceptance": [
        Opt("criteria", _ints, ()),
    ],
}


class ConfigError(ValueError):
    pass


def _resolve_options(command: str, args: argparse.Namespace) -> dict:
    file_config = {}
    if args.config is not None:
        with open(args.config) as fh:
            file_config = json.load(fh)
        if not isinstance(file_config, dict):
            raise ConfigError("config file must hold a JSON object")
        file_config = {k.replace("-", "_"): v for k, v in file_config.items()}

    opts = COMMANDS[command] + COMMON
    known = {o.name.replace("-", "_") for o in opts}
    extra = set(file_config) - known
    if extra:
        raise ConfigError(f"unknown config keys for {command}: {sorted(extra)}")

    resolved = {}
    for opt in opts:
        key = opt.name.replace("-", "_")
        value = getattr(args, key)
        if value is None and key in file_config:
            raw = file_config[key]
            try:
                value = opt.type(raw) if not opt.flag and raw is not None else raw
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"bad value for {key!r}: {exc}") from exc
        if value is None:
            value = opt.default
        if opt.required and value is None:
            raise ConfigError(f"{command} requires --{opt.name}")
        resolved[key] = value
    return resolved


def _config_echo(resolved: dict) -> dict:
    # execution knobs that cannot change the numbers (artifact paths, worker
    # count) stay out of the echoed experiment config
    return {k: (list(v) if isinstance(v, tuple) else v)
            for k, v in resolved.items()
            if k not in ("output", "csv", "figures", "workers")}


# --------------------------------------------------------------------------
# handlers: each returns (results, flags, csv_payload, figure_callback)


def _norm_inputs(cfg):
    p = resolve_exponent(cfg["exponent"])
    if p.domain == "circle":
        f = resolve_circle_function(cfg["function"], n=cfg["n"])
    else:
        f = resolve_line_function(cfg["function"])
    flags = []
    if isinstance(f, LineFunction) and f.truncation_uncertain():
        flags.append("truncation-uncertain")
    return p, f, flags


def _run_norm(cfg):
    p, f, flags = _norm_inputs(cfg)
    result = luxemburg_norm(f, p)
    if not result.is_finite:
        flags.append("norm-infinite")
    return result.as_dict(), flags, None, None


def _run_modular(cfg):
    p, f, flags = _norm_inputs(cfg)
    value = modular(f, p)
    if not math.isfinite(value):
        flags.append("modular-infinite")
    return {"value": value if math.isfinite(value) else "inf"}, flags, None, None


def _run_exponent_diag(cfg):
    p = resolve_exponent(cfg["exponent"])
    reg = log_holder_constant(p, cfg["grid_size"])
    lo, hi = essential_bounds(p)
    results = {
        "domain": p.domain,
        "p_min": lo,
        "p_max": hi,
        "p_infinity": p.p_infinity,
        "c_log_estimate": reg.c_log_estimate,
        "worst_pair": list(reg.worst_pair),
        "c_infinity_estimate": reg.c_infinity_estimate,
        "pairs_examined": reg.pairs_examined,
    }

    def figures(outdir):
        return [plotting.plot_exponent(p, outdir / "exponent.png")]

    return results, [], None, figures


def _hardy_csv(report):
    return report.to_csv_rows()


def _run_hardy_disk(cfg):
    p = resolve_exponent(cfg["exponent"])
    sampler = resolve_disk_sampler(cfg["sampler"], n=cfg["n"])
    report = hardy_norm(sampler, p, dyadic_radii(cfg["radius_depth"]),
                        n=cfg["n"], workers=cfg["workers"])
    flags = [] if math.isfinite(report.hardy_norm) else ["norm-infinite"]

    def figures(outdir):
        return [plotting.plot_hardy(report, outdir / "hardy-disk.png")]

    return report.as_dict(), flags, _hardy_csv(report), figures


def _run_kernel_scaling(cfg):
    p = resolve_exponent(cfg["exponent"])
    report = evaluation_bound_experiment(p, cfg["theta"], cfg["k_range"], n=cfg["n"])
    flags = ["unreliable-fit"] if report.unreliable_fit else []

    def figures(outdir):
        return [plotting.plot_scaling(report, outdir / "kernel-scaling.png")]

    return report.as_dict(), flags, report.to_csv_rows(), figures


def _run_forelli_rudin(cfg):
    report = forelli_rudin_check(cfg["s"], dyadic_radii(cfg["rho_depth"], start=3),
                                 n=cfg["n"])
    flags = ["unreliable-fit"] if report.unreliable_fit else []

    def figures(outdir):
        return [plotting.plot_scaling(report, outdir / "forelli-rudin.png",
                                      title="boundary kernel growth")]

    return report.as_dict(), flags, report.to_csv_rows(), figures


def _run_phi_check(cfg):
    p = resolve_exponent(cfg["exponent"])
    combos = []
    worst = 0.0
    max_drift = 0.0
    for theta in cfg["theta"]:
        for mod in cfg["z_abs"]:
            for r in cfg["r"]:
                z = mod * complex(math.cos(theta), math.sin(theta))
                base = phi_majorization_check(p, z, r, n=cfg["n"])
                doubled = phi_majorization_check(p, z, r, n=2 * cfg["n"])
                drift = abs(doubled.max_ratio - base.max_ratio) / base.max_ratio
                worst = max(worst, base.max_ratio, doubled.max_ratio)
                max_drift = max(max_drift, drift)
                entry = base.as_dict()
                entry["theta"] = theta
                entry["max_ratio_doubled"] = doubled.max_ratio
                combos.append(entry)
    results = {"combos": combos, "max_ratio": worst, "max_grid_drift": max_drift}
    rows = [[c["theta"], abs(complex(*c["z"])), c["r"], c["max_ratio"],
             c["max_ratio_doubled"]] for c in combos]
    return results, [], (["theta", "z_abs", "r", "max_ratio", "max_ratio_doubled"],
                         rows), None


def _run_sec3(cfg):
    report = membership_pair_report(cfg["q"], cfg["eps"],
                                    dyadic_radii(cfg["radius_depth"]),
                                    n=cfg["n"], workers=cfg["workers"])
    flags = []
    if not math.isfinite(report.g_variable.hardy_norm):
        flags.append("norm-infinite")
    header = ["radius", "f_norm", "f_modular", "g_norm", "g_modular"]
    rows = [
        [r, fn.value, fm, gn.value, gm]
        for r, fn, fm, gn, gm in zip(
            report.f_variable.schedule, report.f_variable.norms,
            report.f_variable.modulars, report.g_variable.norms,
            report.g_variable.modulars,
        )
    ]

    def figures(outdir):
        return [plotting.plot_pair(report, outdir / "sec3.png")]

    return report.as_dict(), flags, (header, rows), figures


def _run_szego(cfg):
    p = resolve_exponent(cfg["exponent"])
    report = szego_boundedness_experiment(p, trials=cfg["trials"], seed=cfg["seed"],
                                          degree=cfg["degree"], n=cfg["n"])

    def figures(outdir):
        return [plotting.plot_ratio_histogram(report.ratios, outdir / "szego.png")]

    return report.as_dict(), [], None, figures


def _run_halfplane_hardy(cfg):
    p = resolve_exponent(cfg["exponent"])
    sampler = resolve_halfplane_sampler(cfg["sampler"])
    report = halfplane_hardy_norm(sampler, p, halfwidth=cfg["halfwidth"])
    flags = [] if math.isfinite(report.hardy_norm) else ["norm-infinite"]

    def figures(outdir):
        return [plotting.plot_hardy(report, outdir / "halfplane-hardy.png")]

    return report.as_dict(), flags, _hardy_csv(report), figures


def _run_approx_identity(cfg):
    p = resolve_exponent(cfg["exponent"])
    u = resolve_line_function(cfg["function"])
    heights = tuple(2.0**-k for k in range(1, cfg["y_depth"] + 1))
    report = approximate_identity_check(u, p, heights)
    rows = list(zip(report.heights, report.deficits))

    def figures(outdir):
        return [plotting.plot_deficits(report.heights, report.deficits,
                                       outdir / "approx-identity.png", xlabel="y")]

    return report.as_dict(), [], (["y", "deficit"], rows), figures


def _run_hk_bound(cfg):
    p = resolve_exponent(cfg["exponent"])
    sampler = resolve_halfplane_sampler(cfg["sampler"])
    report = hk_bound_check(sampler, p, cfg["k"], cfg["probes"])
    rows = [[z.real, z.imag, obs, bound] for z, obs, bound in report.probes]
    return report.as_dict(), [], (["re", "im", "observed", "bound"], rows), None


def _run_acceptance(cfg):
    numbers = cfg["criteria"] or None
    results = acceptance_mod.run_acceptance(numbers)
    for res in results:
        print(res.line, file=sys.stderr)
    payload = {
        "criteria": [r.as_dict() for r in results],
        "all_passed": all(r.passed for r in results),
    }
    rows = [[r.number, r.name, r.passed] for r in results]
    return payload, [], (["number", "name", "passed"], rows), None


HANDLERS = {
    "exponent-diag": _run_exponent_diag,
    "norm": _run_norm,
    "modular": _run_modular,
    "hardy-disk": _run_hardy_disk,
    "kernel-scaling": _run_kernel_scaling,
    "forelli-rudin": _run_forelli_rudin,
    "phi-check": _run_phi_check,
    "sec3": _run_sec3,
    "szego": _run_szego,
    "halfplane-hardy": _run_halfplane_hardy,
    "approx-identity": _run_approx_identity,
    "hk-bound": _run_hk_bound,
    "acceptance": _run_acceptance,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="varhardy",
        description="Variable-exponent Lebesgue/Hardy space experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command, opts in COMMANDS.items():
        p = sub.add_parser(command)
        p.add_argument("--config", type=str, default=None,
                       help="JSON file with option values (flags override)")
        for opt in opts + COMMON:
            kwargs = {"dest": opt.name.replace("-", "_"), "default": None,
                      "help": opt.help}
            if opt.flag:
                kwargs["action"] = "store_true"
                kwargs["default"] = None
            else:
                kwargs["type"] = opt.type
            p.add_argument(f"--{opt.name}", **kwargs)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command
    try:
        cfg = _resolve_options(command, args)
    except (ConfigError, json.JSONDecodeError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        results, flags, csv_payload, figure_cb = HANDLERS[command](cfg)
    except (ConfigError, ExponentError, FamilyError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    report = assemble_report(command, _config_echo(cfg), results, flags,
                             timestamp=not cfg["no_timestamp"])
    text = canonical_json(report)
    if cfg["output"]:
        Path(cfg["output"]).write_text(text)
    else:
        sys.stdout.write(text)

    if cfg["csv"] and csv_payload is not None:
        header, rows = csv_payload
        write_csv(cfg["csv"], header, rows)
    if cfg["figures"] and figure_cb is not None:
        outdir = Path(cfg["figures"])
        outdir.mkdir(parents=True, exist_ok=True)
        figure_cb(outdir)

    if command == "acceptance" and not results["all_passed"]:
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
