"""Command-line front end: ``python -m wgqed <command>``."""
from __future__ import annotations

import argparse
import json
import sys

from . import bound_states as bs
from . import scattering as sc
from .sweep import (
    DEFAULT_PARAMETERS,
    ConfigError,
    SweepConfig,
    SweepResult,
    build_pair,
    critical_sizes,
    load_config,
    preset_config,
    run_sweep,
    verify,
)

EXIT_OK, EXIT_INVALID, EXIT_INVARIANT = 0, 1, 2

DEFAULT_PRESET = {
    "sweep": "fig3b",
    "feshbach-curve": "fig5",
    "fano-compare": "fig6a",
}


def _parse_set(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ConfigError("--set", f"expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        try:
            out[key.strip()] = float(value)
        except ValueError as exc:
            raise ConfigError(f"parameters.{key.strip()}", f"not a number: {value!r}") from exc
    return out


def _resolve(args, command) -> SweepConfig:
    if args.config:
        cfg = load_config(args.config)
    elif args.preset:
        cfg = preset_config(args.preset)
    elif command in DEFAULT_PRESET:
        cfg = preset_config(DEFAULT_PRESET[command])
    else:
        cfg = SweepConfig(parameters=dict(DEFAULT_PARAMETERS))
    if args.config and args.preset:
        base = preset_config(args.preset)
        base.parameters.update(cfg.parameters)
        cfg.parameters = base.parameters
    cfg.parameters.update(_parse_set(args.set))
    if args.points is not None:
        cfg.count = args.points
    if args.format is not None:
        cfg.format = args.format
    if command == "feshbach-curve":
        cfg.task, cfg.axis, cfg.model = "feshbach", "gamma_b", "quadratic"
    elif command == "fano-compare":
        cfg.task, cfg.model = "fano", "quadratic"
    return cfg


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _mapping_result(mapping: dict, params: dict) -> SweepResult:
    header = list(mapping)
    return SweepResult(header, [[mapping[k] for k in header]], params)


def cmd_sweep(cfg, args):
    return run_sweep(cfg).render(cfg.format)


def cmd_resonances(cfg, args):
    pair = build_pair(cfg.parameters)
    res = sc.find_resonances(pair)
    record = {
        "k_res": list(res.k_res),
        "k_C": res.k_C,
        "k_F": list(res.k_F) if res.k_F else [],
        "delta_F": res.delta_F,
        "delta_min": res.delta_min,
        "delta_max_f": res.delta_max_f,
        "feshbach_in_band": res.feshbach_in_band,
    }
    return _mapping_result(record, cfg.parameters).render(cfg.format)


def cmd_bound_states(cfg, args):
    pair = build_pair(cfg.parameters)
    rows = []
    for method in ("closed_form", "numeric"):
        if pair.gamma_b == 0:
            st = bs.bound_state_numeric(pair.b.v1, pair.b.v2, 0.0, pair.omega0)
        elif method == "closed_form":
            st = bs.bound_state_closed_form(pair.b.v1, pair.b.v2, pair.gamma_b, pair.omega0)
        else:
            st = bs.bound_state_numeric(pair.b.v1, pair.b.v2, pair.gamma_b, pair.omega0)
        z = st.quasibound[0]
        rows.append([method, st.E_bound, st.delta_f, z.real, abs(z.imag), st.residual, st.delta_max_f, st.is_limit])
    header = ["method", "E_bound", "delta_f", "quasibound_re", "quasibound_im_abs", "residual", "delta_max_f", "is_limit"]
    return SweepResult(header, rows, cfg.parameters).render(cfg.format)


def cmd_critical_size(cfg, args):
    omegas = args.omega0 or [cfg.parameters.get("omega0", 1e10)]
    return critical_sizes(omegas, c=args.c).render(cfg.format)


def cmd_verify(cfg, args):
    report = verify(cfg, seed=args.seed)
    text = json.dumps(report, indent=1, sort_keys=True)
    lines = [f"{name}: {'pass' if e['passed'] else 'FAIL'}, measured {e['measured']:.3e} (tol {e['tolerance']:.0e})"
             for name, e in sorted(report.items())]
    failed = not all(e["passed"] for e in report.values())
    return (text if cfg.format == "json" else "\n".join(lines)), failed


COMMANDS = {
    "sweep": cmd_sweep,
    "resonances": cmd_resonances,
    "bound-states": cmd_bound_states,
    "feshbach-curve": cmd_sweep,
    "fano-compare": cmd_sweep,
    "critical-size": cmd_critical_size,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--preset", help="figure preset (fig2a ... fig6b)")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out", help="output path (default: standard output)")
    common.add_argument("--points", type=int, help="number of grid points")
    common.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a parameter")

    parser = argparse.ArgumentParser(prog="wgqed", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "critical-size":
            p.add_argument("--omega0", type=float, nargs="+", help="transition frequencies (rad/s)")
            p.add_argument("--c", type=float, default=None, help="light speed (default: SI value)")
        if name == "verify":
            p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve(args, args.command)
        cfg.validate()
        out = COMMANDS[args.command](cfg, args)
    except (ConfigError, ValueError) as exc:
        field = getattr(exc, "field", None)
        payload = {"error": str(exc)}
        if field:
            payload["field"] = field
        print(json.dumps(payload), file=sys.stderr)
        return EXIT_INVALID
    if isinstance(out, tuple):
        text, failed = out
        _emit(text, args.out)
        return EXIT_INVARIANT if failed else EXIT_OK
    _emit(out, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
