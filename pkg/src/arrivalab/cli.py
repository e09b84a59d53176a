"""Command-line front end: bind scenarios to CSV files.

Subcommands: ``sweep-alpha``, ``sweep-rate``, ``compare``, ``simulate``,
``validate``. Every output is a pure function of (config file, flags, seed),
so reruns on the same build are byte-identical. Exit codes: 0 success,
1 validation failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ._version import __version__
from .arrivals import fixed_trace, generate_trace
from .csvio import write_manifest, write_occupancy_csv, write_table_csv, write_trace_csv
from .distributions import ExponentialParams, ParetoOneParams, ParetoTwoParams
from .errors import DomainError, ParameterError
from .experiments import (
    HOLDING_STREAM_OFFSET,
    ExperimentConfig,
    run_alpha_sweep,
    run_rate_sweep,
    run_tail_comparison,
    run_validation_suite,
)
from .occupancy import INFINITE_HOLD, LocationConfig, simulate_occupancy
from .samplers import RngStream

__all__ = ["main", "load_config_file", "KNOWN_CONFIG_KEYS"]

DEFAULT_SEED = 42
DEFAULT_OUT = "out"

_LIST_KEYS = {"alphas", "betas", "rates", "arrivals"}
_FLOAT_KEYS = {"alpha", "beta", "rate", "exp_rate", "horizon", "x_max", "x_step", "holding_rate"}
_INT_KEYS = {"seed", "node_budget", "replications"}
_STR_KEYS = {"label", "family", "holding"}

KNOWN_CONFIG_KEYS = frozenset(
    _LIST_KEYS | _FLOAT_KEYS | _INT_KEYS | _STR_KEYS | {"capacity"}
)


def load_config_file(path) -> dict:
    """Flat ``key = value`` text; '#' comments; unknown keys are errors."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParameterError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in KNOWN_CONFIG_KEYS:
            raise ParameterError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = _parse_value(key, value)
    return values


def _parse_value(key: str, raw: str):
    try:
        if key in _LIST_KEYS:
            return tuple(float(part) for part in raw.split(",") if part.strip())
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        if key == "capacity":
            return None if raw.lower() in ("none", "unbounded") else int(raw)
    except ValueError as exc:
        raise ParameterError(f"config key {key!r}: cannot parse {raw!r}: {exc}") from None
    return raw


def _gather(args) -> dict:
    """Merge config-file values and flags; flags win. Returns a plain dict."""
    values = dict(load_config_file(args.config)) if getattr(args, "config", None) else {}
    for flag, key in (
        ("seed", "seed"),
        ("horizon", "horizon"),
        ("replications", "replications"),
        ("alpha", "alphas"),
        ("beta", "betas"),
        ("rate", "rates"),
        ("exp_rate", "exp_rate"),
        ("nodes", "node_budget"),
        ("x_max", "x_max"),
        ("x_step", "x_step"),
        ("capacity", "capacity"),
        ("holding", "holding"),
        ("holding_rate", "holding_rate"),
        ("family", "family"),
        ("label", "label"),
        ("arrivals", "arrivals"),
    ):
        if not hasattr(args, flag):
            continue
        v = getattr(args, flag)
        if v is None:
            continue
        if flag in ("alpha", "beta", "rate") and args.command == "simulate":
            # simulate takes single values, not sweep lists
            values[flag] = float(v[0] if isinstance(v, list) else v)
        elif key in _LIST_KEYS and not isinstance(v, tuple):
            values[key] = tuple(float(x) for x in v) if isinstance(v, list) else tuple(
                float(part) for part in str(v).split(",") if part.strip()
            )
        else:
            values[key] = v
    return values


def _experiment_config(values: dict) -> ExperimentConfig:
    kwargs = {}
    # singular keys in a config file act as one-element sweeps
    for single, plural in (("alpha", "alphas"), ("beta", "betas"), ("rate", "rates")):
        if single in values and plural not in values:
            values = {**values, plural: (float(values[single]),)}
    for key in (
        "alphas", "betas", "rates", "exp_rate", "horizon", "node_budget",
        "replications", "seed", "x_max", "x_step", "capacity", "holding_rate",
    ):
        if key in values:
            kwargs[key] = values[key]
    if "holding" in values:
        kwargs["holding_family"] = values["holding"]
    kwargs["overrides"] = tuple(
        sorted(set(values) - {"label", "family", "arrivals", "alpha", "beta", "rate"})
    )
    if "seed" not in kwargs:
        kwargs["seed"] = DEFAULT_SEED
    return ExperimentConfig(**kwargs)


def _prepare_outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    probe = out / ".write-probe"
    probe.write_text("")
    probe.unlink()
    return out


def _run_provenance(command: str, seed: int) -> dict[str, str]:
    return {"generator": f"arrivalab {__version__}", "command": command, "seed": str(seed)}


def _emit_tables(tables, outdir: Path, verbose: bool) -> list[str]:
    names = []
    for table in tables:
        path = write_table_csv(outdir / f"{table.name}.csv", table)
        names.append(path.name)
        if verbose:
            print(f"wrote {path}", file=sys.stderr)
    return names


def _cmd_sweep_alpha(args) -> int:
    cfg = _experiment_config(_gather(args))
    outdir = _prepare_outdir(args)
    names = _emit_tables(run_alpha_sweep(cfg), outdir, args.verbose)
    write_manifest(outdir, names, _run_provenance("sweep-alpha", cfg.seed))
    print(f"sweep-alpha: {len(names)} tables -> {outdir} (seed {cfg.seed})")
    return 0


def _cmd_sweep_rate(args) -> int:
    cfg = _experiment_config(_gather(args))
    outdir = _prepare_outdir(args)
    names = _emit_tables(run_rate_sweep(cfg), outdir, args.verbose)
    write_manifest(outdir, names, _run_provenance("sweep-rate", cfg.seed))
    print(f"sweep-rate: {len(names)} tables -> {outdir} (seed {cfg.seed})")
    return 0


def _cmd_compare(args) -> int:
    cfg = _experiment_config(_gather(args))
    outdir = _prepare_outdir(args)
    names = _emit_tables(run_tail_comparison(cfg), outdir, args.verbose)
    write_manifest(outdir, names, _run_provenance("compare", cfg.seed))
    print(f"compare: {len(names)} tables -> {outdir} (seed {cfg.seed})")
    return 0


_SIM_FAMILIES = ("exponential", "pareto1", "lomax")


def _cmd_simulate(args) -> int:
    values = _gather(args)
    # sweep-style lists only make sense here when they hold exactly one value
    for plural, single in (("alphas", "alpha"), ("betas", "beta"), ("rates", "rate")):
        if plural in values and single not in values:
            entries = values[plural]
            if len(entries) != 1:
                raise ParameterError(f"simulate needs a single {single}, got {plural} = {entries}")
            values[single] = float(entries[0])
    seed = int(values.get("seed", DEFAULT_SEED))
    horizon = values.get("horizon")
    label = values.get("label", "simulate")

    if values.get("arrivals"):
        times = values["arrivals"]
        trace = fixed_trace(times, horizon)
        family_desc = "fixed"
        params_desc = f"times={','.join(repr(t) for t in times)}"
    else:
        family = values.get("family", "exponential")
        if family not in _SIM_FAMILIES:
            raise ParameterError(
                f"simulate family must be one of {_SIM_FAMILIES} (or pass --arrivals), got {family!r}"
            )
        if family == "exponential":
            params = ExponentialParams(values.get("rate", 0.9))
            params_desc = f"rate={params.rate!r}"
        elif family == "pareto1":
            params = ParetoOneParams(values.get("alpha", 0.5))
            params_desc = f"alpha={params.shape!r}"
        else:
            params = ParetoTwoParams(values.get("alpha", 0.5), values.get("beta", 1.0))
            params_desc = f"alpha={params.shape!r} beta={params.scale!r}"
        trace = generate_trace(family, params, horizon if horizon is not None else 100.0, RngStream(seed, 0))
        family_desc = family

    holding = values.get("holding", "exponential")
    if holding == INFINITE_HOLD:
        loc = LocationConfig(values.get("capacity"), INFINITE_HOLD)
    elif holding == "lomax":
        loc = LocationConfig(
            values.get("capacity"), "lomax", ParetoTwoParams(1.5, 1.0 / values.get("holding_rate", 1.0))
        )
    else:
        loc = LocationConfig(
            values.get("capacity"), "exponential", ExponentialParams(values.get("holding_rate", 1.0))
        )
    series = simulate_occupancy(trace, loc, RngStream(seed, HOLDING_STREAM_OFFSET))

    prov = {
        "generator": f"arrivalab {__version__}",
        "command": "simulate",
        "label": str(label),
        "family": family_desc,
        "params": params_desc,
        "horizon": repr(trace.horizon),
        "capacity": "unbounded" if loc.capacity is None else str(loc.capacity),
        "holding_family": holding,
        "holding_rate": repr(float(values.get("holding_rate", 1.0))),
        "seed": str(seed),
    }
    outdir = _prepare_outdir(args)
    paths = [
        write_trace_csv(outdir / "trace.csv", trace, prov),
        write_occupancy_csv(outdir / "occupancy.csv", series, prov),
    ]
    write_manifest(outdir, [p.name for p in paths], _run_provenance("simulate", seed))
    if args.verbose:
        for p in paths:
            print(f"wrote {p}", file=sys.stderr)
    total = series.admitted + series.blocked
    frac = series.blocked / total if total else float("nan")
    print(
        f"simulate: arrivals={total} admitted={series.admitted} blocked={series.blocked} "
        f"blocking_fraction={frac:.6g} -> {outdir}"
    )
    return 0


def _cmd_validate(args) -> int:
    cfg = _experiment_config(_gather(args))
    outdir = _prepare_outdir(args)
    report = run_validation_suite(cfg)
    path = outdir / "validation_report.txt"
    header = "".join(f"# {k}={v}\n" for k, v in _run_provenance("validate", cfg.seed).items())
    path.write_text(header + report.render())
    print(report.render(), end="")
    if args.verbose:
        print(f"wrote {path}", file=sys.stderr)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arrivalab",
        description="Arrival-process laboratory: heavy-tailed vs exponential arrivals, "
        "capacity-bounded occupancy, deterministic CSV output.",
    )
    parser.add_argument("--version", action="version", version=f"arrivalab {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"master seed (default {DEFAULT_SEED})")
    common.add_argument("--out", default=DEFAULT_OUT, help="output directory (default: %(default)s)")
    common.add_argument("--config", default=None, help="flat key=value config file")
    common.add_argument("--horizon", type=float, default=None, help="simulation horizon in time units")
    common.add_argument("--replications", type=int, default=None, help="replications per cell")
    common.add_argument("--verbose", action="store_true", help="report every file written")

    curves = argparse.ArgumentParser(add_help=False)
    curves.add_argument("--exp-rate", dest="exp_rate", type=float, default=None,
                        help="rate of the exponential baseline")
    curves.add_argument("--x-max", dest="x_max", type=float, default=None, help="curve grid maximum")
    curves.add_argument("--x-step", dest="x_step", type=float, default=None, help="curve grid step")

    occ = argparse.ArgumentParser(add_help=False)
    occ.add_argument("--capacity", type=lambda s: None if s.lower() in ("none", "unbounded") else int(s),
                     default=None, help="location capacity (integer or 'unbounded')")
    occ.add_argument("--holding", choices=("exponential", "lomax", INFINITE_HOLD), default=None,
                     help="holding-time family")
    occ.add_argument("--holding-rate", dest="holding_rate", type=float, default=None,
                     help="holding-time rate (1/mean)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep-alpha", parents=[common, curves, occ],
                       help="sweep the Pareto shape values; one CSV per cell")
    p.add_argument("--alpha", action="append", type=float, help="shape value (repeatable)")
    p.add_argument("--beta", action="append", type=float, help="two-parameter scale value (repeatable)")
    p.add_argument("--nodes", type=int, default=None, help="node budget / default capacity")
    p.set_defaults(func=_cmd_sweep_alpha)

    p = sub.add_parser("sweep-rate", parents=[common, occ],
                       help="sweep the arrival rates; one CSV per cell")
    p.add_argument("--rate", action="append", type=float, help="arrival rate (repeatable)")
    p.add_argument("--nodes", type=int, default=None, help="node budget: pmf support and default capacity")
    p.set_defaults(func=_cmd_sweep_rate)

    p = sub.add_parser("compare", parents=[common, curves],
                       help="density curves of every family plus crossover summary")
    p.add_argument("--alpha", action="append", type=float, help="shape value (repeatable)")
    p.add_argument("--beta", action="append", type=float, help="two-parameter scale value (repeatable)")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("simulate", parents=[common, occ],
                       help="one occupancy simulation: trace + step series CSVs")
    p.add_argument("--family", choices=_SIM_FAMILIES, default=None, help="arrival-gap family")
    p.add_argument("--rate", type=float, default=None, help="exponential arrival rate")
    p.add_argument("--alpha", type=float, default=None, help="Pareto shape")
    p.add_argument("--beta", type=float, default=None, help="Lomax scale")
    p.add_argument("--arrivals", default=None, help="comma-separated explicit arrival times (fixture)")
    p.add_argument("--label", default=None, help="scenario label echoed into provenance")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("validate", parents=[common],
                       help="run the validation suite; exit 0 iff all checks pass")
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
