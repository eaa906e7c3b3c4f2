"""Command-line front end.

Two-level subcommands cover every experiment: `bases verify|stats`,
`assist`, `assist-optimize`, `swap sweep|crossover|outcomes`,
`perc threshold|curve` and `report table1`.  Common flags: --seed
(default 42, env IQCONC_SEED as fallback), --config pointing at a
`key = value` file whose entries are overridden by explicit flags,
--out for a target file (stdout otherwise), --format csv|json|text,
and --workers which only affects speed, never results.

Exit codes: 0 success, 1 argument or precondition errors, 2
verification failures, 3 file I/O failures.  CSV output carries one
`#` header line echoing the parameters; JSON output wraps results in
an envelope whose elapsed_ms field comes last so the reproducible part
is a prefix of the file.
"""

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__, assist, bases, perc, swap

DEFAULT_SEED = 42
SEED_ENV_VAR = "IQCONC_SEED"
LAMBDA_NORM_SLACK = 1e-6

_PAIRS = {"AB": (0, 1), "AC": (0, 2), "BC": (1, 2)}
_PARTIES = {"A": 0, "B": 1, "C": 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class RunConfig:
    command: str
    parameters: Dict
    seed: int
    output_path: Optional[str]
    output_format: Optional[str]
    workers: Optional[int]


@dataclass(frozen=True)
class ReportEnvelope:
    tool_version: str
    command: str
    parameters: Dict
    results: object
    elapsed_ms: int

    def to_json(self) -> str:
        payload = {
            "tool_version": self.tool_version,
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "elapsed_ms": self.elapsed_ms,
        }
        return json.dumps(payload, indent=2) + "\n"


@dataclass(frozen=True)
class _CommandResult:
    results: object
    default_format: str
    exit_code: int = 0
    csv: Optional[Tuple[Sequence[str], List[Sequence]]] = None


def _uint(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


# echo key -> argparse dest, in emission order, per command
_ECHO_FIELDS = {
    "bases-verify": (("basis", "basis"), ("tol", "tol")),
    "bases-stats": (("basis", "basis"),),
    "assist": (
        ("l0", "l0"), ("l1", "l1"), ("l2", "l2"), ("l3", "l3"), ("l4", "l4"),
        ("phi", "phi"), ("pair", "pair"), ("basis", "basis"),
    ),
    "assist-optimize": (
        ("l0", "l0"), ("l1", "l1"), ("l2", "l2"), ("l3", "l3"), ("l4", "l4"),
        ("phi", "phi"), ("helper", "helper"),
    ),
    "swap-sweep": (("from", "start"), ("to", "stop"), ("step", "step")),
    "swap-crossover": (),
    "swap-outcomes": (("phi1", "phi1"), ("basis", "basis")),
    "perc-threshold": (
        ("lattice", "lattice"), ("L", "linear_size"), ("trials", "trials"),
        ("boundary", "boundary"),
    ),
    "perc-curve": (
        ("lattice", "lattice"), ("L", "linear_size"), ("trials", "trials"),
        ("from", "start"), ("to", "stop"), ("step", "step"),
        ("boundary", "boundary"),
    ),
    "report-table1": (),
}
_SEEDED_COMMANDS = ("perc-threshold", "perc-curve")


def _add_common(parser: _Parser):
    parser.add_argument("--config", help="key = value file; flags override it")
    parser.add_argument("--seed", type=_uint, default=None,
                        help=f"RNG seed (default {DEFAULT_SEED}, or ${SEED_ENV_VAR})")
    parser.add_argument("--out", default=None, help="output file (default stdout)")
    parser.add_argument("--format", choices=("csv", "json", "text"), default=None)
    parser.add_argument("--workers", type=_positive_int, default=None,
                        help="worker threads; affects speed only")


def _add_lambda_flags(parser: _Parser):
    for name in ("l0", "l1", "l2", "l3", "l4"):
        parser.add_argument(f"--{name}", type=float, default=0.0)
    parser.add_argument("--phi", type=float, default=0.0)
    parser.add_argument("--a", type=float, default=None,
                        help="family shorthand: l0 = l1 = sqrt((1-a^2)/2), l4 = a")


def _build_parser() -> _Parser:
    top = _Parser(prog="iqconc", description=__doc__)
    top.add_argument("--version", action="version", version=__version__)
    groups = top.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def attach(group, actions):
        gp = groups.add_parser(group)
        if actions is None:
            gp.set_defaults(action=None)
            _add_common(gp)
            return {None: gp}
        sub = gp.add_subparsers(dest="action", required=True, parser_class=_Parser)
        out = {}
        for action in actions:
            ap = sub.add_parser(action)
            _add_common(ap)
            out[action] = ap
        return out

    b = attach("bases", ("verify", "stats"))
    b["verify"].add_argument("--basis", required=True)
    b["verify"].add_argument("--tol", type=float, default=1e-12)
    b["stats"].add_argument("--basis", required=True)

    a = attach("assist", None)[None]
    _add_lambda_flags(a)
    a.add_argument("--pair", required=True, type=str.upper, choices=sorted(_PAIRS))
    a.add_argument("--basis", required=True,
                   help="hat, pauli-x, real:<alpha> or complex:<alpha>,<beta>")

    ao = attach("assist-optimize", None)[None]
    _add_lambda_flags(ao)
    ao.add_argument("--helper", required=True, type=str.upper, choices=sorted(_PARTIES))

    s = attach("swap", ("sweep", "crossover", "outcomes"))
    s["sweep"].add_argument("--from", dest="start", type=float, default=0.0)
    s["sweep"].add_argument("--to", dest="stop", type=float, default=0.5)
    s["sweep"].add_argument("--step", type=float, default=0.001)
    s["outcomes"].add_argument("--phi1", type=float, required=True)
    s["outcomes"].add_argument("--basis", choices=("ghz", "gw"), default="gw")

    p = attach("perc", ("threshold", "curve"))
    for ap in (p["threshold"], p["curve"]):
        ap.add_argument("--lattice", required=True,
                        choices=("triangular-site", "honeycomb-bond"))
        ap.add_argument("--L", dest="linear_size", type=_positive_int, required=True)
        ap.add_argument("--trials", type=_positive_int, required=True)
        ap.add_argument("--boundary", choices=perc.BOUNDARIES,
                        default="wrap-horizontal")
    p["curve"].add_argument("--from", dest="start", type=float, default=0.3)
    p["curve"].add_argument("--to", dest="stop", type=float, default=0.7)
    p["curve"].add_argument("--step", type=float, default=0.05)

    attach("report", ("table1",))
    return top


def _read_config_file(path: str) -> Dict[str, str]:
    pairs = {}
    with open(path, "r", encoding="utf-8") as handle:
        for raw in handle:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"config line is not key = value: {raw.strip()!r}")
            key, value = line.split("=", 1)
            pairs[key.strip()] = value.strip()
    return pairs


def _merge_config_tokens(argv: List[str]) -> List[str]:
    """Splice config-file entries in as flags ahead of the explicit
    ones, so argparse's last-wins rule gives flags precedence."""
    path = None
    for i, token in enumerate(argv):
        if token == "--config":
            path = argv[i + 1] if i + 1 < len(argv) else None
        elif token.startswith("--config="):
            path = token.split("=", 1)[1]
    if path is None:
        return argv
    tokens: List[str] = []
    for key, value in _read_config_file(path).items():
        tokens.extend([f"--{key}", value])
    words = 2 if argv and argv[0] in ("bases", "swap", "perc", "report") else 1
    words = min(words, len(argv))
    return argv[:words] + tokens + argv[words:]


def _resolve_seed(flag_value: Optional[int]) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV_VAR} is not an integer: {env!r}")
        if value < 0:
            raise UsageError(f"{SEED_ENV_VAR} must be non-negative: {env!r}")
        return value
    return DEFAULT_SEED


def parse_args(argv: Sequence[str]) -> RunConfig:
    ns = _build_parser().parse_args(_merge_config_tokens(list(argv)))
    command = ns.group if ns.action is None else f"{ns.group}-{ns.action}"
    parameters = {key: getattr(ns, dest) for key, dest in _ECHO_FIELDS[command]}
    if getattr(ns, "a", None) is not None:
        for key in ("l0", "l1", "l2", "l3", "l4", "phi"):
            if parameters.pop(key, 0.0) != 0.0:
                raise UsageError(f"--a cannot be combined with --{key}")
        parameters = {"a": ns.a, **parameters}
    seed = _resolve_seed(ns.seed)
    if command in _SEEDED_COMMANDS:
        parameters["seed"] = seed
    return RunConfig(
        command=command,
        parameters=parameters,
        seed=seed,
        output_path=ns.out,
        output_format=ns.format,
        workers=ns.workers,
    )


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _echo(config: RunConfig) -> str:
    parts = [f"command={config.command}"]
    parts += [f"{k}={_fmt(v)}" for k, v in config.parameters.items()]
    parts.append(f"tool_version={__version__}")
    return " ".join(parts)


def _canonical_from_params(p: Dict) -> assist.CanonicalThreeQubit:
    if "a" in p:
        a = p["a"]
        if not 0.0 <= a <= 1.0:
            raise ValueError(f"--a must lie in [0, 1], got {a}")
        b = math.sqrt((1.0 - a * a) / 2.0)
        return assist.CanonicalThreeQubit(b, b, 0.0, 0.0, a)
    lams = np.array([p["l0"], p["l1"], p["l2"], p["l3"], p["l4"]], dtype=float)
    total = float(np.sum(lams**2))
    if abs(total - 1.0) > LAMBDA_NORM_SLACK:
        raise ValueError(
            f"lambda coefficients are far from normalised (sum of squares {total:.6g})"
        )
    lams /= math.sqrt(total)
    return assist.CanonicalThreeQubit(*lams, phi=p["phi"])


def _bases_verify(config, map_fn) -> _CommandResult:
    p = config.parameters
    report = bases.verify_basis(bases.basis_from_label(p["basis"]), p["tol"])
    results = {
        "basis": report.label,
        "tol": report.tol,
        "orthonormality_residual": report.orthonormality_residual,
        "completeness_residual": report.completeness_residual,
        "passed": report.passed,
    }
    return _CommandResult(results, "text", exit_code=0 if report.passed else 2)


def _bases_stats(config, map_fn) -> _CommandResult:
    basis = bases.basis_from_label(config.parameters["basis"])
    results = {
        "basis": basis.label,
        "average_scp": bases.basis_average_scp(basis),
        "average_roi": bases.basis_average_roi(basis),
    }
    return _CommandResult(results, "json")


def _assist(config, map_fn) -> _CommandResult:
    p = config.parameters
    state = assist.canonical_to_state(_canonical_from_params(p))
    i, j = _PAIRS[p["pair"]]
    helper = 3 - i - j
    value = assist.assisted_yield(state, helper, bases.basis_from_label(p["basis"]))
    results = {
        "pair": p["pair"],
        "helper": "ABC"[helper],
        "yield": value,
        "eoa_bound": assist.eoa_bound(state, i, j),
    }
    return _CommandResult(results, "json")


def _assist_optimize(config, map_fn) -> _CommandResult:
    p = config.parameters
    state = assist.canonical_to_state(_canonical_from_params(p))
    helper = _PARTIES[p["helper"]]
    i, j = [q for q in range(3) if q != helper]
    alpha, beta, value = assist.optimize_qubit_basis(state, helper)
    results = {
        "helper": p["helper"],
        "alpha": alpha,
        "beta": beta,
        "yield": value,
        "eoa_bound": assist.eoa_bound(state, i, j),
    }
    return _CommandResult(results, "json")


def _swap_sweep(config, map_fn) -> _CommandResult:
    p = config.parameters
    points = swap.sweep_yields(p["from"], p["to"], p["step"])
    results = [
        {
            "phi1": pt.phi1,
            "yield_ghz": pt.yield_ghz,
            "yield_gw": pt.yield_gw,
            "advantage": pt.advantage,
        }
        for pt in points
    ]
    header = ("phi1", "yield_ghz", "yield_gw", "advantage")
    rows = [(pt.phi1, pt.yield_ghz, pt.yield_gw, pt.advantage) for pt in points]
    return _CommandResult(results, "csv", csv=(header, rows))


def _swap_crossover(config, map_fn) -> _CommandResult:
    star, adv = swap.max_advantage()
    results = {
        "crossover_phi1": swap.crossover_phi1(),
        "max_adv_phi1": star,
        "max_adv": adv,
    }
    return _CommandResult(results, "json")


def _swap_outcomes(config, map_fn) -> _CommandResult:
    p = config.parameters
    basis = bases.gw_basis() if p["basis"] == "gw" else bases.ghz_basis()
    outs = swap.swap_measure(swap.TwoQubitPhi.from_phi1(p["phi1"]), basis)
    results = [
        {"index": o.index, "probability": o.probability, "e2": o.e2} for o in outs
    ]
    header = ("index", "probability", "e2")
    rows = [(o.index, o.probability, o.e2) for o in outs]
    return _CommandResult(results, "json", csv=(header, rows))


def _perc_threshold(config, map_fn) -> _CommandResult:
    p = config.parameters
    estimator = (
        perc.estimate_site_threshold
        if p["lattice"] == "triangular-site"
        else perc.estimate_bond_threshold_honeycomb
    )
    est = estimator(p["L"], p["trials"], config.seed, boundary=p["boundary"],
                    map_fn=map_fn)
    results = {
        "p_c_estimate": est.p_c_estimate,
        "p_values": list(est.p_values),
        "spanning_fraction": list(est.spanning_fraction),
        "standard_error": list(est.standard_error),
    }
    header = ("p", "L", "trials", "spanning_fraction", "std_err")
    rows = [
        (pv, p["L"], p["trials"], f, e)
        for pv, f, e in zip(est.p_values, est.spanning_fraction, est.standard_error)
    ]
    return _CommandResult(results, "json", csv=(header, rows))


def _perc_curve(config, map_fn) -> _CommandResult:
    p = config.parameters
    if not 0.0 <= p["from"] < p["to"] <= 1.0:
        raise ValueError(f"need 0 <= from < to <= 1, got [{p['from']}, {p['to']}]")
    if p["step"] <= 0.0:
        raise ValueError(f"step must be positive, got {p['step']}")
    count = int(math.floor((p["to"] - p["from"]) / p["step"] + 1e-9))
    grid = [min(p["from"] + i * p["step"], p["to"]) for i in range(count + 1)]
    est = perc.spanning_curve(
        p["lattice"], grid, p["L"], p["trials"], config.seed,
        boundary=p["boundary"], map_fn=map_fn,
    )
    results = {
        "p_values": list(est.p_values),
        "spanning_fraction": list(est.spanning_fraction),
        "standard_error": list(est.standard_error),
    }
    header = ("p", "L", "trials", "spanning_fraction", "std_err")
    rows = [
        (pv, p["L"], p["trials"], f, e)
        for pv, f, e in zip(est.p_values, est.spanning_fraction, est.standard_error)
    ]
    return _CommandResult(results, "csv", csv=(header, rows))


def _report_table1(config, map_fn) -> _CommandResult:
    r = perc.strategy_report()
    results = {
        "p_ghz": r.p_ghz,
        "p_gw": r.p_gw,
        "s_ghz": r.s_ghz,
        "s_gw": r.s_gw,
        "bond_reduction_pct": r.bond_reduction_pct,
        "ebit_reduction_pct": r.ebit_reduction_pct,
        "gw_avg_scp": r.gw_avg_scp,
        "gw_avg_roi": r.gw_avg_roi,
        "ghz_avg_scp": r.ghz_avg_scp,
        "ghz_avg_roi": r.ghz_avg_roi,
    }
    return _CommandResult(results, "json")


_RUNNERS = {
    "bases-verify": _bases_verify,
    "bases-stats": _bases_stats,
    "assist": _assist,
    "assist-optimize": _assist_optimize,
    "swap-sweep": _swap_sweep,
    "swap-crossover": _swap_crossover,
    "swap-outcomes": _swap_outcomes,
    "perc-threshold": _perc_threshold,
    "perc-curve": _perc_curve,
    "report-table1": _report_table1,
}


def _render_csv(config: RunConfig, outcome: _CommandResult) -> str:
    if outcome.csv is not None:
        header, rows = outcome.csv
    elif isinstance(outcome.results, dict):
        header = tuple(outcome.results)
        rows = [tuple(outcome.results.values())]
    else:
        header = tuple(outcome.results[0]) if outcome.results else ()
        rows = [tuple(item.values()) for item in outcome.results]
    lines = ["# " + _echo(config), ",".join(header)]
    lines += [",".join(_fmt(cell) for cell in row) for row in rows]
    return "\n".join(lines) + "\n"


def _render_text(config: RunConfig, outcome: _CommandResult) -> str:
    lines = ["# " + _echo(config)]
    if isinstance(outcome.results, dict):
        lines += [f"{k} = {_fmt(v)}" for k, v in outcome.results.items()]
    else:
        for item in outcome.results:
            lines.append(" ".join(f"{k}={_fmt(v)}" for k, v in item.items()))
    return "\n".join(lines) + "\n"


def _render(config: RunConfig, outcome: _CommandResult, fmt: str,
            elapsed_ms: int) -> str:
    if fmt == "csv":
        return _render_csv(config, outcome)
    if fmt == "text":
        return _render_text(config, outcome)
    envelope = ReportEnvelope(
        tool_version=__version__,
        command=config.command,
        parameters=dict(config.parameters),
        results=outcome.results,
        elapsed_ms=elapsed_ms,
    )
    return envelope.to_json()


def _write_output(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def dispatch(config: RunConfig) -> int:
    started = time.perf_counter()
    runner = _RUNNERS[config.command]
    try:
        if config.workers and config.workers > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                outcome = runner(config, pool.map)
        else:
            outcome = runner(config, map)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    fmt = config.output_format or outcome.default_format
    try:
        _write_output(_render(config, outcome, fmt, elapsed_ms), config.output_path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return outcome.exit_code


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return dispatch(config)


if __name__ == "__main__":
    sys.exit(main())
