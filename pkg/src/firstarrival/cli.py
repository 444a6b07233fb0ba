"""Command line front end.

Every command prints one JSON object::

    {"command": ..., "schema_version": 1, "mode": ..., "inputs": {...}, "result": ...}

Rational values are ``"num/den"`` strings.  Exit codes: 0 success, 1
computational error, 2 usage error.  Errors print
``{"command": ..., "schema_version": 1, "error": {"kind": ..., "message": ...}}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import bounds, exact, montecarlo, resistance, series, special
from .errors import SpreadError, UsageError
from .graphs import glue_parallel, glue_series, path_graph
from .multigraph import MODES, RATIONAL, MultiGraph, format_scalar, load_graph, to_scalar

SCHEMA_VERSION = 1

COMMANDS = (
    "exact",
    "pmf",
    "ogf-eval",
    "resistance",
    "tau",
    "special-kn",
    "special-ppaths",
    "reduce-demo",
    "bounds",
    "reliability",
    "simulate",
    "equiv-check",
    "conjecture-scan",
)

# commands reading a graph file, and those taking --p/--q
_GRAPH = {"exact", "pmf", "ogf-eval", "resistance", "tau", "bounds", "reliability", "simulate", "equiv-check", "conjecture-scan"}
_PROB = {"exact", "pmf", "ogf-eval", "tau", "special-kn", "reduce-demo", "bounds", "simulate", "equiv-check"}
_PROB_REQUIRED = {"tau", "special-kn", "reduce-demo", "bounds"}


@dataclass
class CommandRequest:
    command: str
    graph: str | None = None
    s: str | None = None
    t: str | None = None
    p: Fraction | None = None
    q: Fraction | None = None
    mode: str = RATIONAL
    pretty: bool = False
    options: dict = field(default_factory=dict)

    @property
    def probability(self) -> Fraction | None:
        if self.p is not None:
            return self.p
        if self.q is not None:
            return 1 - self.q
        return None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)

    def exit(self, status=0, message=None):
        if status:
            raise UsageError((message or "").strip() or "usage error")
        if message:
            sys.stderr.write(message)
        raise SystemExit(status)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="firstarrival", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--mode", choices=MODES, default=RATIONAL)
        sp.add_argument("--pretty", action="store_true")
        if name in _GRAPH:
            sp.add_argument("-g", "--graph", required=True)
            sp.add_argument("-s", required=True)
            sp.add_argument("-t", required=True)
        if name in _PROB:
            sp.add_argument("--p")
            sp.add_argument("--q")
        if name in ("exact", "pmf", "ogf-eval"):
            sp.add_argument("--max-states", type=int, default=exact.DEFAULT_MAX_STATES)
        if name == "pmf":
            sp.add_argument("--n-max", type=int)
        if name == "ogf-eval":
            sp.add_argument("--z", required=True)
        if name == "special-kn":
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--i", type=int, default=1)
        if name in ("special-ppaths", "reduce-demo"):
            sp.add_argument("--lengths", required=True, help="comma-separated path lengths")
        if name == "reduce-demo":
            sp.add_argument("--kind", choices=("series", "parallel"), required=True)
            sp.add_argument("--trunc", type=int, default=40)
        if name in ("simulate", "equiv-check"):
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--samples", type=int, default=100_000)
            sp.add_argument("--replicas", type=int, default=10)
            sp.add_argument("--workers", type=int, default=1)
        if name == "simulate":
            sp.add_argument("--sampler", choices=("spread", "geometric", "exponential"), default="spread")
        if name == "conjecture-scan":
            sp.add_argument("--grid", default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")
    return parser


def _fraction(text: str, what: str) -> Fraction:
    try:
        return to_scalar(text, RATIONAL)
    except (SpreadError, ValueError):
        raise UsageError(f"{what} is not a number: {text!r}") from None


def parse_args(argv) -> CommandRequest:
    """Validate ``argv`` into a :class:`CommandRequest`; raises UsageError."""
    ns = _build_parser().parse_args(list(argv))
    opts = vars(ns).copy()
    req = CommandRequest(command=opts.pop("command"), mode=opts.pop("mode"), pretty=opts.pop("pretty"))
    req.graph = opts.pop("graph", None)
    req.s = opts.pop("s", None)
    req.t = opts.pop("t", None)
    p, q = opts.pop("p", None), opts.pop("q", None)
    if p is not None and q is not None:
        raise UsageError("give at most one of --p and --q")
    if p is not None:
        req.p = _fraction(p, "--p")
        if not 0 < req.p <= 1:
            raise UsageError("--p must lie in (0, 1]")
    if q is not None:
        req.q = _fraction(q, "--q")
        if not 0 <= req.q < 1:
            raise UsageError("--q must lie in [0, 1)")
    if req.command in _PROB_REQUIRED and req.probability is None:
        raise UsageError(f"{req.command} requires --p or --q")
    if "lengths" in opts:
        try:
            opts["lengths"] = [int(x) for x in opts["lengths"].split(",")]
        except ValueError:
            raise UsageError("--lengths must be comma-separated integers") from None
        if not opts["lengths"] or min(opts["lengths"]) < 1:
            raise UsageError("--lengths must be positive")
    if "z" in opts:
        opts["z"] = _fraction(opts["z"], "--z")
    if "grid" in opts:
        opts["grid"] = [_fraction(x, "--grid") for x in opts["grid"].split(",")]
    for key in ("samples", "replicas", "workers", "trunc", "max_states"):
        if key in opts and opts[key] < 1:
            raise UsageError(f"--{key.replace('_', '-')} must be positive")
    if opts.get("n_max") is not None and opts["n_max"] < 0:
        raise UsageError("--n-max must be nonnegative")
    if "samples" in opts and opts["samples"] % opts["replicas"]:
        raise UsageError("--samples must be a multiple of --replicas")
    req.options = opts
    return req


def _load(req: CommandRequest, placeholder: bool = False) -> MultiGraph:
    p = req.probability
    default = p if p is not None else ("1/2" if placeholder else None)
    g = load_graph(req.graph, mode=req.mode, default_p=default)
    if p is not None:
        g = g.with_probability(p)
    return g


def _v(x):
    if isinstance(x, (list, tuple)):
        return [_v(y) for y in x]
    if isinstance(x, (Fraction, float)):
        return format_scalar(x)
    return x


def _inputs(req: CommandRequest) -> dict:
    out = {}
    for key in ("graph", "s", "t"):
        if getattr(req, key) is not None:
            out[key] = getattr(req, key)
    if req.p is not None:
        out["p"] = format_scalar(req.p)
    if req.q is not None:
        out["q"] = format_scalar(req.q)
    for key in sorted(req.options):
        val = req.options[key]
        if val is None:
            continue
        out[key] = _v(val) if isinstance(val, (Fraction, list)) else val
    return out


def _cfg(req) -> montecarlo.SimConfig:
    o = req.options
    return montecarlo.SimConfig(
        seed=o["seed"], replicas=o["replicas"], samples_per_replica=o["samples"] // o["replicas"], workers=o["workers"]
    )


def _estimate(est: montecarlo.SimEstimate) -> dict:
    hist = est.histogram[:-1]
    nz = [i for i, c in enumerate(hist) if c]
    last = nz[-1] + 1 if nz else 0
    return {
        "mean": est.mean,
        "stderr": est.stderr,
        "n": est.n,
        "histogram": [int(c) for c in hist[:last]],
        "overflow": est.overflow,
    }


def run(req: CommandRequest) -> dict:
    """Execute a validated request and return the JSON document as a dict."""
    cmd = req.command
    o = req.options
    doc = {"command": cmd, "schema_version": SCHEMA_VERSION, "mode": req.mode, "inputs": _inputs(req)}

    if cmd in ("exact", "pmf", "ogf-eval"):
        g = _load(req)
        space = exact.build_state_space(g, g.vset(req.s), req.t, o["max_states"])
        if cmd == "exact":
            result = format_scalar(exact.expected_arrival(space).value)
        elif cmd == "pmf":
            pmf = exact.arrival_pmf(space, o.get("n_max"))
            result = {"probs": _v(pmf.probs), "tail": format_scalar(pmf.tail)}
        else:
            result = format_scalar(exact.ogf_eval(space, to_scalar(o["z"], req.mode)))
    elif cmd == "resistance":
        g = _load(req, placeholder=True)
        result = format_scalar(resistance.spreading_resistance(g, g.vset(req.s), req.t))
    elif cmd == "tau":
        g = _load(req)
        result = format_scalar(resistance.exponential_expectation(g, g.vset(req.s), req.t, to_scalar(req.probability, req.mode)))
    elif cmd == "special-kn":
        q = to_scalar(1 - req.probability, req.mode)
        result = {
            "T": format_scalar(special.kn_expected(o["n"], q, o["i"])),
            "rho": format_scalar(special.kn_resistance(o["n"])),
        }
    elif cmd == "special-ppaths":
        result = format_scalar(special.parallel_paths_resistance(o["lengths"]))
    elif cmd == "reduce-demo":
        result = _reduce_demo(req)
    elif cmd == "bounds":
        g = _load(req)
        q = to_scalar(1 - req.probability, req.mode)
        rep = bounds.bounds_report(g, req.s, req.t, q)
        result = {
            "lower_reliability": format_scalar(rep.lower_reliability),
            "exact_T": format_scalar(rep.exact_T),
            "upper_distance": format_scalar(rep.upper_distance),
            "lower_lyons_tau": format_scalar(rep.lower_lyons_tau),
            "exact_tau": format_scalar(rep.exact_tau),
            "violations": rep.violations(),
        }
    elif cmd == "reliability":
        g = _load(req, placeholder=True)
        result = list(bounds.reliability_polynomial(g, req.s, req.t).c)
    elif cmd == "simulate":
        g = _load(req)
        cfg = _cfg(req)
        if o["sampler"] == "spread":
            est = montecarlo.simulate_spread(g, req.s, req.t, cfg)
        elif o["sampler"] == "geometric":
            est = montecarlo.sample_geometric_sp(g, req.s, req.t, cfg)
        else:
            if g.uniform_p is None:
                raise UsageError("the exponential sampler needs a single intensity; pass --p")
            est = montecarlo.sample_exponential_sp(g, req.s, req.t, g.uniform_p, cfg)
        result = _estimate(est)
    elif cmd == "equiv-check":
        g = _load(req)
        cfg = _cfg(req)
        spread = montecarlo.simulate_spread(g, req.s, req.t, cfg)
        geo = montecarlo.sample_geometric_sp(g, req.s, req.t, cfg)
        pmf = exact.arrival_pmf(exact.build_state_space(g, g.vset(req.s), req.t))
        result = {
            "exact_T": format_scalar(exact.expected_arrival(exact.build_state_space(g, g.vset(req.s), req.t)).value),
            "spread_mean": spread.mean,
            "spread_stderr": spread.stderr,
            "geometric_mean": geo.mean,
            "geometric_stderr": geo.stderr,
            "two_sample_pvalue": montecarlo.two_sample_chi_square(spread, geo),
            "spread_vs_exact_pvalue": montecarlo.chi_square_vs_pmf(spread, pmf.probs),
            "geometric_vs_exact_pvalue": montecarlo.chi_square_vs_pmf(geo, pmf.probs),
        }
    elif cmd == "conjecture-scan":
        g = _load(req, placeholder=True)
        rep = bounds.conjecture_scan(g, req.s, req.t, [to_scalar(x, req.mode) for x in o["grid"]])
        result = {
            "rho": format_scalar(rep.rho),
            "rows": [
                {"q": format_scalar(r.q), "tau": format_scalar(r.tau), "T": format_scalar(r.T), "violation": r.violation}
                for r in rep.rows
            ],
            "findings": [{"q": format_scalar(r.q), "tau": format_scalar(r.tau), "T": format_scalar(r.T)} for r in rep.findings],
        }
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown command {cmd!r}")
    doc["result"] = result
    return doc


def _reduce_demo(req: CommandRequest) -> dict:
    o = req.options
    N = o["trunc"]
    q = to_scalar(1 - req.probability, req.mode)
    lengths = o["lengths"]
    parts = [series.path_ogf(r, q, N) for r in lengths]
    graphs = [path_graph(r, p=1 - q, mode=req.mode) for r in lengths]
    phi, g = parts[0], graphs[0]
    combine = series.series_reduce if o["kind"] == "series" else series.parallel_reduce
    glue = glue_series if o["kind"] == "series" else glue_parallel
    for part, h in zip(parts[1:], graphs[1:]):
        phi = combine(phi, part)
        g = glue(g, h)
    space = exact.build_state_space(g, g.vset("s"), "t")
    pmf = exact.arrival_pmf(space, N)
    return {
        "reduced": _v(list(phi)),
        "engine": _v(pmf.probs),
        "match": list(phi) == pmf.probs if req.mode == RATIONAL else max(abs(a - b) for a, b in zip(phi, pmf.probs)) < 1e-12,
        "expected": format_scalar(exact.expected_arrival(space).value),
    }


def _emit(doc: dict, pretty: bool) -> None:
    sys.stdout.write(json.dumps(doc, indent=2 if pretty else None) + "\n")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    command = next((a for a in argv if a in COMMANDS), None)
    pretty = "--pretty" in argv
    try:
        req = parse_args(argv)
    except UsageError as exc:
        _emit({"command": command, "schema_version": SCHEMA_VERSION, "error": {"kind": exc.kind, "message": str(exc)}}, pretty)
        return 2
    try:
        doc = run(req)
    except UsageError as exc:
        _emit({"command": command, "schema_version": SCHEMA_VERSION, "error": {"kind": exc.kind, "message": str(exc)}}, pretty)
        return 2
    except (SpreadError, OSError, ArithmeticError, ValueError) as exc:
        kind = exc.kind if isinstance(exc, SpreadError) else type(exc).__name__
        _emit({"command": command, "schema_version": SCHEMA_VERSION, "error": {"kind": kind, "message": str(exc)}}, pretty)
        return 1
    _emit(doc, req.pretty)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
