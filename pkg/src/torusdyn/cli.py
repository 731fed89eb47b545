"""Command-line front end: ``torusdyn <subcommand> ...``.

Exit codes: 0 success, 1 precondition or input error, 2 certification
failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import logging
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from . import corpus
from .automorphism import NotAnAutomorphism, TorusAut
from .cohomology import DegreeError, ModelMismatch, TorusModel, nef_class
from .degrees import RawModel, StructureError, degree_profile, growth_limit_estimate, zero_entropy
from .entropy_sim import TorusMap, TorusMapError, entropy_estimate
from .groups import (
    ChainError,
    MatrixGroup,
    UnsupportedGroup,
    WordEvaluator,
    derived_series_probe,
    invariant_chain,
    phi_bound_check,
    phi_map,
    ping_pong_certificate,
    rank_bound_check,
    reduced_words,
    zero_entropy_kernel_check,
)
from .hodge import (
    PreconditionError,
    hr_inequality,
    random_kahler_form,
    random_nef_form,
    signature_check,
    trial_rng,
    whr_verify,
)
from .intervals import Interval
from .linalg import ExactMatrix
from .polynomial import format_poly
from .units import FieldError, NotAUnit, NotEnoughUnits, TotallyRealField, unit_search

EXIT_OK, EXIT_PRECONDITION, EXIT_CERTIFICATION, EXIT_USAGE = 0, 1, 2, 64
ENV_BITS = "TORUSDYN_PRECISION_BITS"
DEFAULT_BITS = 128

PRECONDITION_ERRORS = (
    NotAnAutomorphism,
    DegreeError,
    ModelMismatch,
    StructureError,
    PreconditionError,
    FieldError,
    NotAUnit,
    NotEnoughUnits,
    TorusMapError,
    UnsupportedGroup,
    FileNotFoundError,
)

log = logging.getLogger("torusdyn")


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    precision_bits: int = DEFAULT_BITS
    rel_tol: str = "1/1000000000000"
    word_cap: int = 3
    seed: int = 7
    output_format: str = "json"
    input_paths: list[str] = field(default_factory=list)

    @property
    def digits(self) -> int:
        return max(6, min(60, int(self.precision_bits * math.log10(2)) - 4))

    @property
    def tolerance(self) -> Fraction:
        return Fraction(self.rel_tol)


def default_bits() -> int:
    raw = os.environ.get(ENV_BITS)
    if raw is None:
        return DEFAULT_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise UsageError(f"{ENV_BITS} must be an integer, got {raw!r}")
    if bits < 32:
        raise UsageError(f"{ENV_BITS} must be at least 32")
    return bits


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


# -- input helpers ----------------------------------------------------------------


def load_json_text(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}: parse error at line {e.lineno}, column {e.colno}: {e.msg}")


def load_json_file(path: str):
    with open(path) as fh:
        return load_json_text(fh.read(), path)


def parse_matrix(text: str) -> ExactMatrix:
    data = load_json_text(text, "--matrix")
    try:
        return TorusAut.from_dict({"matrix": data}).A
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, PRECONDITION_ERRORS):
            raise
        raise InputError(f"--matrix: malformed matrix: {e}")


def iv(x: Interval, cfg: RunConfig) -> list[str]:
    return x.decimal_pair(cfg.digits)


def _est(x: float | None) -> str | None:
    return None if x is None else f"{x:.6f}"


# -- subcommands ---------------------------------------------------------------------


def cmd_degrees(args, cfg: RunConfig) -> tuple[dict, bool]:
    if args.input:
        data = load_json_file(args.input)
        cfg.input_paths.append(args.input)
    elif args.matrix:
        data = {"matrix": load_json_text(args.matrix, "--matrix")}
    else:
        raise UsageError("degrees needs --input or --matrix")
    if args.raw:
        mats = [ExactMatrix([[Fraction(x) for x in row] for row in m]) for m in data["matrices"]]
        f = RawModel(tuple(mats))
    else:
        f = TorusAut.from_dict(data)
    prof = degree_profile(f, cfg.tolerance, with_rho=args.rho and not args.raw)
    out = {"profile": prof.to_dict(cfg.digits)}
    if not args.raw:
        out["matrix"] = f.to_dict()["matrix"]
    ok = all(d.tight for d in prof.degrees)
    if args.growth:
        rows = []
        for p in range(1, f.k):
            g = growth_limit_estimate(f, p, n_max=args.growth, bits=cfg.precision_bits)
            rows.append(
                {
                    "p": p,
                    "last_bracket": str(g.brackets[-1]),
                    "a_n": iv(g.estimates[-1], cfg),
                    "relative_error": iv(g.final_rel_error, cfg),
                }
            )
        out["growth"] = rows
    if prof.rho:
        ok = ok and all(e["bound_holds"] for e in prof.rho.values())
    return out, ok


def cmd_entropy(args, cfg: RunConfig) -> tuple[dict, bool]:
    M = parse_matrix(args.matrix)
    if not M.is_real():
        raise InputError("--matrix: entropy-sim needs a real integer matrix")
    f = TorusMap.from_matrix(M)
    eps = [float(x) for x in args.eps.split(",")]
    est = entropy_estimate(f, eps, args.nmax, args.grid)
    rep = est.to_dict(cfg.digits)
    rep["eps_schedule"] = [str(e) for e in est.eps_schedule]
    for r in rep["runs"]:
        r["eps"] = str(r["eps"])
        r["slope"] = _est(r["slope"])
    rep["h_est"] = _est(est.h_est)
    ok = est.h_est is not None and est.h_ref is not None and est.h_est <= float(est.h_ref.hi) + 0.1
    rep["within_reference_plus_0.1"] = ok
    return {"estimate": rep}, ok


def cmd_hodge(args, cfg: RunConfig) -> tuple[dict, bool]:
    k, trials, seed = args.k, args.trials, cfg.seed
    if not 2 <= k <= 4:
        raise PreconditionError("hodge check supports k = 2, 3, 4")
    model = TorusModel(k)
    sig = []
    for t in range(trials):
        rng = trial_rng(seed, t)
        cs = [random_kahler_form(rng, k) for _ in range(k - 2)]
        last = random_kahler_form(rng, k)
        v = signature_check(cs, last, model)
        sig.append({"trial": t, "signature": list(v.signature), "primitive_inertia": list(v.primitive_inertia), "ok": v.ok})
    ineq_fail = 0
    for t in range(args.inequality_trials):
        rng = trial_rng(seed + 1, t)
        cs = [random_nef_form(rng, k) for _ in range(k - 2)]
        a, b = random_nef_form(rng, k), random_nef_form(rng, k)
        if not hr_inequality(cs, a, b, model).holds:
            ineq_fail += 1
    out = {
        "k": k,
        "signature_trials": sig,
        "signature_ok": all(s["ok"] for s in sig),
        "inequality_trials": args.inequality_trials,
        "inequality_violations": ineq_fail,
    }
    ok = out["signature_ok"] and ineq_fail == 0
    if k >= 3:
        H = ExactMatrix.diag([1] + [0] * (k - 1))
        w = whr_verify([nef_class(H, model)], model, trials=trials, seed=seed)
        out["whr"] = {"theta": "omega(diag(1,0,...))", "trials": len(w.trials), "skipped": w.skipped, "ok": w.ok}
        ok = ok and w.ok
    return out, ok


def _group_from_args(args, cfg: RunConfig) -> MatrixGroup:
    if args.bundled:
        groups = {**corpus.bundled_groups(), **corpus.solvability_examples()}
        if args.bundled not in groups:
            raise PreconditionError(f"unknown bundled group {args.bundled!r}; choose from {sorted(groups)}")
        return groups[args.bundled]
    if not args.input:
        raise UsageError("group analyze needs --input or --bundled")
    cfg.input_paths.append(args.input)
    data = load_json_file(args.input)
    try:
        return MatrixGroup.from_dict(data)
    except (KeyError, TypeError) as e:
        raise InputError(f"{args.input}: malformed group: {e}")


def analyze_group(G: MatrixGroup, cfg: RunConfig) -> tuple[dict, bool]:
    out: dict = {"group": G.to_dict(), "commutative": G.is_commutative()}
    probe = derived_series_probe(G, word_cap=2)
    out["derived_series"] = {
        "status": probe.status,
        "depth": probe.depth,
        "level_sizes": probe.level_sizes,
        "truncated": probe.truncated,
        "free_subgroup": None
        if probe.free_subgroup is None
        else {"delta": str(probe.free_subgroup.delta), "N": probe.free_subgroup.N},
    }
    try:
        chain = invariant_chain(G)
    except (UnsupportedGroup, ChainError) as e:
        out["chain"] = {"status": "unsupported", "reason": str(e)}
        return out, probe.free_subgroup is not None
    image = phi_map(G, chain, cfg.word_cap)
    out["chain"] = {
        "status": "ok",
        "route": chain.route,
        "exact_invariance": chain.verify_exact_invariance(),
        "characters": {
            lab: [iv(c, cfg) for c in chain.characters(g.A)]
            for lab, g in zip(G.labels, G.generators)
        },
    }
    out["phi"] = {
        "word_cap": cfg.word_cap,
        "words": [
            {
                "word": w.label,
                "phi": [iv(x, cfg) for x in w.phi],
                "norm_sup": iv(w.phi_norm, cfg),
                "half_log_d_k_minus_1": iv(w.half_log_dk1, cfg),
                "bound_ok": w.bound_ok,
                "phi_zero_exact": w.phi_zero_exact,
                "zero_entropy": w.zero_entropy,
                "kernel_ok": w.kernel_ok,
                "homomorphism_ok": w.homomorphism_ok,
                "multiplicative_ok": w.multiplicative_ok,
            }
            for w in image.words
        ],
        "rank_lower": image.rank_lower,
        "rank_upper": image.rank_upper,
        "rank": image.rank,
        "relations": [list(r) for r in image.relations],
        "discreteness_margin": None if image.discreteness_margin is None else iv(image.discreteness_margin, cfg),
    }
    checks = {
        "rank_certified": image.certified,
        "rank_bound": rank_bound_check(image, G.k),
        "phi_bound": phi_bound_check(image),
        "kernel": zero_entropy_kernel_check(image),
        "homomorphism": all(w.homomorphism_ok and w.multiplicative_ok for w in image.words),
        "exact_invariance": out["chain"]["exact_invariance"],
    }
    if image.discreteness_margin is not None:
        certified_d = [w.half_log_dk1 for w in image.words if w.half_log_dk1.lo > 0]
        floor = min((x.lo for x in certified_d), default=Fraction(0))
        checks["discreteness"] = image.discreteness_margin.hi >= floor
    out["checks"] = checks
    if not image.certified:
        out["precision_hint"] = "rank interval not closed; rerun with a larger precision_bits"
    return out, all(checks.values())


def cmd_group(args, cfg: RunConfig) -> tuple[dict, bool]:
    if args.action == "list":
        return {"bundled": sorted({**corpus.bundled_groups(), **corpus.solvability_examples()})}, True
    G = _group_from_args(args, cfg)
    if args.action == "ping-pong":
        if len(G.generators) < 2:
            raise PreconditionError("ping-pong needs two generators")
        g, h = G.generators[:2]
        cert = ping_pong_certificate(g, h)
        rep = {"found": cert is not None}
        if cert:
            rep.update({"delta": str(cert.delta), "N": cert.N})
        return {"ping_pong": rep}, True
    return analyze_group(G, cfg)


def build_units(poly: str, height: int, cfg: RunConfig) -> tuple[dict, MatrixGroup]:
    field_ = TotallyRealField.from_poly(poly)
    system = unit_search(field_, height)
    gens = [TorusAut(M) for M in system.matrices]
    labels = [f"u{i}" for i in range(len(gens))]
    G = MatrixGroup(gens, labels, f"units of Z[a], {poly}")
    words = reduced_words(len(gens), cfg.word_cap)
    ev = WordEvaluator(G)
    ident = ExactMatrix.identity(G.k)
    nonid = [w for w in words if ev.matrix(w) != ident]
    positive = [not zero_entropy(ev.aut(w)) for w in nonid]
    rep = {
        "poly": format_poly([Fraction(c) for c in field_.poly]),
        "degree": field_.degree,
        "height": height,
        "units": [field_.format_element(u) for u in system.units],
        "represented_units": [field_.format_element(u) for u in system.represented],
        "matrices": [[[int(x) for x in row] for row in M.rows] for M in system.matrices],
        "commuting": G.is_commutative(),
        "regulator_minor": None if system.regulator_minor is None else iv(system.regulator_minor, cfg),
        "words_checked": len(nonid),
        "all_positive_entropy": all(positive),
    }
    return rep, G


def cmd_units(args, cfg: RunConfig) -> tuple[dict, bool]:
    rep, G = build_units(args.poly, args.height, cfg)
    if args.emit:
        with open(args.emit, "w") as fh:
            json.dump(G.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        rep["emitted"] = args.emit
    return {"units": rep}, rep["commuting"] and rep["all_positive_entropy"]


DEMOS = ("cat-map", "cubic-units", "hodge", "ping-pong", "entropy")


def cmd_demo(args, cfg: RunConfig) -> tuple[dict, bool]:
    name = args.name
    if name == "cat-map":
        f = corpus.cat_map()
        prof = degree_profile(f, cfg.tolerance, with_rho=True)
        g = growth_limit_estimate(f, 1, n_max=20, bits=cfg.precision_bits)
        out = {
            "matrix": f.to_dict()["matrix"],
            "profile": prof.to_dict(cfg.digits),
            "growth": {"n": 20, "a_n": iv(g.estimates[-1], cfg), "relative_error": iv(g.final_rel_error, cfg)},
        }
        return out, all(d.tight for d in prof.degrees)
    if name == "cubic-units":
        return analyze_group(corpus.unit_group("cubic"), cfg)
    if name == "hodge":
        ns = argparse.Namespace(k=3, trials=20, inequality_trials=100)
        return cmd_hodge(ns, cfg)
    if name == "ping-pong":
        g, h = corpus.conjugate_cat_pair()
        cert = ping_pong_certificate(g, h)
        rep = {"g": g.to_dict()["matrix"], "h": h.to_dict()["matrix"], "found": cert is not None}
        if cert:
            rep.update({"delta": str(cert.delta), "N": cert.N})
        return rep, cert is not None
    if name == "entropy":
        ns = argparse.Namespace(matrix="[[2,1],[1,1]]", eps="0.05,0.02,0.01", nmax=12, grid=1024)
        return cmd_entropy(ns, cfg)
    raise UsageError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")


# -- schemas -------------------------------------------------------------------------

_PAIR = {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}


def _envelope(body: dict) -> dict:
    return {
        "type": "object",
        "required": ["tool", "command", "config", "status", "result"],
        "properties": {
            "tool": {"const": "torusdyn"},
            "command": {"type": "string"},
            "config": {
                "type": "object",
                "required": ["precision_bits", "rel_tol", "word_cap", "seed", "output_format", "input_paths"],
            },
            "status": {"enum": ["ok", "certification_failure"]},
            "timestamp": {"type": "string"},
            "result": body,
        },
    }


_DEGREE = {
    "type": "object",
    "required": ["interval", "exactly_one", "certified_tolerance_met"],
    "properties": {"interval": _PAIR, "exactly_one": {"type": "boolean"}, "certified_tolerance_met": {"type": "boolean"}},
}
_PROFILE = {
    "type": "object",
    "required": ["k", "degrees", "h_a", "positive_entropy", "log_concave", "unimodal"],
    "properties": {"degrees": {"type": "array", "items": _DEGREE}, "h_a": _PAIR},
}

SCHEMAS = {
    "degrees": _envelope({"type": "object", "required": ["profile"], "properties": {"profile": _PROFILE}}),
    "entropy-sim": _envelope(
        {
            "type": "object",
            "required": ["estimate"],
            "properties": {
                "estimate": {
                    "type": "object",
                    "required": ["grid", "runs", "h_est", "h_ref", "warnings"],
                    "properties": {"h_ref": _PAIR, "h_est": {"type": ["string", "null"]}},
                }
            },
        }
    ),
    "hodge": _envelope({"type": "object", "required": ["k", "signature_trials", "signature_ok", "inequality_violations"]}),
    "group": _envelope({"type": "object"}),
    "units": _envelope(
        {
            "type": "object",
            "required": ["units"],
            "properties": {
                "units": {"type": "object", "required": ["poly", "units", "matrices", "commuting", "all_positive_entropy"]}
            },
        }
    ),
    "demo": _envelope({"type": "object"}),
}


# -- driver --------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, top: bool) -> None:
    """Shared flags; on subcommands they default to SUPPRESS so a flag given
    before the subcommand is not clobbered."""

    def dflt(v):
        return v if top else argparse.SUPPRESS

    p.add_argument("--precision-bits", type=int, default=dflt(None), help=f"interval precision (default ${ENV_BITS} or {DEFAULT_BITS})")
    p.add_argument("--rel-tol", default=dflt("1/1000000000000"), help="relative tolerance for spectral radii (rational)")
    p.add_argument("--word-cap", type=int, default=dflt(3))
    p.add_argument("--seed", type=int, default=dflt(7))
    p.add_argument("--format", choices=("json", "text"), default=dflt("json"))
    p.add_argument("--output", default=dflt(None), help="write the report here instead of stdout")
    p.add_argument("--no-timestamp", action="store_true", default=dflt(False), help="omit the timestamp (byte-identical reruns)")
    p.add_argument("-v", "--verbose", action="store_true", default=dflt(False))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="torusdyn", description="Cohomological dynamics of complex torus automorphisms.")
    _add_common(p, top=True)
    p.add_argument("--schema", action="store_true", help="print the JSON report schemas and exit")
    common = _Parser(add_help=False)
    _add_common(common, top=False)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    d = sub.add_parser("degrees", parents=[common], help="dynamical degrees and algebraic entropy")
    d.add_argument("--input")
    d.add_argument("--matrix", help='JSON matrix, e.g. "[[2,1],[1,1]]"')
    d.add_argument("--raw", action="store_true", help="input lists f^* matrices on H^{p,p} (unverified)")
    d.add_argument("--growth", type=int, default=0, metavar="N", help="also estimate degrees from N iterates")
    d.add_argument("--rho", action="store_true", help="include rho_{p,q} and its bound")

    e = sub.add_parser("entropy-sim", parents=[common], help="greedy (n, eps)-separated set counts")
    e.add_argument("--matrix", required=True)
    e.add_argument("--grid", type=int, default=1024)
    e.add_argument("--eps", default="0.05,0.02,0.01")
    e.add_argument("--nmax", type=int, default=12)

    h = sub.add_parser("hodge", parents=[common], help="Hodge-Riemann checks on random Kahler data")
    h.add_argument("action", choices=("check",))
    h.add_argument("--k", type=int, default=3)
    h.add_argument("--trials", type=int, default=20)
    h.add_argument("--inequality-trials", type=int, default=100)

    g = sub.add_parser("group", parents=[common], help="invariant chains, phi, rank and solvability probes")
    g.add_argument("action", choices=("analyze", "ping-pong", "list"))
    g.add_argument("--input")
    g.add_argument("--bundled")

    u = sub.add_parser("units", parents=[common], help="unit groups of totally real fields")
    u.add_argument("action", choices=("build",))
    u.add_argument("--poly", required=True)
    u.add_argument("--height", type=int, default=5)
    u.add_argument("--emit", help="write the group JSON here")

    m = sub.add_parser("demo", parents=[common], help="bundled end-to-end examples")
    m.add_argument("name", choices=DEMOS)
    return p


COMMANDS = {
    "degrees": cmd_degrees,
    "entropy-sim": cmd_entropy,
    "hodge": cmd_hodge,
    "group": cmd_group,
    "units": cmd_units,
    "demo": cmd_demo,
}


def render_text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, val in report.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(render_text(item, indent + 1))
                lines.append(f"{pad}  -")
        else:
            lines.append(f"{pad}{key}: {json.dumps(val)}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.schema:
            print(json.dumps(SCHEMAS, indent=2, sort_keys=True), file=stdout)
            return EXIT_OK
        if not args.command:
            raise UsageError(parser.format_usage().rstrip())
        bits = args.precision_bits if args.precision_bits is not None else default_bits()
        try:
            Fraction(args.rel_tol)
        except ValueError:
            raise UsageError(f"--rel-tol must be rational, got {args.rel_tol!r}")
        cfg = RunConfig(bits, args.rel_tol, args.word_cap, args.seed, args.format)
    except UsageError as e:
        print(str(e), file=stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        result, ok = COMMANDS[args.command](args, cfg)
    except UsageError as e:
        print(str(e), file=stderr)
        return EXIT_USAGE
    except InputError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_PRECONDITION
    except PRECONDITION_ERRORS as e:
        print(f"precondition error: {e}", file=stderr)
        return EXIT_PRECONDITION
    report = {
        "tool": "torusdyn",
        "command": args.command,
        "config": asdict(cfg),
        "status": "ok" if ok else "certification_failure",
        "result": result,
    }
    if not args.no_timestamp:
        report["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat()
    text = json.dumps(report, indent=2, sort_keys=True) if cfg.output_format == "json" else render_text(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stdout)
    return EXIT_OK if ok else EXIT_CERTIFICATION


def main() -> None:
    sys.exit(run())


__all__ = ["RunConfig", "SCHEMAS", "analyze_group", "build_parser", "build_units", "main", "run"]
