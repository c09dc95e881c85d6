"""Command line front end.

Germs and ideals are read from JSON files::

    {"rank": 3, "rays": [[1, 0, 1], [0, 1, 1], [-1, -1, 1], [1, 1, 1]], "name": "blowup"}
    {"generators": [[2, 0], [0, 3]]}

Reports are JSON on stdout (or ``--output``).  Exact rationals are written
as ``"p/q"`` strings next to a float rendering.  Errors produce a JSON
object with the error class and the exit code of the error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import datetime, timezone
from fractions import Fraction
from typing import Sequence

from . import ideals as I
from . import minimizer as MZ
from . import sequences as S
from . import valuations as V
from ._rational import check_rank, parse_rational, rational_str
from .errors import DomainError, GermMismatch, InvalidGerm, ToricError
from .germ import ToricGerm, build_germ

EXIT_OK = 0


class SpecError(InvalidGerm):
    """Malformed germ or ideal file."""


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc


def germ_from_spec(spec) -> ToricGerm:
    if not isinstance(spec, dict) or "rays" not in spec:
        raise SpecError("germ spec must be an object with 'rays'")
    rays = spec["rays"]
    if not isinstance(rays, list) or not rays or not all(isinstance(r, list) for r in rays):
        raise SpecError("'rays' must be a non-empty list of integer vectors")
    if not all(isinstance(x, int) and not isinstance(x, bool) for r in rays for x in r):
        raise SpecError("ray entries must be integers")
    rank = spec.get("rank", len(rays[0]))
    if any(len(r) != rank for r in rays):
        raise SpecError(f"every ray must have length rank = {rank}")
    check_rank(rank)
    return build_germ(rays, name=spec.get("name"))


def load_germ(path: str) -> ToricGerm:
    return germ_from_spec(_load_json(path))


def ideal_from_spec(spec, germ: ToricGerm) -> I.MonomialIdeal:
    if not isinstance(spec, dict) or "generators" not in spec:
        raise SpecError("ideal spec must be an object with 'generators'")
    ref = spec.get("germ")
    if isinstance(ref, dict) and germ_from_spec(ref) != germ:
        raise GermMismatch("ideal file refers to a different germ")
    gens = spec["generators"]
    if not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
        raise SpecError("'generators' must be a list of integer vectors")
    try:
        return I.MonomialIdeal(germ, gens)
    except ToricError:
        raise
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc)) from exc


def parse_vector(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_rational(s.strip()) for s in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational vector {text!r}") from exc


def exact(x) -> dict:
    if x == math.inf:
        return {"exact": "inf", "float": None}
    return {"exact": rational_str(x), "float": float(x)}


def _germ_info(g: ToricGerm) -> dict:
    return {
        "name": g.name,
        "rank": g.rank,
        "rays": [list(r) for r in g.sigma.rays],
    }


def cmd_check(args) -> dict:
    g = load_germ(args.germ)
    return {
        "germ": _germ_info(g),
        "w": [rational_str(x) for x in g.w],
        "gorenstein_index": g.gorenstein_index,
        "dual_rays": [list(r) for r in g.sigma_dual.rays],
        "valid": True,
    }


def cmd_lct(args) -> dict:
    g = load_germ(args.germ)
    a = ideal_from_spec(_load_json(args.ideal), g)
    out = {"germ": _germ_info(g), "generators": [list(x) for x in a.generators]}
    if a.is_unit:
        out["lct"] = exact(math.inf)
        return out
    res = I.lct_with_witness(a)
    out["lct"] = exact(res.value)
    out["witness"] = [rational_str(x) for x in res.witness]
    return out


def cmd_mult(args) -> dict:
    g = load_germ(args.germ)
    a = ideal_from_spec(_load_json(args.ideal), g)
    return {
        "germ": _germ_info(g),
        "generators": [list(x) for x in a.generators],
        "multiplicity": exact(I.multiplicity(a)),
    }


def _valuation(g: ToricGerm, u) -> V.ToricValuation:
    if len(u) != g.rank:
        raise DomainError(f"--u has {len(u)} entries, germ has rank {g.rank}")
    return V.ToricValuation.of(g, u)


def cmd_nvol_eval(args) -> dict:
    g = load_germ(args.germ)
    v = _valuation(g, args.u)
    return {
        "germ": _germ_info(g),
        "u": [rational_str(x) for x in v.u],
        "A": exact(V.log_discrepancy(v)),
        "vol": exact(V.volume(v)),
        "nvol": exact(V.normalized_volume(v)),
    }


def cmd_nvol_min(args) -> dict:
    g = load_germ(args.germ)
    cfg = MZ.MinimizerConfig(tol=args.tol, max_evals=args.max_evals, starts=args.starts, seed=args.seed)
    report = MZ.minimize(g, cfg)
    probe = MZ.rationality_probe(report, g, args.denominator_bound)
    out = {"germ": _germ_info(g), "config": _cfg_dict(cfg)}
    out["report"] = report.to_dict()
    out["probe"] = {
        "label": probe.label,
        "divisorial_candidate": probe.divisorial_candidate,
        "direction": list(probe.direction) if probe.direction else None,
        "approximations": [{"p/q": p, "error": e} for p, e in probe.approximations],
        "denominator_bound": args.denominator_bound,
    }
    return out


def _cfg_dict(cfg: MZ.MinimizerConfig) -> dict:
    return {"tol": cfg.tol, "max_evals": cfg.max_evals, "starts": cfg.starts, "seed": cfg.seed}


def cmd_converge(args) -> dict:
    """Colength and multiplicity ratios of the valuation ideals against ``vol(v_u)``."""
    g = load_germ(args.germ)
    v = _valuation(g, args.u)
    n = g.rank
    vol = V.volume(v)
    rows = []
    for m in range(1, args.max_m + 1):
        a = V.valuation_ideal(v, m)
        e = I.multiplicity(a)
        col = V.colength(v, m)
        scaled_e = e / Fraction(m) ** n
        rows.append(
            {
                "m": m,
                "colength": col,
                "colength_ratio": exact(math.factorial(n) * Fraction(col) / Fraction(m) ** n / vol),
                "mult_over_m_n": exact(scaled_e),
                "mult_ratio": exact(scaled_e / vol),
                "lower_bound_holds": vol <= scaled_e,
            }
        )
    return {
        "germ": _germ_info(g),
        "u": [rational_str(x) for x in v.u],
        "vol": exact(vol),
        "table": rows,
        "all_lower_bounds_hold": all(r["lower_bound_holds"] for r in rows),
    }


def cmd_lct_seq(args) -> dict:
    g = load_germ(args.germ)
    if args.ideal:
        a = ideal_from_spec(_load_json(args.ideal), g)
        seq = S.GradedSequence.powers(a)
    else:
        seq = S.GradedSequence.of_valuation(_valuation(g, args.u))
    M = args.max_m or S.default_truncation(g.rank)
    nm = S.normalized_multiplicity(seq, M)
    out = {
        "germ": _germ_info(g),
        "kind": seq.kind,
        "max_m": M,
        "m_lct": [exact(x) for x in nm.lct.trend],
        "lct_lower_bound": exact(nm.lct.lower),
        "mult_over_m_n": [exact(x) for x in nm.mult.trend],
        "mult_estimate": exact(nm.mult.estimate),
        "doubling": list(nm.mult.doubling),
        "normalized_multiplicity": exact(nm.value),
    }
    if not args.ideal:
        out["nvol"] = exact(V.normalized_volume(_valuation(g, args.u)))
    return out


COMMANDS = {
    "check": cmd_check,
    "lct": cmd_lct,
    "mult": cmd_mult,
    "nvol-eval": cmd_nvol_eval,
    "nvol-min": cmd_nvol_min,
    "converge": cmd_converge,
    "lct-seq": cmd_lct_seq,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toricvol", description="Normalized volumes of toric singularities.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the JSON report here instead of stdout")
    common.add_argument("--format", choices=["json"], default="json")
    common.add_argument("--deterministic", action="store_true", help="omit the timestamp field")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", parents=[common], help="validate a germ")
    sp.add_argument("germ")

    for name in ("lct", "mult"):
        sp = sub.add_parser(name, parents=[common], help=f"{name} of a monomial ideal")
        sp.add_argument("germ")
        sp.add_argument("ideal")

    sp = sub.add_parser("nvol-eval", parents=[common], help="A, vol, nvol of v_u")
    sp.add_argument("germ")
    sp.add_argument("--u", type=parse_vector, required=True)

    sp = sub.add_parser("nvol-min", parents=[common], help="minimize nvol over toric valuations")
    sp.add_argument("germ")
    sp.add_argument("--tol", type=float, default=MZ.MinimizerConfig.tol)
    sp.add_argument("--starts", type=int, default=MZ.MinimizerConfig.starts)
    sp.add_argument("--seed", type=int, default=MZ.DEFAULT_SEED)
    sp.add_argument("--max-evals", type=int, default=MZ.MinimizerConfig.max_evals)
    sp.add_argument("--denominator-bound", type=int, default=10**4)

    sp = sub.add_parser("converge", parents=[common], help="valuation ideal trends against vol(v_u)")
    sp.add_argument("germ")
    sp.add_argument("--u", type=parse_vector, required=True)
    sp.add_argument("--max-m", type=int, default=8)

    sp = sub.add_parser("lct-seq", parents=[common], help="graded sequence lct/multiplicity trends")
    sp.add_argument("germ")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--u", type=parse_vector, help="valuation ideals of v_u")
    src.add_argument("--ideal", help="powers of the ideal in this file")
    sp.add_argument("--max-m", type=int, default=None)
    return p


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        body = COMMANDS[args.command](args)
        payload = {"command": args.command, "status": "ok", **body}
        code = EXIT_OK
    except ToricError as exc:
        payload = {
            "command": args.command,
            "status": "error",
            "error": type(exc).__name__,
            "message": str(exc),
            "exit_code": exc.exit_code,
        }
        code = exc.exit_code
    if not args.deterministic:
        payload["timestamp"] = datetime.now(timezone.utc).isoformat()
    _emit(payload, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
