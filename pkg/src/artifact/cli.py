"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 resource-cap error,
4 a reproduce row failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .config import load_config
from .errors import DomainError, ResourceCapError
from .free_algebra import format_tree

EXIT_USAGE, EXIT_DOMAIN, EXIT_CAP, EXIT_FAILED = 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


# ---------------------------------------------------------------------------
# output

def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


def _table(obj: Any) -> Optional[List[Dict[str, Any]]]:
    if isinstance(obj, list) and obj and all(isinstance(r, dict) for r in obj):
        return obj
    if isinstance(obj, dict) and obj and not any(isinstance(v, (dict, list)) for v in obj.values()):
        return [obj]
    return None


def render(obj: Any, fmt: str) -> str:
    obj = _plain(obj)
    if fmt == "json":
        return json.dumps(obj, sort_keys=True)
    rows = _table(obj)
    if fmt == "csv":
        if rows is None:
            rows = [{"value": json.dumps(obj, sort_keys=True)}]
        buf = io.StringIO()
        keys = list(rows[0])
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    if isinstance(obj, dict) and rows is not None:
        width = max(len(k) for k in obj)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in obj.items())
    if rows is not None:
        keys = list(rows[0])
        cells = [keys] + [[str(r.get(k, "")) for k in keys] for r in rows]
        widths = [max(len(c[i]) for c in cells) for i in range(len(keys))]
        return "\n".join("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() for line in cells)
    if isinstance(obj, dict):
        width = max(len(k) for k in obj)
        return "\n".join(f"{k:<{width}}  {json.dumps(v) if isinstance(v, (dict, list)) else v}"
                         for k, v in obj.items())
    return str(obj)


# ---------------------------------------------------------------------------
# subcommands

def cmd_mu(args, cfg):
    from . import magnus_core as mc
    if args.recursive:
        expr = mc.magnus_commutator_recursive(args.k, args.cap)
        return {"presentation": [[format_tree(t), str(c)] for c, t in expr.terms]}
    return mc.magnus_commutator_direct(args.k, args.cap).to_json_dict()


def cmd_bch(args, cfg):
    from . import magnus_core as mc
    return mc.bch_term(args.n, args.cap).to_json_dict(aliases=True)


def cmd_goldberg(args, cfg):
    from . import magnus_core as mc
    return {"word": args.word, "coefficient": mc.goldberg_coefficient(args.word)}


def cmd_theta(args, cfg):
    from . import magnus_core as mc
    out: Dict[str, Any] = {"coefficients": mc.theta_series(args.n).coefficients}
    if args.x is not None:
        from . import bounds
        out["x"] = args.x
        out["value"] = bounds.theta_numeric(args.x)
    return out


def _load_measure(args, exact: bool):
    from . import timeordered as to
    cap = args.cap if args.cap is not None else (to.EXACT_CAP if exact else to.MATRIX_CAP)
    phi = to.parse_measure(Path(args.measure).read_text(), exact=exact, cap=cap)
    if not exact:
        phi.carrier.cap = cap
    return phi


def _carrier_out(x):
    if hasattr(x, "to_json_dict"):
        return x.to_json_dict()
    return [[float(v) for v in row] for row in x]


def cmd_resolvent(args, cfg):
    from . import magnus_core as mc
    from . import timeordered as to
    if args.measure is None:
        lp = mc.resolvent_poly(args.k, args.cap)
        if args.lam is None:
            return {str(j): p.to_json_dict() for j, p in lp.coefficients.items()}
        return lp.evaluate(Fraction(args.lam)).to_json_dict()
    phi = _load_measure(args, args.exact)
    lam = Fraction(args.lam) if args.exact else float(Fraction(args.lam if args.lam is not None else "1/2"))
    if args.check:
        return {"lambda": str(lam), "K": args.k, "residual": to.resolvent_identity_check(phi, lam, args.k)}
    return {"lambda": str(lam), "k": args.k, "term": _carrier_out(to.resolvent_term(phi, lam, args.k))}


def cmd_lie_min(args, cfg):
    from . import lie_min
    if args.verify:
        coeffs = lie_min.parse_presentation(Path(args.verify).read_text())
        rep = lie_min.verify_presentation(coeffs, args.k)
        return {"k": args.k, "valid": rep.valid, "cost": rep.cost}
    if args.k == 6 and not args.allow_k6:
        raise ResourceCapError("k = 6 takes a long time; pass --allow-k6")
    return lie_min.theta_lie(args.k, args.method).to_json_dict()


def cmd_bounds(args, cfg):
    from . import bounds
    if args.list:
        return [{"constant": n} for n in bounds.CONSTANT_NAMES]
    if args.ivp:
        if args.ivp not in bounds.BUILTIN_SYSTEMS:
            raise DomainError(f"unknown system {args.ivp!r}")
        r = bounds.blowup_radius(bounds.BUILTIN_SYSTEMS[args.ivp]())
        return {"system": args.ivp, "radius": r.radius, "est_error": r.est_error, "reason": r.reason}
    if args.h is not None:
        return {"p": args.h, "H": bounds.h_estimate(args.h), "series": bounds.h_series(args.h),
                "crude": bounds.h_crude(args.h)}
    if args.constant is None:
        raise UsageError("bounds: give --constant, --ivp, --h or --list")
    value, err = bounds.constant(args.constant)
    return {"value": value, "est_error": err}


def cmd_gl2(args, cfg):
    from . import gl2
    if args.action == "examples":
        if not args.name:
            raise UsageError("gl2 examples needs --name")
        return [f.as_dict() if args.rows else {k: v for k, v in f.as_dict().items() if k != "rows"}
                for f in gl2.example_asymptotics(args.name)]
    if not args.matrix:
        raise UsageError(f"gl2 {args.action} needs --matrix a,b,c,d")
    A = gl2.Mat2.parse(args.matrix)
    if args.action == "log":
        L = gl2.log2x2(A)
        return {"log": L.tolist(), "norm": gl2.norm2(L), "conorm": gl2.conorm_signed(L)}
    if args.action == "disk":
        cd, pd = gl2.chiral_disk(A), gl2.principal_disk(A)
        return {"chiral": list(cd.as_tuple()), "principal": list(pd.as_tuple()),
                "norm": gl2.norm2(A), "conorm": gl2.conorm_signed(A)}
    if args.action == "mp":
        return {"mp": gl2.magnus_exponent(A, lift=args.lift), "lift": args.lift}
    if args.action == "classify":
        return {"class": gl2.classify(A)}
    nf = gl2.normal_form(A)
    return {"p1": nf.p1, "p2": nf.p2, "t": nf.t, "beta": nf.beta, "f_used": nf.f_used}


def cmd_texp(args, cfg):
    from . import timeordered as to
    phi = _load_measure(args, args.exact)
    return {"order": "left" if args.left else "right",
            "value": _carrier_out(to.lexp(phi) if args.left else to.rexp(phi))}


def cmd_magnus_series(args, cfg):
    from . import timeordered as to
    phi = _load_measure(args, args.exact)
    series = to.magnus_partial_sum(phi, args.k_max)
    return {"norms": [float(n) if not isinstance(n, Fraction) else n for n in series.norms],
            "ratio_estimate": series.ratio_estimate, "sum": _carrier_out(series.total)}


def cmd_reproduce(args, cfg):
    from . import reproduce
    only = [s for s in args.only.split(",") if s] if args.only else None
    rows = reproduce.reproduce_all(only, cfg, include_k6=args.k6 or None)
    table = [r.as_dict() for r in rows]
    if args.emit_csv:
        with open(args.emit_csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["constant", "paper", "computed", "tol", "pass"])
            for r in rows:
                w.writerow([r.name, r.expected, r.computed, r.tol, r.passed])
    args._failed = not all(r.passed for r in rows)
    return table


# ---------------------------------------------------------------------------
# parser

def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("json", "text", "csv"), default=d("text"))
    parser.add_argument("--tolerance-file", default=d(None))
    parser.add_argument("--threads", type=int, default=d(1))
    parser.add_argument("--cap", type=int, default=d(None))
    parser.add_argument("--manifest", default=d(None), help="write a run manifest (JSON) to this path")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="artifact", description="Magnus expansion toolkit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common(p, suppress=False)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    common = _Parser(add_help=False)
    _common(common, suppress=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("mu", cmd_mu, "Magnus commutator mu_k")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--recursive", action="store_true", help="Lie presentation from the recursion")
    sp = add("bch", cmd_bch, "BCH term of degree n in X, Y")
    sp.add_argument("--n", type=int, required=True)
    sp = add("goldberg", cmd_goldberg, "Goldberg coefficient of a word in X, Y")
    sp.add_argument("--word", required=True)
    sp = add("theta", cmd_theta, "Theta series coefficients")
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--x", type=float)
    sp = add("resolvent", cmd_resolvent, "resolvent polynomial or time-ordered resolvent terms")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--lambda", dest="lam")
    sp.add_argument("--measure")
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--check", action="store_true", help="identity residual with K = --k terms")
    sp = add("lie-min", cmd_lie_min, "minimal Lie presentation of mu_k")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--method", choices=("exact", "highs"))
    sp.add_argument("--verify", help="presentation file to check instead of solving")
    sp.add_argument("--allow-k6", action="store_true")
    sp = add("bounds", cmd_bounds, "convergence constants and blow-up radii")
    sp.add_argument("--constant")
    sp.add_argument("--ivp")
    sp.add_argument("--h", type=float)
    sp.add_argument("--list", action="store_true")
    sp = add("gl2", cmd_gl2, "2x2 geometry")
    sp.add_argument("action", choices=("log", "disk", "mp", "classify", "normal-form", "examples"))
    sp.add_argument("--matrix")
    sp.add_argument("--name")
    sp.add_argument("--lift", action="store_true", help="universal-cover Magnus exponent")
    sp.add_argument("--rows", action="store_true", help="include the fitted rows")
    sp = add("texp", cmd_texp, "time-ordered exponential of a step measure")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--left", action="store_true")
    sp = add("magnus-series", cmd_magnus_series, "Magnus series terms of a step measure")
    sp.add_argument("--measure", required=True)
    sp.add_argument("--k-max", type=int, default=8)
    sp.add_argument("--exact", action="store_true")
    sp = add("reproduce", cmd_reproduce, "recompute every published constant")
    sp.add_argument("--only", help="comma-separated groups")
    sp.add_argument("--emit-csv")
    sp.add_argument("--k6", action="store_true", help="also solve the k = 6 Lie minimum")
    return p


def _glue_values(argv: List[str]) -> List[str]:
    # let "--matrix -5,0,0,-3" through: argparse would read the value as a flag
    out, i = [], 0
    while i < len(argv):
        if argv[i] in ("--matrix", "--x", "--h", "--lambda") and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
        cfg = load_config(args.tolerance_file)
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        t0 = time.perf_counter()
        out = args.func(args, cfg)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as e:
        print(f"resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    except DomainError as e:
        print(f"domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(render(out, args.format))
    if args.manifest:
        params = {k: v for k, v in vars(args).items() if k not in ("func", "manifest") and not k.startswith("_")}
        manifest = {"subcommand": args.command, "parameters": _plain(params), "tolerances": cfg,
                    "outputs": _plain(out), "wall_time": time.perf_counter() - t0, "version": __version__}
        Path(args.manifest).write_text(json.dumps(manifest, sort_keys=True, indent=1))
    return EXIT_FAILED if getattr(args, "_failed", False) else 0


if __name__ == "__main__":
    sys.exit(main())
