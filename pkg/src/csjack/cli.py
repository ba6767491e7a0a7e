"""Command-line interface.

Subcommands: compute | oracle | verify | conditions.  All numeric model
inputs are exact-rational strings ("2", "1/2"); stdout carries a single JSON
document, stderr carries human diagnostics.  Identical (config, seed) pairs
produce byte-identical output.

Exit codes: 0 success, 1 usage error, 2 degeneracy, 3 residual/certificate
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from mpmath import mpf, nstr

from csjack.algebra import sympoly_to_json
from csjack.lattice import adjacent_weight, is_partition
from csjack.oracle import jack_oracle, schur_oracle
from csjack.singular import DegeneracyError, alpha_recursive, singular_eigenfunction
from csjack.spectrum import (
    ConfigurationError,
    cs_params,
    eigenvalue,
    gap_certificate,
    general_params,
    hermitean_couplings,
    pt_conditions,
)
from csjack.transform import NormalizationError, TransformConfig, assemble_regular
from csjack.verify import (
    check_groundstate,
    check_kernel_identity,
    check_regular_eigen,
    sample_points,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DEGENERACY = 2
EXIT_RESIDUAL = 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _frac_list(text: str) -> Tuple[Fraction, ...]:
    return tuple(_frac(part) for part in text.split(","))


def _int_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise UsageError(f"not an integer list: {text!r}") from exc


def _fstr(x: Fraction) -> str:
    return str(x)


def _resolve_partition(raw: Tuple[int, ...], N: int) -> Tuple[int, ...]:
    if len(raw) > N:
        raise UsageError(f"partition has more than N={N} parts")
    full = tuple(raw) + (0,) * (N - len(raw))
    if not is_partition(full):
        raise UsageError(f"{raw} is not a partition (weakly decreasing, non-negative)")
    return full


def _emit(doc: dict, out: Optional[str]) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json"], default="json", help="output format (v1 json only)")
    p.add_argument("--precision-bits", type=int, default=256, help="working precision for numeric checks")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--seed", type=int, default=0, help="seed for random evaluation points")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="csjack", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("compute", help="singular series and Jack polynomial for a partition")
    _common_flags(pc)
    pc.add_argument("--N", type=int, required=True)
    pc.add_argument("--lambda", dest="lam", required=True, help="coupling, rational string")
    pc.add_argument("--partition", required=True, help="comma-separated, e.g. 2,1")
    pc.add_argument("--depth", type=int, default=8)
    pc.add_argument("--zdeg", type=int, default=None, help="retained z-degree (default |n|)")
    pc.add_argument("--emit", choices=["jack", "singular", "both"], default="both")

    po = sub.add_parser("oracle", help="reference Jack / Schur polynomials")
    _common_flags(po)
    po.add_argument("--N", type=int, required=True)
    po.add_argument("--lambda", dest="lam", default="1")
    po.add_argument("--partition", required=True)
    po.add_argument("--schur", action="store_true", help="Jacobi-Trudi Schur instead of Jack")

    pv = sub.add_parser("verify", help="high-precision identity and certificate checks")
    _common_flags(pv)
    pv.add_argument("--check", required=True, choices=["groundstate", "kernel", "eigen", "gap", "conditions"])
    pv.add_argument("--N", type=int, required=True)
    pv.add_argument("--lambda", dest="lam", default="2")
    pv.add_argument("--masses", default=None, help="comma-separated rationals (default all 1)")
    pv.add_argument("--P", dest="pmom", default="0", help="center-of-mass constant for the kernel check")
    pv.add_argument("--points", type=int, default=20)
    pv.add_argument("--partition", default=None)
    pv.add_argument("--depth", type=int, default=8)
    pv.add_argument("--tol", default="1e-10")
    pv.add_argument("--delta", default=None, help="gap bound (default 2*lambda)")
    pv.add_argument("--R", dest="radius", default=None, help="contour radius (default max(2, N(N-1)|lam-1|/8))")

    pk = sub.add_parser("conditions", help="convergence / square-integrability report")
    _common_flags(pk)
    pk.add_argument("--N", type=int, required=True)
    pk.add_argument("--lambda", dest="lam", required=True)
    pk.add_argument("--delta", default=None)
    pk.add_argument("--R", dest="radius", default=None)
    return parser


def _cfg_doc(args: argparse.Namespace, extra: Dict) -> Dict:
    doc = {
        "format": "v1",
        "precision_bits": args.precision_bits,
        "seed": args.seed,
    }
    doc.update(extra)
    return doc


def cmd_compute(args: argparse.Namespace) -> int:
    if args.N < 2:
        raise UsageError("need N >= 2")
    lam = _frac(args.lam)
    n = _resolve_partition(_int_list(args.partition), args.N)
    depth = args.depth
    if depth < 1:
        raise UsageError("depth must be >= 1")
    zdeg = sum(n) if args.zdeg is None else args.zdeg
    params = cs_params(args.N, lam)
    table = alpha_recursive(params, n, depth)
    doc: Dict = {
        "command": "compute",
        "N": args.N,
        "lambda": _fstr(lam),
        "partition": list(n),
        "depth": depth,
        "config": _cfg_doc(args, {
            "N": args.N,
            "lambda": _fstr(lam),
            "partition": list(n),
            "depth": depth,
            "zdeg": zdeg,
            "emit": args.emit,
        }),
        "eigenvalue": _fstr(eigenvalue(params, n)),
        "alpha_table": [
            {
                "displacement": list(d),
                "alpha": _fstr(table.alpha[d]),
                "gap": _fstr(table.gaps[d]) if d in table.gaps else None,
            }
            for d in sorted(table.alpha, key=lambda v: (adjacent_weight(v), v))
        ],
    }
    if args.emit in ("singular", "both"):
        series = singular_eigenfunction(params, n, depth)
        doc["singular_series"] = {
            "base": list(series.base),
            "shift": [_fstr(s) for s in series.shift],
            "depth": series.depth,
            "terms": [
                {"displacement": list(d), "coeff": _fstr(c)}
                for d, c in sorted(series.terms.items(), key=lambda kv: (adjacent_weight(kv[0]), kv[0]))
            ],
        }
    if args.emit in ("jack", "both"):
        cfg = TransformConfig(args.N, lam, zdeg, depth)
        poly, leading = assemble_regular(cfg, table)
        stabilized = True
        if depth >= 3:
            poly_lo, _ = assemble_regular(
                TransformConfig(args.N, lam, zdeg, depth - 2),
                alpha_recursive(params, n, depth - 2),
            )
            stabilized = poly_lo == poly
        if not stabilized:
            print(
                f"warning: result differs between depth {depth} and {depth - 2}; increase --depth",
                file=sys.stderr,
            )
        doc["jack_polynomial"] = sympoly_to_json(poly)
        doc["normalization_constant"] = _fstr(leading)
        doc["stabilized"] = stabilized
    _emit(doc, args.out)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    if args.N < 1:
        raise UsageError("need N >= 1")
    n = _resolve_partition(_int_list(args.partition), args.N)
    doc: Dict = {
        "command": "oracle",
        "config": _cfg_doc(args, {
            "N": args.N,
            "partition": list(n),
            "method": "schur" if args.schur else "jack",
        }),
    }
    if args.schur:
        poly = schur_oracle(args.N, n)
    else:
        lam = _frac(args.lam)
        doc["config"]["lambda"] = _fstr(lam)
        poly = jack_oracle(args.N, lam, n)
    doc["polynomial"] = sympoly_to_json(poly)
    _emit(doc, args.out)
    return EXIT_OK


def _residual_check(args: argparse.Namespace, doc: Dict, residuals: List) -> int:
    tol = mpf(args.tol)
    worst = max(residuals) if residuals else mpf(0)
    doc["points"] = len(residuals)
    doc["bits"] = args.precision_bits
    doc["max_residual"] = nstr(worst, 12)
    doc["tol"] = args.tol
    ok = worst < tol
    doc["pass"] = ok
    _emit(doc, args.out)
    return EXIT_OK if ok else EXIT_RESIDUAL


def cmd_verify(args: argparse.Namespace) -> int:
    if args.N < 2:
        raise UsageError("need N >= 2")
    lam = _frac(args.lam)
    masses = _frac_list(args.masses) if args.masses else (Fraction(1),) * args.N
    if len(masses) != args.N:
        raise UsageError("need exactly N masses")
    doc: Dict = {
        "command": "verify",
        "check": args.check,
        "config": _cfg_doc(args, {
            "N": args.N,
            "lambda": _fstr(lam),
            "masses": [_fstr(m) for m in masses],
        }),
    }

    if args.check == "groundstate":
        params = general_params(
            masses, lam, hermitean_couplings(masses, lam), shifts=(0,) * args.N
        )
        pts = sample_points(args.N, args.points, args.seed, precision=args.precision_bits)
        residuals = [check_groundstate(params, pt) for pt in pts]
        return _residual_check(args, doc, residuals)

    if args.check == "kernel":
        P = _frac(args.pmom)
        doc["config"]["P"] = _fstr(P)
        pts = sample_points(args.N, args.points, args.seed, paired=True, precision=args.precision_bits)
        residuals = [check_kernel_identity(args.N, lam, P, pt) for pt in pts]
        return _residual_check(args, doc, residuals)

    if args.check == "eigen":
        if not args.partition:
            raise UsageError("eigen check needs --partition")
        n = _resolve_partition(_int_list(args.partition), args.N)
        params = cs_params(args.N, lam)
        table = alpha_recursive(params, n, args.depth)
        poly, _ = assemble_regular(TransformConfig(args.N, lam, sum(n), args.depth), table)
        E = eigenvalue(params, n)
        doc["config"].update({"partition": list(n), "depth": args.depth})
        doc["eigenvalue"] = _fstr(E)
        pts = sample_points(args.N, args.points, args.seed, precision=args.precision_bits)
        residuals = [check_regular_eigen(params, poly, E, pt) for pt in pts]
        return _residual_check(args, doc, residuals)

    if args.check == "gap":
        if not args.partition:
            raise UsageError("gap check needs --partition")
        n = _resolve_partition(_int_list(args.partition), args.N)
        params = cs_params(args.N, lam)
        delta = 2 * lam if args.delta is None else _frac(args.delta)
        min_gap = gap_certificate(params, n, args.depth)
        doc["config"].update({"partition": list(n), "depth": args.depth})
        doc["min_gap"] = _fstr(min_gap)
        doc["delta"] = _fstr(delta)
        if min_gap == 0:
            doc["pass"] = False
            _emit(doc, args.out)
            print("degeneracy: a vanishing gap was found", file=sys.stderr)
            return EXIT_DEGENERACY
        doc["pass"] = min_gap >= delta
        _emit(doc, args.out)
        return EXIT_OK if doc["pass"] else EXIT_RESIDUAL

    if args.check == "conditions":
        return _conditions(args, doc)
    raise UsageError(f"unknown check {args.check!r}")


def _conditions(args: argparse.Namespace, doc: Dict) -> int:
    lam = _frac(args.lam)
    params = cs_params(args.N, lam)
    delta = None if getattr(args, "delta", None) is None else _frac(args.delta)
    r_min = max(Fraction(2), Fraction(args.N * (args.N - 1)) * abs(lam - 1) / 8)
    radius = r_min if getattr(args, "radius", None) is None else _frac(args.radius)
    if radius <= 1:
        raise UsageError("contour radius must exceed 1")
    rep = pt_conditions(params, radius, delta)
    doc.setdefault("check", "conditions")
    doc["R"] = _fstr(rep.r)
    doc["R_min"] = _fstr(rep.r_min)
    doc["delta"] = _fstr(rep.delta)
    doc["cond1_lhs"] = _fstr(rep.cond1_lhs)
    doc["cond3_lhs"] = _fstr(rep.cond3_lhs)
    doc["cond1_lhs_float"] = nstr(mpf(rep.cond1_lhs.numerator) / rep.cond1_lhs.denominator, 12)
    doc["cond3_lhs_float"] = nstr(mpf(rep.cond3_lhs.numerator) / rep.cond3_lhs.denominator, 12)
    doc["cond1_ok"] = rep.cond1_ok
    doc["cond3_ok"] = rep.cond3_ok
    ok = rep.cond1_ok and rep.cond3_ok
    doc["pass"] = ok
    _emit(doc, args.out)
    return EXIT_OK if ok else EXIT_RESIDUAL


def cmd_conditions(args: argparse.Namespace) -> int:
    doc: Dict = {
        "command": "conditions",
        "check": "conditions",
        "config": _cfg_doc(args, {"N": args.N, "lambda": args.lam}),
    }
    return _conditions(args, doc)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "compute": cmd_compute,
        "oracle": cmd_oracle,
        "verify": cmd_verify,
        "conditions": cmd_conditions,
    }
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigurationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegeneracyError as exc:
        print(f"degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERACY
    except NormalizationError as exc:
        print(f"degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERACY


if __name__ == "__main__":
    sys.exit(main())
