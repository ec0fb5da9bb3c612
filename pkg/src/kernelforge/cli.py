"""Command-line interface: kernel evaluation, norm decomposition, sigma
constants, and verification suites, with JSON (default) or CSV reports.

Exit codes: 0 success, 1 verification failure, 2 domain error,
3 series/quadrature non-convergence, 4 Gram conditioning failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import ball, bidisk, fock, oracle, verify
from .config import Point2, TruncationConfig, default_config
from .errors import (ConditioningError, ConvergenceError, DomainError,
                     KernelforgeError)
from .poly2 import BiPoly

_ORACLE_DEGREE = 16
_ORACLE_TOL = 1e-6

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3
EXIT_CONDITIONING = 4


def _parse_pair(text: str):
    parts = [float(p) for p in text.split(",")]
    if len(parts) == 4:
        vals = [complex(p) for p in parts]
    elif len(parts) == 8:
        vals = [complex(parts[i], parts[i + 1]) for i in range(0, 8, 2)]
    else:
        raise DomainError(
            "--pair needs 4 reals (z1,z2,w1,w2) or 8 (re,im interleaved)")
    return Point2(vals[0], vals[1]), Point2(vals[2], vals[3])


def _space_params(args):
    if args.space == "bidisk":
        return bidisk.BidiskParams(args.alpha, args.beta, args.theta,
                                   args.vartheta)
    if args.space == "ball":
        return ball.BallParams(args.alpha, args.beta, args.theta)
    if args.space == "fock":
        return fock.FockParams(args.alpha, args.beta, args.theta)
    raise DomainError(f"unknown space {args.space!r}")


def _oracle_gram(args, max_degree):
    if args.space == "bidisk":
        if args.vartheta != 0.0:
            raise DomainError("oracle comparison requires vartheta = 0")
        return oracle.gram_bidisk_exact(args.alpha, args.beta, args.theta,
                                        max_degree)
    if args.space == "ball":
        return oracle.ball_monomial_norms(args.alpha, args.beta, args.theta,
                                          max_degree)
    return oracle.gram_fock_exact(args.alpha, args.beta, args.theta,
                                  max_degree)


def _emit(report: dict, args) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["item", "value_re", "value_im", "oracle_re",
                         "oracle_im", "abs_err", "rel_err"])
        for it in _flat_items(report):
            val = it.get("value") or [float("nan")] * 2
            ora = it.get("oracle") or [float("nan")] * 2
            writer.writerow([it["item"], val[0], val[1], ora[0], ora[1],
                             it.get("abs_err", ""), it.get("rel_err", "")])
        sys.stdout.write(buf.getvalue())
    else:
        json.dump(report, sys.stdout, indent=2, default=float)
        sys.stdout.write("\n")


def _flat_items(report: dict):
    if "reports" in report:
        for sub in report["reports"]:
            yield from _flat_items(sub)
    else:
        yield from report.get("items", [])


def _kernel_value(args, params, z, w, cfg):
    if args.space == "bidisk":
        return bidisk.full_kernel(params, z, w, cfg)
    if args.space == "ball":
        return ball.ball_full_kernel(params, z, w, cfg)
    return fock.fock_full_kernel(params, z, w, cfg)


def cmd_kernel(args) -> int:
    cfg = _make_cfg(args)
    params = _space_params(args)
    pairs = [_parse_pair(t) for t in args.pair or []]
    if args.points_file:
        with open(args.points_file) as fh:
            pairs.extend(_parse_pair(line) for line in fh
                         if line.strip() and not line.startswith("#"))
    if not pairs:
        raise DomainError("no point pairs given (use --pair or --points-file)")
    kernel_blocks = None
    if args.oracle:
        kernel_blocks = oracle.gram_kernel_blocks(
            _oracle_gram(args, _ORACLE_DEGREE))
    items = []
    passed = True
    for i, (z, w) in enumerate(pairs):
        res = _kernel_value(args, params, z, w, cfg)
        item = {
            "item": f"pair {i}",
            "value": [res.value.real, res.value.imag],
            "terms_used": res.terms_used,
            "tail_bound": res.tail_bound,
        }
        if kernel_blocks is not None:
            ref = oracle.kernel_from_blocks(kernel_blocks, z.z1, z.z2,
                                            w.z1, w.z2)
            abs_err = abs(res.value - ref)
            rel_err = abs_err / max(abs(ref), 1e-300)
            ok = rel_err <= _ORACLE_TOL
            passed = passed and ok
            item.update(oracle=[ref.real, ref.imag], abs_err=abs_err,
                        rel_err=rel_err, tol=_ORACLE_TOL, passed=bool(ok))
        items.append(item)
    report = _wrap_report("kernel", args, items, passed)
    _emit(report, args)
    return EXIT_OK if passed else EXIT_VERIFY


def cmd_norm_expand(args) -> int:
    cfg = _make_cfg(args)
    params = _space_params(args)
    if args.poly_file:
        with open(args.poly_file) as fh:
            f = BiPoly.parse(fh.read())
    else:
        f = BiPoly.parse(args.poly)
    if args.space == "bidisk":
        exp = bidisk.norm_expansion(params, f, cfg)
    elif args.space == "ball":
        exp = ball.ball_norm_expansion(params, f)
    else:
        exp = fock.fock_norm_expansion(params, f)
    gram = _oracle_gram(args, max(f.total_degree, 0)) if args.oracle else None
    items = []
    passed = True
    for N, term in exp.terms:
        item = {"item": f"term N={N}", "value": [term, 0.0]}
        if gram is not None:
            _, qN = oracle.project(gram, f, N)
            ref = gram.norm_sq(qN)
            abs_err = abs(term - ref)
            ok = abs_err <= 1e-9 * max(1.0, gram.norm_sq(f))
            passed = passed and ok
            item.update(oracle=[ref, 0.0], abs_err=abs_err,
                        rel_err=abs_err / max(ref, 1e-300), passed=bool(ok))
        items.append(item)
    total_item = {"item": "total", "value": [exp.total, 0.0]}
    if gram is not None:
        ref = gram.norm_sq(f)
        abs_err = abs(exp.total - ref)
        ok = abs_err <= 1e-9 * max(1.0, ref)
        passed = passed and ok
        total_item.update(oracle=[ref, 0.0], abs_err=abs_err,
                          rel_err=abs_err / max(ref, 1e-300), passed=bool(ok))
    items.append(total_item)
    report = _wrap_report("norm-expand", args, items, passed)
    report["polynomial"] = f.format()
    _emit(report, args)
    return EXIT_OK if passed else EXIT_VERIFY


def cmd_sigma(args) -> int:
    cfg = _make_cfg(args)
    params = _space_params(args)
    items = []
    if args.space == "bidisk":
        val = bidisk.sigma(params, cfg)
        items.append({"item": "sigma", "value": [val, 0.0]})
        items.append({"item": "inv_sigma", "value": [1.0 / val, 0.0]})
        if args.vartheta == 0.0:
            ref = bidisk.sigma_gamma_form(params)
            items.append({
                "item": "sigma_gamma_form", "value": [ref, 0.0],
                "abs_err": abs(val - ref), "rel_err": abs(val - ref) / ref,
            })
    elif args.space == "fock":
        val = fock.fock_sigma(params)
        items.append({"item": "sigma", "value": [val, 0.0]})
        items.append({"item": "inv_sigma", "value": [1.0 / val, 0.0]})
    else:
        raise DomainError("sigma is defined for the bidisk and fock spaces")
    report = _wrap_report("sigma", args, items, True)
    _emit(report, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        report = verify.run_suite(args.suite, args.seed)
    except KeyError:
        names = ", ".join(sorted(verify.SUITES) + ["all"])
        print(f"unknown suite {args.suite!r}; choose from: {names}",
              file=sys.stderr)
        return EXIT_DOMAIN
    report = dict(report)
    report["command"] = "verify"
    report["wall_time"] = time.time() - args._t0
    _emit(report, args)
    return EXIT_OK if report["passed"] else EXIT_VERIFY


def _wrap_report(command, args, items, passed):
    report = {
        "command": command,
        "space": getattr(args, "space", None),
        "params": {k: getattr(args, k) for k in
                   ("alpha", "beta", "theta", "vartheta")
                   if hasattr(args, k)},
        "seed": getattr(args, "seed", None),
        "passed": bool(passed),
        "items": items,
        "wall_time": time.time() - args._t0,
    }
    return report


def _make_cfg(args) -> TruncationConfig:
    cfg = default_config()
    if getattr(args, "tolerance", None):
        from dataclasses import replace
        cfg = replace(cfg, tolerance=args.tolerance)
    return cfg


def _add_common(sub):
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--seed", type=int, default=0)


def _add_space_args(sub, spaces=("bidisk", "ball", "fock")):
    _add_common(sub)
    sub.add_argument("--space", required=True, choices=spaces)
    sub.add_argument("--alpha", type=float, required=True)
    sub.add_argument("--beta", type=float, required=True)
    sub.add_argument("--theta", type=float, default=0.0)
    sub.add_argument("--vartheta", type=float, default=0.0)
    sub.add_argument("--tolerance", type=float, default=None,
                     help="series truncation tolerance override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kernelforge",
        description="Reproducing kernels and orthogonal norm expansions for "
                    "weighted holomorphic function spaces in two variables.")
    subs = parser.add_subparsers(dest="cmd", required=True)

    k = subs.add_parser("kernel", help="evaluate the reproducing kernel")
    _add_space_args(k)
    k.add_argument("--pair", action="append",
                   help="z1,z2,w1,w2 (reals) or re,im x4 (complex); repeatable")
    k.add_argument("--points-file", help="file with one pair per line")
    k.add_argument("--oracle", action="store_true",
                   help="compare against the exact Gram-oracle kernel")
    k.set_defaults(func=cmd_kernel)

    n = subs.add_parser("norm-expand", help="orthogonal norm decomposition")
    _add_space_args(n)
    n.add_argument("--poly", help='polynomial, e.g. "z1 - z2" or "(1,2)*z1^2"')
    n.add_argument("--poly-file")
    n.add_argument("--oracle", action="store_true")
    n.set_defaults(func=cmd_norm_expand)

    s = subs.add_parser("sigma", help="the kernel value at the origin")
    _add_space_args(s, spaces=("bidisk", "fock"))
    s.set_defaults(func=cmd_sigma)

    v = subs.add_parser("verify", help="run a verification suite")
    _add_common(v)
    v.add_argument("suite")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._t0 = time.time()
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ConditioningError as exc:
        print(f"conditioning failure: {exc}", file=sys.stderr)
        return EXIT_CONDITIONING


if __name__ == "__main__":
    sys.exit(main())
