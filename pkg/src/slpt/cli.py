"""Command-line front end: grid sweeps, precision/cylinder/divergence reports.

Exit codes: 0 success, 1 bad input, 2 numerical failure at one or more
points (failed sweep rows are still emitted, tagged ``error``).
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import SlptError
from .oracle import closed_form_half, exact_eigenvalues
from .perturbation import LOGARITHM, XI2, pt_lambda, pt_lambda_eps_series
from .problem import canonical_benchmark
from .transform import transform

_PARAM = {"log": LOGARITHM, "xi2": XI2}


def _fmt(x: float) -> str:
    return "%.17g" % x


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _default_grid(eps_min=-1.5, eps_max=1.5, eps_steps=21, z1_steps=21):
    pts = []
    for i in range(1, eps_steps + 1):
        eps = eps_min + (eps_max - eps_min) * (i - 1) / (eps_steps - 1)
        for k in range(1, z1_steps + 1):
            z1 = (k - 1) / (z1_steps - 1)
            pts.append((i, k, eps, z1))
    return pts


def _sweep_point(i, k, eps, z1, method, order, param_mode):
    try:
        p = canonical_benchmark(eps, z1)
        tp = transform(p)
        lam_exact = exact_eigenvalues(tp, 1).eigenvalues[0]
        if method == "pt":
            lam = pt_lambda(0, order, tp, _PARAM[param_mode]).total
        else:
            from .greens import gf_lambda0

            lam = gf_lambda0(p, order)
        return (i, k, eps, z1, method, order, param_mode,
                _fmt(lam), _fmt(lam_exact), _fmt(lam / lam_exact)), None
    except Exception as exc:  # noqa: BLE001 - row must still be emitted
        return (i, k, eps, z1, method, order, param_mode,
                "error", "error", "error"), exc


def cmd_sweep(args, out) -> int:
    pts = _default_grid(args.eps_min, args.eps_max, args.eps_steps, args.z1_steps)
    work = lambda pt: _sweep_point(*pt, args.method, args.order, args.param)
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(work, pts))
    else:
        results = [work(pt) for pt in pts]
    out.write("i,k,eps,z1,method,order,param_mode,lambda,lambda_exact,ratio\n")
    failed = False
    for row, exc in results:
        i, k, eps, z1 = row[:4]
        out.write(",".join([str(i), str(k), _fmt(eps), _fmt(z1)]
                           + [str(v) for v in row[4:]]) + "\n")
        if exc is not None:
            failed = True
            print(f"point i={i} k={k}: {exc}", file=sys.stderr)
    return 2 if failed else 0


def cmd_precision(args, out) -> int:
    eps, z1 = args.eps, args.z1
    p = canonical_benchmark(eps, z1)
    tp = transform(p)
    if z1 == 0.5:
        lam_exact = closed_form_half(eps)
    else:
        lam_exact = exact_eigenvalues(tp, 1).eigenvalues[0]
    lam0, c1, c2, c3 = pt_lambda_eps_series(0, z1, XI2)
    appr = lam0
    for order, c in ((1, c1), (2, c2), (3, c3)):
        appr += c * eps ** order
        out.write(f"PT({order}) relative precision: {_fmt(appr / lam_exact - 1.0)}\n")
    from .greens import gf_lambda0

    out.write(f"GF(1) relative precision: {_fmt(gf_lambda0(p, 1) / lam_exact - 1.0)}\n")
    return 0


def cmd_cylinder(args, out) -> int:
    from .cylinder import (BESSEL_J0_FIRST_ZERO, FIRST_ORDER_V, GF,
                           HERMITIAN_U, cyl_lambda0_sequence)

    out.write("formulation,order,lambda_rmax2,sqrt\n")
    for form in (HERMITIAN_U, FIRST_ORDER_V, GF):
        seq = cyl_lambda0_sequence(form, 2)
        for order, lam in enumerate(seq):
            out.write(f"{form},{order},{_fmt(lam)},{_fmt(math.sqrt(lam))}\n")
    ref = BESSEL_J0_FIRST_ZERO
    out.write(f"reference,exact,{_fmt(ref ** 2)},{_fmt(ref)}\n")
    return 0


def cmd_diverge(args, out) -> int:
    from .divergence import divergence_scan

    tp = transform(canonical_benchmark(args.eps, args.z1))
    rows = divergence_scan(args.n, args.dz, tp)
    out.write("dz,divergent_term,finite_element,c1\n")
    for dz, div, elem, c1 in rows:
        out.write(f"{_fmt(dz)},{_fmt(div)},{_fmt(elem)},{_fmt(c1)}\n")
    return 0


def cmd_greens(args, out) -> int:
    from .greens import g0_diag_integral, gf_error_decomposition

    p = canonical_benchmark(args.eps, args.z1)
    tp = transform(p)
    res = exact_eigenvalues(tp, 100)
    partial = sum(1.0 / lam for lam in res.eigenvalues)
    integral = g0_diag_integral(p)
    out.write(f"sum rule integral: {_fmt(integral)}\n")
    out.write(f"sum over 100 oracle eigenvalues: {_fmt(partial)}\n")
    n = len(res.eigenvalues)
    out.write(f"residual: {_fmt(integral - partial)}"
              f" (tail bound {_fmt(2.0 * n / res.eigenvalues[-1])})\n")
    rep = gf_error_decomposition(p, 50)
    out.write(f"GF error direct: {_fmt(rep.direct)}\n")
    out.write(f"GF error via mode sum: {_fmt(rep.series)}\n")
    out.write(f"gap: {_fmt(rep.gap)} (tail bound {_fmt(rep.tail_bound)})\n")
    return 0


def main(argv=None) -> int:
    ap = _Parser(prog="slpt")
    ap.add_argument("--out", default=None, help="output path (default stdout)")
    ap.add_argument("--threads", type=int, default=1)
    sub = ap.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep")
    sw.add_argument("--method", choices=("pt", "gf"), required=True)
    sw.add_argument("--order", type=int, default=1)
    sw.add_argument("--param", choices=("log", "xi2"), default="log")
    sw.add_argument("--eps-min", type=float, default=-1.5)
    sw.add_argument("--eps-max", type=float, default=1.5)
    sw.add_argument("--eps-steps", type=int, default=21)
    sw.add_argument("--z1-steps", type=int, default=21)
    sw.set_defaults(func=cmd_sweep)

    pr = sub.add_parser("precision")
    pr.add_argument("--eps", type=float, required=True)
    pr.add_argument("--z1", type=float, default=0.5)
    pr.set_defaults(func=cmd_precision)

    cy = sub.add_parser("cylinder")
    cy.set_defaults(func=cmd_cylinder)

    dv = sub.add_parser("diverge")
    dv.add_argument("--n", type=int, default=0)
    dv.add_argument("--dz", type=float, nargs="+", default=[1e-2, 1e-3, 1e-4])
    dv.add_argument("--eps", type=float, default=1.0)
    dv.add_argument("--z1", type=float, default=0.5)
    dv.set_defaults(func=cmd_diverge)

    gr = sub.add_parser("greens")
    gr.add_argument("--eps", type=float, required=True)
    gr.add_argument("--z1", type=float, default=0.5)
    gr.set_defaults(func=cmd_greens)

    args = ap.parse_args(argv)
    try:
        if args.out:
            with open(args.out, "w") as fh:
                return args.func(args, fh)
        return args.func(args, sys.stdout)
    except SlptError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
