#!/usr/bin/env python3
"""Trace plasma-oscillation branches omega(q) for the quantum, classical and
Mermin models and write them to CSV alongside the long-wave asymptotes.

Usage:
    python scripts/trace_branches.py [--xp 1.0] [--y 1e-6] \
        [--kappa-range 0.1:0.5] [--n 41] [--out branches.csv]
"""

import argparse
import math
import sys

from qplasma.dielectric import ModelKind, PlasmaParams
from qplasma.dispersion import gamma_asymptotic, omega_asymptotic, trace_branch

SQRT2 = math.sqrt(2.0)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--xp", type=float, default=1.0)
    ap.add_argument("--y", type=float, default=1e-6)
    ap.add_argument("--kappa-range", default="0.1:0.5",
                    help="k/k_D range as lo:hi")
    ap.add_argument("--n", type=int, default=41)
    ap.add_argument("--out", default="branches.csv")
    args = ap.parse_args()

    lo, hi = (float(tok) for tok in args.kappa_range.split(":"))
    params = PlasmaParams(x_p=args.xp, y=args.y)
    kD = params.debye_wavenumber

    branches = {}
    for model in (ModelKind.QUANTUM, ModelKind.CLASSICAL, ModelKind.MERMIN):
        branches[model] = trace_branch(params, lo * kD, hi * kD, args.n, model)

    cols = ["q", "kappa"]
    for model in branches:
        cols += [f"re_omega_{model.value}", f"im_omega_{model.value}"]
    cols += ["omega_asymptotic", "gamma_asymptotic"]

    lines = [f"# x_p: {args.xp:.17g}", f"# y: {args.y:.17g}", ",".join(cols)]
    quantum_roots = branches[ModelKind.QUANTUM]
    for i in range(args.n):
        q = quantum_roots[i].q
        kappa = q / kD
        row = [q, kappa]
        for model in branches:
            root = branches[model][i]
            row += [root.omega.real, root.omega.imag]
        row.append(args.xp * omega_asymptotic(kappa, params.quantum_parameter))
        row.append(gamma_asymptotic(params, q))
        lines.append(",".join(format(v, ".17g") for v in row))

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {args.out} ({args.n} points, kappa in [{lo}, {hi}])")
    return 0


if __name__ == "__main__":
    sys.exit(main())
