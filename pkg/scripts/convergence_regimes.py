"""Partial-sum behaviour of the Fourier sine series across the three regimes.

For each order mu the script records, at n = 2^j, the distance of the
partial sum to the reference value (where one exists), the growth of the
absolute partial sums and the size of the largest recent term.  One CSV
row per (mu, theta, n); a short table goes to stdout.

    python3 scripts/convergence_regimes.py --nu 0.3 --theta 1.0 -o regimes.csv
"""

import argparse
import csv
import math
from dataclasses import dataclass, field

import numpy as np

from ferrerslab.errors import DomainError
from ferrerslab.ferrers import CutPlanePoint, DegreeOrder, classify_convergence, eval_theorem1, fourier_partial_sum


@dataclass
class RegimeConfig:
    nu: float = 0.3
    theta: float = 1.0
    orders: list = field(default_factory=lambda: [-1.5, -1.0, -0.5, -0.25, 0.0, 0.25, 0.45, 0.75, 1.0])
    log2_max: int = 14
    output: str = "regimes.csv"


def run(cfg: RegimeConfig):
    rows = []
    x = math.cos(cfg.theta)
    for mu in cfg.orders:
        try:
            p = DegreeOrder(cfg.nu, mu)
        except DomainError:
            continue
        cls = classify_convergence(p, cfg.theta)
        ref = eval_theorem1(p, CutPlanePoint(x)).value
        _, trace = fourier_partial_sum(p, cfg.theta, 2**cfg.log2_max)
        for j in range(4, cfg.log2_max + 1):
            n = 2**j
            rows.append({
                "mu": mu,
                "class": cls.value,
                "n": n,
                "error": abs(trace.partial_sum[n] - ref),
                "abs_psum": trace.abs_partial_sum[n],
                "max_recent_term": float(np.abs(trace.term[n // 2:n + 1]).max()),
            })
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nu", type=float, default=0.3)
    ap.add_argument("--theta", type=float, default=1.0)
    ap.add_argument("--log2-max", type=int, default=14)
    ap.add_argument("-o", "--output", default="regimes.csv")
    a = ap.parse_args(argv)
    cfg = RegimeConfig(nu=a.nu, theta=a.theta, log2_max=a.log2_max, output=a.output)
    rows = run(cfg)
    with open(cfg.output, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        for r in rows:
            w.writerow({k: (format(v, ".17g") if isinstance(v, float) else v) for k, v in r.items()})
    print(f"{'mu':>6} {'class':<24} {'err(n_max)':>11} {'abs_psum':>10} {'max|term|':>10}")
    for r in rows:
        if r["n"] == 2**cfg.log2_max:
            print(f"{r['mu']:>6} {r['class']:<24} {r['error']:>11.2e} {r['abs_psum']:>10.3g} {r['max_recent_term']:>10.3g}")
    print(f"wrote {len(rows)} rows to {cfg.output}")


if __name__ == "__main__":
    main()
