"""Pointwise versus envelope error decay of absolutely convergent partial sums.

With Re mu < 0 the coefficients decay like k^(2 mu - 1), so the tail is
O(n^(2 Re mu)).  The pointwise error |S_n - P| also carries the
oscillating factor of the first omitted terms, so the ratio
err(2n)/err(n) jumps around; the envelope max_{m in [n, 2n)} err(m)
follows the power law.  This script prints both ratios.

    python3 scripts/error_decay.py --nu 0.3 --mu -1 --theta 2.0
"""

import argparse
from dataclasses import dataclass

import numpy as np

from ferrerslab.ferrers import DegreeOrder, ThetaPoint, eval_theta, fourier_partial_sum


@dataclass
class DecayConfig:
    nu: float = 0.3
    mu: float = -1.0
    theta: float = 2.0
    log2_min: int = 8
    log2_max: int = 14


def run(cfg: DecayConfig):
    p = DegreeOrder(cfg.nu, cfg.mu)
    ref = eval_theta(p, ThetaPoint(cfg.theta)).value
    _, trace = fourier_partial_sum(p, cfg.theta, 2 ** (cfg.log2_max + 1))
    err = np.abs(trace.partial_sum - ref)
    out = []
    for j in range(cfg.log2_min, cfg.log2_max):
        n = 2**j
        out.append((n, err[n], err[2 * n] / err[n], err[2 * n:4 * n].max() / err[n:2 * n].max()))
    return out, 2 ** (2 * cfg.mu)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nu", type=float, default=0.3)
    ap.add_argument("--mu", type=float, default=-1.0)
    ap.add_argument("--theta", type=float, default=2.0)
    a = ap.parse_args(argv)
    rows, predicted = run(DecayConfig(a.nu, a.mu, a.theta))
    print(f"predicted ratio 2^(2 mu) = {predicted:.4f}")
    print(f"{'n':>6} {'err(n)':>10} {'pointwise':>10} {'envelope':>10}")
    for n, e, r_point, r_env in rows:
        print(f"{n:>6} {e:>10.3e} {r_point:>10.4f} {r_env:>10.4f}")


if __name__ == "__main__":
    main()
