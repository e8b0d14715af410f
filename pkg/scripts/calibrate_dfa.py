"""Monte Carlo bias of the DFA Hurst estimator on fractional Gaussian noise.

    python scripts/calibrate_dfa.py --n 10000 --seeds 50 --h 0.3 0.5 0.7 0.8
"""

import argparse

import numpy as np

from longmem import DfaConfig, default_scales, fgn, hurst_dfa
from longmem.synth import spawn_seeds


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10000)
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--h", type=float, nargs="+", default=[0.3, 0.5, 0.7, 0.8])
    ap.add_argument("--poly-order", type=int, default=1)
    ap.add_argument("--base-seed", type=int, default=0)
    args = ap.parse_args()

    config = DfaConfig(scales=tuple(default_scales(args.n)), poly_order=args.poly_order)
    print(f"scales={list(config.scales)} order={config.poly_order} n={args.n} seeds={args.seeds}")
    print(f"{'H':>5} {'mean':>8} {'bias':>8} {'sd':>8}")
    for k, h in enumerate(args.h):
        est = np.array([hurst_dfa(fgn(args.n, h, seed=s), config).h for s in spawn_seeds(args.base_seed + k, args.seeds)])
        print(f"{h:5.2f} {est.mean():8.4f} {est.mean() - h:+8.4f} {est.std(ddof=1):8.4f}")


if __name__ == "__main__":
    main()
