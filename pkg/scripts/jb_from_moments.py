"""Jarque-Bera statistic and chi-squared(2) p-value from reported moments.

Kurtosis is raw (3 for a Gaussian); pass --excess if the source reports
excess kurtosis.

    python scripts/jb_from_moments.py 1404 2.2166 36.1865 1404 -0.0418 4.8014
"""

import argparse

from longmem.stats import chi2_2dof_sf, jarque_bera


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("triples", nargs="+", help="n skewness kurtosis, repeated")
    ap.add_argument("--excess", action="store_true")
    args = ap.parse_args()
    if len(args.triples) % 3:
        ap.error("arguments must come in (n, skewness, kurtosis) triples")
    for i in range(0, len(args.triples), 3):
        n, s, k = int(args.triples[i]), float(args.triples[i + 1]), float(args.triples[i + 2])
        jb = jarque_bera(n, s, k + 3.0 if args.excess else k)
        print(f"n={n} S={s} K={k}: JB={jb:.4f} p={chi2_2dof_sf(jb):.3g}")


if __name__ == "__main__":
    main()
