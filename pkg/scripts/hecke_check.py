"""Braid, distant-commutation and spectral-polynomial residuals over a q grid.

Each cell is "absolute / relative", the latter divided by the size of the
products compared (entries grow like q^(-2l(l+1)) away from q = 1).
"""
import argparse
from fractions import Fraction

import numpy as np

from qdirac.braiding import verify_hecke
from qdirac.qscalar import QField


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=float, nargs="*", default=list(np.round(np.linspace(0.3, 3.0, 10), 3)))
    args = ap.parse_args()
    cases = ((Fraction(1, 2), 3), (Fraction(1, 2), 4), (Fraction(1), 3), (Fraction(3, 2), 3))
    print("q0      " + "  ".join(f"V_{l}^{n}".ljust(15) for l, n in cases))
    for q0 in args.q:
        if q0 == 1.0:
            continue
        res = [verify_hecke(l, n, QField.numeric(q0)) for l, n in cases]
        print(f"{q0:<7g} " + "  ".join(f"{r['max_residual']:.1e}/{r['max_relative']:.1e}" for r in res))


if __name__ == "__main__":
    main()
