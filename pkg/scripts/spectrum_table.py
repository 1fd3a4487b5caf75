"""Print the Dirac spectrum on V_l ⊗ Σ, exact and at a few values of q."""
import argparse
from fractions import Fraction

from qdirac.dirac import spectrum, verify_spectrum
from qdirac.qscalar import QField


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lmax", default="4")
    ap.add_argument("--q", type=float, nargs="*", default=[0.5, 1.1, 2.0])
    args = ap.parse_args()
    lmax = Fraction(args.lmax)
    for n in range(int(2 * lmax) + 1):
        l = Fraction(n, 2)
        ex = ", ".join(f"{v} (x{m})" for v, m in spectrum(l, QField.exact()))
        print(f"l = {l}: {ex}")
        for q0 in args.q:
            r = verify_spectrum(l, QField.numeric(q0))
            err = r.get("max_error", 0.0)
            print(f"    q0 = {q0}: ok={r['ok']} max error {err:.1e}")


if __name__ == "__main__":
    main()
