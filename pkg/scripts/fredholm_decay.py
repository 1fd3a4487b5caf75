"""Trace-tail and commutator-decay fits for the truncated Fredholm module."""
import argparse
from fractions import Fraction

from qdirac.fredholm import commutator_decay, trace_tail


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--jmax", default="200")
    ap.add_argument("--q", type=float, nargs="*", default=[1 + 1e-6, 1.05, 1.2, 1.5, 2.0])
    args = ap.parse_args()
    jmax = Fraction(args.jmax)
    print("q0        knee   Tr(1-F^2)       rate(trace) expected  | k    C        rate     power")
    for q0 in args.q:
        tt = trace_tail(jmax, q0)
        head = f"{q0:<9.6g} {tt.knee:<6g} {tt.total:<15.10g} {tt.fitted_rate:<11.4f} {tt.expected_rate:<9.4f}"
        for i, k in enumerate((Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1))):
            d = commutator_decay(k, jmax, q0)
            pre = head if i == 0 else " " * len(head)
            print(f"{pre} | {str(k):<4} {d.envelope_c:<8.4g} {d.fitted_rate:<8.4f} {d.power_exponent:.3f}")


if __name__ == "__main__":
    main()
