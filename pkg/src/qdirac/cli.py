"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
Output is deterministic for identical arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import braiding, clifford, dirac, fredholm
from .qscalar import QField
from .verify import run_suites, summary

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: float | None  # None means exact
    fmt: str
    tol: float
    l: Fraction | None = None
    jmax: Fraction | None = None
    shift: Fraction = Fraction(1, 2)
    out: str | None = None
    corrupt: str | None = None

    @property
    def field(self) -> QField:
        return QField.exact() if self.q is None else QField.numeric(self.q)


def parse_half_integer(text: str, name: str, allow_negative: bool = False) -> Fraction:
    try:
        x = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--{name} must be a half-integer, got {text!r}")
    if (2 * x).denominator != 1 or (x < 0 and not allow_negative):
        raise UsageError(f"--{name} must be a {'' if allow_negative else 'nonnegative '}half-integer, got {text!r}")
    return x


def parse_q(text: str) -> float | None:
    if text.strip().lower() == "exact":
        return None
    try:
        q = float(text)
    except ValueError:
        raise UsageError(f"--q must be 'exact' or a positive number, got {text!r}")
    if not q > 0 or q == 1.0:
        raise UsageError(f"--q must be positive and different from 1, got {text!r}")
    return q


def _scalar(v):
    if isinstance(v, (int, float)):
        return float(v)
    return str(v)


# ---------------------------------------------------------------------------
# commands


def cmd_spectrum(cfg: RunConfig):
    fld = cfg.field
    report = dirac.verify_spectrum(cfg.l, fld, cfg.tol)
    rows = [{"eigenvalue": _scalar(v), "multiplicity": k} for v, k in dirac.spectrum(cfg.l, fld)]
    if cfg.fmt == "csv":
        return _csv(["eigenvalue", "multiplicity"], [(r["eigenvalue"], r["multiplicity"]) for r in rows]), report["ok"]
    if cfg.fmt == "text":
        return "".join(f"{r['eigenvalue']}\t{r['multiplicity']}\n" for r in rows), report["ok"]
    return _json(rows), report["ok"]


def cmd_verify(cfg: RunConfig):
    results = run_suites(q0=cfg.q, tol=cfg.tol, corrupt=cfg.corrupt == "demo")
    summ = summary(results)
    for r in results:
        if not r.passed:
            print(f"qdirac: FAILED suite {r.suite}: {r.claim}", file=sys.stderr)
    if cfg.fmt == "text":
        lines = [f"[{'PASS' if r.passed else 'FAIL'}] suite {r.suite}: {r.claim}"
                 + (f" (residual {float(r.residual):.3e})" if r.residual is not None else "")
                 + (f" {r.detail}" if r.detail and not r.passed else "")
                 for r in results]
        lines.append(f"{summ['passed']} passed, {summ['failed']} failed")
        return "\n".join(lines) + "\n", summ["ok"]
    return _json({"summary": summ, "checks": [r.as_dict() for r in results]}), summ["ok"]


def cmd_relations(cfg: RunConfig):
    alg = clifford.build_clifford(cfg.field)
    if cfg.corrupt == "demo":
        alg = alg.corrupted()
    lines = alg.relations_text()
    ok = all(clifford.compare_relations(alg).values())
    if cfg.fmt == "json":
        return _json(lines), ok
    return "\n".join(lines) + "\n", ok


def cmd_fredholm(cfg: RunConfig):
    if cfg.q is None:
        raise UsageError("fredholm needs a numeric --q")
    rows = fredholm.table(cfg.jmax, cfg.q, cfg.shift)
    header = ["j", "F_up", "F_down", "tail", "c_j"]
    if cfg.fmt == "json":
        return _json([dict(zip(header, r)) for r in rows]), True
    return _csv(header, rows), True


def cmd_braiding(cfg: RunConfig):
    split = braiding.spectral_split(cfg.l, cfg.field)
    rows = [{"eigenvalue": _scalar(s.eigenvalue), "multiplicity": s.dim,
             "sign": "positive" if s.sign > 0 else "negative",
             "components": [f"V_{c}" for c in s.spins]} for s in split.eigenspaces]
    if cfg.fmt == "csv":
        return _csv(["eigenvalue", "multiplicity", "sign", "components"],
                    [(r["eigenvalue"], r["multiplicity"], r["sign"], " ".join(r["components"])) for r in rows]), True
    return _json(rows), True


COMMANDS = {"spectrum": cmd_spectrum, "verify": cmd_verify, "relations": cmd_relations,
            "fredholm": cmd_fredholm, "braiding": cmd_braiding}


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if x is None else (repr(float(x)) if isinstance(x, (float, np.floating)) else x) for x in r])
    return buf.getvalue()


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdirac", description="q-deformed Clifford algebra and Dirac operator on U_q(su(2))")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, q_default, fmt_default, fmts):
        sp.add_argument("--q", default=q_default, help="'exact' or a numeric q0 > 0, q0 != 1")
        sp.add_argument("--format", default=fmt_default, choices=fmts)
        sp.add_argument("--out", default=None, help="write output to this file")
        sp.add_argument("--tol", type=float, default=1e-10)

    sp = sub.add_parser("spectrum", help="eigenvalues of D on V_l ⊗ Σ")
    sp.add_argument("--l", required=True)
    common(sp, "exact", "json", ["json", "csv", "text"])
    sp = sub.add_parser("verify", help="run every verification suite")
    common(sp, "exact", "json", ["json", "text"])
    sp.add_argument("--corrupt", choices=["demo"], default=None, help="flip one Clifford coefficient")
    sp = sub.add_parser("relations", help="Clifford relations in canonical text")
    common(sp, "exact", "text", ["text", "json"])
    sp.add_argument("--corrupt", choices=["demo"], default=None)
    sp = sub.add_parser("fredholm", help="block table of F, trace tail and c_j(k)")
    sp.add_argument("--jmax", default="40")
    sp.add_argument("--shift", default="1/2")
    common(sp, "1.5", "csv", ["csv", "json"])
    sp = sub.add_parser("braiding", help="spectral table of the braiding on V_l ⊗ V_l")
    sp.add_argument("--l", default="1")
    common(sp, "exact", "json", ["json", "csv"])
    return p


def make_config(ns) -> RunConfig:
    if not ns.tol > 0:
        raise UsageError("--tol must be positive")
    q = parse_q(ns.q)
    kw = {}
    if hasattr(ns, "l"):
        kw["l"] = parse_half_integer(ns.l, "l")
    if hasattr(ns, "jmax"):
        kw["jmax"] = parse_half_integer(ns.jmax, "jmax")
        if kw["jmax"] > 200:
            raise UsageError("--jmax must be at most 200")
    if hasattr(ns, "shift"):
        kw["shift"] = parse_half_integer(ns.shift, "shift", allow_negative=True)
        if abs(kw["shift"]) > 4:
            raise UsageError("--shift must satisfy |k| <= 4")
    return RunConfig(ns.command, q, ns.format, ns.tol, out=ns.out, corrupt=getattr(ns, "corrupt", None), **kw)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = make_config(ns)
        text, ok = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qdirac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not ok:
        print("qdirac: verification failed", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
