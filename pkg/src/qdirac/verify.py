"""End-to-end verification suites.

Each suite returns :class:`CheckResult` records; ``run_suites`` runs all of
them. Exact checks are exact; numeric ones use the sample points below
unless a single ``q0`` is given.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import braiding, clifford, dirac, fredholm, invariant, linalg
from .qscalar import QField
from .representation import build_irrep, check_defining_relations, classical_ladder

Q_SAMPLES = (0.5, 1.1, 2.0)
SPECTRUM_SPINS = tuple(Fraction(n, 2) for n in (1, 2, 3, 4, 6, 8))
NEAR_ONE = 1.0 + 1e-4


@dataclass
class CheckResult:
    suite: int
    claim: str
    passed: bool
    residual: float | None = None
    detail: str = ""
    seconds: float = 0.0

    def as_dict(self, timings: bool = False) -> dict:
        d = asdict(self)
        d["passed"] = bool(d["passed"])
        if d["residual"] is not None:
            d["residual"] = float(d["residual"])
        if not timings:
            d.pop("seconds")
        return d


class _Timer:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t


def _samples(q0):
    return Q_SAMPLES if q0 is None else (q0,)


# 1 ------------------------------------------------------------------------


def suite_spectrum(q0=None, tol: float = 1e-10) -> list:
    out = []
    exact = QField.exact()
    with _Timer() as t:
        bad = [str(l) for l in SPECTRUM_SPINS if not dirac.verify_spectrum(l, exact)["ok"]]
    out.append(CheckResult(1, "Dirac spectrum [2l] (x 2l+2), -[2l+2] (x 2l), exact, l = 1/2..4", not bad,
                           None, f"failed for l in {bad}" if bad else "", t.seconds))
    with _Timer() as t:
        worst = 0.0
        ok = True
        for q in _samples(q0):
            for l in SPECTRUM_SPINS:
                r = dirac.verify_spectrum(l, QField.numeric(q), tol)
                ok = ok and r["ok"]
                worst = max(worst, r.get("max_error", math.inf))
    out.append(CheckResult(1, "Dirac spectrum numeric at q0 samples", ok and worst < tol, worst, "", t.seconds))
    with _Timer() as t:
        zero = dirac.realize(0, exact)
        ok = exact.is_zero(zero)
    out.append(CheckResult(1, "Dirac operator vanishes on V_0 ⊗ Σ", ok, None, "", t.seconds))
    return out


# 2 ------------------------------------------------------------------------


def suite_clifford(corrupt: bool = False) -> list:
    out = []
    fld = QField.exact()
    with _Timer() as t:
        alg = clifford.build_clifford(fld)
        if corrupt:
            alg = alg.corrupted()
        cmp = clifford.compare_relations(alg)
    for name, ok in cmp.items():
        out.append(CheckResult(2, f"Clifford relation {name} (b = -1)", ok, None,
                               "" if ok else "not reproduced by the rewrite system", t.seconds))
    with _Timer() as t:
        ref = clifford.reference_spin_matrices(fld)
        spin = clifford.spin_representation(clifford.build_clifford(fld))
        same = all(fld.is_zero(a - b) for a, b in zip(ref, spin.psi))
        ref_spin = clifford.SpinRepresentation(alg, spin.sigma, ref)
        resid = max(ref_spin.relation_residuals())
    out.append(CheckResult(2, "spin matrices s(ψ1), s(ψ0), s(ψ-1) solve the equivariance problem", same, None,
                           "", t.seconds))
    out.append(CheckResult(2, "closed-form spin matrices satisfy every Clifford relation", resid == 0.0, resid,
                           "", t.seconds))
    anti = ref[0].dot(ref[2]) + ref[2].dot(ref[0]) + fld.eye(2)
    out.append(CheckResult(2, "s(ψ1)s(ψ-1) + s(ψ-1)s(ψ1) = -1", fld.is_zero(anti), None, ""))
    return out


# 3 ------------------------------------------------------------------------


def suite_dirac(q0=None, tol: float = 1e-10) -> list:
    out = []
    exact = QField.exact()
    with _Timer() as t:
        cov = dirac.quantum_lie_basis(exact).covariance_symbolic()
    out.append(CheckResult(3, "Z_i transform as the adjoint module under the opposite adjoint action",
                           all(cov.values()), None, str(cov), t.seconds))
    with _Timer() as t:
        inv = dirac.build_dirac(exact).invariance_symbolic()
    out.append(CheckResult(3, "D is invariant: Δ(x)(⊵op ⊗ ▷)D = ε(x)D (exact)", all(inv.values()), None, str(inv),
                           t.seconds))
    with _Timer() as t:
        worst = 0.0
        for q in _samples(q0):
            op = dirac.build_dirac(QField.numeric(q))
            for n in range(1, 9):
                worst = max(worst, max(op.commutator_norms(Fraction(n, 2)).values()))
    out.append(CheckResult(3, "D commutes with the action on V_l ⊗ Σ, l <= 4", worst < tol, worst, "", t.seconds))
    with _Timer() as t:
        ex = dirac.build_dirac(exact)
        ok = all(v == 0.0 for n in range(1, 5) for v in ex.commutator_norms(Fraction(n, 2)).values())
    out.append(CheckResult(3, "D commutes with the action on V_l ⊗ Σ, l <= 2 (exact)", ok, None, "", t.seconds))
    with _Timer() as t:
        neg = dirac.negative_control_naive(Fraction(1, 2), 1.5)
        naive = max(neg["naive_commutators"].values())
        naive_inv = dirac.naive_invariance(exact)
    out.append(CheckResult(3, "naive operator A fails to commute (q0 = 1.5, l = 1/2)", naive > 0.01, naive, "",
                           t.seconds))
    out.append(CheckResult(3, "naive operator A is invariant under the primary adjoint action",
                           all(naive_inv.values()), None, str(naive_inv)))
    with _Timer() as t:
        cub = dirac.cubic_term(exact)
        c_inv = cub.invariance()
        c_com = max(max(cub.commutator_norms(Fraction(n, 2)).values()) for n in range(1, 3))
        odd = any(len(w) == 3 for w in cub.normal_form())
    out.append(CheckResult(3, "cubic term Γ is invariant and commutes with the action",
                           all(c_inv.values()) and c_com == 0.0 and odd, c_com, str(c_inv), t.seconds))
    return out


# 4 ------------------------------------------------------------------------


def suite_form() -> list:
    fld = QField.exact()
    with _Timer() as t:
        v = build_irrep(1, fld)
        sol = invariant.form_solution_space(v)
        form = invariant.invariant_form(v)
        det = form.det()
        inv = form.invariance_residuals()
        phi = form.phi_residuals()
    return [
        CheckResult(4, "invariance system for B on adjoint ⊗ adjoint has a 1-dimensional solution space",
                    sol.shape[1] == 1, None, f"dimension {sol.shape[1]}", t.seconds),
        CheckResult(4, "invariant form is nondegenerate", not fld.is_zero_scalar(det), None, f"det = {det}"),
        CheckResult(4, "B is invariant and v -> B(v ⊗ ·) is a module map V -> V*",
                    max(inv.values()) == 0.0 and max(phi.values()) == 0.0, None, ""),
    ]


# 5 ------------------------------------------------------------------------


def suite_hecke(q0=None, tol: float = 1e-10) -> list:
    out = []
    q = 1.3 if q0 is None else q0
    for l, n in ((Fraction(1, 2), 3), (Fraction(1, 2), 4), (Fraction(1), 3)):
        with _Timer() as t:
            r = braiding.verify_hecke(l, n, QField.numeric(q), tol)
        out.append(CheckResult(5, f"braid, distant commutation and spectral polynomial on V_{l}^{n}", r["ok"],
                               r["max_residual"], "", t.seconds))
    with _Timer() as t:
        split = braiding.spectral_split(1, QField.exact())
        pos = sorted(str(s) for s in sum((sp.spins for sp in split.positive), ()))
        neg = sorted(str(s) for s in sum((sp.spins for sp in split.negative), ()))
    out.append(CheckResult(5, "V_0 ⊕ V_2 is the positive and V_1 the negative part of V ⊗ V",
                           pos == ["0", "2"] and neg == ["1"], None, f"positive {pos}, negative {neg}", t.seconds))
    return out


# 6 ------------------------------------------------------------------------


def suite_spin() -> list:
    fld = QField.exact()
    with _Timer() as t:
        alg = clifford.build_clifford(fld)
        spin = clifford.spin_representation(alg)
        eq = spin.equivariance_residuals()
        iso = clifford.verify_algebra_isomorphism(alg, spin)
        cov = alg.ideal_covariance()
    return [
        CheckResult(6, "equivariance s(γ(x ▷ v)) = σ(x')s(γ(v))σ(S(x''))", max(eq.values()) == 0.0, None, str(eq),
                    t.seconds),
        CheckResult(6, "dim cl_q = 8", iso["dimension"] == 8, None, ""),
        CheckResult(6, "s maps onto the 2x2 matrices (rank 4, kernel 4)", iso["rank_s"] == 4 and iso["kernel_s"] == 4,
                    None, ""),
        CheckResult(6, "s ⊕ s' is injective, s' = s(-ψ) satisfies the relations",
                    iso["rank_s_plus_s_neg"] == 8 and iso["negated_satisfies_relations"], None, ""),
        CheckResult(6, "the ideal is stable under the adjoint action", max(cov.values()) == 0.0, None, ""),
    ]


# 7 ------------------------------------------------------------------------


def suite_omega() -> list:
    fld = QField.exact()
    with _Timer() as t:
        res = {str(l): invariant.invariant_vector_residuals(build_irrep(l, fld)) for l in (Fraction(1, 2), 1, 2)}
    ok = all(v == 0.0 for r in res.values() for v in r.values())
    return [CheckResult(7, "Ω = Σ v_i ⊗ v_i* is invariant in V ⊗ V*", ok, None, "", t.seconds)]


# 8 ------------------------------------------------------------------------


def suite_fredholm(q0=None) -> list:
    q = 1.5 if q0 is None else q0
    out = []
    with _Timer() as t:
        tt = fredholm.trace_tail(200, q)
        stable = abs(tt.total - tt.partial_sums[int(2 * 25)]) < 1e-12 and tt.knee <= 25
        rate_ok = abs(tt.fitted_rate - tt.expected_rate) < 0.05 * abs(tt.expected_rate)
    out.append(CheckResult(8, "Tr(1 - F^2) partial sums stabilize to 1e-12 by j = 25", stable,
                           float(abs(tt.total - tt.partial_sums[50])), f"knee at j = {tt.knee}", t.seconds))
    out.append(CheckResult(8, "trace increments decay like q^-4j",
                           math.isfinite(tt.envelope_c) and rate_ok, tt.envelope_c,
                           f"fitted rate {tt.fitted_rate:.4f}, expected {tt.expected_rate:.4f}"))
    with _Timer() as t:
        bad = []
        worst = 0.0
        for k in (Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1)):
            d = fredholm.commutator_decay(k, 200, q)
            expected = -2 * math.log(max(q, 1 / q))
            if not (math.isfinite(d.envelope_c) and abs(d.fitted_rate - expected) < 0.05 * abs(expected)):
                bad.append(str(k))
            worst = max(worst, d.envelope_c)
    out.append(CheckResult(8, "commutator coefficients c_j(k) decay like q^-2j, k = ±1/2, ±1", not bad, worst,
                           f"failed for k in {bad}" if bad else "", t.seconds))
    return out


# 9 ------------------------------------------------------------------------


def classical_limit_residuals(q0: float = NEAR_ONE) -> dict:
    near = QField.numeric(q0)
    one = QField.classical()
    out = {}
    gen = 0.0
    for n in range(0, 5):
        l = Fraction(n, 2)
        a, b = build_irrep(l, near), build_irrep(l, one)
        lad = classical_ladder(l)
        for x in ("e", "f", "k", "K"):
            gen = max(gen, float(np.max(np.abs(a.act(x) - b.act(x)))) if a.dim else 0.0)
        gen = max(gen, float(np.max(np.abs(b.e - lad["e"]))))
    out["generator matrices"] = gen
    rh = 0.0
    for l in (Fraction(1, 2), Fraction(1)):
        m = braiding.braiding_op(l, l, near).matrix
        d = int(2 * l + 1)
        rh = max(rh, float(np.max(np.abs(m - braiding.flip(d, d, one)))))
    out["braiding vs flip"] = rh
    rel_near = clifford.build_clifford(near).display_relations()
    rel_one = clifford.build_clifford(one).display_relations()
    cr = 0.0
    for (w1, c1, k1), (w2, c2, k2) in zip(rel_near, rel_one):
        if w1 != w2 or set(c1) != set(c2):
            cr = math.inf
            break
        cr = max([cr, abs(k1 - k2)] + [abs(c1[w] - c2[w]) for w in c1])
    if len(rel_near) != len(rel_one):
        cr = math.inf
    out["Clifford relations"] = cr
    # entries move at first order in q - 1 with a factor growing like l^2, so the
    # absolute comparison stops at l = 3/2 and larger l are compared relative to |D|
    dr = rel = 0.0
    for n in range(0, 9):
        l = Fraction(n, 2)
        a, b = dirac.realize(l, near), dirac.realize(l, one)
        diff = float(np.max(np.abs(a - b)))
        if n <= 3:
            dr = max(dr, diff)
        if n > 0:
            rel = max(rel, diff / float(np.max(np.abs(b))))
    out["Dirac operator, l <= 3/2"] = dr
    out["Dirac operator relative to its norm, l <= 4"] = rel
    return out


def suite_classical(tol: float = 1e-3) -> list:
    with _Timer() as t:
        res = classical_limit_residuals()
    return [CheckResult(9, f"q0 = 1 + 1e-4 agrees with q = 1: {name}", r < tol, r, "", t.seconds)
            for name, r in res.items()]


# ---------------------------------------------------------------------------


def suite_relations() -> list:
    """Defining relations of every irrep used above (exact)."""
    fld = QField.exact()
    bad = [str(Fraction(n, 2)) for n in range(0, 9) if not check_defining_relations(build_irrep(Fraction(n, 2), fld))["ok"]]
    return [CheckResult(0, "defining relations hold in V_l, l <= 4", not bad, None, f"failed: {bad}" if bad else "")]


SUITES = {
    1: lambda a: suite_spectrum(a["q0"], a["tol"]),
    2: lambda a: suite_clifford(a["corrupt"]),
    3: lambda a: suite_dirac(a["q0"], a["tol"]),
    4: lambda a: suite_form(),
    5: lambda a: suite_hecke(a["q0"], a["tol"]),
    6: lambda a: suite_spin(),
    7: lambda a: suite_omega(),
    8: lambda a: suite_fredholm(a["q0"]),
    9: lambda a: suite_classical(),
}


def run_suites(q0: float | None = None, tol: float = 1e-10, corrupt: bool = False, suites=None) -> list:
    args = {"q0": q0, "tol": tol, "corrupt": corrupt}
    out = suite_relations()
    for key in suites or sorted(SUITES):
        out += SUITES[key](args)
    return out


def summary(results: list) -> dict:
    return {"passed": int(sum(bool(r.passed) for r in results)),
            "failed": int(sum(not r.passed for r in results)),
            "ok": bool(all(r.passed for r in results))}


__all__ = ["CheckResult", "run_suites", "summary", "classical_limit_residuals", "linalg"]
