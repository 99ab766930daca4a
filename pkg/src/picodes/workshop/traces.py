"""Symbolic case-split traces with random-sampling corroboration."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import sympy as sp
from scipy.optimize import least_squares

from ..conditions import (
    as_full,
    norm_sq,
    phase_double_system,
    seven_bit_complex_system,
    theorem1_system,
)


@dataclass
class Trace:
    name: str
    steps: list[str] = field(default_factory=list)
    verdict: str = ""
    holds: bool = False
    sampling: dict = field(default_factory=dict)

    def add(self, step: str) -> None:
        self.steps.append(step)

    def text(self) -> str:
        lines = [f"[{self.name}]"] + [f"  {i + 1}. {s}" for i, s in enumerate(self.steps)]
        lines.append(f"  verdict: {self.verdict}")
        return "\n".join(lines)


def _sympy_real_forms(system, symbols):
    """Real specializations of a system as sympy expressions in even-weight symbols."""
    out = []
    for name, form in system.equations:
        form = form.primitive()
        expr = sum(sp.Rational(w.numerator, w.denominator) * symbols[i] * symbols[j] for (i, j), w in form.real_specialization().items())
        out.append((name, sp.expand(expr)))
    return out


def _proportional(expr, target) -> bool:
    ratio = sp.simplify(expr / target)
    return bool(ratio.is_number and ratio != 0)


def five_bit_nonexistence(candidate=None, samples: int = 100_000, seed: int = 0) -> Trace:
    """Case split for the real n = 5 one-bit system, optionally testing a candidate."""
    tr = Trace("n=5 one-bit, real coefficients")
    a0, a2, a4 = sp.symbols("a0 a2 a4", real=True)
    sym = {0: a0, 2: a2, 4: a4}
    forms = _sympy_real_forms(theorem1_system(5), sym)
    eqs = [sp.factor(e) for _, e in forms]
    tr.add("conditions: " + "; ".join(f"{sp.sstr(e)} = 0" for e in eqs))
    if candidate is not None:
        subs = dict(zip((a0, a2, a4), candidate))
        for e in eqs:
            val = e.subs(subs)
            if val != 0:
                tr.add(f"candidate {tuple(candidate)} fails {sp.sstr(e)} = 0 (value {sp.sstr(val)})")
                break
        else:
            tr.add(f"candidate {tuple(candidate)} satisfies all conditions")
    # The first condition is a product, so branch on its factors.
    first = eqs[0]
    if not sp.simplify(first / (a2 * a4)).is_number:
        raise AssertionError("unexpected form of the first n=5 condition")
    nontrivial = []
    for var in (a2, a4):
        rest = [sp.expand(e.subs(var, 0)) for e in eqs[1:]]
        sols = sp.solve(rest, [s for s in (a0, a2, a4) if s != var], dict=True)
        real = [s for s in sols if all(v.is_real for v in s.values())]
        tr.add(f"branch {var} = 0: remaining {', '.join(sp.sstr(e) + ' = 0' for e in rest)} -> real solutions {real}")
        nontrivial += [s for s in real if any(v != 0 for v in s.values()) or any(v.free_symbols for v in s.values())]
    tr.holds = not nontrivial
    tr.verdict = "no nontrivial real solution" if tr.holds else f"nontrivial solutions found: {nontrivial}"

    rng = np.random.default_rng(seed)
    a = rng.normal(size=(samples, 3)) * 10 ** rng.uniform(-3, 3, size=(samples, 1))
    full = as_full(5, a)
    nsq = norm_sq(5, full)
    sf = np.max(np.abs(theorem1_system(5).evaluate(full)), axis=-1) / nsq
    near = int(np.sum((sf < 1e-6) & (np.sqrt(nsq) >= 1e-3)))
    tr.sampling = {"samples": samples, "near_solutions": near, "min_scale_free": float(np.min(sf))}
    tr.add(f"{samples} random real samples: {near} with scale-free residual < 1e-6, minimum {np.min(sf):.3g}")
    tr.holds = tr.holds and near == 0
    return tr


def seven_bit_complex_uniqueness(samples: int = 100_000, seed: int = 0) -> Trace:
    """Reduce the n = 7 complex one-bit system to the two real codes."""
    tr = Trace("n=7 one-bit, complex coefficients")
    p0, q0, p2, q2, p4, q4, p6, q6 = sp.symbols("p0 q0 p2 q2 p4 q4 p6 q6", real=True)
    a = {0: p0 + sp.I * q0, 2: p2 + sp.I * q2, 4: p4 + sp.I * q4, 6: p6 + sp.I * q6}
    system = seven_bit_complex_system()

    def sym_form(form):
        expr = 0
        for kind, i, j, w in form.terms:
            prod = sp.conjugate(a[i]) * a[j]
            expr += sp.Rational(w.numerator, w.denominator) * (sp.re(prod) if kind == "re" else sp.im(prod))
        return sp.expand(expr)

    E = {nm: sym_form(f) for nm, f in system.equations}

    # a6 = 0 forces everything to vanish.
    z = {p6: 0, q6: 0}
    assert _proportional(E["sum.re.a"].subs(z), p4**2 + q4**2)
    assert _proportional(E["IZcomp"].subs(z).subs({p4: 0, q4: 0}), p0**2 + q0**2 + 9 * (p2**2 + q2**2))
    tr.add("a6 = 0: sum.re.a gives |a4|^2 = 0, then IZcomp gives |a0|^2 + 9|a2|^2 = 0; trivial")

    g = {p6: 1, q6: 0}
    E = {k: sp.expand(v.subs(g)) for k, v in E.items()}
    tr.add("gauge a6 = 1")
    s1 = sp.solve(E["sum.im"], q2)
    assert s1 == [0], s1
    tr.add(f"sum.im: {sp.sstr(E['sum.im'])} = 0 => Im a2 = 0")
    E = {k: sp.expand(v.subs(q2, 0)) for k, v in E.items()}
    s2 = sp.solve(E["sum.re.a"], p2)
    assert len(s2) == 1 and sp.simplify(s2[0] + sp.Rational(5, 3) * (p4**2 + q4**2)) == 0
    tr.add(f"sum.re.a: {sp.sstr(E['sum.re.a'])} = 0 => a2 = -(5/3)|a4|^2 <= 0")
    s3 = sp.solve(E["diff.im"], q0)
    assert len(s3) == 1 and sp.expand(s3[0] - 5 * p2 * q4) == 0
    tr.add(f"diff.im: {sp.sstr(E['diff.im'])} = 0 => Im a0 = 5 a2 Im a4")
    xy = sp.factor(E["XYcomp"].subs(q0, s3[0]))
    assert _proportional(xy, q4 * (p2 - 1) ** 2)
    tr.add(f"XYcomp after substitution: {sp.sstr(xy)} = 0 => Im a4 = 0 or a2 = 1; a2 = 1 contradicts a2 <= 0")
    tr.add("hence Im a4 = Im a0 = 0 and all coefficients are real")
    x = sp.symbols("x", positive=True)
    real = {q0: 0, q4: 0}
    e_sum = E["sum.re.a"].subs(real).subs(p2, -sp.Rational(5, 3) * p4**2)
    assert sp.expand(e_sum) == 0
    a0_sol = sp.solve(E["sum.re.b"].subs(real).subs(p2, -sp.Rational(5, 3) * p4**2), p0)
    cubic = sp.expand(E["IZcomp"].subs(real).subs({p2: -sp.Rational(5, 3) * p4**2, p0: a0_sol[0]}).subs(p4**2, x))
    cubic = sp.factor(sp.expand(cubic.subs(p4, sp.sqrt(x))))
    roots = [r for r in sp.solve(cubic, x) if r.is_real and r > 0]
    tr.add(f"real case: a0 = {sp.sstr(a0_sol[0])}; IZcomp becomes {sp.sstr(cubic)} = 0 in x = a4^2; positive real roots {roots}")
    tr.holds = roots == [sp.Rational(1, 5)]
    tr.add("x = 1/5 gives a4 = +-1/sqrt(5), a2 = -1/3, a0 = +-sqrt(5): the two known codes")

    rng = np.random.default_rng(seed)
    c = rng.normal(size=(samples, 4)) + 1j * rng.normal(size=(samples, 4))
    full = as_full(7, c)
    nsq = norm_sq(7, full)
    sf = np.max(np.abs(system.evaluate(full)), axis=-1) / nsq
    tr.sampling = {"samples": samples, "near_solutions": int(np.sum(sf < 1e-6)), "min_scale_free": float(np.min(sf))}
    tr.add(f"{samples} random complex samples: {tr.sampling['near_solutions']} with scale-free residual < 1e-6")
    tr.verdict = "only the two real n=7 codes (up to phase and normalization)" if tr.holds else "unexpected extra solutions"
    return tr


def phase5_uniqueness_search(starts: int = 200, seed: int = 0, tol: float = 1e-12) -> dict:
    """Nonnegative solutions (|a0|^2, |a2|^2, |a4|^2) of the n = 5 phase system, normalized to unit sum."""
    system = phase_double_system(5)
    # Both conditions are linear in p_k = |a_k|^2: read off the weights.
    W = np.array([[float(sum(w for kind, i, j, w in f.terms if i == j == k)) for k in (0, 2, 4)] for _, f in system.equations])

    def resid(p):
        return np.concatenate([W @ p, [np.sum(p) - 1]])

    rng = np.random.default_rng(seed)
    sols = []
    for _ in range(starts):
        out = least_squares(resid, rng.uniform(0, 1, 3), bounds=(0, np.inf), xtol=1e-15, ftol=1e-15, gtol=1e-15)
        if np.max(np.abs(out.fun)) < tol:
            sols.append(out.x / np.sum(out.x))
    sols = np.array(sols)
    dist = np.max(np.abs(sols - 1 / 3), axis=1) if len(sols) else np.array([])
    return {
        "starts": starts,
        "solutions": len(sols),
        "max_distance_from_equal": float(np.max(dist)) if len(dist) else float("nan"),
        "points": sols,
    }
