"""Evidence about 9-qubit codes correcting one-bit plus double-Z errors.

Three kinds of evidence:
  * the bracket multiplying nu in ImXY is a sum of nonnegative terms plus 15;
  * a log-grid scan (plus local refinement) of the remaining diagonal
    conditions over the complex family that solves the raising/lowering groups;
  * multistart least-squares searches, on the compressed engine over all
    complex coefficient vectors, or on the dense oracle for an error set.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares, minimize

from ..conditions import NINE_BIT_NAMES, as_full, nine_bit_double_system, norm_sq
from ..dicke import DickeCode
from ..kl import error_set, errored_words, kl_matrices
from .families import family_bracket, family_coeffs

NOGO_FLOOR = 1e-3  # minimum residual below which a near-solution is reported
X_RANGE = (1e-3, 1e3)
Y_MAX = 1e3
SCAN_EQUATIONS = ("dZZa", "dbIZZ")


@dataclass(frozen=True)
class BracketResult:
    min_value: float
    argmin: tuple[float, float]
    samples: int
    max_identity_error: float  # max |ImXY - nu*bracket| / ||c0||^2 over the samples


def _sample_family(samples: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    x = 10 ** rng.uniform(-3, 3, samples)
    y = rng.choice([-1.0, 1.0], samples) * 10 ** rng.uniform(-3, 3, samples)
    y[rng.uniform(size=samples) < 0.05] = 0.0
    return x, y


def nogo_bracket_positivity(samples: int = 10_000, seed: int = 0) -> BracketResult:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    x, y = _sample_family(samples, rng)
    br = family_bracket(x, y)
    a = family_coeffs(x, y, 1)
    imxy = nine_bit_double_system().subset(["ImXY"]).evaluate(as_full(9, a))[..., 0]
    nu = (a[..., 1] / 1j).real
    err = np.abs(imxy - nu * br) / norm_sq(9, as_full(9, a))
    i = int(np.argmin(br))
    return BracketResult(float(br[i]), (float(x[i]), float(y[i])), samples, float(np.max(err)))


@dataclass
class ScanResult:
    equations: tuple[str, ...]
    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray  # combined scale-free squared residual on the grid
    grid_min: float
    grid_argmin: tuple[float, float]
    min_residual: float
    argmin: tuple[float, float]
    floor: float = NOGO_FLOOR
    notes: list[str] = field(default_factory=list)

    @property
    def supported(self) -> bool:
        return self.min_residual > self.floor

    def table(self) -> str:
        rows = ["x y residual"]
        for i, x in enumerate(self.xs):
            for j, y in enumerate(self.ys):
                rows.append(f"{x:.12g} {y:.12g} {self.values[i, j]:.12g}")
        return "\n".join(rows) + "\n"


def family_residual(x, y, equations: Sequence[str] = SCAN_EQUATIONS, sign: int = 1):
    """Sum over ``equations`` of (residual / ||c0||^2)^2 at family points (x, y)."""
    a = as_full(9, family_coeffs(x, y, sign))
    vals = nine_bit_double_system().subset(list(equations)).evaluate(a)
    return np.sum(np.abs(vals / np.asarray(norm_sq(9, a))[..., None]) ** 2, axis=-1)


def default_y_grid(ny: int) -> np.ndarray:
    h = max(ny // 2, 1)
    pos = np.logspace(-3, np.log10(Y_MAX), h)
    return np.concatenate([-pos[::-1], [0.0], pos])


def nogo_residual_scan(
    nx: int = 200,
    ny: int = 200,
    equations: Sequence[str] = SCAN_EQUATIONS,
    refine: bool = True,
    ys: Sequence[float] | None = None,
    n_refine: int = 5,
) -> ScanResult:
    """Grid scan of the family; ``ys=[0.0]`` restricts to the real-a4 axis."""
    for e in equations:
        if e not in NINE_BIT_NAMES:
            raise ValueError(f"unknown equation {e!r}")
    xs = np.logspace(np.log10(X_RANGE[0]), np.log10(X_RANGE[1]), nx)
    ys = default_y_grid(ny) if ys is None else np.asarray(ys, float)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    vals = family_residual(X, Y, equations)
    flat = int(np.argmin(vals))  # first occurrence: lowest (x, y) index
    i, j = np.unravel_index(flat, vals.shape)
    best, arg = float(vals[i, j]), (float(xs[i]), float(ys[j]))
    grid_best, grid_arg = best, arg
    notes = []
    if refine:
        free_y = len(ys) > 1
        for idx in np.argsort(vals, axis=None, kind="stable")[:n_refine]:
            i, j = np.unravel_index(int(idx), vals.shape)
            if free_y:
                fun = lambda p: float(family_residual(10 ** p[0], p[1], equations))
                p0 = [np.log10(xs[i]), ys[j]]
            else:
                fun = lambda p: float(family_residual(10 ** p[0], ys[0], equations))
                p0 = [np.log10(xs[i])]
            res = minimize(fun, p0, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 4000})
            if res.fun < best:
                best = float(res.fun)
                arg = (float(10 ** res.x[0]), float(res.x[1]) if free_y else float(ys[0]))
        notes.append(f"refined from the {n_refine} lowest grid points with Nelder-Mead in (log10 x, y)")
    return ScanResult(tuple(equations), xs, ys, vals, grid_best, grid_arg, best, arg, NOGO_FLOOR, notes)


@dataclass(frozen=True)
class SearchResult:
    method: str
    starts: int
    best_residual: float
    best_coeffs: np.ndarray  # (a0, a2, a4, a6, a8)
    oracle_verified: bool  # best point passes the dense KL check for the target set

    @property
    def counterexample(self) -> bool:
        return self.best_residual <= NOGO_FLOOR and self.oracle_verified


def _params_to_even(p: np.ndarray) -> np.ndarray:
    # Gauge a8 = 1; p = (Re a0..a6, Im a0..a6).
    return np.concatenate([p[:4] + 1j * p[4:], [1.0]])


def engine_search(equations: Sequence[str] = NINE_BIT_NAMES, starts: int = 20, seed: int = 0) -> SearchResult:
    """Multistart least squares for the nine-bit double-Z system over all complex vectors.

    Works without the a8 gauge so degenerate cases (a8 = 0) are included:
    unknowns are all ten real parts, constrained to unit norm.
    """
    sub = nine_bit_double_system().subset(list(equations))

    def resid(p):
        full = as_full(9, p[:5] + 1j * p[5:])
        nsq = norm_sq(9, full)
        v = sub.evaluate(full) / nsq
        return np.concatenate([v.real, v.imag, [nsq - 1]])

    rng = np.random.default_rng(seed)
    best, best_a = np.inf, None
    for _ in range(starts):
        p0 = rng.normal(size=10) * rng.choice([0.1, 1.0, 10.0], size=10)
        out = least_squares(resid, p0, xtol=1e-15, ftol=1e-15, gtol=1e-15)
        m = float(np.max(np.abs(out.fun[:-1])))
        if m < best:
            best, best_a = m, out.x[:5] + 1j * out.x[5:]
    return SearchResult("engine", starts, best, best_a, False)


def oracle_search(set_name: str = "xz-single-z-doubles", starts: int = 4, seed: int = 0) -> SearchResult:
    """Multistart least squares on the dense Gram conditions for a 9-qubit error set.

    Unknowns are (a0, a2, a4, a6) complex with a8 = 1; residuals are all
    entries of B and the upper triangle of D00 - D11 for normalized words.
    """
    ops = error_set(set_name, 9)
    iu = np.triu_indices(len(ops))

    def resid(p):
        code = DickeCode.from_even(9, _params_to_even(p))
        V = errored_words(code, ops)
        V0, V1 = V[:, 0, :], V[:, 1, :]
        B = V0.conj() @ V1.T
        dD = (V0.conj() @ V0.T - V1.conj() @ V1.T)[iu]
        r = np.concatenate([B.ravel(), dD])
        return np.concatenate([r.real, r.imag])

    rng = np.random.default_rng(seed)
    best, best_a = np.inf, None
    for _ in range(starts):
        try:
            out = least_squares(resid, rng.normal(size=8), xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=3000)
        except ValueError:  # a start landing on non-orthogonal words
            continue
        m = float(np.max(np.abs(out.fun)))
        if m < best:
            best, best_a = m, _params_to_even(out.x)
    verified = False
    if best_a is not None:
        verified = kl_matrices(DickeCode.from_even(9, best_a), ops).correctable
    return SearchResult(f"oracle:{set_name}", starts, best, best_a, verified)
