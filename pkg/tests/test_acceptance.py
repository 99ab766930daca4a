"""Acceptance criteria, one test per sub-check.

Each test prints a single "ACCEPTANCE <id> PASS|FAIL" line; the lines are
repeated in the pytest terminal summary.
"""

from __future__ import annotations

import time
from fractions import Fraction
from itertools import combinations

import numpy as np
from conftest import ACCEPTANCE_LINES

from picodes.combinatorics import binomial
from picodes.conditions import appendixC_residuals, theorem1_system
from picodes.dicke import (
    DickeCode,
    DickeVector,
    VExpansion,
    difference_action,
    v_inner_product,
    z1_weighted_inner,
)
from picodes.full_space import (
    apply,
    average,
    difference,
    embed,
    embed_v,
    global_phase_fidelity,
    hadamard_code_map,
    pauli,
)
from picodes.kl import (
    block_structure_check,
    error_set,
    kl_matrices,
    symmetrized_error_set,
)
from picodes.rep_theory import (
    decomposition_table,
    double_error_split,
    n4_combinations,
    pair_error_pieces,
    spectral_verify,
)
from picodes.workshop import (
    catalog,
    engine_search,
    five_bit_nonexistence,
    get_entry,
    nogo_bracket_positivity,
    nogo_residual_scan,
    oracle_search,
    phase5_uniqueness_search,
    printed_cubic,
    solve_nine_family,
)
from picodes.workshop.nogo import NOGO_FLOOR

# Minimum of the (dZZa, dbIZZ) family scan, frozen after the first full run.
SCAN_REGRESSION = 6.007677e-3
NOGO_TIMES: dict[str, float] = {}


def record(cid: str, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {cid} {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


# ---- 1: n = 7 codes -------------------------------------------------------


def test_c1a_code7_onebit():
    t0 = time.perf_counter()
    worst = 0.0
    ok = True
    for eid in ("code7_plus", "code7_minus"):
        rep = kl_matrices(get_entry(eid).code, symmetrized_error_set(7))
        ok &= rep.correctable and len(rep.error_labels) == 22
        worst = max(worst, rep.max_violation())
    dt = time.perf_counter() - t0
    record("1a", ok and worst <= 1e-10 and dt < 2, f"22 errors, max violation {worst:.2e}, {dt:.2f}s")


def test_c1b_code7_with_exchanges():
    t0 = time.perf_counter()
    worst = 0.0
    ok = True
    for eid in ("code7_plus", "code7_minus"):
        ops = error_set("onebit+exchange", 7)
        rep = kl_matrices(get_entry(eid).code, ops)
        ok &= rep.correctable and len(ops) == 22 + 21
        worst = max(worst, rep.max_violation())
    dt = time.perf_counter() - t0
    record("1b", ok and worst <= 1e-10 and dt < 2, f"43 errors, max violation {worst:.2e}, {dt:.2f}s")


def test_c1c_code7_orthogonal_set():
    worst = 0.0
    for eid in ("code7_plus", "code7_minus"):
        c = get_entry(eid).code.normalized()
        c0, c1 = embed(c.c0), embed(c.c1)
        vs = [c0, apply(average("Z", 7), c0), apply(average("X", 7), c1), apply(average("Y", 7), c1)]
        for u, v in combinations(vs, 2):
            worst = max(worst, abs(u.inner(v)))
    record("1c", worst <= 1e-10, f"max overlap among c0, Zc0, Xc1, Yc1: {worst:.2e}")


# ---- 2: exact specializations ---------------------------------------------

PRINTED = {
    5: [{(2, 4): 1}, {(0, 4): 1, (2, 2): 3}, {(0, 0): 1, (2, 2): 2, (4, 4): -3}],
    7: [{(2, 6): 3, (4, 4): 5}, {(0, 6): 1, (2, 4): 15}, {(0, 0): 1, (2, 2): 9, (4, 4): -5, (6, 6): -5}],
    9: [
        {(2, 8): 1, (4, 6): 7},
        {(0, 8): 1, (2, 6): 28, (4, 4): 35},
        {(0, 0): 1, (2, 2): 20, (4, 4): 14, (6, 6): -28, (8, 8): -7},
    ],
}


def test_c2_theorem1_specializations():
    bad = []
    for n, rows in PRINTED.items():
        for (name, form), want in zip(theorem1_system(n).equations, rows):
            got = form.real_specialization()
            ratios = {got.get(key, Fraction(0)) / Fraction(v) for key, v in want.items()}
            if set(got) != set(want) or len(ratios) != 1 or 0 in ratios:
                bad.append((n, name))
    record("2", not bad, f"9 equations at n=5,7,9 compared exactly; mismatches {bad}")


# ---- 3: n = 5 impossibility -----------------------------------------------


def test_c3_five_bit_impossible():
    tr = five_bit_nonexistence(samples=100_000, seed=0)
    record(
        "3",
        tr.holds and tr.sampling["near_solutions"] == 0,
        f"case split: {tr.verdict}; {tr.sampling['samples']} samples, {tr.sampling['near_solutions']} near-solutions",
    )


# ---- 4: phase-code uniqueness ---------------------------------------------


def test_c4_phase5_unique():
    out = phase5_uniqueness_search(starts=200, seed=0)
    ok = out["solutions"] > 0 and out["max_distance_from_equal"] <= 1e-8
    record("4", ok, f"{out['solutions']} solutions, max distance from equal ray {out['max_distance_from_equal']:.2e}")


# ---- 5: repetition-code degeneracy ----------------------------------------


def test_c5a_rep5_and_phase5():
    rep5 = kl_matrices(get_entry("rep5").code, error_set("x-single-all-doubles", 5))
    phase5 = kl_matrices(get_entry("phase5").code, error_set("z-single-all-doubles", 5))
    record(
        "5a",
        rep5.correctable and phase5.correctable,
        f"rep5 {{I,X_r,XX,YY,ZZ}} {rep5.max_violation():.1e}; phase5 {{I,Z_r,ZZ,XX,YY}} {phase5.max_violation():.1e}",
    )


def test_c5b_hadamard_map():
    rep5 = get_entry("rep5").code
    phase5 = get_entry("phase5").code.normalized()
    fwd = hadamard_code_map(rep5)
    back = hadamard_code_map(phase5)
    fids = [
        global_phase_fidelity(fwd.c0, phase5.c0),
        global_phase_fidelity(fwd.c1, phase5.c1),
        global_phase_fidelity(back.c0, rep5.normalized().c0),
        global_phase_fidelity(back.c1, rep5.normalized().c1),
    ]
    record("5b", min(fids) >= 1 - 1e-12, f"min word fidelity {min(fids):.15f}")


# ---- 6: n = 9 family ------------------------------------------------------


def test_c6a_ruskai9_onebit():
    reps = [kl_matrices(get_entry(eid).code, error_set("onebit", 9)) for eid in ("ruskai9_plus", "ruskai9_minus")]
    record("6a", all(r.correctable for r in reps), f"max violation {max(r.max_violation() for r in reps):.2e}")


def test_c6b_a6zero_root():
    x = get_entry("nine_a6zero").code.c0.coeffs[4].real ** 2
    val = 175 * x**2 + 2 * x - 1
    record("6b", abs(val) <= 1e-14, f"x = {x:.15f}, 175x^2+2x-1 = {val:.2e}")


def test_c6c_a0zero_root_on_printed_cubic():
    entry = get_entry("nine_a0zero")
    t = entry.code.c0.coeffs[6].real ** 2
    val = printed_cubic(t)
    flagged = "0.478" in entry.provenance
    record(
        "6c",
        abs(val) <= 1e-14 and flagged,
        f"catalog root t = {t:.9f} (valid code); printed cubic there = {val:.3e}; provenance flags 0.478: {flagged}",
    )


def test_c6d_sampled_family():
    ts = np.linspace(-0.25, 0.4, 22)[1:-1]
    failed = []
    for t in ts:
        try:
            sols = solve_nine_family(float(t))
        except RuntimeError:
            sols = []
        good = [a for a in sols if kl_matrices(DickeCode.from_even(9, a), error_set("onebit", 9), tol=1e-9).correctable]
        if not good:
            failed.append(round(float(t), 4))
    record("6d", not failed, f"20 evenly spaced t in (-0.25, 0.4); t without a passing solution: {failed}")


# ---- 7: nine-bit no-go ----------------------------------------------------


def test_c7i_bracket():
    t0 = time.perf_counter()
    res = nogo_bracket_positivity(samples=10_000, seed=0)
    NOGO_TIMES["i"] = time.perf_counter() - t0
    record("7i", res.min_value >= 15 - 1e-9, f"bracket min {res.min_value:.6f} over {res.samples} samples")


def test_c7ii_scan():
    t0 = time.perf_counter()
    scan = nogo_residual_scan(200, 200)
    NOGO_TIMES["ii"] = time.perf_counter() - t0
    ok = scan.min_residual > NOGO_FLOOR and abs(scan.min_residual - SCAN_REGRESSION) <= 1e-5 * SCAN_REGRESSION
    record(
        "7ii",
        ok,
        f"grid {len(scan.xs)}x{len(scan.ys)} + refinement, min {scan.min_residual:.7g} at {scan.argmin}, frozen {SCAN_REGRESSION}",
    )


def test_c7iii_drop_imxy():
    t0 = time.perf_counter()
    names = ["dbp.a", "dbp.b", "dbp.c", "eqa6alt.a", "eqa6alt.b", "dbm.alt.c", "dZZa", "dbIZZ"]
    res = engine_search(names, starts=20, seed=0)
    NOGO_TIMES["iii-a"] = time.perf_counter() - t0
    record("7iii-a", res.best_residual > NOGO_FLOOR, f"engine multistart without ImXY: best {res.best_residual:.4g}")


def test_c7iii_drop_y():
    t0 = time.perf_counter()
    res = oracle_search("xz-single-z-doubles", starts=4, seed=0)
    NOGO_TIMES["iii-b"] = time.perf_counter() - t0
    record(
        "7iii-b",
        not res.counterexample,
        f"oracle search for {{I, X_r, Z_r, Z_rZ_s}}: best violation {res.best_residual:.2e},"
        f" oracle-verified code {res.oracle_verified}",
    )


def test_c7_runtime():
    missing = {"i", "ii", "iii-a", "iii-b"} - set(NOGO_TIMES)
    if missing:
        # Run standalone: time the parts here.
        t0 = time.perf_counter()
        nogo_bracket_positivity(10_000, 0)
        nogo_residual_scan(200, 200)
        engine_search(["dbp.a", "dbp.b", "dbp.c", "eqa6alt.a", "eqa6alt.b", "dbm.alt.c", "dZZa", "dbIZZ"], 20, 0)
        oracle_search("xz-single-z-doubles", 4, 0)
        total = time.perf_counter() - t0
    else:
        total = sum(NOGO_TIMES.values())
    record("7t", total < 60, f"no-go evidence total {total:.1f}s")


# ---- 8: engine versus oracle ----------------------------------------------


def _solutions(n, rng):
    if n == 9:
        out = [get_entry(e).code.c0.coeffs[::2] for e in ("ruskai9_plus", "ruskai9_minus", "nine_a6zero", "nine_a0zero")]
        for t in rng.uniform(-0.25, 0.34, 20):
            out += solve_nine_family(float(t))
        return out
    return [e.code.c0.coeffs[::2] for e in catalog() if e.n == n and "onebit" in e.claimed_correctable]


def test_c8_engine_oracle_equivalence():
    rng = np.random.default_rng(0)
    mismatches = []
    counts = {}
    for n in (5, 7, 9):
        sols = _solutions(n, rng)
        ops = symmetrized_error_set(n)
        vecs = []
        for i in range(200):
            if sols and i % 2 == 0:
                a = np.array(sols[rng.integers(len(sols))], complex) * np.exp(2j * np.pi * rng.uniform())
                a = a.conj() if rng.uniform() < 0.5 else a
                if i % 6 == 0:
                    a = a + 1e-3 * (rng.normal(size=a.size) + 1j * rng.normal(size=a.size))
            else:
                a = (rng.normal(size=(n + 1) // 2) + 1j * rng.normal(size=(n + 1) // 2)) * 10 ** rng.uniform(-2, 2)
            vecs.append(a)
        passing = 0
        for a in vecs:
            engine = appendixC_residuals(n, a).passes(1e-9)
            oracle = kl_matrices(DickeCode.from_even(n, a), ops, tol=1e-8).correctable
            passing += oracle
            if engine != oracle:
                mismatches.append((n, a))
        counts[n] = passing
    record("8", not mismatches, f"600 vectors, oracle-passing per n {counts}, mismatches {len(mismatches)}")


# ---- 9: inner-product formulas --------------------------------------------


def test_c9a_v_inner_products():
    worst = 0.0
    for n in range(4, 10):
        configs = [((1, 2), (1, 2)), ((1, 2), (2, 1)), ((1, 2), (1, 3)), ((1, 2), (3, 2)), ((1, 2), (2, 3)), ((1, 2), (3, 1)), ((1, 2), (3, 4))]
        for k in range(n - 1):
            e = np.eye(n - 1)[k]
            for p, q in configs:
                got = v_inner_product(VExpansion(n, e, *p), VExpansion(n, e, *q))
                want = embed_v(VExpansion(n, e, *p)).inner(embed_v(VExpansion(n, e, *q)))
                worst = max(worst, abs(got - want))
            z = embed_v(VExpansion(n, e, 1, 2))
            zz = apply(pauli("Z", 1), z).inner(embed_v(VExpansion(n, e, 1, 3)))
            worst = max(worst, abs(float(z1_weighted_inner(k, n)) - zz))
            # The exact integer itself, against the closed form.
            if v_inner_product(VExpansion(n, e, 1, 2), VExpansion(n, e, 1, 2)) != 2 * binomial(n - 2, k):
                worst = max(worst, 1.0)
    record("9a", worst <= 1e-12, f"n=4..9, all k, 7 pair configurations and the Z_1 weighted form: max error {worst:.1e}")


def test_c9b_difference_embeddings():
    rng = np.random.default_rng(9)
    worst = 0.0
    for n in range(4, 10):
        v = DickeVector(n, rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1))
        dense = embed(v)
        for r, s in [(1, 2), (n, 1), (2, n - 1)]:
            for which, op, factor in (("X", "X", 1), ("iY", "Y", 1j), ("Z", "Z", 1)):
                got = embed_v(difference_action(which, v, r, s)).amps
                want = factor * apply(difference(op, r, s), dense).amps
                worst = max(worst, np.max(np.abs(got - want)) / np.max(np.abs(want)))
    record("9b", worst <= 1e-12, f"(X_r-X_s), (Y_r-Y_s), (Z_r-Z_s) on n=4..9: max relative error {worst:.1e}")


# ---- 10: representation tables --------------------------------------------

TABLES = {
    5: [[1], [1, 4], [1, 4, 5], [1, 4, 5], [1, 4], [1]],
    7: [[1], [1, 6], [1, 6, 14], [1, 6, 14, 14], [1, 6, 14, 14], [1, 6, 14], [1, 6], [1]],
    9: [[1], [1, 8], [1, 8, 27], [1, 8, 27, 48], [1, 8, 27, 48, 42], [1, 8, 27, 48, 42], [1, 8, 27, 48], [1, 8, 27], [1, 8], [1]],
}


def test_c10a_tables():
    ok = all(
        [sorted(r) for r in decomposition_table(n).dims()] == [sorted(r) for r in rows] for n, rows in TABLES.items()
    )
    record("10a", ok, "weight rows for n=5,7,9 compared as multisets")


def test_c10b_spectral():
    results = {n: spectral_verify(n) for n in range(3, 10)}
    record("10b", all(results.values()), f"S^2 multiplicities {results}")


def test_c10c_double_split():
    ok = double_error_split(4) == (1, 3, 2)
    worst = 0.0
    for ch in "XYZ":
        pieces = pair_error_pieces(4, ch, 2)
        span = np.array([pieces["trivial"]] + list(pieces["standard"]))
        for c in n4_combinations(ch):
            ok &= np.linalg.norm(c) > 1e-6
            worst = max(worst, float(np.max(np.abs(span.conj() @ c))))
    record("10c", ok and worst <= 1e-10, f"split (1,3,2); printed combinations overlap trivial/standard pieces {worst:.1e}")


# ---- 11: block structure --------------------------------------------------


def test_c11a_block_rules():
    rng = np.random.default_rng(11)
    ops = error_set("onebit+exchange+doubles", 7)
    broken = 0
    for _ in range(50):
        a = rng.normal(size=4) + 1j * rng.normal(size=4)
        rep = kl_matrices(DickeCode.from_even(7, a), ops)
        broken += len(block_structure_check(rep, tol=1e-10))
    record("11a", broken == 0, f"50 random codes, {len(ops)} errors each: {broken} pattern violations")


def test_c11b_circulant():
    rng = np.random.default_rng(12)
    worst = 0.0
    for _ in range(50):
        code = DickeCode.from_even(7, rng.normal(size=4) + 1j * rng.normal(size=4))
        for ch in "XYZ":
            rep = kl_matrices(code, [pauli(ch, r) for r in range(1, 8)])
            for M in (rep.D00, rep.D11, rep.B):
                diag, off = np.diag(M), M[~np.eye(7, dtype=bool)]
                worst = max(worst, float(np.max(np.abs(diag - diag[0]))), float(np.max(np.abs(off - off[0]))))
    record("11b", worst <= 1e-10, f"raw X, Y, Z blocks on 50 random codes: max deviation {worst:.1e}")
