from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from conftest import random_even
from hypothesis import given, settings
from hypothesis import strategies as st

from picodes.conditions import (
    NINE_BIT_NAMES,
    QuadraticForm,
    appendixC_residuals,
    appendixC_system,
    as_full,
    block_phase_form,
    block_redundancy_check,
    block_redundancy_identity,
    dbp_equivalence,
    diagonal_form,
    lower_form,
    nine_bit_double_residuals,
    nine_bit_double_system,
    norm_sq,
    phase_double_residuals,
    phase_double_system,
    raise_form,
    seven_bit_complex_system,
    specialize_theorem1,
    theorem1_residuals,
    theorem1_system,
    xy_form,
)
from picodes.dicke import DickeCode
from picodes.full_space import (
    apply,
    average,
    average_double,
    difference,
    embed,
    identity,
    pauli_word,
)
from picodes.kl import error_set, kl_matrices
from picodes.workshop import get_entry
from picodes.workshop.families import family_coeffs

cj = np.conj

# Printed displays, written as plain functions of (a0, a2, a4, a6[, a8]).
SEVEN_COMPLEX = {
    "sum.re.a": lambda a0, a2, a4, a6: 10 * abs(a4) ** 2 + 3 * (cj(a2) * a6 + a2 * cj(a6)),
    "sum.im": lambda a0, a2, a4, a6: cj(a2) * a6 - a2 * cj(a6),
    "sum.re.b": lambda a0, a2, a4, a6: (cj(a0) * a6 + a0 * cj(a6)) + 15 * (cj(a2) * a4 + a2 * cj(a4)),
    "diff.im": lambda a0, a2, a4, a6: (a0 * cj(a6) - cj(a0) * a6) + 5 * (a2 * cj(a4) - cj(a2) * a4),
    "IZcomp": lambda a0, a2, a4, a6: abs(a0) ** 2 + 9 * abs(a2) ** 2 - 5 * abs(a4) ** 2 - 5 * abs(a6) ** 2,
    "XYcomp": lambda a0, a2, a4, a6: (cj(a0) * a2 - a0 * cj(a2))
    + 10 * (cj(a2) * a4 - a2 * cj(a4))
    + 5 * (cj(a4) * a6 - a4 * cj(a6)),
}

NINE_DOUBLE = {
    "dbp.a": lambda a0, a2, a4, a6, a8: cj(a2) * a8 + 7 * cj(a4) * a6 + 7 * cj(a6) * a4 + cj(a8) * a2,
    "dbp.b": lambda a0, a2, a4, a6, a8: 5 * cj(a2) * a8 + 7 * cj(a4) * a6 - 21 * cj(a6) * a4 - 7 * cj(a8) * a2,
    "dbp.c": lambda a0, a2, a4, a6, a8: 2 * cj(a2) * a8 - 7 * cj(a4) * a6 + 5 * cj(a8) * a2,
    "eqa6alt.a": lambda a0, a2, a4, a6, a8: (cj(a0) * a8).real - 35 / 3 * abs(a4) ** 2,
    "eqa6alt.b": lambda a0, a2, a4, a6, a8: (cj(a2) * a6).real + 5 / 3 * abs(a4) ** 2,
    "dbm.alt.c": lambda a0, a2, a4, a6, a8: (cj(a0) * a8).imag + 14 * (cj(a2) * a6).imag,
    "dZZa": lambda a0, a2, a4, a6, a8: abs(a0) ** 2 + 20 * abs(a2) ** 2 + 14 * abs(a4) ** 2 - 28 * abs(a6) ** 2 - 7 * abs(a8) ** 2,
    "dbIZZ": lambda a0, a2, a4, a6, a8: 9 * abs(a0) ** 2 + 40 * abs(a2) ** 2 - 14 * abs(a4) ** 2 - 35 * abs(a8) ** 2,
    "ImXY": lambda a0, a2, a4, a6, a8: (cj(a0) * a2).imag + 21 * (cj(a2) * a4).imag + 35 * (cj(a4) * a6).imag + 7 * (cj(a6) * a8).imag,
}

# The three lowering-group displays, before their reduction.
NINE_LOWER = [
    lambda a0, a2, a4, a6, a8: cj(a0) * a8 + 28 * cj(a2) * a6 + 70 * abs(a4) ** 2 + 28 * cj(a6) * a2 + cj(a8) * a0,
    lambda a0, a2, a4, a6, a8: 9 * cj(a0) * a8 + 140 * cj(a2) * a6 + 70 * abs(a4) ** 2 - 84 * cj(a6) * a2 - 7 * cj(a8) * a0,
    lambda a0, a2, a4, a6, a8: 9 * cj(a0) * a8 + 56 * cj(a2) * a6 - 70 * abs(a4) ** 2 + 5 * cj(a8) * a0,
]


def assert_proportional(got, want, exact_ratio=None):
    """got = r * want for one real r across all samples."""
    got, want = np.asarray(got, complex), np.asarray(want, complex)
    i = int(np.argmax(np.abs(want)))
    r = got[i] / want[i]
    assert abs(r.imag) < 1e-12 * abs(r)
    assert np.allclose(got, r.real * want, rtol=1e-10, atol=1e-10 * np.max(np.abs(want)))
    if exact_ratio is not None:
        assert abs(r.real - exact_ratio) < 1e-12 * abs(exact_ratio)


# ---- exact specializations ------------------------------------------------


def test_theorem1_specializations():
    assert specialize_theorem1(5) == ["a2*a4", "a0*a4 + 3*a2^2", "a0^2 + 2*a2^2 - 3*a4^2"]
    assert specialize_theorem1(7) == ["3*a2*a6 + 5*a4^2", "a0*a6 + 15*a2*a4", "a0^2 + 9*a2^2 - 5*a4^2 - 5*a6^2"]
    assert specialize_theorem1(9) == [
        "a2*a8 + 7*a4*a6",
        "a0*a8 + 28*a2*a6 + 35*a4^2",
        "a0^2 + 20*a2^2 + 14*a4^2 - 28*a6^2 - 7*a8^2",
    ]


def test_theorem1_specialization_exact_dicts():
    want = {
        5: [{(2, 4): 1}, {(0, 4): 1, (2, 2): 3}, {(0, 0): 1, (2, 2): 2, (4, 4): -3}],
        7: [{(2, 6): 3, (4, 4): 5}, {(0, 6): 1, (2, 4): 15}, {(0, 0): 1, (2, 2): 9, (4, 4): -5, (6, 6): -5}],
    }
    for n, rows in want.items():
        for (_, form), row in zip(theorem1_system(n).equations, rows):
            spec = form.real_specialization()
            ratios = {spec[key] / Fraction(v) for key, v in row.items()}
            assert len(ratios) == 1 and set(spec) == set(row)


def test_theorem1_examples():
    assert theorem1_residuals(7, [np.sqrt(5), -1 / 3, 1 / np.sqrt(5), 1]).max_scale_free < 1e-12
    assert theorem1_residuals(9, [np.sqrt(28), 0, 0, 1, 0]).max_scale_free < 1e-12
    res = theorem1_residuals(5, [1, 1, 1])
    assert res.values[0] != 0 and not res.passes()


def test_seven_bit_complex_matches_display(rng):
    system = seven_bit_complex_system()
    a = random_even(rng, 7, size=50)
    full = as_full(7, a)
    for name, fn in SEVEN_COMPLEX.items():
        got = system.subset([name]).evaluate(full)[:, 0]
        want = fn(*a.T)
        if name in ("sum.im", "diff.im", "XYcomp"):
            want = want / 2j  # these displays are 2i times an imaginary part
        assert_proportional(got, want)


def test_appendixC_reduces_to_theorem1_on_real(rng):
    for n in (5, 7, 9, 11):
        a = rng.normal(size=(n + 1) // 2)
        c = appendixC_residuals(n, a.astype(complex) + 0j)
        t = theorem1_system(n).residual(a)
        assert np.allclose(c.value("sum.re.a"), t.value("sum"))
        assert np.allclose(c.value("sum.re.b"), t.value("diff"))
        assert np.allclose(c.value("IZcomp"), t.value("zbar"))
        for nm in ("sum.im", "diff.im", "XYcomp"):
            assert abs(c.value(nm)) < 1e-12 * c.norm_sq


def test_residual_homogeneity(rng):
    a = random_even(rng, 9)
    lam = 2.5 * np.exp(0.7j)
    r1 = appendixC_residuals(9, a)
    r2 = appendixC_residuals(9, lam * a)
    assert np.allclose(r2.values, abs(lam) ** 2 * r1.values)
    assert np.allclose(r1.scale_free, r2.scale_free)


# ---- raw forms against the oracle -----------------------------------------


@pytest.mark.parametrize("n", [5, 7, 9])
def test_raw_forms_match_oracle(rng, n):
    code = DickeCode.from_even(n, random_even(rng, n))
    c0, c1 = embed(code.c0), embed(code.c1)
    full = code.c0.coeffs
    up = average("X", n) + 1j * average("Y", n)
    down = average("X", n) - 1j * average("Y", n)
    ops = {"I": (identity(), n), "Z": (average("Z", n), n * n), "ZZ": (average_double("Z", n), n * n * (n - 1))}
    for f, (op, scale) in ops.items():
        fc0 = apply(op, c0)
        assert np.isclose(scale * fc0.inner(apply(up, c1)), complex(raise_form(n, f).evaluate(full)))
        assert np.isclose(scale * fc0.inner(apply(down, c1)), complex(lower_form(n, f).evaluate(full)))
    assert np.isclose(n * c0.inner(apply(average("Z", n), c0)), complex(diagonal_form(n, "Z").evaluate(full)))
    zz = n**2 * (n - 1) * apply(average("Z", n), c0).inner(apply(average_double("Z", n), c0))
    assert np.isclose(zz, complex(diagonal_form(n, "ZZ").evaluate(full)))
    xy = apply(average("X", n), c0).inner(apply(1j * average("Y", n), c0)).imag
    assert np.isclose(xy, 2 * (n - 1) / n * complex(xy_form(n).evaluate(full)).real)


@pytest.mark.parametrize("n", [5, 7, 9])
def test_block_phase_form_matches_oracle(rng, n):
    code = DickeCode.from_even(n, random_even(rng, n))
    c0 = embed(code.c0)
    lhs = apply(difference("Z", 1, 3), c0).inner(apply(pauli_word("Z1Z2"), c0))
    assert np.isclose(lhs, -4 * complex(block_phase_form(n).evaluate(code.c0.coeffs)))


# ---- phase and double systems ---------------------------------------------


def test_phase_double_examples():
    assert phase_double_residuals(5, [1, 1, 1]).max_scale_free < 1e-14
    assert phase_double_residuals(7, [1, 1, 1, 1]).max_scale_free < 1e-14
    assert phase_double_residuals(5, [1, 0, 0]).value("IZ") == 5
    assert block_redundancy_check(5, [1, 1, 1]) and block_redundancy_check(7, [1, 1, 1, 1])


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_block_redundancy_identity(n):
    assert block_redundancy_identity(n)


def _phase_solution(rng, n):
    # Nonnegative |a_k|^2 in the null space of the two phase conditions, random phases.
    system = phase_double_system(n)
    m = (n + 1) // 2
    W = np.array([[float(sum(w for kind, i, j, w in f.terms if i == j == 2 * k)) for k in range(m)] for _, f in system.equations])
    _, _, vt = np.linalg.svd(W)
    null = vt[2:]
    for _ in range(1000):
        p = rng.normal(size=len(null)) @ null
        p = p if p.sum() > 0 else -p
        if np.all(p > 0):
            return np.sqrt(p) * np.exp(2j * np.pi * rng.uniform(size=m))
    raise AssertionError("no positive null vector found")


@pytest.mark.parametrize("n", [7, 9])
def test_phase_system_solutions_pass_oracle(rng, n):
    a = _phase_solution(rng, n)
    assert phase_double_residuals(n, a).passes()
    assert block_redundancy_check(n, a)
    assert kl_matrices(DickeCode.from_even(n, a), error_set("phase-single-double", n)).correctable


# ---- nine-bit double system -----------------------------------------------


def test_nine_bit_system_matches_displays(rng):
    system = nine_bit_double_system()
    assert system.names == list(NINE_BIT_NAMES)
    a = random_even(rng, 9, size=50)
    full = as_full(9, a)
    exact = {"eqa6alt.a": 1, "eqa6alt.b": 1, "dZZa": 1, "dbIZZ": 1, "ImXY": 1, "dbm.alt.c": 1}
    for name, fn in NINE_DOUBLE.items():
        got = system.subset([name]).evaluate(full)[:, 0]
        assert_proportional(got, fn(*a.T), exact.get(name))


def test_nine_bit_lowering_displays_are_raw_forms(rng):
    a = random_even(rng, 9, size=30)
    full = as_full(9, a)
    for f, fn in zip(("I", "Z", "ZZ"), NINE_LOWER):
        assert_proportional(lower_form(9, f).even_only().evaluate(full), fn(*a.T))


def test_nine_bit_examples():
    res = nine_bit_double_residuals([np.sqrt(28), 0, 0, 1, 0])
    nonzero = {nm for nm, v in zip(res.names, res.values) if abs(v) > 1e-9}
    assert nonzero == {"dbIZZ"}
    assert np.isclose(res.value("dbIZZ"), 252)
    fam = nine_bit_double_residuals(family_coeffs(1.0, 0.0))
    for nm in ("dbp.a", "dbp.b", "dbp.c", "eqa6alt.a", "eqa6alt.b", "dbm.alt.c"):
        assert abs(fam.value(nm)) < 1e-10 * fam.norm_sq
    zero = nine_bit_double_residuals(np.zeros(5))
    assert np.all(zero.values == 0)


def test_dbp_equivalence():
    nu = dbp_equivalence(family_coeffs(1.0, 0.5))
    a = family_coeffs(1.0, 0.5)
    assert nu is not None and np.isclose(nu, (a[1] / 1j).real)
    assert dbp_equivalence(np.zeros(5)) == 0.0
    assert dbp_equivalence([1, 1, 1, 1, 1]) is None


def test_ruskai9_double_z_fails_oracle_too():
    code = get_entry("ruskai9_plus").code
    assert not kl_matrices(code, error_set("z-doubles", 9)).correctable


# ---- quadratic forms ------------------------------------------------------


def test_quadratic_form_canonical():
    f = QuadraticForm.build([("re", 2, 0, 3), ("re", 0, 2, 1), ("im", 2, 0, 1)])
    g = QuadraticForm.build([("re", 0, 2, 4), ("im", 0, 2, -1)])
    assert (f - g).is_zero()
    assert f.proportional_to(g.scale(2)) == Fraction(1, 2)
    with pytest.raises(ValueError):
        QuadraticForm.build([("bogus", 0, 0, 1)])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=10, max_size=10))
def test_real_and_imag_parts_split(vals):
    a = np.array(vals[:5]) + 1j * np.array(vals[5:])
    full = as_full(9, a)
    f = raise_form(9, "Z")
    total = complex(f.evaluate(full))
    re = complex(f.real_part().evaluate(full))
    im = complex(f.imag_part().evaluate(full))
    scale = 1 + norm_sq(9, full)
    assert abs(re.imag) < 1e-9 * scale and abs(im.imag) < 1e-9 * scale
    assert abs(total - (re.real + 1j * im.real)) < 1e-9 * scale


def test_systems_reject_even_n():
    with pytest.raises(ValueError):
        appendixC_system(6)
