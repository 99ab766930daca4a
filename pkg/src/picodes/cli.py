"""Command-line interface: verify, catalog, search9, nogo, decompose."""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path

import mpmath
import numpy as np

from . import ENGINE_TOL, KL_TOL, __version__
from .conditions import (
    appendixC_system,
    as_full,
    nine_bit_double_system,
    norm_sq,
    phase_double_system,
    theorem1_residuals,
)
from .dicke import DickeCode, code_to_dict, read_code_file
from .full_space import MAX_QUBITS, hadamard_code_map
from .kl import ERROR_SETS, error_set, kl_matrices
from .rep_theory import counting_report, decomposition_table, spectral_verify
from .report import RunReport, fmt
from .workshop import catalog, get_entry
from .workshop.catalog import validate_entry
from .workshop.families import DOUBLE_GROUPS, family_coeffs, solve_nine_family
from .workshop.nogo import (
    NOGO_FLOOR,
    engine_search,
    nogo_bracket_positivity,
    nogo_residual_scan,
    oracle_search,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUG = 0, 1, 2, 3
MAX_VIOLATIONS_SHOWN = 10


def _grid(text: str) -> tuple[int, int]:
    try:
        nx, ny = (int(v) for v in text.lower().split("x"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid must look like 200x200, got {text!r}") from exc
    if nx < 1 or ny < 1:
        raise argparse.ArgumentTypeError("grid sizes must be positive")
    return nx, ny


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"range must look like lo:hi, got {text!r}") from exc
    if hi < lo:
        raise argparse.ArgumentTypeError("range upper bound below lower bound")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=ENGINE_TOL, help="scale-free residual threshold")
    common.add_argument("--kl-tol", type=float, default=KL_TOL, help="Gram-matrix violation threshold")
    common.add_argument("--precision", type=int, default=50, help="decimal digits for root polishing")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--grid", type=_grid, default=None, help="scan resolution NXxNY")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="picodes", description=__doc__)
    p.add_argument("--version", action="version", version=f"picodes {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", parents=[common], help="check a code file against an error set")
    v.add_argument("codefile")
    v.add_argument("errorset", help=f"one of {', '.join(ERROR_SETS)} or Pauli words like I,X1,Z1Z2")

    c = sub.add_parser("catalog", parents=[common], help="list, export or validate catalog codes")
    c.add_argument("action", choices=("list", "export", "validate"))
    c.add_argument("id", nargs="?")
    c.add_argument("-o", "--output", help="export destination (default: stdout)")

    s = sub.add_parser("search9", parents=[common], help="sample the 9-qubit families")
    s.add_argument("--t-range", type=_range, default=None, help="real family a4 range lo:hi")
    s.add_argument("--step", type=float, default=0.05)
    s.add_argument("--x-range", type=_range, default=None, help="complex family x range lo:hi (x > 0)")
    s.add_argument("--y-range", type=_range, default=None, help="complex family y range; write --y-range=-2:2")
    s.add_argument("--oracle", action="store_true", help="also run the dense one-bit check per solution")

    g = sub.add_parser("nogo", parents=[common], help="9-qubit double-error no-go evidence")
    g.add_argument("mode", choices=("full", "drop-ImXY", "drop-Y"))
    g.add_argument("--samples", type=int, default=10_000, help="bracket samples")
    g.add_argument("--starts", type=int, default=None, help="multistart count for searches")

    d = sub.add_parser("decompose", parents=[common], help="weight-space irrep tables")
    d.add_argument("n", type=int)
    d.add_argument("--verify", action="store_true", help="diagonalize S^2 per weight block (n <= 9)")
    return p


def _config(args) -> dict:
    return {"tol": args.tol, "kl_tol": args.kl_tol, "precision": args.precision, "seed": args.seed}


# ---- verify ---------------------------------------------------------------


def _engine_for(code, name: str):
    """(system, code) to evaluate with the compressed engine, or None if not applicable."""
    if not (code.satisfies_I and code.satisfies_II):
        return None
    if name in ("onebit", "onebit+exchange"):
        return appendixC_system(code.n), code
    if name == "phase-single-double":
        return phase_double_system(code.n), code
    if name == "z-doubles" and code.n == 9:
        return nine_bit_double_system(), code
    if name == "x-doubles" and code.n == 9:
        image = hadamard_code_map(code)
        if image.satisfies_I and image.satisfies_II:
            return nine_bit_double_system(), image
    return None


def cmd_verify(args, report: RunReport) -> None:
    path = Path(args.codefile)
    report.inputs["codefile"] = path.read_text()
    code = read_code_file(path)
    if code.n > MAX_QUBITS:
        raise ValueError(f"n={code.n} exceeds the dense oracle range")
    ops = error_set(args.errorset, code.n)
    kl = kl_matrices(code, ops, args.kl_tol)
    report.check(
        f"oracle {args.errorset} ({len(ops)} errors)",
        kl.correctable,
        max_violation=kl.max_violation(),
        violations=len(kl.violations),
    )
    for viol in kl.violations[:MAX_VIOLATIONS_SHOWN]:
        report.notes.append(
            f"violation {viol.matrix}[{kl.error_labels[viol.p]}, {kl.error_labels[viol.q]}] = {fmt(viol.magnitude)}"
        )
    verdict = "PASS" if kl.correctable else "FAIL"
    engine = _engine_for(code, args.errorset)
    if engine is not None:
        system, target = engine
        res = system.residual(target.c0.coeffs)
        report.check(f"engine {system.name}", res.passes(args.tol), max_scale_free=res.max_scale_free)
        report.tables["engine residuals"] = "\n".join(
            f"{nm} {fmt(abs(v) / res.norm_sq)}" for nm, v in zip(res.names, res.values)
        )
        if res.passes(args.tol) != kl.correctable:
            verdict = "INTERNAL ERROR: engine and oracle disagree"
    else:
        report.notes.append("compressed engine not applicable to this code/error set; oracle only")
    report.verdict("verify", verdict)


# ---- catalog --------------------------------------------------------------


def cmd_catalog(args, report: RunReport) -> None:
    entries = catalog(args.precision, validate=args.action == "validate")
    if args.action == "list":
        rows = [f"{e.id:<16} n={e.n}  claims={','.join(e.claimed_correctable)}  {e.provenance}" for e in entries]
        report.tables["catalog"] = "\n".join(rows)
        report.verdict("catalog", "PASS")
    elif args.action == "validate":
        for e in entries:
            for name, mv in validate_entry(e, args.kl_tol).items():
                report.check(f"{e.id} {name}", True, max_violation=mv)
        report.verdict("catalog", "PASS")
    else:
        if not args.id:
            raise ValueError("catalog export needs an id")
        entry = get_entry(args.id, args.precision)
        with mpmath.workdps(args.precision):
            data = code_to_dict(entry.code, entry.annotations + (entry.provenance,), entry.hp_words(), args.precision)
        text = json.dumps(data, indent=2) + "\n"
        if args.output:
            Path(args.output).write_text(text)
            report.notes.append(f"wrote {args.output}")
        else:
            report.tables["code file"] = text
        report.verdict("catalog", "PASS")


# ---- search9 --------------------------------------------------------------


def _t_samples(lo: float, hi: float, step: float) -> list[float]:
    if step <= 0:
        raise ValueError("step must be positive")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def cmd_search9(args, report: RunReport) -> None:
    if args.x_range or args.y_range:
        (x0, x1), (y0, y1) = args.x_range or (0.1, 3.0), args.y_range or (-2.0, 2.0)
        if x0 <= 0:
            raise ValueError("x must be positive")
        nx, ny = args.grid or (50, 50)
        xs, ys = np.linspace(x0, x1, nx), np.linspace(y0, y1, ny)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        a = family_coeffs(X, Y, 1)
        sysm = nine_bit_double_system()
        groups = sysm.subset(DOUBLE_GROUPS)
        g = np.max(np.abs(groups.evaluate(a)), axis=-1)
        full = np.max(np.abs(sysm.evaluate(a)), axis=-1)
        nsq = norm_sq(9, as_full(9, a))
        g, full = g / nsq, full / nsq
        groups_ok = bool(np.all(g <= args.tol))
        none_full = bool(np.all(full > args.tol))
        report.check("double-Z groups hold on every grid point", groups_ok, max_scale_free=float(np.max(g)))
        report.check("no grid point satisfies all nine conditions", none_full, min_scale_free=float(np.min(full)))
        rows = ["x y groups_residual full_residual"]
        rows += [f"{fmt(X[i, j])} {fmt(Y[i, j])} {fmt(g[i, j])} {fmt(full[i, j])}" for i in range(nx) for j in range(ny)]
        report.tables["complex family"] = "\n".join(rows)
        report.verdict("search9", "PASS" if groups_ok and none_full else "FAIL")
        return
    lo, hi = args.t_range or (-0.25, 0.4)
    rows = ["t solutions max_scale_free" + (" oracle" if args.oracle else "")]
    empty = []
    for t in _t_samples(lo, hi, args.step):
        if t == 0:
            rows.append(f"{fmt(t)} skipped (family needs a4 != 0)")
            continue
        sols = solve_nine_family(t)
        worst = max((theorem1_residuals(9, a).max_scale_free for a in sols), default=float("nan"))
        row = f"{fmt(t)} {len(sols)} {fmt(worst)}"
        if args.oracle:
            ok = all(kl_matrices(DickeCode.from_even(9, a), error_set("onebit", 9), args.kl_tol).correctable for a in sols)
            row += " PASS" if ok else " FAIL"
            if not ok:
                empty.append(t)
        rows.append(row)
        if not sols:
            empty.append(t)
    report.tables["real family"] = "\n".join(rows)
    report.check("every sampled t yields a solution", not empty, empty=[fmt(t) for t in empty])
    if empty:
        report.notes.append("no positive root of the quadratic at: " + ", ".join(fmt(t) for t in empty))
    report.verdict("search9", "PASS" if not empty else "FAIL")


# ---- nogo -----------------------------------------------------------------

DROP_IMXY = ("dbp.a", "dbp.b", "dbp.c", "eqa6alt.a", "eqa6alt.b", "dbm.alt.c", "dZZa", "dbIZZ")


def cmd_nogo(args, report: RunReport) -> None:
    nx, ny = args.grid or (200, 200)
    report.config["floor"] = NOGO_FLOOR
    if args.mode in ("full", "drop-ImXY"):
        eqs = ("dZZa", "dbIZZ", "ImXY") if args.mode == "full" else ("dZZa", "dbIZZ")
        ok = True
        if args.mode == "full":
            br = nogo_bracket_positivity(args.samples, args.seed)
            ok &= report.check(
                "bracket >= 15 over sampled family points (exact structure)",
                br.min_value >= 15 - 1e-9,
                min_value=br.min_value,
                samples=br.samples,
                identity_error=br.max_identity_error,
            )
        scan = nogo_residual_scan(nx, ny, eqs)
        ok &= report.check(
            f"numerical evidence: family scan of {','.join(eqs)} stays above floor",
            scan.supported,
            grid=f"{len(scan.xs)}x{len(scan.ys)}",
            grid_min=scan.grid_min,
            min_residual=scan.min_residual,
            argmin_x=scan.argmin[0],
            argmin_y=scan.argmin[1],
        )
        search_eqs = None if args.mode == "full" else DROP_IMXY
        srch = engine_search(search_eqs or nine_bit_double_system().names, args.starts or 20, args.seed)
        ok &= report.check(
            "numerical evidence: engine multistart over all complex vectors stays above floor",
            srch.best_residual > NOGO_FLOOR,
            starts=srch.starts,
            best_max_scale_free=srch.best_residual,
        )
        report.verdict(f"nogo {args.mode}", "SUPPORTED" if ok else "NOT SUPPORTED")
        return
    # drop-Y: the target error set is {I, X_r, Z_r, Z_r Z_s}; search it directly on the oracle.
    srch = oracle_search("xz-single-z-doubles", args.starts or 4, args.seed)
    report.check(
        "oracle multistart for {I, X_r, Z_r, Z_rZ_s} finds no code",
        not srch.counterexample,
        starts=srch.starts,
        best_max_violation=srch.best_residual,
        oracle_verified=srch.oracle_verified,
    )
    if srch.counterexample:
        report.tables["counterexample (a0, a2, a4, a6, a8)"] = "\n".join(
            f"a{2 * i} {fmt(z.real)} {fmt(z.imag)}" for i, z in enumerate(srch.best_coeffs)
        )
        report.notes.append(
            "dropping every Y condition is weaker than dropping ImXY alone: codes correcting {I, X_r, Z_r, Z_rZ_s} exist"
        )
    scan = nogo_residual_scan(nx, ny, ("dZZa", "dbIZZ"))
    report.check("for comparison: ImXY-dropped family scan", scan.supported, min_residual=scan.min_residual)
    report.verdict("nogo drop-Y", "NOT SUPPORTED" if srch.counterexample else "SUPPORTED")


# ---- decompose ------------------------------------------------------------


def cmd_decompose(args, report: RunReport) -> None:
    if not 3 <= args.n <= MAX_QUBITS:
        raise ValueError(f"need 3 <= n <= {MAX_QUBITS}")
    report.tables["decomposition"] = decomposition_table(args.n).text()
    report.tables["counting"] = counting_report(args.n).text()
    verdict = "PASS"
    if args.verify:
        if args.n > 9:
            raise ValueError("spectral verification is limited to n <= 9")
        if not report.check("S^2 spectrum matches irrep dimensions", spectral_verify(args.n)):
            verdict = "FAIL"
    report.verdict("decompose", verdict)


COMMANDS = {
    "verify": cmd_verify,
    "catalog": cmd_catalog,
    "search9": cmd_search9,
    "nogo": cmd_nogo,
    "decompose": cmd_decompose,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    inputs = {k: v for k, v in vars(args).items()}
    report = RunReport(["picodes"] + argv, inputs, _config(args))
    try:
        COMMANDS[args.cmd](args, report)
    except (ValueError, KeyError, OSError) as exc:
        print(f"picodes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(report.render(args.format))
    if any(v.startswith("INTERNAL ERROR") for v in report.verdicts.values()):
        return EXIT_BUG
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
