"""Command-line front end: reproducible experiments, machine-readable reports.

Every run writes one JSON report embedding its full configuration; with a
fixed seed the report is byte-identical across runs except for elapsed
time fields (keys named elapsed_ms), which comparison tooling excludes.

Exit codes: 0 completed, 2 a scan exhausted its budget, 1 error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import __version__
from .cfm import (
    BUDGET_EXHAUSTED,
    NvmBudget,
    build_matrix,
    check_nvm,
    classical_dct,
    classical_dft,
    classical_dst,
    default_reps,
    nvm_scan,
    prime_power,
    scaling_certificate,
    subfield_witness,
)
from .chars import MultChar, SubgroupChar, gauss_sum
from .errors import CfmkitError
from .field import construct_field
from .gring import GroupRingElt, SpectrumElt, fourier, inv_fourier
from .uncert import (
    cd_check,
    construct_extremal,
    establish_nvm,
    h_closed_subsets,
    random_soundness_run,
    spectral_support,
    verify_uncertainty,
)

_MODEL_TERM = re.compile(r"([+-]?)(\d*)(x(\d*))?")


def parse_model(text: str, p: int, n: int) -> tuple[int, ...]:
    """Parse a modulus like 'x2-x+2' into constant-first coefficients."""
    coeffs = [0] * (n + 1)
    pos = 0
    seen = False
    while pos < len(text):
        m = _MODEL_TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse modulus {text!r} at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        if m.group(3) is None:
            power = 0
        else:
            power = int(m.group(4)) if m.group(4) else 1
        if power > n:
            raise ValueError(f"modulus degree exceeds n = {n}")
        coeffs[power] = (coeffs[power] + sign * coef) % p
        seen = True
        pos = m.end()
    if not seen or coeffs[n] != 1:
        raise ValueError("modulus must be monic of degree n")
    return tuple(coeffs)


def _field_from_args(args):
    modulus = parse_model(args.model, args.p, args.n) if getattr(args, "model", None) else None
    return construct_field(args.p, args.n, modulus=modulus)


def _budget_from_args(args) -> NvmBudget:
    return NvmBudget(
        max_minors=getattr(args, "budget_minors", 10**7),
        max_seconds=getattr(args, "budget_seconds", None),
    )


def _report_path(args, command: str) -> str:
    if getattr(args, "json", None):
        return args.json
    directory = os.environ.get("CFMKIT_REPORT_DIR", ".")
    return os.path.join(directory, f"cfmkit-{command.replace(' ', '-')}.json")


def _emit(args, command: str, config: dict, results) -> str:
    report = {"version": __version__, "config": {"command": command, **config}, "results": results}
    path = _report_path(args, command)
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _parse_rep_values(text: str) -> list[int]:
    if not text:
        return []
    return [int(tok) for tok in text.split(",") if tok != ""]


def _orbit_union(ctx, H, values):
    out = set()
    for v in values:
        e = ctx.from_value(v)
        if e.is_zero():
            out.add(e)
        else:
            out.update(h * e for h in H.members)
    return frozenset(out)


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_field_info(args):
    ctx = _field_from_args(args)
    results = ctx.descriptor()
    results["unit_group_order"] = ctx.q - 1
    results["subgroup_indices"] = [m for m in range(1, ctx.q) if (ctx.q - 1) % m == 0]
    path = _emit(args, "field-info", {"p": args.p, "n": args.n, "model": args.model}, results)
    print(f"GF({ctx.p}^{ctx.n}) modulus={list(ctx.modulus)} generator={list(ctx.g.coeffs)}")
    print(f"report: {path}")
    return 0


def _cmd_gauss_table(args):
    ctx = _field_from_args(args)
    rows = []
    for j in range(ctx.q - 1):
        G = gauss_sum(MultChar(ctx, j))
        approx = G.to_complex()
        rows.append({"j": j, "value": G.to_json(), "approx": [approx.real, approx.imag]})
    config = {"p": args.p, "n": args.n, "model": args.model, "seed": args.seed}
    path = _emit(args, "gauss-table", config, rows)
    print(f"{len(rows)} Gauss sums over GF({ctx.q}); report: {path}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("j,re,im\n")
            for row in rows:
                fh.write(f"{row['j']},{row['approx'][0]:.12g},{row['approx'][1]:.12g}\n")
        print(f"csv: {args.csv}")
    return 0


def _chi_from_args(args, ctx):
    H = ctx.subgroup_of_index(args.index)
    return SubgroupChar(H, args.chi_exponent)


def _cmd_cfm_build(args):
    import random

    ctx = _field_from_args(args)
    chi = _chi_from_args(args, ctx)
    rng = random.Random(args.seed) if args.reps == "random" else None
    R = default_reps(chi, args.reps, rng)
    cm = build_matrix(chi, R)
    results = {
        "matrix": cm.matrix.to_json(),
        "R": [r.value for r in cm.R],
        "S": [s.value for s in cm.S],
    }
    config = _common_config(args)
    path = _emit(args, "cfm build", config, results)
    print(f"built {cm.matrix.nrows}x{cm.matrix.ncols} compressed matrix; report: {path}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(cm.matrix.to_complex_csv(args.csv_precision))
        print(f"csv: {args.csv}")
    return 0


def _common_config(args):
    return {
        "p": args.p,
        "n": args.n,
        "model": getattr(args, "model", None),
        "index": getattr(args, "index", None),
        "chi_exponent": getattr(args, "chi_exponent", None),
        "reps": getattr(args, "reps", "lex"),
        "seed": getattr(args, "seed", 0),
    }


def _cmd_cfm_nvm(args):
    import random

    ctx = _field_from_args(args)
    chi = _chi_from_args(args, ctx)
    rng = random.Random(args.seed) if args.reps == "random" else None
    R = default_reps(chi, args.reps, rng)
    cm = build_matrix(chi, R)
    report = check_nvm(cm.matrix, _budget_from_args(args), args.threads)
    row = {
        "q": ctx.q, "p": ctx.p, "n": ctx.n, "m": args.index,
        "chi": args.chi_exponent, "seed": args.seed,
        **report.to_json(),
    }
    witness = subfield_witness(chi, list(cm.R), list(cm.S))
    row["subfield_witness"] = (
        None if witness is None else {"rows": list(witness[0]), "cols": list(witness[1])}
    )
    path = _emit(args, "cfm nvm", _common_config(args), row)
    print(f"q={ctx.q} index={args.index} chi={args.chi_exponent}: {report.verdict} "
          f"({report.minors_checked} minors); report: {path}")
    return 2 if report.verdict == BUDGET_EXHAUSTED else 0


def _cmd_cfm_scan(args):
    fields = []
    for q in range(2, args.qmax + 1):
        pn = prime_power(q)
        if pn:
            fields.append(construct_field(*pn))
    rows = list(
        nvm_scan(
            fields,
            m_filter=args.index,
            chi_filter=args.chi,
            budget=_budget_from_args(args),
            threads=args.threads,
            reps=args.reps,
            seed=args.seed,
        )
    )
    config = {"qmax": args.qmax, "index": args.index, "chi": args.chi,
              "reps": args.reps, "seed": args.seed}
    path = _emit(args, "cfm scan", config, rows)
    for row in rows:
        print(f"q={row['q']:>3} m={row['m']:>2} chi={row['chi']:>2}: {row['verdict']}")
    print(f"report: {path}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("q,p,n,m,chi,verdict,minors_checked\n")
            for row in rows:
                fh.write(f"{row['q']},{row['p']},{row['n']},{row['m']},{row['chi']},"
                         f"{row['verdict']},{row['minors_checked']}\n")
        print(f"csv: {args.csv}")
    return 2 if any(r["verdict"] == BUDGET_EXHAUSTED for r in rows) else 0


def _cmd_uncert_verify(args):
    ctx = _field_from_args(args)
    chi = _chi_from_args(args, ctx)
    nvm = None if ctx.n == 1 else establish_nvm(chi, _budget_from_args(args), args.threads)
    elements = []

    def collect(f, result):
        elements.append({"element": f.to_json(), **result.to_json()})

    checked, violations = random_soundness_run(
        chi, args.trials, seed=args.seed, nvm=nvm, collect=collect
    )
    results = {
        "checked": checked,
        "violations": [i for i, _ in violations],
        "nvm": None if nvm is None else nvm.to_json(),
        "elements": elements,
    }
    config = {**_common_config(args), "trials": args.trials}
    path = _emit(args, "uncert verify", config, results)
    print(f"verified {checked} random chi-symmetric elements: "
          f"{len(violations)} violations; report: {path}")
    return 0 if not violations else 1


def _cmd_uncert_extremal(args):
    ctx = _field_from_args(args)
    chi = _chi_from_args(args, ctx)
    H = chi.H
    A = _orbit_union(ctx, H, _parse_rep_values(args.A))
    B = _orbit_union(ctx, H, _parse_rep_values(args.B))
    nvm = None if ctx.n == 1 else establish_nvm(chi, _budget_from_args(args), args.threads)
    f = construct_extremal(chi, A, B, nvm)
    results = {
        "element": f.to_json(),
        "support": sorted(e.value for e in f.support()),
        "spectral_support": sorted(e.value for e in spectral_support(f)),
        "A": sorted(e.value for e in A),
        "B": sorted(e.value for e in B),
    }
    config = {**_common_config(args), "A": args.A, "B": args.B}
    path = _emit(args, "uncert extremal", config, results)
    print(f"constructed extremal element with |supp f| = {len(A)}, "
          f"|supp f^| = {len(B)}; report: {path}")
    return 0


def _cmd_uncert_cd(args):
    ctx = construct_field(args.p, 1)
    H = ctx.subgroup_of_index(args.index)
    results = {}
    status = 0
    if args.exhaustive:
        rows = []
        failures = 0
        for A in h_closed_subsets(H, False):
            for B in h_closed_subsets(H, False):
                rep = cd_check(H, A, B)
                ok = rep.classical_holds and (rep.improved_holds is not False) and (
                    rep.size_cap_holds is not False
                )
                failures += 0 if ok else 1
                rows.append({
                    "A": sorted(e.value for e in A),
                    "B": sorted(e.value for e in B),
                    **rep.to_json(),
                })
        results = {"pairs": len(rows), "failures": failures, "rows": rows}
        status = 0 if failures == 0 else 1
        print(f"exhaustive CD over p={args.p}, index {args.index}: "
              f"{len(rows)} pairs, {failures} failures")
    else:
        A = _orbit_union(ctx, H, _parse_rep_values(args.A))
        B = _orbit_union(ctx, H, _parse_rep_values(args.B))
        rep = cd_check(H, A, B)
        results = rep.to_json()
        print(f"|A+B| = {rep.size_sum}, classical bound {rep.classical_bound}, "
              f"improved {'n/a' if rep.improved_bound is None else rep.improved_bound}")
    config = {"p": args.p, "index": args.index, "exhaustive": args.exhaustive,
              "A": args.A, "B": args.B, "seed": args.seed}
    path = _emit(args, "uncert cd", config, results)
    print(f"report: {path}")
    return status


def _cmd_classical(args):
    builders = {"dft": classical_dft, "dct": classical_dct, "dst": classical_dst}
    matrix = builders[args.kind](args.order)
    cert = scaling_certificate(args.kind, args.order)
    results = {
        "kind": args.kind,
        "order": args.order,
        "dim": matrix.nrows,
        "scaling": {"rows": list(cert.row_factors), "cols": list(cert.col_factors)},
    }
    status = 0
    if args.action == "nvm":
        report = check_nvm(matrix, _budget_from_args(args), args.threads)
        results["nvm"] = report.to_json()
        print(f"{args.kind.upper()} order {args.order}: {report.verdict}"
              + (f" witness labels {report.witness_labels}" if report.witness else ""))
        status = 2 if report.verdict == BUDGET_EXHAUSTED else 0
    else:
        print(f"{args.kind.upper()} order {args.order}: {matrix.nrows}x{matrix.ncols} unscaled model")
    config = {"kind": args.kind, "order": args.order, "action": args.action, "seed": args.seed}
    path = _emit(args, f"classical {args.kind}", config, results)
    print(f"report: {path}")
    return status


def _cmd_transform(args):
    with open(args.input) as fh:
        data = json.load(fh)
    desc = data["field"]
    ctx = construct_field(desc["p"], desc["n"], modulus=desc["modulus"])
    if args.inverse:
        F = SpectrumElt.from_json(data, ctx)
        out = inv_fourier(F)
        roundtrip = fourier(out) == F
    else:
        f = GroupRingElt.from_json(data, ctx)
        out = fourier(f)
        roundtrip = inv_fourier(out) == f
    results = {"output": out.to_json(), "roundtrip_ok": roundtrip}
    config = {"input": args.input, "inverse": args.inverse, "seed": args.seed}
    path = _emit(args, "transform", config, results)
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(out.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"output: {args.output}")
    print(f"round trip exact: {roundtrip}; report: {path}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(sub, field=True, chi=False, budget=False):
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--json", help="report path (default: CFMKIT_REPORT_DIR or cwd)")
    sub.add_argument("--threads", type=int, default=1)
    if field:
        sub.add_argument("--p", type=int, required=True)
        sub.add_argument("--n", type=int, default=1)
        sub.add_argument("--model", help="pin the modulus, e.g. x2-x+2")
    if chi:
        sub.add_argument("--index", type=int, required=True, help="subgroup index m")
        sub.add_argument("--chi-exponent", "--chi", dest="chi_exponent", type=int, default=0)
        sub.add_argument("--reps", choices=["lex", "random"], default="lex")
    if budget:
        sub.add_argument("--budget-minors", type=int, default=10**7)
        sub.add_argument("--budget-seconds", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfmkit",
        description="Exact compressed Fourier matrices over finite fields",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("field-info", help="describe a field model")
    _add_common(sp)
    sp.set_defaults(func=_cmd_field_info)

    sp = subs.add_parser("gauss-table", help="all Gauss sums of a field")
    _add_common(sp)
    sp.add_argument("--csv")
    sp.set_defaults(func=_cmd_gauss_table)

    cfm = subs.add_parser("cfm", help="compressed Fourier matrices")
    cfm_subs = cfm.add_subparsers(dest="subcommand", required=True)
    sp = cfm_subs.add_parser("build")
    _add_common(sp, chi=True)
    sp.add_argument("--csv", help="also dump complex approximations as CSV")
    sp.add_argument("--csv-precision", type=int, default=53)
    sp.set_defaults(func=_cmd_cfm_build)
    sp = cfm_subs.add_parser("nvm")
    _add_common(sp, chi=True, budget=True)
    sp.set_defaults(func=_cmd_cfm_nvm)
    sp = cfm_subs.add_parser("scan")
    _add_common(sp, field=False, budget=True)
    sp.add_argument("--qmax", type=int, required=True)
    sp.add_argument("--index", type=int, default=None)
    sp.add_argument("--chi", type=int, default=None)
    sp.add_argument("--reps", choices=["lex", "random"], default="lex")
    sp.add_argument("--csv")
    sp.set_defaults(func=_cmd_cfm_scan)

    unc = subs.add_parser("uncert", help="uncertainty bounds")
    unc_subs = unc.add_subparsers(dest="subcommand", required=True)
    sp = unc_subs.add_parser("verify")
    _add_common(sp, chi=True, budget=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.set_defaults(func=_cmd_uncert_verify)
    sp = unc_subs.add_parser("extremal")
    _add_common(sp, chi=True, budget=True)
    sp.add_argument("--A", required=True, help="comma-separated orbit representatives")
    sp.add_argument("--B", required=True, help="comma-separated orbit representatives")
    sp.set_defaults(func=_cmd_uncert_extremal)
    sp = unc_subs.add_parser("cd")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--index", type=int, required=True)
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--A", default="")
    sp.add_argument("--B", default="")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json")
    sp.set_defaults(func=_cmd_uncert_cd)

    cls = subs.add_parser("classical", help="unscaled DFT/DCT/DST models")
    cls_subs = cls.add_subparsers(dest="kind", required=True)
    for kind in ("dft", "dct", "dst"):
        sp = cls_subs.add_parser(kind)
        sp.add_argument("action", nargs="?", choices=["info", "nvm"], default="info")
        sp.add_argument("--order", type=int, required=True)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--budget-minors", type=int, default=10**7)
        sp.add_argument("--budget-seconds", type=float, default=None)
        sp.set_defaults(func=_cmd_classical, kind=kind)

    sp = subs.add_parser("transform", help="Fourier transform of a serialized element")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output")
    sp.add_argument("--inverse", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json")
    sp.set_defaults(func=_cmd_transform)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CfmkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
