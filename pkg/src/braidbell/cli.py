"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .braid import apply_braid_word, check_braid_relations, check_yang_baxter, parse_braid_word
from .density import density_from_pure, partial_trace, qubit_index, qubit_letter
from .entanglement import concurrence_mixed, ppt_check, reduction_survey
from .errors import BraidBellError, BraidSyntaxError, DimensionError
from .hs_decomp import (
    classify_arms,
    coefficients_table,
    coefficients_to_dict,
    highest_weight_support,
    hs_decompose,
    label_to_str,
    weight,
)
from .states import (
    basis_label,
    bell_state,
    computational_state,
    ghz_state,
    state_from_dict,
    state_to_dict,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMATS = ("table", "json", "csv")
VERIFY_MAX_QUBITS = 6


class UsageError(BraidBellError):
    pass


def fmt(x: float, digits: int = 6) -> str:
    # snap rounding noise so that exact zeros never print as -0 or 1e-17
    if abs(x) < 1e-12:
        x = 0.0
    return f"{x:.{digits}g}"


def fmt_complex(z: complex, digits: int = 6) -> str:
    re, im = z.real, z.imag
    if abs(im) < 1e-12:
        return fmt(re, digits)
    if abs(re) < 1e-12:
        return f"{fmt(im, digits)}i"
    return f"{fmt(re, digits)}{'+' if im >= 0 else '-'}{fmt(abs(im), digits)}i"


def round12(x: float) -> float:
    v = float(f"{x:.12g}")
    return 0.0 if v == 0 else v


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2)


def dump_csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def parse_trace_list(text: str | None) -> list[int]:
    if not text:
        return []
    labels = [t for t in text.replace(" ", "").split(",") if t]
    try:
        return [qubit_index(t) for t in labels]
    except DimensionError as exc:
        raise UsageError(str(exc)) from exc


def load_state(spec: str, n: int | None, index: int | None):
    """Build a state from ``bell``, ``ghz`` or ``file:PATH``; returns (state, description)."""
    if spec == "bell":
        n = 3 if n is None else n
        index = 1 if index is None else index
        return bell_state(n, index), f"bell n={n} index={index}"
    if spec == "ghz":
        n = 3 if n is None else n
        return ghz_state(n), f"ghz n={n}"
    if spec.startswith("file:"):
        path = Path(spec[5:])
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read state file {path}: {exc}") from exc
        if isinstance(data, dict) and "state" in data:
            data = data["state"]
        return state_from_dict(data), f"file {path}"
    raise UsageError(f"unknown state spec {spec!r}; use bell, ghz or file:PATH")


def amplitude_rows(state, tol: float = 1e-12):
    n = state.num_qubits
    return [
        (basis_label(i, n), a)
        for i, a in enumerate(state.amplitudes)
        if abs(a) > tol
    ]


def render_state(state, fmt_name: str, extra: dict | None = None) -> str:
    if fmt_name == "json":
        doc = state_to_dict(state)
        if extra:
            doc = {**extra, "state": doc}
        return dump_json(doc)
    rows = amplitude_rows(state)
    if fmt_name == "csv":
        return dump_csv(
            [["basis", "re", "im"]] + [[b, fmt(a.real), fmt(a.imag)] for b, a in rows]
        )
    return "\n".join(f"|{b}⟩: {fmt_complex(a)}" for b, a in rows)


def matrix_lines(m: np.ndarray) -> list[str]:
    cells = [[fmt_complex(z) for z in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return ["  " + " ".join(c.rjust(width) for c in row) for row in cells]


# commands


def cmd_verify(args) -> tuple[int, str]:
    n = args.n
    if not 2 <= n <= VERIFY_MAX_QUBITS:
        raise UsageError(f"verify supports 2 <= n <= {VERIFY_MAX_QUBITS}, got {n}")
    report = check_braid_relations(n)
    yb = check_yang_baxter(n) if n >= 3 else None
    ok = report.ok and (yb is None or yb[0])

    if args.format == "json":
        doc = {
            "n": n,
            "checks": [
                {
                    "kind": c.kind,
                    "generators": list(c.generators),
                    "relation": c.describe(),
                    "max_deviation": round12(c.deviation),
                    "passed": c.passed,
                }
                for c in report.checks
            ],
            "yang_baxter": None
            if yb is None
            else {"passed": yb[0], "max_deviation": round12(yb[1])},
            "passed": ok,
        }
        return (EXIT_OK if ok else EXIT_FAIL), dump_json(doc)
    if args.format == "csv":
        rows = [["kind", "relation", "max_deviation", "passed"]]
        rows += [[c.kind, c.describe(), f"{c.deviation:.3e}", c.passed] for c in report.checks]
        if yb is not None:
            rows.append(["yang-baxter", "all adjacent pairs", f"{yb[1]:.3e}", yb[0]])
        return (EXIT_OK if ok else EXIT_FAIL), dump_csv(rows)

    lines = [f"B_{n} relations on {n} qubits"]
    width = max(len(c.describe()) for c in report.checks)
    for c in report.checks:
        status = "ok" if c.passed else "FAIL"
        lines.append(f"  {c.kind:<16} {c.describe():<{width}}  {c.deviation:.3e}  {status}")
    counts = {k: len(report.of_kind(k)) for k in ("inverse", "far-commutation", "braid")}
    lines.append(
        f"inverse: {counts['inverse']}  far-commutation: {counts['far-commutation']}"
        f"  adjacent braid: {counts['braid']}"
    )
    if yb is not None:
        lines.append(f"yang-baxter: {'ok' if yb[0] else 'FAIL'} (max deviation {yb[1]:.3e})")
    lines.append("all relations hold" if ok else "RELATION FAILURE")
    return (EXIT_OK if ok else EXIT_FAIL), "\n".join(lines)


def cmd_bell(args) -> tuple[int, str]:
    return EXIT_OK, render_state(bell_state(args.n, args.index), args.format)


def _arm_summary(coeffs, tol) -> list[str]:
    report = classify_arms(coeffs, tol)
    lines = []
    for k in sorted(report.by_weight):
        items = ", ".join(
            f"{e.name or label_to_str(e.label)}={fmt(e.value)} [{e.arms}]" for e in report.entries(k)
        )
        lines.append(f"weight {k}: {items}")
    if not report.by_weight:
        lines.append("no nonzero non-identity coefficients")
    return lines


def cmd_hs(args) -> tuple[int, str]:
    state, desc = load_state(args.state, args.n, args.index)
    rho = density_from_pure(state)
    traced = parse_trace_list(args.trace)
    if traced:
        rho = partial_trace(rho, traced)
        desc += f", traced {','.join(qubit_letter(q) for q in sorted(set(traced)))}"
    coeffs = hs_decompose(rho)
    tol = args.tol

    if args.format == "json":
        return EXIT_OK, dump_json(coefficients_to_dict(coeffs, tol))
    if args.format == "csv":
        rows = [["label", "weight", "value"]]
        rows += [[label_to_str(l), weight(l), fmt(v)] for l, v in coeffs.nonzero(tol)]
        return EXIT_OK, dump_csv(rows)

    hw = highest_weight_support(coeffs, tol)
    lines = [f"Hilbert-Schmidt coefficients: {desc} ({rho.num_qubits} qubits)"]
    lines.append(coefficients_table(coeffs, tol))
    lines.extend(_arm_summary(coeffs, tol))
    lines.append(f"full-weight support: {'yes' if hw else 'no'}")
    return EXIT_OK, "\n".join(lines)


def _analysis(rho, pt_qubit: int) -> dict:
    conc = concurrence_mixed(rho)
    ppt = ppt_check(rho, pt_qubit)
    return {"concurrence": conc, "ppt": ppt}


def cmd_analyze(args) -> tuple[int, str]:
    state, desc = load_state(args.state, args.n, args.index)
    rho = density_from_pure(state)
    traced = sorted(set(parse_trace_list(args.trace)))
    if traced:
        rho = partial_trace(rho, traced)
    if rho.num_qubits != 2:
        raise UsageError(
            f"analysis needs a 2-qubit state; {desc} reduces to {rho.num_qubits} qubits "
            "(use --trace to drop qubits)"
        )
    kept = [q for q in range(1, state.num_qubits + 1) if q not in traced]
    pt_qubit = qubit_index(args.pt)
    if pt_qubit not in (1, 2):
        raise UsageError("--pt must name one of the two remaining qubits (1/2 or A/B)")
    res = _analysis(rho, pt_qubit)
    conc, ppt = res["concurrence"], res["ppt"]

    if args.format == "json":
        doc = {
            "state": desc,
            "kept": kept,
            "traced": traced,
            "density_matrix": [[[round12(z.real), round12(z.imag)] for z in row] for row in rho.matrix],
            "lambdas": [round12(x) for x in conc.lambdas],
            "concurrence": round12(conc.concurrence),
            "pt_qubit": pt_qubit,
            "pt_eigenvalues": [round12(x) for x in ppt.eigenvalues],
            "is_ppt": ppt.is_ppt,
            "separable": ppt.separable,
        }
        return EXIT_OK, dump_json(doc)
    if args.format == "csv":
        rows = [["quantity", "value"]]
        rows += [[f"lambda{i + 1}", fmt(x)] for i, x in enumerate(conc.lambdas)]
        rows.append(["concurrence", fmt(conc.concurrence)])
        rows += [[f"pt_eigenvalue{i + 1}", fmt(x)] for i, x in enumerate(ppt.eigenvalues)]
        rows.append(["is_ppt", ppt.is_ppt])
        return EXIT_OK, dump_csv(rows)

    kept_letters = ",".join(qubit_letter(q) for q in kept)
    lines = [f"state: {desc}"]
    if traced:
        lines.append(f"traced: {','.join(qubit_letter(q) for q in traced)}  kept: {kept_letters}")
    lines.append("reduced density matrix:")
    lines.extend(matrix_lines(rho.matrix))
    lines.append("lambdas: " + " ".join(fmt(x) for x in conc.lambdas))
    lines.append(f"concurrence: {fmt(conc.concurrence)}")
    lines.append(
        f"partial transpose on qubit {pt_qubit} eigenvalues: "
        + " ".join(fmt(x) for x in ppt.eigenvalues)
    )
    lines.append("verdict: " + ("separable (PPT)" if ppt.separable else "entangled (not PPT)"))
    return EXIT_OK, "\n".join(lines)


def cmd_braid(args) -> tuple[int, str]:
    try:
        word = parse_braid_word(args.word, args.n)
    except BraidSyntaxError as exc:
        raise UsageError(f"{exc}\n{exc.pointer()}") from exc
    start = computational_state(args.n, args.input)
    out = apply_braid_word(word, start)

    survey = hw = None
    if args.survey:
        if args.n < 3:
            raise UsageError("--survey needs at least 3 qubits")
        survey = reduction_survey(out)
        if args.n <= 5:
            hw = highest_weight_support(hs_decompose(density_from_pure(out)))

    if args.format == "json":
        doc = {"word": str(word), "input": args.input, "state": state_to_dict(out)}
        if survey is not None:
            doc["survey"] = [
                {
                    "kept": list(r.kept),
                    "traced": list(r.traced),
                    "concurrence": round12(r.concurrence.concurrence),
                    "min_pt_eigenvalue": round12(r.ppt.min_eigenvalue),
                    "is_ppt": r.ppt.is_ppt,
                }
                for r in survey
            ]
            doc["full_weight_support"] = hw
        return EXIT_OK, dump_json(doc)

    text = render_state(out, args.format)
    if survey is None or args.format == "csv":
        return EXIT_OK, text
    lines = [f"word: {str(word) or '(identity)'} on |C{args.input}⟩", text, "two-qubit reductions:"]
    for r in survey:
        kept = "".join(qubit_letter(q) for q in r.kept)
        lines.append(
            f"  keep {kept}: concurrence {fmt(r.concurrence.concurrence)}, "
            f"min PT eigenvalue {fmt(r.ppt.min_eigenvalue)}, "
            f"{'separable' if r.ppt.separable else 'entangled'}"
        )
    if hw is not None:
        lines.append(f"full-weight support: {'yes' if hw else 'no'}")
    return EXIT_OK, "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidbell",
        description="Braid-group Bell states and their correlation analysis.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=FORMATS, default="table")

    p = sub.add_parser("verify", help="check the B_n and Yang-Baxter relations")
    p.add_argument("--n", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bell", help="print a general Bell state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--index", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_bell)

    def add_state(p):
        p.add_argument("state", help="bell, ghz or file:PATH")
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--index", type=int, default=None)
        p.add_argument("--trace", default=None, help="qubits to trace out, e.g. C,D")
        add_format(p)

    p = sub.add_parser("hs", help="Hilbert-Schmidt decomposition of a state")
    add_state(p)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_hs)

    p = sub.add_parser("analyze", help="concurrence and PPT test of a 2-qubit reduction")
    add_state(p)
    p.add_argument("--pt", default="2", help="qubit of the reduced pair to transpose (default 2)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("braid", help="apply a braid word to a computational basis state")
    p.add_argument("word", help='e.g. "s1 s2" or "s2^-1 s1"; empty for identity')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--input", type=int, default=1, help="1-based computational basis index")
    p.add_argument("--survey", action="store_true", help="analyze all 2-qubit reductions")
    add_format(p)
    p.set_defaults(func=cmd_braid)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = args.func(args)
    except BraidBellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
