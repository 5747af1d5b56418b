"""Command-line front end.

Subcommands: ``compute`` (the four irreducibility measures of a distribution
file), ``axioms`` (numerical verification of the union-measure property
list), ``examples`` (the built-in circuits against their expected rows),
``enumerate`` (part/bipartition/Almost families), and ``lattice`` (order,
join, and meet diagnostics for variable groups).

Exit status: 0 on success, 1 on domain errors (unparseable input,
non-convergence, failed verification), 2 on usage errors.  Data goes to
stdout or ``--out``; diagnostics go to stderr.  JSON output is byte-stable
for identical flags: floats are printed with 9 decimal places and key order
is fixed.  The ``PID_THREADS`` environment variable caps internal
parallelism (default 1).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .corpus import EXAMPLE_NAMES, load_example, verify_corpus
from .distributions import (
    DistributionError,
    JointDistribution,
    parse_distribution,
    random_distribution,
)
from .irreducibility import OrderingViolationError, full_report
from .lattice import from_selector, is_equivalent, is_poorer, join, meet
from .parts import PartFamily, PartSpec, all_bipartitions, all_parts, almost_pairs, almosts
from .union_info import (
    MeasureKind,
    UnionConvergenceError,
    UnionMeasure,
    check_axioms,
)

__all__ = ["main"]


class UsageError(Exception):
    """Bad invocation that argparse cannot catch on its own."""


# ---------------------------------------------------------------------------
# Deterministic rendering
# ---------------------------------------------------------------------------

def _fmt_float(v: float) -> str:
    if not (v == v and abs(v) != float("inf")):
        raise ValueError(f"refusing to emit non-finite value {v!r}")
    rounded = round(v, 9)
    if rounded == 0.0:
        rounded = 0.0  # normalize -0.0
    return f"{rounded:.9f}"


def render_json(value, indent: int = 0) -> str:
    """Minimal JSON writer with stable key order and 9-decimal floats."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = ",\n".join(
            f"{inner}{_json_string(str(k))}: {render_json(v, indent + 1)}"
            for k, v in value.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = ", ".join(render_json(v, indent + 1) for v in value)
        return "[" + items + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _fmt_float(value)
    if isinstance(value, int):
        return str(value)
    if value is None:
        return "null"
    return _json_string(str(value))


def _json_string(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def _flatten(value, prefix: str = "") -> list[tuple[str, str]]:
    if isinstance(value, dict):
        rows: list[tuple[str, str]] = []
        for k, v in value.items():
            key = f"{prefix}.{k}" if prefix else str(k)
            rows.extend(_flatten(v, key))
        return rows
    if isinstance(value, (list, tuple)):
        return [(prefix, " | ".join(_scalar(v) for v in value))]
    return [(prefix, _scalar(value))]


def _scalar(v) -> str:
    if isinstance(v, float):
        return _fmt_float(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_scalar(x) for x in v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render_tsv(payload: dict) -> str:
    return "\n".join(f"{k}\t{v}" for k, v in _flatten(payload)) + "\n"


# ---------------------------------------------------------------------------
# Handlers
# ---------------------------------------------------------------------------

def _measure_from(args) -> UnionMeasure:
    return UnionMeasure(
        kind=MeasureKind.from_name(args.measure),
        tolerance=args.tol,
        seed=args.seed,
    )


def _load_input(path: str, target: str | None) -> JointDistribution:
    text = Path(path).read_text(encoding="utf-8")
    d = parse_distribution(text)
    if target is not None and target != d.target:
        d = JointDistribution(d.variables, d.pmf, target=target)
    return d


def _part_label(names, part) -> str:
    return " ".join(names[i] for i in part.member_indices)


def _cmd_compute(args) -> tuple[str, int]:
    d = _load_input(args.input, args.target)
    if d.n_predictors < 2:
        raise UsageError(
            f"compute needs at least 2 predictor variables, got {d.n_predictors}"
        )
    report = full_report(d, _measure_from(args))
    payload = report.to_dict()
    if args.format == "json":
        return render_json(payload) + "\n", 0
    if args.format == "tsv":
        return render_tsv(payload), 0
    names = report.predictor_names
    lines = [
        f"{'source':<16}{'I(whole;Y)':>14}{'IbE':>14}{'IbDp':>14}{'Ib2p':>14}{'IbAp':>14}",
        f"{Path(args.input).name:<16}"
        + "".join(f"{_fmt_float(v):>14}" for v in report.values()),
        "ibdp witness: {"
        + " | ".join(_part_label(names, b) for b in report.witness_bipartition.blocks)
        + "}",
        "ib2p witness: {"
        + ", ".join(_part_label(names, p) for p in report.witness_almost_pair.parts)
        + "}",
    ]
    return "\n".join(lines) + "\n", 0


def _axiom_suite(args):
    suite = []
    if args.input:
        dists = [_load_input(args.input, args.target)]
    else:
        dists = [load_example(name).distribution for name in EXAMPLE_NAMES]
    rng = np.random.default_rng(args.seed)
    for _ in range(args.trials):
        n = int(rng.integers(2, 4))
        dists.append(random_distribution(rng, n_predictors=n))
    for d in dists:
        n = d.n_predictors
        if n < 2:
            raise UsageError("axioms needs at least 2 predictor variables")
        suite.append((d, PartFamily(tuple(PartSpec((i,)) for i in range(n)))))
        if n >= 3:
            suite.append((d, almost_pairs(n)[0]))
    return suite


def _cmd_axioms(args) -> tuple[str, int]:
    m = _measure_from(args)
    report = check_axioms(m, _axiom_suite(args))
    payload = report.to_dict()
    status = 0 if report.all_passed else 1
    if args.format == "tsv":
        return render_tsv(payload), status
    if args.format == "human":
        lines = [f"{'axiom':<6}{'passed':<9}{'worst violation':>18}  cases"]
        for name, info in payload["axioms"].items():
            lines.append(
                f"{name:<6}{str(info['passed']).lower():<9}"
                f"{_fmt_float(info['worst_violation']):>18}  {info['cases']}"
            )
        lines.append(f"all passed: {str(payload['all_passed']).lower()}")
        return "\n".join(lines) + "\n", status
    return render_json(payload) + "\n", status


def _cmd_examples(args) -> tuple[str, int]:
    if args.emit_tsv:
        if not args.name:
            raise UsageError("--emit-tsv needs --name")
        return load_example(args.name).distribution.to_tsv(), 0
    m = _measure_from(args)
    verification = verify_corpus(m, tol=args.tol)
    rows = verification.rows
    if args.name:
        rows = tuple(r for r in rows if r.name == args.name)
    status = 0 if all(r.ok(verification.tolerance) for r in rows) else 1
    if args.format == "json":
        payload = verification.to_dict()
        if args.name:
            payload["rows"] = {args.name: payload["rows"][args.name]}
        return render_json(payload) + "\n", status
    if args.format == "tsv":
        return render_tsv(verification.to_dict()), status
    header = (
        f"{'example':<12}{'I(whole;Y)':>12}{'IbE':>8}{'IbDp':>8}{'Ib2p':>8}{'IbAp':>8}  status"
    )
    lines = [header]
    for r in rows:
        got = r.report.values()
        ok = r.ok(verification.tolerance)
        lines.append(
            f"{r.name:<12}"
            + f"{got[0]:>12.3f}"
            + "".join(f"{v:>8.3f}" for v in got[1:])
            + ("  ok" if ok else "  MISMATCH")
        )
        if not ok:
            lines.append(f"{'':<12}expected {r.expected}")
    return "\n".join(lines) + "\n", status


def _cmd_enumerate(args) -> tuple[str, int]:
    n = args.n
    if n < 2:
        raise UsageError(f"enumerate needs --n >= 2, got {n}")
    names = [f"X{i + 1}" for i in range(n)]
    if args.what == "parts":
        groups = [[_part_label(names, p)] for p in all_parts(n)]
    elif args.what == "bipartitions":
        groups = [
            [_part_label(names, b) for b in part.blocks] for part in all_bipartitions(n)
        ]
    elif args.what == "almosts":
        groups = [[_part_label(names, p)] for p in almosts(n)]
    else:
        groups = [
            [_part_label(names, p) for p in fam.parts] for fam in almost_pairs(n)
        ]
    if args.format == "json":
        return render_json({"what": args.what, "n": n, "families": groups}) + "\n", 0
    if args.format == "tsv":
        return "\n".join("\t".join(g) for g in groups) + "\n", 0
    return "\n".join("{" + " | ".join(g) + "}" for g in groups) + "\n", 0


def _cmd_lattice(args) -> tuple[str, int]:
    d = _load_input(args.input, args.target)
    if args.vars:
        groups = []
        for token in args.vars.split():
            names = tuple(token.split(","))
            groups.append((",".join(names), d.selector(*names)))
    else:
        groups = [(name, d.selector(name)) for name in d.variables]
    derived = [(label, from_selector(d, sel)) for label, sel in groups]

    entropies = {label: var.entropy() for label, var in derived}
    relations = []
    pairs = []
    for i in range(len(derived)):
        for j in range(i + 1, len(derived)):
            la, ua = derived[i]
            lb, ub = derived[j]
            relations.append(
                {
                    "a": la,
                    "b": lb,
                    "a_poorer_b": is_poorer(ua, ub),
                    "b_poorer_a": is_poorer(ub, ua),
                    "equivalent": is_equivalent(ua, ub),
                }
            )
            pairs.append(
                {
                    "a": la,
                    "b": lb,
                    "join_entropy": join(ua, ub).entropy(),
                    "meet_entropy": meet(ua, ub).entropy(),
                }
            )
    payload = {
        "input": Path(args.input).name,
        "entropies": entropies,
        "relations": relations,
        "pairs": pairs,
    }
    if args.format == "json":
        return render_json(payload) + "\n", 0
    if args.format == "tsv":
        return render_tsv(payload), 0
    lines = ["entropies (bits):"]
    for label, h in entropies.items():
        lines.append(f"  H({label}) = {_fmt_float(h)}")
    lines.append("order:")
    for rel in relations:
        if rel["equivalent"]:
            mark = "equivalent to"
        elif rel["a_poorer_b"]:
            mark = "poorer than"
        elif rel["b_poorer_a"]:
            mark = "richer than"
        else:
            mark = "incomparable with"
        lines.append(f"  {rel['a']} {mark} {rel['b']}")
    lines.append("join/meet (bits):")
    for p in pairs:
        lines.append(
            f"  {p['a']} vs {p['b']}: H(join) = {_fmt_float(p['join_entropy'])}, "
            f"H(meet) = {_fmt_float(p['meet_entropy'])}"
        )
    return "\n".join(lines) + "\n", 0


_HANDLERS = {
    "compute": _cmd_compute,
    "axioms": _cmd_axioms,
    "examples": _cmd_examples,
    "enumerate": _cmd_enumerate,
    "lattice": _cmd_lattice,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(sub, input_required=False, with_measure=True):
    if with_measure:
        sub.add_argument("--measure", default="minsyn", choices=["minsyn", "maxmi"])
        sub.add_argument("--seed", type=int, default=0)
        sub.add_argument("--tol", type=float, default=1e-6)
    sub.add_argument("--out", default=None, help="write output here instead of stdout")
    sub.add_argument(
        "--format", default="json", choices=["json", "tsv", "human"]
    )
    if input_required is not None:
        sub.add_argument("--input", required=input_required, help="distribution TSV")
        sub.add_argument("--target", default=None, help="target variable name")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pidirr",
        description="Irreducibility measures of multivariate information.",
    )
    subs = parser.add_subparsers(dest="cmd", required=True)

    compute = subs.add_parser("compute", help="the four measures of one distribution")
    _add_common(compute, input_required=True)

    axioms = subs.add_parser("axioms", help="verify the union-measure property list")
    _add_common(axioms, input_required=False)
    axioms.add_argument("--trials", type=int, default=20, help="random distributions to add")

    examples = subs.add_parser("examples", help="built-in circuits vs expected values")
    _add_common(examples, input_required=None)
    examples.add_argument("--name", default=None, choices=list(EXAMPLE_NAMES))
    examples.add_argument("--emit-tsv", action="store_true", help="dump the distribution instead")

    enum = subs.add_parser("enumerate", help="list part families")
    _add_common(enum, input_required=None, with_measure=False)
    enum.add_argument(
        "--what",
        required=True,
        choices=["parts", "bipartitions", "almosts", "almost-pairs"],
    )
    enum.add_argument("--n", type=int, required=True, help="number of predictors")

    lattice = subs.add_parser("lattice", help="order/join/meet diagnostics")
    _add_common(lattice, input_required=True, with_measure=False)
    lattice.add_argument(
        "--vars",
        default=None,
        help="space-separated groups of comma-joined variable names",
    )
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        output, status = _HANDLERS[args.cmd](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (
        DistributionError,
        UnionConvergenceError,
        OrderingViolationError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
