"""Command-line interface: ``paley-snf <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 size guard exceeded, 4 file I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import charsums, graph, groups, linalg, transfer
from .carries import carries_add_mod, carry_count, carry_profile
from .errors import InvalidInputError, PaleyError
from .fields import PrimePowerParams, find_field, galois_ring, paley_params, valuation

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_GUARD, EXIT_IO = 0, 1, 2, 3, 4
DEFAULT_MAX_Q = 2048
FAST_SAMPLE = 32


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


@dataclass
class RunReport:
    command: str
    q: int | None = None
    p: int | None = None
    t: int | None = None
    results: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)
    wall_time: float = 0.0

    def to_json(self) -> dict:
        out = {"command": self.command}
        if self.q is not None:
            out.update(q=self.q, p=self.p, t=self.t)
        out["results"] = self.results
        if self.verdicts:
            out["verdicts"] = self.verdicts
        out["wall_time"] = round(self.wall_time, 3)
        return out

    @property
    def passed(self) -> bool:
        return all(v["pass"] for v in self.verdicts)


def _paley(q: int) -> PrimePowerParams:
    try:
        return paley_params(q)
    except InvalidInputError as exc:
        raise CliError(str(exc), EXIT_INVALID) from None


def _guard(q: int, max_q: int) -> None:
    if q > max_q:
        raise CliError(
            f"q={q} exceeds the matrix size guard ({max_q}); pass --max-q to override",
            EXIT_GUARD,
        )


def _target_matrix(q: int, target: str) -> list:
    g = graph.build_paley(q)
    return g.adjacency if target == "adjacency" else graph.laplacian(g)


def _group_json(g: groups.AbelianGroup) -> dict:
    out = g.to_json()
    out["text"] = g.format_elementary()
    out["invariant_text"] = g.format_invariant()
    return out


# -- commands -----------------------------------------------------------------------


def cmd_predict(args) -> RunReport:
    params = _paley(args.q)
    pred = groups.predict(args.q)
    report = RunReport("predict", args.q, params.p, params.t)
    report.results = {
        "smith": _group_json(pred.smith),
        "critical": _group_json(pred.critical),
        "smith_structured": pred.structured_smith(),
        "critical_structured": pred.structured_critical(),
        "smith_order": pred.smith.order,
        "critical_order": pred.critical.order,
    }
    return report


def cmd_compute(args) -> RunReport:
    _guard(args.q, args.max_q)
    params = _paley(args.q)
    m = _target_matrix(args.q, args.target)
    snf = linalg.smith_normal_form(m)
    group = groups.AbelianGroup.from_invariant_factors(snf.nontrivial(), len(m) - snf.rank)
    report = RunReport("compute", args.q, params.p, params.t)
    report.results = {
        "target": args.target,
        "field": find_field(params.p, params.t).describe(),
        "snf": snf.to_json(),
        "free_rank": group.free_rank,
        "torsion": _group_json(group.torsion()),
    }
    return report


def cmd_snf(args) -> RunReport:
    m = graph.parse_matrix(_read(args.path))
    snf = linalg.smith_normal_form(m)
    report = RunReport("snf")
    report.results = {"snf": snf.to_json()}
    return report


def cmd_jacobi(args) -> RunReport:
    params = _paley(args.q)
    q, i = args.q, args.i
    m = args.precision or params.t + 1
    ring = galois_ring(find_field(params.p, params.t), m)
    try:
        c = carry_count(i, q)
        carries = list(carries_add_mod(i, q))
    except InvalidInputError as exc:
        raise CliError(str(exc), EXIT_INVALID) from None
    val = valuation(charsums.jacobi_sum(ring, -i, params.k))
    report = RunReport("jacobi", q, params.p, params.t)
    report.results = {
        "i": i,
        "valuation": val if val < m else None,
        "precision": m,
        "carry_count": c,
        "carries": carries,
    }
    report.verdicts = [_verdict("valuation = carries", val == c == sum(carries), "")]
    return report


def cmd_carries(args) -> RunReport:
    try:
        params = PrimePowerParams.from_q(args.q)
    except InvalidInputError as exc:
        raise CliError(str(exc), EXIT_INVALID) from None
    q = args.q
    profile = carry_profile(q)
    rows = [
        {"i": i, "carries": list(carries_add_mod(i, q)), "count": carry_count(i, q)}
        for i in range(1, q - 1)
        if i != params.k
    ]
    report = RunReport("carries", q, params.p, params.t)
    report.results = {"profile": {str(k): v for k, v in profile.as_dict().items()}}
    if args.all:
        report.results["indices"] = rows
    return report


def cmd_genfunc(args) -> RunReport:
    p, t = args.p, args.t
    if p < 3 or p % 2 == 0 or t < 1:
        raise CliError("need an odd p >= 3 and t >= 1", EXIT_INVALID)
    walks = transfer.closed_walk_poly(p, t).x_coeffs()
    walks += [0] * (t + 1 - len(walks))
    closed = [transfer.f_closed_form(p, t, lam) for lam in range(t + 1)]
    q_ok = transfer.char_poly_Q(p) == transfer.expected_Q(p)
    report = RunReport("genfunc", p**t, p, t)
    report.results = {
        "trace_coefficients": walks,
        "closed_form": closed,
        "Q": repr(transfer.char_poly_Q(p)),
    }
    report.verdicts = [
        _verdict("Q identity", q_ok, repr(transfer.expected_Q(p))),
        _verdict("closed form = trace", walks == closed, ""),
    ]
    return report


def cmd_export(args) -> RunReport:
    _guard(args.q, args.max_q)
    params = _paley(args.q)
    text = graph.format_matrix(_target_matrix(args.q, args.target))
    try:
        with open(args.path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {args.path}: {exc.strerror}", EXIT_IO) from None
    report = RunReport("export", args.q, params.p, params.t)
    report.results = {"target": args.target, "path": args.path}
    return report


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from None


# -- verification suite ---------------------------------------------------------------


def _verdict(name, ok, details) -> dict:
    return {"name": name, "pass": bool(ok), "details": details}


def _admissible(q: int) -> list:
    k = (q - 1) // 2
    return [i for i in range(1, q - 1) if i != k]


def _sample(indices: list, n: int) -> list:
    if len(indices) <= n:
        return indices
    return [indices[j * len(indices) // n] for j in range(n)]


def _check(name, q, level, precision):
    """Run one named verification item; returns (ok, details)."""
    params = paley_params(q)
    p, t = params.p, params.t
    if name == "srg identity":
        return graph.srg_check(graph.build_paley(q)), ""
    if name == "order formulas":
        g = graph.build_paley(q)
        trees = graph.spanning_tree_count(g)
        det = abs(linalg.det_bareiss(g.adjacency))
        k, mu = params.k, params.mu
        ok = trees == q ** ((q - 3) // 2) * mu**k and det == k * (k // 2) ** k
        ok = ok and groups.predict_critical_group(q).order == trees
        ok = ok and groups.predict_smith_group(q).order == det
        return ok, f"spanning trees: {len(str(trees))} digits, |det A| = {det}"
    if name == "smith group":
        computed = linalg.cokernel(graph.build_paley(q).adjacency)
        v = groups.compare(groups.predict_smith_group(q), computed)
        return v.equal, v.detail or computed.format_elementary()
    if name == "critical group":
        computed = linalg.cokernel(graph.laplacian(graph.build_paley(q)))
        v = groups.compare(groups.predict_critical_group(q), computed.torsion())
        ok = v.equal and computed.free_rank == 1
        return ok, v.detail or computed.format_elementary()
    if name == "p-local divisors":
        lap = graph.laplacian(graph.build_paley(q))
        ok = linalg.local_divisors(lap, p) == charsums.predicted_local_divisors(q)
        return ok, ""
    if name == "jacobi valuations":
        bad = [
            i for i in _admissible(q)
            if not charsums.jacobi_valuation(q, i) == carry_count(i, q) == sum(carries_add_mod(i, q))
        ]
        return not bad, f"mismatched indices {bad}" if bad else f"{len(_admissible(q))} indices"
    if name == "isotypic action":
        indices = _admissible(q)
        if level == "fast":
            indices = _sample(indices, FAST_SAMPLE)
        bad = [i for i in indices if not charsums.verify_isotypic_action(q, i, precision)]
        return not bad, f"mismatched indices {bad}" if bad else f"{len(indices)} indices"
    if name == "fixed block":
        return charsums.verify_fixed_block(q, precision), ""
    if name == "Q identity":
        ok = transfer.char_poly_Q(p) == transfer.expected_Q(p) and transfer.series_check_F(p, 6)
        return ok, repr(transfer.char_poly_Q(p))
    if name == "special walks":
        audit = transfer.special_walk_audit(p, t)
        return audit.ok, f"difference {audit.difference!r}"
    if name == "carry symmetry":
        profile = carry_profile(q)
        ok = profile.is_palindrome() and profile.counts[0] + 2 == ((p + 1) // 2) ** t
        ok = ok and all(carry_count(i, q) + carry_count(q - 1 - i, q) == t for i in _admissible(q))
        return ok, f"profile {list(profile.counts)}"
    raise ValueError(name)


VERIFY_ITEMS = (
    "srg identity",
    "order formulas",
    "smith group",
    "critical group",
    "p-local divisors",
    "jacobi valuations",
    "isotypic action",
    "fixed block",
    "Q identity",
    "special walks",
    "carry symmetry",
)


def _run_item(item):
    name, q, level, precision = item
    ok, details = _check(name, q, level, precision)
    return _verdict(name, ok, details)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("PALEY_THREADS", "1")))
    except ValueError:
        return 1


def cmd_verify(args) -> RunReport:
    _guard(args.q, args.max_q)
    params = _paley(args.q)
    if args.precision is not None and args.precision < params.t + 1:
        raise CliError(f"--precision must be at least t+1 = {params.t + 1}", EXIT_INVALID)
    items = [(name, args.q, args.level, args.precision) for name in VERIFY_ITEMS]
    workers = _threads()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(_run_item, items))
    else:
        verdicts = [_run_item(item) for item in items]
    report = RunReport("verify", args.q, params.p, params.t)
    report.results = {"level": args.level}
    report.verdicts = verdicts
    return report


# -- output -----------------------------------------------------------------------


def _print_text(report: RunReport, out) -> None:
    r = report.results
    head = f"{report.command}"
    if report.q is not None:
        head += f"  q={report.q} (p={report.p}, t={report.t})"
    print(head, file=out)
    if report.command == "predict":
        for label, key in (("S(P(q))", "smith"), ("K(P(q))", "critical")):
            print(f"{label} = {r[key + '_structured']}", file=out)
            print(f"  elementary divisors: {r[key]['text']}", file=out)
            print(f"  invariant factors:   {r[key]['invariant_text']}", file=out)
            print(f"  order: {r[key + '_order']}", file=out)
    elif report.command == "compute":
        print(f"target: {r['target']}", file=out)
        print(f"free rank: {r['free_rank']}", file=out)
        print(f"torsion: {r['torsion']['text']}", file=out)
        print(f"invariant factors: {r['torsion']['invariant_text']}", file=out)
    elif report.command == "carries":
        print("lambda  count", file=out)
        for lam, n in r["profile"].items():
            print(f"{lam:>6}  {n}", file=out)
        for row in r.get("indices", []):
            print(f"i={row['i']}: carries {row['carries']} count {row['count']}", file=out)
    elif report.command == "genfunc":
        print(f"Q(z,x) = {r['Q']}", file=out)
        print("lambda  trace(B^t)  closed form", file=out)
        for lam, (a, b) in enumerate(zip(r["trace_coefficients"], r["closed_form"])):
            print(f"{lam:>6}  {a:>10}  {b:>11}", file=out)
    elif report.command == "jacobi":
        val = r["valuation"]
        shown = val if val is not None else f">= {r['precision']}"
        print(f"i={r['i']}: valuation {shown}, carries {r['carries']}", file=out)
    elif report.command == "snf":
        for d, mult in r["snf"]:
            print(f"{d} x {mult}", file=out)
    elif report.command == "export":
        print(f"wrote {r['target']} matrix to {r['path']}", file=out)
    for v in report.verdicts:
        status = "PASS" if v["pass"] else "FAIL"
        extra = f"  ({v['details']})" if v["details"] else ""
        print(f"{v['name']}: {status}{extra}", file=out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")

    guarded = argparse.ArgumentParser(add_help=False)
    guarded.add_argument("--max-q", type=int, default=DEFAULT_MAX_Q,
                         help=f"largest q for which matrices are built (default {DEFAULT_MAX_Q})")

    target = argparse.ArgumentParser(add_help=False)
    target.add_argument("--target", choices=("adjacency", "laplacian"), default="laplacian")

    parser = argparse.ArgumentParser(
        prog="paley-snf",
        description="Smith and critical groups of Paley graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", parents=[common], help="closed-form Smith and critical groups")
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("compute", parents=[common, guarded, target], help="direct SNF of A or L")
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", parents=[common, guarded], help="cross-check both routes")
    p.add_argument("q", type=int)
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--precision", type=int, default=None, help="Galois ring precision m")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("jacobi", parents=[common], help="valuation of J(T^-i, chi)")
    p.add_argument("q", type=int)
    p.add_argument("i", type=int)
    p.add_argument("--precision", type=int, default=None, help="Galois ring precision m")
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("carries", parents=[common], help="carry profile of i + (q-1)/2")
    p.add_argument("q", type=int)
    p.add_argument("--all", action="store_true", help="also list every index")
    p.set_defaults(func=cmd_carries)

    p = sub.add_parser("genfunc", parents=[common], help="closed-walk counts f(t, lambda)")
    p.add_argument("p", type=int)
    p.add_argument("t", type=int)
    p.set_defaults(func=cmd_genfunc)

    p = sub.add_parser("export", parents=[common, guarded, target], help="write a matrix file")
    p.add_argument("q", type=int)
    p.add_argument("path")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("snf", parents=[common], help="SNF of a matrix file")
    p.add_argument("path")
    p.set_defaults(func=cmd_snf)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except PaleyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    report.wall_time = time.perf_counter() - start
    if args.format == "json":
        json.dump(report.to_json(), out, indent=2)
        out.write("\n")
    else:
        _print_text(report, out)
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
