"""Command-line interface.

Exit codes: 0 verified/holds, 1 refuted (a witness was found), 2
inconclusive (budget or missing certificate), 3 input error.  With --json
every command emits a single object carrying "schema_version" and
"verdict"; reports contain no timestamps or floats, so identical
invocations produce byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .cluster import (ExchangeMatrix, Seed, builtin_seed,
                      enumerate_cluster_variables, exchange_polynomial,
                      hypersurface_relation_check, load_seed_file,
                      structure_report, verify_laurent_property)
from .factoriality import (CoincidentExchangePolynomials, ConjectureOutcome,
                           ExchangeIdeals, FreeIndex, FreeVariable,
                           Inconclusive, NonCoprimeExchangePolynomials, NotUFD,
                           ReducibleExchangePolynomial, SinkSourceSplit,
                           SupportCertificate, UFD, algebra_membership,
                           check_assumptions, conjecture_check,
                           necessary_conditions, inductive_prover,
                           multi_indices_of_weight, normal_form_element,
                           ufd_verdict)
from .fields import FieldTag
from .groebner import DEFAULT_BUDGET, GroebnerBudget
from .parse import ParseError, parse_expression, parse_polynomial

SCHEMA_VERSION = 1


class _Report:
    """Collects per-command output for either text or JSON emission."""

    def __init__(self, command: str, as_json: bool):
        self.command = command
        self.as_json = as_json
        self.payload: dict = {}
        self.lines: list[str] = []

    def set(self, key: str, value):
        self.payload[key] = value

    def text(self, line: str):
        self.lines.append(line)

    def emit(self, verdict: str):
        if self.as_json:
            body = dict(self.payload)
            body["schema_version"] = SCHEMA_VERSION
            body["command"] = self.command
            body["verdict"] = verdict
            print(json.dumps(body, sort_keys=True, indent=2))
        else:
            for line in self.lines:
                print(line)
            print(f"verdict: {verdict}")


def _emit_error(command: str, as_json: bool, message: str) -> int:
    if as_json:
        body = {"schema_version": SCHEMA_VERSION, "command": command,
                "verdict": "error", "error": message}
        print(json.dumps(body, sort_keys=True, indent=2))
    else:
        print(f"error: {message}", file=sys.stderr)
    return 3


def _field_of(args) -> Optional[FieldTag]:
    return FieldTag.from_name(args.field) if args.field else None


def _load_seed(args) -> Seed:
    field = _field_of(args)
    if args.builtin:
        return builtin_seed(args.builtin, field or FieldTag.Q)
    return load_seed_file(args.seed, field_override=field)


def _budget(args) -> GroebnerBudget:
    if args.budget is None:
        return DEFAULT_BUDGET
    if args.budget < 1:
        raise ValueError("--budget must be positive")
    return GroebnerBudget(max_reductions=args.budget)


def _matrix_rows(matrix: ExchangeMatrix) -> list[list[int]]:
    return [list(row) for row in matrix.rows]


def _witness_dict(witness) -> dict:
    if isinstance(witness, CoincidentExchangePolynomials):
        return {"coincident": [witness.i, witness.j], "value": str(witness.value)}
    if isinstance(witness, ReducibleExchangePolynomial):
        return {"reducible": {"index": witness.index,
                              "factors": [str(g) for g in witness.factors]}}
    if isinstance(witness, NonCoprimeExchangePolynomials):
        return {"noncoprime": {"i": witness.i, "j": witness.j,
                               "scalar": str(witness.scalar)}}
    raise TypeError(f"unknown witness {witness!r}")


def _witness_text(witness) -> str:
    if isinstance(witness, CoincidentExchangePolynomials):
        return f"f_{witness.i} = f_{witness.j} = {witness.value}"
    if isinstance(witness, ReducibleExchangePolynomial):
        g, h = witness.factors
        return f"f_{witness.index} factors as ({g}) * ({h})"
    if isinstance(witness, NonCoprimeExchangePolynomials):
        return f"f_{witness.i} = {witness.scalar} * f_{witness.j}"
    return str(witness)


def _justification_dict(just) -> dict:
    if isinstance(just, SinkSourceSplit):
        return {"rule": "sink_source", "i": just.i, "j": just.j}
    if isinstance(just, FreeIndex):
        return {"rule": "free_index", "i": just.i}
    if isinstance(just, FreeVariable):
        return {"rule": "free_variable", "i": just.i, "k": just.k}
    raise TypeError(f"unknown justification {just!r}")


def _certificate_list(certificate: SupportCertificate) -> list[dict]:
    out = []
    for support in sorted(certificate.entries, key=lambda s: (len(s), s)):
        entry = {"support": list(support)}
        entry.update(_justification_dict(certificate.entries[support]))
        out.append(entry)
    return out


def _require_certificate(ideals: ExchangeIdeals):
    """A verified certificate, or a reason string why none is available."""
    problem = check_assumptions(ideals)
    if problem is not None:
        return None, problem
    result = inductive_prover(ideals)
    if result.certificate is None:
        return None, (f"certificate search stuck at supports "
                      f"{list(result.stuck_supports)}")
    return result.certificate, None


# -- command handlers --------------------------------------------------------

def _cmd_mutate(args, report: _Report) -> int:
    seed = _load_seed(args)
    try:
        indices = [int(tok) for tok in args.sequence.split(",") if tok]
    except ValueError:
        raise ValueError(f"--sequence must be comma-separated integers, "
                         f"got {args.sequence!r}")
    mutated = seed.mutate_sequence(indices)
    report.set("sequence", indices)
    report.set("order", "applied left to right (first index first)")
    report.set("matrix", _matrix_rows(mutated.matrix))
    report.set("cluster", [str(entry) for entry in mutated.cluster])
    report.text(f"applied mutations {indices} (left to right)")
    report.text("matrix:")
    for row in _matrix_rows(mutated.matrix):
        report.text("  " + " ".join(f"{b:3d}" for b in row))
    for i, entry in enumerate(mutated.cluster, start=1):
        report.text(f"entry {i}: {entry}")
    report.emit("ok")
    return 0


def _cmd_exchange_polys(args, report: _Report) -> int:
    seed = _load_seed(args)
    polys = [exchange_polynomial(seed.matrix, j, seed.field)
             for j in range(1, seed.matrix.n + 1)]
    report.set("exchange_polynomials", [str(f) for f in polys])
    for j, f in enumerate(polys, start=1):
        report.text(f"f_{j} = {f}")
    report.emit("ok")
    return 0


def _cmd_structure(args, report: _Report) -> int:
    seed = _load_seed(args)
    rep = structure_report(seed.matrix)
    report.set("n", rep.n)
    report.set("m", rep.m)
    report.set("skew_symmetrizer", list(rep.skew_symmetrizer))
    report.set("connected", rep.connected)
    report.set("acyclic", rep.acyclic)
    report.set("sources", list(rep.sources))
    report.set("sinks", list(rep.sinks))
    report.set("neighbors", {str(i + 1): list(ns)
                             for i, ns in enumerate(rep.neighbors)})
    report.text(f"n = {rep.n}, m = {rep.m}")
    report.text(f"skew-symmetrizer D = diag{tuple(rep.skew_symmetrizer)}")
    report.text(f"connected: {rep.connected}, acyclic: {rep.acyclic}")
    report.text(f"sources: {list(rep.sources)}, sinks: {list(rep.sinks)}")
    for i, ns in enumerate(rep.neighbors, start=1):
        report.text(f"N({i}) = {list(ns)}")
    report.emit("ok")
    return 0


def _cmd_enumerate(args, report: _Report) -> int:
    seed = _load_seed(args)
    result = enumerate_cluster_variables(seed, max_seeds=args.max_seeds)
    report.set("count", result.count)
    report.set("complete", result.complete)
    report.set("seeds", result.seeds_seen)
    report.set("variables", [str(v) for v in result.variables])
    report.text(f"{result.count} cluster variables across "
                f"{result.seeds_seen} seeds (complete: {result.complete})")
    for v in result.variables:
        report.text(f"  {v}")
    if result.complete:
        report.emit("complete")
        return 0
    report.emit("incomplete")
    return 2


def _cmd_verify_laurent(args, report: _Report) -> int:
    seed = _load_seed(args)
    result, problems = verify_laurent_property(seed, max_seeds=args.max_seeds)
    report.set("count", result.count)
    report.set("complete", result.complete)
    report.set("violations", problems)
    report.text(f"checked {result.count} cluster variables "
                f"(complete enumeration: {result.complete})")
    if problems:
        for p in problems:
            report.text(f"VIOLATION: {p}")
        report.emit("violated")
        return 1
    report.emit("laurent")
    return 0


def _cmd_check_conjecture(args, report: _Report) -> int:
    seed = _load_seed(args)
    ideals = ExchangeIdeals(seed.matrix, seed.field)
    budget = _budget(args)
    if (args.index is None) == (args.max_total_degree is None):
        raise ValueError("pass exactly one of --index or --max-total-degree")
    if args.index is not None:
        try:
            a = tuple(int(tok) for tok in args.index.split(","))
        except ValueError:
            raise ValueError(f"--index must be comma-separated integers, "
                             f"got {args.index!r}")
        outcome = conjecture_check(ideals, a, budget,
                                   override_assumptions=args.override_assumptions)
        return _finish_conjecture(report, [outcome])
    outcomes = []
    for weight in range(1, args.max_total_degree + 1):
        for a in multi_indices_of_weight(ideals.n, weight):
            outcome = conjecture_check(ideals, a, budget,
                                       override_assumptions=args.override_assumptions)
            outcomes.append(outcome)
            if outcome.status != "holds":
                return _finish_conjecture(report, outcomes)
    return _finish_conjecture(report, outcomes)


def _finish_conjecture(report: _Report, outcomes: list[ConjectureOutcome]) -> int:
    last = outcomes[-1]
    report.set("checked", len(outcomes))
    report.set("multi_index", list(last.multi_index))
    report.text(f"checked {len(outcomes)} multi-indices, "
                f"last {list(last.multi_index)}")
    if last.status == "fails":
        report.set("witness", str(last.witness))
        report.text(f"witness in intersection but not product: {last.witness}")
        report.emit("fails")
        return 1
    if last.status == "inconclusive":
        report.set("detail", last.detail)
        report.text(f"inconclusive: {last.detail}")
        report.emit("inconclusive")
        return 2
    report.emit("holds")
    return 0


def _cmd_prove_ufd(args, report: _Report) -> int:
    seed = _load_seed(args)
    ideals = ExchangeIdeals(seed.matrix, seed.field)
    witness = necessary_conditions(ideals)
    if witness is not None:
        report.set("witness", _witness_dict(witness))
        report.text(_witness_text(witness))
        report.emit("NotUFD")
        return 1
    problem = check_assumptions(ideals)
    if problem is not None:
        report.set("reason", problem)
        report.text(problem)
        report.emit("inconclusive")
        return 2
    result = inductive_prover(ideals)
    if result.certificate is None:
        report.set("stuck_supports", [list(s) for s in result.stuck_supports])
        report.text(f"stuck at supports {[list(s) for s in result.stuck_supports]}")
        report.emit("inconclusive")
        return 2
    problems = result.certificate.verify(seed.matrix, ideals)
    if problems:
        raise RuntimeError(f"certificate failed verification: {problems}")
    report.set("certificate", _certificate_list(result.certificate))
    report.set("supports", len(result.certificate))
    report.text(f"certificate covers {len(result.certificate)} supports:")
    for entry in _certificate_list(result.certificate):
        rest = {k: v for k, v in entry.items() if k != "support"}
        report.text(f"  {entry['support']}: {rest}")
    report.emit("certified")
    return 0


def _cmd_verdict(args, report: _Report) -> int:
    seed = _load_seed(args)
    ideals = ExchangeIdeals(seed.matrix, seed.field)
    verdict = ufd_verdict(ideals, degree_bound=args.bound, budget=_budget(args))
    report.set("field", seed.field.value)
    if isinstance(verdict, UFD):
        report.set("certificate", _certificate_list(verdict.certificate))
        report.set("cross_checked_bound", verdict.cross_checked_bound)
        if verdict.notes:
            report.set("notes", verdict.notes)
        report.text(f"UFD: certificate covers {len(verdict.certificate)} "
                    f"supports, cross-checked to weight "
                    f"{verdict.cross_checked_bound}")
        report.emit("UFD")
        return 0
    if isinstance(verdict, NotUFD):
        report.set("witness", _witness_dict(verdict.witness))
        report.text(f"not a UFD: {_witness_text(verdict.witness)}")
        report.emit("NotUFD")
        return 1
    assert isinstance(verdict, Inconclusive)
    report.set("reason", verdict.reason)
    report.set("stuck_supports", [list(s) for s in verdict.stuck_supports])
    report.set("verified_bound", verdict.verified_bound)
    report.text(f"inconclusive: {verdict.reason}")
    report.text(f"direct checks verified all weights <= {verdict.verified_bound}")
    report.emit("Inconclusive")
    return 2


def _cmd_member(args, report: _Report) -> int:
    seed = _load_seed(args)
    ideals = ExchangeIdeals(seed.matrix, seed.field)
    value = parse_expression(args.expr, seed.matrix.m, seed.field)
    certificate, problem = _require_certificate(ideals)
    if certificate is None:
        report.set("reason", f"{problem}; no verified certificate, so the "
                             f"valuation test does not apply (use explicit "
                             f"Groebner product-ideal membership instead)")
        report.text(report.payload["reason"])
        report.emit("inconclusive")
        return 2
    member = algebra_membership(ideals, value, certificate)
    report.set("expression", str(value))
    report.text(f"{value}: {'member' if member else 'not a member'}")
    if member:
        report.emit("member")
        return 0
    report.emit("non-member")
    return 1


def _cmd_normal_form(args, report: _Report) -> int:
    seed = _load_seed(args)
    ideals = ExchangeIdeals(seed.matrix, seed.field)
    p = parse_polynomial(args.expr, seed.matrix.m, seed.field)
    certificate, problem = _require_certificate(ideals)
    if certificate is None:
        report.set("reason", str(problem))
        report.text(str(problem))
        report.emit("inconclusive")
        return 2
    result = normal_form_element(ideals, p, certificate)
    report.set("value", str(result.value))
    report.set("normal_monomial", list(result.normal_monomial))
    report.set("irreducibility", result.irreducibility)
    report.text(f"normal form: {result.value}")
    report.text(f"normal monomial exponents: {list(result.normal_monomial)}")
    report.text(f"irreducibility: {result.irreducibility}")
    report.emit("ok")
    return 0


def _cmd_hypersurface(args, report: _Report) -> int:
    holds = hypersurface_relation_check(args.n)
    report.set("n", args.n)
    report.text(f"hypersurface relation for n = {args.n}: "
                f"{'holds' if holds else 'FAILS'}")
    if holds:
        report.emit("holds")
        return 0
    report.emit("fails")
    return 1


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit a single JSON report")
    common.add_argument("--field", choices=["Q", "Qi"],
                        help="coefficient field (default Q; must match seed files)")
    common.add_argument("--budget", type=int, default=None, metavar="N",
                        help="Groebner pair-reduction budget")

    seedful = argparse.ArgumentParser(add_help=False)
    group = seedful.add_mutually_exclusive_group(required=True)
    group.add_argument("--seed", metavar="FILE", help="seed JSON file")
    group.add_argument("--builtin", metavar="NAME",
                       help="builtin seed, e.g. A:4, D:5, E:6, rank2:2,3, "
                            "kronecker, cyclicA3")

    parser = argparse.ArgumentParser(
        prog="clusterufd",
        description="Exact unique-factorization analysis for cluster seeds")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mutate", parents=[common, seedful],
                       help="apply a mutation sequence to a seed")
    p.add_argument("--sequence", required=True, metavar="K1,K2,...",
                   help="mutation indices, applied left to right")
    p.set_defaults(handler=_cmd_mutate)

    p = sub.add_parser("exchange-polys", parents=[common, seedful],
                       help="list the exchange polynomials f_1..f_n")
    p.set_defaults(handler=_cmd_exchange_polys)

    p = sub.add_parser("structure", parents=[common, seedful],
                       help="symmetrizer, connectivity, acyclicity, sources/sinks")
    p.set_defaults(handler=_cmd_structure)

    p = sub.add_parser("enumerate", parents=[common, seedful],
                       help="enumerate cluster variables up to a seed budget")
    p.add_argument("--max-seeds", type=int, default=10_000, metavar="N")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("verify-laurent", parents=[common, seedful],
                       help="check enumerated variables are integer Laurent")
    p.add_argument("--max-seeds", type=int, default=1_000, metavar="N")
    p.set_defaults(handler=_cmd_verify_laurent)

    p = sub.add_parser("check-conjecture", parents=[common, seedful],
                       help="compare products of ideal powers with intersections")
    p.add_argument("--index", metavar="A1,...,AN",
                   help="a single multi-index to check")
    p.add_argument("--max-total-degree", type=int, metavar="D",
                   help="check every multi-index of weight 1..D")
    p.add_argument("--override-assumptions", action="store_true",
                   help="probe even when the standing assumptions fail")
    p.set_defaults(handler=_cmd_check_conjecture)

    p = sub.add_parser("prove-ufd", parents=[common, seedful],
                       help="necessary conditions plus the certificate search")
    p.set_defaults(handler=_cmd_prove_ufd)

    p = sub.add_parser("verdict", parents=[common, seedful],
                       help="full pipeline with conjecture cross-validation")
    p.add_argument("--bound", type=int, default=3, metavar="D",
                   help="cross-check weight bound (default 3)")
    p.set_defaults(handler=_cmd_verdict)

    p = sub.add_parser("member", parents=[common, seedful],
                       help="decide cluster-algebra membership of a Laurent value")
    p.add_argument("--expr", required=True, metavar="EXPR")
    p.set_defaults(handler=_cmd_member)

    p = sub.add_parser("normal-form", parents=[common, seedful],
                       help="canonical Laurent form P / M(P) of an irreducible")
    p.add_argument("--expr", required=True, metavar="EXPR")
    p.set_defaults(handler=_cmd_normal_form)

    p = sub.add_parser("hypersurface", parents=[common],
                       help="verify the once-mutated hypersurface relation")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_hypersurface)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit status 2 for usage errors; our contract says 3
        return 0 if exc.code == 0 else 3
    report = _Report(args.command, args.json)
    try:
        return args.handler(args, report)
    except (ValueError, ParseError) as exc:
        return _emit_error(args.command, args.json, str(exc))


def entrypoint():
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
