"""Command-line interface: subcommands over the algebra/chain/flow pipeline.

Exit codes: 0 success (for `chain verify`: superintegrable), 1 negative
result (not superintegrable / failed check), 2 inconclusive, 3 invalid
input.  Reports are deterministic JSON (sorted keys, canonical polynomial
text); a short human summary always goes to standard output.
"""

from __future__ import annotations

import argparse
import csv
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import chains, cycles
from .algebra import (
    ConfigurationError,
    LieAlgebra,
    SubalgebraSpec,
    builtin_sl,
    cartan_subalgebra,
    full_subalgebra,
    validate_algebra,
    validate_subalgebra,
)
from .casimir_mf import (
    casimir_count_check,
    casimirs_by_kernel,
    mf_commutativity_check,
    mf_generators,
    mf_inclusion_check,
    mf_rank_check,
    sandwich_check,
    trace_casimirs_sln,
)
from .chains import ChainFormationError, ChainSpec, verify_chain
from .commutant import (
    BudgetExceededError,
    GeneratorSet,
    bracket_closure_check,
    generate,
    membership,
    relation_basis,
)
from .flow import FlowDivergenceError, FlowProblem, integrate
from .poly import dump_json, parse_polynomial
from .sampling import DEFAULT_SEED

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3

_SL_PATTERN = re.compile(r"^sl(\d+)$")


class CliError(Exception):
    """Invalid input surfaced to the user with exit code 3."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: A003 - argparse API
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_INPUT)


@dataclass
class RunConfig:
    command: str
    seed: int
    threads: int
    out: str | None
    options: argparse.Namespace


def _env_threads() -> int:
    raw = os.environ.get("POISCHAIN_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise CliError(f"POISCHAIN_THREADS must be an integer, got {raw!r}")
    if value < 1:
        raise CliError("POISCHAIN_THREADS must be at least 1")
    return value


def build_parser() -> _Parser:
    parser = _Parser(prog="poischain", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for generic sample points")
    common.add_argument("--out", type=str, default=None,
                        help="write the JSON report to this path")
    sub = parser.add_subparsers(dest="command", required=True)

    p_alg = sub.add_parser("algebra", help="algebra-level operations")
    alg_sub = p_alg.add_subparsers(dest="algebra_command", required=True)
    p_check = alg_sub.add_parser("check", parents=[common],
                                 help="validate structure constants")
    p_check.add_argument("--algebra", required=True)

    p_comm = sub.add_parser("commutant", parents=[common],
                            help="invariant generators of a subalgebra")
    p_comm.add_argument("--algebra", required=True)
    p_comm.add_argument("--subalgebra", required=True)
    p_comm.add_argument("--max-degree", type=int, default=None)
    p_comm.add_argument("--relations-degree", type=int, default=None,
                        help="weighted-degree budget (default 2x cap)")
    p_comm.add_argument("--skip-relations", action="store_true")
    p_comm.add_argument("--closure", action="store_true",
                        help="also check bracket closure (can be slow)")

    p_cas = sub.add_parser("casimirs", parents=[common],
                           help="central generators by kernel (and traces)")
    p_cas.add_argument("--algebra", required=True)
    p_cas.add_argument("--max-degree", type=int, default=None)
    p_cas.add_argument("--method", choices=["kernel", "trace", "both"],
                       default="kernel")

    p_mf = sub.add_parser("mf", parents=[common],
                          help="argument-shift family of the Casimirs")
    p_mf.add_argument("--algebra", required=True)
    p_mf.add_argument("--shift", required=True,
                      help='full vector "1,0,0" or Cartan coordinates "h:1,2"')
    p_mf.add_argument("--max-degree", type=int, default=None)
    p_mf.add_argument("--subalgebra", default=None,
                      help="also test inclusion into this subalgebra's invariants")

    p_chain = sub.add_parser("chain", help="inclusion-chain operations")
    chain_sub = p_chain.add_subparsers(dest="chain_command", required=True)
    p_verify = chain_sub.add_parser("verify", parents=[common],
                                    help="decide superintegrability")
    p_verify.add_argument("--algebra", required=True)
    p_verify.add_argument("--subalgebra", required=True)
    p_verify.add_argument("--base", required=True,
                          help="casimirs | moment-map | mf:<shift> | file:<gens.json>")
    p_verify.add_argument("--max-degree", type=int, default=None)

    p_cyc = sub.add_parser("cycles", parents=[common],
                           help="cycle-monomial census and identities for sl(n)")
    p_cyc.add_argument("--n", type=int, required=True)
    p_cyc.add_argument("--max-degree", type=int, default=4,
                       help="degree cap for the oracle cross-check")
    p_cyc.add_argument("--check", choices=["relations", "oracle", "all"],
                       default="all")

    p_flow = sub.add_parser("flow", parents=[common],
                            help="integrate a Hamiltonian flow and report drifts")
    p_flow.add_argument("--algebra", required=True)
    p_flow.add_argument("--hamiltonian", required=True)
    p_flow.add_argument("--x0", required=True, help="comma-separated floats")
    p_flow.add_argument("--t", type=float, required=True)
    p_flow.add_argument("--dt", type=float, required=True)
    p_flow.add_argument("--monitor", default=None,
                        help="auto:torus | auto:casimirs | gens.json")
    p_flow.add_argument("--csv", default=None,
                        help="write the sampled trajectory to this CSV path")
    return parser


def parse_cli(argv: list[str]) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    command = ns.command
    if command == "chain":
        command = f"chain {ns.chain_command}"
    elif command == "algebra":
        command = f"algebra {ns.algebra_command}"
    for attr in ("max_degree", "relations_degree"):
        value = getattr(ns, attr, None)
        if value is not None and value < 1:
            parser.error(f"--{attr.replace('_', '-')} must be at least 1")
    if getattr(ns, "n", None) is not None and ns.n < 2:
        parser.error("--n must be at least 2")
    if getattr(ns, "dt", None) is not None and ns.dt <= 0:
        parser.error("--dt must be positive")
    if getattr(ns, "t", None) is not None and ns.t <= 0:
        parser.error("--t must be positive")
    return RunConfig(
        command=command,
        seed=getattr(ns, "seed", DEFAULT_SEED),
        threads=_env_threads(),
        out=getattr(ns, "out", None),
        options=ns,
    )


# ---------------------------------------------------------------------------
# input resolution


def load_algebra(spec: str) -> LieAlgebra:
    match = _SL_PATTERN.match(spec)
    if match:
        n = int(match.group(1))
        if n < 2:
            raise CliError("sl(n) needs n >= 2")
        if n > 12:
            raise CliError(
                "built-in sl(n) is capped at n = 12 on the command line; "
                "larger algebras can be supplied as structure-constant files"
            )
        return builtin_sl(n)
    path = Path(spec)
    if not path.exists():
        raise CliError(f"algebra {spec!r} is neither slN nor an existing file")
    import json

    try:
        return LieAlgebra.from_json(json.loads(path.read_text()))
    except (ValueError, KeyError) as exc:
        raise CliError(f"cannot parse algebra file {spec!r}: {exc}")


def load_subalgebra(spec: str, alg: LieAlgebra) -> SubalgebraSpec:
    if spec == "cartan":
        return cartan_subalgebra(alg)
    if spec == "full":
        return full_subalgebra(alg)
    path = Path(spec)
    if not path.exists():
        raise CliError(
            f"subalgebra {spec!r} is not cartan/full or an existing file"
        )
    import json

    try:
        sub = SubalgebraSpec.from_json(json.loads(path.read_text()))
    except (ValueError, KeyError) as exc:
        raise CliError(f"cannot parse subalgebra file {spec!r}: {exc}")
    report = validate_subalgebra(alg, sub)
    if not report.passed:
        bad = "; ".join(c.name for c in report.checks if not c.passed)
        raise CliError(f"subalgebra file {spec!r} failed validation: {bad}")
    return sub


def parse_shift(text: str, alg: LieAlgebra) -> tuple[Fraction, ...]:
    """Shift vectors: either a full coordinate vector or "h:" plus the
    coordinates along the flagged Cartan basis."""
    try:
        if text.startswith("h:"):
            values = [Fraction(v.strip()) for v in text[2:].split(",")]
            if not alg.cartan_indices:
                raise CliError("algebra has no flagged Cartan basis")
            if len(values) != len(alg.cartan_indices):
                raise CliError(
                    f"expected {len(alg.cartan_indices)} Cartan coordinates"
                )
            vec = [Fraction(0)] * alg.dim
            for idx, v in zip(alg.cartan_indices, values):
                vec[idx] = v
            return tuple(vec)
        values = [Fraction(v.strip()) for v in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise CliError(f"cannot parse shift {text!r}")
    if len(values) != alg.dim:
        raise CliError(f"shift needs {alg.dim} coordinates, got {len(values)}")
    return tuple(values)


def _load_generator_file(path_str: str, alg: LieAlgebra) -> GeneratorSet:
    import json

    path = Path(path_str)
    if not path.exists():
        raise CliError(f"generator file {path_str!r} does not exist")
    try:
        return GeneratorSet.from_json(json.loads(path.read_text()), alg)
    except (ValueError, KeyError) as exc:
        raise CliError(f"cannot parse generator file {path_str!r}: {exc}")


def emit_report(report: dict, path: str | None) -> None:
    text = dump_json(report)
    if path is None:
        sys.stdout.write(text)
    else:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise CliError(f"cannot write report to {path!r}: {exc}")


def _say(*lines: str) -> None:
    for line in lines:
        print(line)


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_algebra_check(cfg: RunConfig) -> int:
    alg = load_algebra(cfg.options.algebra)
    report = validate_algebra(alg)
    payload = {"algebra": alg.name, "dim": alg.dim, "validation": report.to_json()}
    for check in report.checks:
        _say(f"{check.name}: {'pass' if check.passed else 'FAIL'}"
             + (f" ({check.detail})" if check.detail and not check.passed else ""))
    emit_report(payload, cfg.out)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_commutant(cfg: RunConfig) -> int:
    ns = cfg.options
    alg = load_algebra(ns.algebra)
    sub = load_subalgebra(ns.subalgebra, alg)
    cap = ns.max_degree or chains.default_degree_cap(alg)
    gens = generate(alg, sub, cap)
    payload = gens.to_json()
    payload["subalgebra"] = sub.name
    _say(f"{len(gens)} generators up to degree {cap} "
         f"(kernel dims {gens.kernel_dims})")
    if not ns.skip_relations:
        budget = ns.relations_degree or 2 * cap
        relations = relation_basis(gens, budget)
        payload["relations"] = relations.to_json()
        _say(f"{len(relations.relations)} relation(s) up to weighted degree {budget}")
    if ns.closure:
        closure = bracket_closure_check(gens)
        payload["closure"] = closure.to_json()
        _say("bracket closure: " + ("pass" if closure.all_closed else "FAIL"))
    emit_report(payload, cfg.out)
    return EXIT_OK


def cmd_casimirs(cfg: RunConfig) -> int:
    ns = cfg.options
    alg = load_algebra(ns.algebra)
    cap = ns.max_degree or chains.default_degree_cap(alg)
    payload: dict = {"algebra": alg.name}
    code = EXIT_OK
    kernel_set = None
    if ns.method in ("kernel", "both"):
        kernel_set = casimirs_by_kernel(alg, cap)
        count = casimir_count_check(alg, cap, seed=cfg.seed, casimirs=kernel_set)
        payload["kernel"] = kernel_set.to_json()
        payload["count_check"] = count.to_json()
        _say(f"kernel route: {len(kernel_set)} generators, independent count "
             f"{count.independent_count} (expected {count.expected})")
        if not count.matches:
            code = EXIT_NEGATIVE
    if ns.method in ("trace", "both"):
        from .algebra import sl_size

        n = sl_size(alg)
        if n is None:
            raise CliError("the trace route requires a built-in sl(n) algebra")
        trace_set = trace_casimirs_sln(n, min(cap, n))
        payload["trace"] = trace_set.to_json()
        _say(f"trace route: {len(trace_set)} generators")
        if ns.method == "both" and kernel_set is not None:
            agree = True
            for g in trace_set.generators:
                if not membership(g.poly, kernel_set.gens, g.degree).found:
                    agree = False
            for g in kernel_set.generators:
                if not membership(g.poly, trace_set.gens, g.degree).found:
                    agree = False
            payload["routes_agree"] = agree
            _say("route agreement: " + ("pass" if agree else "FAIL"))
            if not agree:
                code = EXIT_NEGATIVE
    emit_report(payload, cfg.out)
    return code


def cmd_mf(cfg: RunConfig) -> int:
    ns = cfg.options
    alg = load_algebra(ns.algebra)
    mu = parse_shift(ns.shift, alg)
    cap = ns.max_degree or chains.default_degree_cap(alg)
    cas = casimirs_by_kernel(alg, cap)
    mf = mf_generators(cas, mu)
    commutativity = mf_commutativity_check(mf)
    rank = mf_rank_check(mf, seed=cfg.seed)
    payload = {
        "family": mf.to_json(),
        "commutativity": commutativity.to_json(),
        "rank_check": rank.to_json(),
    }
    _say(f"{len(mf.generators)} generators, shift "
         + ("regular" if mf.shift_regular else "NOT regular"),
         f"commutativity: {'pass' if commutativity.commutative else 'FAIL'}",
         f"independent count {rank.jacobian_rank} (target {rank.expected})")
    code = EXIT_OK if commutativity.commutative else EXIT_NEGATIVE
    if ns.subalgebra:
        sub = load_subalgebra(ns.subalgebra, alg)
        inclusion = mf_inclusion_check(mf, sub)
        sandwich = sandwich_check(cas, mf, sub, seed=cfg.seed)
        payload["inclusion"] = inclusion.to_json()
        payload["sandwich"] = sandwich.to_json()
        _say(f"inclusion into invariants: "
             f"{'yes' if inclusion.included else 'no'} "
             f"(routes agree: {inclusion.agree})")
        if not inclusion.agree:
            code = EXIT_NEGATIVE
    emit_report(payload, cfg.out)
    return code


def cmd_chain_verify(cfg: RunConfig) -> int:
    ns = cfg.options
    alg = load_algebra(ns.algebra)
    sub = load_subalgebra(ns.subalgebra, alg)
    cap = ns.max_degree or chains.default_degree_cap(alg)
    base_spec = ns.base
    if base_spec == "casimirs":
        intermediate = generate(alg, sub, cap)
        spec = ChainSpec(
            algebra=alg,
            subalgebra=sub,
            intermediate=intermediate,
            base=chains.casimir_base(alg, cap),
            base_kind="casimirs",
        )
        report = verify_chain(spec, seed=cfg.seed)
    elif base_spec == "moment-map":
        report = chains.moment_map_base(alg, sub, cap, seed=cfg.seed)
    elif base_spec.startswith("mf:"):
        mu = parse_shift(base_spec[3:], alg)
        report = chains.mf_chain(alg, sub, mu, cap, seed=cfg.seed)
    elif base_spec.startswith("file:"):
        base = _load_generator_file(base_spec[5:], alg)
        intermediate = generate(alg, sub, cap)
        spec = ChainSpec(
            algebra=alg,
            subalgebra=sub,
            intermediate=intermediate,
            base=base,
            base_kind="explicit",
        )
        report = verify_chain(spec, seed=cfg.seed)
    else:
        raise CliError(
            f"unknown base {base_spec!r}; use casimirs, moment-map, "
            "mf:<shift>, or file:<path>"
        )
    _say(f"verdict: {report.verdict}",
         f"trdeg intermediate {report.trdeg_intermediate} + base "
         f"{report.trdeg_base} vs dim {report.dim} "
         f"(identity {'holds' if report.dim_identity else 'fails'})",
         f"centrality: {'pass' if report.centrality.passed else 'FAIL'}; "
         f"d_A = {report.d_a}, rank = {report.rank}")
    emit_report(report.to_json(), cfg.out)
    return {
        "superintegrable": EXIT_OK,
        "not_superintegrable": EXIT_NEGATIVE,
        "inconclusive": EXIT_INCONCLUSIVE,
    }[report.verdict]


def cmd_cycles(cfg: RunConfig) -> int:
    ns = cfg.options
    census = cycles.enumerate_cycle_generators(ns.n)
    payload: dict = {"n": ns.n, "generators": census.to_json()}
    _say(f"{len(census)} generators for sl({ns.n})")
    code = EXIT_OK
    if ns.check in ("relations", "all"):
        families = cycles.relation_families_check(ns.n)
        payload["relations"] = families.to_json()
        _say("relation families: "
             + ("pass" if families.all_passed else "FAIL"))
        if not families.all_passed:
            code = EXIT_NEGATIVE
    if ns.check in ("oracle", "all"):
        oracle = cycles.oracle_cross_check(ns.n, ns.max_degree)
        payload["oracle"] = oracle.to_json()
        _say("kernel-vs-balance oracle: "
             + ("pass" if oracle.all_equal else "FAIL"))
        if not oracle.all_equal:
            code = EXIT_NEGATIVE
    emit_report(payload, cfg.out)
    return code


def _resolve_monitors(spec: str | None, alg: LieAlgebra):
    if spec is None:
        return []
    if spec == "auto:torus":
        gens = generate(alg, cartan_subalgebra(alg), chains.default_degree_cap(alg))
        return [(g.label, g.poly) for g in gens.generators]
    if spec == "auto:casimirs":
        cas = casimirs_by_kernel(alg, chains.default_degree_cap(alg))
        return [(g.label, g.poly) for g in cas.generators]
    gens = _load_generator_file(spec, alg)
    return [(g.label, g.poly) for g in gens.generators]


def cmd_flow(cfg: RunConfig) -> int:
    ns = cfg.options
    alg = load_algebra(ns.algebra)
    try:
        ham = parse_polynomial(ns.hamiltonian, alg.dim, alg.labels)
    except ValueError as exc:
        raise CliError(f"cannot parse Hamiltonian: {exc}")
    try:
        x0 = [float(v) for v in ns.x0.split(",")]
    except ValueError:
        raise CliError(f"cannot parse initial point {ns.x0!r}")
    if len(x0) != alg.dim:
        raise CliError(f"initial point needs {alg.dim} coordinates")
    monitors = _resolve_monitors(ns.monitor, alg)
    problem = FlowProblem(
        algebra=alg,
        hamiltonian=ham,
        x0=x0,
        t_final=ns.t,
        dt=ns.dt,
        monitors=monitors,
    )
    result = integrate(problem)
    if ns.csv:
        _write_trajectory_csv(ns.csv, alg, result)
    payload = {"algebra": alg.name, "flow": result.to_json()}
    worst = max(result.drifts, key=lambda k: result.drifts[k])
    _say(f"integrated {result.steps} steps of size {result.dt}",
         f"max drift {result.drifts[worst]:.3e} ({worst})")
    emit_report(payload, cfg.out)
    return EXIT_OK


def _write_trajectory_csv(path: str, alg: LieAlgebra, result) -> None:
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", *alg.labels, *result.monitor_labels])
            for t, state, values in zip(
                result.times, result.states, result.monitor_values
            ):
                writer.writerow([repr(t), *map(repr, state), *map(repr, values)])
    except OSError as exc:
        raise CliError(f"cannot write trajectory to {path!r}: {exc}")


_HANDLERS = {
    "algebra check": cmd_algebra_check,
    "commutant": cmd_commutant,
    "casimirs": cmd_casimirs,
    "mf": cmd_mf,
    "chain verify": cmd_chain_verify,
    "cycles": cmd_cycles,
    "flow": cmd_flow,
}


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        cfg = parse_cli(list(argv))
        return _HANDLERS[cfg.command](cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConfigurationError, ChainFormationError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FlowDivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
