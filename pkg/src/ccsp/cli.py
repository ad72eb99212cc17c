"""``ccsp`` command line.

Exit codes: 0 success or decision YES, 1 decision NO (or a failed ``verify``),
2 usage or input error, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bench import TAGS, BenchConfig, records_to_csv, run_benchmark
from .cc_sp import CcSpInstance, solve_cc_sp
from .core import (
    FLOAT_TOL,
    RULES,
    ApprovalProfile,
    InvariantError,
    ProfileError,
    ThieleWeights,
    rule_sequence,
)
from .fileformat import ProfileFile, ProfileFileError, parse_profile_file, render_profile_file
from .gen import GenParams, gen_nearly_sp
from .nearly_sp import DeletionInstance, solve_cc_with_deletion_set, solve_thiele_with_deletion_set
from .oracle import BudgetExceeded
from .thiele_sp import solve_generalized_thiele_sp

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def exact(x) -> str:
    """Objective as text: integers and rationals exactly, floats by ``repr``."""
    if isinstance(x, float):
        return repr(x)
    return str(Fraction(x)) if not isinstance(x, int) else str(x)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str, out) -> None:
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _k(args, pf: ProfileFile) -> int:
    k = args.k if args.k is not None else pf.k
    if k is None:
        raise UsageError("committee size missing: pass --k or put 'k' in the header")
    return k


def _bound(args, pf: ProfileFile):
    if args.bound is None:
        return pf.bound
    text = args.bound
    try:
        return Fraction(text) if "/" in text else int(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            raise UsageError(f"--bound: not a number: {text!r}") from None


def _weights(args, pf: ProfileFile, length: int) -> ThieleWeights:
    if args.rule is not None:
        return ThieleWeights([rule_sequence(args.rule, length)] * pf.profile.n)
    if pf.weights is not None:
        return pf.weights
    return ThieleWeights.uniform("pav", pf.profile.n, length)


def _solve(args, out) -> int:
    pf = parse_profile_file(_read(args.input))
    k = _k(args, pf)
    bound = _bound(args, pf)
    problem = args.problem
    algorithm = None
    if problem in ("cc-sp", "cc-del"):
        profile = pf.misrep()
        algorithm = args.algorithm
        if problem == "cc-sp":
            if pf.deleted:
                raise UsageError("file has a deletion set; use 'solve cc-del'")
            result = solve_cc_sp(CcSpInstance(profile, pf.effective_axis(), k), algorithm)
        else:
            inst = DeletionInstance(profile, pf.deleted, pf.effective_axis(), k)
            result = solve_cc_with_deletion_set(inst, algorithm)
        tol = FLOAT_TOL if profile.mode == "float" else 0
        yes = None if bound is None else result.objective <= bound + tol
    else:
        if not isinstance(pf.profile, ApprovalProfile):
            raise UsageError(f"'solve {problem}' needs an approval file")
        weights = _weights(args, pf, max(k, pf.profile.m))
        if problem == "thiele-sp":
            if pf.deleted:
                raise UsageError("file has a deletion set; use 'solve thiele-del'")
            result = solve_generalized_thiele_sp(pf.profile, weights, pf.effective_axis(), k)
        else:
            inst = DeletionInstance(pf.profile, pf.deleted, pf.effective_axis(), k, weights)
            result = solve_thiele_with_deletion_set(inst)
        yes = None if bound is None else result.objective >= bound
    decision = None if yes is None else ("YES" if yes else "NO")
    if args.json:
        payload = {
            "problem": problem,
            "k": k,
            "committee": list(result.committee),
            "objective": exact(result.objective),
            "algorithm": algorithm,
            "bound": None if bound is None else exact(bound),
            "decision": decision,
        }
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(f"committee: {' '.join(map(str, result.committee))}\n")
        out.write(f"objective: {exact(result.objective)}\n")
        if decision is not None:
            out.write(f"decision: {decision}\n")
    return EXIT_NO if decision == "NO" else EXIT_OK


def _verify(args, out) -> int:
    pf = parse_profile_file(_read(args.input), validate=False)
    if args.property == "ci" and pf.kind != "approval":
        raise UsageError("'verify ci' needs an approval file")
    if args.property == "sp" and pf.kind == "approval":
        pf = ProfileFile("misrep", pf.misrep(), pf.axis, pf.deleted, pf.k, pf.bound)
    res = pf.check_structure()
    witness = res.witness
    if witness is not None and args.property == "sp":
        v, triple = witness
        keep = pf.kept
        witness = [v + 1, [keep[c - 1] for c in triple]]
    elif witness is not None:
        witness = witness + 1
    if args.json:
        out.write(json.dumps({"property": args.property, "ok": bool(res), "witness": witness}) + "\n")
    else:
        out.write("ok\n" if res else f"violated; witness {witness}\n")
    return EXIT_OK if res else EXIT_NO


def _gen(args, out) -> int:
    kind = args.kind
    if args.what == "ci":
        kind = "approval"
    elif args.what == "sp":
        kind = "misrep"
    d = args.d if args.what == "nearly" else 0
    params = GenParams(
        args.n, args.m, seed=args.seed, value_cap=args.value_cap,
        tie_probability=args.tie_probability, d=d,
        empty_probability=args.empty_probability, max_interval=args.max_interval,
    )
    profile, axis, deleted = gen_nearly_sp(params, kind=kind)
    weights = rule = None
    if kind == "approval" and args.rule is not None:
        rule = args.rule
        weights = ThieleWeights.uniform(rule, args.n, args.m)
    pf = ProfileFile(kind, profile, axis, deleted, args.k, None, weights, rule)
    _write(args.output, render_profile_file(pf), out)
    return EXIT_OK


def _bench(args, out) -> int:
    tags = tuple(t.strip() for t in args.tags.split(",")) if args.tags else tuple(TAGS)
    config = BenchConfig(
        args.n, args.m, args.k, seeds=args.seeds, tags=tags, base_seed=args.seed,
        repeats=args.repeats,
    )
    _write(args.output, records_to_csv(run_benchmark(config)), out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ccsp", description="Exact CC and Thiele committees on single-peaked profiles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    solve = sub.add_parser("solve", help="compute an optimal committee")
    solve.add_argument("problem", choices=("cc-sp", "cc-del", "thiele-sp", "thiele-del"))
    solve.add_argument("--input", required=True, help="profile file, '-' for stdin")
    solve.add_argument("--k", type=int, help="committee size (overrides the file)")
    solve.add_argument(
        "--bound", help="decision bound: misrepresentation at most R (CC) or utility at least R (Thiele)"
    )
    solve.add_argument("--algorithm", choices=("smawk", "dc", "naive"), default="smawk")
    solve.add_argument("--rule", choices=RULES, help="Thiele weights for every voter (overrides the file)")
    solve.add_argument("--json", action="store_true")
    solve.set_defaults(run=_solve)

    verify = sub.add_parser("verify", help="check single-peakedness or candidate intervals")
    verify.add_argument("property", choices=("sp", "ci"))
    verify.add_argument("--input", required=True)
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(run=_verify)

    gen = sub.add_parser("gen", help="write a seeded random instance")
    gen.add_argument("what", choices=("sp", "ci", "nearly"))
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--m", type=int, required=True)
    gen.add_argument("--k", type=int)
    gen.add_argument("--d", type=int, default=1, help="deletion-set size for 'nearly'")
    gen.add_argument("--kind", choices=("misrep", "approval"), default="misrep", help="for 'nearly'")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--value-cap", type=int)
    gen.add_argument("--tie-probability", type=float, default=0.2)
    gen.add_argument("--empty-probability", type=float, default=0.1)
    gen.add_argument("--max-interval", type=int)
    gen.add_argument("--rule", choices=RULES, help="weights line for approval files")
    gen.add_argument("--output")
    gen.set_defaults(run=_gen)

    bench = sub.add_parser("bench", help="time the CC solvers on generated SP instances (CSV)")
    bench.add_argument("--n", type=int, required=True)
    bench.add_argument("--m", type=int, required=True)
    bench.add_argument("--k", type=int, required=True)
    bench.add_argument("--seeds", type=int, default=1)
    bench.add_argument("--seed", type=int, default=0, help="first seed")
    bench.add_argument("--tags", help=f"comma-separated subset of {','.join(TAGS)}")
    bench.add_argument("--repeats", type=int, default=1)
    bench.add_argument("--output")
    bench.set_defaults(run=_bench)
    return parser


def run_command(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    except InvariantError as exc:
        err.write(f"ccsp: internal invariant failed: {exc}\n")
        return EXIT_INVARIANT
    except (UsageError, ProfileFileError, ProfileError, BudgetExceeded, OSError, ValueError) as exc:
        err.write(f"ccsp: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
