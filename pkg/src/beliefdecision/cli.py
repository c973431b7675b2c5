"""Command-line front end.

Commands: ``rank`` (complete criteria), ``choice`` (choice-set rules),
``sweep`` (parameter grids as CSV), ``goals`` (goal-based scoring) and
``transform`` (probability transforms of a mass file). Output is
deterministic: acts keep file order, ties break by file order, no
timestamps. Exit codes: 0 success, 1 usage error, 2 validation error,
3 solver failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .core import Frame, MassFunction, pignistic, plausibility_transform
from .criteria import (
    LocalPessimismIndex,
    generalized_hurwicz,
    generalized_minimax_regret,
    generalized_owa_expected_utility,
    jaffray_utility,
    lower_expectation,
    pignistic_expected_utility,
    upper_expectation,
)
from .errors import BeliefDecisionError, FrameMismatchError, SolverError, ValidationError
from .goals import GoalSystem, classification_scores, deterministic_score, expected_score, goal_audit
from .ignorance import (
    OwaWeights,
    max_entropy_owa_weights,
    minimax_regret,
    owa_aggregate,
    prune_dominated,
    score_ignorance,
)
from .previsions import e_admissible_set, maximality_relation
from .problems import DecisionProblem, parse_mass, parse_problem_dict
from .relations import (
    interval_bound_dominance,
    interval_dominance_choice,
    maximal_elements,
)

RANK_CRITERIA = (
    "maximin",
    "maximax",
    "hurwicz",
    "laplace",
    "regret",
    "lower",
    "upper",
    "ghurwicz",
    "pignistic",
    "gowa",
    "gregret",
    "jaffray",
)
CHOICE_RULES = (
    "interval-dominance",
    "interval-bound",
    "maximality",
    "e-admissibility",
    "prune-dominated",
)
SWEEP_CRITERIA = ("hurwicz", "ghurwicz", "owa", "gowa")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 on usage problems, not argparse's 2
        raise UsageError(message)


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _load_json(path: str) -> Any:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ValidationError(f"cannot read {path!r}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON: {exc}") from None


def _load_problem(path: str) -> DecisionProblem:
    return parse_problem_dict(_load_json(path))


def _ranks(scores: Sequence[float], *, lower_better: bool = False) -> list[int]:
    out = []
    for s in scores:
        better = sum(1 for t in scores if (t < s if lower_better else t > s))
        out.append(1 + better)
    return out


def _rank_scores(problem: DecisionProblem, args) -> tuple[list[float], bool]:
    """Per-act scores in file order plus whether lower is better."""
    criterion = args.criterion

    def need_alpha() -> float:
        if args.alpha is None:
            raise UsageError(f"criterion {criterion!r} needs --alpha")
        return args.alpha

    def need_beta() -> float:
        if args.beta is None:
            raise UsageError(f"criterion {criterion!r} needs --beta")
        return args.beta

    if criterion in ("maximin", "maximax", "laplace"):
        return list(score_ignorance(problem.payoff_matrix(), criterion)), False
    if criterion == "hurwicz":
        return list(score_ignorance(problem.payoff_matrix(), "hurwicz", need_alpha())), False
    if criterion == "regret":
        _, max_regret = minimax_regret(problem.payoff_matrix())
        return list(max_regret), True
    if criterion == "gregret":
        scores = generalized_minimax_regret(problem.payoff_matrix(), problem.require_mass())
        return list(scores), True

    lotteries = [problem.lottery(i) for i in range(problem.n_acts)]
    if criterion == "lower":
        return [lower_expectation(mu, u) for mu, u in lotteries], False
    if criterion == "upper":
        return [upper_expectation(mu, u) for mu, u in lotteries], False
    if criterion == "ghurwicz":
        alpha = need_alpha()
        return [generalized_hurwicz(mu, u, alpha) for mu, u in lotteries], False
    if criterion == "pignistic":
        return [pignistic_expected_utility(mu, u) for mu, u in lotteries], False
    if criterion == "gowa":
        beta = need_beta()
        return [generalized_owa_expected_utility(mu, u, beta) for mu, u in lotteries], False
    if criterion == "jaffray":
        index = _jaffray_index(problem, args)
        return [jaffray_utility(mu, u, index) for mu, u in lotteries], False
    raise UsageError(f"unknown criterion {criterion!r}")


def _jaffray_index(problem: DecisionProblem, args) -> LocalPessimismIndex:
    if args.index_file is not None:
        doc = _load_json(args.index_file)
        if not isinstance(doc, list):
            raise ValidationError("index file must be a JSON list of pair entries")
        if problem.consequences is None:
            raise ValidationError(
                "a pessimism-index table needs declared consequences in the problem file"
            )
        table = {}
        for pos, entry in enumerate(doc):
            if not isinstance(entry, dict) or not {"worst", "best", "alpha"} <= set(entry):
                raise ValidationError(
                    f"index entry {pos} needs 'worst', 'best' and 'alpha' fields"
                )
            table[(entry["worst"], entry["best"])] = float(entry["alpha"])
        try:
            return LocalPessimismIndex(table)
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
    if args.alpha is not None:
        return LocalPessimismIndex.constant(args.alpha)
    raise UsageError("criterion 'jaffray' needs --alpha or --index-file")


def cmd_rank(args) -> int:
    problem = _load_problem(args.problem)
    if args.emit_normalized:
        print(json.dumps(problem.to_dict(), indent=2))
        return 0
    scores, lower_better = _rank_scores(problem, args)
    ranks = _ranks(scores, lower_better=lower_better)
    order = sorted(range(problem.n_acts), key=lambda i: (ranks[i], i))
    if args.format == "json":
        doc = {
            "criterion": args.criterion,
            "results": [
                {"act": problem.act_names[i], "score": scores[i], "rank": ranks[i]}
                for i in order
            ],
        }
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        print("act,score,rank")
        for i in order:
            print(f"{problem.act_names[i]},{scores[i]!r},{ranks[i]}")
    else:
        for i in order:
            print(f"{problem.act_names[i]}  {_fmt(scores[i])}  {ranks[i]}")
    return 0


def _expectation_bounds(problem: DecisionProblem) -> tuple[list[float], list[float]]:
    lotteries = [problem.lottery(i) for i in range(problem.n_acts)]
    lowers = [lower_expectation(mu, u) for mu, u in lotteries]
    uppers = [upper_expectation(mu, u) for mu, u in lotteries]
    return lowers, uppers


def cmd_choice(args) -> int:
    problem = _load_problem(args.problem)
    if args.emit_normalized:
        print(json.dumps(problem.to_dict(), indent=2))
        return 0
    names = problem.act_names
    extra_text: list[str] = []
    extra_json: dict[str, Any] = {}

    if args.rule == "prune-dominated":
        surviving, pairs = prune_dominated(problem.payoff_matrix())
        chosen = surviving
        extra_text = [f"{names[i]} dominated by {names[k]}" for i, k in pairs]
        extra_json["dominance"] = [
            {"dominated": names[i], "dominator": names[k]} for i, k in pairs
        ]
    elif args.rule == "interval-dominance":
        lowers, uppers = _expectation_bounds(problem)
        chosen = interval_dominance_choice(lowers, uppers)
    elif args.rule == "interval-bound":
        lowers, uppers = _expectation_bounds(problem)
        chosen = maximal_elements(interval_bound_dominance(lowers, uppers))
    elif args.rule == "maximality":
        delta, _, chosen = maximality_relation(problem.gambles(), problem.require_mass())
        header = "  ".join(names)
        extra_text.append(f"lower previsions of differences (rows minus columns): {header}")
        for i, row in enumerate(delta):
            cells = "  ".join("." if i == j else _fmt(v) for j, v in enumerate(row))
            extra_text.append(f"{names[i]}: {cells}")
        extra_json["delta"] = [
            [None if i == j else row[j] for j in range(len(row))] for i, row in enumerate(delta)
        ]
    elif args.rule == "e-admissibility":
        chosen, witnesses = e_admissible_set(
            problem.gambles(), problem.require_mass(), tol=args.tolerance
        )
        for i in chosen:
            w = "  ".join(
                f"{s}={_fmt(p)}" for s, p in zip(problem.states.labels, witnesses[i])
            )
            extra_text.append(f"witness for {names[i]}: {w}")
        extra_json["witnesses"] = {
            names[i]: list(witnesses[i]) for i in chosen
        }
    else:
        raise UsageError(f"unknown rule {args.rule!r}")

    chosen_names = [names[i] for i in chosen]
    if args.format == "json":
        doc = {"rule": args.rule, "choice_set": chosen_names, **extra_json}
        print(json.dumps(doc, indent=2))
    elif args.format == "csv":
        print("act")
        for name in chosen_names:
            print(name)
    else:
        print("choice set: " + " ".join(chosen_names))
        for line in extra_text:
            print(line)
    return 0


def cmd_sweep(args) -> int:
    problem = _load_problem(args.problem)
    if args.emit_normalized:
        print(json.dumps(problem.to_dict(), indent=2))
        return 0
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    if not (0.0 <= args.start <= args.stop <= 1.0):
        raise UsageError("need 0 <= --from <= --to <= 1")
    param = "alpha" if args.criterion in ("hurwicz", "ghurwicz") else "beta"
    grid = [
        args.stop if k == args.steps - 1
        else args.start + (args.stop - args.start) * k / (args.steps - 1)
        for k in range(args.steps)
    ]

    def scores_at(value: float) -> list[float]:
        if args.criterion == "hurwicz":
            return list(score_ignorance(problem.payoff_matrix(), "hurwicz", value))
        if args.criterion == "owa":
            matrix = problem.payoff_matrix()
            weights = (
                max_entropy_owa_weights(matrix.n_states, value)
                if matrix.n_states > 1
                else OwaWeights((1.0,))
            )
            return [owa_aggregate(row, weights) for row in matrix.utilities]
        lotteries = [problem.lottery(i) for i in range(problem.n_acts)]
        if args.criterion == "ghurwicz":
            return [generalized_hurwicz(mu, u, value) for mu, u in lotteries]
        return [generalized_owa_expected_utility(mu, u, value) for mu, u in lotteries]

    rows = [[value] + scores_at(value) for value in grid]
    print(",".join([param] + list(problem.act_names)))
    for row in rows:
        print(",".join(f"{v!r}" for v in row))
    return 0


def _parse_goal_file(doc: Any) -> tuple[GoalSystem, list[tuple[str, Any]]]:
    if not isinstance(doc, dict):
        raise ValidationError("goal file must contain a JSON object")
    if "theta" not in doc or not isinstance(doc["theta"], list) or not doc["theta"]:
        raise ValidationError("goal file needs a non-empty 'theta' label list")
    frame = Frame(tuple(doc["theta"]))
    goals_doc = doc.get("goals")
    if not isinstance(goals_doc, list) or not goals_doc:
        raise ValidationError("goal file needs a non-empty 'goals' list")
    goals, weights = [], []
    for pos, entry in enumerate(goals_doc):
        if not isinstance(entry, dict) or "elements" not in entry:
            raise ValidationError(f"goals[{pos}] must be an object with 'elements'")
        try:
            goals.append(frame.subset(entry["elements"]))
        except FrameMismatchError as exc:
            raise ValidationError(f"goals[{pos}]: {exc}") from None
        weights.append(float(entry.get("weight", 1.0)))
    try:
        system = GoalSystem(frame, goals, weights)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None

    effects: list[tuple[str, Any]] = []
    for pos, entry in enumerate(doc.get("acts", [])):
        if not isinstance(entry, dict) or "name" not in entry:
            raise ValidationError(f"acts[{pos}] must be an object with a 'name'")
        if ("certain" in entry) == ("mass" in entry):
            raise ValidationError(
                f"act {entry['name']!r} must give either 'certain' or 'mass'"
            )
        if "certain" in entry:
            try:
                mask = frame.subset(entry["certain"])
            except FrameMismatchError as exc:
                raise ValidationError(f"act {entry['name']!r}: {exc}") from None
            if mask == 0:
                raise ValidationError(f"act {entry['name']!r} has an empty certain effect")
            effects.append((entry["name"], mask))
        else:
            effects.append(
                (entry["name"], parse_mass(entry["mass"], frame, where=f"acts[{pos}].mass"))
            )
    return system, effects


def cmd_goals(args) -> int:
    doc = _load_json(args.goalfile)
    if args.mode == "classify":
        if not isinstance(doc, dict) or "classes" not in doc:
            raise ValidationError("classification needs 'classes', 'mass' and 'weights'")
        frame = Frame(tuple(doc["classes"]))
        if "mass" not in doc or "weights" not in doc:
            raise ValidationError("classification needs 'classes', 'mass' and 'weights'")
        m = parse_mass(doc["mass"], frame)
        weights = doc["weights"]
        if not isinstance(weights, list) or len(weights) != frame.size:
            raise ValidationError(f"'weights' must list {frame.size} numbers")
        try:
            scores, _, _ = classification_scores(m, [float(w) for w in weights])
        except ValueError as exc:
            raise ValidationError(str(exc)) from None
        masks = list(scores)
        ranks = _ranks([scores[c] for c in masks])
        if args.format == "json":
            doc_out = {
                "scores": [
                    {
                        "subset": list(frame.members(c)),
                        "score": scores[c],
                        "rank": ranks[k],
                    }
                    for k, c in enumerate(masks)
                ]
            }
            print(json.dumps(doc_out, indent=2))
        else:
            for k, c in enumerate(masks):
                label = "{" + ",".join(frame.members(c)) + "}"
                print(f"{label}  {_fmt(scores[c])}  {ranks[k]}")
            by_rank = sorted(range(len(masks)), key=lambda k: (ranks[k], k))
            pieces = []
            for pos, k in enumerate(by_rank):
                if pos:
                    pieces.append("~" if ranks[k] == ranks[by_rank[pos - 1]] else ">")
                pieces.append("{" + ",".join(frame.members(masks[k])) + "}")
            print("order: " + " ".join(pieces))
        return 0

    system, effects = _parse_goal_file(doc)
    if args.mode == "audit":
        consistent, monotonic = goal_audit(system)
        if args.format == "json":
            print(json.dumps({"consistent": consistent, "monotonic": monotonic}, indent=2))
        else:
            print(f"consistent: {str(consistent).lower()}")
            print(f"monotonic: {str(monotonic).lower()}")
        return 0

    # score mode
    if not effects:
        raise ValidationError("score mode needs an 'acts' list with effects")
    results = []
    for name, effect in effects:
        if isinstance(effect, MassFunction):
            score = expected_score(system, effect).score
            results.append({"act": name, "score": score, "kind": "expected"})
        else:
            parts = deterministic_score(system, effect)
            results.append(
                {
                    "act": name,
                    "score": parts.score,
                    "kind": "certain",
                    "achieved_weight": parts.achieved_weight,
                    "precluded_weight": parts.precluded_weight,
                }
            )
    if args.format == "json":
        print(json.dumps({"results": results}, indent=2))
    else:
        for r in results:
            print(f"{r['act']}  {_fmt(r['score'])}  ({r['kind']})")
    return 0


def cmd_transform(args) -> int:
    doc = _load_json(args.massfile)
    if not isinstance(doc, dict) or "frame" not in doc or "mass" not in doc:
        raise ValidationError("mass file needs 'frame' and 'mass' fields")
    frame = Frame(tuple(doc["frame"]))
    m = parse_mass(doc["mass"], frame)
    vector = pignistic(m) if args.kind == "pignistic" else plausibility_transform(m)
    if args.format == "json":
        print(json.dumps({label: p for label, p in zip(frame.labels, vector)}, indent=2))
    elif args.format == "csv":
        print("element,probability")
        for label, p in zip(frame.labels, vector):
            print(f"{label},{p!r}")
    else:
        for label, p in zip(frame.labels, vector):
            print(f"{label}  {_fmt(p)}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="beliefdec", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json", "csv"), default="text", help="output format"
    )
    common.add_argument(
        "--tolerance",
        type=float,
        default=1e-8,
        help="feasibility tolerance for the e-admissibility verdict",
    )
    problem_common = argparse.ArgumentParser(add_help=False)
    problem_common.add_argument("problem", help="problem file path, or - for stdin")
    problem_common.add_argument(
        "--emit-normalized",
        action="store_true",
        help="print the parsed problem in canonical form and exit",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p_rank = sub.add_parser("rank", parents=[common, problem_common],
                            help="score and rank all acts under one criterion")
    p_rank.add_argument("--criterion", choices=RANK_CRITERIA, required=True)
    p_rank.add_argument("--alpha", type=float, help="pessimism index in [0, 1]")
    p_rank.add_argument("--beta", type=float, help="degree of optimism in [0, 1]")
    p_rank.add_argument("--index-file", help="JSON table of per-pair pessimism indices")
    p_rank.set_defaults(func=cmd_rank)

    p_choice = sub.add_parser("choice", parents=[common, problem_common],
                              help="compute the choice set of a partial-order rule")
    p_choice.add_argument("--rule", choices=CHOICE_RULES, required=True)
    p_choice.set_defaults(func=cmd_choice)

    p_sweep = sub.add_parser("sweep", parents=[common, problem_common],
                             help="CSV of scores over a parameter grid")
    p_sweep.add_argument("--criterion", choices=SWEEP_CRITERIA, required=True)
    p_sweep.add_argument("--from", dest="start", type=float, default=0.0)
    p_sweep.add_argument("--to", dest="stop", type=float, default=1.0)
    p_sweep.add_argument("--steps", type=int, default=101)
    p_sweep.set_defaults(func=cmd_sweep)

    p_goals = sub.add_parser("goals", parents=[common],
                             help="audit, score or classify with a goal file")
    p_goals.add_argument("goalfile", help="goal file path, or - for stdin")
    p_goals.add_argument("--mode", choices=("audit", "score", "classify"), required=True)
    p_goals.set_defaults(func=cmd_goals)

    p_transform = sub.add_parser("transform", parents=[common],
                                 help="probability transform of a mass file")
    p_transform.add_argument("massfile", help="mass file path, or - for stdin")
    p_transform.add_argument("--kind", choices=("pignistic", "plausibility"), required=True)
    p_transform.set_defaults(func=cmd_transform)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, BeliefDecisionError, ValueError, KeyError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
