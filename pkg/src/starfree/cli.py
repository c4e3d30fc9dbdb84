"""Command-line front end.

Exit codes: 0 success, 1 analysis refusal (wrong complexity class),
2 input error, 3 golden/fixture mismatch.
"""

import argparse
import sys

from .automata import Alphabet, parse_regex, parse_regex_file, parse_dfa_file
from .classifier import ComplexityClass, classify
from .corpus import builtin_fixtures, fixture_by_name, golden_text
from .decomposition import decompose, render_decomposition
from .engine import CostModel, analyze, cost_curve, curve_csv, decide, loglog_slope
from .errors import ClassRefusalError, StarfreeError
from .monoid import is_aperiodic, multiplication_table, render_ideals, syntactic_context
from .sensitivity import build_mask_automata, sensitivity_by_length

EXIT_OK = 0
EXIT_REFUSED = 1
EXIT_INPUT = 2
EXIT_GOLDEN = 3


def _add_input_flags(sub):
    sub.add_argument("--regex", help="regex text (needs --alphabet)")
    sub.add_argument("--alphabet", help="space-separated symbols for --regex")
    sub.add_argument("--regex-file", help="regex file with an alphabet: header")
    sub.add_argument("--dfa", help="DFA file path")
    sub.add_argument("--fixture", help="builtin fixture name")


def _load_language(args):
    from .automata import regex_to_dfa

    sources = [args.regex, args.regex_file, args.dfa, args.fixture]
    if sum(s is not None for s in sources) != 1:
        raise StarfreeError("exactly one of --regex/--regex-file/--dfa/--fixture")
    if args.regex is not None:
        if not args.alphabet:
            raise StarfreeError("--regex requires --alphabet")
        return regex_to_dfa(parse_regex(args.regex, Alphabet(args.alphabet.split())))
    if args.regex_file is not None:
        with open(args.regex_file) as fh:
            return regex_to_dfa(parse_regex_file(fh.read()))
    if args.dfa is not None:
        with open(args.dfa) as fh:
            return parse_dfa_file(fh.read())
    return fixture_by_name(args.fixture).dfa()


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args):
    report = classify(
        _load_language(args), monoid_cap=args.monoid_cap, block_cap=args.block_cap
    )
    if args.format == "records":
        lines = []
        for rec in report.records():
            lines.append(" ".join(f"{k}={v}" for k, v in rec.items()))
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(report.render(), args.out)
    return EXIT_OK


def cmd_decide(args):
    art = analyze(_load_language(args))
    word = art.report.source_dfa.alphabet.word(args.input)
    model = CostModel.IDEAL_GROVER if args.model == "grover" else CostModel.CLASSICAL
    verdict, ledger = decide(art, word, model)
    _emit(
        f"member: {str(verdict).lower()}\n"
        f"classical_reads: {ledger.classical_reads}\n"
        f"modeled_cost: {ledger.modeled_cost}\n",
        args.out,
    )
    return EXIT_OK


def cmd_decompose(args):
    ctx = syntactic_context(_load_language(args))
    if not is_aperiodic(ctx):
        raise ClassRefusalError("decomposition needs an aperiodic syntactic monoid")
    names = {ctx.rep_str(m): m for m in range(ctx.monoid.size)}
    if args.element not in names:
        raise StarfreeError(
            f"unknown element {args.element!r}; elements: {sorted(names)}"
        )
    sets = decompose(ctx, names[args.element])
    _emit(render_decomposition(ctx, sets), args.out)
    return EXIT_OK


def cmd_sensitivity(args):
    mask = build_mask_automata(_load_language(args), cap=args.mask_cap)
    profile = sensitivity_by_length(mask, args.n_max)
    _emit(profile.csv(), args.out)
    return EXIT_OK


def cmd_cost_curve(args):
    art = analyze(_load_language(args))
    lengths = []
    n = args.n_min
    while n <= args.n_max:
        lengths.append(n)
        n *= 2
    rows = cost_curve(art, lengths, samples_per_length=args.samples, seed=args.seed)
    _emit(curve_csv(rows), args.out)
    sys.stdout.write(f"modeled slope: {loglog_slope(rows):.3f}\n")
    return EXIT_OK


def cmd_fixtures(args):
    names = args.names or [f.name for f in builtin_fixtures()]
    failures = 0
    for name in names:
        fixture = fixture_by_name(name)
        report = classify(fixture.dfa())
        ok = report.aggregate == fixture.expected_class
        status = "ok" if ok else "MISMATCH"
        print(f"{fixture.name}: {report.aggregate.label} (expected {fixture.expected_class.label}) {status}")
        failures += not ok
        if fixture.golden and not args.skip_golden:
            ctx = syntactic_context(fixture.dfa())
            got = {
                "table": multiplication_table(ctx),
                "ideals": render_ideals(ctx),
            }
            names_map = {ctx.rep_str(m): m for m in range(ctx.monoid.size)}
            got["decomposition"] = render_decomposition(
                ctx, decompose(ctx, names_map["ab"])
            )
            for label, filename in fixture.golden.items():
                if golden_text(filename) != got[label]:
                    print(f"{fixture.name}: golden {label} MISMATCH")
                    failures += 1
    return EXIT_GOLDEN if failures else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="starfree",
        description="Classify regular languages by quantum query complexity and "
        "simulate the sqrt(n) star-free membership algorithm.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="tetrachotomy class per flattened component")
    _add_input_flags(p)
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.add_argument("--monoid-cap", type=int, default=None)
    p.add_argument("--block-cap", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decide", help="decide one word with query accounting")
    _add_input_flags(p)
    p.add_argument("--input", required=True, help="the word to decide")
    p.add_argument("--model", choices=("classical", "grover"), default="grover")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("decompose", help="E/F/G/C sets for one monoid element")
    _add_input_flags(p)
    p.add_argument("--element", required=True, help="element name (representative)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("sensitivity", help="sensitivity profile and dichotomy verdict")
    _add_input_flags(p)
    p.add_argument("--n-max", type=int, default=64)
    p.add_argument("--mask-cap", type=int, default=1_000_000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("cost-curve", help="query-cost scaling table (sqrt-n only)")
    _add_input_flags(p)
    p.add_argument("--n-min", type=int, default=256)
    p.add_argument("--n-max", type=int, default=16384)
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cost_curve)

    p = sub.add_parser("fixtures", help="run the golden fixture suite")
    p.add_argument("names", nargs="*", help="fixture names (default: all)")
    p.add_argument("--skip-golden", action="store_true")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ClassRefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (StarfreeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
