"""``mkfa``: evaluate, construct, verify and probe MK-fuzzy automata.

Exit codes: 0 success, 1 parse error (files, words, formulas, expressions),
2 validation or precondition failure, 3 foreign letter in a word.  ``verify``
exits 1 when an asserted invariant fails; ``probe`` always exits 0 on a
completed search.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections import Counter

from . import constructs as C
from . import harness
from .fclassic import AlphabetMismatchError, ForeignLetterError, Nfa
from .kvalues import TruthValueError, format_truth, parse_truth
from .langops import ExprSyntaxError, evaluate, load_hom, parse_expr
from .logic import (FormulaSyntaxError, NotRestrictedError, automaton_to_rmso, is_rmso,
                    mk_eval, parse_mk, parse_mso, rmso_to_automaton, to_text)
from .logic.semantics import UnboundVariableError
from .mkauto import MkAutomaton, behavior, validate
from .textfmt import FormatError, dump_automaton, dump_classical, load_automaton, parse_word

EXIT_PARSE, EXIT_INVALID, EXIT_FOREIGN = 1, 2, 3


class CliError(Exception):
    def __init__(self, msg: str, code: int):
        super().__init__(msg)
        self.code = code


# -- loading -------------------------------------------------------------------

def _load(path: str):
    try:
        m = load_automaton(path)
    except FormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}", EXIT_PARSE)
    if isinstance(m, MkAutomaton):
        problems = validate(m)
        if problems:
            raise CliError(f"{path}: invalid automaton: " + "; ".join(problems), EXIT_INVALID)
    return m


def _load_mk(path: str) -> MkAutomaton:
    m = _load(path)
    if not isinstance(m, MkAutomaton):
        raise CliError(f"{path}: expected 'kind mk'", EXIT_INVALID)
    return m


def _load_classical(path: str) -> Nfa:
    m = _load(path)
    if isinstance(m, MkAutomaton):
        raise CliError(f"{path}: expected 'kind classical'", EXIT_INVALID)
    return m


def _truth(text: str):
    try:
        return parse_truth(text)
    except (ValueError, TruthValueError) as exc:
        raise CliError(f"bad truth value {text!r}: {exc}", EXIT_PARSE)


def _word(text: str, alphabet):
    try:
        w = parse_word(text, alphabet)
    except FormatError as exc:
        raise CliError(f"bad word {text!r}: {exc}", EXIT_PARSE)
    known = set(alphabet)
    for x in w:
        if x not in known:
            raise CliError(f"letter {x!s} is not in the alphabet", EXIT_FOREIGN)
    return w


def _print_value(k, out=None):
    out = out or sys.stdout
    print(f"exact   {format_truth(k)}", file=out)
    print(f"decimal {format_truth(k, decimal=True)}", file=out)


# -- commands ------------------------------------------------------------------

def cmd_eval(args) -> int:
    if args.expr:
        try:
            x = parse_expr(args.target, base_dir=os.getcwd(), loader=_load)
        except (ExprSyntaxError, FormatError) as exc:
            raise CliError(f"expression: {exc}", EXIT_PARSE)
        except (AlphabetMismatchError, ValueError) as exc:
            raise CliError(f"expression: {exc}", EXIT_INVALID)
        value = evaluate(x, _word(args.word, x.alphabet))
    else:
        a = _load_mk(args.target)
        value = behavior(a, _word(args.word, a.alphabet))
    _print_value(value)
    return 0


def _construct(args) -> object:
    op, ins = args.op.replace("-", "_"), args.inputs

    def need(n):
        if len(ins) != n:
            raise CliError(f"construct {args.op} takes {n} argument(s)", EXIT_PARSE)

    if op == "disjunction":
        if len(ins) < 2:
            raise CliError("construct disjunction takes at least 2 automata", EXIT_PARSE)
        return C.disjunction(*map(_load_mk, ins))
    if op == "char":
        need(1)
        return C.char_automaton(_load_classical(ins[0]))
    if op == "conj_char":
        need(2)
        return C.conj_char(_load_classical(ins[0]), _load_mk(ins[1]))
    if op in ("hom", "hom_image"):
        need(2)
        a = _load_mk(ins[1])
        return C.hom_image(a, load_hom(ins[0]))
    if op in ("invhom", "inv_hom"):
        need(2)
        a = _load_mk(ins[1])
        return C.inv_hom(a, load_hom(ins[0], target=a.alphabet))
    if op == "scalar_left":
        need(2)
        res = C.scalar_left(_truth(ins[0]), _load_mk(ins[1]))
        if res.discrepant:
            print(f"note: words without an accepting path yield ZERO here, while "
                  f"k conj ZERO = {format_truth(res.dead_value)}", file=sys.stderr)
        return res.automaton
    if op == "scalar_right":
        need(2)
        return C.scalar_right(_load_mk(ins[0]), _truth(ins[1]))
    if op == "scalar_right_normalized":
        need(2)
        return C.scalar_right_normalized(_load_mk(ins[0]), _truth(ins[1]))
    if op == "normalize":
        need(1)
        return C.normalize(_load_mk(ins[0]))
    if op == "in_ter_one":
        need(1)
        return C.in_ter_one(_load_mk(ins[0]))
    if op == "cauchy":
        need(2)
        return C.cauchy(_load_mk(ins[0]), _load_mk(ins[1]))
    if op in ("support", "strong_support"):
        need(1)
        return C.strong_support(_load_mk(ins[0]))
    if op == "nivat":
        need(1)
        return C.nivat_compose(C.nivat_decompose(_load_mk(ins[0])))
    if op == "nivat_language":
        need(1)
        return C.nivat_decompose(_load_mk(ins[0])).language
    if op == "trim":
        need(1)
        return _load_mk(ins[0]).trim()
    raise CliError(f"unknown construction {args.op!r}", EXIT_PARSE)


CONSTRUCTIONS = ("disjunction", "char", "conj_char", "hom", "invhom", "scalar_left",
                 "scalar_right", "scalar_right_normalized", "normalize", "in_ter_one",
                 "cauchy", "support", "nivat", "nivat_language", "trim")


def cmd_construct(args) -> int:
    try:
        out = _construct(args)
    except (C.ConstructionError, AlphabetMismatchError) as exc:
        raise CliError(str(exc), EXIT_INVALID)
    except ExprSyntaxError as exc:
        raise CliError(str(exc), EXIT_PARSE)
    sys.stdout.write(dump_automaton(out) if isinstance(out, MkAutomaton) else dump_classical(out))
    return 0


def _emit(report, fmt: str, show: bool):
    if fmt == "records":
        print(report.record())
    elif show:
        print(report.text())


def cmd_verify(args) -> int:
    names = list(harness.SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in names:
        counts: Counter = Counter()
        n = 0
        for r in harness.run_suite(name, args.seed, args.trials, args.maxlen):
            n += 1
            counts[r.verdict] += 1
            _emit(r, args.format, r.verdict != harness.MATCH)
        summary = harness.RunSummary(name, args.seed, n, counts)
        print(summary.record() if args.format == "records" else summary.text())
        failed |= summary.failed
    return 1 if failed else 0


def cmd_probe(args) -> int:
    counts: Counter = Counter()
    n = 0
    stop = None if args.all else 1
    for r in harness.run_probe(args.gap, args.seed, args.budget, args.maxlen, stop):
        n += 1
        counts[r.verdict] += 1
        _emit(r, args.format, r.verdict != harness.MATCH)
    summary = harness.RunSummary(args.gap, args.seed, n, counts)
    if args.format == "records":
        print(summary.record())
    else:
        print(summary.text())
        if not counts[harness.COUNTEREXAMPLE]:
            print(f"no counterexample within a budget of {args.budget} trials")
    return 0


def _formula(text: str, mso: bool = False):
    try:
        return parse_mso(text) if mso else parse_mk(text)
    except FormulaSyntaxError as exc:
        raise CliError(f"formula: {exc}", EXIT_PARSE)


def _read_arg(text: str | None) -> str:
    if text is None or text == "-":
        return sys.stdin.read()
    return text


def _assignment(items, word_len: int) -> dict:
    sigma = {}
    for item in items or ():
        name, _, val = item.partition("=")
        if not name or not _:
            raise CliError(f"bad assignment {item!r}; use x=2 or X=0,1", EXIT_PARSE)
        try:
            if name[0].isupper():
                sigma[name] = frozenset(int(v) for v in val.split(",") if v.strip())
            else:
                sigma[name] = int(val)
        except ValueError:
            raise CliError(f"bad assignment {item!r}", EXIT_PARSE)
    return sigma


def cmd_logic(args) -> int:
    sub = args.sub
    if sub == "parse":
        print(to_text(_formula(_read_arg(args.formula).strip(), args.mso)))
        return 0
    if sub == "eval":
        f = _formula(args.formula)
        alphabet = args.alphabet.split(",")
        w = _word(args.word, alphabet)
        try:
            value = mk_eval(f, w, _assignment(args.assign, len(w)))
        except UnboundVariableError as exc:
            raise CliError(str(exc), EXIT_INVALID)
        _print_value(value)
        return 0
    if sub == "compile":
        f = _formula(args.formula)
        variables = [v for v in (args.vars or "").split(",") if v]
        try:
            a = rmso_to_automaton(f, variables, args.alphabet.split(","))
        except (NotRestrictedError, ValueError) as exc:
            raise CliError(str(exc), EXIT_INVALID)
        sys.stdout.write(dump_automaton(a))
        return 0
    if sub == "decompile":
        print(to_text(automaton_to_rmso(_load_mk(args.file)).formula))
        return 0
    if sub == "check-rmso":
        f = _formula(_read_arg(args.formula).strip())
        ok, problems = is_rmso(f)
        if ok:
            print("RMSO")
            return 0
        for where, msg in problems:
            print(f"not RMSO at {where}: {msg}")
        return EXIT_INVALID
    raise CliError(f"unknown logic subcommand {sub!r}", EXIT_PARSE)


# -- argument parsing -------------------------------------------------------------

def _common(defaults: bool) -> argparse.ArgumentParser:
    # the global flags are accepted before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=d(0), help="random seed (default 0)")
    p.add_argument("--maxlen", type=int, default=d(5), help="longest word checked (default 5)")
    p.add_argument("--trials", type=int, default=d(None),
                   help="instances per suite (suite-specific default)")
    p.add_argument("--budget", type=int, default=d(1000), help="probe trial budget")
    p.add_argument("--format", choices=("text", "records"), default=d("text"))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common(False)
    ap = argparse.ArgumentParser(prog="mkfa", parents=[_common(True)],
                                 description="MK-fuzzy automata over truth quadruples.")
    sp = ap.add_subparsers(dest="command", required=True)

    p = sp.add_parser("eval", parents=[common], help="value of an automaton or expression")
    p.add_argument("target", help="automaton file, or an expression with --expr")
    p.add_argument("word", help="word; '' or ε for the empty word")
    p.add_argument("--expr", action="store_true", help="treat TARGET as a language expression")
    p.set_defaults(func=cmd_eval)

    p = sp.add_parser("construct", parents=[common], help="build an automaton")
    p.add_argument("op", help="one of: " + ", ".join(CONSTRUCTIONS))
    p.add_argument("inputs", nargs="*")
    p.set_defaults(func=cmd_construct)

    p = sp.add_parser("verify", parents=[common], help="run an invariant suite")
    p.add_argument("suite", choices=list(harness.SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)

    p = sp.add_parser("probe", parents=[common], help="search for a gap counterexample")
    p.add_argument("gap", choices=list(harness.PROBES))
    p.add_argument("--all", action="store_true", help="keep searching after a counterexample")
    p.set_defaults(func=cmd_probe)

    p = sp.add_parser("logic", parents=[common], help="formulas")
    lsp = p.add_subparsers(dest="sub", required=True)
    q = lsp.add_parser("parse")
    q.add_argument("formula", nargs="?")
    q.add_argument("--mso", action="store_true", help="require a boolean formula")
    q = lsp.add_parser("eval")
    q.add_argument("formula")
    q.add_argument("word")
    q.add_argument("--alphabet", default="a,b")
    q.add_argument("--assign", nargs="*", metavar="VAR=VAL")
    q = lsp.add_parser("compile")
    q.add_argument("formula")
    q.add_argument("--vars", default="", help="comma-separated free variables, in row order")
    q.add_argument("--alphabet", default="a,b")
    q = lsp.add_parser("decompile")
    q.add_argument("file")
    q = lsp.add_parser("check-rmso")
    q.add_argument("formula", nargs="?", help="formula text; stdin when omitted")
    p.set_defaults(func=cmd_logic)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"mkfa: {exc}", file=sys.stderr)
        return exc.code
    except ForeignLetterError as exc:
        print(f"mkfa: {exc}", file=sys.stderr)
        return EXIT_FOREIGN


if __name__ == "__main__":
    sys.exit(main())
