"""Command-line driver: generate words, factorize, query the index, run predictors, verify.

Every subcommand accepts ``--config FILE`` with flat ``key=value`` lines whose
keys are the long option names (dashes or underscores); flags given on the
command line win. The exit status is 0 exactly when every checked bound holds.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import corpus
from .automata import OutputDfa, exact_automaticity, block_state_lower_bound, word_from_dfa
from .core import BINARY, Alphabet, Word, ceil_log, read_word, write_word
from .counting import LzcMeasure, counting_complexity, halving_failures, phase_bound_failures, plurality_run
from .generators import (
    ContinuedFraction,
    Morphism,
    characteristic_direct,
    fibonacci_word,
    morphic_prefix,
    power_block_word,
    thue_morse,
)
from .hdp import run_hdp
from .lz77 import greedy_k_lz77, greedy_lz77, lzc, min_factorization_size
from .lzp import run_lzp
from .slp import (
    binarize,
    characteristic_build,
    characteristic_chain,
    evaluate,
    fibonacci_slp,
    power_slp,
    slp_from_dfa,
    truncate,
    validate,
)
from .suffix_index import SuffixIndex, ipc, ipm, pattern_range

FAMILIES = ("thue-morse", "fibonacci", "power-block", "characteristic", "morphic", "dfa", "random")
REPORT_COLUMNS = (
    "family",
    "n",
    "algo",
    "mistakes",
    "lzc",
    "k_factors",
    "dict_sizes",
    "state_bits",
    "bound_id",
    "bound_value",
    "bound_ok",
)


class UsageError(Exception):
    pass


def parse_morphism(text: str) -> Morphism:
    """``a:ab,b:bc,c:c`` (single-character symbols)."""
    rules = {}
    for item in text.split(","):
        src, _, image = item.partition(":")
        if len(src) != 1 or not image:
            raise UsageError(f"bad morphism rule {item!r}")
        rules[src] = image
    return Morphism.from_strings(rules)


def parse_cf(text: str) -> ContinuedFraction:
    return ContinuedFraction([int(a) for a in text.split(",") if a])


def make_word(args, n: int | None = None) -> Word:
    n = args.n if n is None else n
    family = args.family
    if family == "thue-morse":
        return thue_morse(n)
    if family == "fibonacci":
        return fibonacci_word(n)
    if family == "power-block":
        word = power_block_word(args.k)
        return word if n is None else word[:n]
    if family == "characteristic":
        if args.theta:
            return characteristic_direct(Fraction(args.theta), n)
        return characteristic_direct(parse_cf(args.cf), n)
    if family == "morphic":
        return morphic_prefix(parse_morphism(args.morphism), args.seed_symbol, n)
    if family == "dfa":
        if not args.file:
            raise UsageError("--family dfa needs --file")
        M = OutputDfa.from_text(Path(args.file).read_text())
        return word_from_dfa(M, args.base, n)
    if family == "random":
        rng = random.Random(args.seed)
        return Word(bytes(rng.getrandbits(1) for _ in range(n)), BINARY)
    raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def add_family_options(p: argparse.ArgumentParser, positional: bool) -> None:
    if positional:
        p.add_argument("family", choices=FAMILIES)
    else:
        p.add_argument("--family", choices=FAMILIES, default="thue-morse")
    p.add_argument("--k", type=int, default=1, help="power-block parameter")
    p.add_argument("--cf", default="1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1")
    p.add_argument("--theta", default=None, help="exact rational slope p/q instead of --cf")
    p.add_argument("--morphism", default="0:01,1:10")
    p.add_argument("--seed-symbol", default="0")
    p.add_argument("--file", default=None, help="automaton text file for --family dfa")
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--seed", type=int, default=corpus.CORPUS_SEED)


def cmd_generate(args) -> int:
    if args.n is None and args.family != "power-block":
        raise UsageError("--n is required")
    word = make_word(args)
    if args.out:
        write_word(args.out, word)
    else:
        print(str(word))
    return 0


def load_word(args) -> Word:
    if args.word:
        return read_word(args.word)
    if args.text is not None:
        return Word.from_string(args.text, Alphabet.parse(args.alphabet) if args.alphabet else None)
    raise UsageError("give a word file or --text")


def cmd_factorize(args) -> int:
    word = load_word(args)
    if args.k:
        kf = greedy_k_lz77(word, args.k)
        out = [f"# base={args.k} factors={len(kf)}"]
        for start, e in zip(kf.starts, kf.entries):
            kind = "L" if e.block is None else f"C {e.block}"
            out.append(f"{start} level={e.level} {kind} {e.length}")
        text = "\n".join(out) + "\n"
    else:
        text = greedy_lz77(word).to_text()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_index_query(args) -> int:
    # the word file leads the positional list unless the word is given inline
    items = list(args.items)
    if args.text is None:
        if not items:
            raise UsageError("give a word file or --text")
        args.word = items.pop(0)
    args.queries = items
    word = load_word(args)
    idx = SuffixIndex.build(word)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["i", "symbol", "ipc", "ipm", "range", "probes"])
    for query in args.queries:
        pos, _, token = query.partition(":")
        i, a = int(pos), word.alphabet.index(token)
        idx.probes.reset()
        found = pattern_range(idx, i, a)
        probes = idx.probes.total
        w.writerow([i, token, ipc(idx, i, a), ipm(idx, i, a), "" if found is None else f"{found[0]}-{found[1]}", probes])
    return 0


def schedule(text: str) -> list[int]:
    values = [int(v) for v in text.split(",") if v]
    if any(b <= a for a, b in zip(values, values[1:])):
        raise UsageError("schedule must be strictly increasing")
    return values


def predict_row(args, word: Word) -> dict:
    n = len(word)
    row = dict.fromkeys(REPORT_COLUMNS, "")
    row.update(family=args.family if not args.word else Path(args.word).name, n=n, algo=args.algo)
    if args.algo == "lzp":
        record, p = run_lzp(word)
        z = len(p.entries)
        bound = z * (math.log2(n) + 1)
        row.update(
            mistakes=record.mistakes,
            lzc=z,
            state_bits=record.max_state_bits,
            bound_id="lzp-mistakes<=lzc*(log2(n)+1)",
            bound_value=round(bound, 3),
            bound_ok=record.mistakes <= bound,
        )
    elif args.algo == "hdp":
        k = args.base
        record, p = run_hdp(word, k)
        z = len(greedy_k_lz77(word, k))
        sizes = p.dictionary_sizes()
        row.update(
            mistakes=record.mistakes,
            k_factors=z,
            dict_sizes=" ".join(map(str, sizes)),
            state_bits=record.max_state_bits,
            bound_id="hdp-dict<=automaticity; k-factors<=k*aut*(ceil(log_k n)+1)",
        )
        if args.automaticity:
            m = args.automaticity
            bound = k * m * (ceil_log(k, n) + 1)
            row.update(bound_value=bound, bound_ok=z <= bound and max(sizes, default=0) <= m)
    elif args.algo == "plurality":
        if args.measure != "lzc":
            raise UsageError("the plurality predictor supports --measure lzc only")
        C = LzcMeasure()
        record, log = plurality_run(word, C)
        bad = phase_bound_failures(log, C, word.alphabet) or halving_failures(log)
        # per-phase bounds summed; each phase is also checked on its own
        total = sum(counting_complexity(ph.length_bound, ph.complexity_bound, C, word.alphabet) + 1 for ph in log.phases)
        row.update(
            mistakes=record.mistakes,
            lzc=lzc(word),
            bound_id="plurality-phase-mistakes<=log2(count)+1",
            bound_value=round(total, 3),
            bound_ok=not bad,
        )
    else:
        raise UsageError(f"unknown predictor {args.algo!r}")
    return row


def cmd_predict(args) -> int:
    if args.algo == "plurality" and args.measure not in ("lzc",):
        raise UsageError("predictor/measure mismatch")
    if args.algo != "plurality" and args.measure not in (None, "lzc"):
        raise UsageError(f"--measure applies to the plurality predictor, not {args.algo}")
    rows = []
    if args.word:
        rows.append(predict_row(args, read_word(args.word)))
    else:
        for n in schedule(args.schedule):
            rows.append(predict_row(args, make_word(args, n)))
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    if args.csv:
        Path(args.csv).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    if args.json:
        Path(args.json).write_text(json.dumps(rows, indent=1, default=str))
    return 0 if all(r["bound_ok"] in ("", True) for r in rows) else 1


def cmd_count(args) -> int:
    C = LzcMeasure()
    alphabet = BINARY
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "m", "N_C"])
    for n in range(1, args.n_max + 1):
        for m in range(1, args.m_max + 1):
            w.writerow([n, m, round(counting_complexity(n, m, C, alphabet), 6)])
    return 0


# verify suites: each returns {property: (passed, checked)}


def suite_greedy_minimality(max_len: int = 12) -> dict[str, tuple[int, int]]:
    ok = total = 0
    for L in range(1, max_len + 1):
        for bits in itertools.product(b"\x00\x01", repeat=L):
            w = Word(bytes(bits), BINARY)
            total += 1
            ok += lzc(w) == min_factorization_size(w)
    return {"lzc == DP minimum": (ok, total)}


def suite_ipc_bruteforce(count: int = 100, seed: int = corpus.CORPUS_SEED) -> dict[str, tuple[int, int]]:
    ok = total = 0
    probe_ok = probe_total = 0
    for _, w in corpus.random_words(count, 64, seed, min_len=8):
        idx = SuffixIndex.build(w)
        n = len(w)
        data = w.data
        for i in range(n):
            for a in range(w.alphabet.size):
                pattern = data[i:] + bytes([a])
                brute = [j for j in range(n) if data[j:].startswith(pattern)]
                idx.probes.reset()
                count_ = ipc(idx, i, a)
                probe_total += 1
                probe_ok += idx.probes.total <= 8 * math.log2(n)
                match = ipm(idx, i, a)
                total += 1
                ok += count_ == len(brute) and (match in brute if brute else match is None)
    return {"ipc/ipm == brute force": (ok, total), "probes <= 8 log2 n": (probe_ok, probe_total)}


def slp_construction_corpus():
    """(name, slp, automaton-size bound or None) for every construction route."""
    from .automata import power_block_dfa, constant_dfa, thue_morse_dfa
    from .core import AB
    from .slp import Slp, Var

    yield "fibonacci-chain", fibonacci_slp(9), None
    automata = [("thue-morse", thue_morse_dfa(), n) for n in (8, 32, 100, 1000)]
    automata += [(f"power-block-{p}", power_block_dfa(p), 2 ** (2 * p + 1)) for p in range(4)]
    automata.append(("constant", constant_dfa(AB, 0), 8))
    for name, M, n in automata:
        bound = M.num_states * ceil_log(M.base, n) * M.base
        yield f"dfa-{name}-{n}", slp_from_dfa(M, M.base, n), bound
    base = Slp(AB, Var(0), {0: (0, 1)})
    for r in (2, 5, 8, 13):
        yield f"power-ab-{r}", power_slp(base, r), None
    yield "wide-rule", Slp(AB, Var(1), {0: (0, 1, 0, 1, 1), 1: (Var(0), Var(0), 0)}), None
    for name, cf in corpus.CONTINUED_FRACTIONS.items():
        for n in (50, 500, 5000):
            yield f"characteristic-{name}-{n}", characteristic_build(cf, n).slp, None


def suite_slp_bounds() -> dict[str, tuple[int, int]]:
    from .slp import Slp

    results = {k: [0, 0] for k in ("valid", "binarize", "truncate", "lzc<=size", "automaton grammar size")}

    def tally(key, cond):
        results[key][0] += bool(cond)
        results[key][1] += 1

    for _, P, dfa_bound in slp_construction_corpus():
        tally("valid", not validate(P))
        if not isinstance(P, Slp):
            continue
        word = evaluate(P)
        tally("lzc<=size", lzc(word) <= P.size)
        B = binarize(P)
        tally(
            "binarize",
            not validate(B)
            and B.size <= 2 * P.size
            and evaluate(B) == word
            and all(len(r) == 2 for r in B.rules.values()),
        )
        for cut in sorted({1, 2, len(word) // 3 + 1, len(word) // 2 + 1, len(word) - 1, len(word)}):
            T = truncate(P, cut)
            tally("truncate", not validate(T) and T.size <= 2 * P.size and evaluate(T) == word[:cut])
        if dfa_bound is not None:
            tally("automaton grammar size", P.size <= dfa_bound)
    return {k: tuple(v) for k, v in results.items()}


def suite_counting(max_len: int = 12) -> dict[str, tuple[int, int]]:
    C = LzcMeasure()
    phase_ok = phase_total = halving_ok = halving_total = 0
    for _, w in corpus.short_words(max_len):
        _, log = plurality_run(w, C)
        bad = phase_bound_failures(log, C, w.alphabet)
        phase_total += len(log.phases)
        phase_ok += len(log.phases) - len(bad)
        halving_total += len(log.mistaken_steps)
        halving_ok += len(log.mistaken_steps) - len(halving_failures(log))
    monotone_ok = monotone_total = 0
    for n in range(1, 11):
        values = [counting_complexity(n, m, C, BINARY) for m in range(1, n + 1)]
        monotone_total += 1
        monotone_ok += all(a <= b for a, b in zip(values, values[1:]))
    return {
        "phase mistakes <= N_C + 1": (phase_ok, phase_total),
        "version space halves on mistakes": (halving_ok, halving_total),
        "N_C non-decreasing in m": (monotone_ok, monotone_total),
    }


def suite_automaticity_small() -> dict[str, tuple[int, int]]:
    from .automata import power_block_dfa

    ok = total = 0
    words = [w for _, w in corpus.short_words(12)] + [thue_morse(32), thue_morse(64), power_block_word(1),
                                                      power_block_word(2)]
    lower_ok = 0
    for w in words:
        found = exact_automaticity(w, 2, 6)
        total += 1
        if found is not None:
            states, M = found
            ok += word_from_dfa(M, 2, len(w)) == w
            lower_ok += states >= block_state_lower_bound(w, 2)
    e_ok = e_total = 0
    for p in range(4):
        e_total += 1
        e_ok += word_from_dfa(power_block_dfa(p), 2, 2 ** (2 * p + 1)) == power_block_word(p)
    return {
        "search result reproduces word": (ok, total),
        "search >= block lower bound": (lower_ok, total),
        "construction automaton generates (a^m b^m)^m": (e_ok, e_total),
    }


SUITES = {
    "greedy-minimality": suite_greedy_minimality,
    "ipc-bruteforce": suite_ipc_bruteforce,
    "slp-bounds": suite_slp_bounds,
    "counting": suite_counting,
    "automaticity-small": suite_automaticity_small,
}


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    results = SUITES[args.suite]()
    all_ok = True
    for prop, (passed, checked) in results.items():
        status = "PASS" if passed == checked else "FAIL"
        all_ok &= passed == checked
        print(f"{status} {args.suite}: {prop}: {passed}/{checked}")
    return 0 if all_ok else 1


def read_config(path: str) -> dict[str, str]:
    values = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"config line without '=': {raw!r}")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stringpred", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default=None, help="flat key=value file of option defaults")

    p = sub.add_parser("generate", help="write a word from a sequence family")
    common(p)
    add_family_options(p, positional=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)

    for name, func, help_ in (
        ("factorize", cmd_factorize, "greedy LZ77 (or k-aligned with --k) of a word"),
        ("index-query", cmd_index_query, "internal pattern count/match queries i:symbol"),
    ):
        p = sub.add_parser(name, help=help_)
        common(p)
        if name == "factorize":
            p.add_argument("word", nargs="?", default=None, help="word file")
            p.add_argument("--k", type=int, default=None)
            p.add_argument("--out", default=None)
        else:
            p.add_argument("items", nargs="*", metavar="WORD_FILE QUERY", help="word file, then queries i:symbol")
            p.set_defaults(word=None)
        p.add_argument("--text", default=None, help="word given inline (one character per symbol)")
        p.add_argument("--alphabet", default=None, help="comma-separated symbols for --text")
        p.set_defaults(func=func)

    p = sub.add_parser("predict", help="run a predictor over a length schedule and report bounds")
    common(p)
    add_family_options(p, positional=False)
    p.add_argument("--algo", choices=("lzp", "hdp", "plurality"), default="lzp")
    p.add_argument("--measure", default=None)
    p.add_argument("--schedule", default="256,512,1024")
    p.add_argument("--word", default=None, help="word file instead of a generated schedule")
    p.add_argument("--automaticity", type=int, default=None, help="known k-automaticity for the HDP checks")
    p.add_argument("--csv", default=None)
    p.add_argument("--json", default=None)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("count", help="counting complexity table for LZ77 complexity")
    common(p)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--m-max", type=int, default=8)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="run an oracle cross-check suite")
    common(p)
    p.add_argument("suite", choices=tuple(SUITES))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    try:
        if known.config:
            config = read_config(known.config)
            for action in parser._subparsers._group_actions[0].choices.values():
                action.set_defaults(**config)
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
