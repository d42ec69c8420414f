"""Command-line front end.

    threeplusone count --mode unlabelled --terms 22
    threeplusone decompose data/ten_vertex.poset --json
    threeplusone skeleton data/ten_vertex.poset
    threeplusone generate --n 8 --out posets/
    threeplusone bicoloured count --i 2 --j 2
    threeplusone verify --suite paper
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import bicoloured, counting, skeleton
from .samples import ten_vertex
from .generator import _fillings, assemble, count_generated
from .poset import PosetError, format_poset, members, parse_poset
from .tangles import CloneSet, decompose

KNOWN_P_UNL = [
    1, 1, 2, 5, 15, 49, 173, 639, 2469, 9997, 43109, 205092, 1153646, 8523086, 91156133,
    1446766659, 32998508358, 1047766596136, 45632564217917, 2711308588849394,
    219364550983697100, 24151476334929009951, 3618445112608409433287,
]
KNOWN_B_UNL = [1, 2, 4, 8, 17]


def _read_poset(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_poset(text)


def cmd_count(args) -> int:
    values = counting.p_unl(args.terms) if args.mode == "unlabelled" else counting.p_lbl(args.terms)
    if args.json:
        print(json.dumps({"mode": args.mode, "terms": [str(v) for v in values]}))
    else:
        for v in values:
            print(v)
    return 0


def cmd_decompose(args) -> int:
    p = _read_poset(args.file)
    d = decompose(p)
    if args.json:
        print(json.dumps(d.to_json(), indent=2))
        return 0
    for k, x in enumerate(d.parts):
        if isinstance(x, CloneSet):
            names = ",".join(p.name(v) for v in x.vertices)
            print(f"{k}: clone  level {x.level}: {{{names}}}")
        else:
            top = ",".join(p.name(v) for v in members(x.top))
            bottom = ",".join(p.name(v) for v in members(x.bottom))
            print(f"{k}: tangle levels {x.level},{x.level + 1}: top {{{top}}} bottom {{{bottom}}}")
    print(f"aut order {d.aut_order()}")
    return 0


def cmd_skeleton(args) -> int:
    if args.word is not None:
        w0 = skeleton.lex_max(skeleton.parse_word(args.word))
    else:
        w0 = skeleton.skeleton_of(_read_poset(args.file))
    print(skeleton.format_word(w0))
    if args.dyck:
        if not skeleton.is_valid_skeleton(w0):
            print("error: not a valid skeleton, no Dyck path", file=sys.stderr)
            return 1
        print(skeleton.to_dyck(w0))
    return 0


def _generate_word(job):
    word, n = job
    return [(word, data, assemble(word, data, check=False)) for data in _fillings(word, n)]


def cmd_generate(args) -> int:
    n = args.n
    start = time.perf_counter()
    if args.count_only and args.out is None:
        print(count_generated(n))
        print(f"# {time.perf_counter() - start:.2f}s", file=sys.stderr)
        return 0
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    per_skeleton: Counter = Counter()
    jobs = [(w, n) for w in skeleton.enumerate_skeleta(n)]
    if args.threads > 1:
        # bicoloured catalogs are built once here so workers read them from disk
        for m in range(4, n + 1):
            bicoloured.tangle_catalog(m)
        pool = ProcessPoolExecutor(max_workers=args.threads)
        batches = pool.map(_generate_word, jobs, chunksize=64)
    else:
        pool = None
        batches = map(_generate_word, jobs)
    total = 0
    for batch in batches:
        for word, _data, p in batch:
            per_skeleton[skeleton.format_word(word)] += 1
            if out and not args.count_only:
                (out / f"poset-{n}-{total:07d}.poset").write_text(
                    f"# skeleton {skeleton.format_word(word)}\n" + format_poset(p))
            elif not out and not args.count_only:
                sys.stdout.write(format_poset(p) + "\n")
            total += 1
    if pool:
        pool.shutdown()
    if out:
        manifest = {"n": n, "total": total, "per_skeleton": dict(per_skeleton)}
        (out / "manifest.json").write_text(json.dumps(manifest, indent=2))
    if args.count_only or out:
        print(total)
    print(f"# {total} posets in {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return 0


def cmd_bicoloured(args) -> int:
    if args.action == "count":
        fn = bicoloured.count_labelled if args.labelled else bicoloured.count_unlabelled
        print(fn(args.i, args.j))
    else:
        for g in bicoloured.tangle_catalog(args.n):
            print(g)
    return 0


def golden_checks() -> list[tuple[str, bool, str]]:
    """Golden checks against published values and independent recurrences."""
    results = []
    got = counting.p_unl(22)
    results.append(("p_unl(0..22)", got == KNOWN_P_UNL, " ".join(map(str, got))))
    b = [bicoloured.count_unlabelled_total(n) for n in range(5)]
    results.append(("B_unl prefix", b == KNOWN_B_UNL, " ".join(map(str, b))))
    catalan = [1]
    for k in range(10):
        catalan.append(sum(catalan[a] * catalan[k - a] for a in range(k + 1)))
    spec = counting.catalan_specialisation(10)
    results.append(("S(x/(1-x), 0) = Catalan", spec == catalan, " ".join(map(str, spec))))
    sample = ten_vertex()
    d = decompose(sample)
    listing = [",".join(sample.name(v) for v in x.vertices) for x in d.parts]
    results.append(("ten-vertex example listing", listing == ["a", "d,e", "h", "b,c,f,g", "j", "i"],
                    " | ".join(listing)))
    word = skeleton.format_word(skeleton.skeleton_of(sample))
    results.append(("ten-vertex example skeleton", word == "c1.c2.c3.c4.t12.c3", word))
    results.append(("ten-vertex example aut order", d.aut_order() == 4, str(d.aut_order())))
    long_word = skeleton.parse_word("c1.c2.c3.c1.t12.t12.c3.t23.c3.c1")
    results.append(("26-vertex example word is canonical", skeleton.lex_max(long_word) == long_word,
                    str(skeleton.to_dyck(long_word))))
    gen = [count_generated(n) for n in range(8)]
    results.append(("generated classes n<=7", gen == KNOWN_P_UNL[:8], " ".join(map(str, gen))))
    return results


def cmd_verify(args) -> int:
    failed = 0
    for name, ok, detail in golden_checks():
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="threeplusone",
                                     description="Tangle decomposition and enumeration of (3+1)-free posets.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="print p_unl(n) or p_lbl(n) for n = 0..terms")
    p.add_argument("--mode", choices=["unlabelled", "labelled"], default="unlabelled")
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("decompose", help="tangle decomposition of a poset file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("skeleton", help="canonical skeleton word of a poset file or word")
    p.add_argument("file", nargs="?")
    p.add_argument("--word", help="canonicalise a word such as c1.c2.t12 instead")
    p.add_argument("--dyck", action="store_true", help="also print the decorated Dyck path")
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("generate", help="all (3+1)-free posets on n vertices up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bicoloured", help="bicoloured graph counts and tangle catalogs")
    bsub = p.add_subparsers(dest="action", required=True)
    q = bsub.add_parser("count")
    q.add_argument("--i", type=int, required=True)
    q.add_argument("--j", type=int, required=True)
    q.add_argument("--labelled", action="store_true")
    q = bsub.add_parser("tangles")
    q.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_bicoloured)

    p = sub.add_parser("verify", help="check published values")
    p.add_argument("--suite", choices=["paper"], default="paper")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for flag in ("terms", "n", "i", "j"):
        if getattr(args, flag, 0) is not None and getattr(args, flag, 0) < 0:
            parser.error(f"--{flag} must be nonnegative")
    if args.command == "skeleton" and (args.file is None) == (args.word is None):
        parser.error("skeleton needs exactly one of FILE or --word")
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except PosetError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
