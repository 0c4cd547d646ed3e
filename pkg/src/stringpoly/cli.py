"""Command-line interface: ``stringpoly <command> ...``.

Exit codes are 0 on success, 1 when ``verify`` finds a failing criterion,
2 on malformed input or domain errors and 3 when a time budget runs out.
Exact fractions are printed as ``p/q`` strings.

Enumerations of reduced words and commutation classes are cached as sorted
text files under ``$STRINGPOLY_CACHE`` (default ``~/.cache/stringpoly``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import verify as verify_mod
from .gc import class_row, gc_map, map_forms, verify_gc_map
from .inequalities import Weight, lambda_cone, string_cone, string_polytope, to_chamber_coordinates
from .oracle import gt_pattern_count, weyl_dimension
from .paths import canonical_path, enumerate_paths, is_new
from .polyhedra import (
    BudgetExceeded, LatticeOverflow, fraction_str, is_full_dimensional, is_integral,
    lattice_point_count, remove_redundant, vertices, volume,
)
from .wiring import build_diagram, chamber_basis
from .words import (
    CommutationClass, ReducedWord, canonical_form, coind, commutation_classes, contract,
    enumerate_reduced_words, extend, gc_type, ind, normal_form, sigma_word,
)

CACHE_ENV = "STRINGPOLY_CACHE"


def _frac(x) -> str | int:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else fraction_str(x)


def _word(text: str) -> ReducedWord:
    return ReducedWord.parse(text)


def _weight(text: str | None, n: int) -> Weight | None:
    if text is None:
        return None
    weight = Weight.parse(text)
    if weight.rank != n:
        raise ValueError(f"weight {text!r} has {weight.rank} entries, expected {n}")
    return weight


def _budget(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("the budget must be positive")
    return value


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


# ----------------------------------------------------------------------------
# cache


def cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV) or Path.home() / ".cache" / "stringpoly")


def cached_words(n: int) -> list[ReducedWord]:
    path = cache_dir() / f"words-{n}.txt"
    if path.exists():
        return [ReducedWord.parse(line, rank=n) for line in path.read_text().split()]
    words = enumerate_reduced_words(n)
    _store(path, "".join(f"{w}\n" for w in words))
    return words


def cached_classes(n: int) -> list[CommutationClass]:
    path = cache_dir() / f"classes-{n}.txt"
    if path.exists():
        out = []
        for line in path.read_text().splitlines():
            text, size = line.split()
            out.append(CommutationClass(ReducedWord.parse(text, rank=n), int(size)))
        return out
    if n <= 4:
        classes = commutation_classes(n)
    else:
        counts: dict[ReducedWord, int] = {}
        for w in cached_words(n):
            key = canonical_form(w)
            counts[key] = counts.get(key, 0) + 1
        classes = [CommutationClass(w, counts[w]) for w in sorted(counts, key=lambda w: w.letters)]
    _store(path, "".join(f"{c.canonical} {c.size}\n" for c in classes))
    return classes


def _store(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(text)
        tmp.replace(path)
    except OSError:
        pass  # an unwritable cache only costs time


# ----------------------------------------------------------------------------
# commands


def cmd_paths(args) -> int:
    word = _word(args.word)
    levels = [args.k] if args.k else range(1, word.rank + 1)
    if args.explain:
        print(build_diagram(word).dump())
    rows = [p for k in levels for p in enumerate_paths(word, k)]
    if args.json:
        _emit([{"k": p.k, "nodes": list(p.switch_nodes), "wires": list(p.wires),
                "coeffs": list(p.coeffs)} for p in rows])
        return 0
    for p in rows:
        print(p.wire_expression() if args.wire_expr else p.node_expression())
    return 0


def cmd_ineq(args) -> int:
    word = _word(args.word)
    weight = _weight(args.weight, word.rank)
    system = string_cone(word) | lambda_cone(word, weight)
    if args.chamber:
        system = to_chamber_coordinates(system, chamber_basis(word))
    var = "u" if args.chamber else "t"
    if args.json:
        print(system.dumps())
        return 0
    for form in system.forms:
        print(form.pretty(var))
    return 0


def cmd_stats(args) -> int:
    word = _word(args.word)
    weight = _weight(args.weight, word.rank)
    poly = string_polytope(word, weight)
    vrep = vertices(poly, budget=args.budget)
    report = {"vertices": len(vrep.vertices), "integral": is_integral(vrep),
              "lattice_points": lattice_point_count(poly), "facets": None, "volume": "0"}
    if is_full_dimensional(poly):
        report["facets"] = len(remove_redundant(poly))
        report["volume"] = _frac(volume(poly, vrep))
    if args.vertices:
        report["vertex_list"] = [[_frac(x) for x in v] for v in vrep.vertices]
    _emit(report)
    return 0


def cmd_index(args) -> int:
    word = _word(args.word)
    out = {}
    for bullet in ("A", "D"):
        prefix, suffix = normal_form(word, bullet)
        out[bullet] = {"ind": ind(word, bullet), "coind": coind(word, bullet),
                       "prefix": list(prefix), "suffix": list(suffix)}
    out["gc_type"] = "".join(gc_type(word) or "") or None
    if args.json:
        _emit(out)
        return 0
    for bullet in ("A", "D"):
        d = out[bullet]
        print(f"{bullet}: ind={d['ind']} coind={d['coind']} "
              f"prefix={','.join(map(str, d['prefix']))} suffix={','.join(map(str, d['suffix']))}")
    print(f"gc_type: {out['gc_type'] or 'none'}")
    return 0


def cmd_contract(args) -> int:
    word = _word(args.word)
    for _ in range(args.times):
        word = contract(word, args.bullet)
    print(str(word))
    return 0


def cmd_extend(args) -> int:
    word = ReducedWord.parse(args.word, rank=args.rank) if args.word else ReducedWord(0, ())
    print(str(extend(word, args.bullet, args.at)))
    return 0


def cmd_gcmap(args) -> int:
    word = _word(args.word)
    weight = _weight(args.weight, word.rank)
    gmap = gc_map(word, weight)
    if gmap is None:
        if args.json:
            _emit({"gc_type": None})
        else:
            print("not of Gelfand-Cetlin type")
        return 0
    forms = map_forms(gmap.sigma)
    out = {"gc_type": "".join(gmap.sigma), "target": str(sigma_word(gmap.sigma)),
           "permutation": [p + 1 for p in gmap.permutation],
           "matrix": [list(r) for r in gmap.matrix],
           "shift": [f.to_json()["const"] for f in forms] if weight is None
           else [_frac(c) for c in gmap.shift]}
    if args.verify:
        if weight is None:
            raise ValueError("--verify needs --lambda")
        out["verified"] = verify_gc_map(word, weight)
    if args.json:
        _emit(out)
        return 0
    n = word.rank
    names = [f"x{k},{j}" for k in range(1, n + 1) for j in range(1, k + 1)]
    tnames = [f"t{k},{j}" for k in range(1, n + 1) for j in range(1, k + 1)]
    print(f"sigma: {out['gc_type']}  target word: {out['target']}")
    print("permutation: " + " ".join(map(str, out["permutation"])))
    for name, form in zip(names, forms):
        print(f"{name} = {_pretty_map(form, tnames)}")
    if args.verify:
        print(f"verified: {out['verified']}")
    return 0


def _pretty_map(form, tnames: Sequence[str]) -> str:
    terms = [(c, name) for c, name in zip(form.coeffs, tnames)]
    terms += [(c, f"lambda{i}") for i, c in enumerate(form.const[1:], start=1)]
    parts = []
    for c, name in terms:
        if c == 0:
            continue
        body = name if abs(c) == 1 else f"{abs(c)}{name}"
        parts.append(("-" if c < 0 else "+") + " " + body if parts else ("-" if c < 0 else "") + body)
    return " ".join(parts) or "0"


def cmd_classify(args) -> int:
    n = args.n
    weight = _weight(args.weight, n)
    classes = cached_classes(n)
    jobs = [(c.canonical, c.size, weight, not args.no_verify) for c in classes]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_class_job, jobs))
    else:
        rows = [_class_job(j) for j in jobs]
    rows.sort(key=lambda r: r.canonical.letters)
    header = ["canonical_word", "class_size", "path_count", "facets", "simplicial",
              "gc_type", "sigma"]
    records = [[str(r.canonical), r.class_size, r.path_count,
                "" if r.facets is None else r.facets, r.simplicial, r.gc_type is not None,
                "".join(r.gc_type or "")] for r in rows]
    if args.json:
        _emit([dict(zip(header, rec)) | {"map_verified": r.map_verified, "consistent": r.consistent}
               for rec, r in zip(records, rows)])
    elif args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(records)
        sys.stdout.write(buf.getvalue())
    else:
        for rec in records:
            print(" ".join(str(x) for x in rec))
    bad = [r for r in rows if not r.consistent]
    if bad:
        print(f"inconsistent classes: {', '.join(str(r.canonical) for r in bad)}", file=sys.stderr)
        return 1
    return 0


def _class_job(job):
    word, size, weight, verify_maps = job
    return class_row(word, size, weight, verify_maps)


def cmd_dim(args) -> int:
    weight = _weight(args.weight, args.n)
    weyl = weyl_dimension(args.n, weight.coefficients)
    out = {"weyl": weyl}
    if not args.no_patterns:
        out["gt_patterns"] = gt_pattern_count(args.n, weight.coefficients)
    if args.json:
        _emit(out)
    else:
        print(weyl)
    if "gt_patterns" in out and out["gt_patterns"] != weyl:
        print(f"oracle mismatch: {out}", file=sys.stderr)
        return 1
    return 0


def cmd_words(args) -> int:
    if args.classes:
        for c in cached_classes(args.n):
            print(f"{c.canonical} {c.size}")
    else:
        for w in cached_words(args.n):
            print(w)
    return 0


def cmd_canonical(args) -> int:
    word = _word(args.word)
    levels = [args.k] if args.k else range(1, word.rank + 1)
    for k in levels:
        p = canonical_path(word, k, args.bullet)
        print(f"k={k} {p.wire_expression()}  {p.node_expression()}"
              f"  new={is_new(p, word, args.bullet)}")
    return 0


def cmd_verify(args) -> int:
    only = tuple(c.strip() for part in args.only or () for c in part.split(",") if c.strip()) or None
    results = verify_mod.run(args.level, args.golden, only)
    if args.json:
        _emit([r.to_json() for r in results])
    else:
        for r in results:
            print(r.line())
            for d in r.diffs:
                print(f"    {d}")
    return 0 if all(r.passed for r in results) else 1


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stringpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def weight_opt(p, required=False):
        p.add_argument("--lambda", dest="weight", required=required,
                       help="dominant weight as comma-separated coefficients")

    p = sub.add_parser("paths", help="rigorous paths of a word")
    p.add_argument("word")
    p.add_argument("-k", type=int)
    p.add_argument("--wire-expr", action="store_true")
    p.add_argument("--explain", action="store_true", help="print the wiring diagram first")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("ineq", help="string and lambda inequalities")
    p.add_argument("word")
    weight_opt(p)
    p.add_argument("--chamber", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ineq)

    p = sub.add_parser("stats", help="facets, vertices, volume and lattice points")
    p.add_argument("word")
    weight_opt(p, required=True)
    p.add_argument("--vertices", action="store_true")
    p.add_argument("--budget", type=_budget, default=600.0, help="seconds")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("index", help="A/D indices and normal forms")
    p.add_argument("word")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("contract", help="contraction C_A or C_D")
    p.add_argument("word")
    p.add_argument("--bullet", choices=["A", "D"], required=True)
    p.add_argument("--times", type=int, default=1)
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("extend", help="extension E_A(s) or E_D(s)")
    p.add_argument("word", nargs="?", default="")
    p.add_argument("--bullet", choices=["A", "D"], required=True)
    p.add_argument("--at", type=int, default=0)
    p.add_argument("--rank", type=int)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("canonical", help="canonical A/D paths")
    p.add_argument("word")
    p.add_argument("-k", type=int)
    p.add_argument("--bullet", choices=["A", "D"], default="D")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("gcmap", help="unimodular map onto the Gelfand-Cetlin polytope")
    p.add_argument("word")
    weight_opt(p)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gcmap)

    p = sub.add_parser("classify", help="classify all commutation classes of rank N")
    p.add_argument("n", type=int)
    weight_opt(p, required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--csv", action="store_true")
    fmt.add_argument("--json", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-verify", action="store_true", help="skip the vertex-set map check")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("dim", help="dimension of the irreducible representation")
    p.add_argument("n", type=int)
    weight_opt(p, required=True)
    p.add_argument("--no-patterns", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("words", help="list reduced words (or classes) of rank N")
    p.add_argument("n", type=int)
    p.add_argument("--classes", action="store_true")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    p.add_argument("--golden")
    p.add_argument("--only", action="append", help="criteria to run, e.g. A1,A7 (repeatable)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, LatticeOverflow) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
