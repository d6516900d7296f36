"""Command-line front end.

Exit codes: 0 all applicable claims hold, 1 a claim failed, 2 bad input,
3 a class exceeded the enumeration cap under ``--strict`` (or in ``analyze``).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import catalog
from .complex import euler_characteristic, order_complex
from .groups import (
    ClosureBound,
    FiniteGroup,
    NotAGroup,
    conjugacy_classes,
    group_from_cayley,
    group_from_permutations,
    is_p_group,
    members_of,
    perm_from_cycles,
    subgroup_generated,
)
from .homology import is_homology_sphere, reduced_homology
from .poset import CapExceeded, enumerate_subracks
from .racks import conjugation_rack, orbit_decomposition
from .verify import FAILS, VerifyOptions, verify_group

FORMAT = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(ValueError):
    pass


class UnknownClass(KeyError):
    pass


def _read_json(path: str) -> dict:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from e


def load_cayley(doc: dict, *, seed: int = 0, name: str = "") -> FiniteGroup:
    """``{"order": n, "table": [[...]], "labels": [...]?}``"""
    try:
        n = int(doc["order"])
        table = doc["table"]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"Cayley document needs 'order' and 'table': {e}") from e
    if len(table) != n or any(len(r) != n for r in table):
        raise InputError(f"table is not {n}x{n}")
    return group_from_cayley(table, doc.get("labels"), seed=seed, name=name or doc.get("name", ""))


def load_permutations(doc: dict, *, name: str = "") -> FiniteGroup:
    """``{"degree": n, "generators": [[cycle, ...], ...], "names": [...]?}``"""
    try:
        degree = int(doc["degree"])
        gens = [perm_from_cycles(degree, cycles) for cycles in doc["generators"]]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad permutation document: {e}") from e
    try:
        return group_from_permutations(degree, gens, doc.get("names"), name=name or doc.get("name", ""))
    except ValueError as e:
        raise InputError(str(e)) from e


def load_group(args: argparse.Namespace) -> FiniteGroup:
    if args.catalog:
        try:
            return catalog.get(args.catalog)
        except KeyError as e:
            raise InputError(e.args[0]) from e
    if args.cayley:
        return load_cayley(_read_json(args.cayley), seed=args.seed)
    return load_permutations(_read_json(args.perm))


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_catalog(args: argparse.Namespace) -> int:
    rows = [
        {"name": e.name, "order": e.order, "degree": e.degree, "description": e.description}
        for e in catalog.CATALOG.values()
    ]
    if args.json:
        _emit(json.dumps({"format": FORMAT, "groups": rows}, indent=2) + "\n", args.json)
    else:
        for r in rows:
            print(f"{r['name']:<10}{r['order']:>5}  {r['description']}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    G = load_group(args)
    opts = VerifyOptions(
        max_class_size=args.max_class_size,
        densify_threshold=args.densify_threshold,
        seed=args.seed,
        jobs=args.jobs,
        experimental_nilpotent=args.experimental_nilpotent,
        timings=args.timings,
    )
    report = verify_group(G, opts)
    if args.json:
        _emit(report.to_json(), args.json)
    if args.json != "-":
        sys.stdout.write(report.to_text())
    if report.overall == FAILS:
        print("claim failure: the input falsifies at least one verified statement", file=sys.stderr)
        return EXIT_FAIL
    if report.capped and args.strict:
        return EXIT_CAP
    return EXIT_OK


def select_class(G: FiniteGroup, index: int | None, rep: str | None):
    classes = conjugacy_classes(G)
    if index is not None:
        if not 0 <= index < len(classes):
            raise UnknownClass(f"class index {index} out of range 0..{len(classes) - 1}")
        return index, classes[index]
    for i, C in enumerate(classes):
        if any(G.label(g) == rep for g in C.members):
            return i, C
    raise UnknownClass(f"no element labeled {rep!r}")


def analyze(G: FiniteGroup, index: int | None, rep: str | None, max_class_size: int = 20,
            densify_threshold: int = 512) -> dict:
    i, C = select_class(G, index, rep)
    if len(C) > max_class_size:
        raise CapExceeded(len(C), max_class_size)
    H = subgroup_generated(G, C.members)
    R = conjugation_rack(G, C)
    orbits = orbit_decomposition(G, C, H)
    P = enumerate_subracks(R)
    K = order_complex(P)
    prof = reduced_homology(K, densify_threshold)
    lab = G.label
    poset = P.to_dict()
    poset["labels"] = [[lab(g) for g in e] for e in poset["elements"]]
    return {
        "format": FORMAT,
        "group": {"name": G.name, "order": G.order, "p": is_p_group(G)},
        "class": {
            "index": i,
            "representative": lab(C.representative),
            "members": [lab(g) for g in C.members],
            "h_order": H.order,
        },
        "orbits": [[lab(R.element_map[k]) for k in members_of(o)] for o in orbits.orbits],
        "m": orbits.m,
        "poset": poset,
        "proper_subracks": len(P.proper_part()),
        "complex": K.to_dict(),
        "reduced_euler": euler_characteristic(K)[0],
        "homology": prof.to_dict(),
        "homology_text": prof.describe(),
        "sphere_degree": orbits.m - 2,
        "is_sphere": is_homology_sphere(prof, orbits.m - 2),
    }


def cmd_analyze(args: argparse.Namespace) -> int:
    G = load_group(args)
    try:
        out = analyze(G, args.class_index, args.class_rep, args.max_class_size, args.densify_threshold)
    except UnknownClass as e:
        print(f"error: unknown class: {e.args[0]}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    if args.json:
        _emit(json.dumps(out, indent=2) + "\n", args.json)
    if args.json != "-":
        c = out["class"]
        print(f"class {c['index']} [{c['representative']}] of {out['group']['name'] or 'group'}: "
              f"|C|={len(c['members'])} |H|={c['h_order']}")
        print(f"orbits (m={out['m']}): {out['orbits']}")
        print(f"subracks: {len(out['poset']['elements'])} ({out['proper_subracks']} proper nonempty)")
        print(f"order complex: f-vector {out['complex']['f_vector']}, facets {out['complex']['facets']}")
        print(f"reduced homology: {out['homology_text']}")
        print(f"sphere S^{out['sphere_degree']}: {out['is_sphere']}")
    return EXIT_OK


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--catalog", metavar="NAME", help="built-in group (see `catalog`)")
    src.add_argument("--cayley", metavar="PATH", help="Cayley table JSON ('-' for stdin)")
    src.add_argument("--perm", metavar="PATH", help="permutation generators JSON ('-' for stdin)")
    p.add_argument("--max-class-size", type=int, default=20, help="enumeration cap per class")
    p.add_argument("--densify-threshold", type=int, default=512,
                   help="reduce boundary matrices densely up to this size")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized validation")
    p.add_argument("--json", metavar="PATH", help="write JSON to PATH ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subracks", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list built-in groups")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="check every claim on each conjugacy class")
    _add_source(p)
    p.add_argument("--strict", action="store_true", help="exit 3 if any class exceeds the cap")
    p.add_argument("--jobs", type=int, default=1, help="classes verified concurrently")
    p.add_argument("--experimental-nilpotent", action="store_true",
                   help="also check proper generation and connectedness on nilpotent groups")
    p.add_argument("--timings", action="store_true", help="include per-stage timings (not reproducible)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="orbits, poset, complex and homology of one class")
    _add_source(p)
    sel = p.add_mutually_exclusive_group(required=True)
    sel.add_argument("--class-index", type=int, help="0-based index in canonical class order")
    sel.add_argument("--class-rep", metavar="LABEL", help="label of any member of the class")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, NotAGroup, ClosureBound) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
