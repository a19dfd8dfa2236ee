"""Command-line surface.

Exit codes: 0 success, 1 cross-check disagreement, 2 input error, 3 size
bound exceeded.  Output for a fixed input file and flags is byte-stable.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import export
from .arrangement import (
    closed_subgroups,
    closure_phi,
    enumerate_nested_sets,
    intersection_lattice,
)
from .errors import AbelianOnly, DowlingNestError, InstanceError, SizeBoundExceeded
from .forests import enumerate_forests
from .instancefile import load_instance
from .selftest import run_selftest
from .series import big_g, gamma_bar, gamma_tilde, nested_count_via_series, series_to_json

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_INPUT = 2
EXIT_BOUND = 3


def _add_common(parser):
    parser.add_argument("--input", required=True, help="instance JSON file")
    parser.add_argument("--n", type=int, default=None, help="override n from the file")
    parser.add_argument("--cap-lattice", type=int, default=None)
    parser.add_argument("--cap-nested", type=int, default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dowlingnest",
        description=(
            "Exact computations for the arrangement of a triple (n, G, V): "
            "closed subgroups, intersection lattice, nested sets, labelled "
            "forests, and counting series."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closed-subgroups", help="list subgroups with their closures")
    _add_common(p)

    p = sub.add_parser("lattice", help="intersection lattice summary")
    _add_common(p)

    p = sub.add_parser("nested", help="enumerate nested sets")
    _add_common(p)
    p.add_argument("--limit", type=int, default=20, help="how many sets to print")

    p = sub.add_parser("forests", help="enumerate labelled forests")
    _add_common(p)
    p.add_argument("--limit", type=int, default=20)

    p = sub.add_parser("count", help="count nested sets by one or all methods")
    _add_common(p)
    p.add_argument(
        "--method", choices=("lattice", "forest", "egf"), default="lattice"
    )
    p.add_argument("--all-methods", action="store_true")

    p = sub.add_parser("series", help="emit the counting series as JSON")
    _add_common(p)
    p.add_argument("--max-degree", type=int, default=None)

    p = sub.add_parser("export", help="emit lattice/nested/forests as dot or json")
    _add_common(p)
    p.add_argument("--what", choices=("lattice", "nested", "forests"), required=True)
    p.add_argument("--format", choices=("dot", "json"), default="json")

    p = sub.add_parser("selftest", help="run the invariant cross-check suite")
    _add_common(p)
    return parser


def cmd_closed_subgroups(inst, args, out):
    cs = closed_subgroups(inst)
    closed_keys = {K.elements for K in cs.members}
    out(f"group order {inst.group.order}, dim V = {inst.rep.dim_v}")
    conj = inst.conj_classes()
    for H in inst.subgroups():
        phi = closure_phi(inst, H)
        fix_dim = inst.rep.fix_true_dim(H)
        cls = conj.class_index(H)
        name = inst.subgroup_label(H)
        if H.elements in closed_keys:
            out(f"closed     {name} fix-dim {fix_dim} class {cls}")
        else:
            out(
                f"not-closed {name} fix-dim {fix_dim} class {cls} "
                f"closure {inst.subgroup_label(phi)}"
            )
    out(f"{len(cs.members)} closed subgroups of {len(inst.subgroups())} total")
    return EXIT_OK


def cmd_lattice(inst, args, out):
    poset = intersection_lattice(inst)
    dims = {}
    for s in poset.elements:
        dims[s.dim] = dims.get(s.dim, 0) + 1
    out(f"lattice size {len(poset)} in ambient dim {inst.ambient_dim}")
    for d in sorted(dims, reverse=True):
        out(f"dim {d}: {dims[d]} elements")
    return EXIT_OK


def cmd_nested(inst, args, out):
    sets = enumerate_nested_sets(inst)
    out(f"{len(sets)} nested sets")
    for ns in sets[: args.limit]:
        out("  " + "; ".join(b.describe(inst) for b in ns.blocks))
    if len(sets) > args.limit:
        out(f"  ... {len(sets) - args.limit} more")
    return EXIT_OK


def cmd_forests(inst, args, out):
    forests = enumerate_forests(inst)
    out(f"{len(forests)} forests")
    for forest in forests[: args.limit]:
        parts = []
        for tree in forest.trees:
            parts.append(_tree_text(inst, tree))
        out("  " + " | ".join(parts))
    if len(forests) > args.limit:
        out(f"  ... {len(forests) - args.limit} more")
    return EXIT_OK


def _tree_text(inst, node):
    from .forests import Leaf

    if isinstance(node, Leaf):
        return str(node.label)
    inner = ",".join(
        f"{rep}:{_tree_text(inst, child)}" for rep, child in node.children
    )
    return f"{inst.subgroup_label(node.subgroup)}({inner})"


def cmd_count(inst, args, out):
    methods = (
        ("lattice", "forest", "egf") if args.all_methods else (args.method,)
    )
    results = {}
    for method in methods:
        start = time.perf_counter()
        if method == "lattice":
            value = len(enumerate_nested_sets(inst))
        elif method == "forest":
            value = len(enumerate_forests(inst))
        else:
            if not inst.group.is_abelian:
                if args.all_methods:
                    continue
                raise AbelianOnly("the egf method requires an abelian group")
            value = nested_count_via_series(inst, inst.n)
        elapsed = time.perf_counter() - start
        results[method] = value
        out(f"{method} {value} ({elapsed:.3f}s)")
    if len(set(results.values())) > 1:
        out("DISAGREEMENT " + " ".join(f"{m}={v}" for m, v in sorted(results.items())))
        return EXIT_DISAGREEMENT
    out(f"count {next(iter(results.values()))}")
    return EXIT_OK


def cmd_series(inst, args, out):
    degree = args.max_degree if args.max_degree is not None else inst.n
    payload = {
        "gamma_tilde": series_to_json(gamma_tilde(inst, degree)),
        "gamma_bar": series_to_json(gamma_bar(inst, degree)),
        "g": series_to_json(big_g(inst, degree)),
    }
    out(json.dumps(payload, sort_keys=True, indent=2))
    return EXIT_OK


def cmd_export(inst, args, out):
    what, fmt = args.what, args.format
    if what == "lattice":
        text = (
            export.lattice_dot(inst)
            if fmt == "dot"
            else export.dumps(export.lattice_json(inst))
        )
    elif what == "nested":
        text = (
            export.nested_dot(inst)
            if fmt == "dot"
            else export.dumps(export.nested_json(inst))
        )
    else:
        text = (
            export.forests_dot(inst)
            if fmt == "dot"
            else export.dumps(export.forests_json(inst))
        )
    out(text.rstrip("\n"))
    return EXIT_OK


def cmd_selftest(inst, args, out):
    ok = run_selftest(inst, emit=out)
    return EXIT_OK if ok else EXIT_DISAGREEMENT


HANDLERS = {
    "closed-subgroups": cmd_closed_subgroups,
    "lattice": cmd_lattice,
    "nested": cmd_nested,
    "forests": cmd_forests,
    "count": cmd_count,
    "series": cmd_series,
    "export": cmd_export,
    "selftest": cmd_selftest,
}


def main(argv=None):
    args = build_parser().parse_args(argv)

    def out(line):
        sys.stdout.write(str(line) + "\n")

    try:
        inst = load_instance(
            args.input,
            n_override=args.n,
            cap_lattice=args.cap_lattice,
            cap_nested=args.cap_nested,
        )
        return HANDLERS[args.command](inst, args, out)
    except InstanceError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except AbelianOnly as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except SizeBoundExceeded as exc:
        sys.stderr.write(f"bound exceeded: {exc}\n")
        return EXIT_BOUND
    except DowlingNestError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DISAGREEMENT


if __name__ == "__main__":
    sys.exit(main())
