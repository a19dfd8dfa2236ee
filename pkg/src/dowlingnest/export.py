"""Deterministic JSON and DOT emitters for lattices, nested sets, forests."""

from __future__ import annotations

import json

from .arrangement import (
    block_subspace,
    building_blocks,
    enumerate_nested_sets,
    intersection_lattice,
    nested_sets_poset,
)
from .forests import (
    Leaf,
    enumerate_forests,
    forest_to_json,
)


def dumps(data):
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _subspace_json(space):
    return {
        "dim": space.dim,
        "basis": [[str(x) for x in row] for row in space.basis],
    }


def lattice_json(inst, cap=None):
    poset = intersection_lattice(inst, cap=cap)
    return {
        "ambient_dim": inst.ambient_dim,
        "elements": [_subspace_json(s) for s in poset.elements],
        "covers": [list(c) for c in poset.covers()],
    }


def lattice_dot(inst, cap=None):
    poset = intersection_lattice(inst, cap=cap)
    lines = ["digraph lattice {"]
    for i, s in enumerate(poset.elements):
        lines.append(f'  n{i} [label="dim {s.dim}"];')
    for lo, hi in poset.covers():
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _block_json(inst, blk):
    return {
        "subgroup": list(blk.subgroup.elements),
        "indices": list(blk.indices),
        "cosets": list(blk.cosets),
        "label": blk.describe(inst),
    }


def nested_json(inst, cap=None):
    sets = enumerate_nested_sets(inst, cap=cap)
    poset = nested_sets_poset(sets)
    return {
        "count": len(sets),
        "nested_sets": [
            [_block_json(inst, b) for b in ns.blocks] for ns in sets
        ],
        "covers": [list(c) for c in poset.covers()],
    }


def nested_dot(inst, cap=None):
    sets = enumerate_nested_sets(inst, cap=cap)
    poset = nested_sets_poset(sets)
    lines = ["digraph nested {"]
    for i, ns in enumerate(sets):
        label = "; ".join(b.describe(inst) for b in ns.blocks)
        lines.append(f'  n{i} [label="{label}"];')
    for lo, hi in poset.covers():
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def blocks_json(inst):
    blocks = building_blocks(inst)
    return {
        "count": len(blocks),
        "blocks": [
            dict(_block_json(inst, b), dim=block_subspace(inst, b).dim)
            for b in blocks
        ],
    }


def forests_json(inst, cap=None):
    forests = enumerate_forests(inst, cap=cap)
    return {
        "count": len(forests),
        "forests": [forest_to_json(f) for f in forests],
    }


def forests_dot(inst, cap=None):
    forests = enumerate_forests(inst, cap=cap)
    chunks = []
    for fi, forest in enumerate(forests):
        lines = [f"digraph forest_{fi} {{"]
        counter = [0]

        def emit(node):
            my_id = f"f{fi}_v{counter[0]}"
            counter[0] += 1
            if isinstance(node, Leaf):
                lines.append(f'  {my_id} [shape=plaintext, label="{node.label}"];')
                return my_id
            name = inst.subgroup_label(node.subgroup)
            lines.append(f'  {my_id} [label="{name}"];')
            for rep, child in node.children:
                child_id = emit(child)
                lines.append(f'  {my_id} -> {child_id} [label="{rep}"];')
            return my_id

        for tree in forest.trees:
            emit(tree)
        lines.append("}")
        chunks.append("\n".join(lines))
    return "\n".join(chunks) + "\n"
