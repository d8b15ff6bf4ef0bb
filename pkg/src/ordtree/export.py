"""DOT and JSON renderings of ordinarization trees."""

from __future__ import annotations

import json

from ordtree.ordinarization import OrdinarizationTree
from ordtree.semigroup import NumericalSemigroup, from_gaps


def tree_to_records(tree: OrdinarizationTree) -> dict:
    nodes = []
    for i, S in enumerate(tree.nodes):
        gd = S.generator_data
        nodes.append(
            {
                "id": i,
                "gaps": S.gaps(),
                "parent": tree.parent[i],
                "depth": tree.depth[i],
                "h": gd.effectivity,
                "min_gens": list(gd.minimal_generators),
            }
        )
    return {"genus": tree.genus, "nodes": nodes}


def tree_to_json(tree: OrdinarizationTree) -> str:
    return json.dumps(tree_to_records(tree), indent=1) + "\n"


def tree_from_json(text: str) -> tuple[int, list[tuple[NumericalSemigroup, int | None, int]]]:
    """Genus and (semigroup, parent id, depth) per node, in id order."""
    data = json.loads(text)
    nodes = sorted(data["nodes"], key=lambda n: n["id"])
    return data["genus"], [(from_gaps(n["gaps"]), n["parent"], n["depth"]) for n in nodes]


def tree_to_dot(tree: OrdinarizationTree) -> str:
    lines = [f"digraph T{tree.genus} {{", "  rankdir=LR;", "  node [shape=box, fontname=monospace];"]
    for i, S in enumerate(tree.nodes):
        label = "{" + ",".join(map(str, S.gaps())) + "}"
        lines.append(f'  n{i} [label="{label}"];')
    for i, p in enumerate(tree.parent):
        if p is not None:
            lines.append(f"  n{i} -> n{p};")
    lines.append("}")
    return "\n".join(lines) + "\n"
