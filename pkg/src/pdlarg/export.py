"""Defeat-graph exports for Graphviz and for diffable JSON."""

from __future__ import annotations

import json

from .verify import Analysis

__all__ = ["to_dot", "to_json"]


def _label(arg) -> str:
    dr = ",".join(sorted(arg.dr)) or "-"
    return f"{arg.id}: {arg.conclusion} | {dr}"


def to_dot(a: Analysis) -> str:
    """Solid edges are defeats, dashed edges attacks that the preference blocks."""
    lines = ["digraph defeat {", "  node [shape=box];"]
    for v in a.graph.vertices:
        text = _label(a.store[v]).replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  "{v}" [label="{text}"];')
    for x, y in sorted(a.graph.defeats):
        lines.append(f'  "{x}" -> "{y}";')
    for x, y in sorted(a.graph.attacks - a.graph.defeats):
        lines.append(f'  "{x}" -> "{y}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(a: Analysis) -> str:
    doc = {
        "vertices": [
            {"id": v, "kind": a.store[v].kind, "conclusion": str(a.store[v].conclusion),
             "dr": sorted(a.store[v].dr), "top_rule": a.store[v].top_rule,
             "argument": a.store[v].render()}
            for v in a.graph.vertices
        ],
        "attacks": [list(e) for e in sorted(a.graph.attacks)],
        "defeats": [{"source": x, "target": y, "site": a.graph.defeat_sites[(x, y)]}
                    for x, y in sorted(a.graph.defeats)],
        "sp_order": [list(p) for p in sorted(a.sp.pairs)],
    }
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
