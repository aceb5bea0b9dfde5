# analysis/graphs.py

import json
from typing import Dict

from core.crystal_graph import CrystalGraph


def _quote(name: str) -> str:
    return '"{}"'.format(name.replace("\\", "\\\\").replace('"', r'\"'))


def to_dot(graph: CrystalGraph) -> str:
    """
    Renders a crystal graph in plain graphviz DOT.

    Vertices of one layer share a rank; edges are labelled by their color. The output
    depends only on the graph, so equal graphs give byte-identical text.

    Args:
        graph (CrystalGraph): The graph to render.

    Returns:
        str: The DOT source, newline terminated.
    """
    lines = [f"digraph {_quote(graph.name)} {{", "  rankdir=TB;"]
    for depth, layer in enumerate(graph.layers):
        members = " ".join(_quote(name) + ";" for name in layer)
        lines.append(f"  subgraph layer_{depth} {{ rank=same; {members} }}")
    for source, target, color in graph.edges:
        lines.append(f'  {_quote(source)} -> {_quote(target)} [label="{color}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(graph: CrystalGraph) -> Dict:
    return {
        "name": graph.name,
        "e": graph.e,
        "layers": [list(layer) for layer in graph.layers],
        "edges": [{"source": s, "target": t, "color": c} for s, t, c in graph.edges],
    }


def to_json(graph: CrystalGraph) -> str:
    return json.dumps(graph_to_dict(graph), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
