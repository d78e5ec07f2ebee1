"""Graphviz export: objects become nodes, arrows become edges labelled by index.

Render with e.g. ``dot -Tpng -O groupoid.dot``.
"""

from .groupoid import FiniteGroupoid


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def groupoid_to_dot(g: FiniteGroupoid, with_identities: bool = False, name: str = "groupoid",
                    object_labels=None) -> str:
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for x in range(g.n_objects):
        label = object_labels[x] if object_labels else x
        lines.append(f"  {x} [label={_quote(label)}];")
    for a in range(g.n_arrows):
        if not with_identities and g.is_identity(a):
            continue
        lines.append(f"  {g.src[a]} -> {g.tgt[a]} [label={_quote(a)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
