"""Text renderings of an extension report: table, JSON and Graphviz DOT."""
from __future__ import annotations

from ..arith import format_poly, format_value
from ..extend import ExtensionReport, TreeNode, to_json


def render_table(report: ExtensionReport) -> str:
    """One row per leaf."""
    unique = "yes" if report.unique else "no"
    rows = []
    for lf in report.leaves:
        betas = ", ".join(format_value(b) for b in lf.beta_chain)
        rows.append(f"e={lf.e} f={lf.f} d={lf.d} unique={unique} "
                    f"beta=[{betas}] v(x)={format_value(lf.generator_value)}")
    return "\n".join(rows) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def render_dot(report: ExtensionReport) -> str:
    """The extension tree as a digraph.

    Inner nodes show (deg Q, delta per outgoing side, theta); edges show
    (beta, psi); leaves show (e, f, d).
    """
    lines = ["digraph extensions {", "  node [shape=box];"]
    counter = [0]

    def fresh() -> str:
        name = f"n{counter[0]}"
        counter[0] += 1
        return name

    def emit(node: TreeNode) -> str:
        name = fresh()
        deltas = ",".join(str(c.invariants.delta) for c in node.children if c.invariants is not None)
        label = f"deg Q={node.key.degree}\\ndelta={deltas or '-'}\\ntheta={node.theta}"
        lines.append(f"  {name} [label={_quote(label)}];")
        for c in node.children:
            psi = format_poly(c.psi) if c.psi is not None else "-"
            edge = f"beta={format_value(c.beta)}\\npsi={psi}"
            if c.leaf is not None:
                lf = c.leaf
                target = fresh()
                leaf_label = f"e={lf.e} f={lf.f} d={lf.d}"
                lines.append(f"  {target} [shape=ellipse, label={_quote(leaf_label)}];")
            else:
                target = emit(c.node)
            lines.append(f"  {name} -> {target} [label={_quote(edge)}];")
        return name

    emit(report.tree)
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_json(report: ExtensionReport) -> str:
    return to_json(report)


def render(report: ExtensionReport, fmt: str) -> str:
    if fmt == "table":
        return render_table(report)
    if fmt == "json":
        return render_json(report)
    if fmt == "dot":
        return render_dot(report)
    raise ValueError(f"unknown format {fmt!r}")

