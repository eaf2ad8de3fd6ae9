"""Enumerate all extensions of a base valuation to ``L = K[x]/(f)``.

Every branch of the search is a chain of key polynomials.  A node holds the
chain built so far and the next (pending) key ``Q``.  Its Newton polygon is
the polygon of ``g`` (the normalized input) expanded in ``Q``, with
coefficient values taken under the chain.  Each side up to the
characteristic index ``theta`` fixes a value ``beta`` for ``Q``.  Each
irreducible factor ``psi`` of the side's residual polynomial then spawns a
child.  Multiplicity 1 ends the branch in a leaf.  Higher multiplicity
lifts ``psi`` to the next key.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .arith import INF, Poly, Value, ff_factor, format_poly, format_value
from .basefield import BaseValuation, base_poly_gcd, normalize_input, unnormalize_poly
from .errors import InvariantError, NonTerminationError
from .maclane import InductiveValuation, standard_expansion
from .newton import (NewtonPolygon, PolygonInvariants, Side, characteristic_index,
                     lower_hull, polygon_invariants)


@dataclass(frozen=True)
class Options:
    seed: int = 0
    max_augmentations: Optional[int] = None  # default 16 * deg f
    check_invariants: bool = True
    parallel: bool = False
    workers: Optional[int] = None


@dataclass
class ExtensionLeaf:
    chain: InductiveValuation
    psi: Poly
    e: int
    f: int
    d: int
    beta_chain: list
    key_polynomials: list
    approx_factor: Poly
    generator_value: Value
    shift: int
    poly: Poly

    @property
    def local_degree(self) -> int:
        return self.e * self.f * self.d


@dataclass
class Child:
    """Edge of the tree: a side value, a residual factor and its outcome."""

    beta: Value
    psi: Optional[Poly]
    multiplicity: int
    alpha: int
    theta: int
    line_value: Value
    invariants: Optional[PolygonInvariants]
    node: Optional["TreeNode"] = None
    leaf: Optional[ExtensionLeaf] = None


@dataclass
class TreeNode:
    chain: InductiveValuation
    key: Poly
    psi: Optional[Poly]
    alpha: int
    theta: int
    polygon: NewtonPolygon
    children: list = field(default_factory=list)

    @property
    def depth(self) -> int:
        return self.chain.depth + 1

    def walk(self) -> Iterator["TreeNode"]:
        yield self
        for c in self.children:
            if c.node is not None:
                yield from c.node.walk()


@dataclass
class ExtensionReport:
    base: str
    p: int
    poly: Poly
    normalized: Poly
    shift: int
    leaves: list
    unique: bool
    sum_efd: int
    invariant_log: list
    tree: TreeNode

    @property
    def n(self) -> int:
        return self.poly.degree


# -- exploration ----------------------------------------------------------------

class _Explorer:
    def __init__(self, g: Poly, v: BaseValuation, shift: int, opts: Options):
        self.g = g
        self.v = v
        self.shift = shift
        self.opts = opts
        n = g.degree
        self.limit = opts.max_augmentations if opts.max_augmentations is not None else 16 * n

    def _polygon(self, chain: InductiveValuation, key: Poly):
        coeffs = standard_expansion(self.g, key)
        vals = [chain.value(d) if chain.depth else chain._value(d, 0) for d in coeffs]
        E = chain.value_group_denominator
        return coeffs, vals, lower_hull(list(enumerate(vals)), E)

    def node(self, chain, key, psi, alpha, theta, data=None) -> TreeNode:
        coeffs, vals, poly = data if data is not None else self._polygon(chain, key)
        node = TreeNode(chain, key, psi, alpha, theta, poly)
        tasks = []
        if vals[0] is INF:
            tasks.append(("inf", None, coeffs, vals))
        # sides by decreasing beta, i.e. left to right
        for side in poly.sides:
            if side.right.index <= theta:
                tasks.append(("side", side, coeffs, vals))
        if self.opts.parallel and chain.depth == 0 and len(tasks) > 1:
            with ThreadPoolExecutor(max_workers=self.opts.workers) as ex:
                groups = list(ex.map(lambda t: self._expand(node, *t), tasks))
        else:
            groups = [self._expand(node, *t) for t in tasks]
        for grp in groups:
            node.children.extend(grp)
        return node

    def _expand(self, node: TreeNode, kind, side: Optional[Side], coeffs, vals) -> list[Child]:
        chain = node.chain
        if chain.depth + 1 > self.limit:
            raise NonTerminationError(chain.betas, self.limit)
        if kind == "inf":
            iv = chain.augment(node.key, INF, node.psi)
            # Q divides g: an exact root factor
            leaf = self._leaf(iv, None, iv.top.kappa.absolute_degree, node.key,
                              chain.value_group_denominator)
            return [Child(INF, None, 1, 1, 1, INF, None, leaf=leaf)]
        iv = chain.augment(node.key, side.beta, node.psi)
        iv.top._cache[self.g] = (tuple(coeffs), tuple(vals), side.line_value())
        inv = polygon_invariants(node.polygon, side.beta, node.theta)
        R = iv.residual_polynomial(self.g, side)
        out = []
        for psi, m in ff_factor(R, self.opts.seed):
            Q, alpha = iv.lift_key(side, psi)
            if m == 1:
                f = iv.top.kappa.absolute_degree * psi.degree
                leaf = self._leaf(iv, psi, f, Q, iv.value_group_denominator)
                out.append(Child(side.beta, psi, 1, alpha, 1, side.line_value(), inv, leaf=leaf))
                continue
            data = self._polygon(iv, Q)
            theta = characteristic_index(data[2], alpha * side.beta)
            child = self.node(iv, Q, psi, alpha, theta, data)
            out.append(Child(side.beta, psi, m, alpha, theta, side.line_value(), inv, node=child))
        return out

    def _leaf(self, iv, psi, f, approx, e) -> ExtensionLeaf:
        betas = iv.betas
        gen = betas[0] if betas[0] is INF else betas[0] - self.shift
        return ExtensionLeaf(
            chain=iv, psi=psi, e=e, f=f, d=1, beta_chain=list(betas),
            key_polynomials=list(iv.keys), approx_factor=approx,
            generator_value=gen, shift=self.shift, poly=self.g)


def _leaves(node: TreeNode) -> list[ExtensionLeaf]:
    out = []
    for c in node.children:
        if c.leaf is not None:
            out.append(c.leaf)
        else:
            out.extend(_leaves(c.node))
    return out


def enumerate_extensions(f: Poly, v: BaseValuation, opts: Options | None = None) -> ExtensionReport:
    """Build the full extension tree of ``v`` along ``f`` and summarize it.

    Raises :class:`NotSquarefreeError` for inseparable input and
    :class:`NonTerminationError` when a branch exceeds the augmentation budget.
    """
    opts = opts or Options()
    g, shift = normalize_input(v, f)
    ex = _Explorer(g, v, shift, opts)
    empty = InductiveValuation(v)
    root = ex.node(empty, v.gen(g.var), None, 1, g.degree)
    leaves = _leaves(root)
    sum_efd = sum(lf.local_degree for lf in leaves)
    report = ExtensionReport(v.kind, v.p, f, g, shift, leaves, False, sum_efd, [], root)
    report.unique = is_unique(report)
    if opts.check_invariants:
        report.invariant_log = node_invariant_checks(root, g)
    ramification_sum_check(report)
    return report


# -- invariants ----------------------------------------------------------------

def _fail(msg: str, chain: InductiveValuation):
    raise InvariantError(f"{msg} along {chain!r}", repr(chain))


def _lex_le(a, b) -> bool:
    if a[0] != b[0]:
        return a[0] < b[0]
    return a[1] <= b[1]


def node_invariant_checks(node: TreeNode, g: Poly, parent: Optional[Child] = None) -> list[str]:
    """Check the per-edge and per-node numerical identities of the tree.

    Returns one log line per passed check; raises :class:`InvariantError`
    on the first failure.
    """
    log = []
    chain = node.chain
    where = f"level {node.depth} key {node.key}"
    total = sum(c.alpha * c.theta for c in node.children)
    if total != node.theta:
        _fail(f"{where}: sum alpha*theta = {total} != theta = {node.theta}", chain)
    log.append(f"{where}: sum alpha*theta = theta = {node.theta}")
    for c in node.children:
        label = f"{where} beta {format_value(c.beta)}"
        if c.beta is not INF and c.theta != c.multiplicity:
            _fail(f"{label}: theta {c.theta} != multiplicity {c.multiplicity}", chain)
        if parent is not None:
            if c.beta is not INF and not c.beta > node.alpha * parent.beta:
                _fail(f"{label}: condition (*) fails against {format_value(parent.beta)}", chain)
            if not c.line_value > parent.line_value:
                _fail(f"{label}: value of f does not increase", chain)
            log.append(f"{label}: beta > alpha*beta_prev and v(f) increases")
            if c.invariants is not None and parent.invariants is not None:
                d0, e0 = parent.invariants.as_pair()
                d1, e1 = c.invariants.as_pair()
                if node.alpha * d1 > d0:
                    _fail(f"{label}: alpha*delta = {node.alpha * d1} > {d0}", chain)
                if not _lex_le((d1, e1), (d0, e0)):
                    _fail(f"{label}: (delta, epsilon) increased", chain)
                log.append(f"{label}: alpha*delta <= delta_prev, (delta, epsilon) non-increasing")
        if c.leaf is not None and c.beta is not INF:
            leaf = c.leaf
            # one more augmentation by the approximate factor must give theta = 1
            coeffs = standard_expansion(g, leaf.approx_factor)
            vals = [leaf.chain.value(d) for d in coeffs]
            poly = lower_hull(list(enumerate(vals)), leaf.chain.value_group_denominator)
            th = characteristic_index(poly, c.alpha * c.beta)
            if th != 1:
                _fail(f"{label}: leaf approximant has theta {th}", leaf.chain)
            if leaf.e * leaf.f * leaf.d != leaf.approx_factor.degree:
                _fail(f"{label}: e*f*d != deg approx factor", leaf.chain)
            log.append(f"{label}: leaf approximant theta = 1, e*f*d = degree")
        if c.node is not None:
            log.extend(node_invariant_checks(c.node, g, c))
    return log


def is_unique(report: ExtensionReport) -> bool:
    """True iff every node has exactly one side and one residual factor."""
    def single(node: TreeNode) -> bool:
        if len(node.children) != 1:
            return False
        c = node.children[0]
        return c.node is None or single(c.node)

    u = single(report.tree)
    if u != (len(report.leaves) == 1):
        raise InvariantError("uniqueness disagrees with the leaf count", "")
    return u


def ramification_sum_check(report: ExtensionReport) -> bool:
    total = sum(lf.e * lf.f * lf.d for lf in report.leaves)
    if total != report.n:
        raise InvariantError(f"sum e*f*d = {total} != n = {report.n}", "")
    return True


# -- values on L ------------------------------------------------------------------

def _refine(leaf: ExtensionLeaf, h: Poly, max_steps: int):
    """Yield ``None`` per refinement step, then the value of ``h`` at the leaf.

    Never finishes when ``h`` vanishes at the leaf's root.
    """
    g = leaf.poly
    iv = leaf.chain
    phi, psi = leaf.approx_factor, leaf.psi
    for _ in range(max_steps):
        coeffs = standard_expansion(g, phi)
        w0 = iv.value(coeffs[0]) if coeffs and not coeffs[0].is_zero() else INF
        if w0 is INF:
            yield iv.augment(phi, INF, psi).value(h)
            return
        beta = w0 - iv.value(coeffs[1])
        iv = iv.augment(phi, beta, psi)
        v = iv.value(h)
        r = iv.depth
        res = iv.graded_residue(h, iv.monomial_for_value(v), r)
        side = lower_hull([(0, w0), (1, iv.value(coeffs[1], r - 1))], iv.value_group_denominator).sides[0]
        R = iv.residual_polynomial(g, side)
        psi = R.monic()
        z = -psi.coeffs[0]
        acc = iv.top.kappa.zero
        for k, a in res.items():
            acc = acc + a * z ** k
        if not acc.is_zero():
            yield v
            return
        phi, _ = iv.lift_key(side, psi)
        yield None
    raise NonTerminationError(iv.betas, max_steps)


def _run(gen):
    for out in gen:
        if out is not None:
            return out
    raise AssertionError("refinement ended without a value")


def extension_value(leaf: ExtensionLeaf, h: Poly, original: bool = False,
                    max_steps: int = 256) -> Value:
    """Value of the class of ``h`` in ``L`` under the extension of ``leaf``.

    ``h`` is in the normalized variable unless ``original`` is set, in which
    case it is written in the input variable ``x``.
    """
    v = leaf.chain.base
    g = leaf.poly
    if not isinstance(h, Poly):
        h = Poly.constant(v.field, h, g.var)
    if original:
        h = unnormalize_poly(v, h, leaf.shift)
    h = h % g
    if h.is_zero():
        return INF
    if leaf.chain.top.beta is INF:
        return leaf.chain.value(h)
    c = base_poly_gcd(h, g)
    if c.degree > 0:
        # the root lies on exactly one of c and g/c; race the two
        a, b = _refine(leaf, c, max_steps), _refine(leaf, g.exact_div(c), max_steps)
        while True:
            if next(a) is not None:
                break
            if next(b) is not None:
                return INF
    return _run(_refine(leaf, h, max_steps))


# -- serialization ---------------------------------------------------------------

def report_dict(report: ExtensionReport) -> dict:
    return {
        "input": {
            "base": report.base,
            "p": report.p,
            "poly": format_poly(report.poly),
            "shift": report.shift,
        },
        "leaves": [
            {
                "e": lf.e,
                "f": lf.f,
                "d": lf.d,
                "beta_chain": [format_value(b) for b in lf.beta_chain],
                "key_polynomials": [format_poly(q) for q in lf.key_polynomials],
                "generator_value": format_value(lf.generator_value),
            }
            for lf in report.leaves
        ],
        "unique": report.unique,
        "sum_efd": report.sum_efd,
        "invariants_checked": len(report.invariant_log),
    }


def to_json(report: ExtensionReport) -> str:
    return json.dumps(report_dict(report), indent=2) + "\n"
