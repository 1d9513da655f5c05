"""Limit ramification on flag curves.

A flag curve of genus ``g`` is a tree of components: ``g`` elliptic tails
(one node each) and rational components with at least two nodes.  At a node
joining components ``C`` and ``C'`` the limit ramification divisor has
multiplicity

    wt_C(node) + wt_C'(node) + (r + 1)(r - l)

where ``l`` is the connecting number.  For the series of rank ``r = g - 2``
studied here ``l = 2g - 2``, so the correction is ``-g(g - 1)``.

Weights on each side are parametrised by the order ``l`` missing from a
vanishing sequence and a correction ``eps`` in ``{0, 1}``; the checker
enumerates every allowed pair, keeps the nonnegative multiplicities and
applies the rule that a node cannot carry multiplicity exactly 1.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import networkx as nx

from .elliptic import ECurve, EllipticSeries, ORIGIN, subseries_vanishing, vanishing_sequence_on
from .exact.gpoly import GPoly
from .exact.linalg import rref
from .p1series import (
    GENERIC_POINTS,
    POINT_POOL,
    LinearSeries,
    TwistDivisor,
    build_series_V,
    expansion_matrix,
    series_minus_point,
    vanishing_sequence,
)
from .report import Report

RATIONAL, ELLIPTIC = "rational", "elliptic"
DEFAULT_MAX_RATIONAL = 6
PARITY_RULE = "a node cannot carry multiplicity exactly 1 (geometric axiom)"


class GraphError(ValueError):
    pass


# -- dual graphs -------------------------------------------------------------------


@dataclass(frozen=True)
class Component:
    kind: str
    nodes: tuple[int, ...]

    @property
    def genus(self) -> int:
        return 1 if self.kind == ELLIPTIC else 0


@dataclass(frozen=True)
class Edge:
    node: int
    ends: tuple[int, int]
    connecting: int | GPoly | None = None


@dataclass(frozen=True)
class DualGraph:
    """Components and nodes of a compact-type curve with flag-curve constraints."""

    components: tuple[Component, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        n = len(self.components)
        if n == 0:
            raise GraphError("no components")
        if len(self.edges) != n - 1:
            raise GraphError(f"{len(self.edges)} nodes for {n} components: not a tree")
        G = self.graph
        if not nx.is_connected(G):
            raise GraphError("dual graph is disconnected")
        ids = [e.node for e in self.edges]
        if len(set(ids)) != len(ids):
            raise GraphError("repeated node id")
        for idx, c in enumerate(self.components):
            if c.kind not in (RATIONAL, ELLIPTIC):
                raise GraphError(f"unknown component kind {c.kind}")
            incident = sorted(e.node for e in self.edges if idx in e.ends)
            if sorted(c.nodes) != incident:
                raise GraphError(f"component {idx} lists nodes {c.nodes}, edges give {incident}")
            if c.kind == ELLIPTIC and len(incident) != 1 and n > 1:
                raise GraphError(f"elliptic component {idx} has {len(incident)} nodes")
            if c.kind == RATIONAL and len(incident) < 2:
                raise GraphError(f"rational component {idx} has fewer than two nodes")

    @cached_property
    def graph(self) -> nx.Graph:
        """The dual graph (cached; treat as read-only)."""
        G = nx.Graph()
        G.add_nodes_from(range(len(self.components)))
        G.add_edges_from(e.ends for e in self.edges)
        return G

    @property
    def genus(self) -> int:
        return sum(c.genus for c in self.components)

    @classmethod
    def from_tree(cls, T: nx.Graph, connecting=None) -> "DualGraph":
        """Leaves become elliptic tails, interior vertices rational components."""
        T = nx.convert_node_labels_to_integers(T)
        edges = tuple(Edge(k, (u, v), connecting) for k, (u, v) in enumerate(sorted(T.edges())))
        comps = []
        for v in range(T.number_of_nodes()):
            kind = ELLIPTIC if T.degree(v) == 1 else RATIONAL
            comps.append(Component(kind, tuple(e.node for e in edges if v in e.ends)))
        return cls(tuple(comps), edges)

    def side_genus(self, edge: Edge, toward: int) -> int:
        """Genus of the part of the curve on the ``toward`` side of ``edge``."""
        G = self.graph.copy()
        G.remove_edge(*edge.ends)
        return sum(self.components[v].genus for v in nx.node_connected_component(G, toward))


@dataclass
class LimitWeightData:
    """Ramification weights at nodes per component, the rank and connecting numbers."""

    rank: int | GPoly
    weights: dict[tuple[int, int], object] = field(default_factory=dict)  # (component, node) -> weight
    connecting: dict[int, object] = field(default_factory=dict)


def node_multiplicity(data: LimitWeightData, graph: DualGraph, node: int):
    edge = next((e for e in graph.edges if e.node == node), None)
    if edge is None:
        raise GraphError(f"no node {node}")
    u, v = edge.ends
    try:
        wu, wv = data.weights[(u, node)], data.weights[(v, node)]
    except KeyError as exc:
        raise GraphError(f"missing weight data at node {node}: {exc}") from None
    l = data.connecting.get(node, edge.connecting)
    if l is None:
        raise GraphError(f"missing connecting number at node {node}")
    r = data.rank
    return wu + wv + (r + 1) * (r - l)


def multiplicity(wt_left, wt_right, r, l):
    """The node formula on bare numbers or polynomials in ``g``."""
    return wt_left + wt_right + (r + 1) * (r - l)


# -- weight formulas ----------------------------------------------------------------
#
# ``a`` is the genus on the far side of the node as seen from the component
# whose weight is computed.  All formulas are exact polynomials in ``g``.


def upstream_weight(g, a, eps):
    """Weight at ``R`` of the component on the marked side: ``g - a - 1 + eps + (a - 1)(g - 1)``."""
    return g - a - 1 + eps + (a - 1) * (g - 1)


def downstream_rational_weight(g, a_up, l):
    """Weight at ``R'`` of a hyperplane of the rational series with order ``l`` removed;
    ``a_up`` is the genus on the marked side."""
    return g - a_up + (a_up - 1) * g + g - 1 - l


def elliptic_tail_weight(g, l):
    """Weight at ``A`` of a hyperplane of ``H^0(gA)`` missing order ``l``."""
    return g * g - g - l


def marked_tail_weight(g):
    """Weight at ``A`` of ``H^0(gA - P)``."""
    return (g - 1) * (g - 2)


def rational_orders_at_node(a: int, g: int) -> tuple[int, ...]:
    """Orders at ``R`` of the rational series of a genus-``g`` flag curve; ``a`` is the twist at ``R``."""
    return tuple(a - 1 + j for j in list(range(a)) + list(range(a + 1, g + 1)))


def elliptic_orders(g: int) -> tuple[int, ...]:
    return tuple(range(g - 2, 2 * g - 3)) + (2 * g - 2,)


def node_correction(g):
    """``(r + 1)(r - l)`` with ``r = g - 2``, ``l = 2g - 2``."""
    return (g - 1) * (g - 2 - (2 * g - 2))


def case2_constant(g):
    """The constant the marked-tail node is written with: ``g(g - 1 - (2g - 2))``."""
    return g * (g - 1 - (2 * g - 2))


def symbolic_identities() -> Report:
    """The node formulas as identities of polynomials in ``g``.

    Each side is affine in the integer parameters, so agreement on
    ``{0, 1}`` in every parameter proves the identity for all values.
    """
    rep = Report("flag-identities")
    g = GPoly.g()
    tag = "node weights"
    rep.check("correction=-g(g-1)", {}, -(g * (g - 1)), node_correction(g), tag)
    rep.check("case2-constant=correction", {}, node_correction(g), case2_constant(g), tag)
    for a_down in (0, 1):
        for l in (0, 1):
            for eps in (0, 1):
                a_up = g - a_down
                lhs = (upstream_weight(g, a_up, eps) + node_correction(g)
                       + downstream_rational_weight(g, a_down, l))
                rhs = GPoly([a_down - 1 - l + eps])
                rep.check(f"case1-rational/a'={a_down}/l={l}/eps={eps}", {"a'": a_down, "l": l, "eps": eps},
                          rhs, lhs, tag)
                # an intermediate form of the same sum
                mid = downstream_rational_weight(g, a_down, l) + (g - 1) * (a_up - g) - a_up + eps
                rep.check(f"case1-intermediate/a'={a_down}/l={l}/eps={eps}",
                          {"a'": a_down, "l": l, "eps": eps}, rhs, mid, tag)
    for l in (0, 1):
        for eps in (0, 1):
            lhs = upstream_weight(g, 1, eps) + elliptic_tail_weight(g, l) + node_correction(g)
            rep.check(f"case1-elliptic/l={l}/eps={eps}", {"l": l, "eps": eps},
                      GPoly([-2 - l + eps]) + g, lhs, tag)
        lhs = downstream_rational_weight(g, 1, l) + marked_tail_weight(g) + case2_constant(g)
        rep.check(f"case2/l={l}", {"l": l}, GPoly([-l]), lhs, tag)
    rep.check("upstream(a=1)=g-2+eps", {}, g - 2, upstream_weight(g, 1, 0), tag)
    rep.check("downstream(a'=1)=2g-2-l", {}, 2 * g - 2, downstream_rational_weight(g, 1, 0), tag)
    return rep


# -- node types -------------------------------------------------------------------


@dataclass(frozen=True)
class NodeOutcome:
    kind: str
    candidates: tuple[tuple[int, int, int], ...]  # (l, eps, multiplicity)

    @property
    def admissible(self) -> tuple[int, ...]:
        return tuple(sorted({m for _, _, m in self.candidates if m >= 0}))

    @property
    def after_parity(self) -> tuple[int, ...]:
        return tuple(m for m in self.admissible if m != 1)


@lru_cache(maxsize=None)
def node_outcome(g: int, kind: str, a_down: int, eps_values: tuple[int, ...] = (0, 1)) -> NodeOutcome:
    """All ``(l, eps)`` candidates at one node.

    ``kind`` is ``"rational"`` or ``"elliptic"`` for the component away from
    the marked point, or ``"marked-tail"`` when the marked point lies on the
    elliptic tail itself.  ``a_down`` is the genus beyond the node.
    """
    r, conn = g - 2, 2 * g - 2
    out = []
    if kind == "marked-tail":
        for l in rational_orders_at_node(1, g):
            m = multiplicity(downstream_rational_weight(g, 1, l), marked_tail_weight(g), r, conn)
            out.append((l, 0, m))
    elif kind == ELLIPTIC:
        for l in elliptic_orders(g):
            for eps in eps_values:
                m = multiplicity(upstream_weight(g, 1, eps), elliptic_tail_weight(g, l), r, conn)
                out.append((l, eps, m))
    elif kind == RATIONAL:
        a_up = g - a_down
        for l in rational_orders_at_node(a_up, g):
            for eps in eps_values:
                m = multiplicity(upstream_weight(g, a_down, eps), downstream_rational_weight(g, a_up, l), r, conn)
                out.append((l, eps, m))
    else:
        raise GraphError(f"unknown node kind {kind}")
    return NodeOutcome(kind, tuple(out))


def tree_shapes(g: int, max_rational: int = DEFAULT_MAX_RATIONAL) -> Iterable[nx.Graph]:
    """Unlabelled trees with exactly ``g`` leaves and up to ``max_rational`` interior vertices."""
    for k in range(1, max_rational + 1):
        n = g + k
        for T in nx.nonisomorphic_trees(n):
            if sum(1 for v in T if T.degree(v) == 1) == g:
                yield T


def _oriented_nodes(graph: DualGraph, marked: int):
    """Each edge with its far component and the genus beyond it, seen from ``marked``."""
    G = graph.graph
    parent = dict(nx.bfs_predecessors(G, marked))
    below = {v: graph.components[v].genus for v in G}
    for v in reversed(list(nx.dfs_preorder_nodes(G, marked))):
        if v in parent:
            below[parent[v]] += below[v]
    for e in graph.edges:
        u, v = e.ends
        near, far = (u, v) if parent.get(v) == u else (v, u)
        yield e, near, far, below[far]


def replay_node_weights(g: int, case: int, graph: DualGraph, marked: int, report: Report | None = None,
                        seen: set | None = None) -> Report:
    """Check every node of ``graph`` with the marked point on component ``marked``.

    Node types already in ``seen`` are skipped, so a sweep reports each once.
    """
    rep = report if report is not None else Report("flag-check")
    seen = set() if seen is None else seen
    comp = graph.components[marked]
    if case == 1 and comp.kind != RATIONAL:
        raise GraphError("case 1 needs the marked point on a rational component")
    if case == 2 and comp.kind != ELLIPTIC:
        raise GraphError("case 2 needs the marked point on an elliptic component")
    if graph.genus != g:
        raise GraphError(f"graph has genus {graph.genus}, expected {g}")
    for e, near, far, a_down in _oriented_nodes(graph, marked):
        if case == 2 and near == marked:
            kind, eps = "marked-tail", (0,)
        else:
            kind = graph.components[far].kind
            # in case 2 the rational neighbour of the marked tail has eps = 0 at its other nodes
            eps = (0,) if case == 2 and _is_neighbour_of(graph, near, marked) else (0, 1)
        out = node_outcome(g, kind, a_down, eps)
        key = f"g={g}/case{case}/{kind}/a={a_down}/eps={eps}"
        if key in seen:
            continue
        seen.add(key)
        tag = "node weights"
        inp = {"g": g, "case": case, "kind": kind, "far_genus": a_down, "eps": list(eps)}
        rep.check(f"{key}/candidates<=1", inp, "<= 1", max(m for _, _, m in out.candidates), tag,
                  ok=all(m <= 1 for _, _, m in out.candidates), certificate={"candidates": out.candidates})
        rep.check(f"{key}/some-admissible", inp, True, bool(out.admissible), tag)
        rep.check(f"{key}/after-parity", inp, (0,), out.after_parity, f"{tag}; {PARITY_RULE}",
                  certificate={"candidates": out.candidates})
    return rep


def _is_neighbour_of(graph: DualGraph, comp: int, marked: int) -> bool:
    return graph.graph.has_edge(comp, marked)


def sweep_shapes(g: int, cases: Sequence[int] = (1, 2), max_rational: int = DEFAULT_MAX_RATIONAL) -> Report:
    """All tree shapes, every placement of the marked point, every node."""
    t0 = time.perf_counter()
    rep = Report("flag-sweep")
    seen: set[str] = set()
    shapes = 0
    for T in tree_shapes(g, max_rational):
        graph = DualGraph.from_tree(T, 2 * g - 2)
        shapes += 1
        for case in cases:
            want = RATIONAL if case == 1 else ELLIPTIC
            for idx, c in enumerate(graph.components):
                if c.kind == want:
                    replay_node_weights(g, case, graph, idx, rep, seen)
    rep.check(f"g={g}/shapes", {"g": g, "max_rational": max_rational}, "> 0", shapes, "enumeration",
              ok=shapes > 0)
    rep.notes.append(f"g={g}: {shapes} tree shapes with at most {max_rational} rational components")
    rep.runtime = time.perf_counter() - t0
    return rep


# -- delegation to concrete series -----------------------------------------------------


def partitions(total: int, max_parts: int = 4) -> Iterable[tuple[int, ...]]:
    """Ordered tuples of positive integers with the given sum."""
    def rec(rem, parts):
        if rem == 0:
            yield tuple(parts)
            return
        if len(parts) == max_parts:
            return
        for a in range(1, rem + 1):
            yield from rec(rem - a, parts + [a])
    yield from rec(total, [])


def flag_series(weights: Sequence[int]) -> LinearSeries:
    """The limit series ``sum H^0(omega((a_j+1)R_j))`` inside ``H^0(omega(sum 2 a_j R_j))``."""
    tw = TwistDivisor.of(POINT_POOL[: len(weights)], weights)
    return build_series_V(tw, tuple((r, 2 * a) for r, a in tw.points))


def adapted_hyperplanes(V: LinearSeries, P) -> dict[int, LinearSeries]:
    """For each order ``l`` at ``P``: the span of an adapted basis minus its order-``l`` section."""
    # rows of the echelon form, pulled back to coordinates of V
    M = expansion_matrix(V, P, V.dim + V.mult(P) + 2)
    aug = [list(row) + [1 if k == j else 0 for k in range(V.dim)] for j, row in enumerate(M)]
    red = rref(aug)
    ncols = len(M[0])
    rows = [(p, row[ncols:]) for row, p in zip(red.rows[: red.rank], red.pivots) if p < ncols]
    return {l: V.with_numerators(V.combine([c for p, c in rows if p != l])) for l, _ in rows}


def delegation_checks(g: int, max_parts: int = 3) -> Report:
    """Weights used by the node formulas, recomputed on concrete series."""
    rep = Report("flag-delegation")
    for parts in partitions(g, max_parts):
        Vp = flag_series(parts)
        tw = Vp.twist
        key = f"g={g}/a={list(parts)}"
        for j, (R, a) in enumerate(tw.points):
            vs = vanishing_sequence(Vp, R)
            rep.check(f"{key}/orders@R{j + 1}", {"a": list(parts), "j": j + 1},
                      rational_orders_at_node(a, g), vs.orders, "node weights, delegated")
            for l, sub in adapted_hyperplanes(Vp, R).items():
                w = vanishing_sequence(sub, R).weight
                rep.check(f"{key}/R{j + 1}/drop{l}", {"a": list(parts), "j": j + 1, "l": l},
                          downstream_rational_weight(g, a, l), w, "node weights, delegated")
        VY = series_minus_point(Vp, GENERIC_POINTS[0])
        for j, (R, a) in enumerate(tw.points):
            eps = vanishing_sequence(VY, R).weight - upstream_weight(g, a, 0)
            rep.check(f"{key}/V(-P)@R{j + 1}", {"a": list(parts), "j": j + 1}, "eps in {0,1}", eps,
                      "node weights, delegated", ok=eps in (0, 1))
    E = ECurve(0, 17)
    V = EllipticSeries.complete(E, g, 2 * g - 2)
    P = E.point(-2, 3)
    VE = subseries_vanishing(V, [(P, 1)])
    rep.check(f"g={g}/elliptic/V(-P)@A", {"g": g}, marked_tail_weight(g), vanishing_sequence_on(VE, ORIGIN).weight,
              "node weights, delegated")
    rep.check(f"g={g}/elliptic/orders@A", {"g": g}, elliptic_orders(g), vanishing_sequence_on(V, ORIGIN).orders,
              "node weights, delegated")
    return rep


def flag_check(genera: Sequence[int] = (3, 5, 7, 9), cases: Sequence[int] = (1, 2),
               max_rational: int = DEFAULT_MAX_RATIONAL) -> Report:
    t0 = time.perf_counter()
    rep = Report("flag-check")
    rep.extend(symbolic_identities())
    for g in genera:
        rep.extend(sweep_shapes(g, cases, max_rational))
        rep.extend(delegation_checks(g))
    rep.notes.append("off-node bounds (<= 2) are the rational and elliptic suites' weight bounds")
    rep.runtime = time.perf_counter() - t0
    return rep
