import networkx as nx
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from s2wcheck.exact.gpoly import GPoly
from s2wcheck.flag import (
    ELLIPTIC,
    RATIONAL,
    Component,
    DualGraph,
    Edge,
    GraphError,
    LimitWeightData,
    case2_constant,
    delegation_checks,
    elliptic_tail_weight,
    flag_check,
    marked_tail_weight,
    node_correction,
    node_multiplicity,
    node_outcome,
    partitions,
    replay_node_weights,
    sweep_shapes,
    symbolic_identities,
    tree_shapes,
    upstream_weight,
    downstream_rational_weight,
)

G = sp.Symbol("g")


def chain(g: int) -> DualGraph:
    """A rational spine of ``g - 2`` components, one elliptic tail on each and one more at each end."""
    C = nx.Graph()
    spine = list(range(g - 2))
    C.add_edges_from(zip(spine, spine[1:]))
    leaf = g - 2
    for v in spine:
        C.add_edge(v, leaf)
        leaf += 1
    C.add_edge(spine[0], leaf)
    C.add_edge(spine[-1], leaf + 1)
    return DualGraph.from_tree(C, 2 * g - 2)


def test_graph_validation():
    E0, E1 = Component(ELLIPTIC, (0,)), Component(ELLIPTIC, (0,))
    ok = DualGraph((E0, Component(RATIONAL, (0, 1)), Component(ELLIPTIC, (1,))),
                   (Edge(0, (0, 1)), Edge(1, (1, 2))))
    assert ok.genus == 2
    with pytest.raises(GraphError):
        DualGraph((E0, E1), ())
    with pytest.raises(GraphError):  # a rational component with one node
        DualGraph((E0, Component(RATIONAL, (0,))), (Edge(0, (0, 1)),))
    with pytest.raises(GraphError):  # node lists disagree with edges
        DualGraph((E0, Component(ELLIPTIC, (1,))), (Edge(0, (0, 1)),))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.integers(0, 2**31 - 1))
def test_random_trees_with_flag_axioms(n, s):
    T = nx.random_labeled_tree(n, seed=s) if hasattr(nx, "random_labeled_tree") else nx.random_tree(n, seed=s)
    graph = DualGraph.from_tree(T)
    leaves = sum(1 for v in T if T.degree(v) == 1)
    assert graph.genus == leaves
    for e in graph.edges:
        u, v = e.ends
        assert graph.side_genus(e, u) + graph.side_genus(e, v) == leaves


def test_node_multiplicity_examples():
    graph = chain(5)
    e = graph.edges[0]
    data = LimitWeightData(rank=3, weights={(e.ends[0], e.node): 0, (e.ends[1], e.node): 0}, connecting={e.node: 3})
    assert node_multiplicity(data, graph, e.node) == 0
    with pytest.raises(GraphError):
        node_multiplicity(LimitWeightData(rank=3), graph, e.node)


def test_correction_and_case2_constant_agree():
    g = GPoly.g()
    assert node_correction(g) == -(g * (g - 1))
    assert case2_constant(g) == node_correction(g)
    assert sp.expand((G - 1) * (G - 2 - (2 * G - 2)) + G * (G - 1)) == 0


def test_symbolic_identities():
    rep = symbolic_identities()
    assert rep.ok and len(rep.cases) > 10


def test_identities_against_sympy():
    a, l, eps = sp.symbols("a l eps")
    lhs = (upstream_weight(G, G - a, eps) + node_correction(G) + downstream_rational_weight(G, a, l))
    assert sp.expand(lhs - (a - 1 - l + eps)) == 0
    lhs2 = downstream_rational_weight(G, 1, l) + marked_tail_weight(G) + case2_constant(G)
    assert sp.expand(lhs2 + l) == 0
    assert sp.expand(elliptic_tail_weight(G, l) - (G * G - G - l)) == 0


def test_marked_tail_weight_example():
    assert marked_tail_weight(5) == 12


def test_case1_unit_branch():
    out = node_outcome(5, RATIONAL, 1)
    assert set(out.admissible) <= {0, 1}
    assert out.after_parity == (0,)


@pytest.mark.parametrize("g", [3, 5, 7])
@pytest.mark.parametrize("kind", [RATIONAL, ELLIPTIC, "marked-tail"])
def test_every_node_kind_ends_at_zero(g, kind):
    for a in range(1, g):
        out = node_outcome(g, kind, a)
        assert all(m <= 1 for _, _, m in out.candidates)
        assert out.after_parity == (0,)


def test_replay_on_caterpillar():
    graph = chain(7)
    rational = [i for i, c in enumerate(graph.components) if c.kind == RATIONAL]
    elliptic = [i for i, c in enumerate(graph.components) if c.kind == ELLIPTIC]
    assert replay_node_weights(7, 1, graph, rational[0]).ok
    assert replay_node_weights(7, 2, graph, elliptic[0]).ok
    with pytest.raises(GraphError):
        replay_node_weights(7, 1, graph, elliptic[0])
    with pytest.raises(GraphError):
        replay_node_weights(5, 1, graph, rational[0])


def test_tree_shapes_have_g_leaves():
    shapes = list(tree_shapes(5, 3))
    assert shapes
    for T in shapes:
        assert sum(1 for v in T if T.degree(v) == 1) == 5


def test_partitions():
    assert sorted(partitions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert all(len(p) <= 2 for p in partitions(5, 2))


def test_sweep_g7():
    rep = sweep_shapes(7, max_rational=6)
    assert rep.ok


def test_delegation_g5():
    assert delegation_checks(5).ok


def test_flag_check_small():
    assert flag_check((3,)).ok
