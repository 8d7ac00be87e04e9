import pytest

from operadkit import bv
from operadkit import configurations as C
from operadkit import graphs as G


def two_level_element():
    inner = G.make_graph("uv", [("u", "v", 1)], 2)
    outer = G.make_graph(["{u,v}", "w"], [("{u,v}", "w", 2)], 2)
    tree = bv.wnode(
        [bv.wnode([bv.WLeaf("u"), bv.WLeaf("v")], inner), bv.WLeaf("w")],
        outer,
    )
    return bv.WElement(tree, 2)


def test_wrap_produces_a_corolla():
    g = G.make_graph("abc", [("a", "b", 1), ("b", "c", 2), ("a", "c", 1)], 2)
    x = bv.w_iota(g)
    assert bv.internal_vertex_count(x.tree) == 1
    assert x.leaves == ("a", "b", "c")


def test_collapse_of_two_level_tree_composes_labels():
    x = two_level_element()
    collapsed = bv.w_pi(x)
    inner = G.make_graph("uv", [("u", "v", 1)], 2)
    outer = G.make_graph(["{u,v}", "w"], [("{u,v}", "w", 2)], 2)
    assert collapsed.arcs == G.compose(outer, "{u,v}", inner).arcs


def test_collapse_after_wrap_is_identity_everywhere():
    for g in G.enumerate_graphs("abc", 2):
        assert bv.w_pi(bv.w_iota(g)).arcs == g.arcs


def test_wrap_after_collapse_sits_below():
    x = two_level_element()
    assert bv.w_leq(bv.w_iota(bv.w_pi(x)), x)
    assert not bv.w_leq(x, bv.w_iota(bv.w_pi(x)))


def test_wleq_reflexive_and_label_monotone():
    x = two_level_element()
    assert bv.w_leq(x, x)
    corolla_small = bv.w_iota(
        G.make_graph("uvw", [("u", "v", 1), ("u", "w", 1), ("v", "w", 1)], 2)
    )
    assert bv.w_leq(corolla_small, x)


def test_enumeration_count_and_partial_order():
    elements = bv.enumerate_welements("abc", 2, max_internal=2)
    assert len(elements) == 96
    corollas = [x for x in elements if bv.internal_vertex_count(x.tree) == 1]
    assert len(corollas) == 48
    size = len(elements)
    below = [
        [bv.w_leq(elements[i], elements[j]) for j in range(size)]
        for i in range(size)
    ]
    for i in range(size):
        assert below[i][i]
        for j in range(size):
            if i != j and below[i][j]:
                assert not below[j][i]
            if below[i][j]:
                for k in range(size):
                    if below[j][k]:
                        assert below[i][k]


def test_collapse_and_wrap_are_monotone():
    from operadkit import graphs as G

    elements = bv.enumerate_welements("abc", 2, max_internal=2)
    for x in elements:
        for y in elements:
            if bv.w_leq(x, y):
                assert G.leq(bv.w_pi(x), bv.w_pi(y))
    pool = G.enumerate_graphs("abc", 2)
    for g in pool:
        for h in pool:
            if G.leq(g, h):
                assert bv.w_leq(bv.w_iota(g), bv.w_iota(h))


def test_wrap_collapse_below_everywhere():
    for x in bv.enumerate_welements("abc", 2, max_internal=2):
        assert bv.w_leq(bv.w_iota(bv.w_pi(x)), x)


def test_compose_with_unit_leaf():
    x = two_level_element()
    unit = bv.WElement(bv.WLeaf("z"), 2)
    composed = bv.w_compose(x, "w", unit)
    assert composed.leaves == ("u", "v", "z")


def test_compose_grafts_and_relabels():
    outer = bv.w_iota(G.make_graph("ab", [("a", "b", 2)], 2))
    inner = bv.w_iota(G.make_graph("uv", [("u", "v", 1)], 2))
    grafted = bv.w_compose(outer, "a", inner)
    assert bv.internal_vertex_count(grafted.tree) == 2
    assert grafted.leaves == ("b", "u", "v")
    root = grafted.tree
    assert isinstance(root, bv.WNode)
    assert root.label.arcs == (("{u,v}", "b", 2),)
    assert bv.w_pi(grafted).arcs == G.compose(
        bv.w_pi(outer), "a", bv.w_pi(inner)
    ).arcs


def test_compose_associativity_small():
    a = bv.w_iota(G.make_graph("pq", [("p", "q", 1)], 2))
    b = bv.w_iota(G.make_graph("rs", [("s", "r", 2)], 2))
    c = bv.w_iota(G.make_graph("tu", [("t", "u", 2)], 2))
    left = bv.w_compose(bv.w_compose(a, "q", b), "r", c)
    right = bv.w_compose(a, "q", bv.w_compose(b, "r", c))
    assert left == right


def test_labelled_trees_biject_with_label_products():
    # For a fixed two-level shape the elements are exactly the label choices.
    elements = bv.enumerate_welements("abc", 2, max_internal=2)
    two_level = [
        x
        for x in elements
        if bv.internal_vertex_count(x.tree) == 2
        and any(
            isinstance(child, bv.WNode)
            and set(bv.tree_leaves(child)) == {"a", "b"}
            for child in x.tree.children  # type: ignore[union-attr]
        )
    ]
    assert len(two_level) == 16  # 4 inner labels x 4 outer labels


# ---------------------------------------------------------------------------
# contraction order


def test_contractions_of_two_level_tree():
    x = two_level_element()
    shapes = list(bv.contractions(x.tree))
    assert len(shapes) == 2
    counts = sorted(bv.internal_vertex_count(t) for t in shapes)
    assert counts == [1, 2]


def test_wleq_respects_leaf_sets():
    x = two_level_element()
    other = bv.w_iota(G.make_graph("xy", [("x", "y", 1)], 2))
    with pytest.raises(bv.WTreeError):
        bv.w_leq(x, other)


# ---------------------------------------------------------------------------
# strata


def test_stratum_corolla_matches_wrap():
    config = C.point_config(2, {"a": (0, 0), "b": (1, 0), "c": (1, 1)})
    shape = bv.stratum_node(["a", "b", "c"], config)
    element = bv.fm_psi_stratum(shape, 2)
    assert element == bv.w_iota(C.psi(config))


def test_stratum_two_level():
    inner_conf = C.point_config(2, {"u": (0, 0), "v": (0, 1)})
    outer_conf = C.point_config(2, {"{u,v}": (0, 0), "w": (1, 0)})
    shape = bv.stratum_node(
        [bv.stratum_node(["u", "v"], inner_conf), "w"], outer_conf
    )
    element = bv.fm_psi_stratum(shape, 2)
    assert bv.internal_vertex_count(element.tree) == 2
    root = element.tree
    assert isinstance(root, bv.WNode)
    assert root.label.arcs == (("{u,v}", "w", 1),)


def test_stratum_requires_binary_inputs():
    config = C.point_config(2, {"a": (0, 0)})
    with pytest.raises(bv.WTreeError):
        bv.stratum_node(["a"], config)


def test_stratum_rescaling_fixes_image():
    conf1 = C.point_config(2, {"a": (0, 0), "b": (1, 0)})
    conf2 = C.point_config(2, {"a": (0, 0), "b": (7, 0)})
    s1 = bv.stratum_node(["a", "b"], conf1)
    s2 = bv.stratum_node(["a", "b"], conf2)
    assert bv.fm_psi_stratum(s1, 2) == bv.fm_psi_stratum(s2, 2)


def test_stratum_graft_commutes_with_composition():
    inner_conf = C.point_config(2, {"u": (0, 0), "v": (1, 1)})
    outer_conf = C.point_config(2, {"a": (0, 1), "b": (2, 0)})
    inner = bv.stratum_node(["u", "v"], inner_conf)
    outer = bv.stratum_node(["a", "b"], outer_conf)
    grafted = bv.stratum_graft(outer, "a", inner)
    assert bv.fm_psi_stratum(grafted, 2) == bv.w_compose(
        bv.fm_psi_stratum(outer, 2), "a", bv.fm_psi_stratum(inner, 2)
    )


def test_json_round_trip():
    x = two_level_element()
    data = bv.welement_to_json(x)
    assert bv.welement_from_json(data) == x
