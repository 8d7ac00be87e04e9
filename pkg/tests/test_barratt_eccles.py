import itertools

import pytest

from operadkit import barratt_eccles as BE
from operadkit import graphs as G
from operadkit import topology as T


def all_simplices(letters, max_dim):
    """Every order sequence (degenerate ones included) up to a dimension."""
    orders = [tuple(p) for p in itertools.permutations(sorted(letters))]
    out = []
    for k in range(max_dim + 1):
        for rows in itertools.product(orders, repeat=k + 1):
            out.append(BE.BESimplex(rows))
    return out


def test_weight_of_constant_sequence():
    x = BE.simplex([["a", "b", "c"]] * 3)
    for a, b in itertools.combinations("abc", 2):
        assert BE.be_weight(x, a, b) == 1


def test_weight_counts_switches():
    x = BE.simplex([["a", "b"], ["a", "b"], ["b", "a"], ["a", "b"]])
    assert BE.be_weight(x, "a", "b") == 3
    assert BE.in_gamma_n(x, 3)
    assert not BE.in_gamma_n(x, 2)


def test_weight_rejects_equal_vertices():
    with pytest.raises(BE.SimplexError):
        BE.be_weight(BE.simplex([["a", "b"]]), "a", "a")


def test_weights_under_faces_and_degeneracies():
    for x in all_simplices("abc", 3):
        for a, b in itertools.combinations("abc", 2):
            w = BE.be_weight(x, a, b)
            for j in range(x.dim + 1):
                assert BE.be_weight(BE.be_degeneracy(x, j), a, b) == w
            if x.dim > 0:
                for i in range(x.dim + 1):
                    assert BE.be_weight(BE.be_face(x, i), a, b) <= w


def test_gamma_n_closed_under_operators():
    n = 2
    for x in all_simplices("abc", 2):
        if not BE.in_gamma_n(x, n):
            continue
        for j in range(x.dim + 1):
            assert BE.in_gamma_n(BE.be_degeneracy(x, j), n)
        if x.dim > 0:
            for i in range(x.dim + 1):
                assert BE.in_gamma_n(BE.be_face(x, i), n)


def test_simplicial_identities():
    for x in all_simplices("ab", 3):
        k = x.dim
        if k >= 2:
            for i in range(k + 1):
                for j in range(i + 1, k + 1):
                    assert BE.be_face(BE.be_face(x, j), i) == BE.be_face(
                        BE.be_face(x, i), j - 1
                    )
        for j in range(k + 1):
            assert BE.be_face(BE.be_degeneracy(x, j), j) == x
            assert BE.be_face(BE.be_degeneracy(x, j), j + 1) == x


def test_face_of_nondegenerate_may_degenerate():
    x = BE.simplex([["a", "b"], ["b", "a"], ["a", "b"]])
    assert BE.is_nondegenerate(x)
    assert not BE.is_nondegenerate(BE.be_face(x, 1))


# ---------------------------------------------------------------------------
# composition and the map to tournaments


def test_compose_dimension_zero():
    x = BE.simplex([["a1", "a2"]])
    y = BE.simplex([["b1", "b2"]])
    assert BE.be_compose(x, "a2", y).orders == (("a1", "b1", "b2"),)


def test_compose_requires_matching_dimension():
    with pytest.raises(BE.SimplexError):
        BE.be_compose(
            BE.simplex([["a", "b"]]), "b", BE.simplex([["u", "v"], ["v", "u"]])
        )


def test_compose_unit_law():
    x = BE.simplex([["a", "b"], ["b", "a"]])
    unit = BE.simplex([["z"], ["z"]])
    composed = BE.be_compose(x, "b", unit)
    assert composed.orders == (("a", "z"), ("z", "a"))


def test_gamma_strict_morphism_exhaustive():
    lefts = [x for x in all_simplices("ab", 2) if BE.in_gamma_n(x, 2)]
    rights = [y for y in all_simplices("uv", 2) if BE.in_gamma_n(y, 2)]
    for x in lefts:
        for y in rights:
            if x.dim != y.dim:
                continue
            lhs = BE.be_gamma(BE.be_compose(x, "b", y), 2)
            rhs = G.compose(BE.be_gamma(x, 2), "b", BE.be_gamma(y, 2))
            assert lhs.arcs == rhs.arcs


def test_gamma_examples():
    flat = BE.simplex([["a", "b", "c"]])
    assert BE.be_gamma(flat).arcs == (
        ("a", "b", 1),
        ("a", "c", 1),
        ("b", "c", 1),
    )
    x = BE.simplex([["a", "b"], ["a", "b"], ["b", "a"], ["a", "b"]])
    assert BE.be_gamma(x).arcs == (("a", "b", 3),)


def test_gamma_monotone_under_faces():
    for x in all_simplices("abc", 2):
        if x.dim == 0:
            continue
        tour = BE.be_gamma(x, 3)
        for i in range(x.dim + 1):
            assert G.leq(BE.be_gamma(BE.be_face(x, i), 3), tour)


def test_gamma_equivariance():
    x = BE.simplex([["a", "b", "c"], ["c", "a", "b"]])
    swap = {"a": "b", "b": "a", "c": "c"}
    assert BE.be_gamma(BE.be_relabel(x, swap), 2).arcs == G.relabel(
        BE.be_gamma(x, 2), swap
    ).arcs


# ---------------------------------------------------------------------------
# the section


def test_sigma_on_aligned_simplex_is_degenerate():
    g = G.make_graph("ab", [("a", "b", 2)], 2)
    x = BE.simplex([["a", "b"], ["b", "a"]])
    lifted = BE.be_sigma(x, g)
    assert lifted.orders[0] == ("a", "b")
    assert not BE.is_nondegenerate(lifted)


def test_sigma_section_property_exhaustive():
    pool = G.enumerate_graphs("abc", 2)
    simplices = [x for x in all_simplices("abc", 2) if BE.in_gamma_n(x, 2)]
    for g in pool:
        for x in simplices:
            if not G.leq(BE.be_gamma(x, 2), g):
                continue
            lifted = BE.be_sigma(x, g)
            assert G.leq(BE.be_gamma(lifted, 2), g)
            assert BE.be_face(lifted, 0) == x


def test_sigma_rejects_simplices_not_over_the_graph():
    g = G.make_graph("ab", [("a", "b", 1)], 2)
    x = BE.simplex([["b", "a"]])
    with pytest.raises(BE.SimplexError):
        BE.be_sigma(x, g)


# ---------------------------------------------------------------------------
# enumeration


def test_enumerate_counts_two_letters():
    assert BE.enumerate_gamma_n("ab", 1).counts() == (2,)
    assert BE.enumerate_gamma_n("ab", 2).counts() == (2, 2)
    assert BE.enumerate_gamma_n("ab", 3).counts() == (2, 2, 2)


@pytest.mark.parametrize("n,dim", [(1, 0), (2, 1), (3, 2)])
def test_two_letter_stage_is_a_sphere(n, dim):
    result = T.homology(BE.enumerate_gamma_n("ab", n))
    assert result == T.sphere_signature(dim, len(result.betti))


def test_enumerate_filtered_by_graph():
    g = G.make_graph("ab", [("a", "b", 1)], 1)
    assert BE.enumerate_gamma_n("ab", 1, g).counts() == (1,)


def test_enumerate_matches_filter_oracle():
    sset = BE.enumerate_gamma_n("abc", 2)
    by_dim = {}
    for x in all_simplices("abc", 3):
        if BE.is_nondegenerate(x) and BE.in_gamma_n(x, 2):
            by_dim.setdefault(x.dim, set()).add(x)
    for dim, level in enumerate(sset.simplices):
        assert set(level) == by_dim.get(dim, set())
    assert max(by_dim) == sset.dimension()


def test_fibers_have_trivial_homology():
    for g in G.enumerate_graphs("ab", 2) + G.enumerate_graphs("abc", 2)[:8]:
        letters = "".join(g.vertices)
        sset = BE.enumerate_gamma_n(letters, 2, g)
        assert T.homology(sset).is_trivial()


def test_json_round_trip():
    x = BE.simplex([["a", "b", "c"], ["b", "a", "c"]])
    assert BE.simplex_from_json(BE.simplex_to_json(x)) == x
