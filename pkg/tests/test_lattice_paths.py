import itertools
import random
from fractions import Fraction as F

import pytest

from operadkit import graphs as G
from operadkit import lattice_paths as L
from operadkit import topology as T


def p(text):
    return L.parse_path(text)


# ---------------------------------------------------------------------------
# shape and restriction


def test_blocks_and_string_form():
    x = p("ab|a|bb")
    assert x.letters == ("a", "b", "a", "b", "b")
    assert x.bars == (2, 3)
    assert str(x) == "ab|a|bb"


def test_restrict_drops_letters_and_reindexes_bars():
    x = p("ab|a|bb")
    restricted = L.lp_restrict(x, ["a"])
    assert restricted.letters == ("a", "a")
    assert restricted.bars == (1, 2)
    assert str(restricted) == "a|a|"


def test_restrict_to_full_alphabet_is_identity():
    x = p("ab|a|bb")
    assert L.lp_restrict(x, "ab") == x


def test_restrict_commutes_with_renaming():
    x = p("abcab")
    swap = {"a": "b", "b": "a", "c": "c"}
    renamed = L.LatticePath(tuple(swap[ch] for ch in x.letters), x.bars)
    assert L.lp_restrict(renamed, ["a", "c"]).letters == tuple(
        swap[ch]
        for ch in L.lp_restrict(x, ["b", "c"]).letters
    )


def test_restrict_rejects_empty():
    with pytest.raises(L.PathError):
        L.lp_restrict(p("ab"), [])


# ---------------------------------------------------------------------------
# weights


def test_weight_examples():
    assert L.lp_weight(p("ab|a|bb"), "a", "b") == 3
    assert L.lp_weight(p("aabb"), "a", "b") == 1
    assert L.lp_max_weight(p("ab|a|bb")) == 3


def short_words(alphabet, max_len):
    out = []
    for length in range(len(alphabet), max_len + 1):
        for word in itertools.product(alphabet, repeat=length):
            if set(word) == set(alphabet):
                out.append(word)
    return out


def test_weight_never_rises_under_faces_and_fixed_under_degeneracies():
    for word in short_words("ab", 6):
        x = L.LatticePath(word, ())
        w = L.lp_weight(x, "a", "b")
        for a in "ab":
            fiber = x.fiber(a)
            for j in range(len(fiber)):
                assert L.lp_weight(L.lp_simple_degeneracy(x, a, j), "a", "b") == w
            if len(fiber) > 1:
                for i in range(len(fiber)):
                    assert L.lp_weight(L.lp_simple_face(x, a, i), "a", "b") <= w


def test_weight_ignores_bars():
    for bars in [(), (0,), (2,), (1, 3), (4, 4)]:
        x = L.LatticePath(tuple("abab"), bars)
        assert L.lp_weight(x, "a", "b") == 3


# ---------------------------------------------------------------------------
# simplicial and cosimplicial operators


def test_degeneracy_then_face_is_identity():
    x = p("ab|a|bb")
    for a in "ab":
        m = len(x.fiber(a)) - 1
        for j in range(m + 1):
            dup = L.lp_simple_degeneracy(x, a, j)
            assert L.lp_simple_face(dup, a, j) == x
            assert L.lp_simple_face(dup, a, j + 1) == x


def test_simplicial_identities_on_short_paths():
    for word in short_words("ab", 5):
        x = L.LatticePath(word, (1,))
        for a in "ab":
            m = len(x.fiber(a)) - 1
            if m < 2:
                continue
            for i in range(m + 1):
                for j in range(i + 1, m + 1):
                    lhs = L.lp_simple_face(L.lp_simple_face(x, a, j), a, i)
                    rhs = L.lp_simple_face(L.lp_simple_face(x, a, i), a, j - 1)
                    assert lhs == rhs


def test_mixed_direction_faces_commute():
    x = p("abab")
    one = L.lp_simple_face(L.lp_simple_face(x, "a", 0), "b", 1)
    other = L.lp_simple_face(L.lp_simple_face(x, "b", 1), "a", 0)
    assert one == other


def test_coface_inserts_empty_blocks():
    x = p("ab|a|bb")
    assert str(L.lp_coface(x, 0)) == "|ab|a|bb"
    assert str(L.lp_coface(x, 3)) == "ab|a|bb|"
    assert str(L.lp_coface(x, 1)) == "ab||a|bb"


def test_codegeneracy_merges_blocks():
    x = p("ab|a|bb")
    assert str(L.lp_codegeneracy(x, 0)) == "aba|bb"
    assert str(L.lp_codegeneracy(x, 1)) == "ab|abb"


def test_cosimplicial_identities():
    x = p("ab|a|bb")
    n = x.degree
    for i in range(n + 2):
        for j in range(i, n + 2):
            lhs = L.lp_coface(L.lp_coface(x, j), i)
            rhs = L.lp_coface(L.lp_coface(x, i), j + 1)
            assert lhs == rhs
    for i in range(n):
        assert L.lp_codegeneracy(L.lp_coface(x, i), i) == x
        assert L.lp_codegeneracy(L.lp_coface(x, i + 1), i) == x


def test_general_cosimplicial_operator():
    x = p("ab|a|bb")
    collapsed = L.lp_cosimplicial(x, [0, 0, 0], 0)
    assert collapsed == p("abab" + "b")
    stretched = L.lp_cosimplicial(x, [0, 2, 4], 4)
    assert str(stretched) == "ab||a||bb"


# ---------------------------------------------------------------------------
# substitution


def test_substitute_singleton_renames():
    x = p("aba")
    y = L.parse_path("z|zz")
    assert L.lp_substitute(x, "a", y).letters == ("z", "b", "z", "z")


def test_substitute_blocks_into_occurrences():
    x = p("aba")
    y = L.parse_path("uv|u")
    result = L.lp_substitute(x, "a", y)
    assert result.letters == ("u", "v", "b", "u")
    assert result.bars == ()


def test_substitute_requires_matching_arity():
    with pytest.raises(L.PathError):
        L.lp_substitute(p("aba"), "a", p("uv"))


def test_substitute_handles_empty_blocks():
    x = p("aba")
    y = L.parse_path("uv|")
    result = L.lp_substitute(x, "a", y)
    assert result.letters == ("u", "v", "b")


def test_substitute_keeps_outer_bars():
    x = L.LatticePath(tuple("aba"), (1,))
    y = L.parse_path("u|vu")
    result = L.lp_substitute(x, "a", y)
    assert result.letters == ("u", "b", "v", "u")
    assert result.bars == (1,)


def test_substitution_cosimplicial_compatibility_seeded():
    rng = random.Random(99)
    for _ in range(300):
        length = rng.randint(2, 5)
        word = tuple(rng.choice("ab") for _ in range(length))
        if set(word) != {"a", "b"}:
            continue
        x = L.LatticePath(word, ())
        m = len(x.fiber("a")) - 1
        k = rng.randint(0, m + 1)
        rho = sorted(rng.randint(0, m) for _ in range(k + 1))
        y_len = rng.randint(2, 5)
        y_word = tuple(rng.choice("uv") for _ in range(y_len))
        if set(y_word) != {"u", "v"}:
            continue
        cuts = tuple(sorted(rng.randint(0, y_len) for _ in range(len(rho) - 1)))
        y = L.LatticePath(y_word, cuts)
        lhs = L.lp_substitute(L.lp_face(x, "a", rho), "a", y)
        rhs = L.lp_substitute(x, "a", L.lp_cosimplicial(y, rho, m))
        assert lhs == rhs


def test_gamma_laxity_under_substitution():
    rng = random.Random(5)
    for _ in range(200):
        word = tuple(rng.choice("ab") for _ in range(rng.randint(2, 5)))
        if set(word) != {"a", "b"}:
            continue
        x = L.LatticePath(word, ())
        fiber = len(x.fiber("a"))
        y_word = tuple(rng.choice("uv") for _ in range(rng.randint(2, 5)))
        if set(y_word) != {"u", "v"}:
            continue
        cuts = tuple(sorted(rng.randint(0, len(y_word)) for _ in range(fiber - 1)))
        y = L.LatticePath(y_word, cuts)
        composed = L.lp_substitute(x, "a", y)
        n = max(
            2,
            L.lp_max_weight(composed),
            L.lp_max_weight(x),
            L.lp_max_weight(y),
        )
        lhs = L.lp_gamma(composed, n)
        rhs = G.compose(L.lp_gamma(x, n), "a", L.lp_gamma(y, n))
        assert G.leq(lhs, rhs)
        for pair in itertools.combinations(sorted(set(word) - {"a"}), 2):
            assert lhs.weight(*pair) == rhs.weight(*pair)
        for pair in itertools.combinations(sorted(set(y_word)), 2):
            assert lhs.weight(*pair) == rhs.weight(*pair)


# ---------------------------------------------------------------------------
# gamma and sigma


def test_gamma_examples():
    assert L.lp_gamma(p("abc")).arcs == (
        ("a", "b", 1),
        ("a", "c", 1),
        ("b", "c", 1),
    )
    assert L.lp_gamma(p("ab|a|bb")).arcs == (("a", "b", 3),)


def test_gamma_equivariance():
    x = p("abcb")
    swap = {"a": "c", "b": "b", "c": "a"}
    renamed = L.LatticePath(tuple(swap[ch] for ch in x.letters), x.bars)
    assert L.lp_gamma(renamed, 3).arcs == G.relabel(L.lp_gamma(x, 3), swap).arcs


def test_sigma_prepends_least_vertex():
    g = G.make_graph("ab", [("a", "b", 2)], 2)
    assert L.lp_sigma(p("ba"), g) == p("aba")
    assert L.lp_sigma(p("ab"), g) == p("aab")


def test_sigma_section_and_bound_exhaustive():
    for g in G.enumerate_graphs("ab", 2) + G.enumerate_graphs("abc", 2)[:10]:
        letters = "".join(g.vertices)
        least = G.underlying_order(g)[0]
        for x in L.enumerate_L_g(letters, g):
            lifted = L.lp_sigma(x, g)
            assert G.leq(L.lp_gamma(lifted, g.max_weight), g)
            assert lifted.letters[0] == least
            assert lifted.letters[1:] == x.letters
            for other in g.vertices:
                if other == least:
                    continue
                rise = L.lp_weight(lifted, least, other) - L.lp_weight(
                    x, least, other
                )
                first_of_pair = next(
                    ch for ch in x.letters if ch in (least, other)
                )
                assert rise == (1 if first_of_pair == other else 0)


def test_sigma_rejects_bars_and_bad_base():
    g = G.make_graph("ab", [("a", "b", 1)], 1)
    with pytest.raises(L.PathError):
        L.lp_sigma(L.LatticePath(tuple("ab"), (1,)), g)
    with pytest.raises(L.PathError):
        L.lp_sigma(p("ba"), g)


# ---------------------------------------------------------------------------
# realisation points


def test_normalize_identity_on_normal_points():
    point = L.lp_normalize_point(p("ab"), [F(1), F(1)])
    again = L.lp_normalize_point(point.path, point.coords)
    assert again == point


def test_normalize_merges_duplicates():
    point = L.lp_normalize_point(p("aab"), [F(1, 2), F(1, 2), F(1)])
    assert point.path == p("ab")
    assert point.coords == (F(1), F(1))


def test_normalize_drops_zeros_then_merges():
    point = L.lp_normalize_point(p("abab"), [F(1, 2), F(0), F(1, 2), F(1)])
    assert point.path == p("ab")
    assert point.coords == (F(1), F(1))


def test_normalize_rejects_vanishing_letters():
    with pytest.raises(L.PathError):
        L.lp_normalize_point(p("ab"), [F(1), F(0)])


def test_normalize_respects_bars():
    # Equal letters in different blocks stay separate.
    point = L.lp_normalize_point(L.LatticePath(tuple("aa"), (1,)), [F(1, 2), F(1, 2)])
    assert point.path.letters == ("a", "a")
    assert point.path.bars == (1,)


def test_split_point_examples():
    base = L.lp_normalize_point(p("ab"), [F(1), F(1)])
    split = L.lp_split_point(base, [F(1, 2), F(3, 2)])
    assert str(split.path) == "a|ab"
    assert split.coords == (F(1, 2), F(1, 2), F(1))
    back, masses = L.lp_project_point(split)
    assert back == base
    assert masses == (F(1, 2), F(3, 2))


def test_split_zero_degree_is_identity():
    base = L.lp_normalize_point(p("ba"), [F(1), F(1)])
    assert L.lp_split_point(base, [F(2)]) == base


def test_single_letter_paths_are_simplices():
    # Points over one letter with n bars carry exactly the block masses.
    base = L.lp_normalize_point(p("a"), [F(1)])
    split = L.lp_split_point(base, [F(1, 3), F(0), F(2, 3)])
    assert split.path.bars == (1, 1)
    _, masses = L.lp_project_point(split)
    assert masses == (F(1, 3), F(0), F(2, 3))


def test_split_project_random_round_trips():
    rng = random.Random(77)
    for _ in range(300):
        alphabet = "abc"[: rng.randint(1, 3)]
        word = []
        for _i in range(rng.randint(len(alphabet), 6)):
            word.append(rng.choice(alphabet))
        if set(word) != set(alphabet):
            continue
        collapsed = [word[0]]
        for ch in word[1:]:
            if ch != collapsed[-1]:
                collapsed.append(ch)
        raw = {
            a: [F(rng.randint(1, 9)) for _ in range(collapsed.count(a))]
            for a in alphabet
        }
        coords = []
        seen = {a: 0 for a in alphabet}
        for ch in collapsed:
            total = sum(raw[ch], F(0))
            coords.append(raw[ch][seen[ch]] / total)
            seen[ch] += 1
        point = L.RealizationPoint(L.LatticePath(tuple(collapsed), ()), tuple(coords))
        n = rng.randint(0, 3)
        cuts = sorted(F(rng.randint(0, 24), 24) * len(alphabet) for _ in range(n))
        masses = []
        prev = F(0)
        for cut in cuts:
            masses.append(cut - prev)
            prev = cut
        masses.append(F(len(alphabet)) - prev)
        split = L.lp_split_point(point, masses)
        back, masses_back = L.lp_project_point(split)
        assert back == point
        assert list(masses_back) == masses


# ---------------------------------------------------------------------------
# enumeration and the diagonal


def test_enumerate_under_minimal_graph():
    g = G.make_graph("ab", [("a", "b", 1)], 1)
    assert [str(x) for x in L.enumerate_L_g("ab", g)] == ["ab"]


def test_enumerate_single_letter():
    g = G.unit_graph("a", 1)
    assert [str(x) for x in L.enumerate_L_g("a", g)] == ["a"]


def test_enumerate_regression_counts_for_two_letters():
    expected = {
        (("a", "b", 1),): 1,
        (("a", "b", 2),): 3,
        (("b", "a", 1),): 1,
        (("b", "a", 2),): 3,
    }
    for g in G.enumerate_graphs("ab", 2):
        assert len(L.enumerate_L_g("ab", g)) == expected[g.arcs]


def test_enumerated_paths_lie_under_the_graph():
    g = G.make_graph("abc", [("a", "b", 2), ("b", "c", 1), ("a", "c", 2)], 2)
    paths = L.enumerate_L_g("abc", g)
    assert paths
    for x in paths:
        assert L.is_nondegenerate(x)
        assert G.leq(L.lp_gamma(x, 2), g)


def test_enumerate_paths_counts():
    assert [str(x) for x in L.enumerate_paths("a", 1)] == ["a"]
    assert [str(x) for x in L.enumerate_paths("ab", 1)] == ["ab", "ba"]
    assert set(str(x) for x in L.enumerate_paths("ab", 2)) == {
        "ab",
        "ba",
        "aba",
        "bab",
    }


def test_diagonal_cells_of_two_letter_stage():
    g = G.make_graph("ab", [("a", "b", 2)], 2)
    cells = L.diagonal_cells(L.enumerate_L_g("ab", g))
    sset = T.diagonal(
        cells,
        lambda _k, x, i: L.diag_face(x, i),
        lambda _k, x, j: L.diag_degeneracy(x, j),
    )
    assert sset.counts() == (2, 1)
    assert [str(s) for s in sset.simplices[1]] == ["abba"]
    assert T.homology(sset).is_trivial()


@pytest.mark.parametrize("letters", ["ab", "abc"])
def test_diagonal_homology_vanishes(letters):
    for g in G.enumerate_graphs(letters, 2):
        cells = L.diagonal_cells(L.enumerate_L_g(letters, g))
        sset = T.diagonal(
            cells,
            lambda _k, x, i: L.diag_face(x, i),
            lambda _k, x, j: L.diag_degeneracy(x, j),
        )
        assert T.homology(sset).is_trivial()


def test_faces_of_diagonal_cells_stay_under_the_graph():
    g = G.make_graph("abc", [("a", "b", 2), ("b", "c", 2), ("a", "c", 2)], 2)
    cells = L.diagonal_cells(L.enumerate_L_g("abc", g))
    for dim, level in enumerate(cells):
        if dim == 0:
            continue
        for x in level:
            for i in range(dim + 1):
                face = L.diag_face(x, i)
                assert G.leq(L.lp_gamma(face, 2), g)


def test_json_round_trip():
    x = p("ab|a|bb")
    data = L.path_to_json(x)
    assert data == {"letters": ["a", "b", "a", "b", "b"], "bars": [2, 3]}
    assert L.path_from_json(data) == x
