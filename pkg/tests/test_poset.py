from __future__ import annotations

from itertools import combinations, permutations

import pytest

from permnet import forest, network, poset
from permnet.network import parse_signature, validate
from permnet.poset import build_lattice, label_less


def sig(text):
    return parse_signature(text)


@pytest.fixture(scope="module")
def lat4():
    return build_lattice(sig("++--"))


class TestConstruction:
    def test_fourteen_elements(self, lat4):
        assert len(lat4.elements) == 14

    def test_rank_profile(self, lat4):
        assert lat4.whitney() == (1, 4, 5, 3, 1)

    def test_two_point_chain(self):
        lat = build_lattice(sig("+-"))
        assert len(lat.elements) == 2
        assert lat.ranks == (0, 1)

    def test_bottom_and_top(self, lat4):
        assert lat4.elements[lat4.bottom].rank == 0
        assert lat4.elements[lat4.top].edges == network.max_network(sig("++--")).edges

    def test_neutral_points_stripped(self):
        lat = build_lattice(sig("+0+--0"))
        assert lat.eps == (1, 1, -1, -1)
        assert len(lat.elements) == 14

    def test_rank_equals_edge_count(self, lat4):
        for i, net in enumerate(lat4.elements):
            assert lat4.ranks[i] == net.rank

    def test_covers_differ_by_one_edge(self, lat4):
        for i in range(len(lat4.elements)):
            for j, e in lat4.up_adj[i]:
                assert lat4.elements[j].edges - lat4.elements[i].edges == {e}

    def test_maximal_chains_have_rank_length(self, lat4):
        for chain in lat4.maximal_chains(lat4.bottom, lat4.top):
            assert len(chain) == lat4.ranks[lat4.top] + 1


class TestMeetJoin:
    def test_worked_example(self, lat4):
        x = validate(4, [(1, 3)])
        y = validate(4, [(2, 4)])
        assert lat4.meet(x, y).edges == frozenset()
        assert lat4.join(x, y).edges == {(1, 3), (2, 4), (2, 3)}

    def test_idempotent(self, lat4):
        for i in range(len(lat4.elements)):
            assert lat4.meet(i, i) == lat4.elements[i]
            assert lat4.join(i, i) == lat4.elements[i]

    def test_meet_with_top(self, lat4):
        for i in range(len(lat4.elements)):
            assert lat4.meet(i, lat4.top) == lat4.elements[i]

    def test_absorption_all_pairs(self, lat4):
        n = len(lat4.elements)
        for x in range(n):
            for y in range(n):
                assert lat4.meet(x, lat4.idx(lat4.join(x, y))) == lat4.elements[x]
                assert lat4.join(x, lat4.idx(lat4.meet(x, y))) == lat4.elements[x]

    def test_universal_properties(self, lat4):
        n = len(lat4.elements)
        for x in range(n):
            for y in range(n):
                m = lat4.idx(lat4.meet(x, y))
                j = lat4.idx(lat4.join(x, y))
                assert lat4.down_masks[x] & lat4.down_masks[y] == lat4.down_masks[m]
                assert lat4.up_masks[x] & lat4.up_masks[y] == lat4.up_masks[j]

    @pytest.mark.parametrize("eps", ["++--", "+-+-", "++-+--"])
    def test_single_completion_pass_suffices(self, eps):
        """The one-pass crossing completion already lands on the closure."""
        lat = build_lattice(sig(eps))
        n = len(lat.elements)
        for x in range(n):
            for y in range(n):
                once = lat.join_single_pass(x, y)
                assert once == lat.join(x, y).edges


class TestWhitney:
    def test_worked_polynomial(self):
        assert poset.whitney_direct(sig("++---")) == (1, 6, 12, 13, 9, 4, 1)
        assert poset.whitney_recurrence(sig("++---")) == (1, 6, 12, 13, 9, 4, 1)

    def test_two_points(self):
        assert poset.whitney_direct(sig("+-")) == (1, 1)
        assert poset.whitney_recurrence(sig("+-")) == (1, 1)

    def test_neutral_invariance(self):
        assert poset.whitney_direct(sig("+0+--")) == poset.whitney_direct(sig("++--"))
        assert poset.whitney_recurrence(sig("+0+--")) == poset.whitney_recurrence(
            sig("++--")
        )

    @pytest.mark.parametrize("length", [2, 3, 4, 5, 6])
    def test_triple_agreement(self, length):
        for mask in range(1 << (length - 2)):
            eps = (1,) + tuple(
                1 if mask >> i & 1 else -1 for i in range(length - 2)
            ) + (-1,)
            direct = poset.whitney_direct(eps)
            assert direct == poset.whitney_recurrence(eps)
            assert direct == forest.generating_function(eps)

    def test_poly_format(self):
        assert poset.poly_format((1, 6, 12)) == "1 + 6 q + 12 q^2"
        assert poset.poly_format((1, 1)) == "1 + q"


class TestBalance:
    def test_worked_values(self):
        assert poset.even_odd_balance(sig("++--")) == (7, 7)
        assert poset.even_odd_balance(sig("++---")) == (23, 23)
        assert poset.even_odd_balance(sig("+-")) == (1, 1)

    def test_degenerate_single_element(self):
        assert poset.even_odd_balance(sig("+")) == (1, 0)


class TestEdgeLabels:
    def test_label_order_worked_example(self):
        order = sorted(
            network.max_network(sig("+-++--")).edges, key=poset.label_key
        )
        assert order == [(1, 2), (4, 5), (3, 5), (1, 5), (4, 6), (3, 6), (1, 6)]

    def test_same_sink_larger_source_first(self):
        assert label_less((2, 3), (1, 3))
        assert not label_less((1, 3), (2, 3))

    def test_order_axioms(self):
        edges = sorted(network.max_network(sig("++-+--")).edges)
        for a in edges:
            assert not label_less(a, a)
        for a in edges:
            for b in edges:
                if a != b:
                    assert label_less(a, b) != label_less(b, a)
        for a in edges:
            for b in edges:
                for c in edges:
                    if label_less(a, b) and label_less(b, c):
                        assert label_less(a, c)

    def test_el_label_is_new_edge(self, lat4):
        y = lat4.idx(validate(4, [(2, 3)]))
        assert lat4.el_label(lat4.bottom, y) == (2, 3)
        with pytest.raises(poset.LatticeError):
            lat4.el_label(lat4.bottom, lat4.top)

    def test_chain_labels_cover_interval_once(self, lat4):
        want = lat4.elements[lat4.top].edges
        for chain in lat4.maximal_chains(lat4.bottom, lat4.top):
            labels = lat4.chain_labels(chain)
            assert sorted(labels) == sorted(want)


class TestCrossingInterval:
    """The seven-element interval below {(1,3),(2,3),(2,4)}."""

    @pytest.fixture
    def top(self, lat4):
        return lat4.idx(validate(4, [(1, 3), (2, 3), (2, 4)]))

    def test_interval_size(self, lat4, top):
        assert len(lat4.interval(lat4.bottom, top)) == 7

    def test_unique_rising_chain(self, lat4, top):
        rising = lat4.rising_chains(lat4.bottom, top)
        assert len(rising) == 1
        chain = tuple(lat4.idx(n) for n in rising[0])
        assert lat4.chain_labels(chain) == ((2, 3), (1, 3), (2, 4))

    def test_rising_chain_is_lex_least(self, lat4, top):
        rising = lat4.rising_chains(lat4.bottom, top)
        least = lat4.lex_least_chain(lat4.bottom, top)
        assert list(least) == [lat4.idx(n) for n in rising[0]]

    def test_no_decreasing_chain(self, lat4, top):
        assert lat4.decreasing_chain_count(lat4.bottom, top) == 0

    def test_mobius_zero_at_top(self, lat4, top):
        assert lat4.mobius_recursive(lat4.bottom, top) == 0
        assert lat4.mobius_closed(lat4.bottom, top) == 0

    def test_mobius_alternates_below_top(self, lat4, top):
        for z in lat4.interval(lat4.bottom, top):
            if z == top:
                continue
            expected = -1 if lat4.ranks[z] % 2 else 1
            assert lat4.mobius_recursive(lat4.bottom, z) == expected

    def test_snelling(self, lat4, top):
        assert lat4.snelling_check(lat4.bottom, top)


class TestChainsAndMobius:
    def test_single_cover_is_decreasing_chain(self, lat4):
        for x in range(len(lat4.elements)):
            for y, _e in lat4.up_adj[x]:
                assert lat4.decreasing_chain_count(x, y) == 1

    def test_point_interval(self, lat4):
        i = lat4.idx(validate(4, [(2, 3)]))
        assert lat4.mobius_recursive(i, i) == 1
        assert lat4.mobius_closed(i, i) == 1
        assert lat4.rising_chains(i, i) == [[lat4.elements[i]]]

    def test_boolean_interval_decreasing_count(self, lat4):
        """Intervals without crossings admit exactly one decreasing chain."""
        x = lat4.bottom
        y = lat4.idx(validate(4, [(1, 3), (1, 4), (2, 3)]))
        assert lat4.decreasing_chain_count(x, y) == 1

    @pytest.mark.parametrize("eps", ["++--", "+-+-", "++-+--", "+++---"])
    def test_closed_form_matches_recursion(self, eps):
        lat = build_lattice(sig(eps))
        for x in range(len(lat.elements)):
            for y in poset._bits(lat.up_masks[x]):
                mu = lat.mobius_recursive(x, y)
                assert mu == lat.mobius_closed(x, y)
                assert mu in (-1, 0, 1)
                sign = -1 if (lat.ranks[y] - lat.ranks[x]) % 2 else 1
                assert sign * mu == lat.decreasing_chain_count(x, y)

    def test_closed_form_matches_recursion_length_seven(self):
        for mask in range(1 << 5):
            eps = (1,) + tuple(1 if mask >> i & 1 else -1 for i in range(5)) + (-1,)
            lat = build_lattice(eps)
            for x in range(len(lat.elements)):
                for y in poset._bits(lat.up_masks[x]):
                    mu = lat.mobius_recursive(x, y)
                    assert mu == lat.mobius_closed(x, y)
                    assert mu in (-1, 0, 1)

    @pytest.mark.parametrize("eps", ["++--", "+-+-", "++-+--"])
    def test_el_property_all_intervals(self, eps):
        lat = build_lattice(sig(eps))
        for x in range(len(lat.elements)):
            for y in poset._bits(lat.up_masks[x]):
                rising = lat.rising_chains(x, y)
                assert len(rising) == 1
                least = lat.lex_least_chain(x, y)
                assert list(least) == [lat.idx(n) for n in rising[0]]
                assert lat.snelling_check(x, y)


class TestBooleanCheck:
    def test_worked_values(self):
        assert poset.boolean_check(sig("+-+-")) is True
        assert poset.boolean_check(sig("++--")) is False
        assert poset.boolean_check(sig("+-")) is True

    def test_boolean_lattice_size(self):
        lat = build_lattice(sig("+-+-"))
        assert len(lat.elements) == 8  # three independent edges


class TestDot:
    def test_node_count(self, lat4):
        dot = lat4.to_dot()
        assert dot.count("[label=") == 14 + sum(len(a) for a in lat4.up_adj)

    def test_deterministic(self, lat4):
        assert lat4.to_dot() == build_lattice(sig("++--")).to_dot()
