from __future__ import annotations

from collections import Counter
from itertools import permutations

import pytest

from permnet import diagram, network, perm
from permnet.diagram import PolyominoError, RibbonError

# 17-cell staircase diagram encoding a degree-10 permutation
BIG_CELLS = [
    (1, 1), (1, 2), (1, 3), (1, 4),
    (2, 2), (2, 3), (2, 4), (2, 5),
    (3, 2), (3, 3), (3, 4), (3, 5), (3, 6), (3, 7),
    (4, 3), (4, 4),
    (5, 3),
]

BIG_EDGES = {
    (2, 10), (3, 10), (8, 10), (9, 10),
    (2, 7), (3, 7), (4, 7),
    (1, 5), (2, 5), (3, 5), (4, 5),
}


@pytest.fixture
def big_poly():
    return diagram.polyomino(BIG_CELLS)


class TestShapeValidation:
    def test_big_polyomino_is_accepted(self, big_poly):
        diagram.validate_shape(big_poly)

    def test_disconnected(self):
        with pytest.raises(PolyominoError) as exc:
            diagram.validate_shape(diagram.polyomino([(1, 1), (3, 3)]))
        assert exc.value.condition == diagram.COND_CONNECTED

    def test_hole(self):
        ring = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2), (3, 3)]
        with pytest.raises(PolyominoError) as exc:
            diagram.validate_shape(diagram.polyomino(ring))
        assert exc.value.condition == diagram.COND_HOLES

    def test_north_heights_must_weakly_decrease(self):
        with pytest.raises(PolyominoError) as exc:
            diagram.validate_shape(diagram.polyomino([(2, 1), (2, 2), (1, 2)]))
        assert exc.value.condition == diagram.COND_NORTH

    def test_south_heights_must_be_unimodal(self):
        peak = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 3)]
        with pytest.raises(PolyominoError) as exc:
            diagram.validate_shape(diagram.polyomino(peak))
        assert exc.value.condition == diagram.COND_SOUTH


class TestReadingPermutation:
    def test_row_sequences(self, big_poly):
        assert diagram.row_sequences(big_poly) == [
            (2, 1), (3,), (7, 1), (5,), (5, 1),
        ]

    def test_worked_example(self, big_poly):
        assert diagram.polyomino_permutation(big_poly) == (5, 1, 7, 10, 2, 6, 4, 3, 8, 9)

    def test_intermediate_words(self):
        """Bottom-k-row stacks give the intermediate words of the recursion."""
        bottoms = {
            1: (2, 1),
            2: (3, 2, 1),
            3: (7, 1, 4, 3, 2, 5, 6),
            4: (5, 8, 1, 4, 3, 2, 6, 7),
        }
        rows = sorted({r for r, _ in BIG_CELLS}, reverse=True)
        for k, expected in bottoms.items():
            cells = [(r, c) for r, c in BIG_CELLS if r in rows[:k]]
            assert diagram.polyomino_permutation(diagram.polyomino(cells)) == expected

    def test_single_cell(self):
        assert diagram.polyomino_permutation(diagram.polyomino([(1, 1)])) == (2, 1)

    def test_empty(self):
        assert diagram.polyomino_permutation(diagram.polyomino([])) == ()


class TestLabeling:
    def test_worked_labels(self, big_poly):
        lp = diagram.label_polyomino(big_poly)
        assert lp.east == {
            (1, 4): 5, (2, 5): 7, (3, 7): 10, (4, 4): 6, (5, 3): 4,
        }
        assert lp.south == {
            (1, 1): 1, (3, 2): 2, (3, 6): 8, (3, 7): 9, (5, 3): 3,
        }

    def test_labels_form_a_permutation(self, big_poly):
        lp = diagram.label_polyomino(big_poly)
        values = sorted(lp.east.values()) + sorted(lp.south.values())
        assert sorted(values) == list(range(1, 11))
        assert lp.degree == 10

    def test_single_cell_labels(self):
        lp = diagram.label_polyomino(diagram.polyomino([(1, 1)]))
        assert lp.east == {(1, 1): 2}
        assert lp.south == {(1, 1): 1}


class TestRibbonAndTiling:
    def test_worked_ribbon(self, big_poly):
        lp = diagram.label_polyomino(big_poly)
        assert diagram.boundary_ribbon(lp) == (
            (3, 7), (3, 6), (3, 5), (3, 4), (4, 4), (4, 3), (5, 3),
        )

    def test_single_cell_ribbon(self):
        lp = diagram.label_polyomino(diagram.polyomino([(1, 1)]))
        assert diagram.boundary_ribbon(lp) == ((1, 1),)

    def test_worked_tiling_sizes(self):
        """Standalone eleven-cell ribbon tiles into sizes {0,0,0,1,2}."""
        ribbon = (
            (1, 8), (1, 7), (1, 6), (1, 5), (2, 5), (3, 5),
            (3, 4), (3, 3), (3, 2), (4, 2), (4, 1),
        )
        tiles = diagram.maximal_dyck_tiling(ribbon)
        assert sorted(size for _run, size in tiles) == [0, 0, 0, 1, 2]

    def test_single_cell_tile(self):
        assert diagram.maximal_dyck_tiling(((1, 1),)) == [(((1, 1),), 0)]

    def test_tiles_partition_ribbon(self, big_poly):
        lp = diagram.label_polyomino(big_poly)
        ribbon = diagram.boundary_ribbon(lp)
        tiles = diagram.maximal_dyck_tiling(ribbon)
        flat = [c for run, _size in tiles for c in run]
        assert flat == list(ribbon)
        assert sorted(size for _run, size in tiles) == [0, 0, 2]


class TestPeeling:
    def test_worked_chain(self, big_poly):
        lp0 = diagram.label_polyomino(big_poly)
        e0, p1 = diagram.peel_step(lp0)
        assert e0 == {(2, 10), (3, 10), (8, 10), (9, 10)}
        assert p1.cells == frozenset(
            [(1, 1), (1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (2, 5), (3, 4)]
        )
        e1, p2 = diagram.peel_step(diagram.label_polyomino(p1))
        assert e1 == {(2, 7), (3, 7), (4, 7)}
        assert p2.cells == frozenset([(1, 1), (1, 2), (1, 3), (1, 4)])
        e2, p3 = diagram.peel_step(diagram.label_polyomino(p2))
        assert e2 == {(1, 5), (2, 5), (3, 5), (4, 5)}
        assert not p3.cells

    def test_chain_tops_strictly_decrease(self, big_poly):
        current = big_poly
        tops = []
        while current.cells:
            edges, current = diagram.peel_step(diagram.label_polyomino(current))
            tops.append(max(j for _i, j in edges))
        assert tops == sorted(tops, reverse=True)
        assert len(set(tops)) == len(tops)

    def test_polyomino_edges_worked_example(self, big_poly):
        assert diagram.polyomino_edges(big_poly) == BIG_EDGES

    def test_polyomino_edges_empty(self):
        assert diagram.polyomino_edges(diagram.polyomino([])) == frozenset()

    def test_edges_match_inverse_word_network(self, big_poly):
        word = diagram.polyomino_permutation(big_poly)
        expected = network.from_permutation(perm.inverse(word)).edges
        assert diagram.polyomino_edges(big_poly) == expected

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_edges_match_inverse_over_small_degrees(self, n):
        """All single-component accepted-class inversion diagrams agree with
        the inverse word's network."""
        tested = 0
        for w in permutations(range(1, n + 1)):
            poly = diagram.rothe_diagram(w)
            if not poly.cells or poly.component_count != 1:
                continue
            try:
                diagram.validate_shape(poly)
            except PolyominoError:
                continue
            word = diagram.polyomino_permutation(poly)
            expected = network.from_permutation(perm.inverse(word)).edges
            assert diagram.polyomino_edges(poly) == expected
            tested += 1
        assert tested > 0


class TestRotheDiagram:
    def test_worked_example_two_components(self):
        poly = diagram.rothe_diagram((2, 6, 3, 5, 1, 4))
        assert len(poly.cells) == 8
        assert poly.component_count == 2
        assert poly.cells == frozenset(
            [(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (2, 3), (2, 4), (4, 3)]
        )

    def test_identity_is_empty(self):
        assert not diagram.rothe_diagram(perm.identity(5)).cells

    def test_transpose_property(self):
        for w in permutations(range(1, 6)):
            cells = diagram.rothe_cells(w)
            flipped = frozenset((c, r) for r, c in cells)
            assert diagram.rothe_cells(perm.inverse(w)) == flipped


class TestRotheStep:
    def test_reorder_worked_example(self):
        edges, succ = diagram.rothe_step((8, 1, 3, 6, 2, 4, 7, 5))
        assert succ == (1, 2, 3, 6, 4, 5, 7, 8)
        assert edges == {(1, 8), (2, 8), (4, 8), (5, 8)}

    def test_decreasing_run_worked_example(self):
        assert diagram.decreasing_run((8, 1, 3, 6, 2, 4, 7, 5), 5) == (5, 4, 2, 1)

    def test_step_edges_worked_example(self):
        edges, _succ = diagram.rothe_step((2, 7, 1, 4, 6, 3, 5))
        assert edges == {(1, 7), (3, 7), (5, 7)}

    def test_identity_rejected(self):
        with pytest.raises(PolyominoError):
            diagram.rothe_step(perm.identity(4))

    def test_chain_for_small_degree(self):
        edges, succ = diagram.rothe_step((2, 6, 3, 5, 1, 4))
        assert edges == {(1, 6), (4, 6)}
        assert succ == (2, 1, 3, 5, 4, 6)


class TestRotheEdges:
    def test_worked_example(self):
        assert diagram.rothe_edges((2, 7, 1, 4, 6, 3, 5)) == {
            (1, 2), (1, 7), (3, 7), (5, 6), (5, 7),
        }

    def test_identity(self):
        assert diagram.rothe_edges(perm.identity(6)) == frozenset()

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_matches_inverse_word_network(self, n):
        for w in permutations(range(1, n + 1)):
            expected = network.from_permutation(perm.inverse(w)).edges
            assert diagram.rothe_edges(w) == expected


def geometric_step_edges(word):
    """Edge set of one step read off the drawn diagram instead of the word."""
    lp = diagram.rothe_polyomino(word)
    ribbon = diagram.boundary_ribbon(lp)
    tiles = diagram.maximal_dyck_tiling(ribbon)
    labels = {lp.south[run[-1]] for run, _size in tiles}
    top_label = lp.east[ribbon[0]]
    run = diagram.decreasing_run(word, min(labels))
    return frozenset((x, top_label) for x in labels | set(run))


class TestGeometricCrossCheck:
    def test_two_component_figure(self):
        lp = diagram.rothe_polyomino((2, 7, 1, 4, 6, 3, 5))
        assert diagram.boundary_ribbon(lp) == ((2, 5), (2, 4), (4, 4), (4, 2))
        assert geometric_step_edges((2, 7, 1, 4, 6, 3, 5)) == {(1, 7), (3, 7), (5, 7)}

    def test_figure_chain(self):
        word = (2, 7, 1, 4, 6, 3, 5)
        collected = set()
        while word != perm.identity(7):
            step, nxt = diagram.rothe_step(word)
            assert geometric_step_edges(word) == step
            collected |= step
            word = nxt
        assert collected == {(1, 2), (1, 7), (3, 7), (5, 6), (5, 7)}

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_agrees_with_word_route(self, n):
        for w in permutations(range(1, n + 1)):
            if w == tuple(range(1, n + 1)):
                continue
            step, _succ = diagram.rothe_step(w)
            assert geometric_step_edges(w) == step


class TestRendering:
    def test_cell_dump_deterministic(self, big_poly):
        lp = diagram.label_polyomino(big_poly)
        dump = diagram.cell_dump(big_poly, lp)
        assert dump.splitlines()[0] == "cell 1 1"
        assert "cell 1 4 5" in dump.splitlines()
        assert len(dump.splitlines()) == len(BIG_CELLS)

    def test_grid_contains_cells(self, big_poly):
        art = diagram.render_polyomino(big_poly)
        assert art.count("##") == len(BIG_CELLS)

    def test_json_round_trip(self, big_poly):
        text = diagram.polyomino_to_json(big_poly)
        assert diagram.polyomino_from_json(text) == big_poly
