"""Cell diagrams: polyominoes, boundary ribbons, Dyck tilings, Rothe diagrams.

Cells are (row, col) pairs with row 1 at the top, increasing downward
(matrix convention).  A polyomino in the accepted class has no holes,
weakly decreasing north-edge heights, and unimodal south-edge heights;
such a diagram encodes a permutation (``polyomino_permutation``) and an
edge set (``polyomino_edges``) obtained by repeatedly stripping the
boundary ribbon.

Rothe diagrams are handled on one-line words directly (``rothe_step``,
``rothe_edges``); the drawn form (``rothe_polyomino``) compacts away
empty rows/columns and carries the word's labels along, and is used for
rendering and cross-checks only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .perm import Word, check_word
from .network import Edge

Cell = tuple[int, int]

COND_EMPTY = "empty"
COND_CONNECTED = "connected"
COND_HOLES = "holes"
COND_NORTH = "north-steps"
COND_SOUTH = "south-unimodal"
COND_ROWS = "row-gap"


class PolyominoError(ValueError):
    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition


@dataclass(frozen=True)
class Polyomino:
    cells: frozenset[Cell]

    def __post_init__(self):
        object.__setattr__(self, "cells", frozenset(tuple(c) for c in self.cells))
        for r, c in self.cells:
            if r < 1 or c < 1:
                raise PolyominoError(COND_EMPTY, f"cell {(r, c)} not positive")

    def __bool__(self) -> bool:
        return bool(self.cells)

    @property
    def components(self) -> list[frozenset[Cell]]:
        todo = set(self.cells)
        out = []
        while todo:
            stack = [todo.pop()]
            comp = set(stack)
            while stack:
                r, c = stack.pop()
                for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                    if nb in todo:
                        todo.remove(nb)
                        comp.add(nb)
                        stack.append(nb)
            out.append(frozenset(comp))
        return sorted(out, key=lambda comp: min(comp))

    @property
    def component_count(self) -> int:
        return len(self.components)


def polyomino(cells: Iterable[Cell]) -> Polyomino:
    return Polyomino(cells=frozenset(tuple(c) for c in cells))


def _rows(cells: frozenset[Cell]) -> dict[int, list[int]]:
    rows: dict[int, list[int]] = {}
    for r, c in cells:
        rows.setdefault(r, []).append(c)
    return {r: sorted(cs) for r, cs in sorted(rows.items())}


def north_edges(cells: frozenset[Cell]) -> list[Cell]:
    """Cells whose top edge is exposed, in left-to-right boundary order."""
    out = [(r, c) for r, c in cells if (r - 1, c) not in cells]
    return sorted(out, key=lambda rc: (rc[1], rc[0]))


def south_edges(cells: frozenset[Cell]) -> list[Cell]:
    """Cells whose bottom edge is exposed, in left-to-right boundary order."""
    out = [(r, c) for r, c in cells if (r + 1, c) not in cells]
    return sorted(out, key=lambda rc: (rc[1], -rc[0]))


def validate_shape(poly: Polyomino) -> None:
    """Check membership in the accepted polyomino class.

    Raises PolyominoError with the failed condition: connectivity, a
    hole, a north-edge height increase, or a south-edge height that is
    not unimodal (a valley).
    """
    cells = poly.cells
    if not cells:
        raise PolyominoError(COND_EMPTY, "empty polyomino")
    if poly.component_count != 1:
        raise PolyominoError(
            COND_CONNECTED, f"{poly.component_count} components, expected 1"
        )
    rmin = min(r for r, _ in cells) - 1
    rmax = max(r for r, _ in cells) + 1
    cmin = min(c for _, c in cells) - 1
    cmax = max(c for _, c in cells) + 1
    outside = {(rmin, cmin)}
    stack = [(rmin, cmin)]
    while stack:
        r, c = stack.pop()
        for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            nr, nc = nb
            if rmin <= nr <= rmax and cmin <= nc <= cmax:
                if nb not in cells and nb not in outside:
                    outside.add(nb)
                    stack.append(nb)
    box = (rmax - rmin + 1) * (cmax - cmin + 1)
    if len(outside) + len(cells) != box:
        raise PolyominoError(COND_HOLES, "polyomino has a hole")
    # north heights weakly decreasing left to right (row index weakly increasing)
    norths = north_edges(cells)
    for a, b in zip(norths, norths[1:]):
        if b[0] < a[0]:
            raise PolyominoError(
                COND_NORTH, f"north edge of {b} higher than that of {a}"
            )
    # south heights unimodal: down then up (row index up then down)
    souths = south_edges(cells)
    heights = [-r for r, _ in souths]
    k = heights.index(min(heights))
    for a, b in zip(heights[: k + 1], heights[1 : k + 1]):
        if b > a:
            raise PolyominoError(COND_SOUTH, "south edges not unimodal")
    for a, b in zip(heights[k:], heights[k + 1 :]):
        if b < a:
            raise PolyominoError(COND_SOUTH, "south edges not unimodal")


def row_sequences(poly: Polyomino) -> list[tuple[int, ...]]:
    """Per-row seed sequences, bottom row first.

    Row i (from the bottom) with L cells contributes (L+1, 1, ..., K)
    where K counts its cells lying strictly left of the row below
    (K = L for the bottom row); the tail is empty when K = 0.
    """
    rows = _rows(poly.cells)
    for r, cs in rows.items():
        if cs != list(range(cs[0], cs[0] + len(cs))):
            raise PolyominoError(COND_ROWS, f"row {r} is not contiguous")
    order = sorted(rows.keys(), reverse=True)  # bottom first
    out = []
    for idx, r in enumerate(order):
        cs = rows[r]
        if idx == 0:
            k = len(cs)
        else:
            below_left = min(rows[order[idx - 1]])
            k = sum(1 for c in cs if c < below_left)
        seq = (len(cs) + 1,) + tuple(range(1, k + 1))
        out.append(seq)
    return out


def _build_word_and_labels(
    poly: Polyomino,
) -> tuple[list[int], list[tuple[str, Cell]]]:
    """Run the row recursion, tracking which edge every value labels.

    Rows are absorbed bottom to top: each row's seed sequence is
    prepended (its head labels the row's east edge, its tail the cells
    protruding left of the row below) and the older word is renumbered
    into the remaining values.  Values appended to complete the word are
    reported as pending slots; they belong to south edges protruding
    right of the row below, and which of those edges actually carry them
    is settled by the boundary ribbon's tiling.
    """
    rows = _rows(poly.cells)
    for r, cs in rows.items():
        if cs != list(range(cs[0], cs[0] + len(cs))):
            raise PolyominoError(COND_ROWS, f"row {r} is not contiguous")
    word: list[int] = []
    slots: list[tuple[str, Cell]] = []
    prev_cols: Optional[list[int]] = None
    for r in sorted(rows, reverse=True):
        cols = rows[r]
        left_count = (
            len(cols)
            if prev_cols is None
            else sum(1 for c in cols if c < prev_cols[0])
        )
        seq = [len(cols) + 1] + list(range(1, left_count + 1))
        seq_slots = [("east", (r, cols[-1]))] + [
            ("south", (r, cols[0] + i)) for i in range(left_count)
        ]
        if not word:
            word = seq
            slots = seq_slots
        else:
            taken = set(seq)
            bound = len(seq) + len(word) + len(taken) + 2
            free = [v for v in range(1, bound) if v not in taken]
            word = seq + [free[v - 1] for v in word]
            slots = seq_slots + slots
        have = set(word)
        missing = [v for v in range(1, max(word) + 1) if v not in have]
        if missing:
            if prev_cols is None:
                raise PolyominoError(COND_ROWS, "bottom row left labels unassigned")
            word = word + missing
            slots = slots + [("pending", (r, 0))] * len(missing)
        prev_cols = cols
    return word, slots


def polyomino_permutation(poly: Polyomino) -> Word:
    """The permutation encoded by a polyomino of the accepted class.

    Built row by row from the bottom; equal to the reading word of the
    diagram's edge labeling.
    """
    if not poly.cells:
        return ()
    validate_shape(poly)
    word, _slots = _build_word_and_labels(poly)
    return check_word(word)


# -- labeling ---------------------------------------------------------------


@dataclass(frozen=True)
class LabeledPolyomino:
    """A polyomino with east-edge and south-edge integer labels."""

    poly: Polyomino
    east: dict[Cell, int]
    south: dict[Cell, int]

    @property
    def degree(self) -> int:
        vals = list(self.east.values()) + list(self.south.values())
        return max(vals, default=0)


def label_polyomino(poly: Polyomino) -> LabeledPolyomino:
    """Assign the edge labels whose reading word is the row-recursion
    permutation: one east label per row (its rightmost cell), one south
    label per cell with no cell below it and no lower east label sitting
    in its below slot.

    Chain polyominoes may have empty ambient columns (symbols already
    fixed by earlier peels; the peel shifts survivors right for exactly
    this reason), so the recursion runs on the column-compacted shape
    and every label is raised by the number of empty columns on its
    left.  Values the recursion appends past the main word label the
    boundary-ribbon tile bottoms that no other slot covers.
    """
    if not poly.cells:
        raise PolyominoError(COND_EMPTY, "cannot label an empty polyomino")
    used_cols = sorted({c for _r, c in poly.cells})
    cmap = {c: i for i, c in enumerate(used_cols, start=1)}
    back = {i: c for c, i in cmap.items()}
    compacted = Polyomino(cells=frozenset((r, cmap[c]) for r, c in poly.cells))
    word, slots = _build_word_and_labels(compacted)

    def lift(value: int, ambient_col: int) -> int:
        return value + (ambient_col - cmap[ambient_col])

    east: dict[Cell, int] = {}
    south: dict[Cell, int] = {}
    pending: list[int] = []
    for value, (kind, cell) in zip(word, slots):
        if kind == "pending":
            pending.append(value)
            continue
        r, c = cell
        target = east if kind == "east" else south
        spot = (r, back[c])
        if spot in target:
            raise PolyominoError(COND_ROWS, f"duplicate label slot at {spot}")
        target[spot] = lift(value, back[c])
    if pending:
        draft = LabeledPolyomino(poly=poly, east=east, south=south)
        ribbon = boundary_ribbon(draft)
        needy = sorted(
            {run[-1] for run, _size in maximal_dyck_tiling(ribbon)} - set(south),
            key=lambda rc: (rc[1], rc[0]),
        )
        if len(needy) > len(pending):
            raise PolyominoError(
                COND_ROWS,
                f"{len(needy)} unlabeled tile bottoms for {len(pending)} spare labels",
            )
        for value, (r, c) in zip(sorted(pending), needy):
            south[(r, c)] = lift(value, c)
    return LabeledPolyomino(poly=poly, east=east, south=south)


class RibbonError(ValueError):
    pass


def boundary_ribbon(lp: LabeledPolyomino) -> tuple[Cell, ...]:
    """Boundary cells from the maximal east label to the lowest-leftmost cell.

    Steps go to the nearest cell below in the same column when one
    exists, else to the nearest cell to the left in the same row; on
    multi-component diagrams these steps may jump gaps.
    """
    cells = lp.poly.cells
    if not cells:
        raise RibbonError("empty polyomino has no ribbon")
    if not lp.east:
        raise RibbonError("no east labels to start the ribbon from")
    start = max(lp.east, key=lambda cell: lp.east[cell])
    bottom = max(r for r, _ in cells)
    end = (bottom, min(c for r, c in cells if r == bottom))
    path = [start]
    cur = start
    for _ in range(len(cells) + 1):
        if cur == end:
            return tuple(path)
        r, c = cur
        below = [rr for rr, cc in cells if cc == c and rr > r]
        left = [cc for rr, cc in cells if rr == r and cc < c]
        if below:
            cur = (min(below), c)
        elif left:
            cur = (r, max(left))
        else:
            raise RibbonError(f"ribbon stuck at {cur} before reaching {end}")
        path.append(cur)
    raise RibbonError("ribbon walk did not terminate")


Tile = tuple[tuple[Cell, ...], int]


def maximal_dyck_tiling(ribbon: Sequence[Cell]) -> list[Tile]:
    """Partition a ribbon into maximal Dyck tiles.

    The ribbon is scanned from its maximal-label end; each tile is the
    longest run from the current cell whose step word is a Dyck path
    (reading away from the start, every prefix has at least as many left
    steps as down steps, with equal totals).  A tile of 2k+1 cells has
    size k.
    """
    tiles: list[Tile] = []
    i = 0
    n = len(ribbon)
    while i < n:
        best = i
        lefts = downs = 0
        j = i
        while j + 1 < n:
            r0, c0 = ribbon[j]
            r1, c1 = ribbon[j + 1]
            if r0 == r1 and c1 < c0:
                lefts += 1
            elif c0 == c1 and r1 > r0:
                downs += 1
            else:
                raise RibbonError(f"non-adjacent ribbon cells {ribbon[j]}, {ribbon[j+1]}")
            if downs > lefts:
                break
            j += 1
            if lefts == downs:
                best = j
        run = tuple(ribbon[i : best + 1])
        tiles.append((run, (len(run) - 1) // 2))
        i = best + 1
    return tiles


def peel_step(lp: LabeledPolyomino) -> tuple[frozenset[Edge], Polyomino]:
    """One boundary strip: emitted edges plus the reduced polyomino.

    Every tile of the boundary ribbon's maximal Dyck tiling contributes
    (bottom south label, top label); south labels left of the ribbon end
    and strictly below the top label's row contribute likewise.  The
    reduction deletes the ribbon and those extra cells, then shifts the
    rows weakly below the top label's row right by one.
    """
    cells = lp.poly.cells
    if not cells:
        raise RibbonError("cannot peel an empty polyomino")
    ribbon = boundary_ribbon(lp)
    tiles = maximal_dyck_tiling(ribbon)
    start = ribbon[0]
    top_label = lp.east[start]
    bottoms = []
    for run, _size in tiles:
        cell = run[-1]
        if cell not in lp.south:
            raise RibbonError(f"tile bottom {cell} carries no south label")
        bottoms.append(cell)
    end = ribbon[-1]
    if end not in lp.south:
        raise RibbonError(f"ribbon end {end} carries no south label")
    ribbon_set = set(ribbon)
    extra = [
        cell
        for cell, _v in lp.south.items()
        if cell not in ribbon_set and cell[1] < end[1] and cell[0] >= start[0]
    ]
    edges = {(lp.south[cell], top_label) for cell in bottoms}
    edges |= {(lp.south[cell], top_label) for cell in extra}
    remaining = cells - ribbon_set - set(extra)
    shifted = frozenset(
        (r, c + 1) if r >= start[0] else (r, c) for r, c in remaining
    )
    return frozenset(edges), Polyomino(cells=shifted)


def polyomino_edges(poly: Polyomino) -> frozenset[Edge]:
    """Union of peeled edge sets over the reduction chain down to empty."""
    if not poly.cells:
        return frozenset()
    validate_shape(poly)
    edges: set[Edge] = set()
    current = poly
    last_top = None
    while current.cells:
        lp = label_polyomino(current)
        step_edges, current = peel_step(lp)
        top = max(j for _, j in step_edges)
        if last_top is not None and top >= last_top:
            raise RibbonError("top labels failed to decrease along the chain")
        last_top = top
        edges |= step_edges
    return frozenset(edges)


# -- Rothe diagrams ----------------------------------------------------------


def rothe_cells(word: Sequence[int]) -> frozenset[Cell]:
    """Inversion cells: (i, j) with word[i] > j and value j placed after i."""
    w = check_word(word)
    inv = {v: p for p, v in enumerate(w, start=1)}
    return frozenset(
        (i, j)
        for i, v in enumerate(w, start=1)
        for j in range(1, v)
        if inv[j] > i
    )


def _compact_maps(cells: frozenset[Cell]) -> tuple[dict[int, int], dict[int, int]]:
    used_rows = sorted({r for r, _ in cells})
    used_cols = sorted({c for _, c in cells})
    return (
        {r: i for i, r in enumerate(used_rows, start=1)},
        {c: i for i, c in enumerate(used_cols, start=1)},
    )


def _rank(value: int, table: dict[int, int]) -> int:
    # position after deleting unused indices; unused values land just past
    # the used ones above them
    if value in table:
        return table[value]
    return sum(1 for k in table if k < value) + 1


def rothe_diagram(word: Sequence[int]) -> Polyomino:
    """The word's inversion diagram with empty rows and columns removed."""
    cells = rothe_cells(word)
    rmap, cmap = _compact_maps(cells)
    return Polyomino(cells=frozenset((rmap[r], cmap[c]) for r, c in cells))


def rothe_polyomino(word: Sequence[int]) -> LabeledPolyomino:
    """Compacted inversion diagram with the word's labels carried along.

    The value at position i labels (i, value); after compaction it
    becomes an east label when a cell survives on its left in the row
    (nearest first), else a south label of the nearest surviving cell
    above it in the column.  Fully detached labels are dropped (they
    never feed the ribbon pipeline).
    """
    w = check_word(word)
    cells = rothe_cells(w)
    rmap, cmap = _compact_maps(cells)
    glued = frozenset((rmap[r], cmap[c]) for r, c in cells)
    east: dict[Cell, int] = {}
    south: dict[Cell, int] = {}
    for i, v in enumerate(w, start=1):
        pos = (_rank(i, rmap), _rank(v, cmap))
        r, c = pos
        if (r, c - 1) in glued:
            east[(r, c - 1)] = v
        elif (r - 1, c) in glued:
            south[(r - 1, c)] = v
        else:
            left = [cc for rr, cc in glued if rr == r and cc < c]
            above = [rr for rr, cc in glued if cc == c and rr < r]
            if left:
                east[(r, max(left))] = v
            elif above:
                south[(max(above), c)] = v
    return LabeledPolyomino(poly=Polyomino(cells=glued), east=east, south=south)


def decreasing_run(word: Sequence[int], start: int) -> tuple[int, ...]:
    """Nearest-smaller chain walking left from ``start``'s position.

    Entries skipped between consecutive chain members are all larger
    than the member on the right; the walk stops at the position of the
    largest value not fixed by the word's tail.
    """
    w = check_word(word)
    top = _active_top(w)
    if top == 0:
        return ()
    pos = {v: p for p, v in enumerate(w, start=1)}
    limit = pos[top]
    p = pos[start]
    if p <= limit:
        raise PolyominoError(COND_ROWS, f"value {start} not right of {top}")
    run = [start]
    cur = start
    for k in range(p - 1, limit, -1):
        if w[k - 1] < cur:
            run.append(w[k - 1])
            cur = w[k - 1]
    return tuple(run)


def _active_top(w: Word) -> int:
    m = len(w)
    while m >= 1 and w[m - 1] == m:
        m -= 1
    return m


def rothe_step(word: Sequence[int]) -> tuple[frozenset[Edge], Word]:
    """One reduction step on a word: emitted edges plus the successor.

    With m the largest value not already fixed at its own position, the
    moved set holds m together with every smaller value that sits right
    of m and right of all values below it.  Each moved value x != m
    yields the edge (x, m); the successor keeps all other positions and
    rewrites the moved values in increasing order.
    """
    w = check_word(word)
    top = _active_top(w)
    if top == 0:
        raise PolyominoError(COND_EMPTY, "identity word has no reduction step")
    pos = {v: p for p, v in enumerate(w, start=1)}
    moved = [top]
    running_max = 0
    for v in range(1, top):
        dominant = pos[v] > running_max
        running_max = max(running_max, pos[v])
        if dominant and pos[v] > pos[top]:
            moved.append(v)
    edges = frozenset((v, top) for v in moved if v != top)
    slots = sorted(pos[v] for v in moved)
    values = sorted(moved)
    out = list(w)
    for p, v in zip(slots, values):
        out[p - 1] = v
    return edges, check_word(out)


def rothe_edges(word: Sequence[int]) -> frozenset[Edge]:
    """Union of step edges along the reduction chain down to the identity."""
    w = check_word(word)
    edges: set[Edge] = set()
    while _active_top(w) != 0:
        step, w = rothe_step(w)
        edges |= step
    return frozenset(edges)


# -- rendering ---------------------------------------------------------------


def render_polyomino(poly: Polyomino, lp: Optional[LabeledPolyomino] = None) -> str:
    """Plain-text grid; with labels, east labels sit right of their cell
    and south labels below it."""
    if not poly.cells:
        return "(empty)"
    rmax = max(r for r, _ in poly.cells)
    cmax = max(c for _, c in poly.cells)
    east = lp.east if lp else {}
    south = lp.south if lp else {}
    width = max((len(str(v)) for v in list(east.values()) + list(south.values())), default=1)
    width = max(width, 2)
    lines = []
    for r in range(1, rmax + 2):
        row = []
        for c in range(1, cmax + 2):
            if (r, c) in poly.cells:
                row.append("#" * 2 + " " * (width - 2))
            elif (r, c - 1) in east:
                row.append(str(east[(r, c - 1)]).ljust(width))
            elif (r - 1, c) in south:
                row.append(str(south[(r - 1, c)]).ljust(width))
            else:
                row.append(" " * width)
        lines.append(" ".join(row).rstrip())
    while lines and not lines[-1]:
        lines.pop()
    return "\n".join(lines)


def cell_dump(poly: Polyomino, lp: Optional[LabeledPolyomino] = None) -> str:
    """One ``cell row col [label]`` line per cell, deterministic order."""
    east = lp.east if lp else {}
    lines = []
    for r, c in sorted(poly.cells):
        if (r, c) in east:
            lines.append(f"cell {r} {c} {east[(r, c)]}")
        else:
            lines.append(f"cell {r} {c}")
    return "\n".join(lines)


def polyomino_to_json(poly: Polyomino) -> str:
    return json.dumps({"cells": [list(c) for c in sorted(poly.cells)]})


def polyomino_from_json(text: str) -> Polyomino:
    try:
        obj = json.loads(text)
        cells = [tuple(int(v) for v in c) for c in obj["cells"]]
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise PolyominoError(COND_EMPTY, f"cannot parse polyomino json: {text!r}") from exc
    return polyomino(cells)
