"""Pointed Young diagrams ("forests") attached to a source/sink signature.

The signature (over {+1, -1}, starting with +1 and ending with -1)
determines a Young diagram in French notation: row i from the bottom is
as long as the number of sources before the i-th largest sink.  A forest
marks some cells, subject to one rule: no marked cell may have marked
cells both below it in its column and left of it in its row.

Cells are (row, col) with row 1 at the BOTTOM here; conversions to the
matrix convention used by the diagram module are explicit at call sites.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .perm import Word, check_word, identity, inverse, swap_length
from .network import (
    Edge,
    Network,
    NetworkError,
    Signature,
    check_signature,
    compatible,
    format_signature,
    max_network,
    parse_signature,
    signature_sinks,
    signature_sources,
    strip_neutral,
    to_permutation,
    validate,
)

Cell = tuple[int, int]


class ForestError(ValueError):
    def __init__(self, message: str, cell=None, witnesses=None):
        super().__init__(message)
        self.cell = cell
        self.witnesses = witnesses


def check_forest_signature(eps: Sequence[int]) -> Signature:
    e = strip_neutral(check_signature(eps))
    if not e:
        return e
    if e[0] != 1 or e[-1] != -1:
        raise ForestError(
            f"forest signature must start with + and end with -: {format_signature(e)}"
        )
    return e


def young_shape(eps: Sequence[int]) -> tuple[int, ...]:
    """Row lengths bottom-to-top: row i counts sources before the i-th
    largest sink.

    >>> young_shape(parse_signature("+-+-"))
    (2, 1)
    >>> young_shape(parse_signature("++--"))
    (2, 2)
    """
    e = check_forest_signature(eps)
    ups = signature_sources(e)
    downs = signature_sinks(e)
    rows = []
    for sink in sorted(downs, reverse=True):
        rows.append(sum(1 for s in ups if s < sink))
    return tuple(rows)


def shape_cells(shape: Sequence[int]) -> list[Cell]:
    return [(r, c) for r, width in enumerate(shape, start=1) for c in range(1, width + 1)]


def cell_label(eps: Sequence[int], cell: Cell) -> Edge:
    """The (source, sink) pair of a cell: column picks the source in
    increasing order, row picks the sink in decreasing order."""
    e = check_forest_signature(eps)
    ups = signature_sources(e)
    downs = sorted(signature_sinks(e), reverse=True)
    r, c = cell
    return (ups[c - 1], downs[r - 1])


@dataclass(frozen=True)
class Forest:
    eps: Signature
    pointed: frozenset[Cell]

    @property
    def shape(self) -> tuple[int, ...]:
        return young_shape(self.eps)

    @property
    def size(self) -> int:
        return len(self.pointed)


def make_forest(eps: Sequence[int], pointed: Iterable[Cell]) -> Forest:
    """Validate cells against the shape and the no-double-shadow rule.

    A marked cell with marked cells both below (same column) and left
    (same row) is rejected, reporting one witness of each kind.
    """
    e = check_forest_signature(eps)
    shape = young_shape(e)
    pts = frozenset(tuple(c) for c in pointed)
    inside = set(shape_cells(shape))
    for cell in pts:
        if cell not in inside:
            raise ForestError(f"cell {cell} outside shape {shape}", cell=cell)
    for r, c in pts:
        below = next(((rr, cc) for rr, cc in pts if cc == c and rr < r), None)
        left = next(((rr, cc) for rr, cc in pts if rr == r and cc < c), None)
        if below is not None and left is not None:
            raise ForestError(
                f"cell {(r, c)} has marked cells both below {below} and left {left}",
                cell=(r, c),
                witnesses=(below, left),
            )
    return Forest(eps=e, pointed=pts)


def crossing_cells(f: Forest) -> frozenset[Cell]:
    """Empty cells where an upward ray from a mark below meets a
    rightward ray from a mark on the left."""
    pts = f.pointed
    out = set()
    for cell in shape_cells(f.shape):
        if cell in pts:
            continue
        r, c = cell
        below = any(cc == c and rr < r for rr, cc in pts)
        left = any(rr == r and cc < c for rr, cc in pts)
        if below and left:
            out.add(cell)
    return frozenset(out)


def enumerate_forests(eps: Sequence[int]) -> list[Forest]:
    """All forests over ``eps``, by depth-first search in raster order.

    Scanning rows bottom-to-top and left-to-right makes the marking rule
    checkable at placement time, so invalid branches die immediately.
    """
    e = check_forest_signature(eps)
    shape = young_shape(e)
    cells = sorted(shape_cells(shape))
    out: list[Forest] = []
    chosen: list[Cell] = []

    def place(idx: int) -> None:
        if idx == len(cells):
            out.append(Forest(eps=e, pointed=frozenset(chosen)))
            return
        place(idx + 1)
        r, c = cells[idx]
        below = any(cc == c and rr < r for rr, cc in chosen)
        left = any(rr == r and cc < c for rr, cc in chosen)
        if not (below and left):
            chosen.append((r, c))
            place(idx + 1)
            chosen.pop()

    place(0)
    out.sort(key=lambda f: (f.size, sorted(f.pointed)))
    return out


def to_network(f: Forest) -> Network:
    """Edges are the labels of marked and crossing cells."""
    edges = {cell_label(f.eps, cell) for cell in f.pointed | crossing_cells(f)}
    return validate(len(f.eps), edges)


def from_network(net: Network, eps: Sequence[int]) -> Forest:
    """Inverse of ``to_network``: keep only edges not forced by a crossing.

    An edge (j, k) is crossing-forced when edges (i, k) and (j, l) with
    i < j and l > k are both present.
    """
    e = check_forest_signature(eps)
    if not compatible(net, e):
        raise NetworkError(
            "endpoint-range",
            f"network does not fit signature {format_signature(e)}",
        )
    ups = list(signature_sources(e))
    downs = sorted(signature_sinks(e), reverse=True)
    edges = net.edges
    pts = set()
    for i, j in edges:
        forced_left = any(ii < i and jj == j for ii, jj in edges)
        forced_below = any(ii == i and jj > j for ii, jj in edges)
        if forced_left and forced_below:
            continue
        pts.add((downs.index(j) + 1, ups.index(i) + 1))
    return make_forest(e, pts)


# -- strand routing ----------------------------------------------------------


def _boundary_order(shape: Sequence[int]) -> list[tuple[str, int]]:
    """Exit slots along the upper-right staircase, clockwise from the
    top-left: column tops left to right, row ends interleaved top row
    first."""
    order: list[tuple[str, int]] = []
    r = len(shape)
    width = shape[0] if shape else 0
    for c in range(1, width + 1):
        while r >= 1 and shape[r - 1] < c:
            order.append(("right", r))
            r -= 1
        order.append(("top", c))
    while r >= 1:
        order.append(("right", r))
        r -= 1
    return order


def _route(f: Forest, resolve_crossings: bool) -> dict[tuple[str, int], int]:
    """Trace every strand to its boundary exit.

    Each marked cell launches an upward strand carrying its sink label
    (unless another mark lies left in its row, which would take that
    lane over) and a rightward strand carrying its source label (unless
    a mark lies below in its column).  Strands turn at marked cells; if
    ``resolve_crossings`` they also turn at crossing cells, otherwise
    they pass straight through.
    """
    shape = f.shape
    inside = set(shape_cells(shape))
    pts = f.pointed
    crossings = crossing_cells(f) if resolve_crossings else frozenset()
    starts: list[tuple[Cell, str, int]] = []
    for cell in sorted(pts):
        r, c = cell
        src, snk = cell_label(f.eps, cell)
        left_in = any(rr == r and cc < c for rr, cc in pts)
        below_in = any(cc == c and rr < r for rr, cc in pts)
        if left_in and below_in:
            raise ForestError(f"marking rule violated at {cell}", cell=cell)
        if not left_in:
            starts.append((cell, "up", snk))
        if not below_in:
            starts.append((cell, "right", src))
    exits: dict[tuple[str, int], int] = {}
    for cell, direction, label in starts:
        r, c = cell
        d = direction
        while True:
            nr, nc = (r + 1, c) if d == "up" else (r, c + 1)
            if (nr, nc) not in inside:
                key = ("top", c) if d == "up" else ("right", r)
                if key in exits:
                    raise ForestError(f"two strands exit at {key}")
                exits[key] = label
                break
            r, c = nr, nc
            if (r, c) in pts or (r, c) in crossings:
                d = "right" if d == "up" else "up"
    return exits


def strand_permutation(f: Forest, resolve_crossings: bool = True) -> Word:
    """Permutation read clockwise from the strand exit labels.

    Labels absent from the strands are fixed points; the sorted labels
    receive the clockwise reading word in order.  With
    ``resolve_crossings=False`` crossing cells keep their two strands
    crossing instead of turning them.
    """
    exits = _route(f, resolve_crossings)
    reading = [exits[k] for k in _boundary_order(f.shape) if k in exits]
    labels = sorted(reading)
    if len(set(labels)) != len(labels):
        raise ForestError(f"duplicate strand labels: {reading}")
    word = list(identity(len(f.eps)))
    for slot, value in zip(labels, reading):
        word[slot - 1] = value
    return check_word(word)


def max_network_permutation(eps: Sequence[int]) -> Word:
    """Inverse of the permutation of the fullest network for ``eps``."""
    return inverse(to_permutation(max_network(check_forest_signature(eps))))


def _boundary_labels(eps: Signature) -> tuple[list[int], list[int]]:
    downs = sorted(signature_sinks(eps))  # west labels, top row first
    ups = list(signature_sources(eps))  # south labels, left to right
    return downs, ups


def leaf_deletion_permutation(
    f: Forest, order: Optional[Sequence[Cell]] = None
) -> Word:
    """Peel leaves, swapping their two boundary labels, then read the
    boundary counterclockwise (west edges top to bottom, then south
    edges left to right).

    A leaf is a marked cell with no mark above it in its column nor
    right of it in its row.  The outcome does not depend on the order
    leaves are taken in; ``order`` forces an explicit sequence (used to
    test exactly that).
    """
    shape = f.shape
    rows = len(shape)
    west, south = _boundary_labels(f.eps)
    # west[i] labels row (rows - i) counting bottom-up; store per row index
    west_by_row = {rows - i: west[i] for i in range(rows)}
    south_by_col = {c + 1: south[c] for c in range(len(south))}
    remaining = set(f.pointed)

    def is_leaf(cell: Cell) -> bool:
        r, c = cell
        above = any(cc == c and rr > r for rr, cc in remaining)
        right = any(rr == r and cc > c for rr, cc in remaining)
        return not above and not right

    queue = list(order) if order is not None else None
    while remaining:
        if queue is not None:
            cell = queue.pop(0)
            if cell not in remaining:
                raise ForestError(f"cell {cell} not present", cell=cell)
        else:
            cell = max(remaining)
        if not is_leaf(cell):
            raise ForestError(f"cell {cell} is not a leaf", cell=cell)
        r, c = cell
        west_by_row[r], south_by_col[c] = south_by_col[c], west_by_row[r]
        remaining.remove(cell)
    reading = [west_by_row[r] for r in range(rows, 0, -1)]
    reading += [south_by_col[c] for c in range(1, len(south) + 1)]
    return check_word(reading)


def generating_function(eps: Sequence[int]) -> tuple[int, ...]:
    """Coefficients by total count of marked plus crossing cells."""
    forests = enumerate_forests(eps)
    top = 0
    counts: dict[int, int] = {}
    for f in forests:
        w = f.size + len(crossing_cells(f))
        counts[w] = counts.get(w, 0) + 1
        top = max(top, w)
    return tuple(counts.get(i, 0) for i in range(top + 1))


def point_count_vs_swap_length(f: Forest) -> tuple[int, Optional[int]]:
    """(number of marked cells, swap-graded distance from the base word
    to this forest's leaf-deletion word); the two agree."""
    base = max_network_permutation(f.eps)
    return (f.size, swap_length(base, leaf_deletion_permutation(f)))


# -- serialization -----------------------------------------------------------


def forest_to_json(f: Forest) -> str:
    return json.dumps(
        {
            "epsilon": " ".join(format_signature(f.eps)),
            "pointed": [list(c) for c in sorted(f.pointed)],
        }
    )


def forest_from_json(text: str) -> Forest:
    try:
        obj = json.loads(text)
        eps = parse_signature(obj["epsilon"])
        pts = [tuple(int(v) for v in c) for c in obj["pointed"]]
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ForestError(f"cannot parse forest json: {text!r}") from exc
    return make_forest(eps, pts)


def render_forest(f: Forest) -> str:
    """Rows top-to-bottom with marked cells, crossing cells, and the
    boundary labels."""
    shape = f.shape
    rows = len(shape)
    crossings = crossing_cells(f)
    west, south = _boundary_labels(f.eps)
    lines = []
    for r in range(rows, 0, -1):
        cells = []
        for c in range(1, shape[r - 1] + 1):
            if (r, c) in f.pointed:
                cells.append("[•]")
            elif (r, c) in crossings:
                cells.append("[□]")
            else:
                cells.append("[ ]")
        lines.append(f"{west[rows - r]:>2} " + "".join(cells))
    lines.append("   " + "".join(f"{v:^3}" for v in south))
    return "\n".join(lines)
