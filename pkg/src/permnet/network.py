"""Source/sink networks on n linearly ordered points.

A network is a duplicate-free set of directed edges (i, j) with i < j
such that no point is simultaneously a source and a sink, closed under
crossing completion: if (i, k) and (j, l) are present with i < j < k < l
then (j, k) must be present too.

Networks biject with permutations: ``to_permutation`` multiplies the
edges out as position transpositions in the canonical (size, leftmost)
order, and ``from_permutation`` inverts that by peeling the word from
its last entry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations as _all_perms
from typing import Iterable, Optional, Sequence

from .perm import Word, check_word, identity

Edge = tuple[int, int]
Signature = tuple[int, ...]

ERR_RANGE = "endpoint-range"
ERR_DIRECTION = "edge-direction"
ERR_OVERLAP = "source-sink-overlap"
ERR_COMPLETION = "crossing-completion"

DEFAULT_CAP = 8


class NetworkError(ValueError):
    def __init__(self, code: str, message: str, witness=None):
        super().__init__(message)
        self.code = code
        self.witness = witness


def completion_violation(edges: Iterable[Edge]) -> Optional[tuple[Edge, Edge]]:
    """First pair (i,k),(j,l) with i<j<k<l whose forced edge (j,k) is absent."""
    es = sorted(set(edges))
    eset = set(es)
    for a in es:
        for b in es:
            i, k = a
            j, l = b
            if i < j < k < l and (j, k) not in eset:
                return (a, b)
    return None


@dataclass(frozen=True)
class Network:
    """n points plus a crossing-complete edge set; validates on build."""

    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        srcs, dsts = set(), set()
        for e in self.edges:
            i, j = e
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise NetworkError(ERR_RANGE, f"edge {e} out of range 1..{self.n}", e)
            if i >= j:
                raise NetworkError(ERR_DIRECTION, f"edge {e} must have src < dst", e)
            srcs.add(i)
            dsts.add(j)
        overlap = srcs & dsts
        if overlap:
            p = min(overlap)
            raise NetworkError(
                ERR_OVERLAP, f"point {p} is both a source and a sink", p
            )
        bad = completion_violation(self.edges)
        if bad is not None:
            (i, k), (j, l) = bad
            raise NetworkError(
                ERR_COMPLETION,
                f"edges {(i, k)} and {(j, l)} cross but {(j, k)} is missing",
                bad,
            )

    @property
    def sources(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.edges)

    @property
    def sinks(self) -> frozenset[int]:
        return frozenset(j for _, j in self.edges)

    @property
    def rank(self) -> int:
        return len(self.edges)


def validate(n: int, edges: Iterable[Edge]) -> Network:
    """Build a network, raising NetworkError with a distinct code otherwise."""
    return Network(n=n, edges=frozenset(tuple(e) for e in edges))


def edge_order(net: Network) -> tuple[Edge, ...]:
    """Total edge order: smallest size (dst-src) first, leftmost breaking ties.

    Well defined because no point is both a source and a sink: two edges
    of equal size and equal source would coincide.
    """
    return tuple(sorted(net.edges, key=lambda e: (e[1] - e[0], e[0])))


def to_permutation(net: Network) -> Word:
    """Multiply the ordered edges as position transpositions over the identity."""
    w = list(identity(net.n))
    for i, j in edge_order(net):
        w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
    return tuple(w)


def from_permutation(word: Sequence[int]) -> Network:
    """Peel a word down to the identity, collecting one edge per exchange.

    While the entry at the current last position m is not m, exchange it
    with the first larger entry (emitting that edge); once it is m,
    shrink the suffix.  The collected edges always form a valid network.
    """
    w = list(check_word(word))
    n = len(w)
    edges: set[Edge] = set()
    m = n
    while m >= 1:
        if w[m - 1] == m:
            m -= 1
            continue
        t = w[m - 1]
        j = next(k for k in range(m) if w[k] > t)
        edges.add((j + 1, m))
        w[j], w[m - 1] = w[m - 1], w[j]
    return validate(n, edges)


def signature_of(net: Network) -> Signature:
    """+1 at sources, -1 at sinks, 0 at neutral points."""
    srcs, dsts = net.sources, net.sinks
    return tuple(
        1 if p in srcs else (-1 if p in dsts else 0) for p in range(1, net.n + 1)
    )


# -- source/sink signatures ------------------------------------------------


def check_signature(eps: Iterable[int]) -> Signature:
    e = tuple(eps)
    if any(v not in (1, 0, -1) for v in e):
        raise NetworkError(ERR_RANGE, f"signature entries must be in {{1,0,-1}}: {e}")
    nonzero = [v for v in e if v != 0]
    if nonzero and nonzero[0] != 1:
        raise NetworkError(ERR_DIRECTION, "first nonzero signature entry must be +1")
    return e


def parse_signature(text: str) -> Signature:
    """Accepts "++--", "+ + - -", and "1,1,-1,-1" forms; "0" marks a
    neutral point in every form."""
    s = text.strip()
    if "1" in s:
        vals = [int(t) for t in s.replace(" ", "").split(",") if t]
    else:
        vals = [{"+": 1, "-": -1, "0": 0}[c] for c in s if c in "+-0"]
    return check_signature(vals)


def format_signature(eps: Sequence[int]) -> str:
    return "".join({1: "+", -1: "-", 0: "0"}[v] for v in eps)


def strip_neutral(eps: Sequence[int]) -> Signature:
    return tuple(v for v in eps if v != 0)


def signature_sources(eps: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, v in enumerate(eps, start=1) if v == 1)


def signature_sinks(eps: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, v in enumerate(eps, start=1) if v == -1)


def max_network(eps: Sequence[int]) -> Network:
    """The unique largest network for ``eps``: every source-sink pair i < j."""
    eps = check_signature(eps)
    ups, downs = signature_sources(eps), signature_sinks(eps)
    edges = {(i, j) for i in ups for j in downs if i < j}
    return validate(len(eps), edges)


def compatible(net: Network, eps: Sequence[int]) -> bool:
    """Whether ``net`` fits ``eps``: +1 points may be sources or neutral,
    -1 points sinks or neutral, 0 points must be neutral."""
    eps = check_signature(eps)
    if net.n != len(eps):
        return False
    srcs, dsts = net.sources, net.sinks
    for p, v in enumerate(eps, start=1):
        if p in srcs and v != 1:
            return False
        if p in dsts and v != -1:
            return False
    return True


def enumerate_networks(
    n: int,
    eps: Optional[Sequence[int]] = None,
    cap: int = DEFAULT_CAP,
) -> list[Network]:
    """All networks on n points, optionally restricted to those fitting ``eps``.

    Enumerates the symmetric group and maps each word through
    ``from_permutation``; the two are in bijection, so this is exhaustive.
    Returns a canonically sorted list.
    """
    if n > cap:
        raise NetworkError(ERR_RANGE, f"n={n} exceeds enumeration cap {cap}")
    if eps is not None:
        eps = check_signature(eps)
        if len(eps) != n:
            raise NetworkError(ERR_RANGE, f"signature length {len(eps)} != n={n}")
    nets = [from_permutation(w) for w in _all_perms(range(1, n + 1))]
    if eps is not None:
        nets = [net for net in nets if compatible(net, eps)]
    nets.sort(key=lambda net: (net.rank, sorted_edges(net)))
    return nets


def sorted_edges(net: Network) -> tuple[Edge, ...]:
    """Edges in the label order: by sink ascending, then source descending."""
    return tuple(sorted(net.edges, key=lambda e: (e[1], -e[0])))


# -- serialization -----------------------------------------------------------


def format_network(net: Network) -> str:
    body = ",".join(f"({i},{j})" for i, j in sorted_edges(net))
    return f"n={net.n}; edges={body}"


def parse_network(text: str) -> Network:
    s = text.strip()
    try:
        left, right = s.split(";", 1)
        n = int(left.split("=", 1)[1])
        body = right.split("=", 1)[1].strip()
        edges = []
        if body:
            for part in body.replace("(", " ").replace(")", " ").split(","):
                part = part.strip()
                if part:
                    edges.append(int(part))
        pairs = list(zip(edges[0::2], edges[1::2]))
        if len(edges) % 2:
            raise ValueError("odd endpoint count")
    except (ValueError, IndexError) as exc:
        raise NetworkError(ERR_RANGE, f"cannot parse network text: {s!r}") from exc
    return validate(n, pairs)


def network_to_json(net: Network) -> str:
    return json.dumps({"n": net.n, "edges": [list(e) for e in sorted_edges(net)]})


def network_from_json(text: str) -> Network:
    try:
        obj = json.loads(text)
        n = int(obj["n"])
        edges = [tuple(int(v) for v in e) for e in obj["edges"]]
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise NetworkError(ERR_RANGE, f"cannot parse network json: {text!r}") from exc
    return validate(n, edges)
