"""Exhaustive verification suites over small degrees and signatures.

Each check returns a CheckResult; a suite is a named list of checks.
These back the command line ``verify`` verb and are deliberately
independent re-derivations, not reruns of the unit tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as all_words
from typing import Callable, Optional, Sequence

from . import diagram, forest, network, perm, poset


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    counterexample: Optional[str] = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" [{self.counterexample}]" if self.counterexample else ""
        return f"{status} {self.name}: {self.detail}{extra}"


def _signatures(length: int) -> list[network.Signature]:
    """All zero-free signatures of exactly this length with valid ends."""
    if length < 2:
        return []
    out = []
    for mask in range(1 << (length - 2)):
        mid = tuple(1 if mask >> i & 1 else -1 for i in range(length - 2))
        out.append((1,) + mid + (-1,))
    return out


def signatures_up_to(length: int) -> list[network.Signature]:
    return [e for l in range(2, length + 1) for e in _signatures(l)]


def check_bijection(n: int) -> list[CheckResult]:
    out = []
    words = [perm.check_word(w) for w in all_words(range(1, n + 1))]
    nets = [network.from_permutation(w) for w in words]
    ok = len(set(nets)) == len(words)
    out.append(
        CheckResult(
            "distinct-networks",
            ok,
            f"{len(set(nets))}/{len(words)} distinct networks from words of degree {n}",
        )
    )
    bad = next(
        (w for w, net in zip(words, nets) if network.to_permutation(net) != w), None
    )
    out.append(
        CheckResult(
            "word-round-trip",
            bad is None,
            f"word -> network -> word identity on all {len(words)} words",
            counterexample=None if bad is None else perm.format_word(bad),
        )
    )
    bad_net = next(
        (
            net
            for net in nets
            if network.from_permutation(network.to_permutation(net)) != net
        ),
        None,
    )
    out.append(
        CheckResult(
            "network-round-trip",
            bad_net is None,
            f"network -> word -> network identity on all {len(nets)} networks",
            counterexample=None if bad_net is None else network.format_network(bad_net),
        )
    )
    return out


def check_polyomino(n: int) -> list[CheckResult]:
    """Boundary-peel edges agree with the inverse word's network, over all
    single-component accepted-class diagrams drawn from words of degree n."""
    tested = 0
    bad = None
    for w in all_words(range(1, n + 1)):
        poly = diagram.rothe_diagram(w)
        if not poly.cells or poly.component_count != 1:
            continue
        try:
            diagram.validate_shape(poly)
            word = diagram.polyomino_permutation(poly)
        except diagram.PolyominoError:
            continue
        tested += 1
        expected = network.from_permutation(perm.inverse(word)).edges
        if diagram.polyomino_edges(poly) != expected:
            bad = w
            break
    return [
        CheckResult(
            "polyomino-edges",
            bad is None,
            f"peeled edges match the inverse word's network on {tested} diagrams",
            counterexample=None if bad is None else perm.format_word(bad),
        )
    ]


def check_rothe(n: int) -> list[CheckResult]:
    bad = None
    count = 0
    for w in all_words(range(1, n + 1)):
        count += 1
        if diagram.rothe_edges(w) != network.from_permutation(perm.inverse(w)).edges:
            bad = w
            break
    return [
        CheckResult(
            "rothe-edges",
            bad is None,
            f"word-chain edges match the inverse word's network on {count} words",
            counterexample=None if bad is None else perm.format_word(bad),
        )
    ]


def check_forest(eps: network.Signature) -> list[CheckResult]:
    out = []
    forests = forest.enumerate_forests(eps)
    nets = network.enumerate_networks(len(eps), eps)
    round_ok = all(
        forest.from_network(forest.to_network(f), eps) == f for f in forests
    )
    images = {forest.to_network(f) for f in forests}
    out.append(
        CheckResult(
            "forest-network-bijection",
            round_ok and images == set(nets),
            f"{len(forests)} forests <-> {len(nets)} networks",
        )
    )
    base = forest.max_network_permutation(eps)
    bad = None
    for f in forests:
        if forest.strand_permutation(f) != perm.inverse(
            network.to_permutation(forest.to_network(f))
        ):
            bad = ("strands", f)
            break
        leaf_word = forest.leaf_deletion_permutation(f)
        product = perm.compose(
            forest.strand_permutation(f, resolve_crossings=False), perm.inverse(base)
        )
        if leaf_word != perm.inverse(product):
            bad = ("leaf-vs-strands", f)
            break
        if perm.swap_length(base, leaf_word) != f.size:
            bad = ("swap-length", f)
            break
    out.append(
        CheckResult(
            "forest-permutations",
            bad is None,
            f"strand, leaf-deletion and swap-length identities on {len(forests)} forests",
            counterexample=None if bad is None else f"{bad[0]} at {sorted(bad[1].pointed)}",
        )
    )
    return out


def check_lattice(eps: network.Signature) -> list[CheckResult]:
    lat = poset.build_lattice(eps)
    n = len(lat.elements)
    bad = None
    for x in range(n):
        for y in range(n):
            m = lat.idx(lat.meet(x, y))
            j = lat.idx(lat.join(x, y))
            down = lat.down_masks[x] & lat.down_masks[y]
            up = lat.up_masks[x] & lat.up_masks[y]
            if down != lat.down_masks[m] or up != lat.up_masks[j]:
                bad = (x, y)
                break
            if lat.idx(lat.meet(x, j)) != x or lat.idx(lat.join(x, m)) != x:
                bad = (x, y)
                break
        if bad:
            break
    return [
        CheckResult(
            "lattice-laws",
            bad is None,
            f"meet/join universal properties and absorption on {n}x{n} pairs",
            counterexample=None if bad is None else str(bad),
        )
    ]


def check_whitney(eps: network.Signature) -> list[CheckResult]:
    direct = poset.whitney_direct(eps)
    rec = poset.whitney_recurrence(eps)
    gen = forest.generating_function(eps)
    ok = direct == rec == gen
    even, odd = poset.even_odd_balance(eps)
    balanced = even == odd or sum(direct) == 1
    return [
        CheckResult(
            "whitney-triple",
            ok,
            f"direct {poset.poly_format(direct)} == recurrence == forest counts",
        ),
        CheckResult(
            "even-odd-balance",
            balanced,
            f"even {even} vs odd {odd}",
        ),
    ]


def check_mobius(eps: network.Signature) -> list[CheckResult]:
    lat = poset.build_lattice(eps)
    bad = None
    pairs = 0
    for x in range(len(lat.elements)):
        for y in poset._bits(lat.up_masks[x]):
            pairs += 1
            mu = lat.mobius_recursive(x, y)
            if mu != lat.mobius_closed(x, y) or mu not in (-1, 0, 1):
                bad = (x, y)
                break
            dec = lat.decreasing_chain_count(x, y)
            sign = -1 if (lat.ranks[y] - lat.ranks[x]) % 2 else 1
            if sign * mu != dec:
                bad = (x, y)
                break
        if bad:
            break
    return [
        CheckResult(
            "mobius",
            bad is None,
            f"closed form, recursion and decreasing-chain counts agree on {pairs} intervals",
            counterexample=None if bad is None else str(bad),
        )
    ]


def check_el(eps: network.Signature) -> list[CheckResult]:
    lat = poset.build_lattice(eps)
    bad = None
    intervals = 0
    for x in range(len(lat.elements)):
        for y in poset._bits(lat.up_masks[x]):
            intervals += 1
            rising = lat.rising_chains(x, y)
            if len(rising) != 1:
                bad = (x, y, "rising-count")
                break
            least = lat.lex_least_chain(x, y)
            if list(least) != [lat.idx(net) for net in rising[0]]:
                bad = (x, y, "lex-least")
                break
            if not lat.snelling_check(x, y):
                bad = (x, y, "snelling")
                break
        if bad:
            break
    return [
        CheckResult(
            "el-labeling",
            bad is None,
            f"unique lex-first rising chain and label permutations on {intervals} intervals",
            counterexample=None if bad is None else str(bad),
        )
    ]


SuiteFn = Callable[..., list[CheckResult]]


def run_suite(
    suite: str,
    n: Optional[int] = None,
    eps: Optional[Sequence[int]] = None,
    bound: Optional[int] = None,
) -> list[CheckResult]:
    """Run one named suite; ``all`` runs everything at desk-scale bounds."""
    results: list[CheckResult] = []
    n = n or bound or 5
    sigs: list[network.Signature]
    if eps is not None:
        sigs = [network.strip_neutral(network.check_signature(eps))]
    else:
        sigs = signatures_up_to(min(bound or 5, 6))
    if suite in ("bijection", "all"):
        results += check_bijection(min(n, 7))
    if suite in ("polyomino", "all"):
        results += check_polyomino(min(n, 6))
    if suite in ("rothe", "all"):
        results += check_rothe(min(n, 6))
    if suite in ("forest", "all"):
        for e in sigs:
            results += check_forest(e)
    if suite in ("lattice", "all"):
        for e in sigs:
            results += check_lattice(e)
    if suite in ("whitney", "all"):
        whitney_sigs = sigs
        if eps is None:
            whitney_sigs = signatures_up_to(min(bound or 6, 8))
        for e in whitney_sigs:
            results += check_whitney(e)
    if suite in ("mobius", "all"):
        for e in sigs:
            results += check_mobius(e)
    if suite in ("el", "all"):
        for e in sigs:
            results += check_el(e)
    if not results:
        raise ValueError(f"unknown suite: {suite}")
    return results
