"""Command line front end.

Verbs: convert, enumerate, verify, whitney, mobius, render.  Exit codes:
0 success, 1 verification failure, 2 usage error, 3 invalid input object.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import checks, diagram, forest, network, perm, poset

HARD_MAX_N = 9
HARD_MAX_EPS = 10

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_INVALID = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


def load_config(path: Optional[str]) -> dict[str, int]:
    """key=value lines; unknown keys ignored, hard ceilings enforced."""
    caps = {"max_n": network.DEFAULT_CAP, "max_eps_len": 8}
    if path:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line or line.startswith("#") or "=" not in line:
                        continue
                    key, _, value = line.partition("=")
                    key = key.strip()
                    if key in caps:
                        caps[key] = int(value.strip())
        except OSError as exc:
            raise CliError(f"cannot read config {path}: {exc}", EXIT_USAGE) from exc
        except ValueError as exc:
            raise CliError(f"bad config value in {path}: {exc}", EXIT_USAGE) from exc
    caps["max_n"] = min(caps["max_n"], HARD_MAX_N)
    caps["max_eps_len"] = min(caps["max_eps_len"], HARD_MAX_EPS)
    return caps


def _parse_eps(text: str, for_poset: bool, out) -> network.Signature:
    eps = network.parse_signature(text)
    if for_poset and any(v == 0 for v in eps):
        out.write("note: neutral points stripped from signature\n")
        eps = network.strip_neutral(eps)
    return eps


def _forest_eps(args, net: network.Network, out) -> network.Signature:
    if args.eps:
        return _parse_eps(args.eps, True, out)
    sig = network.signature_of(net)
    if 0 in sig:
        raise CliError(
            "network has neutral points; pass --eps to fix the forest shape"
        )
    return sig


def cmd_convert(args, out) -> int:
    src, dst = args.source, args.target
    value = args.value
    if src == "perm":
        word = perm.parse_word(value)
        net = network.from_permutation(word)
    elif src == "network":
        net = network.parse_network(value)
    elif src == "polyomino":
        poly = diagram.polyomino_from_json(value)
        if dst == "perm":
            out.write(perm.format_word(diagram.polyomino_permutation(poly)) + "\n")
            return EXIT_OK
        net = network.validate(
            max((j for _, j in diagram.polyomino_edges(poly)), default=0),
            diagram.polyomino_edges(poly),
        )
    elif src == "forest":
        f = forest.forest_from_json(value)
        if dst == "perm":
            out.write(perm.format_word(forest.strand_permutation(f)) + "\n")
            return EXIT_OK
        net = forest.to_network(f)
    else:
        raise CliError(f"unknown source {src}", EXIT_USAGE)

    if dst == "network":
        out.write(network.format_network(net) + "\n")
    elif dst == "perm":
        out.write(perm.format_word(network.to_permutation(net)) + "\n")
    elif dst == "forest":
        eps = _forest_eps(args, net, out)
        out.write(forest.forest_to_json(forest.from_network(net, eps)) + "\n")
    elif dst == "polyomino":
        word = perm.inverse(network.to_permutation(net))
        poly = diagram.rothe_diagram(word)
        out.write(diagram.polyomino_to_json(poly) + "\n")
    else:
        raise CliError(f"unknown target {dst}", EXIT_USAGE)
    return EXIT_OK


def cmd_enumerate(args, out, caps) -> int:
    if args.eps:
        eps = _parse_eps(args.eps, False, out)
        n = len(eps)
    else:
        eps = None
        n = args.n
    if n is None:
        raise CliError("enumerate needs --n or --eps", EXIT_USAGE)
    if n > caps["max_n"]:
        raise CliError(f"n={n} exceeds cap {caps['max_n']}", EXIT_USAGE)
    nets = network.enumerate_networks(n, eps, cap=caps["max_n"])
    for net in nets:
        out.write(network.format_network(net) + "\n")
    out.write(f"total={len(nets)}\n")
    return EXIT_OK


def cmd_verify(args, out, caps) -> int:
    eps = network.parse_signature(args.eps) if args.eps else None
    if eps is not None and len(network.strip_neutral(eps)) > caps["max_eps_len"]:
        raise CliError("signature exceeds cap", EXIT_USAGE)
    results = checks.run_suite(args.suite, n=args.n, eps=eps, bound=args.bound)
    failed = False
    for res in results:
        out.write(res.line() + "\n")
        failed = failed or not res.passed
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_whitney(args, out, caps) -> int:
    eps = _parse_eps(args.eps, True, out)
    if len(eps) > caps["max_eps_len"]:
        raise CliError("signature exceeds cap", EXIT_USAGE)
    coeffs = poset.whitney_direct(eps, cap=caps["max_eps_len"])
    rec = poset.whitney_recurrence(eps)
    if coeffs != rec:
        out.write("FAIL recurrence disagrees with direct count\n")
        return EXIT_VERIFY
    label = network.format_signature(eps)
    out.write(f"W({label}) = {poset.poly_format(coeffs)}\n")
    out.write(f"coeffs={list(coeffs)}\n")
    return EXIT_OK


def cmd_mobius(args, out, caps) -> int:
    eps = _parse_eps(args.eps, True, out)
    if len(eps) > caps["max_eps_len"]:
        raise CliError("signature exceeds cap", EXIT_USAGE)
    lat = poset.build_lattice(eps, cap=caps["max_eps_len"])
    values = {}
    for y in range(len(lat.elements)):
        mu = lat.mobius_recursive(lat.bottom, y)
        values[mu] = values.get(mu, 0) + 1
    top_mu = lat.mobius_recursive(lat.bottom, lat.top)
    out.write(f"elements={len(lat.elements)}\n")
    out.write(f"mobius(bottom, top)={top_mu}\n")
    for v in sorted(values):
        out.write(f"count mobius(bottom, y)={v}: {values[v]}\n")
    return EXIT_OK


def cmd_render(args, out, caps) -> int:
    if args.poset:
        eps = _parse_eps(args.poset, True, out)
        if len(eps) > caps["max_eps_len"]:
            raise CliError("signature exceeds cap", EXIT_USAGE)
        lat = poset.build_lattice(eps, cap=caps["max_eps_len"])
        if args.format == "dot":
            out.write(lat.to_dot() + "\n")
        else:
            for i, net in enumerate(lat.elements):
                out.write(f"{i} rank={lat.ranks[i]} {network.format_network(net)}\n")
        return EXIT_OK
    if args.network:
        net = network.parse_network(args.network)
        if args.format == "json":
            out.write(network.network_to_json(net) + "\n")
        else:
            marks = {1: "+", -1: "-", 0: "."}
            sig = network.signature_of(net)
            out.write(" ".join(marks[v] for v in sig) + "\n")
            out.write(network.format_network(net) + "\n")
        return EXIT_OK
    if args.polyomino:
        poly = diagram.polyomino_from_json(args.polyomino)
        lp = diagram.label_polyomino(poly) if poly.cells else None
        if args.format == "json":
            out.write(diagram.polyomino_to_json(poly) + "\n")
        elif args.format == "cells":
            out.write(diagram.cell_dump(poly, lp) + "\n")
        else:
            out.write(diagram.render_polyomino(poly, lp) + "\n")
        return EXIT_OK
    if args.forest:
        f = forest.forest_from_json(args.forest)
        if args.format == "json":
            out.write(forest.forest_to_json(f) + "\n")
        else:
            out.write(forest.render_forest(f) + "\n")
        return EXIT_OK
    raise CliError("render needs one of --poset/--network/--polyomino/--forest", EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="permnet",
        description="Networks, permutations, cell diagrams, forests, and their lattice.",
    )
    ap.add_argument("--config", help="key=value caps file")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("convert", help="convert between representations")
    p.add_argument("--from", dest="source", required=True,
                   choices=["perm", "network", "polyomino", "forest"])
    p.add_argument("--to", dest="target", required=True,
                   choices=["perm", "network", "polyomino", "forest"])
    p.add_argument("--eps", help="signature for forest targets")
    p.add_argument("value", help="input object (text or JSON per format)")

    p = sub.add_parser("enumerate", help="list all networks for n or a signature")
    p.add_argument("--n", type=int)
    p.add_argument("--eps")

    p = sub.add_parser("verify", help="run an exhaustive verification suite")
    p.add_argument("--suite", required=True,
                   choices=["bijection", "polyomino", "rothe", "forest",
                            "lattice", "whitney", "mobius", "el", "all"])
    p.add_argument("--n", type=int)
    p.add_argument("--eps")
    p.add_argument("--bound", type=int)

    p = sub.add_parser("whitney", help="rank generating polynomial of a signature")
    p.add_argument("--eps", required=True)

    p = sub.add_parser("mobius", help="Mobius values from the bottom element")
    p.add_argument("--eps", required=True)

    p = sub.add_parser("render", help="text/DOT renderings")
    p.add_argument("--poset")
    p.add_argument("--network")
    p.add_argument("--polyomino")
    p.add_argument("--forest")
    p.add_argument("--format", default="text", choices=["text", "json", "dot", "cells"])
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        caps = load_config(args.config)
        if args.verb == "convert":
            return cmd_convert(args, out)
        if args.verb == "enumerate":
            return cmd_enumerate(args, out, caps)
        if args.verb == "verify":
            return cmd_verify(args, out, caps)
        if args.verb == "whitney":
            return cmd_whitney(args, out, caps)
        if args.verb == "mobius":
            return cmd_mobius(args, out, caps)
        if args.verb == "render":
            return cmd_render(args, out, caps)
        raise CliError(f"unknown verb {args.verb}", EXIT_USAGE)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (perm.PermError, network.NetworkError, diagram.PolyominoError,
            diagram.RibbonError, forest.ForestError, poset.LatticeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
