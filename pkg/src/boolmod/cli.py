"""Command line front end.

Exit codes: 0 success, 1 domain error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io as bio
from .boolfn import stratify
from .errors import BoolModError, NotNestedCanalizingError, ParseError, PlacementError
from .extend import (
    ADD,
    INITIAL,
    SPLIT,
    NcfPlacement,
    apply_placement,
    count_extensions_general,
    count_ncf_extensions,
    ncf_placements,
)
from .network import (
    BooleanNetwork,
    CutPolicy,
    GraphicalFamily,
    LabeledMatrix,
    Node,
    compose,
    count_graphical_extensions,
    count_network_extensions,
    scc_decompose,
)
from .verify import run_suite


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> BooleanNetwork:
    return bio.load_network(_read(path))


def _write(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_network(net: BooleanNetwork, fmt: str) -> str:
    return bio.emit_tables(net) if fmt == "tables" else bio.emit_network(net)


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def _analysis_text(rep: dict) -> str:
    lines = [f"{rep['node']} = {rep['anf']}  (inputs: {', '.join(rep['inputs']) or '-'})"]
    lines.append(f"  essential: {', '.join(rep['essential']) or '-'}")
    if "constant" in rep:
        lines.append(f"  constant {rep['constant']}")
        return "\n".join(lines) + "\n"
    pairs = ", ".join(f"{v}={a}->{b}" for v, a, b in rep["canalizing_pairs"]) or "none"
    lines.append(f"  canalizing pairs: {pairs}")
    lines.append(f"  nested canalizing: {'yes' if rep['ncf'] else 'no'}")
    lines.append(f"  layer structure: {rep['layer_structure']}  depth: {rep['depth']}")
    for k, layer in enumerate(rep["layers"], start=1):
        entries = ", ".join(f"{e['variable']}={e['input']}" for e in layer)
        lines.append(f"  layer {k} (output {layer[0]['output']}): {entries}")
    if rep["core_variables"]:
        lines.append(f"  core on {', '.join(rep['core_variables'])}: {rep['core']}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    net = _load(args.file)
    nodes = [net.node(args.node)] if args.node else list(net.nodes)
    reports = [bio.node_report(n) for n in nodes]
    if args.format == "json":
        _write(args, bio.emit_json({"nodes": reports}))
    else:
        _write(args, "".join(_analysis_text(r) for r in reports))
    return 0


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------


def _parse_assignment(text: str) -> dict:
    out = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, _, value = item.partition("=")
        if value not in ("0", "1") or not name:
            raise UsageError(f"bad assignment {item!r}; expected NAME=0 or NAME=1")
        out[name.strip()] = int(value)
    return out


def cmd_decompose(args) -> int:
    net = _load(args.file)
    if args.policy == "map":
        if args.assign is None:
            raise UsageError("--policy map needs --assign NAME=V,...")
        policy = CutPolicy("map", _parse_assignment(args.assign))
    else:
        policy = CutPolicy(args.policy)
    d = scc_decompose(net, policy)
    if args.format == "json":
        _write(args, bio.emit_json(bio.decomposition_dict(d)))
    elif args.format == "dot":
        _write(args, bio.emit_dot(d))
    else:
        lines = []
        for k, (comp, simple) in enumerate(zip(d.components, d.simple_networks), start=1):
            lines.append(f"W{k}: {', '.join(comp)}")
            lines += ["  " + rule for rule in bio.emit_network(simple).splitlines()]
        q = ", ".join(f"({i + 1},{j + 1})" for i, j in d.q_edges)
        lines.append(f"Q: {{{q}}}")
        _write(args, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# count
# ---------------------------------------------------------------------------


def _require(args, mode, needed, allowed):
    given = {k for k in ("n", "q", "layers", "n1", "n2", "z", "file", "upstream", "family") if getattr(args, k) is not None}
    missing = [k for k in needed if getattr(args, k) is None]
    extra = sorted(given - set(allowed))
    if missing:
        raise UsageError(f"--mode {mode} needs " + ", ".join(f"--{k}" if k != "file" else "FILE" for k in missing))
    if extra:
        raise UsageError(f"--mode {mode} does not take " + ", ".join(f"--{k}" if k != "file" else "FILE" for k in extra))


def cmd_count(args) -> int:
    mode = args.mode
    if mode == "general":
        _require(args, mode, ["n", "q"], ["n", "q"])
        value = count_extensions_general(args.n, args.q)
    elif mode == "ncf":
        _require(args, mode, ["layers", "q"], ["layers", "q"])
        try:
            sizes = tuple(int(k) for k in args.layers.split(","))
        except ValueError:
            raise UsageError(f"--layers expects comma-separated integers, got {args.layers!r}") from None
        value = count_ncf_extensions(sizes, args.q)
    elif mode == "graphical":
        _require(args, mode, ["n1", "n2", "z"], ["n1", "n2", "z"])
        value = count_graphical_extensions(args.n1, args.n2, args.z)
    else:
        _require(args, mode, ["file", "upstream"], ["file", "upstream", "family"])
        value = count_network_extensions(args.upstream, _load(args.file), args.family or "general")
    sys.stdout.write(f"{value}\n")
    return 0


# ---------------------------------------------------------------------------
# extend
# ---------------------------------------------------------------------------


def parse_placement(spec: str, inputs) -> NcfPlacement:
    """Read ``initial:input=b``, ``add:layer=i,input=b`` or
    ``split:layer=i,demote=v1+v2,input=b``; ``demote`` names the target's inputs."""
    kind, _, rest = spec.partition(":")
    fields = {}
    for item in filter(None, rest.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"bad placement field {item!r}")
        fields[key.strip()] = value.strip()
    known = {INITIAL: {"input"}, ADD: {"layer", "input"}, SPLIT: {"layer", "demote", "input"}}
    if kind not in known:
        raise UsageError(f"unknown placement kind {kind!r}")
    if set(fields) != known[kind]:
        raise UsageError(f"{kind} placement needs fields {sorted(known[kind])}")
    try:
        value = int(fields["input"])
        layer = int(fields["layer"]) if "layer" in fields else None
    except ValueError:
        raise UsageError(f"non-integer field in placement {spec!r}") from None
    demote = set()
    if kind == SPLIT:
        for name in fields["demote"].split("+"):
            if name not in inputs:
                raise UsageError(f"{name!r} is not an input of the target node")
            demote.add(list(inputs).index(name))
    return NcfPlacement(kind, value, layer, frozenset(demote))


def cmd_extend(args) -> int:
    net = _load(args.file)
    node = net.node(args.node)
    try:
        placements = ncf_placements(node.function)
    except NotNestedCanalizingError:
        raise NotNestedCanalizingError(f"node {node.name!r} is not nested canalizing") from None
    if args.list:
        lines = [f"{k}: {p.spec(node.inputs)}" for k, p in enumerate(placements)]
        _write(args, "\n".join(lines) + "\n")
        return 0
    if args.new_var is None:
        raise UsageError("--placement needs --new-var NAME")
    if args.placement.isdigit():
        k = int(args.placement)
        if k >= len(placements):
            raise UsageError(f"placement index {k} out of range (0..{len(placements) - 1})")
        placement = placements[k]
    else:
        placement = parse_placement(args.placement, node.inputs)
    if placement not in placements:
        raise PlacementError(f"placement {args.placement!r} is not legal for node {node.name!r}")
    if args.new_var in node.inputs:
        raise PlacementError(f"{args.new_var!r} already regulates {node.name!r}")
    extended = Node(node.name, node.inputs + (args.new_var,), apply_placement(node.function, placement))
    nodes = [extended if n.name == node.name else n for n in net.nodes]
    if args.new_var not in net.names:
        # a fresh regulator enters as a self-sustaining input node
        nodes.append(Node(args.new_var, (args.new_var,), _identity()))
    _write(args, _emit_network(BooleanNetwork(tuple(nodes)), args.format))
    return 0


def _identity():
    from .boolfn import BooleanFunction

    return BooleanFunction.variable(0, 1)


# ---------------------------------------------------------------------------
# compose
# ---------------------------------------------------------------------------


def _parse_edges(text: str) -> list:
    edges = []
    for item in filter(None, (s.strip() for s in text.replace(";", ",").split(","))):
        a, sep, b = item.partition("-")
        if not sep or not a.strip().isdigit() or not b.strip().isdigit():
            raise UsageError(f"bad edge {item!r}; expected I-J with 1-based indices")
        edges.append((int(a) - 1, int(b) - 1))
    return edges


def _parse_block(text: str, z: int) -> LabeledMatrix:
    try:
        rows = [tuple(int(v) for v in row.split(",")) for row in text.split(";")]
    except ValueError:
        raise UsageError(f"bad matrix {text!r}; rows separated by ';', entries by ','") from None
    return LabeledMatrix(tuple(rows), z)


def cmd_compose(args) -> int:
    nets = [_load(path) for path in args.files]
    edges = _parse_edges(args.q or "")
    if args.family == "ncf":
        connections = {}
        targets = {n.name: n for net in nets for n in net.nodes}
        current = {name: list(n.inputs) for name, n in targets.items()}
        for spec in args.connection:
            head, sep, placement = spec.partition(":")
            target, arrow, source = head.partition("<-")
            if not sep or not arrow:
                raise UsageError(f"bad ncf connection {spec!r}; expected TARGET<-SOURCE:PLACEMENT")
            target, source = target.strip(), source.strip()
            if target not in current:
                raise UsageError(f"unknown target node {target!r}")
            p = parse_placement(placement, current[target])
            connections.setdefault(target, []).append((source, p))
            current[target].append(source)
        out = compose(nets, edges, connections, "ncf")
    else:
        family = GraphicalFamily.coerce(args.family)
        blocks = {}
        for spec in args.connection:
            edge, sep, matrix = spec.partition("=")
            if not sep:
                raise UsageError(f"bad connection {spec!r}; expected I-J=ROWS")
            (pair,) = _parse_edges(edge) or [None]
            blocks[pair] = _parse_block(matrix, family.z)
        out = compose(nets, edges, blocks, "graphical", family)
    _write(args, _emit_network(out, args.format))
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    only = [s.strip() for s in args.only.split(",")] if args.only else None
    try:
        results = run_suite(only, fault=args.inject_fault)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.name}")
        lines += ["  " + d for d in r.details]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    _write(args, "\n".join(lines) + "\n")
    return 1 if failed else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolmod",
        description="Decompose, extend and count Boolean networks built from simple networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p, formats, default):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = sub.add_parser("analyze", help="canalization report per node")
    p.add_argument("file", help="network file (expression or table format), '-' for stdin")
    p.add_argument("--node")
    add_output(p, ["text", "json"], "text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose", help="simple networks and the graph between them")
    p.add_argument("file")
    p.add_argument("--policy", choices=["zeros", "ncf", "map"], default="zeros")
    p.add_argument("--assign", help="NAME=V,... values for --policy map")
    add_output(p, ["text", "json", "dot"], "text")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("count", help="exact number of extensions")
    p.add_argument("file", nargs="?", help="network file for --mode network")
    p.add_argument("--mode", choices=["general", "ncf", "graphical", "network"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--layers", help="layer structure k1,...,kr")
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--z", type=int)
    p.add_argument("--upstream", type=int, help="number of upstream nodes m")
    p.add_argument("--family", choices=["general", "ncf"], help="function class for --mode network")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("extend", help="list or apply NCF placements of a new regulator")
    p.add_argument("file")
    p.add_argument("--node", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--list", action="store_true")
    group.add_argument("--placement", help="index from --list, or a placement spec")
    p.add_argument("--new-var")
    add_output(p, ["expr", "tables"], "expr")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("compose", help="assemble networks along an acyclic graph")
    p.add_argument("files", nargs="+")
    p.add_argument("--q", default="", help="edges I-J between files (1-based), comma separated")
    p.add_argument("--connection", "--connections", dest="connection", action="append", default=[],
                   help="graphical: I-J=ROWS (e.g. 1-2=1,0;1,1); ncf: TARGET<-SOURCE:PLACEMENT")
    p.add_argument("--family", default="linear",
                   choices=[f.value for f in GraphicalFamily] + ["ncf"])
    add_output(p, ["expr", "tables"], "expr")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("verify", help="run the brute-force oracle checks")
    p.add_argument("--suite", choices=["oracles"], default="oracles")
    p.add_argument("--only", help="comma-separated check names")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"boolmod: error: {exc}", file=sys.stderr)
        return 2
    except BoolModError as exc:
        print(f"boolmod: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # bad argument values (negative q, malformed layer structure, ...)
        print(f"boolmod: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
