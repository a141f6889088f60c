"""
Text formats for Boolean networks.

Expression format, one rule per line::

    # comment
    x1 = x2 & x1
    x2 = !x1
    x3 = x1 | !x4

Operators by decreasing precedence: ``!`` (prefix), ``&``, ``^``, ``|``;
binary operators are left-associative. ``0`` and ``1`` are constants.

Table format (JSON)::

    {"format": "boolmod-tables", "variables": ["a", "b"],
     "nodes": [{"target": "a", "inputs": ["b"], "table": "10"}, ...]}

Bit ``r`` of ``table`` is the output on row ``r``; the first input is the
most significant digit of ``r``.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass

from .boolfn import (
    BooleanFunction,
    CanalizationReport,
    LayerStructure,
    anf,
    canalizing_pairs,
    essential_variables,
    format_anf,
    stratify,
)
from .errors import ParseError
from .network import BooleanNetwork, Decomposition, Node, wiring_diagram

TABLE_FORMAT = "boolmod-tables"

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<const>[0-9]+)|(?P<op>[!&^|()=]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str, line: int) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        col = m.start(kind) + 1
        value = m.group(kind)
        if kind == "const" and value not in ("0", "1"):
            raise ParseError(f"only the constants 0 and 1 are allowed, got {value!r}", line, col)
        tokens.append(Token(kind, value, line, col))
        pos = m.end()
    tokens.append(Token("end", "", line, len(text) + 1))
    return tokens


class _ExprParser:
    """Recursive descent over one right-hand side."""

    _binary = [("|", "or"), ("^", "xor"), ("&", "and")]

    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, message, tok=None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column)

    def parse(self):
        if self.tok.kind == "end":
            self.fail("empty right-hand side")
        node = self.binary(0)
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r}")
        return node

    def binary(self, level):
        if level == len(self._binary):
            return self.unary()
        symbol, op = self._binary[level]
        left = self.binary(level + 1)
        while self.tok.text == symbol:
            self.pos += 1
            left = (op, left, self.binary(level + 1))
        return left

    def unary(self):
        tok = self.tok
        if tok.text == "!":
            self.pos += 1
            return ("not", self.unary())
        if tok.text == "(":
            self.pos += 1
            inner = self.binary(0)
            if self.tok.text != ")":
                self.fail("expected ')'")
            self.pos += 1
            return inner
        if tok.kind == "name":
            self.pos += 1
            return ("var", tok.text, tok)
        if tok.kind == "const":
            self.pos += 1
            return ("const", int(tok.text))
        if tok.kind == "end":
            self.fail("unexpected end of expression")
        self.fail(f"unexpected {tok.text!r}")


def _variables(ast, out):
    if ast[0] == "var":
        if ast[1] not in out:
            out[ast[1]] = ast[2]
    elif ast[0] == "not":
        _variables(ast[1], out)
    elif ast[0] != "const":
        _variables(ast[1], out)
        _variables(ast[2], out)
    return out


def _eval(ast, env):
    kind = ast[0]
    if kind == "var":
        return env[ast[1]]
    if kind == "const":
        return ast[1]
    if kind == "not":
        return 1 - _eval(ast[1], env)
    a, b = _eval(ast[1], env), _eval(ast[2], env)
    if kind == "and":
        return a & b
    if kind == "or":
        return a | b
    return a ^ b


def parse_expression(text: str, line: int = 1):
    """Parse a single expression; returns ``(inputs, BooleanFunction)``."""
    ast = _ExprParser(_tokenize(text, line)).parse()
    inputs = list(_variables(ast, {}))
    table = tuple(
        _eval(ast, dict(zip(inputs, x))) for x in itertools.product((0, 1), repeat=len(inputs))
    )
    return inputs, BooleanFunction(len(inputs), table)


def parse_network(text: str) -> BooleanNetwork:
    """Parse the expression format into a (canonicalized) network."""
    rules = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = _tokenize(line, lineno)
        head = tokens[0]
        if head.kind != "name":
            raise ParseError("rule must start with a node name", lineno, head.column)
        if tokens[1].text != "=":
            raise ParseError("expected '=' after the node name", lineno, tokens[1].column)
        if head.text in seen:
            raise ParseError(
                f"duplicate rule for {head.text!r} (first defined on line {seen[head.text]})",
                lineno,
                head.column,
            )
        seen[head.text] = lineno
        ast = _ExprParser(tokens[2:]).parse()
        rules.append((head.text, ast))
    nodes = []
    for target, ast in rules:
        refs = _variables(ast, {})
        for name, tok in refs.items():
            if name not in seen:
                raise ParseError(f"undefined identifier {name!r}", tok.line, tok.column)
        inputs = list(refs)
        table = tuple(
            _eval(ast, dict(zip(inputs, x))) for x in itertools.product((0, 1), repeat=len(inputs))
        )
        nodes.append(Node(target, tuple(inputs), BooleanFunction(len(inputs), table)))
    return BooleanNetwork(tuple(nodes))


# ---------------------------------------------------------------------------
# Expression emitter
# ---------------------------------------------------------------------------


def _literal(name: str, positive: bool) -> str:
    return name if positive else "!" + name


def _ncf_expression(report: CanalizationReport, names) -> str | None:
    order = [v for layer in report.layers for v in layer.variables]
    if order != sorted(order):
        return None
    parts = []
    for layer in report.layers:
        b = layer.output
        if b == 0:
            # f = 0 when some x = a, so every literal "x != a" is ANDed
            lits = [_literal(names[v], a == 0) for v, a, _ in layer.entries]
            parts.append((" & ", lits, "&"))
        else:
            lits = [_literal(names[v], a == 1) for v, a, _ in layer.entries]
            parts.append((" | ", lits, "|"))
    expr = None
    for sep, lits, op in reversed(parts):
        terms = list(lits)
        if expr is not None:
            terms.append(f"({expr})")
        expr = sep.join(terms)
    return expr


def _sop_expression(f: BooleanFunction, names) -> str | None:
    from sympy import And, Not, Or, symbols
    from sympy.logic import SOPform

    syms = symbols(" ".join(f"v{i}" for i in range(f.arity)))
    syms = syms if isinstance(syms, tuple) else (syms,)
    minterms = [list(x) for x, bit in zip(itertools.product((0, 1), repeat=f.arity), f.table) if bit]
    form = SOPform(list(syms), minterms)
    terms = form.args if isinstance(form, Or) else (form,)
    rendered = []
    for term in terms:
        lits = term.args if isinstance(term, And) else (term,)
        pairs = []
        for lit in lits:
            positive = not isinstance(lit, Not)
            sym = lit if positive else lit.args[0]
            pairs.append((syms.index(sym), positive))
        pairs.sort()
        rendered.append(pairs)
    rendered.sort()
    seen = []
    for pairs in rendered:
        for v, _ in pairs:
            if v not in seen:
                seen.append(v)
    if seen != list(range(f.arity)):
        return None
    out = []
    for pairs in rendered:
        text = " & ".join(_literal(names[v], pos) for v, pos in pairs)
        out.append(f"({text})" if len(pairs) > 1 and len(rendered) > 1 else text)
    return " | ".join(out)


def _minterm_expression(f: BooleanFunction, names) -> str:
    terms = []
    for x, bit in zip(itertools.product((0, 1), repeat=f.arity), f.table):
        if bit:
            terms.append("(" + " & ".join(_literal(n, v == 1) for n, v in zip(names, x)) + ")")
    return " | ".join(terms)


def expression(f: BooleanFunction, names) -> str:
    """An expression whose parse gives back ``f`` with inputs ``names`` in order.

    ``f`` must depend on every input (as in a canonical network).
    """
    names = list(names)
    if f.arity == 0:
        return str(f.table[0])
    if f.arity == 1:
        return _literal(names[0], f.table == (0, 1))
    monos = anf(f)
    if all(len(m) <= 1 for m in monos):
        terms = [names[next(iter(m))] for m in sorted(monos, key=lambda m: tuple(m)) if m]
        if frozenset() in monos:
            terms.append("1")
        return " ^ ".join(terms)
    report = stratify(f) if f.weight else None
    if report is not None and report.is_nested_canalizing:
        text = _ncf_expression(report, names)
        if text is not None:
            return text
    return _sop_expression(f, names) or _minterm_expression(f, names)


def emit_network(F: BooleanNetwork) -> str:
    """Expression-format text, nodes in declaration order."""
    return "".join(f"{node.name} = {expression(node.function, node.inputs)}\n" for node in F.nodes)


# ---------------------------------------------------------------------------
# Table format
# ---------------------------------------------------------------------------


def tables_document(F: BooleanNetwork) -> dict:
    return {
        "format": TABLE_FORMAT,
        "variables": list(F.names),
        "nodes": [
            {"target": n.name, "inputs": list(n.inputs), "table": n.function.bits} for n in F.nodes
        ],
    }


def emit_tables(F: BooleanNetwork) -> str:
    return json.dumps(tables_document(F), indent=2) + "\n"


def parse_tables(doc) -> BooleanNetwork:
    """Read the table format from JSON text or an already-decoded dict."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("table document must be a JSON object")
    if doc.get("format", TABLE_FORMAT) != TABLE_FORMAT:
        raise ParseError(f"unsupported format {doc.get('format')!r}; expected {TABLE_FORMAT!r}")
    variables = doc.get("variables")
    records = doc.get("nodes")
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise ParseError("'variables' must be a list of names")
    if len(set(variables)) != len(variables):
        raise ParseError("'variables' contains duplicates")
    if not isinstance(records, list):
        raise ParseError("'nodes' must be a list of records")
    by_target = {}
    for k, rec in enumerate(records):
        if not isinstance(rec, dict) or not {"target", "inputs", "table"} <= set(rec):
            raise ParseError(f"node record {k} needs 'target', 'inputs' and 'table'")
        target, inputs, bits = rec["target"], rec["inputs"], rec["table"]
        if target not in variables:
            raise ParseError(f"node record {k}: unknown target {target!r}")
        if target in by_target:
            raise ParseError(f"node record {k}: duplicate record for {target!r}")
        if not isinstance(inputs, list) or not isinstance(bits, str):
            raise ParseError(f"node record {k}: 'inputs' must be a list and 'table' a string")
        unknown = [i for i in inputs if i not in variables]
        if unknown:
            raise ParseError(f"node {target!r}: unknown input names {unknown}")
        if len(bits) != 1 << len(inputs):
            raise ParseError(
                f"node {target!r}: table has {len(bits)} bits, {1 << len(inputs)} expected for "
                f"{len(inputs)} inputs"
            )
        if set(bits) - {"0", "1"}:
            raise ParseError(f"node {target!r}: table may only contain 0 and 1")
        if len(set(inputs)) != len(inputs):
            raise ParseError(f"node {target!r}: repeated input name")
        by_target[target] = Node(target, tuple(inputs), BooleanFunction.from_bits(bits))
    missing = [v for v in variables if v not in by_target]
    if missing:
        raise ParseError(f"no record for variables {missing}")
    return BooleanNetwork(tuple(by_target[v] for v in variables))


def load_network(text: str) -> BooleanNetwork:
    """Parse either format; JSON documents start with ``{``."""
    if text.lstrip().startswith("{"):
        return parse_tables(text)
    return parse_network(text)


# ---------------------------------------------------------------------------
# DOT
# ---------------------------------------------------------------------------


def _q(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(obj) -> str:
    """Graphviz text for a network's wiring diagram or a decomposition.

    Decompositions draw each simple network as a cluster and each edge of
    the component graph once, in bold, between the clusters.
    """
    if isinstance(obj, Decomposition):
        return _decomposition_dot(obj)
    wd = wiring_diagram(obj)
    lines = ["digraph wiring {"]
    lines += [f"  {_q(name)};" for name in wd.names]
    lines += [f"  {_q(a)} -> {_q(b)};" for a, b in wd.named_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _decomposition_dot(d: Decomposition) -> str:
    lines = ["digraph decomposition {", "  compound=true;"]
    for k, (comp, net) in enumerate(zip(d.components, d.simple_networks)):
        lines.append(f"  subgraph cluster_{k + 1} {{")
        lines.append(f'    label="W{k + 1}";')
        lines += [f"    {_q(name)};" for name in comp]
        lines += [f"    {_q(a)} -> {_q(b)};" for a, b in wiring_diagram(net).named_edges()]
        lines.append("  }")
    for i, j in d.q_edges:
        src, dst = d.components[i][0], d.components[j][0]
        lines.append(
            f"  {_q(src)} -> {_q(dst)} [style=bold, ltail=cluster_{i + 1}, lhead=cluster_{j + 1}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def node_report(node: Node) -> dict:
    """Canalization summary of one node, keyed by input names."""
    f = node.function
    names = list(node.inputs)
    out = {
        "node": node.name,
        "inputs": names,
        "table": f.bits,
        "anf": format_anf(anf(f), names),
        "essential": [names[i] for i in sorted(essential_variables(f))],
    }
    if f.is_constant:
        out.update(constant=f.table[0], canalizing_pairs=[], ncf=False)
        return out
    report = stratify(f)
    out["canalizing_pairs"] = [[names[i], a, b] for i, a, b in canalizing_pairs(f)]
    out["ncf"] = report.is_nested_canalizing
    out.update(report_dict(report, names))
    return out


def report_dict(report: CanalizationReport, names=None) -> dict:
    def name(v):
        return names[v] if names is not None else v

    return {
        "layer_structure": list(report.layer_structure),
        "depth": report.depth,
        "layers": [
            [{"variable": name(v), "input": a, "output": b} for v, a, b in layer.entries]
            for layer in report.layers
        ],
        "core": report.core.bits,
        "core_variables": [name(v) for v in report.core_variables],
        "offset": report.constant_offset,
        "inert": [name(v) for v in report.inert],
    }


def decomposition_dict(d: Decomposition) -> dict:
    """Components are numbered from 1 in ``q_graph``, as W1, W2, ..."""
    return {
        "components": [list(c) for c in d.components],
        "q_graph": [[i + 1, j + 1] for i, j in d.q_edges],
        "policy": d.policy.describe(),
        "simple_networks": [emit_network(net).splitlines() for net in d.simple_networks],
    }


def _is_count_key(key) -> bool:
    key = str(key)
    return key in ("count", "counts") or key.endswith("_count") or key.endswith("_counts")


def _jsonable(obj, count=False):
    """Plain JSON data; integers marked as counts become decimal strings."""
    if isinstance(obj, Decomposition):
        return decomposition_dict(obj)
    if isinstance(obj, CanalizationReport):
        return report_dict(obj)
    if isinstance(obj, LayerStructure):
        return list(obj.sizes)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (float, str)):
        return obj
    if isinstance(obj, int):
        # counts outgrow 64-bit integers and JSON doubles
        return str(obj) if count else obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v, count or _is_count_key(k)) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v, count) for v in items]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit_json(obj) -> str:
    """Deterministic JSON text.

    A bare integer is a count and is written as a decimal string, as is
    every integer under a key named ``count``, ``counts`` or ``*_count``.
    Other integers (layer sizes, bits, indices) stay JSON numbers.
    """
    top_count = isinstance(obj, int) and not isinstance(obj, bool)
    return json.dumps(_jsonable(obj, top_count), indent=2) + "\n"
