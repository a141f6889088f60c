"""
Boolean networks: wiring diagrams, decomposition into simple networks,
restriction and extension, z-graphical parametrization, and counts.

Nodes are addressed by name in the public API. Positions (node indices,
component indices in ``q_graph``) are 0-based.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Iterable, Mapping, Sequence

from .boolfn import BooleanFunction, essential_variables, is_nested_canalizing, project, reindex, stratify
from .errors import (
    ArityError,
    ContradictionError,
    FamilyError,
    MappingError,
    NetworkError,
    NotNestedCanalizingError,
    OrderError,
    PolicyError,
)
from .extend import (
    NcfPlacement,
    apply_placement,
    count_extensions_general,
    count_ncf_extensions,
    is_extension,
    restrict_ncf,
)


@dataclass(frozen=True)
class Node:
    name: str
    inputs: tuple
    function: BooleanFunction

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        if len(self.inputs) != self.function.arity:
            raise NetworkError(
                f"node {self.name!r}: {len(self.inputs)} inputs but function arity {self.function.arity}"
            )
        if len(set(self.inputs)) != len(self.inputs):
            raise NetworkError(f"node {self.name!r}: repeated input")

    def canonical(self) -> "Node":
        """Same node with non-essential inputs pruned."""
        keep = sorted(essential_variables(self.function))
        if len(keep) == len(self.inputs):
            return self
        return Node(self.name, tuple(self.inputs[i] for i in keep), project(self.function, keep))


@dataclass(frozen=True)
class BooleanNetwork:
    """Ordered nodes, each updated by a function of its declared inputs.

    Construction prunes non-essential inputs, so the stored input lists
    are exactly the wiring-diagram predecessors.
    """

    nodes: tuple

    def __post_init__(self):
        nodes = tuple(n if isinstance(n, Node) else Node(*n) for n in self.nodes)
        names = [n.name for n in nodes]
        if len(set(names)) != len(names):
            dup = sorted({x for x in names if names.count(x) > 1})
            raise NetworkError(f"duplicate node names {dup}")
        known = set(names)
        for n in nodes:
            missing = [i for i in n.inputs if i not in known]
            if missing:
                raise NetworkError(f"node {n.name!r} reads undefined nodes {missing}")
        object.__setattr__(self, "nodes", tuple(n.canonical() for n in nodes))

    @classmethod
    def from_functions(cls, functions: Sequence[BooleanFunction], names: Sequence[str] | None = None):
        """Network whose ``i``-th function reads every node, in order."""
        names = list(names) if names is not None else [f"x{i + 1}" for i in range(len(functions))]
        return cls(tuple(Node(name, tuple(names), f) for name, f in zip(names, functions)))

    @property
    def names(self) -> tuple:
        return tuple(n.name for n in self.nodes)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise MappingError(f"no node named {name!r}") from None

    def node(self, name: str) -> Node:
        return self.nodes[self.index(name)]

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def full_function(self, name: str) -> BooleanFunction:
        """Coordinate function of ``name`` as a function of all nodes in order."""
        node = self.node(name)
        names = self.names
        return reindex(node.function, len(names), [names.index(i) for i in node.inputs])

    def step(self, state: Sequence[int]) -> tuple:
        """One synchronous update."""
        idx = {name: i for i, name in enumerate(self.names)}
        return tuple(n.function(*(state[idx[i]] for i in n.inputs)) for n in self.nodes)


# ---------------------------------------------------------------------------
# Wiring diagram and decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WiringDiagram:
    """Edge ``(i, j)`` means node ``j`` depends on node ``i``."""

    n: int
    edges: frozenset
    names: tuple = ()

    def successors(self, i: int) -> list:
        return sorted(j for a, j in self.edges if a == i)

    def predecessors(self, j: int) -> list:
        return sorted(i for i, b in self.edges if b == j)

    @property
    def external_parameters(self) -> tuple:
        """Nodes without incoming edges."""
        targets = {j for _, j in self.edges}
        return tuple(j for j in range(self.n) if j not in targets)

    def named_edges(self) -> list:
        return [(self.names[i], self.names[j]) for i, j in sorted(self.edges)]


def wiring_diagram(F: BooleanNetwork) -> WiringDiagram:
    names = F.names
    idx = {name: i for i, name in enumerate(names)}
    edges = frozenset((idx[src], j) for j, node in enumerate(F.nodes) for src in node.inputs)
    return WiringDiagram(len(names), edges, names)


def strongly_connected_components(n: int, edges: Iterable[tuple]) -> list:
    """Tarjan's algorithm, iterative. Returns lists of vertices."""
    adj = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
    for succ in adj:
        succ.sort()
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    stack = []
    out = []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            while pos < len(adj[v]):
                w = adj[v][pos]
                pos += 1
                if index[w] is None:
                    work.append((v, pos))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return out


@dataclass(frozen=True)
class CutPolicy:
    """How inputs from outside a restriction are fixed.

    ``zeros`` sets them to 0, ``ncf`` to their non-canalizing value (NCF
    nodes only) and ``map`` takes the value from ``values`` by node name.
    """

    kind: str = "zeros"
    values: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("zeros", "ncf", "map"):
            raise PolicyError(f"unknown cut policy {self.kind!r}")
        object.__setattr__(self, "values", dict(self.values))

    @classmethod
    def coerce(cls, policy) -> "CutPolicy":
        if isinstance(policy, CutPolicy):
            return policy
        if policy is None:
            return cls()
        if isinstance(policy, str):
            return cls(policy)
        if isinstance(policy, Mapping):
            return cls("map", policy)
        raise PolicyError(f"cannot interpret {policy!r} as a cut policy")

    def describe(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "map":
            out["values"] = {k: self.values[k] for k in sorted(self.values)}
        return out


def restrict_network(F: BooleanNetwork, Y: Iterable[str], policy=None) -> BooleanNetwork:
    """The subnetwork on ``Y`` with outside inputs fixed by ``policy``."""
    policy = CutPolicy.coerce(policy)
    keep = set(Y)
    if not keep:
        raise MappingError("restriction needs at least one node")
    unknown = keep - set(F.names)
    if unknown:
        raise MappingError(f"unknown nodes {sorted(unknown)}")
    nodes = []
    for node in F.nodes:
        if node.name not in keep:
            continue
        kept = [i for i, src in enumerate(node.inputs) if src in keep]
        dropped = [i for i, src in enumerate(node.inputs) if src not in keep]
        fn = node.function
        if dropped:
            if policy.kind == "ncf":
                if not is_nested_canalizing(fn):
                    raise PolicyError(
                        f"node {node.name!r} is not nested canalizing; the ncf policy cannot cut its inputs"
                    )
                fn = restrict_ncf(fn, kept)
            elif policy.kind == "zeros":
                fn = fn.substitute({i: 0 for i in dropped})
            else:
                missing = [node.inputs[i] for i in dropped if node.inputs[i] not in policy.values]
                if missing:
                    raise PolicyError(f"node {node.name!r}: no value given for {missing}")
                fn = fn.substitute({i: int(policy.values[node.inputs[i]]) for i in dropped})
        nodes.append(Node(node.name, tuple(node.inputs[i] for i in kept), fn))
    return BooleanNetwork(tuple(nodes))


@dataclass(frozen=True)
class Decomposition:
    components: tuple
    simple_networks: tuple
    q_graph: frozenset
    policy: CutPolicy

    def component_of(self, name: str) -> int:
        for k, comp in enumerate(self.components):
            if name in comp:
                return k
        raise MappingError(f"no node named {name!r}")

    @property
    def q_edges(self) -> list:
        return sorted(self.q_graph)


def _component_order(n_comp: int, min_member: list, cedges: set) -> list:
    """Topological order of the condensation, ties by smallest member index."""
    indeg = [0] * n_comp
    succ = [[] for _ in range(n_comp)]
    for a, b in cedges:
        indeg[b] += 1
        succ[a].append(b)
    heap = [(min_member[c], c) for c in range(n_comp) if indeg[c] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, c = heapq.heappop(heap)
        order.append(c)
        for d in succ[c]:
            indeg[d] -= 1
            if indeg[d] == 0:
                heapq.heappush(heap, (min_member[d], d))
    return order


def scc_decompose(F: BooleanNetwork, policy=None) -> Decomposition:
    """Split ``F`` into its simple networks and the acyclic graph between them."""
    policy = CutPolicy.coerce(policy)
    wd = wiring_diagram(F)
    comps = strongly_connected_components(wd.n, wd.edges)
    where = {}
    for c, members in enumerate(comps):
        for v in members:
            where[v] = c
    cedges = {(where[i], where[j]) for i, j in wd.edges if where[i] != where[j]}
    order = _component_order(len(comps), [min(c) for c in comps], cedges)
    rank = {c: k for k, c in enumerate(order)}
    names = F.names
    components = tuple(tuple(names[v] for v in comps[c]) for c in order)
    q_graph = frozenset((rank[a], rank[b]) for a, b in cedges)
    simple = tuple(restrict_network(F, comp, policy) for comp in components)
    return Decomposition(components, simple, q_graph, policy)


def is_network_extension(Ft: BooleanNetwork, F: BooleanNetwork) -> bool:
    """Whether each coordinate of ``Ft`` on ``F``'s nodes extends ``F``'s.

    Only nodes absent from ``F`` may be fixed; ``F``'s own nodes are
    free variables on both sides.
    """
    missing = [name for name in F.names if name not in set(Ft.names)]
    if missing:
        raise MappingError(f"nodes {missing} of the smaller network are missing from the larger one")
    base = set(F.names)
    for node in F.nodes:
        big = Ft.node(node.name)
        if not set(node.inputs) <= set(big.inputs):
            return False
        old = [v for v in big.inputs if v in base]
        new = [i for i, v in enumerate(big.inputs) if v not in base]
        lifted = reindex(node.function, len(old), [old.index(v) for v in node.inputs])
        if not is_extension(big.function, lifted, new):
            return False
    return True


# ---------------------------------------------------------------------------
# z-graphical networks
# ---------------------------------------------------------------------------


class GraphicalFamily(Enum):
    LINEAR = "linear"
    CONJUNCTIVE = "conjunctive"
    DISJUNCTIVE = "disjunctive"
    AND_NOT = "and-not"
    OR_NOT = "or-not"

    @property
    def z(self) -> int:
        return 3 if self in (GraphicalFamily.AND_NOT, GraphicalFamily.OR_NOT) else 2

    @classmethod
    def coerce(cls, family) -> "GraphicalFamily":
        if isinstance(family, cls):
            return family
        try:
            return cls(str(family).lower().replace("_", "-"))
        except ValueError:
            raise FamilyError(f"unknown graphical family {family!r}") from None


@dataclass(frozen=True)
class LabeledMatrix:
    """Matrix over ``{0, ..., z-1}``; negative entries are read modulo ``z``."""

    entries: tuple
    z: int = 2

    def __post_init__(self):
        if self.z < 2:
            raise ValueError("alphabet size z must be at least 2")
        rows = tuple(tuple(int(v) % self.z for v in row) for row in self.entries)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("matrix rows must have equal length")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def zeros(cls, rows: int, cols: int, z: int = 2) -> "LabeledMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)), z)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def signed(self) -> list:
        """Entries with ``z - 1`` shown as ``-1`` when ``z == 3``."""
        if self.z != 3:
            return [list(r) for r in self.entries]
        return [[-1 if v == 2 else v for v in r] for r in self.entries]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "LabeledMatrix":
        return LabeledMatrix(tuple(row[c0:c1] for row in self.entries[r0:r1]), self.z)


def _node_function(labels: Sequence[int], family: GraphicalFamily) -> BooleanFunction:
    k = len(labels)
    if family is GraphicalFamily.LINEAR:
        return BooleanFunction.from_callable(k, lambda *x: sum(x) & 1)
    if family is GraphicalFamily.CONJUNCTIVE:
        return BooleanFunction.from_callable(k, lambda *x: all(x))
    if family is GraphicalFamily.DISJUNCTIVE:
        return BooleanFunction.from_callable(k, lambda *x: any(x))
    # label 1 reads the input as is, label 2 negates it
    flips = [1 if lab == 2 else 0 for lab in labels]
    if family is GraphicalFamily.AND_NOT:
        return BooleanFunction.from_callable(k, lambda *x: all(v ^ s for v, s in zip(x, flips)))
    return BooleanFunction.from_callable(k, lambda *x: any(v ^ s for v, s in zip(x, flips)))


def graphical_realize(W: LabeledMatrix, family, names: Sequence[str] | None = None) -> BooleanNetwork:
    """Network described by ``W``; row ``j`` lists the regulators of node ``j``.

    A node without regulators becomes the empty fold of its family: 0 for
    linear and OR-type families, 1 for AND-type families.
    """
    family = GraphicalFamily.coerce(family)
    if W.z != family.z:
        raise FamilyError(f"{family.value} networks use z={family.z}, matrix has z={W.z}")
    if W.rows != W.cols:
        raise ValueError(f"graph matrix must be square, got {W.shape}")
    names = list(names) if names is not None else [f"x{i + 1}" for i in range(W.rows)]
    if len(names) != W.rows:
        raise ValueError("one name per row required")
    nodes = []
    for j, row in enumerate(W.entries):
        cols = [c for c, lab in enumerate(row) if lab]
        fn = _node_function([row[c] for c in cols], family)
        nodes.append(Node(names[j], tuple(names[c] for c in cols), fn))
    return BooleanNetwork(tuple(nodes))


def graphical_matrix(F: BooleanNetwork, family) -> LabeledMatrix:
    """Inverse of :func:`graphical_realize`.

    Raises
    ------
    FamilyError
        If some node is not governed by a function of ``family``.
    """
    family = GraphicalFamily.coerce(family)
    names = F.names
    rows = []
    for node in F.nodes:
        row = [0] * len(names)
        labels = []
        for i in range(len(node.inputs)):
            lo, hi = node.function.cofactor(i, 0), node.function.cofactor(i, 1)
            increasing = all(a <= b for a, b in zip(lo.table, hi.table))
            labels.append(1 if increasing or family.z == 2 else 2)
        if _node_function(labels, family) != node.function:
            raise FamilyError(f"node {node.name!r} is not a {family.value} function")
        for src, lab in zip(node.inputs, labels):
            row[names.index(src)] = lab
        rows.append(tuple(row))
    return LabeledMatrix(tuple(rows), family.z)


def graphical_extend(W1: LabeledMatrix, W2: LabeledMatrix, P: LabeledMatrix) -> LabeledMatrix:
    """Block matrix ``[[W1, 0], [P, W2]]``: the second network reads the first via ``P``."""
    if not (W1.z == W2.z == P.z):
        raise ArityError("all blocks must share z")
    n1, n2 = W1.rows, W2.rows
    if W1.shape != (n1, n1) or W2.shape != (n2, n2):
        raise ArityError("diagonal blocks must be square")
    if P.shape != (n2, n1):
        raise ArityError(f"connection block must be {n2}x{n1}, got {P.rows}x{P.cols}")
    top = tuple(r + (0,) * n2 for r in W1.entries)
    bottom = tuple(p + w for p, w in zip(P.entries, W2.entries))
    return LabeledMatrix(top + bottom, W1.z)


def count_graphical_extensions(n1: int, n2: int, z: int) -> int:
    """Number of connection blocks from an ``n1``-node to an ``n2``-node network."""
    if n1 < 1 or n2 < 1 or z < 2:
        raise ValueError("need n1, n2 >= 1 and z >= 2")
    return z ** (n1 * n2)


def count_acyclic_graphs(m: int) -> int:
    """Acyclic graphs on ``m`` ordered components with edges pointing forward."""
    if m < 1:
        raise ValueError("need m >= 1")
    return 2 ** (m * (m - 1) // 2)


def count_graphical_compositions(sizes: Sequence[int], z: int) -> tuple:
    """Count networks assembled from simple blocks of the given sizes, two ways.

    Returns ``(sum over Q of prod (z^(n_i n_j) - 1), z^M)``; both count the
    same set and must agree.
    """
    sizes = list(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("need at least one component, all of positive size")
    pairs = [(i, j) for i in range(len(sizes)) for j in range(i + 1, len(sizes))]
    by_graph = 0
    for chosen in itertools.product((0, 1), repeat=len(pairs)):
        prod = 1
        for (i, j), on in zip(pairs, chosen):
            if on:
                prod *= z ** (sizes[i] * sizes[j]) - 1
        by_graph += prod
    m_total = sum(sizes[i] * sizes[j] for i, j in pairs)
    return by_graph, z ** m_total


def _check_q_graph(q_graph, m: int) -> list:
    edges = sorted({(int(i), int(j)) for i, j in q_graph})
    for i, j in edges:
        if not (0 <= i < m and 0 <= j < m):
            raise OrderError(f"q_graph edge W{i + 1}->W{j + 1} refers to a missing component")
        if i >= j:
            raise OrderError(f"q_graph edge W{i + 1}->W{j + 1} does not point forward in list order")
    return edges


def compose(simple: Sequence[BooleanNetwork], q_graph, connections, mode: str = "graphical", family=None) -> BooleanNetwork:
    """Assemble networks along an acyclic graph.

    ``mode="graphical"``: ``connections[(i, j)]`` is the nonzero block
    (rows: nodes of ``simple[j]``, columns: nodes of ``simple[i]``).

    ``mode="ncf"``: ``connections[target]`` is a sequence of
    ``(source, NcfPlacement)`` pairs applied in order; each adds ``source``
    as a new input of ``target``.
    """
    simple = list(simple)
    edges = _check_q_graph(q_graph, len(simple))
    all_names = [name for net in simple for name in net.names]
    if len(set(all_names)) != len(all_names):
        raise NetworkError("node names must be unique across the networks being composed")
    if mode == "graphical":
        return _compose_graphical(simple, edges, connections, GraphicalFamily.coerce(family))
    if mode == "ncf":
        return _compose_ncf(simple, edges, connections)
    raise ValueError(f"unknown compose mode {mode!r}")


def _compose_graphical(simple, edges, connections, family):
    mats = [graphical_matrix(net, family) for net in simple]
    sizes = [m.rows for m in mats]
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    conn = {(int(i), int(j)): v for (i, j), v in dict(connections).items()}
    extra = set(conn) - set(edges)
    if extra:
        raise ContradictionError(f"connection blocks given for pairs {sorted(extra)} outside q_graph (0-based component indices)")
    total = offsets[-1]
    big = [[0] * total for _ in range(total)]
    for k, mat in enumerate(mats):
        for r, row in enumerate(mat.entries):
            big[offsets[k] + r][offsets[k]:offsets[k + 1]] = row
    for i, j in edges:
        block = conn.get((i, j))
        if block is None:
            raise ContradictionError(f"q_graph edge W{i + 1}->W{j + 1} has no connection block")
        if not isinstance(block, LabeledMatrix):
            block = LabeledMatrix(tuple(map(tuple, block)), family.z)
        if block.z != family.z or block.shape != (sizes[j], sizes[i]):
            raise ArityError(f"block for W{i + 1}->W{j + 1} must be {sizes[j]}x{sizes[i]} over z={family.z}")
        if block.is_zero():
            raise ContradictionError(f"zero block on q_graph edge W{i + 1}->W{j + 1} means no connection")
        for r, row in enumerate(block.entries):
            big[offsets[j] + r][offsets[i]:offsets[i + 1]] = row
    names = [name for net in simple for name in net.names]
    return graphical_realize(LabeledMatrix(tuple(map(tuple, big)), family.z), family, names)


def _compose_ncf(simple, edges, connections):
    where = {name: k for k, net in enumerate(simple) for name in net.names}
    nodes = {node.name: [list(node.inputs), node.function] for net in simple for node in net.nodes}
    used = set()
    for target, steps in dict(connections).items():
        if target not in nodes:
            raise MappingError(f"unknown target node {target!r}")
        for source, placement in steps:
            if source not in where:
                raise MappingError(f"unknown source node {source!r}")
            pair = (where[source], where[target])
            if pair not in edges:
                raise ContradictionError(f"{source!r} -> {target!r} is not allowed by q_graph")
            inputs, fn = nodes[target]
            if source in inputs:
                raise ContradictionError(f"{source!r} already regulates {target!r}")
            if not isinstance(placement, NcfPlacement):
                raise TypeError("ncf connections need NcfPlacement values")
            nodes[target] = [inputs + [source], apply_placement(fn, placement)]
            used.add(pair)
    unused = set(edges) - used
    if unused:
        raise ContradictionError(f"q_graph edges {sorted(unused)} carry no connection")
    order = [name for net in simple for name in net.names]
    return BooleanNetwork(tuple(Node(name, tuple(nodes[name][0]), nodes[name][1]) for name in order))


def count_network_extensions(m: int, G: BooleanNetwork, mode: str = "general") -> int:
    """Ways to extend ``G`` by an upstream network with ``m`` nodes.

    Product over the nodes of ``G`` of ``sum_q C(m, q) N_q``. In ``general``
    mode ``N_q`` counts all extensions of a function of the ``len(G)`` node
    variables; in ``ncf`` mode it counts nested canalizing extensions.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    total = 1
    for node in G.nodes:
        if mode == "ncf":
            if not is_nested_canalizing(node.function):
                raise NotNestedCanalizingError(f"node {node.name!r} is not nested canalizing")
            ls = stratify(node.function).layer_structure
            per_node = sum(comb(m, q) * count_ncf_extensions(ls, q) for q in range(m + 1))
        elif mode == "general":
            per_node = sum(comb(m, q) * count_extensions_general(len(G), q) for q in range(m + 1))
        else:
            raise ValueError(f"unknown mode {mode!r}")
        total *= per_node
    return total
