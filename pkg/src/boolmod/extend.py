"""
Restriction and extension of Boolean functions, and counting extensions.

New variables are always appended after the existing inputs unless a
position is given explicitly. Counts are exact Python integers.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .boolfn import (
    BooleanFunction,
    CanalizationReport,
    CanalizingLayer,
    LayerStructure,
    is_nested_canalizing,
    reindex,
    stratify,
)
from .errors import (
    ArityError,
    NotNestedCanalizingError,
    PartitionError,
    PlacementError,
    ResourceError,
)

#: Largest ``n + q`` accepted by :func:`enumerate_extensions_brute`.
BRUTE_FORCE_MAX_VARIABLES = 4


@dataclass(frozen=True)
class Restriction:
    """Which inputs survive, and the values given to the dropped ones."""

    kept: tuple
    assignment: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "kept", tuple(sorted(self.kept)))
        object.__setattr__(self, "assignment", dict(self.assignment))
        if set(self.kept) & set(self.assignment):
            raise PartitionError("kept and assigned variables overlap")
        if any(v not in (0, 1) for v in self.assignment.values()):
            raise PartitionError("assigned values must be 0 or 1")

    def variables(self) -> frozenset:
        return frozenset(self.kept) | frozenset(self.assignment)


def restrict(f: BooleanFunction, r: Restriction) -> BooleanFunction:
    """Fix the dropped variables of ``f`` to the values in ``r``."""
    if r.variables() != frozenset(range(f.arity)) or len(r.kept) + len(r.assignment) != f.arity:
        raise PartitionError(
            f"restriction must partition the {f.arity} inputs into kept and assigned"
        )
    return f.substitute(r.assignment)


def restrict_ncf(f: BooleanFunction, kept: Iterable[int]) -> BooleanFunction:
    """Natural restriction of an NCF: dropped inputs get their non-canalizing value.

    A single-variable NCF whose variable is dropped restricts to the
    constant 1.
    """
    if not is_nested_canalizing(f):
        raise NotNestedCanalizingError(
            "natural restriction needs a nested canalizing function; "
            "use restrict() with an explicit assignment instead"
        )
    kept = set(kept)
    if not kept <= set(range(f.arity)):
        raise PartitionError(f"kept variables {sorted(kept)} are not inputs of f")
    if f.arity == 1 and not kept:
        return BooleanFunction.constant(1)
    inputs = stratify(f).canalizing_inputs
    return f.substitute({i: 1 - inputs[i] for i in range(f.arity) if i not in kept})


def is_extension(g: BooleanFunction, f: BooleanFunction, new_vars: Iterable[int]) -> bool:
    """Whether fixing ``new_vars`` of ``g`` to some values yields ``f``.

    ``f``'s inputs are identified with the remaining inputs of ``g`` in
    order.
    """
    new_vars = sorted(set(new_vars))
    if any(not 0 <= v < g.arity for v in new_vars) or g.arity - len(new_vars) != f.arity:
        raise ArityError(
            f"g has {g.arity} inputs; removing {len(new_vars)} new ones must leave {f.arity}"
        )
    for values in itertools.product((0, 1), repeat=len(new_vars)):
        if g.substitute(dict(zip(new_vars, values))) == f:
            return True
    return False


def count_extensions_general(n: int, q: int) -> int:
    """Number of functions on ``n + q`` inputs extending a fixed ``n``-input function.

    Inclusion-exclusion over the ``2^q`` settings of the new inputs; the
    value does not depend on the function. ``q = 0`` gives 1.
    """
    if n < 0 or q < 0:
        raise ValueError("n and q must be non-negative")
    if q == 0:
        return 1
    settings = 1 << q
    total_rows = 1 << (n + q)
    block = 1 << n
    return sum(
        (-1) ** (j + 1) * comb(settings, j) * (1 << (total_rows - j * block))
        for j in range(1, settings + 1)
    )


def enumerate_extensions_brute(f: BooleanFunction, q: int) -> list:
    """Every function on ``n + q`` inputs having ``f`` as a restriction.

    Exhaustive over all ``2^(2^(n+q))`` truth tables; the new inputs are
    the last ``q``. Sorted by truth table.
    """
    n = f.arity
    if q < 0:
        raise ValueError("q must be non-negative")
    if n + q > BRUTE_FORCE_MAX_VARIABLES:
        raise ResourceError(
            f"brute-force enumeration limited to n + q <= {BRUTE_FORCE_MAX_VARIABLES}, got {n + q}"
        )
    rows = 1 << (n + q)
    candidates = np.arange(1 << rows, dtype=np.uint32)
    # bit for row r sits at position rows - 1 - r so that integer order is table order
    bits = ((candidates[:, None] >> np.arange(rows - 1, -1, -1, dtype=np.uint32)) & 1).astype(np.uint8)
    target = np.array(f.table, dtype=np.uint8)
    hit = np.zeros(len(candidates), dtype=bool)
    for c in range(1 << q):
        # new inputs are the low-order digits of the row index
        section = bits[:, [(x << q) | c for x in range(1 << n)]]
        hit |= (section == target).all(axis=1)
    return [BooleanFunction(n + q, tuple(int(b) for b in row)) for row in bits[hit]]


# ---------------------------------------------------------------------------
# Nested canalizing extensions
# ---------------------------------------------------------------------------

INITIAL = "initial"
ADD = "add"
SPLIT = "split"


@dataclass(frozen=True)
class NcfPlacement:
    """Where a new variable goes in the layers of an NCF.

    ``layer`` is 1-based (outermost layer is 1) and unused for
    ``initial``. ``demote`` holds the variables of the split layer that end
    up below the new variable.
    """

    kind: str
    input: int
    layer: int | None = None
    demote: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in (INITIAL, ADD, SPLIT):
            raise PlacementError(f"unknown placement kind {self.kind!r}")
        if self.input not in (0, 1):
            raise PlacementError("canalizing input must be 0 or 1")
        object.__setattr__(self, "demote", frozenset(self.demote))
        if self.kind == INITIAL and (self.layer is not None or self.demote):
            raise PlacementError("initial placement takes no layer")
        if self.kind != INITIAL and (self.layer is None or self.layer < 1):
            raise PlacementError("layer must be a positive (1-based) index")
        if self.kind == ADD and self.demote:
            raise PlacementError("layer addition demotes nothing")
        if self.kind == SPLIT and not self.demote:
            raise PlacementError("a split must demote at least one variable")

    def spec(self, names: Sequence[str] | None = None) -> str:
        """Compact text form, e.g. ``split:layer=2,demote=x1+x4,input=0``."""
        if self.kind == INITIAL:
            return f"initial:input={self.input}"
        if self.kind == ADD:
            return f"add:layer={self.layer},input={self.input}"
        demoted = sorted(self.demote)
        label = "+".join(names[v] if names is not None else str(v) for v in demoted)
        return f"split:layer={self.layer},demote={label},input={self.input}"

    def sort_key(self):
        order = {INITIAL: 0, ADD: 1, SPLIT: 1}
        return (
            order[self.kind],
            self.layer or 0,
            self.kind == SPLIT,
            len(self.demote),
            tuple(sorted(self.demote)),
            self.input,
        )


def _ncf_report(f: BooleanFunction) -> CanalizationReport:
    if not is_nested_canalizing(f):
        raise NotNestedCanalizingError("function is not nested canalizing")
    return stratify(f)


def ncf_placements(f: BooleanFunction) -> list:
    """All ways to add one new variable to an NCF, in a fixed order."""
    report = _ncf_report(f)
    out = [NcfPlacement(INITIAL, a) for a in (0, 1)]
    for i, layer in enumerate(report.layers, start=1):
        out.extend(NcfPlacement(ADD, a, i) for a in (0, 1))
        members = layer.variables
        for size in range(1, len(members)):
            for demoted in itertools.combinations(members, size):
                out.extend(NcfPlacement(SPLIT, a, i, frozenset(demoted)) for a in (0, 1))
    return out


def _layers_from_groups(groups: list) -> tuple:
    """Turn ``[(output, {var: input})]`` into layers, merging a singleton last layer.

    A last layer with a single variable is the same function as that
    variable joining the previous layer with its input flipped.
    """
    groups = [(b, dict(entries)) for b, entries in groups]
    if len(groups) >= 2 and len(groups[-1][1]) == 1:
        (v, a), = groups[-1][1].items()
        groups[-2][1][v] = 1 - a
        groups.pop()
    return tuple(CanalizingLayer(tuple((v, a, b) for v, a in entries.items())) for b, entries in groups)


def placement_layers(f: BooleanFunction, p: NcfPlacement, position: int | None = None) -> tuple:
    """Layers of the NCF produced by :func:`apply_placement` (0-based variables)."""
    report = _ncf_report(f)
    n = f.arity
    pos = n if position is None else position
    if not 0 <= pos <= n:
        raise PlacementError(f"position {pos} out of range for {n} inputs")

    def shift(v):
        return v + 1 if v >= pos else v

    groups = [(layer.output, {shift(v): a for v, a, _ in layer.entries}) for layer in report.layers]
    r = len(groups)
    if p.kind == INITIAL:
        groups.insert(0, (1 - groups[0][0], {pos: p.input}))
    else:
        if p.layer > r:
            raise PlacementError(f"layer {p.layer} does not exist; f has {r} layers")
        b, members = groups[p.layer - 1]
        if p.kind == ADD:
            members[pos] = p.input
        else:
            demote = {shift(v) for v in p.demote}
            if not demote < set(members):
                raise PlacementError(
                    f"demoted variables must be a proper subset of layer {p.layer}"
                )
            upper = {v: a for v, a in members.items() if v not in demote}
            lower = {v: a for v, a in members.items() if v in demote}
            groups[p.layer - 1: p.layer] = [(b, upper), (1 - b, {pos: p.input}), (b, lower)]
    return _layers_from_groups(groups)


def ncf_from_layers(arity: int, layers: Sequence[CanalizingLayer]) -> BooleanFunction:
    """Truth table of the NCF with the given layers (core polynomial 1)."""
    final = 1 - layers[-1].output

    def value(*x):
        for layer in layers:
            for v, a, b in layer.entries:
                if x[v] == a:
                    return b
        return final

    return BooleanFunction.from_callable(arity, value)


def apply_placement(f: BooleanFunction, p: NcfPlacement, position: int | None = None) -> BooleanFunction:
    """Extend the NCF ``f`` by one variable according to ``p``.

    The new variable is inserted at ``position`` (default: after the last
    input). Fixing it to its non-canalizing value gives back ``f``.
    """
    return ncf_from_layers(f.arity + 1, placement_layers(f, p, position))


# ---------------------------------------------------------------------------
# Counting NCF extensions over layer structures
# ---------------------------------------------------------------------------


def _sizes(ls) -> tuple:
    sizes = tuple(LayerStructure(tuple(ls)).sizes)
    if not LayerStructure(sizes).is_ncf_shape():
        raise ValueError(f"{sizes} is not the layer structure of an NCF")
    return sizes


def _normalize(sizes: tuple) -> tuple:
    if len(sizes) >= 2 and sizes[-1] == 1:
        return sizes[:-2] + (sizes[-2] + 1,)
    return sizes


def ncf_transitions(sizes: tuple) -> Counter:
    """Layer structures reachable by adding one variable, with multiplicities.

    The factor 2 for the new variable's canalizing input is not included.
    """
    out = Counter()
    out[_normalize((1,) + sizes)] += 1
    for i, k in enumerate(sizes):
        out[sizes[:i] + (k + 1,) + sizes[i + 1:]] += 1
        for ell in range(1, k):
            split = sizes[:i] + (k - ell, 1, ell) + sizes[i + 1:]
            out[_normalize(split)] += comb(k, ell)
    return out


def ncf_frontier(ls, q: int) -> Counter:
    """Counts of extended NCFs by layer structure after adding ``q`` variables in order."""
    if q < 0:
        raise ValueError("q must be non-negative")
    frontier = Counter({_sizes(ls): 1})
    for _ in range(q):
        step = Counter()
        for sizes, count in frontier.items():
            for nxt, mult in ncf_transitions(sizes).items():
                step[nxt] += 2 * mult * count
        frontier = step
    return frontier


def count_ncf_extensions(ls, q: int) -> int:
    """Number of NCF extensions by ``q`` ordered new variables."""
    return sum(ncf_frontier(ls, q).values())


def count_ncf_extensions_one(ls) -> int:
    """Closed form for a single new variable: ``2 + 2 * sum(2^k_i - 1)``."""
    return 2 + 2 * sum((1 << k) - 1 for k in _sizes(ls))


def count_function_ncf_extensions(f: BooleanFunction, q: int) -> int:
    return count_ncf_extensions(_ncf_report(f).layer_structure, q)
