"""
Boolean functions as truth tables, and their canalization structure.

Truth tables use one fixed row order everywhere in the package: row ``r``
written in binary with ``n`` digits assigns its most significant digit to
the first input variable and its least significant digit to the last one.
So for two inputs the rows are ``00, 01, 10, 11`` and AND is ``0001``.

Variable indices are 0-based positions in the function's input list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import ArityError, DegenerateFunctionError, OutOfDomainError


@dataclass(frozen=True)
class BooleanFunction:
    """Truth table of a function ``F_2^n -> F_2``.

    ``table[r]`` is the output on the ``r``-th input assignment (see the
    module docstring for the row order).
    """

    arity: int
    table: tuple

    def __post_init__(self):
        if self.arity < 0:
            raise ArityError(f"arity must be non-negative, got {self.arity}")
        table = tuple(int(b) for b in self.table)
        if len(table) != 1 << self.arity:
            raise ArityError(
                f"truth table of a {self.arity}-ary function needs {1 << self.arity} "
                f"entries, got {len(table)}"
            )
        if any(b not in (0, 1) for b in table):
            raise ValueError("truth table entries must be 0 or 1")
        object.__setattr__(self, "table", table)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_bits(cls, bits: str) -> "BooleanFunction":
        """Build from a bit string such as ``"0001"``."""
        n = len(bits).bit_length() - 1
        if len(bits) == 0 or 1 << n != len(bits):
            raise ArityError(f"bit string length {len(bits)} is not a power of two")
        if set(bits) - {"0", "1"}:
            raise ValueError(f"bit string may only contain 0 and 1: {bits!r}")
        return cls(n, tuple(int(c) for c in bits))

    @classmethod
    def from_callable(cls, arity: int, fn: Callable[..., int]) -> "BooleanFunction":
        """Tabulate ``fn(x_0, ..., x_{n-1})`` over all inputs in row order."""
        return cls(arity, tuple(int(bool(fn(*x))) for x in itertools.product((0, 1), repeat=arity)))

    @classmethod
    def constant(cls, value: int, arity: int = 0) -> "BooleanFunction":
        return cls(arity, (int(value),) * (1 << arity))

    @classmethod
    def variable(cls, index: int, arity: int) -> "BooleanFunction":
        """The projection onto input ``index``."""
        if not 0 <= index < arity:
            raise ArityError(f"variable index {index} out of range for arity {arity}")
        shift = arity - 1 - index
        return cls(arity, tuple((r >> shift) & 1 for r in range(1 << arity)))

    # -- basic queries ------------------------------------------------------

    @property
    def bits(self) -> str:
        return "".join(map(str, self.table))

    @property
    def is_constant(self) -> bool:
        return len(set(self.table)) == 1

    @property
    def weight(self) -> int:
        return sum(self.table)

    def __call__(self, *assignment: int) -> int:
        return evaluate(self, assignment)

    def __str__(self) -> str:
        return f"BooleanFunction({self.arity}, {self.bits})"

    # -- pointwise algebra (same arity only) --------------------------------

    def _zip(self, other, op):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        if other.arity != self.arity:
            raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")
        return BooleanFunction(self.arity, tuple(op(a, b) for a, b in zip(self.table, other.table)))

    def __and__(self, other):
        return self._zip(other, lambda a, b: a & b)

    def __or__(self, other):
        return self._zip(other, lambda a, b: a | b)

    def __xor__(self, other):
        if isinstance(other, int):
            return BooleanFunction(self.arity, tuple(b ^ (other & 1) for b in self.table))
        return self._zip(other, lambda a, b: a ^ b)

    def __invert__(self):
        return BooleanFunction(self.arity, tuple(1 - b for b in self.table))

    # -- restriction helpers ------------------------------------------------

    def cofactor(self, index: int, value: int) -> "BooleanFunction":
        """Fix input ``index`` to ``value``; the result has arity ``n - 1``.

        The remaining inputs keep their relative order.
        """
        n = self.arity
        if not 0 <= index < n:
            raise ArityError(f"variable index {index} out of range for arity {n}")
        stride = 1 << (n - 1 - index)
        offset = stride if value else 0
        t = self.table
        out = []
        for block in range(0, 1 << n, 2 * stride):
            start = block + offset
            out.extend(t[start:start + stride])
        return BooleanFunction(n - 1, tuple(out))

    def substitute(self, assignment: dict) -> "BooleanFunction":
        """Fix several inputs at once (``{index: value}``)."""
        g = self
        for index in sorted(assignment, reverse=True):
            g = g.cofactor(index, assignment[index])
        return g


def evaluate(f: BooleanFunction, assignment: Sequence[int]) -> int:
    """Output of ``f`` on a full input assignment."""
    if len(assignment) != f.arity:
        raise ArityError(f"expected {f.arity} input values, got {len(assignment)}")
    r = 0
    for bit in assignment:
        r = (r << 1) | (int(bit) & 1)
    return f.table[r]


def reindex(f: BooleanFunction, arity: int, positions: Sequence[int]) -> BooleanFunction:
    """Re-express ``f`` over a new list of ``arity`` inputs.

    ``positions[i]`` is the index of ``f``'s input ``i`` in the new list.
    Inputs of the new list that ``f`` does not use are non-essential in the
    result. Covers permutation and padding with dummy variables.
    """
    if len(positions) != f.arity:
        raise ArityError(f"need {f.arity} positions, got {len(positions)}")
    if len(set(positions)) != len(positions) or any(not 0 <= p < arity for p in positions):
        raise ArityError(f"invalid positions {tuple(positions)} for arity {arity}")
    shifts = [arity - 1 - p for p in positions]
    t = f.table
    out = []
    for r in range(1 << arity):
        idx = 0
        for s in shifts:
            idx = (idx << 1) | ((r >> s) & 1)
        out.append(t[idx])
    return BooleanFunction(arity, tuple(out))


def project(f: BooleanFunction, keep: Sequence[int]) -> BooleanFunction:
    """Drop the inputs not listed in ``keep``; they must be non-essential."""
    keep = list(keep)
    dropped = [i for i in range(f.arity) if i not in set(keep)]
    lost = essential_variables(f) & set(dropped)
    if lost:
        raise ArityError(f"cannot drop essential inputs {sorted(lost)}")
    g = f.substitute({i: 0 for i in dropped})
    order = sorted(keep)
    if keep != order:
        g = reindex(g, len(keep), [keep.index(i) for i in order])
    return g


def essential_variables(f: BooleanFunction) -> frozenset:
    """Indices ``i`` with ``f(x) != f(x + e_i)`` for some ``x``."""
    return frozenset(i for i in range(f.arity) if f.cofactor(i, 0) != f.cofactor(i, 1))


def canalizing_pairs(f: BooleanFunction) -> list:
    """All ``(i, a, b)`` such that ``x_i = a`` forces ``f = b``.

    The complementary cofactor must not be identically ``b`` as well, so
    non-essential inputs never show up. The list is sorted and is empty
    exactly when ``f`` is not canalizing.

    Raises
    ------
    DegenerateFunctionError
        If ``f`` is constant.
    """
    if f.is_constant:
        raise DegenerateFunctionError("canalizing pairs are undefined for a constant function")
    pairs = []
    for i in range(f.arity):
        cof = (f.cofactor(i, 0), f.cofactor(i, 1))
        for a in (0, 1):
            if cof[a].is_constant:
                b = cof[a].table[0]
                if cof[1 - a] != BooleanFunction.constant(b, f.arity - 1):
                    pairs.append((i, a, b))
    return pairs


# ---------------------------------------------------------------------------
# Stratification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LayerStructure:
    """Sizes ``(k_1, ..., k_r)`` of the canalizing layers, outermost first."""

    sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(k) for k in self.sizes)
        if any(k < 1 for k in sizes):
            raise ValueError(f"layer sizes must be positive: {sizes}")
        object.__setattr__(self, "sizes", sizes)

    def __iter__(self):
        return iter(self.sizes)

    def __len__(self):
        return len(self.sizes)

    def __getitem__(self, i):
        return self.sizes[i]

    @property
    def depth(self) -> int:
        return sum(self.sizes)

    def is_ncf_shape(self) -> bool:
        """True for the layer structure of some NCF (last layer >= 2 unless n == 1)."""
        if not self.sizes:
            return False
        if self.sizes == (1,):
            return True
        return self.sizes[-1] >= 2


@dataclass(frozen=True)
class CanalizingLayer:
    """One layer: ``(variable, canalizing input, canalized output)`` entries."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(sorted(tuple(int(v) for v in e) for e in self.entries))
        if not entries:
            raise ValueError("a layer needs at least one variable")
        if len({e[2] for e in entries}) != 1:
            raise ValueError("all entries of a layer share one canalized output")
        if len({e[0] for e in entries}) != len(entries):
            raise ValueError("duplicate variable in layer")
        object.__setattr__(self, "entries", entries)

    @property
    def variables(self) -> tuple:
        return tuple(e[0] for e in self.entries)

    @property
    def inputs(self) -> dict:
        return {e[0]: e[1] for e in self.entries}

    @property
    def output(self) -> int:
        return self.entries[0][2]

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class CanalizationReport:
    """Stratified form of a non-zero Boolean function.

    ``core`` is the core polynomial as a function of ``core_variables``
    (in increasing index order); ``inert`` lists the declared inputs the
    function does not depend on.
    """

    arity: int
    layers: tuple
    core: BooleanFunction
    core_variables: tuple
    constant_offset: int
    inert: tuple = field(default=())

    @property
    def depth(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @property
    def layer_structure(self) -> LayerStructure:
        return LayerStructure(tuple(len(layer) for layer in self.layers))

    @property
    def canalizing_inputs(self) -> dict:
        out = {}
        for layer in self.layers:
            out.update(layer.inputs)
        return out

    @property
    def is_nested_canalizing(self) -> bool:
        return self.arity > 0 and not self.inert and self.depth == self.arity

    def value(self, assignment: Sequence[int]) -> int:
        """Evaluate the stratified form on a full input assignment."""
        for layer in self.layers:
            for v, a, b in layer.entries:
                if assignment[v] == a:
                    return b
        core_value = evaluate(self.core, [assignment[v] for v in self.core_variables])
        if not self.layers:
            return core_value ^ self.constant_offset
        return core_value ^ self.layers[-1].output

    def reconstruct(self) -> BooleanFunction:
        return BooleanFunction(
            self.arity,
            tuple(self.value(x) for x in itertools.product((0, 1), repeat=self.arity)),
        )


def stratify(f: BooleanFunction) -> CanalizationReport:
    """Unique layered decomposition of a non-zero function.

    Each pass collects every variable that canalizes the current function
    into one layer, fixes those variables to their non-canalizing inputs
    and continues with what is left. The pass loop stops at a function
    with no canalizing variable, which (up to the offset) is the core.

    Raises
    ------
    OutOfDomainError
        If ``f`` is identically zero.
    """
    if f.weight == 0:
        raise OutOfDomainError("stratification is defined only for functions that are not identically 0")
    essential = sorted(essential_variables(f))
    inert = tuple(i for i in range(f.arity) if i not in essential)
    g = project(f, essential)
    names = list(essential)
    layers = []
    while g.arity > 0:
        pairs = canalizing_pairs(g)
        if not pairs:
            break
        if g.arity == 1 and len(pairs) == 2:
            # a lone literal: the offset must be 0
            pairs = [p for p in pairs if p[2] == 0]
        layers.append(CanalizingLayer(tuple((names[i], a, b) for i, a, b in pairs)))
        fixed = {i: 1 - a for i, a, _ in pairs}
        g = g.substitute(fixed)
        names = [v for i, v in enumerate(names) if i not in fixed]

    if layers:
        offset = layers[0].output
        core = g ^ layers[-1].output
    else:
        offset = 0
        core = g
    return CanalizationReport(
        arity=f.arity,
        layers=tuple(layers),
        core=core,
        core_variables=tuple(names),
        constant_offset=offset,
        inert=inert,
    )


def is_nested_canalizing(f: BooleanFunction) -> bool:
    if f.arity == 0 or f.is_constant:
        return False
    return stratify(f).is_nested_canalizing


def anf(f: BooleanFunction) -> frozenset:
    """Algebraic normal form as a set of monomials.

    Each monomial is a frozenset of variable indices; the empty frozenset
    is the constant 1. Computed with the Moebius transform over the subset
    lattice.
    """
    n = f.arity
    coeffs = list(f.table)
    step = 1
    while step < len(coeffs):
        for block in range(0, len(coeffs), 2 * step):
            for r in range(block + step, block + 2 * step):
                coeffs[r] ^= coeffs[r - step]
        step *= 2
    return frozenset(
        frozenset(i for i in range(n) if (r >> (n - 1 - i)) & 1)
        for r, c in enumerate(coeffs)
        if c
    )


def from_anf(arity: int, monomials: Iterable[Iterable[int]]) -> BooleanFunction:
    """Inverse of :func:`anf`."""
    monos = [frozenset(m) for m in monomials]
    return BooleanFunction.from_callable(
        arity, lambda *x: sum(all(x[i] for i in m) for m in monos) & 1
    )


def format_anf(monomials: Iterable[Iterable[int]], names: Sequence[str] | None = None) -> str:
    """Render an ANF as ``x1*x2 + x3 + 1`` (empty set renders as ``0``)."""
    monos = sorted((tuple(sorted(m)) for m in monomials), key=lambda m: (len(m) == 0, len(m), m))
    if not monos:
        return "0"

    def name(i):
        return names[i] if names is not None else f"x{i + 1}"

    return " + ".join("*".join(name(i) for i in m) if m else "1" for m in monos)
