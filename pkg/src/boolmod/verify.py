"""
Desk-scale consistency checks: closed forms and recursions against
exhaustive enumeration.

Each check returns a :class:`CheckResult`; :func:`run_suite` runs them in a
fixed order. The enumerations here deliberately avoid the code paths they
check (no layer-structure DP, no placement rules).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .boolfn import BooleanFunction, CanalizingLayer, is_nested_canalizing
from .extend import (
    apply_placement,
    count_extensions_general,
    count_ncf_extensions,
    count_ncf_extensions_one,
    enumerate_extensions_brute,
    ncf_from_layers,
    ncf_placements,
    restrict_ncf,
)
from .network import (
    BooleanNetwork,
    LabeledMatrix,
    Node,
    compose,
    count_graphical_compositions,
    count_graphical_extensions,
    count_network_extensions,
    graphical_realize,
    scc_decompose,
)

#: Values printed in the literature for a two-variable NCF, q = 1..6.
PUBLISHED_NCF_SEQUENCE = (8, 92, 1328, 23184, 483840, 12050112)

GENERAL_COUNT_CASES = ((1, 1), (2, 1), (1, 2), (2, 2), (1, 3), (3, 1))


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


def all_functions(n: int):
    """Every function of ``n`` inputs, by increasing truth-table integer."""
    rows = 1 << n
    for t in range(1 << rows):
        yield BooleanFunction(n, tuple((t >> (rows - 1 - r)) & 1 for r in range(rows)))


def ordered_set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    n = len(items)
    for mask in range(1, 1 << n):
        block = [items[i] for i in range(n) if mask >> i & 1]
        rest = [items[i] for i in range(n) if not mask >> i & 1]
        for tail in ordered_set_partitions(rest):
            yield [block] + tail


def _drop_from_layers(blocks, first_output, v):
    """Remove ``v`` from a layered NCF by setting it to its non-canalizing value.

    Works directly on the layered form: an emptied layer vanishes and its
    neighbours merge, and a singleton last layer joins the previous one
    with its input flipped.
    """
    blocks = [dict(b) for b in blocks]
    i = next(k for k, b in enumerate(blocks) if v in b)
    del blocks[i][v]
    if not blocks[i]:
        del blocks[i]
        if i == 0:
            first_output ^= 1
        elif i < len(blocks):
            blocks[i - 1].update(blocks.pop(i))
    if len(blocks) >= 2 and len(blocks[-1]) == 1:
        (u, a), = blocks[-1].items()
        blocks[-2][u] = 1 - a
        blocks.pop()
    if len(blocks) == 1 and len(blocks[0]) == 1 and first_output == 1:
        (u, a), = blocks[0].items()
        blocks[0][u] = 1 - a
        first_output = 0
    return blocks, first_output


def ncf_extension_count_by_layers(base_blocks, base_output, q):
    """Count NCFs on ``n + q`` inputs that restrict to the base NCF.

    Every NCF is enumerated once through its unique layered form (ordered
    partition with last block of size >= 2, one canalizing input per
    variable, first canalized output). The new variables are removed last
    to first.
    """
    n = sum(len(b) for b in base_blocks)
    total_vars = n + q
    target = ([dict(b) for b in base_blocks], base_output)
    count = 0
    for part in ordered_set_partitions(range(total_vars)):
        if len(part[-1]) < 2:
            continue
        for inputs in itertools.product((0, 1), repeat=total_vars):
            for b1 in (0, 1):
                blocks = [{v: inputs[v] for v in blk} for blk in part]
                out = b1
                for v in range(total_vars - 1, n - 1, -1):
                    blocks, out = _drop_from_layers(blocks, out, v)
                if (blocks, out) == target:
                    count += 1
    return count


def ncf_extensions_by_truth_table(f: BooleanFunction, q: int) -> int:
    """Exhaustive count over all truth tables on ``n + q`` inputs.

    Keeps functions that are extensions of ``f`` (some setting of the new
    inputs gives ``f``), are nested canalizing, and give back ``f`` when the
    new inputs are removed one at a time, last first, by natural restriction.
    """
    n = f.arity
    candidates = enumerate_extensions_brute(f, q)
    count = 0
    for g in candidates:
        if not is_nested_canalizing(g):
            continue
        h = g
        for k in range(n + q - 1, n - 1, -1):
            h = restrict_ncf(h, range(k))
        if h == f:
            count += 1
    return count


def generic_ncf(sizes):
    """An NCF with the given layer structure: all inputs 0, first output 0."""
    layers = []
    v = 0
    for depth, k in enumerate(sizes):
        layers.append(CanalizingLayer(tuple((v + i, 0, depth & 1) for i in range(k))))
        v += k
    return ncf_from_layers(v, layers)


def compositions_with_ncf_tail(n):
    """All layer structures of NCFs on ``n`` inputs."""
    if n == 1:
        yield (1,)
        return
    for cuts in itertools.product((0, 1), repeat=n - 1):
        sizes, run = [], 1
        for c in cuts:
            if c:
                sizes.append(run)
                run = 1
            else:
                run += 1
        sizes.append(run)
        if sizes[-1] >= 2:
            yield tuple(sizes)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------


def check_general_counts(fault: bool = False) -> CheckResult:
    res = CheckResult("general-counts", True)
    rng = np.random.default_rng(0)
    for n, q in GENERAL_COUNT_CASES:
        f = BooleanFunction(n, tuple(int(b) for b in rng.integers(0, 2, 1 << n)))
        brute = len(enumerate_extensions_brute(f, q))
        formula = count_extensions_general(n, q) + (1 if fault else 0)
        ok = brute == formula
        res.passed &= ok
        res.details.append(f"n={n} q={q}: brute {brute}, formula {formula}")
    for n in range(0, 4):
        ok = count_extensions_general(n, 1) == 2 ** (2 ** n + 1) - 1
        res.passed &= ok
        res.details.append(f"N_1 closed form n={n}: {'ok' if ok else 'mismatch'}")
    return res


def check_ncf_sequence(max_oracle_q: int = 4) -> CheckResult:
    res = CheckResult("ncf-sequence", True)
    values = [count_ncf_extensions((2,), q) for q in range(1, 7)]
    res.details.append("N_q for layer structure (2), q=1..6: " + ", ".join(map(str, values)))
    base = [{0: 0, 1: 0}]
    for q in range(1, max_oracle_q + 1):
        oracle = ncf_extension_count_by_layers(base, 0, q)
        ok = oracle == values[q - 1]
        res.passed &= ok
        res.details.append(f"q={q}: dp {values[q - 1]}, layered enumeration {oracle}")
    f = BooleanFunction.from_bits("0001")
    for q in (1, 2):
        brute = ncf_extensions_by_truth_table(f, q)
        ok = brute == values[q - 1]
        res.passed &= ok
        res.details.append(f"q={q}: dp {values[q - 1]}, truth-table scan {brute}")
    differ = [q for q, (a, b) in enumerate(zip(values, PUBLISHED_NCF_SEQUENCE), start=1) if a != b]
    if differ:
        res.details.append(
            "note: published values " + ", ".join(map(str, PUBLISHED_NCF_SEQUENCE))
            + f" differ at q={differ}"
        )
    return res


def check_ncf_placements(max_n: int = 5) -> CheckResult:
    res = CheckResult("ncf-placements", True)
    for n in range(1, max_n + 1):
        for sizes in compositions_with_ncf_tail(n):
            f = generic_ncf(sizes)
            placements = ncf_placements(f)
            results = [apply_placement(f, p) for p in placements]
            ok = (
                len(placements) == count_ncf_extensions_one(sizes) == count_ncf_extensions(sizes, 1)
                and len(set(results)) == len(results)
                and all(is_nested_canalizing(g) and restrict_ncf(g, range(n)) == f for g in results)
            )
            res.passed &= ok
            if not ok:
                res.details.append(f"structure {sizes}: FAILED")
        res.details.append(f"n={n}: all layer structures checked")
    return res


def check_zm_identity() -> CheckResult:
    res = CheckResult("zm-identity", True)
    checked = 0
    for m in range(1, 5):
        for sizes in itertools.product(range(1, 4), repeat=m):
            for z in (2, 3):
                a, b = count_graphical_compositions(sizes, z)
                checked += 1
                if a != b:
                    res.passed = False
                    res.details.append(f"sizes={sizes} z={z}: {a} != {b}")
    res.details.append(f"{checked} size tuples checked")
    return res


def check_graphical_examples() -> CheckResult:
    res = CheckResult("graphical-examples", True)
    F1 = graphical_realize(LabeledMatrix(((1, 1), (1, 0))), "linear", ["x1", "x2"])
    F2 = graphical_realize(LabeledMatrix(((0, 1), (1, 1))), "linear", ["x3", "x4"])
    built = set()
    for entries in itertools.product((0, 1), repeat=4):
        P = LabeledMatrix((entries[:2], entries[2:]))
        if P.is_zero():
            net = compose([F1, F2], [], {}, "graphical", "linear")
        else:
            net = compose([F1, F2], [(0, 1)], {(0, 1): P}, "graphical", "linear")
            if scc_decompose(net).q_graph != frozenset({(0, 1)}):
                res.passed = False
        built.add(net)
    ok = len(built) == 16 == count_graphical_extensions(2, 2, 2)
    res.passed &= ok
    res.details.append(f"linear example: {len(built)} distinct extensions")
    ok = count_graphical_extensions(2, 2, 3) == 81
    res.passed &= ok
    res.details.append(f"ternary blocks: {count_graphical_extensions(2, 2, 3)}")
    return res


def check_network_counts() -> CheckResult:
    res = CheckResult("network-counts", True)
    x = BooleanFunction.variable(0, 1)
    G = BooleanNetwork((Node("x", ("x",), x),))
    # brute force: every function of (x, y) plus the unchanged coordinate
    general = 1 + sum(
        1 for g in all_functions(2) if any(g.cofactor(1, c) == x for c in (0, 1))
    )
    ncf = 1 + sum(
        1 for g in all_functions(2) if is_nested_canalizing(g) and restrict_ncf(g, [0]) == x
    )
    for mode, brute in (("general", general), ("ncf", ncf)):
        formula = count_network_extensions(1, G, mode)
        ok = formula == brute
        res.passed &= ok
        res.details.append(f"{mode}: formula {formula}, brute force {brute}")
    return res


CHECKS = {
    "general-counts": check_general_counts,
    "ncf-sequence": check_ncf_sequence,
    "ncf-placements": check_ncf_placements,
    "zm-identity": check_zm_identity,
    "graphical-examples": check_graphical_examples,
    "network-counts": check_network_counts,
}


def run_suite(only=None, fault: bool = False) -> list:
    names = list(CHECKS) if not only else list(only)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks {unknown}; available: {sorted(CHECKS)}")
    results = []
    for name in names:
        if name == "general-counts":
            results.append(check_general_counts(fault))
        else:
            results.append(CHECKS[name]())
    return results
