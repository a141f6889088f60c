import pytest

from boolmod import (
    BooleanFunction,
    NcfPlacement,
    Restriction,
    apply_placement,
    count_extensions_general,
    count_function_ncf_extensions,
    count_ncf_extensions,
    count_ncf_extensions_one,
    enumerate_extensions_brute,
    is_extension,
    is_nested_canalizing,
    ncf_placements,
    restrict,
    restrict_ncf,
    stratify,
)
from boolmod.errors import (
    ArityError,
    NotNestedCanalizingError,
    PartitionError,
    PlacementError,
    ResourceError,
)
from boolmod.verify import all_functions, generic_ncf

F = BooleanFunction.from_callable
AND2 = BooleanFunction.from_bits("0001")

# NCF with layer structure (2,1,2), variables x1..x5 at indices 0..4
F212 = F(5, lambda x1, x2, x3, x4, x5: (x1 * (x2 + 1) * (x3 * ((x4 + 1) * x5 + 1) + 1) + 1) % 2)


def structure(f):
    return tuple(stratify(f).layer_structure)


# -- restriction ------------------------------------------------------------------


def test_restrict_mux():
    f = F(3, lambda x1, x2, x3: (x1 & x2) | ((1 - x1) & x3))
    assert restrict(f, Restriction((1, 2), {0: 1})) == F(2, lambda x2, x3: x2)
    assert restrict(f, Restriction((1, 2), {0: 0})) == F(2, lambda x2, x3: x3)


def test_restrict_xor_zero():
    f = F(2, lambda a, b: a ^ b)
    assert restrict(f, Restriction((0,), {1: 0})) == BooleanFunction.variable(0, 1)


def test_restrict_bad_partition():
    with pytest.raises(PartitionError):
        restrict(AND2, Restriction((0,), {}))
    with pytest.raises(PartitionError):
        Restriction((0,), {0: 1})


def test_restrict_ncf_example_cases():
    case1 = F(4, lambda x1, x3, x4, x5: (x1 * (x3 * ((x4 + 1) * x5 + 1) + 1) + 1) % 2)
    case2 = F(4, lambda x1, x2, x4, x5: (x1 * (x2 + 1) * (x4 + 1) * x5 + 1) % 2)
    case3 = F(4, lambda x1, x2, x3, x4: (x1 * (x2 + 1) * (x3 * x4 + 1) + 1) % 2)
    r1 = restrict_ncf(F212, [0, 2, 3, 4])
    r2 = restrict_ncf(F212, [0, 1, 3, 4])
    r3 = restrict_ncf(F212, [0, 1, 2, 3])
    assert (r1, r2, r3) == (case1, case2, case3)
    assert [structure(r) for r in (r1, r2, r3)] == [(1, 1, 2), (4,), (2, 2)]


def test_restrict_ncf_rejects_non_ncf():
    with pytest.raises(NotNestedCanalizingError):
        restrict_ncf(F(2, lambda a, b: a ^ b), [0])


def test_restrict_ncf_single_variable_to_constant():
    assert restrict_ncf(BooleanFunction.variable(0, 1), []) == BooleanFunction.constant(1)


def test_is_extension_examples():
    f = F(2, lambda a, b: a ^ b)
    assert is_extension(F(3, lambda a, b, y: (a ^ b) & y), f, [2])
    assert is_extension(F(3, lambda a, b, y: a ^ (b & y)), f, [2])
    assert not is_extension(F(3, lambda a, b, y: (a & y) ^ (b | y)), f, [2])
    with pytest.raises(ArityError):
        is_extension(f, f, [0])


# -- general counts -----------------------------------------------------------------


@pytest.mark.parametrize("n,q,expected", [(1, 1, 7), (2, 1, 31), (2, 2, 14911), (0, 0, 1), (3, 0, 1)])
def test_count_extensions_general(n, q, expected):
    assert count_extensions_general(n, q) == expected


@pytest.mark.parametrize("f", [
    BooleanFunction.variable(0, 1),
    BooleanFunction.constant(1, 1),
    AND2,
])
def test_brute_force_is_function_independent(f):
    assert len(enumerate_extensions_brute(f, 1)) == count_extensions_general(f.arity, 1)


def test_brute_force_lists_only_extensions():
    for g in enumerate_extensions_brute(AND2, 1):
        assert is_extension(g, AND2, [2])


def test_brute_force_guard():
    with pytest.raises(ResourceError):
        enumerate_extensions_brute(AND2, 3)


def test_closed_form_single_variable():
    for n in range(6):
        assert count_extensions_general(n, 1) == 2 ** (2 ** n + 1) - 1


# -- NCF placements -------------------------------------------------------------------


def test_placement_counts():
    assert len(ncf_placements(AND2)) == 8
    assert len(ncf_placements(F212)) == 16
    assert len(ncf_placements(BooleanFunction.variable(0, 1))) == 4


def test_placements_of_identity_match_brute_force():
    x = BooleanFunction.variable(0, 1)
    brute = {g for g in all_functions(2) if is_nested_canalizing(g) and restrict_ncf(g, [0]) == x}
    assert {apply_placement(x, p) for p in ncf_placements(x)} == brute


def test_placements_of_and_match_brute_force():
    brute = {g for g in all_functions(3) if is_nested_canalizing(g) and restrict_ncf(g, [0, 1]) == AND2}
    assert {apply_placement(AND2, p) for p in ncf_placements(AND2)} == brute


def test_placements_reject_non_ncf():
    with pytest.raises(NotNestedCanalizingError):
        ncf_placements(F(2, lambda a, b: a ^ b))


def test_apply_placement_shapes():
    g = apply_placement(AND2, NcfPlacement("initial", 0))
    assert structure(g) == (1, 2)
    assert restrict_ncf(g, [0, 1]) == AND2
    assert structure(apply_placement(AND2, NcfPlacement("add", 0, 1))) == (3,)
    assert structure(apply_placement(AND2, NcfPlacement("split", 0, 1, {0}))) == (1, 2)


def test_placement_validation():
    with pytest.raises(PlacementError):
        NcfPlacement("initial", 0, layer=1)
    with pytest.raises(PlacementError):
        NcfPlacement("split", 0, 1)
    with pytest.raises(PlacementError):
        NcfPlacement("move", 0)
    with pytest.raises(PlacementError):
        apply_placement(AND2, NcfPlacement("add", 0, 3))


def test_placement_spec_text():
    p = NcfPlacement("split", 1, 2, {0, 3})
    assert p.spec(["a", "b", "c", "d"]) == "split:layer=2,demote=a+d,input=1"
    assert NcfPlacement("initial", 0).spec() == "initial:input=0"


# -- NCF counts -------------------------------------------------------------------------


@pytest.mark.parametrize("sizes,expected", [((2,), 8), ((1, 1, 2), 12), ((1,), 4), ((2, 1, 2), 16)])
def test_count_one(sizes, expected):
    assert count_ncf_extensions_one(sizes) == expected
    assert count_ncf_extensions(sizes, 1) == expected


def test_count_zero_q():
    assert count_ncf_extensions((2,), 0) == 1


def test_count_dp_matches_truth_table_scan():
    # every NCF on 4 inputs whose last-first natural restriction gives AND
    brute = 0
    for g in all_functions(4):
        if is_nested_canalizing(g):
            h = restrict_ncf(restrict_ncf(g, range(3)), range(2))
            brute += h == AND2
    assert brute == count_ncf_extensions((2,), 2) == 92


def test_count_by_function():
    f = generic_ncf((1, 1, 2))
    assert count_function_ncf_extensions(f, 1) == 12


def test_rejects_non_ncf_structure():
    with pytest.raises(ValueError):
        count_ncf_extensions((2, 1), 1)


def test_sequence_head_matches_published():
    assert [count_ncf_extensions((2,), q) for q in (1, 2, 3)] == [8, 92, 1328]


def test_sequence_agrees_with_layered_enumeration():
    from boolmod.verify import ncf_extension_count_by_layers

    for q in (3, 4):
        assert count_ncf_extensions((2,), q) == ncf_extension_count_by_layers([{0: 0, 1: 0}], 0, q)


def test_sequence_published_tail():
    assert [count_ncf_extensions((2,), q) for q in (4, 5, 6)] == [23184, 483840, 12050112]
