import math

import numpy as np
import pytest

from pidirr.distributions import JointDistribution
from pidirr.parts import PartFamily, PartSpec, almost_pairs, almosts
from pidirr.union_info import (
    MarginalPolytope,
    MeasureKind,
    UnionMeasure,
    brute_force_union_oracle,
    check_axioms,
    part_mutual_information,
    union_information,
    union_information_uncached,
    whole_mutual_information,
)

from conftest import make_random

MINSYN = UnionMeasure()
MAXMI = UnionMeasure(kind=MeasureKind.MAX_SINGLE_MI)


def singletons(n):
    return PartFamily(tuple(PartSpec((i,)) for i in range(n)))


def test_measure_validation():
    with pytest.raises(ValueError):
        UnionMeasure(tolerance=0.0)
    with pytest.raises(ValueError):
        UnionMeasure(restarts=0)
    with pytest.raises(ValueError):
        UnionMeasure(max_iterations=0)
    assert MeasureKind.from_name("MinSynergy") is MeasureKind.MIN_SYNERGY
    assert MeasureKind.from_name("maxmi") is MeasureKind.MAX_SINGLE_MI
    with pytest.raises(ValueError):
        MeasureKind.from_name("imin")


def test_xor_separate_elements_convey_nothing(xor):
    assert union_information(MINSYN, xor, singletons(2)) <= 1e-9


def test_whole_as_single_part_is_whole_mi(xor_unique):
    fam = PartFamily((PartSpec((0, 1, 2)),))
    v = union_information(MINSYN, xor_unique, fam)
    assert math.isclose(v, whole_mutual_information(xor_unique), abs_tol=1e-9)
    v2 = union_information(MAXMI, xor_unique, fam)
    assert math.isclose(v2, whole_mutual_information(xor_unique), abs_tol=1e-12)


def test_xor_unique_bipartition_accounts_for_everything(xor_unique):
    fam = PartFamily((PartSpec((0, 1)), PartSpec((2,))))
    assert math.isclose(union_information(MINSYN, xor_unique, fam), 2.0, abs_tol=1e-7)


def test_double_xor_pair_accounts_for_everything(double_xor):
    fam = PartFamily((PartSpec((0, 1)), PartSpec((1, 2))))
    assert math.isclose(union_information(MINSYN, double_xor, fam), 2.0, abs_tol=1e-7)


def test_parity_almosts_convey_nothing(parity):
    fam = PartFamily(tuple(almosts(3)))
    assert union_information(MINSYN, parity, fam) <= 1e-9


def test_maxmi_on_xor_unique_bipartition(xor_unique):
    fam = PartFamily((PartSpec((0, 1)), PartSpec((2,))))
    assert math.isclose(union_information(MAXMI, xor_unique, fam), 1.0, abs_tol=1e-12)


def test_retargeting_by_name(xor):
    # Using X1 as the target of the XOR table: X2 and Y jointly determine it.
    v = union_information(MINSYN, xor, singletons(2), target="X1")
    assert v <= 1e-9


def test_value_between_bounds_on_randoms():
    for seed in range(8):
        d = make_random(seed, n_predictors=3)
        fam = singletons(3)
        v = union_information(MINSYN, d, fam)
        lb = max(part_mutual_information(d, p) for p in fam.parts)
        ub = whole_mutual_information(d)
        assert lb - 1e-6 <= v <= ub + 1e-6


def test_adding_parts_never_decreases_value():
    for seed in range(6):
        d = make_random(seed + 50, n_predictors=3)
        base = singletons(3)
        grown = PartFamily(base.parts + (PartSpec((0, 1)),))
        v0 = union_information(MINSYN, d, base)
        v1 = union_information(MINSYN, d, grown)
        assert v1 >= v0 - 1e-6


def test_determinism_bit_identical():
    d = make_random(7, n_predictors=3)
    fam = almost_pairs(3)[0]
    a = union_information_uncached(MINSYN, d, fam)
    b = union_information_uncached(MINSYN, d, fam)
    assert a == b
    other_seed = UnionMeasure(seed=123)
    c = union_information_uncached(other_seed, d, fam)
    d2 = union_information_uncached(other_seed, d, fam)
    assert c == d2


def test_polytope_base_is_feasible(triple_xor):
    poly = MarginalPolytope(triple_xor, tuple(almosts(3)))
    assert poly.residual(poly.x0) <= 1e-12
    assert len(poly.cells) == 64  # three pinned target bits leave one y per x
    assert poly.upper_bound >= poly.lower_bound


def test_polytope_rejects_empty_parts(xor):
    with pytest.raises(ValueError):
        MarginalPolytope(xor, ())


def test_oracle_matches_on_known_cases(xor, double_xor):
    v = brute_force_union_oracle(xor, singletons(2))
    assert abs(v - 0.0) <= 1e-4
    fam = PartFamily((PartSpec((0, 1)), PartSpec((1, 2))))
    assert abs(brute_force_union_oracle(double_xor, fam) - 2.0) <= 1e-4
    whole = PartFamily((PartSpec((0, 1, 2)),))
    assert abs(
        brute_force_union_oracle(double_xor, whole)
        - whole_mutual_information(double_xor)
    ) <= 1e-9


def test_oracle_guard_rejects_large_support():
    rng = np.random.default_rng(0)
    big = make_random(3, n_predictors=3, alphabet_size=3)  # 81 outcomes
    assert len(big.pmf) > 64
    with pytest.raises(ValueError):
        brute_force_union_oracle(big, singletons(3))


def test_oracle_agreement_spot_checks():
    for seed in (11, 21, 31):
        d = make_random(seed, n_predictors=2)
        fam = singletons(2)
        v = union_information(MINSYN, d, fam)
        o = brute_force_union_oracle(d, fam, seed=seed)
        assert abs(v - o) <= 1e-4


@pytest.mark.parametrize("measure", [MINSYN, MAXMI], ids=["minsyn", "maxmi"])
def test_axioms_pass_on_small_suite(measure, xor, xor_unique):
    suite = [
        (xor, singletons(2)),
        (xor_unique, singletons(3)),
        (xor_unique, PartFamily((PartSpec((0, 1)), PartSpec((2,))))),
        (make_random(5, n_predictors=3), singletons(3)),
    ]
    report = check_axioms(measure, suite)
    assert set(report.results) == {"GP", "Eq", "M0", "S0", "SR", "UB"}
    for axiom, result in report.results.items():
        assert result.passed(measure.tolerance), (
            f"{axiom} violated by {result.worst_violation} in {result.worst_case}"
        )
    assert report.all_passed
    payload = report.to_dict()
    assert payload["all_passed"] is True
    assert payload["axioms"]["SR"]["cases"] >= 4


def test_constant_target_gives_zero(xor_unique):
    const = xor_unique.with_constant_target()
    assert union_information(MINSYN, const, singletons(3)) == 0.0
    assert union_information(MAXMI, const, singletons(3)) == 0.0


def test_family_accepts_iterable(xor):
    v = union_information(MINSYN, xor, [PartSpec((0,)), PartSpec((1,))])
    assert v <= 1e-9
