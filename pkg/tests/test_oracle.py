import csv
import io
import itertools

import numpy as np
import pytest
from helpers import RAW_SIZES, PUBLISHED_ROW, brute_unit_sum, decode, raw_matrix, raw_ref

from olapreduce.coding import DisjunctiveTable
from olapreduce.errors import OracleError
from olapreduce.metric import DistanceConfig, distance_vector
from olapreduce.model import DimensionSchema, ReductionMask, parse_mask
from olapreduce.oracle import best_mask, calibrate_scale, sweep_all_masks

PUB = DistanceConfig("zero-facts", "fixed", 1.6)


def test_sweep_has_63_entries(cdt):
    sweep = sweep_all_masks(cdt, PUB)
    assert len(sweep) == 63
    assert len(sweep.by_mask()) == 63
    assert "000000" not in sweep.by_mask()


def test_sweep_p1():
    sch = DimensionSchema.from_pairs([("A", ["x", "y"])])
    cdt = DisjunctiveTable(sch, [[1, 0], [0, 1]], [1, 0])
    sweep = sweep_all_masks(cdt)
    assert [str(mk) for mk, _ in sweep.entries] == ["1"]


def test_optimum_not_worse_than_full(cdt):
    sweep = sweep_all_masks(cdt, PUB)
    assert sweep.optimum[1].fitness <= sweep.by_mask()["111111"].fitness


def test_sweep_ceiling(cdt):
    with pytest.raises(OracleError, match="ceiling"):
        sweep_all_masks(cdt, PUB, max_dimensions=5)


def test_sweep_independent_of_threads(cdt):
    assert sweep_all_masks(cdt, PUB).entries == sweep_all_masks(cdt, PUB, workers=8).entries


def test_best_size3_by_brute_force(cdt):
    facts = [decode(r, RAW_SIZES) for r in raw_matrix()]
    ref = decode(raw_ref(), RAW_SIZES)
    best = min(
        min(1.6 * brute_unit_sum(RAW_SIZES, facts, ref, f, keep, "zero-facts") for f in facts)
        for keep in ([int(j in c) for j in range(6)] for c in itertools.combinations(range(6), 3))
    )
    mask, res = best_mask(sweep_all_masks(cdt, PUB), k=3)
    assert mask.popcount == 3
    assert res.fitness == pytest.approx(best, abs=1e-12)
    assert res.fitness <= 3.5734


def test_best_mask_k_equals_p_and_default(cdt):
    sweep = sweep_all_masks(cdt, PUB)
    assert str(best_mask(sweep, 6)[0]) == "111111"
    assert best_mask(sweep) == sweep.optimum
    with pytest.raises(OracleError):
        best_mask(sweep, 7)


def test_tie_break_prefers_fewer_then_lexicographic():
    sch = DimensionSchema.from_pairs([("A", ["x", "y"]), ("B", ["u", "v"])])
    # reference equals the single fact: every mask has fitness 0
    cdt = DisjunctiveTable(sch, [[1, 0, 1, 0], [0, 1, 0, 1]], [1, 0, 1, 0])
    assert str(sweep_all_masks(cdt).optimum[0]) == "01"


def test_calibration_on_published_row(cdt):
    cal = calibrate_scale(cdt, parse_mask("011010", 6), "zero-facts", PUBLISHED_ROW)
    assert cal.lam == pytest.approx(1.600, abs=0.005)
    assert cal.residual < 1e-3


def test_calibration_identity(cdt):
    mask = parse_mask("110101", 6)
    u = distance_vector(cdt, mask, DistanceConfig("remove", "unit"))
    cal = calibrate_scale(cdt, mask, "remove", u)
    assert cal.lam == pytest.approx(1.0, rel=1e-15)
    assert cal.residual == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("lam", [0.01, 1.6, 7.25, 300.0])
def test_calibration_recovers_lambda(cdt, lam):
    mask = parse_mask("101011", 6)
    targets = distance_vector(cdt, mask, DistanceConfig("zero-facts", "fixed", lam))
    cal = calibrate_scale(cdt, mask, "zero-facts", targets)
    assert cal.lam == pytest.approx(lam, rel=1e-12)
    assert cal.residual == pytest.approx(0.0, abs=1e-12 * lam)


def test_remove_variant_cannot_fit_published_row(cdt):
    cal = calibrate_scale(cdt, parse_mask("011010", 6), "remove", PUBLISHED_ROW)
    # least-squares residual computed independently
    u = np.array([brute_unit_sum(RAW_SIZES, [decode(r, RAW_SIZES) for r in raw_matrix()],
                                 decode(raw_ref(), RAW_SIZES), decode(r, RAW_SIZES),
                                 [0, 1, 1, 0, 1, 0], "remove") for r in raw_matrix()])
    t = np.array(PUBLISHED_ROW)
    lam = u @ t / (u @ u)
    assert cal.residual == pytest.approx(np.sqrt(np.mean((lam * u - t) ** 2)), rel=1e-9)
    assert cal.residual > 1.0


def test_calibration_all_zero_rejected():
    sch = DimensionSchema.from_pairs([("A", ["x", "y"])])
    cdt = DisjunctiveTable(sch, [[1, 0]], [1, 0])
    with pytest.raises(OracleError, match="zero"):
        calibrate_scale(cdt, ReductionMask((1,)), "remove", [1.0])
