import math
from fractions import Fraction

import pytest

from aitlab.enumeration import DyadicMass, EnumParams, enumerate_programs
from aitlab.predictor import (
    NoSupport,
    PredictiveModel,
    extension_mass,
    predict,
    report_csv,
    sequential_report,
)


@pytest.fixture(scope="module")
def model6(table6):
    return PredictiveModel(table6)


def test_extension_mass(model6):
    assert extension_mass(model6, "") == DyadicMass(13, 6)
    assert extension_mass(model6, "0") == DyadicMass(2, 6)
    assert extension_mass(model6, "1") == DyadicMass(0, 6)


def test_predict_root(model6):
    pred = predict(model6, "")
    assert (pred.p0, pred.p1, pred.defect) == (Fraction(2, 13), 0, Fraction(11, 13))
    assert pred.p0 + pred.p1 + pred.defect == 1


def test_no_support(model6):
    with pytest.raises(NoSupport):
        predict(model6, "1")


def test_sequential_report(model6):
    assert sequential_report(model6, "") == []
    (row,) = sequential_report(model6, "0")
    assert row.scored and row.p0 == 2 / 13
    assert row.logloss_cum == pytest.approx(math.log2(13 / 2), abs=1e-12)
    (row,) = sequential_report(model6, "1")
    assert not row.scored and row.p0 is None


def test_scoring_stops_after_first_miss(model6):
    rows = sequential_report(model6, "10")
    assert [r.scored for r in rows] == [False, False]


def test_csv(model6):
    text = report_csv(sequential_report(model6, "0"))
    header, row = text.splitlines()
    assert header == "pos,observed,p0,p1,defect,logloss_cum,scored"
    assert row.startswith("0,0,0.15384615384615385,0.0,0.846153846153846")
    assert row.endswith(",1")


def test_semimeasure_and_monotonicity(table21):
    model = PredictiveModel(table21)
    for z in model.prefixes():
        m = model.extension_numerator(z)
        exact = table21.records[z].mass.numerator if z in table21.records else 0
        assert model.extension_numerator(z + "0") + model.extension_numerator(z + "1") + exact == m
        if z:
            assert model.extension_numerator(z[:-1]) >= m


def test_support_is_never_lost_with_more_resources():
    small = PredictiveModel(enumerate_programs(EnumParams(12, 100)))
    big = PredictiveModel(enumerate_programs(EnumParams(15, 256)))
    for z in small.prefixes():
        assert big.extension_numerator(z) > 0
