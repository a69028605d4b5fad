import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aitlab.enumeration import EnumParams, enumerate_programs, khat
from aitlab.infotheory import (
    InsufficientResources,
    bayes_m_gap,
    chain_gap,
    coding_gap,
    conditional_khat,
    info_report,
    joint_khat,
    mutual_info,
    symmetry_gap,
)

from .conftest import short_strings

SHORT = short_strings(3)


def test_conditional_khat_small(est6):
    assert conditional_khat("", "", est6) == 3
    assert conditional_khat("0", "0", est6) == 6


def test_conditional_empty_is_unconditional(est6, table6):
    for x in ["", "0", "1"]:
        assert conditional_khat(x, "", est6) == khat(table6, x)


def test_conditional_census_matches_direct_enumeration():
    t = enumerate_programs(EnumParams(6, 100, "0"))
    assert dict(t.halting_programs()) == {
        "000": "", "010000": "", "011000": "", "100000": "",
        "001000": "0", "111000": "0",
    }


def test_mutual_info_small(est6):
    assert mutual_info("", "1", est6) == 0
    assert mutual_info("0", "", est6) == 0


def test_mutual_info_absent_names_term(est6):
    with pytest.raises(InsufficientResources, match=r"K\('1'\)"):
        mutual_info("1", "0", est6)


def test_joint_khat(est6, est21):
    assert joint_khat("", "", est6) == khat(est6.table(), "")
    assert joint_khat("", "0", est6) == khat(est6.table(), "0")
    assert joint_khat("1", "", est21) == khat(est21.table(), "11")


def test_chain_gap_small(est6):
    assert chain_gap("", "", est6) == -3
    assert chain_gap("", "0", est6) == -3


def test_coding_gap_small(est6):
    assert coding_gap("", est6) == pytest.approx(math.log2(11) - 3, abs=1e-12)
    assert coding_gap("0", est6) == pytest.approx(1.0, abs=1e-12)


def test_coding_gap_zero_for_single_program():
    est = enumerate_programs(EnumParams(3, 10))
    from aitlab.infotheory import Estimator
    assert coding_gap("", Estimator(EnumParams(3, 10), base=est)) == 0.0


def test_coding_gap_absent(est6):
    with pytest.raises(InsufficientResources):
        coding_gap("1", est6)


def test_bayes_gap_zero_mass_names_term(est6):
    with pytest.raises(InsufficientResources, match=r"m\('1'"):
        bayes_m_gap("1", "", est6)


@pytest.mark.parametrize("x", SHORT)
def test_exact_identities_L21(est21, x):
    assert mutual_info(x, "", est21) == 0
    assert symmetry_gap(x, x, est21) == 0
    assert bayes_m_gap(x, x, est21) == 0
    assert symmetry_gap(x, "", est21) == 0


@pytest.mark.parametrize("x", SHORT)
def test_bayes_gap_against_empty_leaves_empty_output_residual(est21, x):
    # only m(x|ε) = m(x) cancels; m(ε|x) still depends on the tape contents
    residual = est21.mass("").log2() - est21.mass("", x).log2()
    assert bayes_m_gap(x, "", est21) == pytest.approx(residual, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SHORT), st.sampled_from(SHORT))
def test_antisymmetry(est21, x, y):
    assert symmetry_gap(x, y, est21) == -symmetry_gap(y, x, est21)


def test_coding_gap_nonnegative_everywhere(est21):
    for x in est21.table().records:
        assert coding_gap(x, est21) >= 0


def test_regression_anchors_L21(est21):
    # frozen from the first run of the enumeration engine at L=21, T=256
    assert symmetry_gap("0", "1", est21) == -3
    assert bayes_m_gap("0", "1", est21) == pytest.approx(-2.565261981194876, abs=1e-12)
    r = info_report("0", "1", est21)
    assert (r.khat_x, r.khat_y, r.khat_x_given_y, r.khat_y_given_x, r.khat_joint) == (6, 9, 9, 9, 15)
    assert (r.i_y_to_x, r.i_x_to_y, r.chain_gap_xy, r.chain_gap_yx) == (-3, 0, 0, -3)
    assert r.missing() == []


def test_info_report_records_absent(est6):
    r = info_report("1", "0", est6)
    assert r.khat_x is None and r.i_y_to_x is None
    assert "khat_x" in r.missing()
    assert r.params == {"L": 6, "T": 100, "cond": "", "isa": 1}
