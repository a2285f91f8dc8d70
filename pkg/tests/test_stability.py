import pytest
from hypothesis import given, settings, strategies as st

from hstab.specseq import PRESETS, FloorAffine, NoRangeDerivable, StabilitySpec, stability_range


def test_general_preset():
    R = stability_range(PRESETS["general"])
    assert R.iso_bound.equals_on(FloorAffine(-4, 2))
    assert R.surj_bound.equals_on(FloorAffine(-2, 2))
    assert R.iso_bound.as_threshold() == "g >= 2k + 4"
    assert R.surj_bound.as_threshold() == "g >= 2k + 2"


def test_n3_7_preset():
    R = stability_range(PRESETS["n3_7"])
    assert R.iso_bound.as_threshold() == "g >= 2k + 2"
    assert R.surj_bound.as_threshold() == "g >= 2k"


def test_surjectivity_needs_wider_identification():
    R = stability_range(StabilitySpec(FloorAffine(-3, 2), 5))
    assert R.surj_bound.equals_on(FloorAffine(-4, 2))


def test_trace_starts_vacuously():
    R = stability_range(PRESETS["general"])
    assert any("induction starts vacuously" in line for line in R.trace)
    first = next(line for line in R.trace if "vacuously" in line)
    assert "below 4 (iso)" in first
    assert any(line.startswith("σ_5 iso in degree 0") for line in R.trace)


def test_too_weak_connectivity():
    with pytest.raises(NoRangeDerivable):
        stability_range(StabilitySpec(FloorAffine(-200, 2), 5), gmax=30)


def test_surjective_range_contains_iso_range():
    for spec in PRESETS.values():
        R = stability_range(spec)
        assert R.surj_bound.dominates(R.iso_bound)


@settings(max_examples=25, deadline=None)
@given(st.integers(-6, 0), st.integers(0, 3), st.integers(1, 5))
def test_monotone_in_connectivity(a, extra, s):
    weak = StabilitySpec(FloorAffine(a, 2), s)
    strong = StabilitySpec(FloorAffine(a + extra, 2), s)
    try:
        Rw = stability_range(weak, gmax=30)
    except NoRangeDerivable:
        return
    Rs = stability_range(strong, gmax=30)
    assert Rs.iso_bound.dominates(Rw.iso_bound) and Rs.surj_bound.dominates(Rw.surj_bound)


@given(st.integers(-20, 20), st.integers(1, 6), st.integers(-20, 20), st.integers(1, 6))
def test_dominates_agrees_with_evaluation(a, b, c, d):
    f, g = FloorAffine(a, b), FloorAffine(c, d)
    assert f.dominates(g) == all(f(x) >= g(x) for x in range(0, 400))


def test_floor_affine_text():
    f = FloorAffine(-4, 2)
    assert str(f) == "floor((g - 4)/2)" and f(9) == 2 and f(3) == -1
    assert f.as_degree_bound() == "k <= (g - 4)/2"
    assert FloorAffine(0, 2).as_degree_bound() == "k <= g/2"
    with pytest.raises(ValueError):
        FloorAffine(1, 0)
