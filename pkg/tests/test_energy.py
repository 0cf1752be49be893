"""Energy evaluation, planted spectra, outcome labels, measure bands."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plantbench import (
    DegenerateSpectrumError,
    OutcomeClassifier,
    ValidationError,
    band_label,
    build_couplings,
    catalogue_pattern_set,
    classify_outcome,
    gauge_transform,
    generate_orthogonal_patterns,
    measure_bins,
    mirror,
    planted_spectrum,
    qubo_energy,
    qubo_energy_many,
)
from plantbench.energy import PlantedSpectrum

from conftest import random_symmetric


# ---------------------------------------------------------------------------
# energy evaluation


def test_energy_against_pair_sum():
    j = random_symmetric(6, seed=0)
    rng = np.random.default_rng(1)
    for _ in range(20):
        x = rng.choice([-1, 1], size=6)
        pair_sum = -sum(
            j[i, k] * x[i] * x[k] for i in range(6) for k in range(i + 1, 6)
        )
        assert qubo_energy(j, x) == pytest.approx(pair_sum, rel=1e-12)


def test_energy_many_matches_single():
    j = random_symmetric(10, seed=2)
    states = np.random.default_rng(3).choice([-1, 1], size=(40, 10))
    many = qubo_energy_many(j, states)
    for row, e in zip(states, many):
        assert e == pytest.approx(qubo_energy(j, row), rel=1e-12)


def test_energy_rejects_non_binary_state():
    j = random_symmetric(4, seed=4)
    with pytest.raises(ValidationError):
        qubo_energy(j, np.array([1, 0, 1, -1]))


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**31))
def test_mirror_invariance(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 24))
    j = random_symmetric(n, seed=seed + 1)
    x = rng.choice([-1, 1], size=n)
    assert qubo_energy(j, x) == qubo_energy(j, mirror(x))


# ---------------------------------------------------------------------------
# planted spectrum


def test_closed_form_matches_direct():
    ps = generate_orthogonal_patterns(64, 9, seed=7, dw=0.004)
    inst = build_couplings(ps)
    spec = planted_spectrum(ps, inst, method="closed")
    direct = planted_spectrum(ps, inst, method="direct")
    np.testing.assert_allclose(spec.energies, direct.energies, rtol=1e-9)
    assert spec.ground_index == ps.k - 1  # heaviest pattern sits lowest


def test_closed_form_refuses_perturbed_sets():
    from plantbench import perturb_patterns

    ps = perturb_patterns(catalogue_pattern_set("c"), [(0, 1, -0.5)])
    inst = build_couplings(ps)
    with pytest.raises(ValidationError):
        planted_spectrum(ps, inst, method="closed")


def test_spectrum_detects_foreign_couplings():
    ps = generate_orthogonal_patterns(16, 3, seed=0, dw=0.01)
    other = build_couplings(generate_orthogonal_patterns(16, 3, seed=1, dw=0.01))
    with pytest.raises(ValidationError):
        planted_spectrum(ps, other)


# ---------------------------------------------------------------------------
# outcome labels


@pytest.fixture(scope="module")
def c_classifier():
    ps = catalogue_pattern_set("c")
    inst = build_couplings(ps)
    return ps, inst, OutcomeClassifier(ps, inst.spectrum)


def test_planted_and_mirror_labels(c_classifier):
    ps, inst, clf = c_classifier
    for m in range(ps.k):
        e = float(inst.spectrum.energies[m])
        assert clf.classify(ps.patterns[m], e).short() == f"planted:{m + 1}"
        assert clf.classify(-ps.patterns[m], e).short() == f"mirror:{m + 1}"


def test_mixed_label(c_classifier):
    ps, inst, clf = c_classifier
    mix = np.sign(ps.patterns.astype(np.int64).sum(axis=0)).astype(np.int8)
    e = qubo_energy(inst, mix)
    label = clf.classify(mix, e)
    assert label.category == "mixed"
    assert label.signature == ((1, 1), (2, 1), (3, 1))
    assert label.short() == "mixed:1+2+3"


def test_spurious_and_range_labels(c_classifier):
    ps, inst, clf = c_classifier
    spec = inst.spectrum
    probe = ps.patterns[0].copy()
    probe[5] = -probe[5]  # one flip away: structurally unknown
    e = qubo_energy(inst, probe)
    label = clf.classify(probe, e)
    assert label.category in ("spurious", "below", "above")
    assert label.hamming_to_nearest_planted == 1
    # energies pushed outside the planted range force below/above
    assert clf.classify(probe, spec.e_min - 1.0).category == "below"
    assert clf.classify(probe, spec.e_max + 1.0).category == "above"
    # a structural match keeps its category even when out of range
    out = clf.classify(ps.patterns[0], spec.e_max + 1.0)
    assert out.category == "planted" and out.out_of_range


def test_classifier_precedence_prefers_planted():
    # pattern 2 equals the mirror of pattern 1: its own planted entry
    # must win the table slot over the mirror alias
    from plantbench import make_pattern_set

    ps = make_pattern_set(
        np.array([[1, 1, 1, 1], [-1, -1, -1, -1]]), w0=1.0, dw=0.1
    )
    inst = build_couplings(ps)
    clf = OutcomeClassifier(ps, inst.spectrum)
    label = clf.classify(ps.patterns[1], float(inst.spectrum.energies[1]))
    assert label.short() == "planted:2"


def test_mixed_cap_skips_enumeration():
    ps = generate_orthogonal_patterns(64, 12, seed=1, dw=0.001)
    inst = build_couplings(ps)
    clf = OutcomeClassifier(ps, inst.spectrum, mixed_order=11, mixed_cap=10)
    assert clf.mixed_skipped
    mix = np.sign(ps.patterns[:3].astype(np.int64).sum(axis=0)).astype(np.int8)
    label = clf.classify(mix, qubo_energy(inst, mix))
    assert label.category in ("spurious", "below", "above")


def test_classify_outcome_one_off(c_classifier):
    ps, inst, _ = c_classifier
    label = classify_outcome(
        ps, inst.spectrum, ps.patterns[2], float(inst.spectrum.energies[2])
    )
    assert label.short() == "planted:3"


# ---------------------------------------------------------------------------
# measure bands


def unit_spectrum():
    return PlantedSpectrum(energies=np.array([0.0, 1.0]), e_min=0.0, e_max=1.0)


def test_measure_bins_band_assignment():
    spec = unit_spectrum()
    energies = [0.0, 0.05, 0.08, 0.2, 0.4, 0.7, 0.9, 1.0, -0.5, 1.5]
    counts = measure_bins(spec, np.array(energies))
    assert counts == {
        "1/16": 2,   # 0.0 and 0.05
        "1/8": 1,    # 0.08
        "1/4": 1,    # 0.2
        "1/2": 1,    # 0.4
        "3/4": 1,    # 0.7
        "1": 2,      # 0.9 and the closed edge 1.0
        "below": 1,
        "above": 1,
    }


def test_measure_bins_edges_are_tolerance_closed():
    spec = unit_spectrum()
    eps = 1e-13
    counts = measure_bins(spec, np.array([-eps, 1.0 + eps]))
    assert counts["below"] == 0 and counts["above"] == 0
    assert counts["1/16"] == 1 and counts["1"] == 1


def test_measure_bins_rejects_bad_fractions():
    spec = unit_spectrum()
    with pytest.raises(ValidationError):
        measure_bins(spec, np.array([0.5]), fractions=(0.5, 0.25, 1.0))
    with pytest.raises(ValidationError):
        measure_bins(spec, np.array([0.5]), fractions=(0.25, 0.5))


def test_measure_bins_degenerate_span_raises():
    spec = PlantedSpectrum(energies=np.array([2.0]), e_min=2.0, e_max=2.0)
    with pytest.raises(DegenerateSpectrumError):
        measure_bins(spec, np.array([2.0]))


def test_band_label_formatting():
    assert band_label(1 / 16) == "1/16"
    assert band_label(0.75) == "3/4"
    assert band_label(1.0) == "1"


# ---------------------------------------------------------------------------
# gauge transform


def test_gauge_transform_preserves_full_spectrum():
    from plantbench import brute_force

    ps = generate_orthogonal_patterns(8, 3, seed=5, dw=0.1)
    inst = build_couplings(ps)
    flipped = gauge_transform(inst, [0, 3, 4])
    base = brute_force(inst, full_spectrum=True).energy_multiset
    moved = brute_force(flipped, full_spectrum=True).energy_multiset
    np.testing.assert_array_equal(base, moved)


def test_gauge_transform_moves_patterns_consistently():
    ps = catalogue_pattern_set("b")
    inst = build_couplings(ps)
    flipped = gauge_transform(inst, [1, 2])
    fps = flipped.pattern_set
    for m in range(ps.k):
        assert qubo_energy(flipped, fps.patterns[m]) == pytest.approx(
            float(inst.spectrum.energies[m]), rel=1e-12
        )


def test_gauge_transform_rejects_out_of_range_site():
    inst = build_couplings(catalogue_pattern_set("a"))
    with pytest.raises(ValidationError):
        gauge_transform(inst, [8])
