import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ccsjam.channel import (
    HPGP_BAND,
    TARGETED_THRESHOLD_W,
    ChannelEnvironment,
    ChannelError,
    FieldRegion,
    FrequencyBand,
    InterferenceKind,
    band_power_envelope,
    disruption_threshold,
    effective_radius,
    far_field_boundary,
    field_region,
    friis_received_power,
    interference_at_distance,
    link_disrupted,
    reactive_boundary,
    received_interference,
    required_tx_power,
    wavelength,
)
from ccsjam.presets import get_environment
from ccsjam.scenario import AttackerConfig

C = 299_792_458.0
LAB = get_environment("lab")

freqs = st.floats(min_value=2e6, max_value=28e6)
dists = st.floats(min_value=0.05, max_value=500.0)
powers = st.floats(min_value=1e-6, max_value=100.0)


def friis_oracle(pt, f, d, gt=1.0, gr=1.0):
    # written out longhand, independent of the library
    lam = C / f
    return pt * gt * gr * lam * lam / (16 * math.pi ** 2 * d * d)


# -- wavelength / friis -----------------------------------------------------

def test_wavelength_definition_of_c():
    assert wavelength(299.792458e6) == pytest.approx(1.0, rel=1e-15)


@pytest.mark.parametrize("f, lam", [(28e6, 10.707), (2e6, 149.896)])
def test_wavelength_hand_values(f, lam):
    assert wavelength(f) == pytest.approx(lam, abs=5e-4)


@pytest.mark.parametrize("f", [0.0, -1.0])
def test_wavelength_rejects_non_positive(f):
    with pytest.raises(ChannelError):
        wavelength(f)


def test_friis_example_at_top_of_band():
    b = friis_received_power(1.0, 1.0, 1.0, 28e6, 10.707)
    # lambda ~= d here, so Pr ~= (1/4pi)^2
    assert b.received_power == pytest.approx(6.33e-3, rel=2e-3)
    assert b.received_power == pytest.approx(friis_oracle(1.0, 28e6, 10.707), rel=1e-12)
    assert b.region is FieldRegion.FAR


def test_friis_unity_path_loss_point():
    d = wavelength(28e6) / (4 * math.pi)
    assert friis_received_power(3.0, 1, 1, 28e6, d).received_power == pytest.approx(3.0, rel=1e-12)


def test_friis_zero_distance_is_a_domain_error():
    with pytest.raises(ChannelError):
        friis_received_power(1.0, 1.0, 1.0, 28e6, 0.0)


def test_link_budget_path_loss_db():
    b = friis_received_power(1.0, 1.0, 1.0, 28e6, 10.0)
    assert b.path_loss_db == pytest.approx(-10 * math.log10(friis_oracle(1, 28e6, 10)))


@given(pt=powers, f=freqs, d=dists)
def test_friis_matches_oracle(pt, f, d):
    got = friis_received_power(pt, 1.0, 1.0, f, d).received_power
    assert got == pytest.approx(friis_oracle(pt, f, d), rel=1e-12)


@given(pt=powers, f=freqs, d=dists)
def test_friis_inverse_square(pt, f, d):
    p1 = friis_received_power(pt, 1, 1, f, d).received_power
    p2 = friis_received_power(pt, 1, 1, f, 2 * d).received_power
    assert abs(p2 - p1 / 4) <= 1e-12 * (p1 / 4)


@given(pt=powers, f=freqs, d=dists, k=st.floats(min_value=1.01, max_value=10.0))
def test_friis_strictly_decreasing_and_proportional(pt, f, d, k):
    near = friis_received_power(pt, 1, 1, f, d).received_power
    far = friis_received_power(pt, 1, 1, f, d * k).received_power
    assert far < near
    assert friis_received_power(pt * k, 1, 1, f, d).received_power == pytest.approx(k * near, rel=1e-12)
    assert friis_received_power(pt, k, 1, f, d).received_power == pytest.approx(k * near, rel=1e-12)
    assert friis_received_power(pt, 1, k, f, d).received_power == pytest.approx(k * near, rel=1e-12)


# -- field regions ------------------------------------------------------------

@pytest.mark.parametrize("d, region", [
    (12.0, FieldRegion.FAR),
    (1.0, FieldRegion.REACTIVE_NEAR),
    (5.0, FieldRegion.RADIATIVE_NEAR),
])
def test_field_region_examples(d, region):
    assert field_region(28e6, d) is region


def test_field_region_boundaries_are_half_open():
    lam = wavelength(28e6)
    assert field_region(28e6, lam) is FieldRegion.FAR
    assert field_region(28e6, math.nextafter(lam, 0)) is FieldRegion.RADIATIVE_NEAR
    assert field_region(28e6, lam / (2 * math.pi)) is FieldRegion.RADIATIVE_NEAR
    assert far_field_boundary(28e6) == pytest.approx(10.707, abs=1e-3)


@given(f=st.floats(min_value=1e3, max_value=1e10))
def test_region_boundaries_ordered(f):
    assert reactive_boundary(f) < far_field_boundary(f)


# -- band envelope ------------------------------------------------------------

def test_default_band_is_exact():
    assert (HPGP_BAND.low, HPGP_BAND.high) == (2e6, 28e6)
    with pytest.raises(ChannelError):
        FrequencyBand(28e6, 2e6)


@given(pt=powers, d=dists)
def test_envelope_ratio_is_frequency_ratio_squared(pt, d):
    lo, hi = band_power_envelope(pt, 1, 1, d)
    assert hi / lo == pytest.approx(196.0, rel=1e-12)


def test_envelope_examples():
    lo, _ = band_power_envelope(1.0, 1, 1, 10.707)
    assert lo == pytest.approx(friis_received_power(1, 1, 1, 28e6, 10.707).received_power, rel=1e-15)
    lo2, hi2 = band_power_envelope(1.0, 1, 1, 2 * 10.707)
    _, hi = band_power_envelope(1.0, 1, 1, 10.707)
    assert lo2 == pytest.approx(lo / 4, rel=1e-12)
    assert hi2 == pytest.approx(hi / 4, rel=1e-12)


# -- environment and interference --------------------------------------------

def test_environment_invariants():
    with pytest.raises(ChannelError):
        ChannelEnvironment(coupling_gain_db=0.5)
    with pytest.raises(ChannelError):
        ChannelEnvironment(obstacle_attenuation_db=-1)
    with pytest.raises(ChannelError):
        ChannelEnvironment(barrage_factor_db=20)


def test_interference_kind_parse():
    assert InterferenceKind.parse("Targeted") is InterferenceKind.TARGETED
    assert InterferenceKind.parse("BarrageNoise") is InterferenceKind.BARRAGE_NOISE
    assert InterferenceKind.parse("barrage-noise") is InterferenceKind.BARRAGE_NOISE
    assert InterferenceKind.parse("barrage") is InterferenceKind.BARRAGE_NOISE
    with pytest.raises(ValueError):
        InterferenceKind.parse("sweep")


def _attacker(p, x=0.0, y=0.0):
    return AttackerConfig.fixed((x, y), p)


def test_identity_scaling_equals_raw_friis():
    got = received_interference(_attacker(0.5), (3.0, 4.0), ChannelEnvironment())
    assert got == pytest.approx(friis_oracle(0.5, 28e6, 5.0), rel=1e-12)


def test_ten_db_obstacle_divides_by_ten():
    base = received_interference(_attacker(0.5), (3.0, 4.0), LAB)
    walled = received_interference(_attacker(0.5), (3.0, 4.0), LAB.with_extra_attenuation(10))
    assert walled == pytest.approx(base / 10, rel=1e-12)


def test_frequency_override():
    got = received_interference(_attacker(1.0), (10.0, 0.0), ChannelEnvironment(), frequency=2e6)
    assert got == pytest.approx(friis_oracle(1.0, 2e6, 10.0), rel=1e-12)


def test_coincident_positions_rejected():
    with pytest.raises(ChannelError):
        received_interference(_attacker(1.0), (0.0, 0.0), LAB)


def test_lab_reference_point_hits_threshold_exactly():
    p = received_interference(_attacker(0.01), (10.0, 0.0), LAB)
    assert p == TARGETED_THRESHOLD_W
    assert link_disrupted(p, InterferenceKind.TARGETED)


# -- threshold model ----------------------------------------------------------

def test_threshold_boundary_inclusive():
    t = disruption_threshold(InterferenceKind.TARGETED)
    assert link_disrupted(t, InterferenceKind.TARGETED)
    assert not link_disrupted(math.nextafter(t, 0), InterferenceKind.TARGETED)


def test_negative_interference_rejected():
    with pytest.raises(ChannelError):
        link_disrupted(-1e-9, InterferenceKind.TARGETED)


def test_barrage_twenty_watts_at_one_metre_has_no_effect():
    p = interference_at_distance(20.0, 1.0, LAB)
    assert not link_disrupted(p, InterferenceKind.BARRAGE_NOISE, LAB.barrage_factor_db)


def test_targeted_one_watt_at_one_metre_disrupts():
    p = interference_at_distance(1.0, 1.0, LAB)
    # 100x the 10 mW @ 10 m point from 10x closer: 40 dB above threshold
    assert p / TARGETED_THRESHOLD_W == pytest.approx(1e4, rel=1e-9)
    assert link_disrupted(p, InterferenceKind.TARGETED)


def test_barrage_factor_floor_is_thirty_db():
    t = disruption_threshold(InterferenceKind.TARGETED)
    assert disruption_threshold(InterferenceKind.BARRAGE_NOISE, 30.0) == pytest.approx(1000 * t)


# -- required power / effective radius ----------------------------------------

@pytest.mark.parametrize("name, d, watts", [
    ("lab", 10.0, 0.01),
    ("through-floor", 6.0, 0.1),
    ("urban-intersection", 47.0, 0.7),
    ("favorable-parking", 1.5, 0.3e-3),
    ("open-parking", 10.0, 0.6),
])
def test_required_power_pins(name, d, watts):
    assert required_tx_power(d, get_environment(name)) == pytest.approx(watts, rel=0.1)


def test_lab_pin_is_exact():
    assert required_tx_power(10.0, LAB) == 0.01
    assert effective_radius(0.01, LAB) == 10.0


envs = st.builds(
    ChannelEnvironment,
    coupling_gain_db=st.floats(min_value=-30, max_value=0),
    obstacle_attenuation_db=st.floats(min_value=0, max_value=40),
    barrage_factor_db=st.floats(min_value=30, max_value=80),
)


@given(env=envs, d=dists, k=st.floats(min_value=1.0, max_value=10.0))
def test_required_power_monotone_in_distance(env, d, k):
    assert required_tx_power(d * k, env) >= required_tx_power(d, env)


@given(env=envs, d=dists, extra=st.floats(min_value=0, max_value=30))
def test_required_power_monotone_in_obstacle(env, d, extra):
    assert required_tx_power(d, env.with_extra_attenuation(extra)) >= required_tx_power(d, env)


@given(env=envs, d=dists)
def test_barrage_ratio_equals_factor(env, d):
    r = required_tx_power(d, env, InterferenceKind.BARRAGE_NOISE) / required_tx_power(d, env)
    assert r == pytest.approx(10 ** (env.barrage_factor_db / 10), rel=1e-12)


def test_default_barrage_ratio():
    r = required_tx_power(3.0, LAB, InterferenceKind.BARRAGE_NOISE) / required_tx_power(3.0, LAB)
    assert r == pytest.approx(1e6, rel=1e-12)


@given(env=envs, d=dists, kind=st.sampled_from(list(InterferenceKind)))
def test_required_power_round_trip(env, d, kind):
    p = required_tx_power(d, env, kind)
    thr = lambda w: link_disrupted(interference_at_distance(w, d, env), kind, env.barrage_factor_db)
    assert thr(p)
    assert not thr(0.99 * p)
    assert not thr(math.nextafter(p, 0))


@given(env=envs, p=powers)
@settings(max_examples=50)
def test_effective_radius_is_inverse(env, p):
    r = effective_radius(p, env)
    assert required_tx_power(r, env) <= p
    assert required_tx_power(math.nextafter(r, math.inf), env) > p


@given(env=envs, p=powers)
def test_effective_radius_monotone(env, p):
    assert effective_radius(2 * p, env) >= effective_radius(p, env)


def test_effective_radius_of_required_power():
    p = required_tx_power(10.0, LAB)
    assert effective_radius(p, LAB) == pytest.approx(10.0, rel=1e-12)
    assert effective_radius(0.0, LAB) == 0.0
