import pytest
from hypothesis import given
from hypothesis import strategies as st

from ccsjam.channel import FrequencyBand
from ccsjam.hpgp import (
    NOMINAL_PPS,
    PAYLOAD_BYTES,
    RoboMode,
    SubcarrierPlan,
    loss_from_margin,
    nominal_throughput,
    subcarrier_frequency,
    traffic_step,
)


@pytest.mark.parametrize("mode, bps", [
    (RoboMode.STANDARD, 4.92e6),
    (RoboMode.MINI, 3.77e6),
    (RoboMode.HIGH, 9.84e6),
])
def test_robo_throughputs(mode, bps):
    assert nominal_throughput(mode) == bps


def test_default_mode_is_standard():
    assert nominal_throughput() == 4.92e6


def test_default_plan_fits_band():
    plan = SubcarrierPlan()
    assert plan.carrier_count == 917 and plan.spacing == 24.414e3
    assert plan.carrier_count * plan.spacing <= plan.band.width


def test_plan_wider_than_band_rejected():
    with pytest.raises(ValueError):
        SubcarrierPlan(carrier_count=2000)
    with pytest.raises(ValueError):
        SubcarrierPlan(band=FrequencyBand(2e6, 3e6))


@pytest.mark.parametrize("i, f", [(0, 2.0e6), (916, 2e6 + 916 * 24.414e3)])
def test_subcarrier_examples(i, f):
    assert subcarrier_frequency(SubcarrierPlan(), i) == pytest.approx(f, rel=1e-15)


def test_last_subcarrier_hand_value():
    assert subcarrier_frequency(SubcarrierPlan(), 916) == pytest.approx(24.363e6, abs=1e3)


@pytest.mark.parametrize("i", [917, -1])
def test_subcarrier_out_of_range(i):
    with pytest.raises(IndexError):
        subcarrier_frequency(SubcarrierPlan(), i)


def test_subcarriers_increase_within_band():
    plan = SubcarrierPlan()
    fs = plan.frequencies()
    assert all(b > a for a, b in zip(fs, fs[1:]))
    assert plan.band.low <= fs[0] and fs[-1] <= plan.band.high


def test_payload_reproduces_nominal_point():
    assert PAYLOAD_BYTES == pytest.approx(750.3, abs=0.05)
    assert NOMINAL_PPS * PAYLOAD_BYTES * 8 == pytest.approx(5e6, rel=1e-12)


def test_up_link_nominal():
    s = traffic_step(True, 833, 1.0)
    assert s.delivered_pps == 833
    assert s.throughput == pytest.approx(5e6, rel=1e-12)
    assert s.loss_fraction == 0.0
    assert s.packets_delivered == 833


def test_down_link_full_loss():
    s = traffic_step(False, 833, 1.0)
    assert s.loss_fraction == 1.0 and s.delivered_pps == 0
    assert not s.connect_failure
    assert traffic_step(False, 833, 1.0, established=False).connect_failure


def test_empty_flow_convention():
    s = traffic_step(True, 0, 1.0)
    assert s.loss_fraction == 1.0 and s.connect_failure


def test_offer_capped_at_ceiling():
    s = traffic_step(True, 5000, 0.5)
    assert s.offered_pps == 833 and s.loss_fraction == 0.0


def test_invalid_inputs():
    with pytest.raises(ValueError):
        traffic_step(True, -1, 1.0)
    with pytest.raises(ValueError):
        traffic_step(True, 10, 0.0)
    with pytest.raises(ValueError):
        traffic_step(True, 10, 1.0, loss=1.5)


@given(up=st.booleans(), pps=st.floats(min_value=1e-3, max_value=1e4),
       dt=st.floats(min_value=1e-3, max_value=100))
def test_binary_model_invariants(up, pps, dt):
    s = traffic_step(up, pps, dt)
    assert s.delivered_pps <= s.offered_pps
    assert s.loss_fraction in (0.0, 1.0)
    assert s.loss_fraction == pytest.approx(1 - s.delivered_pps / s.offered_pps)


def test_loss_ramp():
    assert loss_from_margin(-0.1) == 0.0 and loss_from_margin(0.0) == 1.0
    assert loss_from_margin(0.0, ramp_db=1.0) == 0.5
    assert loss_from_margin(-1.0, ramp_db=1.0) == 0.0
    assert loss_from_margin(2.0, ramp_db=1.0) == 1.0
    s = traffic_step(True, 800, 1.0, loss=loss_from_margin(0.5, 1.0))
    assert s.loss_fraction == pytest.approx(0.75)
    with pytest.raises(ValueError):
        loss_from_margin(0.0, ramp_db=0)
