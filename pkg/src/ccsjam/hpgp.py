"""HomePlug Green PHY link abstraction.

The link is binary by default: either up and carrying the nominal
IPerf-style flow, or disrupted with 100% loss. A linear ramp over a
narrow dB window around the threshold is available for sensitivity
studies.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .channel import HPGP_BAND, FrequencyBand

DEFAULT_CARRIER_COUNT = 917
DEFAULT_CARRIER_SPACING_HZ = 24.414e3

#: Observed testbed ceiling for the UDP flow.
NOMINAL_PPS = 833.0
NOMINAL_THROUGHPUT_BPS = 5e6
PAYLOAD_BYTES = NOMINAL_THROUGHPUT_BPS / (NOMINAL_PPS * 8)  # ~750.3 B

DEFAULT_RAMP_DB = 1.0


class RoboMode(enum.Enum):
    MINI = 3.77e6
    STANDARD = 4.92e6
    HIGH = 9.84e6


DEFAULT_ROBO_MODE = RoboMode.STANDARD


def nominal_throughput(mode: RoboMode = DEFAULT_ROBO_MODE) -> float:
    return mode.value


@dataclass(frozen=True)
class SubcarrierPlan:
    carrier_count: int = DEFAULT_CARRIER_COUNT
    spacing: float = DEFAULT_CARRIER_SPACING_HZ
    band: FrequencyBand = HPGP_BAND

    def __post_init__(self):
        if self.carrier_count < 1 or self.spacing <= 0:
            raise ValueError("carrier_count and spacing must be positive")
        if self.carrier_count * self.spacing > self.band.width:
            raise ValueError(
                f"{self.carrier_count} carriers at {self.spacing} Hz exceed the band width"
            )

    def frequency(self, index: int) -> float:
        return subcarrier_frequency(self, index)

    def frequencies(self) -> list[float]:
        return [self.frequency(i) for i in range(self.carrier_count)]


def subcarrier_frequency(plan: SubcarrierPlan, index: int) -> float:
    if not 0 <= index < plan.carrier_count:
        raise IndexError(f"subcarrier index {index} outside 0..{plan.carrier_count - 1}")
    return plan.band.low + index * plan.spacing


@dataclass(frozen=True)
class TrafficStats:
    offered_pps: float
    delivered_pps: float
    loss_fraction: float
    throughput: float  # bit/s
    connect_failure: bool = False
    dt: float = 1.0

    @property
    def packets_delivered(self) -> float:
        return self.delivered_pps * self.dt


def loss_from_margin(margin_db: float, ramp_db: float | None = None) -> float:
    """Loss fraction for interference ``margin_db`` above the disruption threshold.

    Without a ramp this is the binary model (loss 1 from 0 dB up).
    With ``ramp_db`` loss rises linearly from -ramp_db to +ramp_db.
    """
    if ramp_db is None:
        return 1.0 if margin_db >= 0 else 0.0
    if ramp_db <= 0:
        raise ValueError("ramp_db must be positive")
    return min(1.0, max(0.0, (margin_db + ramp_db) / (2 * ramp_db)))


def traffic_step(
    link_up: bool,
    offered_pps: float,
    dt: float,
    *,
    established: bool = True,
    loss: float | None = None,
) -> TrafficStats:
    """One measurement interval of the UDP flow.

    Offers above the testbed ceiling are clipped to it, as the sender
    cannot push more onto the link. ``established`` says whether the
    flow ever came up; a down link on a never-established flow is
    reported as a connect failure, as is an empty flow. ``loss``
    overrides the binary model (partial degradation).
    """
    if offered_pps < 0:
        raise ValueError("offered_pps must be >= 0")
    if dt <= 0:
        raise ValueError("dt must be positive")

    if offered_pps == 0:
        return TrafficStats(0.0, 0.0, 1.0, 0.0, connect_failure=True, dt=dt)

    offered = min(offered_pps, NOMINAL_PPS)
    if loss is None:
        loss = 0.0 if link_up else 1.0
    if not 0.0 <= loss <= 1.0:
        raise ValueError("loss must lie in [0, 1]")
    delivered = offered * (1.0 - loss)
    return TrafficStats(
        offered_pps=offered,
        delivered_pps=delivered,
        loss_fraction=1.0 - delivered / offered,
        throughput=delivered / NOMINAL_PPS * NOMINAL_THROUGHPUT_BPS,
        connect_failure=(delivered == 0 and not established),
        dt=dt,
    )
