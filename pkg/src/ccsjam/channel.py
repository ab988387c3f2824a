"""RF propagation and the interference-threshold model.

Received interference is a free-space (Friis) estimate scaled by an
environment's coupling gain onto the CP/PE pair and any obstacle loss.
A link is disrupted once that received power reaches a per-kind
threshold. The targeted threshold is pinned so that the lab environment
needs exactly 10 mW at 10 m; barrage noise sits a configurable number
of dB above it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

SPEED_OF_LIGHT = 299_792_458.0  # m/s

BAND_LOW_HZ = 2e6
BAND_HIGH_HZ = 28e6

#: Disruption is evaluated at the top of the band unless told otherwise.
DEFAULT_FREQUENCY_HZ = BAND_HIGH_HZ

#: Reference operating point defining the targeted threshold (lab bench).
REFERENCE_DISTANCE_M = 10.0
REFERENCE_TX_POWER_W = 10e-3

#: Barrage noise threshold above the targeted one. The 20 W / 1 m
#: no-effect observation bounds this from below at ~53 dB in the
#: calibrated lab channel, so 30 dB is not enough to reproduce it.
DEFAULT_BARRAGE_FACTOR_DB = 60.0
MIN_BARRAGE_FACTOR_DB = 30.0


class ChannelError(ValueError):
    """Raised for physically meaningless channel inputs."""


@dataclass(frozen=True)
class FrequencyBand:
    low: float = BAND_LOW_HZ
    high: float = BAND_HIGH_HZ

    def __post_init__(self):
        if not 0 < self.low < self.high:
            raise ChannelError(f"invalid band {self.low}..{self.high} Hz")

    @property
    def width(self) -> float:
        return self.high - self.low


HPGP_BAND = FrequencyBand()


class FieldRegion(enum.Enum):
    REACTIVE_NEAR = "reactive_near"
    RADIATIVE_NEAR = "radiative_near"
    FAR = "far"


class InterferenceKind(enum.Enum):
    TARGETED = "targeted"
    BARRAGE_NOISE = "barrage_noise"

    @classmethod
    def parse(cls, text: str) -> "InterferenceKind":
        key = text.strip().lower().replace("-", "_")
        aliases = {"barrage": "barrage_noise", "barragenoise": "barrage_noise", "noise": "barrage_noise"}
        return cls(aliases.get(key, key))


@dataclass(frozen=True)
class LinkBudget:
    tx_power: float
    tx_gain: float
    rx_gain: float
    frequency: float
    distance: float
    received_power: float

    @property
    def wavelength(self) -> float:
        return wavelength(self.frequency)

    @property
    def region(self) -> FieldRegion:
        return field_region(self.frequency, self.distance)

    @property
    def path_loss_db(self) -> float:
        return 10 * math.log10(self.tx_power / self.received_power)


@dataclass(frozen=True)
class ChannelEnvironment:
    """Propagation context between an attacker and a charging cable.

    ``coupling_gain_db`` folds everything from incident field to
    interference power at the PLC receiver (always <= 0 dB).
    ``obstacle_attenuation_db`` adds floors, car bodies, fences.
    """

    coupling_gain_db: float = 0.0
    obstacle_attenuation_db: float = 0.0
    preset_name: str = "custom"
    barrage_factor_db: float = DEFAULT_BARRAGE_FACTOR_DB

    def __post_init__(self):
        if self.coupling_gain_db > 0:
            raise ChannelError(f"coupling_gain_db must be <= 0, got {self.coupling_gain_db}")
        if self.obstacle_attenuation_db < 0:
            raise ChannelError(
                f"obstacle_attenuation_db must be >= 0, got {self.obstacle_attenuation_db}"
            )
        if self.barrage_factor_db < MIN_BARRAGE_FACTOR_DB:
            raise ChannelError(
                f"barrage_factor_db must be >= {MIN_BARRAGE_FACTOR_DB}, got {self.barrage_factor_db}"
            )

    @property
    def linear_scale(self) -> float:
        return 10 ** ((self.coupling_gain_db - self.obstacle_attenuation_db) / 10)

    def with_extra_attenuation(self, db: float) -> "ChannelEnvironment":
        if db == 0:
            return self
        return replace(self, obstacle_attenuation_db=self.obstacle_attenuation_db + db)


def wavelength(frequency: float) -> float:
    if not frequency > 0:
        raise ChannelError(f"frequency must be positive, got {frequency}")
    return SPEED_OF_LIGHT / frequency


def friis_gain(frequency: float, distance: float, tx_gain: float = 1.0, rx_gain: float = 1.0) -> float:
    """Linear power ratio Pr/Pt of the Friis free-space equation."""
    if not distance > 0:
        raise ChannelError(f"distance must be positive, got {distance}")
    if not (tx_gain > 0 and rx_gain > 0):
        raise ChannelError("antenna gains must be positive")
    lam = wavelength(frequency)
    return tx_gain * rx_gain * (lam / (4 * math.pi * distance)) ** 2


def friis_received_power(
    tx_power: float,
    tx_gain: float,
    rx_gain: float,
    frequency: float,
    distance: float,
) -> LinkBudget:
    if not tx_power > 0:
        raise ChannelError(f"tx_power must be positive, got {tx_power}")
    p_r = tx_power * friis_gain(frequency, distance, tx_gain, rx_gain)
    return LinkBudget(tx_power, tx_gain, rx_gain, frequency, distance, p_r)


def field_region(frequency: float, distance: float) -> FieldRegion:
    """Reactive below lambda/(2 pi), far field from lambda on."""
    if not distance > 0:
        raise ChannelError(f"distance must be positive, got {distance}")
    lam = wavelength(frequency)
    if distance < lam / (2 * math.pi):
        return FieldRegion.REACTIVE_NEAR
    if distance >= lam:
        return FieldRegion.FAR
    return FieldRegion.RADIATIVE_NEAR


def far_field_boundary(frequency: float) -> float:
    return wavelength(frequency)


def reactive_boundary(frequency: float) -> float:
    return wavelength(frequency) / (2 * math.pi)


def band_power_envelope(
    tx_power: float,
    tx_gain: float,
    rx_gain: float,
    distance: float,
    band: FrequencyBand = HPGP_BAND,
) -> tuple[float, float]:
    """(min, max) received power across the band; min is at the top edge."""
    lo = friis_received_power(tx_power, tx_gain, rx_gain, band.high, distance).received_power
    hi = friis_received_power(tx_power, tx_gain, rx_gain, band.low, distance).received_power
    return lo, hi


TARGETED_THRESHOLD_W = REFERENCE_TX_POWER_W * friis_gain(DEFAULT_FREQUENCY_HZ, REFERENCE_DISTANCE_M)


def disruption_threshold(
    kind: InterferenceKind, barrage_factor_db: float = DEFAULT_BARRAGE_FACTOR_DB
) -> float:
    if kind is InterferenceKind.TARGETED:
        return TARGETED_THRESHOLD_W
    return TARGETED_THRESHOLD_W * 10 ** (barrage_factor_db / 10)


def link_disrupted(
    p_interference: float,
    kind: InterferenceKind,
    barrage_factor_db: float = DEFAULT_BARRAGE_FACTOR_DB,
) -> bool:
    if p_interference < 0:
        raise ChannelError(f"interference power must be >= 0, got {p_interference}")
    return p_interference >= disruption_threshold(kind, barrage_factor_db)


def path_gain(
    distance: float,
    env: ChannelEnvironment,
    frequency: float | None = None,
    tx_gain: float = 1.0,
) -> float:
    """Linear gain from attacker output to interference power at the PLC receiver."""
    f = DEFAULT_FREQUENCY_HZ if frequency is None else frequency
    return friis_gain(f, distance, tx_gain) * env.linear_scale


def interference_at_distance(
    tx_power: float,
    distance: float,
    env: ChannelEnvironment,
    frequency: float | None = None,
    tx_gain: float = 1.0,
) -> float:
    if tx_power < 0:
        raise ChannelError(f"tx_power must be >= 0, got {tx_power}")
    return tx_power * path_gain(distance, env, frequency, tx_gain)


def received_interference(attacker, victim_position, env: ChannelEnvironment,
                          frequency: float | None = None, t: float = 0.0) -> float:
    """Interference power at a victim cable from an attacker at time ``t``.

    ``attacker`` is anything exposing ``position(t)``, ``tx_power`` and
    ``antenna_gain`` (see :class:`ccsjam.scenario.AttackerConfig`).
    """
    ax, ay = attacker.position(t)
    vx, vy = victim_position
    d = math.hypot(vx - ax, vy - ay)
    if d == 0:
        raise ChannelError("attacker and victim positions coincide")
    return interference_at_distance(attacker.tx_power, d, env, frequency, attacker.antenna_gain)


def required_tx_power(
    distance: float,
    env: ChannelEnvironment,
    kind: InterferenceKind = InterferenceKind.TARGETED,
    frequency: float | None = None,
    tx_gain: float = 1.0,
) -> float:
    """Smallest transmit power (W) that disrupts a link at ``distance``."""
    gain = path_gain(distance, env, frequency, tx_gain)
    threshold = disruption_threshold(kind, env.barrage_factor_db)
    p = threshold / gain
    # the division can round either way; settle on the smallest float that disrupts
    while p * gain < threshold:
        p = math.nextafter(p, math.inf)
    while p > 0 and math.nextafter(p, 0.0) * gain >= threshold:
        p = math.nextafter(p, 0.0)
    return p


def effective_radius(
    tx_power: float,
    env: ChannelEnvironment,
    kind: InterferenceKind = InterferenceKind.TARGETED,
    frequency: float | None = None,
    tx_gain: float = 1.0,
) -> float:
    """Largest distance at which ``tx_power`` still disrupts; 0 if none."""
    if tx_power <= 0:
        return 0.0
    threshold = disruption_threshold(kind, env.barrage_factor_db)
    # P * k / d^2 >= T  <=>  d <= sqrt(P * k / T), with k = gain at 1 m
    k = path_gain(1.0, env, frequency, tx_gain)
    d = math.sqrt(tx_power * k / threshold)
    while d > 0 and tx_power * path_gain(d, env, frequency, tx_gain) < threshold:
        d = math.nextafter(d, 0.0)
    while tx_power * path_gain(math.nextafter(d, math.inf), env, frequency, tx_gain) >= threshold:
        d = math.nextafter(d, math.inf)
    return d


def dbm(watts: float) -> float:
    return 10 * math.log10(watts / 1e-3)
