"""Tick-based engine binding geometry, channel, SLAC and charging sessions.

Every tick the engine moves the attackers, sums their interference at
each vehicle's cable inlet, and turns the binary link outcome into
``CommLoss``/``CommRestored`` events for that vehicle's session. The
normal charging handshake is scripted per vehicle with fixed phase
durations.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .channel import (
    ChannelEnvironment,
    InterferenceKind,
    disruption_threshold,
    effective_radius,
    path_gain,
)
from .coverage import LayoutError, ParkLayout, bundled_layout, layout_from_dict, load_layout
from .presets import PresetError, get_environment, load_presets
from .session import (
    DEFAULT_CONFIG,
    SessionConfig,
    SessionError,
    SessionEvent,
    SessionState,
    format_event_log,
    power_output,
    step,
)
from .slac import SlacChannel, measure_attenuation, slac_match

__all__ = [
    "AttackerConfig",
    "AbortEvent",
    "HandshakeTiming",
    "ScenarioError",
    "ScenarioResult",
    "ScenarioSpec",
    "Vehicle",
    "attacker_position",
    "bundled_scenario",
    "bundled_scenarios",
    "effective_radius",
    "inlet_point",
    "load_scenario",
    "run_scenario",
    "scenario_from_dict",
]

Point = tuple[float, float]

DEFAULT_DT = 0.1
DEFAULT_OCCLUSION_DB = 3.0
DEFAULT_RATED_POWER_W = 50e3


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class AttackerConfig:
    """Attacker placement, power and schedule.

    ``path`` is a sequence of ``((x, y), t)`` waypoints with strictly
    increasing times; a single waypoint is a fixed position. The
    transmitter is on during ``active_window`` (``end`` may be ``None``).
    """

    path: tuple
    tx_power: float
    antenna_gain: float = 1.0
    kind: InterferenceKind = InterferenceKind.TARGETED
    active_window: tuple = (0.0, None)

    def __post_init__(self):
        if not self.path:
            raise ScenarioError("attacker path is empty")
        object.__setattr__(self, "path", tuple((tuple(map(float, p)), float(t)) for p, t in self.path))
        times = [t for _, t in self.path]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ScenarioError("attacker waypoint times must be strictly increasing")
        if not self.tx_power >= 0:
            raise ScenarioError(f"tx_power must be >= 0, got {self.tx_power}")
        if not self.antenna_gain > 0:
            raise ScenarioError(f"antenna_gain must be positive, got {self.antenna_gain}")

    @classmethod
    def fixed(cls, point: Point, tx_power: float, **kw) -> "AttackerConfig":
        return cls(path=((point, 0.0),), tx_power=tx_power, **kw)

    def position(self, t: float) -> Point:
        return attacker_position(self, t)

    def active(self, t: float) -> bool:
        start, end = self.active_window
        return t >= start and (end is None or t <= end)


def attacker_position(cfg: AttackerConfig, t: float) -> Point:
    """Piecewise-linear position along the waypoints, clamped at both ends."""
    path = cfg.path
    if not path:
        raise ScenarioError("attacker path is empty")
    if t <= path[0][1]:
        return path[0][0]
    if t >= path[-1][1]:
        return path[-1][0]
    for (p0, t0), (p1, t1) in zip(path, path[1:]):
        if t <= t1:
            u = (t - t0) / (t1 - t0)
            return (p0[0] + u * (p1[0] - p0[0]), p0[1] + u * (p1[1] - p0[1]))
    return path[-1][0]  # unreachable


@dataclass(frozen=True)
class HandshakeTiming:
    """Seconds spent in each setup phase before the next event is due."""

    pwm: float = 1.0
    slac: float = 2.0
    link: float = 1.0
    auth: float = 2.0

    def delay_after(self, state: SessionState) -> float:
        return {
            SessionState.PLUGGED_PWM: self.pwm,
            SessionState.SLAC_IN_PROGRESS: self.slac,
            SessionState.LINK_ESTABLISHED: self.link,
            SessionState.AUTHORIZED: self.auth,
        }.get(state, 0.0)


_NEXT_EVENT = {
    SessionState.IDLE: SessionEvent.PLUG,
    SessionState.PLUGGED_PWM: SessionEvent.PWM_OK,
    SessionState.SLAC_IN_PROGRESS: SessionEvent.SLAC_DONE,
    SessionState.LINK_ESTABLISHED: SessionEvent.LINK_UP,
    SessionState.AUTHORIZED: SessionEvent.AUTH_OK,
}


@dataclass(frozen=True)
class Vehicle:
    id: str
    bay: int
    charger: int
    plug_time: float = 0.0
    charge_duration: float = 3600.0
    rated_power: float = DEFAULT_RATED_POWER_W
    restart_after: float | None = None  # driver unplugs and replugs this long after an error


@dataclass(frozen=True)
class AbortEvent:
    session_id: str
    time: float
    distance: float  # to the nearest active attacker
    from_state: SessionState

    @property
    def during_transfer(self) -> bool:
        return self.from_state is SessionState.ENERGY_TRANSFER


@dataclass
class ScenarioResult:
    trajectories: dict  # session id -> [(t, state, power_w)] at each change
    aborts: list
    energy_j: dict
    outcomes: dict  # session id -> "aborted" | "prevented" | "unaffected"
    slac_rounds: list = field(default_factory=list)  # (t, SlacOutcome)
    seed: int = 0
    dt: float = DEFAULT_DT
    duration: float = 0.0

    def _count(self, label: str) -> int:
        return sum(1 for v in self.outcomes.values() if v == label)

    @property
    def sessions_total(self) -> int:
        return len(self.outcomes)

    @property
    def sessions_started(self) -> int:
        return sum(1 for traj in self.trajectories.values()
                   if any(s is SessionState.ENERGY_TRANSFER for _, s, _ in traj))

    @property
    def sessions_aborted(self) -> int:
        return self._count("aborted")

    @property
    def sessions_prevented(self) -> int:
        return self._count("prevented")

    @property
    def sessions_unaffected(self) -> int:
        return self._count("unaffected")

    def final_states(self) -> dict:
        return {sid: traj[-1][1] for sid, traj in self.trajectories.items()}

    def event_log(self) -> str:
        rows = [(t, sid, s, p) for sid, traj in self.trajectories.items() for t, s, p in traj]
        rows.sort(key=lambda r: (round(r[0], 9), r[1]))
        return format_event_log(rows)

    def summary(self) -> dict:
        d = [a.distance for a in self.aborts]
        return {
            "seed": self.seed,
            "dt_s": self.dt,
            "duration_s": self.duration,
            "sessions_total": self.sessions_total,
            "sessions_started": self.sessions_started,
            "sessions_aborted": self.sessions_aborted,
            "sessions_prevented": self.sessions_prevented,
            "sessions_unaffected": self.sessions_unaffected,
            "min_abort_distance_m": min(d) if d else float("nan"),
            "max_abort_distance_m": max(d) if d else float("nan"),
        }


# -- geometry helpers --------------------------------------------------------

def inlet_point(layout: ParkLayout, vehicle: Vehicle) -> Point:
    """Point of the vehicle's bay closest to its charger (where the cable enters)."""
    bay = layout.bays[vehicle.bay]
    cx, cy = layout.chargers[vehicle.charger]
    u, v = bay.to_local((cx, cy))
    u = min(max(u, -bay.width / 2), bay.width / 2)
    v = min(max(v, -bay.depth / 2), bay.depth / 2)
    a = math.radians(bay.angle)
    c, s = math.cos(a), math.sin(a)
    return (bay.center[0] + c * u - s * v, bay.center[1] + s * u + c * v)


def segment_crosses_bay(bay, p: Point, q: Point) -> bool:
    """Liang-Barsky clip of segment pq against the bay rectangle."""
    (x0, y0), (x1, y1) = bay.to_local(p), bay.to_local(q)
    dx, dy = x1 - x0, y1 - y0
    hw, hd = bay.width / 2, bay.depth / 2
    lo, hi = 0.0, 1.0
    for den, num in ((-dx, x0 + hw), (dx, hw - x0), (-dy, y0 + hd), (dy, hd - y0)):
        if den == 0:
            if num < 0:
                return False
            continue
        r = num / den
        if den < 0:
            lo = max(lo, r)
        else:
            hi = min(hi, r)
        if lo > hi:
            return False
    return True


def occluders_between(layout: ParkLayout, occupied: Sequence[int], p: Point, q: Point,
                      skip: int | None = None) -> int:
    return sum(1 for i in occupied if i != skip and segment_crosses_bay(layout.bays[i], p, q))


# -- engine ------------------------------------------------------------------

@dataclass
class _Live:
    vehicle: Vehicle
    inlet: Point
    state: SessionState = SessionState.IDLE
    pp: bool = False
    link_up: bool = True
    due: float = 0.0
    transfer_ticks: int = 0
    error_since: float | None = None
    reached_transfer: bool = False
    aborted: bool = False
    prevented: bool = False
    energy: float = 0.0


def _validate(layout: ParkLayout, vehicles: Sequence[Vehicle], parked: Sequence[int]):
    n_bays, n_chargers = len(layout.bays), len(layout.chargers)
    seen_ids, seen_bays = set(), {}
    for i, v in enumerate(vehicles):
        where = f"vehicles[{i}]"
        if not 0 <= v.bay < n_bays:
            raise ScenarioError(f"{where}.bay: bay {v.bay} does not exist (layout has {n_bays})")
        if not 0 <= v.charger < n_chargers:
            raise ScenarioError(
                f"{where}.charger: charger {v.charger} does not exist (layout has {n_chargers})")
        if v.id in seen_ids:
            raise ScenarioError(f"{where}.id: duplicate vehicle id '{v.id}'")
        if v.bay in seen_bays:
            raise ScenarioError(f"{where}.bay: bay {v.bay} already holds vehicle '{seen_bays[v.bay]}'")
        seen_ids.add(v.id)
        seen_bays[v.bay] = v.id
    for i, b in enumerate(parked):
        if not 0 <= b < n_bays:
            raise ScenarioError(f"parked[{i}]: bay {b} does not exist (layout has {n_bays})")
        if b in seen_bays:
            raise ScenarioError(f"parked[{i}]: bay {b} already holds vehicle '{seen_bays[b]}'")


def run_scenario(
    layout: ParkLayout,
    vehicles: Sequence[Vehicle],
    attackers: Sequence[AttackerConfig],
    env: ChannelEnvironment,
    duration: float,
    dt: float = DEFAULT_DT,
    *,
    parked: Sequence[int] = (),
    seed: int = 0,
    occlusion_db: float = DEFAULT_OCCLUSION_DB,
    shadowing_sigma_db: float = 0.0,
    session_config: SessionConfig = DEFAULT_CONFIG,
    timing: HandshakeTiming = HandshakeTiming(),
    frequency: float | None = None,
    slac_channel: SlacChannel = SlacChannel(),
) -> ScenarioResult:
    if not dt > 0:
        raise ScenarioError(f"dt must be positive, got {dt}")
    if duration < 0:
        raise ScenarioError(f"duration must be >= 0, got {duration}")
    if occlusion_db < 0 or shadowing_sigma_db < 0:
        raise ScenarioError("occlusion_db and shadowing_sigma_db must be >= 0")
    _validate(layout, vehicles, parked)

    rng = np.random.default_rng(seed)
    occupied = sorted(set(parked) | {v.bay for v in vehicles})
    live = [_Live(v, inlet_point(layout, v), due=v.plug_time) for v in vehicles]
    traj = {v.id: [(0.0, SessionState.IDLE, 0.0)] for v in vehicles}
    aborts: list[AbortEvent] = []
    slac_rounds = []
    thresholds = {k: disruption_threshold(k, env.barrage_factor_db) for k in InterferenceKind}

    # occlusion counts only change if an attacker moves; cache for fixed ones
    occl_cache: dict = {}

    def occlusion(ai: int, a: AttackerConfig, pos: Point, lv: _Live) -> int:
        key = (ai, lv.vehicle.id)
        if len(a.path) == 1 and key in occl_cache:
            return occl_cache[key]
        n = occluders_between(layout, occupied, pos, lv.inlet, skip=lv.vehicle.bay)
        if len(a.path) == 1:
            occl_cache[key] = n
        return n

    def link_state(t: float, lv: _Live) -> tuple[bool, float]:
        """(link up?, distance to the nearest active attacker)."""
        power = dict.fromkeys(InterferenceKind, 0.0)
        nearest = math.inf
        for ai, a in enumerate(attackers):
            if not a.active(t) or a.tx_power == 0:
                continue
            pos = a.position(t)
            d = math.hypot(lv.inlet[0] - pos[0], lv.inlet[1] - pos[1])
            if d == 0:
                raise ScenarioError(f"attacker {ai} coincides with vehicle '{lv.vehicle.id}' at t={t:g}")
            nearest = min(nearest, d)
            extra = occlusion_db * occlusion(ai, a, pos, lv) if occlusion_db else 0.0
            if shadowing_sigma_db:
                extra -= rng.normal(0.0, shadowing_sigma_db)
            p = a.tx_power * path_gain(d, env, frequency, a.antenna_gain) * 10 ** (-extra / 10)
            power[a.kind] += p
        up = all(power[k] < thresholds[k] for k in InterferenceKind)
        return up, nearest

    def apply(lv: _Live, t: float, ev: SessionEvent, distance: float):
        before = lv.state
        if ev is SessionEvent.PLUG and before is SessionState.IDLE:
            lv.pp = True
        elif ev in (SessionEvent.UNPLUG, SessionEvent.PP_CONTINUITY_BROKEN):
            lv.pp = False
        after = step(before, ev, session_config, lv.pp)
        if after is before:
            return
        lv.state = after
        traj[lv.vehicle.id].append((t, after, power_output(after, lv.vehicle.rated_power)))
        if after.is_error:
            lv.error_since = t
            aborts.append(AbortEvent(lv.vehicle.id, t, distance, before))
            if before is SessionState.ENERGY_TRANSFER:
                lv.aborted = True
            elif not lv.reached_transfer:
                lv.prevented = True
        else:
            lv.error_since = None
        if after is SessionState.ENERGY_TRANSFER:
            lv.reached_transfer = True
        lv.due = t + timing.delay_after(after)

    n_ticks = int(round(duration / dt))
    for k in range(n_ticks + 1):
        t = k * dt
        links = [link_state(t, lv) for lv in live]

        # SLAC: all sessions whose sounding completes this tick are matched together
        sounding = [i for i, lv in enumerate(live)
                    if lv.state is SessionState.SLAC_IN_PROGRESS and t >= lv.due]
        slac_ok = set()
        if sounding:
            evs = {live[i].vehicle.id: live[i].inlet for i in sounding}
            evses = {live[i].vehicle.id: layout.chargers[live[i].vehicle.charger] for i in sounding}
            m = measure_attenuation(evs, evses, [(e, e) for e in evs], slac_channel)
            outcome = slac_match(m, lost=[live[i].vehicle.id for i in sounding if not links[i][0]])
            slac_rounds.append((t, outcome))
            slac_ok = {i for i in sounding
                       if outcome.pairing.get(live[i].vehicle.id) == live[i].vehicle.id}

        for i, lv in enumerate(live):
            up, dist = links[i]
            was_up, lv.link_up = lv.link_up, up
            if up and not was_up:
                apply(lv, t, SessionEvent.COMM_RESTORED, dist)

            if lv.state.is_error and lv.vehicle.restart_after is not None \
                    and t - lv.error_since >= lv.vehicle.restart_after:
                apply(lv, t, SessionEvent.UNPLUG, dist)
                lv.due = t + session_config.restart_delay

            nxt = _NEXT_EVENT.get(lv.state)
            if nxt is not None and t >= lv.due and (up or not nxt.needs_link):
                if nxt is not SessionEvent.SLAC_DONE or i in slac_ok:
                    apply(lv, t, nxt, dist)
            elif lv.state is SessionState.ENERGY_TRANSFER and up \
                    and lv.transfer_ticks * dt >= lv.vehicle.charge_duration - 1e-9 * dt:
                apply(lv, t, SessionEvent.CHARGE_COMPLETE, dist)

            if not up and lv.state.uses_plc:
                apply(lv, t, SessionEvent.COMM_LOSS, dist)

            if k < n_ticks:
                p = power_output(lv.state, lv.vehicle.rated_power)
                lv.energy += p * dt
                if p:
                    lv.transfer_ticks += 1

    outcomes = {}
    for lv in live:
        if lv.aborted:
            outcomes[lv.vehicle.id] = "aborted"
        elif lv.prevented:
            outcomes[lv.vehicle.id] = "prevented"
        else:
            outcomes[lv.vehicle.id] = "unaffected"
    return ScenarioResult(
        trajectories=traj,
        aborts=aborts,
        energy_j={lv.vehicle.id: lv.energy for lv in live},
        outcomes=outcomes,
        slac_rounds=slac_rounds,
        seed=seed,
        dt=dt,
        duration=duration,
    )


# -- configuration files ------------------------------------------------------

@dataclass
class ScenarioSpec:
    name: str
    layout: ParkLayout
    vehicles: list
    attackers: list
    env: ChannelEnvironment
    duration: float
    dt: float = DEFAULT_DT
    seed: int = 0
    parked: list = field(default_factory=list)
    occlusion_db: float = DEFAULT_OCCLUSION_DB
    shadowing_sigma_db: float = 0.0
    session_config: SessionConfig = DEFAULT_CONFIG
    timing: HandshakeTiming = HandshakeTiming()

    def run(self, *, dt: float | None = None, seed: int | None = None) -> ScenarioResult:
        return run_scenario(
            self.layout, self.vehicles, self.attackers, self.env, self.duration,
            self.dt if dt is None else dt,
            parked=self.parked,
            seed=self.seed if seed is None else seed,
            occlusion_db=self.occlusion_db,
            shadowing_sigma_db=self.shadowing_sigma_db,
            session_config=self.session_config,
            timing=self.timing,
        )


def _req(rec: dict, key: str, where: str):
    if key not in rec:
        raise ScenarioError(f"{where}: missing field '{key}'")
    return rec[key]


def _number(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ScenarioError(f"{where}: expected a number, got {v!r}")
    return float(v)


def _point(v, where: str) -> Point:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise ScenarioError(f"{where}: expected [x, y]")
    return (_number(v[0], where), _number(v[1], where))


def _attacker(rec: dict, where: str) -> AttackerConfig:
    if not isinstance(rec, dict):
        raise ScenarioError(f"{where}: expected an object")
    if "path" in rec:
        path = []
        for j, wp in enumerate(rec["path"]):
            w = f"{where}.path[{j}]"
            if not isinstance(wp, dict):
                raise ScenarioError(f"{w}: expected an object with x, y, t")
            path.append(((_number(_req(wp, "x", w), f"{w}.x"), _number(_req(wp, "y", w), f"{w}.y")),
                         _number(_req(wp, "t", w), f"{w}.t")))
    else:
        path = [(_point(_req(rec, "position", where), f"{where}.position"), 0.0)]
    window = rec.get("active_window_s", [0.0, None])
    if not isinstance(window, list) or len(window) != 2:
        raise ScenarioError(f"{where}.active_window_s: expected [start, end]")
    start = _number(window[0], f"{where}.active_window_s[0]")
    end = None if window[1] is None else _number(window[1], f"{where}.active_window_s[1]")
    try:
        kind = InterferenceKind.parse(str(rec.get("kind", "Targeted")))
        return AttackerConfig(
            path=tuple(path),
            tx_power=_number(_req(rec, "tx_power_w", where), f"{where}.tx_power_w"),
            antenna_gain=_number(rec.get("antenna_gain", 1.0), f"{where}.antenna_gain"),
            kind=kind,
            active_window=(start, end),
        )
    except ValueError as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def _vehicle(rec: dict, where: str) -> Vehicle:
    if not isinstance(rec, dict):
        raise ScenarioError(f"{where}: expected an object")

    def integer(key):
        v = _req(rec, key, where)
        if isinstance(v, bool) or not isinstance(v, int):
            raise ScenarioError(f"{where}.{key}: expected an integer index, got {v!r}")
        return v

    restart = rec.get("restart_after_s")
    return Vehicle(
        id=str(_req(rec, "id", where)),
        bay=integer("bay"),
        charger=integer("charger"),
        plug_time=_number(rec.get("plug_time_s", 0.0), f"{where}.plug_time_s"),
        charge_duration=_number(rec.get("charge_duration_s", 3600.0), f"{where}.charge_duration_s"),
        rated_power=_number(rec.get("rated_power_w", DEFAULT_RATED_POWER_W), f"{where}.rated_power_w"),
        restart_after=None if restart is None else _number(restart, f"{where}.restart_after_s"),
    )


def _resolve_layout(ref, base: Path | None) -> ParkLayout:
    if isinstance(ref, dict):
        return layout_from_dict(ref)
    if not isinstance(ref, str):
        raise ScenarioError("layout: expected an object, a file path or a bundled layout name")
    if base is not None and (base / ref).is_file():
        return load_layout(base / ref)
    if Path(ref).is_file():
        return load_layout(ref)
    try:
        return bundled_layout(ref)
    except FileNotFoundError:
        raise ScenarioError(f"layout: '{ref}' is neither a file nor a bundled layout") from None


def scenario_from_dict(doc: dict, base: Path | None = None) -> ScenarioSpec:
    if not isinstance(doc, dict):
        raise ScenarioError("scenario: expected an object at top level")
    try:
        layout = _resolve_layout(_req(doc, "layout", "scenario"), base)
    except LayoutError as exc:
        raise ScenarioError(f"layout: {exc}") from None

    try:
        env = get_environment(str(doc.get("preset", "lab")), load_presets())
    except PresetError as exc:
        raise ScenarioError(f"preset: {exc}") from None
    extra = _number(doc.get("extra_attenuation_db", 0.0), "extra_attenuation_db")
    if extra:
        env = env.with_extra_attenuation(extra)

    vehicles = [_vehicle(r, f"vehicles[{i}]") for i, r in enumerate(_req(doc, "vehicles", "scenario"))]
    attackers = [_attacker(r, f"attackers[{i}]") for i, r in enumerate(doc.get("attackers", []))]
    parked = doc.get("parked", [])
    if not isinstance(parked, list) or not all(isinstance(b, int) and not isinstance(b, bool)
                                               for b in parked):
        raise ScenarioError("parked: expected a list of bay indices")

    sess = doc.get("session", {})
    try:
        config = SessionConfig(
            reauth_countermeasure=bool(sess.get("reauth_countermeasure", False)),
            pwm_fallback=bool(sess.get("pwm_fallback", False)),
            restart_delay=_number(sess.get("restart_delay_s", 0.0), "session.restart_delay_s"),
            display_finished_on_error=bool(sess.get("display_finished_on_error", False)),
        )
    except SessionError as exc:
        raise ScenarioError(f"session: {exc}") from None
    timing = HandshakeTiming(**{k: _number(v, f"timing.{k}")
                                for k, v in doc.get("timing", {}).items()
                                if k in ("pwm", "slac", "link", "auth")})

    seed = doc.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ScenarioError(f"seed: expected an integer, got {seed!r}")
    spec = ScenarioSpec(
        name=str(doc.get("name", "scenario")),
        layout=layout,
        vehicles=vehicles,
        attackers=attackers,
        env=env,
        duration=_number(_req(doc, "duration_s", "scenario"), "duration_s"),
        dt=_number(doc.get("dt_s", DEFAULT_DT), "dt_s"),
        seed=seed,
        parked=parked,
        occlusion_db=_number(doc.get("occlusion_db", DEFAULT_OCCLUSION_DB), "occlusion_db"),
        shadowing_sigma_db=_number(doc.get("shadowing_sigma_db", 0.0), "shadowing_sigma_db"),
        session_config=config,
        timing=timing,
    )
    _validate(spec.layout, spec.vehicles, spec.parked)
    return spec


def load_scenario(path: str | Path) -> ScenarioSpec:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ScenarioError(f"scenario file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file is not valid JSON: {exc}") from None
    return scenario_from_dict(doc, path.parent)


def bundled_scenarios() -> list[str]:
    folder = resources.files("ccsjam").joinpath("data/scenarios")
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


def bundled_scenario(name: str) -> ScenarioSpec:
    text = resources.files("ccsjam").joinpath(f"data/scenarios/{name}.json").read_text(encoding="utf-8")
    return scenario_from_dict(json.loads(text))
