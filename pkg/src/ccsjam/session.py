"""Joint EV/EVSE charging-session state machine.

The happy path is::

    Idle -Plug-> PluggedPwm -PwmOk-> SlacInProgress -SlacDone-> LinkEstablished
         -LinkUp-> Authorized -AuthOk-> EnergyTransfer -ChargeComplete-> FinishedOk

``Authorized`` covers the stretch after the V2G session is up: charge
parameters (and so the state of charge) have been exchanged and the
authorization result is pending. Losing the PLC link in any
PLC-dependent state halts the session into ``Error`` at once, and power
is zero from that instant.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass
from typing import Iterable, Sequence


class SessionState(enum.Enum):
    IDLE = "Idle"
    PLUGGED_PWM = "PluggedPwm"
    SLAC_IN_PROGRESS = "SlacInProgress"
    LINK_ESTABLISHED = "LinkEstablished"
    AUTHORIZED = "Authorized"
    ENERGY_TRANSFER = "EnergyTransfer"
    ERROR_SOC_KNOWN = "Error(soc_known=true)"
    ERROR_SOC_UNKNOWN = "Error(soc_known=false)"
    FINISHED_OK = "FinishedOk"

    @staticmethod
    def error(soc_known: bool) -> "SessionState":
        return SessionState.ERROR_SOC_KNOWN if soc_known else SessionState.ERROR_SOC_UNKNOWN

    @property
    def is_error(self) -> bool:
        return self in (SessionState.ERROR_SOC_KNOWN, SessionState.ERROR_SOC_UNKNOWN)

    @property
    def soc_known(self) -> bool:
        return self in _SOC_KNOWN

    @property
    def uses_plc(self) -> bool:
        return self in _PLC_STATES

    @property
    def delivers_power(self) -> bool:
        return self is SessionState.ENERGY_TRANSFER


_PLC_STATES = frozenset({
    SessionState.SLAC_IN_PROGRESS,
    SessionState.LINK_ESTABLISHED,
    SessionState.AUTHORIZED,
    SessionState.ENERGY_TRANSFER,
})
_SOC_KNOWN = frozenset({
    SessionState.AUTHORIZED,
    SessionState.ENERGY_TRANSFER,
    SessionState.ERROR_SOC_KNOWN,
})
_CABLE_STATES = _PLC_STATES | {SessionState.PLUGGED_PWM}


class SessionEvent(enum.Enum):
    PLUG = "Plug"
    PWM_OK = "PwmOk"
    SLAC_DONE = "SlacDone"
    LINK_UP = "LinkUp"
    AUTH_OK = "AuthOk"
    COMM_LOSS = "CommLoss"
    COMM_RESTORED = "CommRestored"
    PP_CONTINUITY_BROKEN = "PpContinuityBroken"
    UNPLUG = "Unplug"
    CHARGE_COMPLETE = "ChargeComplete"

    @property
    def needs_link(self) -> bool:
        """Events that are PLC message exchanges and cannot happen on a dead link."""
        return self in _LINK_EVENTS


_LINK_EVENTS = frozenset({
    SessionEvent.SLAC_DONE,
    SessionEvent.LINK_UP,
    SessionEvent.AUTH_OK,
    SessionEvent.CHARGE_COMPLETE,
})

_ADVANCE = {
    (SessionState.IDLE, SessionEvent.PLUG): SessionState.PLUGGED_PWM,
    (SessionState.PLUGGED_PWM, SessionEvent.PWM_OK): SessionState.SLAC_IN_PROGRESS,
    (SessionState.SLAC_IN_PROGRESS, SessionEvent.SLAC_DONE): SessionState.LINK_ESTABLISHED,
    (SessionState.LINK_ESTABLISHED, SessionEvent.LINK_UP): SessionState.AUTHORIZED,
    (SessionState.AUTHORIZED, SessionEvent.AUTH_OK): SessionState.ENERGY_TRANSFER,
    (SessionState.ENERGY_TRANSFER, SessionEvent.CHARGE_COMPLETE): SessionState.FINISHED_OK,
}


class SessionError(ValueError):
    pass


@dataclass(frozen=True)
class SessionConfig:
    reauth_countermeasure: bool = False
    pwm_fallback: bool = False
    restart_delay: float = 0.0
    # one tested charger showed "charging ended successfully" after an abort
    display_finished_on_error: bool = False

    def __post_init__(self):
        if self.restart_delay < 0:
            raise SessionError("restart_delay must be >= 0")


DEFAULT_CONFIG = SessionConfig()


def step(
    state: SessionState,
    event: SessionEvent,
    config: SessionConfig = DEFAULT_CONFIG,
    pp_continuous: bool = True,
) -> SessionState:
    """Total, deterministic transition function; unknown pairs are self-loops."""
    if event is SessionEvent.UNPLUG:
        return SessionState.IDLE

    nxt = _ADVANCE.get((state, event))
    if nxt is not None:
        return nxt

    if event is SessionEvent.COMM_LOSS and state.uses_plc:
        if config.pwm_fallback and state is SessionState.ENERGY_TRANSFER:
            return state
        return SessionState.error(state.soc_known)

    if event is SessionEvent.PP_CONTINUITY_BROKEN and state in _CABLE_STATES:
        return SessionState.error(state.soc_known)

    if (event is SessionEvent.COMM_RESTORED
            and state is SessionState.ERROR_SOC_KNOWN
            and config.reauth_countermeasure
            and pp_continuous):
        return SessionState.ENERGY_TRANSFER

    return state


def power_output(state: SessionState, rated_power: float) -> float:
    return rated_power if state.delivers_power else 0.0


def display_label(state: SessionState, config: SessionConfig = DEFAULT_CONFIG) -> str:
    if config.display_finished_on_error and state is SessionState.ERROR_SOC_KNOWN:
        return SessionState.FINISHED_OK.value
    return state.value


RECOVERY_EVENTS = (
    SessionEvent.PLUG,
    SessionEvent.PWM_OK,
    SessionEvent.SLAC_DONE,
    SessionEvent.LINK_UP,
    SessionEvent.AUTH_OK,
)


def manual_restart(state: SessionState, config: SessionConfig = DEFAULT_CONFIG):
    """Unplug/replug recovery as ``[(offset_s, event), ...]``."""
    if not state.is_error:
        raise SessionError(f"manual restart only applies to Error states, not {state.value}")
    seq = [(0.0, SessionEvent.UNPLUG)]
    for i, ev in enumerate(RECOVERY_EVENTS):
        seq.append((config.restart_delay if i == 0 else 0.0, ev))
    return seq


def drive(
    state: SessionState,
    events: Iterable[SessionEvent],
    config: SessionConfig = DEFAULT_CONFIG,
    link_up: bool = True,
    pp_continuous: bool = True,
) -> SessionState:
    """Apply events with the PLC link held in a fixed condition.

    On a dead link the PLC exchanges never complete: the session sees
    ``CommLoss`` as soon as it sits in a PLC-dependent state.
    """
    for ev in events:
        if not link_up and ev.needs_link:
            ev = SessionEvent.COMM_LOSS
        state = step(state, ev, config, pp_continuous)
        if not link_up and state.uses_plc:
            state = step(state, SessionEvent.COMM_LOSS, config, pp_continuous)
    return state


@dataclass
class SessionRun:
    trajectory: list  # (t, state, power_w)
    energy_j: float

    @property
    def final_state(self) -> SessionState:
        return self.trajectory[-1][1]

    @property
    def energy_kwh(self) -> float:
        return self.energy_j / 3.6e6


def run_session(
    trace: Sequence[tuple[float, SessionEvent]],
    config: SessionConfig = DEFAULT_CONFIG,
    rated_power: float = 50e3,
    end_time: float | None = None,
) -> SessionRun:
    """Fold ``step`` over a timestamped trace starting from Idle.

    PP continuity is tracked from the trace itself: set on Plug, cleared
    by PpContinuityBroken or Unplug. Energy integrates the rated power
    over EnergyTransfer intervals, up to ``end_time`` if given.
    """
    state = SessionState.IDLE
    t0 = trace[0][0] if trace else 0.0
    traj = [(t0, state, 0.0)]
    energy = 0.0
    pp = False
    last_t = t0
    for t, ev in trace:
        if t < last_t:
            raise SessionError("trace timestamps must be non-decreasing")
        energy += power_output(state, rated_power) * (t - last_t)
        if ev is SessionEvent.PLUG and state is SessionState.IDLE:
            pp = True
        elif ev in (SessionEvent.PP_CONTINUITY_BROKEN, SessionEvent.UNPLUG):
            pp = False
        state = step(state, ev, config, pp)
        traj.append((t, state, power_output(state, rated_power)))
        last_t = t
    if end_time is not None and end_time > last_t:
        energy += power_output(state, rated_power) * (end_time - last_t)
    return SessionRun(traj, energy)


EVENT_LOG_HEADER = "timestamp_s,session_id,state,power_w"


def format_event_log(rows: Iterable[tuple]) -> str:
    """Serialize (timestamp, session_id, state, power) rows, one per line."""
    buf = io.StringIO()
    buf.write(EVENT_LOG_HEADER + "\n")
    for t, sid, state, power in rows:
        name = state.value if isinstance(state, SessionState) else str(state)
        buf.write(f"{t:.3f},{sid},{name},{power:.1f}\n")
    return buf.getvalue()


def parse_event_log(text: str) -> list[tuple]:
    lines = text.strip().splitlines()
    if not lines or lines[0] != EVENT_LOG_HEADER:
        raise SessionError("not an event log")
    lookup = {s.value: s for s in SessionState}
    rows = []
    for line in lines[1:]:
        t, sid, name, power = line.split(",", 3)
        rows.append((float(t), sid, lookup[name], float(power)))
    return rows
