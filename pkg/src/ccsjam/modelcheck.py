"""Exhaustive trace enumeration for the session state machine.

Every event sequence up to a given length is replayed in product with a
small environment (PLC link up/down, PP circuit intact/broken); PLC
message events are only enabled while the link is up. Each prefix is
checked against the safety properties.

``step`` is pure, so it is tabulated once per configuration over all
(state, event, pp) triples and the enumeration walks that table.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .session import SessionConfig, SessionEvent, SessionState, step

STATES = tuple(SessionState)
EVENTS = tuple(SessionEvent)

_S = {s: i for i, s in enumerate(STATES)}
_IDLE = _S[SessionState.IDLE]
_ET = _S[SessionState.ENERGY_TRANSFER]
_ERR = frozenset(_S[s] for s in STATES if s.is_error)


@dataclass
class CheckReport:
    config: SessionConfig
    depth: int
    traces: int = 0
    states_visited: set = field(default_factory=set)
    power_while_down: list = field(default_factory=list)
    resume_without_unplug: list = field(default_factory=list)
    unsound_resume: list = field(default_factory=list)
    unplug_not_idle: list = field(default_factory=list)
    resumes: int = 0

    @property
    def ok(self) -> bool:
        return not (self.power_while_down or self.resume_without_unplug
                    or self.unsound_resume or self.unplug_not_idle)


def _environment_moves():
    """For each (link_up, pp, state_is_idle): list of (event, link', pp', broke, plugged)."""
    moves = {}
    for link in (False, True):
        for pp in (False, True):
            for idle in (False, True):
                out = []
                for ev in EVENTS:
                    if ev.needs_link and not link:
                        continue
                    if ev is SessionEvent.COMM_RESTORED and link:
                        continue
                    if ev is SessionEvent.PP_CONTINUITY_BROKEN and not pp:
                        continue
                    n_link, n_pp, broke, plugged = link, pp, False, False
                    if ev is SessionEvent.COMM_LOSS:
                        n_link = False
                    elif ev is SessionEvent.COMM_RESTORED:
                        n_link = True
                    elif ev is SessionEvent.PLUG and idle:
                        n_pp, plugged = True, True
                    elif ev is SessionEvent.PP_CONTINUITY_BROKEN:
                        n_pp, broke = False, True
                    elif ev is SessionEvent.UNPLUG:
                        n_pp = False
                    out.append((EVENTS.index(ev), n_link, n_pp, broke, plugged))
                moves[link, pp, idle] = out
    return moves


def transition_table(config: SessionConfig):
    """table[state][event][pp] -> next state index, computed by ``step``."""
    return [[[_S[step(s, e, config, pp)] for pp in (False, True)] for e in EVENTS]
            for s in STATES]


def check_traces(config: SessionConfig, depth: int = 8, keep: int = 5) -> CheckReport:
    """Enumerate all environment-consistent traces of length <= ``depth``.

    Violating traces are recorded as event tuples (at most ``keep`` per
    property).
    """
    report = CheckReport(config, depth)
    table = transition_table(config)
    moves = _environment_moves()
    check_power = not config.pwm_fallback
    reauth = config.reauth_countermeasure
    unplug = EVENTS.index(SessionEvent.UNPLUG)
    path = []
    visited = set()
    counter = [0, 0]

    def record(bucket, ev):
        if len(bucket) < keep:
            bucket.append(tuple(EVENTS[i] for i in path) + (EVENTS[ev],))

    def walk(s, link, pp, errored, broken, remaining):
        counter[0] += 1
        visited.add(s)
        if not remaining:
            return
        for ev, n_link, n_pp, broke, plugged in moves[link, pp, s == _IDLE]:
            nxt = table[s][ev][n_pp]
            n_broken = (broken or broke) and not plugged
            if nxt == _ET:
                if check_power and not n_link:
                    record(report.power_while_down, ev)
                if s in _ERR:
                    counter[1] += 1
                    if not (reauth and n_pp and not n_broken):
                        record(report.unsound_resume, ev)
                if errored and not reauth:
                    record(report.resume_without_unplug, ev)
            if ev == unplug and nxt != _IDLE:
                record(report.unplug_not_idle, ev)
            path.append(ev)
            walk(nxt, n_link, n_pp, (errored or nxt in _ERR) and ev != unplug,
                 n_broken, remaining - 1)
            path.pop()

    walk(_IDLE, True, False, False, False, depth)
    report.traces, report.resumes = counter
    report.states_visited = {STATES[i] for i in visited}
    return report
