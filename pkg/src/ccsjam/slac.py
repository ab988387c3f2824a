"""Matrix-level SLAC: attenuation measurement and minimum-attenuation pairing."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

Point = tuple[float, float]


class SlacError(ValueError):
    pass


@dataclass(frozen=True)
class SlacChannel:
    """Attenuation model for sounding paths.

    Direct cable paths see ``base_db``. Cross-talk paths add a fixed
    leakage penalty plus ``per_meter_db`` for every meter between the EV
    and the EVSE, so a direct connection always wins in normal layouts.
    """

    base_db: float = 10.0
    leakage_db: float = 20.0
    per_meter_db: float = 6.0


@dataclass(frozen=True)
class AttenuationMatrix:
    ev_ids: tuple
    evse_ids: tuple
    values: tuple  # rows of dB, one per EV

    def __post_init__(self):
        if not self.ev_ids or not self.evse_ids:
            raise SlacError("attenuation matrix needs at least one EV and one EVSE")
        if len(self.values) != len(self.ev_ids):
            raise SlacError("row count does not match EV count")
        for row in self.values:
            if len(row) != len(self.evse_ids):
                raise SlacError("column count does not match EVSE count")
            for v in row:
                if not (math.isfinite(v) and v >= 0):
                    raise SlacError(f"attenuation must be finite and >= 0, got {v}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]], ev_ids=None, evse_ids=None):
        rows = tuple(tuple(float(v) for v in r) for r in rows)
        if not rows or not rows[0]:
            raise SlacError("empty attenuation matrix")
        ev_ids = tuple(range(len(rows))) if ev_ids is None else tuple(ev_ids)
        evse_ids = tuple(range(len(rows[0]))) if evse_ids is None else tuple(evse_ids)
        return cls(ev_ids, evse_ids, rows)

    def __getitem__(self, key):
        ev, evse = key
        return self.values[self.ev_ids.index(ev)][self.evse_ids.index(evse)]


@dataclass
class SlacOutcome:
    pairing: dict = field(default_factory=dict)  # EV id -> EVSE id
    unmatched: list = field(default_factory=list)
    sounding_lost: dict = field(default_factory=dict)  # EV id -> bool


def measure_attenuation(
    ev_positions: Mapping[Hashable, Point],
    evse_positions: Mapping[Hashable, Point],
    direct_pairs: Iterable[tuple[Hashable, Hashable]],
    channel: SlacChannel = SlacChannel(),
) -> AttenuationMatrix:
    if not ev_positions or not evse_positions:
        raise SlacError("need at least one EV and one EVSE")
    direct = set(direct_pairs)
    ev_ids = tuple(ev_positions)
    evse_ids = tuple(evse_positions)
    rows = []
    for ev in ev_ids:
        ex, ey = ev_positions[ev]
        row = []
        for evse in evse_ids:
            if (ev, evse) in direct:
                row.append(channel.base_db)
            else:
                sx, sy = evse_positions[evse]
                gap = math.hypot(ex - sx, ey - sy)
                row.append(channel.base_db + channel.leakage_db + channel.per_meter_db * gap)
        rows.append(tuple(row))
    return AttenuationMatrix(ev_ids, evse_ids, tuple(rows))


def slac_match(m: AttenuationMatrix, lost: Iterable[Hashable] = ()) -> SlacOutcome:
    """Pair each EV with its least-attenuated EVSE.

    Ties go to the lowest EVSE identifier. EVs are served in identifier
    order and an EVSE accepts only the first EV that picks it; later
    EVs wanting a taken EVSE stay unmatched. EVs listed in ``lost``
    never heard their soundings and are unmatched outright.
    """
    lost = set(lost)
    order = sorted(range(len(m.ev_ids)), key=lambda i: m.ev_ids[i])
    cols = sorted(range(len(m.evse_ids)), key=lambda j: m.evse_ids[j])
    out = SlacOutcome()
    taken = set()
    for i in order:
        ev = m.ev_ids[i]
        out.sounding_lost[ev] = ev in lost
        if ev in lost:
            out.unmatched.append(ev)
            continue
        row = m.values[i]
        best = cols[0]
        for j in cols[1:]:
            if row[j] < row[best]:
                best = j
        if best in taken:
            out.unmatched.append(ev)
        else:
            taken.add(best)
            out.pairing[ev] = m.evse_ids[best]
    return out
