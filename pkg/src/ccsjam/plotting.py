"""Static figures for CLI reports. Rendering is headless and byte-stable."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle, Polygon  # noqa: E402

from .coverage import CoverageResult, ParkLayout  # noqa: E402
from .session import SessionState  # noqa: E402

_STATE_ORDER = [
    SessionState.IDLE,
    SessionState.PLUGGED_PWM,
    SessionState.SLAC_IN_PROGRESS,
    SessionState.LINK_ESTABLISHED,
    SessionState.AUTHORIZED,
    SessionState.ENERGY_TRANSFER,
    SessionState.FINISHED_OK,
    SessionState.ERROR_SOC_KNOWN,
    SessionState.ERROR_SOC_UNKNOWN,
]


def _save(fig, path: Path) -> Path:
    path = Path(path)
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_coverage_sweep(results: list[CoverageResult], path: Path, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    r = [c.range_m for c in results]
    ax.plot(r, [c.area_equivalents for c in results], label="area equivalents")
    ax.plot(r, [c.fully_covered for c in results], label="fully covered", linestyle="--")
    ax.set_xlabel("effective range (m)")
    ax.set_ylabel("parking bays")
    ax.grid(True, alpha=0.3)
    ax.legend()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return _save(fig, path)


def plot_layout(layout: ParkLayout, path: Path, attacker=None, radius: float | None = None,
                fractions: list[float] | None = None) -> Path:
    fig, ax = plt.subplots(figsize=(6, 6))
    cmap = plt.get_cmap("Reds")
    for i, bay in enumerate(layout.bays):
        f = fractions[i] if fractions is not None else 0.0
        ax.add_patch(Polygon(bay.corners(), closed=True, facecolor=cmap(0.15 + 0.75 * f),
                             edgecolor="black", linewidth=0.4))
    if layout.chargers:
        xs, ys = zip(*layout.chargers)
        ax.plot(xs, ys, "s", color="tab:blue", markersize=3, label="charger")
    if attacker is not None:
        ax.plot(*attacker, "x", color="black", markersize=8, label="attacker")
        if radius:
            ax.add_patch(Circle(attacker, radius, fill=False, linestyle="--", color="black"))
    x0, y0, x1, y1 = layout.bounds()
    pad = 2.0
    ax.set_xlim(x0 - pad, x1 + pad)
    ax.set_ylim(y0 - pad, y1 + pad)
    ax.set_aspect("equal")
    ax.set_xlabel("x (m)")
    ax.set_ylabel("y (m)")
    ax.legend(loc="upper right", fontsize="small")
    fig.tight_layout()
    return _save(fig, path)


def plot_required_power(rows: list[tuple], path: Path) -> Path:
    """``rows`` as produced by ``presets.required_power_table``."""
    fig, ax = plt.subplots(figsize=(6, 4))
    names = list(dict.fromkeys(r[0] for r in rows))
    for name in names:
        pts = [(r[1], r[2]) for r in rows if r[0] == name]
        ax.loglog([d for d, _ in pts], [p * 1e3 for _, p in pts], label=name)
    ax.set_xlabel("distance (m)")
    ax.set_ylabel("required transmit power (mW)")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize="small")
    fig.tight_layout()
    return _save(fig, path)


def plot_timeline(trajectories: dict, path: Path, end_time: float) -> Path:
    fig, ax = plt.subplots(figsize=(7, 1.2 + 0.8 * len(trajectories)))
    level = {s: i for i, s in enumerate(_STATE_ORDER)}
    for sid, traj in trajectories.items():
        ts = [t for t, _, _ in traj] + [end_time]
        ys = [level[s] for _, s, _ in traj]
        ax.step(ts, ys + ys[-1:], where="post", label=str(sid))
    ax.set_yticks(range(len(_STATE_ORDER)))
    ax.set_yticklabels([s.value for s in _STATE_ORDER], fontsize="small")
    ax.set_xlabel("time (s)")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize="small")
    fig.tight_layout()
    return _save(fig, path)
