"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines are repeated in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import itertools
import math
import random
import shutil
import sys
import tempfile
import time
from pathlib import Path

from ccsjam.channel import (
    TARGETED_THRESHOLD_W,
    InterferenceKind,
    effective_radius,
    far_field_boundary,
    friis_received_power,
    interference_at_distance,
    link_disrupted,
    required_tx_power,
)
from ccsjam.cli import main as cli_main
from ccsjam.coverage import Standard, auto_layout, bundled_layout, coverage_sweep, covered_bay_area
from ccsjam.modelcheck import check_traces
from ccsjam.presets import get_environment
from ccsjam.scenario import bundled_scenario, bundled_scenarios
from ccsjam.session import SessionConfig
from ccsjam.slac import AttenuationMatrix, slac_match

RESULTS: list[str] = []


def report(n: int, ok: bool, text: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} [{n}] {text}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _coverage(std, target_area, target_full, tol_area, tol_full, n):
    t0 = time.perf_counter()
    lay = auto_layout(std, 25.0)
    r = covered_bay_area(lay, lay.central_point, 25.0)
    dt = time.perf_counter() - t0
    ok = (abs(r.area_equivalents - target_area) <= tol_area
          and abs(r.fully_covered - target_full) <= tol_full and dt < 10)
    report(n, ok, f"{std.value} 25 m: area {r.area_equivalents:.2f} ({target_area}±{tol_area}), "
                  f"full {r.fully_covered} ({target_full}±{tol_full}), {dt:.2f} s (<10 s)")


def test_criterion_01_eu_normal_coverage():
    _coverage(Standard.EU_NORMAL, 80, 64, 2, 2, 1)


def test_criterion_02_eu_coach_coverage():
    _coverage(Standard.EU_COACH, 22, 16, 1, 1, 2)


def test_criterion_03_coverage_onset():
    lay = auto_layout(Standard.EU_NORMAL, 5.0)
    early = [round(0.05 * i, 2) for i in range(61)]  # 0 .. 3.0 m
    zeros = all(r.area_equivalents == 0.0 for r in coverage_sweep(lay, lay.central_point, early))
    at5 = covered_bay_area(lay, lay.central_point, 5.0).area_equivalents
    report(3, zeros and at5 > 0,
           f"EuNormal onset: zero for all ranges <= 3.0 m: {zeros}; at 5 m: {at5:.3f} bay equivalents")


def test_criterion_04_hub_replica():
    lay = bundled_layout("hub_replica_layout")
    r = covered_bay_area(lay, lay.central_point, 15.0)
    report(4, abs(r.affected - 22) <= 2, f"hub replica 15 m: {r.affected} bays affected (22±2)")


def test_criterion_05_calibration_pins():
    pins = [("lab", 10.0, 0.01, 0.0), ("through-floor", 6.0, 0.1, 0.1),
            ("urban-intersection", 47.0, 0.7, 0.1), ("favorable-parking", 1.5, 0.3e-3, 0.1)]
    parts, ok = [], True
    for name, d, watts, tol in pins:
        got = required_tx_power(d, get_environment(name))
        good = got == watts if tol == 0 else abs(got - watts) <= tol * watts
        ok &= good
        parts.append(f"{name} {d:g} m -> {got * 1e3:.5g} mW")
    report(5, ok, "; ".join(parts))


def test_criterion_06_friis_consistency():
    lab = get_environment("lab")
    raw = friis_received_power(0.01, 1.0, 1.0, 28e6, 10.0).received_power
    model = interference_at_distance(0.01, 10.0, lab)
    gap = abs(10 * math.log10(model / TARGETED_THRESHOLD_W))
    raw_gap = abs(10 * math.log10(raw / TARGETED_THRESHOLD_W))
    ff = far_field_boundary(28e6)
    report(6, gap <= 6 and raw_gap <= 6 and abs(ff - 10.7) <= 0.1,
           f"28 MHz at lab pin: model {gap:.3f} dB, raw Friis {raw_gap:.3f} dB from threshold "
           f"(<= 6 dB); far-field boundary {ff:.3f} m (10.7±0.1)")


def test_criterion_07_barrage_gap():
    lab = get_environment("lab")
    barrage = link_disrupted(interference_at_distance(20.0, 1.0, lab),
                             InterferenceKind.BARRAGE_NOISE, lab.barrage_factor_db)
    targeted = link_disrupted(interference_at_distance(0.02, 1.0, lab), InterferenceKind.TARGETED)
    # property over distance: 20 W barrage never works from >= 1 m, 20 mW targeted always works <= 1 m
    ds = [1.0 + 0.25 * i for i in range(200)]
    never = not any(link_disrupted(interference_at_distance(20.0, d, lab),
                                   InterferenceKind.BARRAGE_NOISE, lab.barrage_factor_db) for d in ds)
    always = all(link_disrupted(interference_at_distance(0.02, d / 200, lab), InterferenceKind.TARGETED)
                 for d in ds)
    r_b = effective_radius(20.0, lab, InterferenceKind.BARRAGE_NOISE)
    report(7, (not barrage) and targeted and never and always,
           f"lab 1 m: barrage 20 W disrupts={barrage}, targeted 20 mW disrupts={targeted}; "
           f"20 W barrage radius {r_b:.3f} m, {lab.barrage_factor_db:g} dB factor")


def test_criterion_08_session_safety():
    t0 = time.perf_counter()
    off = check_traces(SessionConfig(), depth=8)
    on = check_traces(SessionConfig(reauth_countermeasure=True), depth=8)
    dt = time.perf_counter() - t0
    ok = off.ok and on.ok and off.resumes == 0 and dt < 60
    report(8, ok, f"depth 8: {off.traces} traces per config; violations off={not off.ok} "
                  f"on={not on.ok}; resumes off={off.resumes} on={on.resumes}; {dt:.1f} s (<60 s)")


def _oracle(rows):
    want = []
    for r in rows:
        best = 0
        for j in range(1, len(r)):
            if r[j] < r[best]:
                best = j
        want.append(best)
    return {i: c for i, c in enumerate(want) if c not in want[:i]}


def test_criterion_09_slac_oracle():
    checked = mismatches = 0
    for n_ev in (1, 2, 3):
        for n_evse in (1, 2, 3):
            rows = list(itertools.product(range(1, 7), repeat=n_evse))
            ids_ev, ids_evse = tuple(range(n_ev)), tuple(range(n_evse))
            want_row = {r: _oracle([r])[0] for r in rows}
            for combo in itertools.product(rows, repeat=n_ev):
                want = {}
                for i, r in enumerate(combo):
                    c = want_row[r]
                    if c not in want.values():
                        want[i] = c
                got = slac_match(AttenuationMatrix(ids_ev, ids_evse, combo)).pairing
                checked += 1
                mismatches += got != want
    rng = random.Random(2024)
    for _ in range(10_000):
        rows = [[rng.randint(0, 100) for _ in range(5)] for _ in range(5)]
        checked += 1
        mismatches += slac_match(AttenuationMatrix.from_rows(rows)).pairing != _oracle(rows)
    report(9, mismatches == 0, f"{checked} matrices (all <= 3x3 over 1..6, 10^4 random 5x5): "
                               f"{mismatches} mismatches")


def test_criterion_10_multi_vehicle():
    res = bundled_scenario("scenario4").run()
    ticks = [round(a.time / res.dt) for a in res.aborts]
    ok = res.sessions_aborted == 3 and len(ticks) == 3 and max(ticks) - min(ticks) <= 1
    report(10, ok, f"scenario4: {res.sessions_aborted}/3 aborted at t = "
                   f"{', '.join(f'{a.time:.1f}' for a in res.aborts)} s")


def test_criterion_11_determinism():
    names = bundled_scenarios()
    root = Path(tempfile.mkdtemp())
    bad = []
    try:
        for name in names:
            out = root / name
            snaps = []
            for _ in range(2):
                if out.exists():
                    shutil.rmtree(out)
                assert cli_main(["scenario", "--bundled", name, "--output-dir", str(out)]) == 0
                snaps.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
            if snaps[0] != snaps[1]:
                bad.append(name)
    finally:
        shutil.rmtree(root)
    report(11, not bad, f"{len(names)} bundled scenarios run twice with the same seed: "
                        f"{'all byte-identical' if not bad else 'differ: ' + ', '.join(bad)}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
