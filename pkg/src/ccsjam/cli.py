"""Command-line entry point.

Every command validates all of its inputs before touching the output
directory, so an input error leaves nothing behind. Tables are CSV with
a header row and a leading ``seed`` column; ``manifest.json`` records how
to reproduce the run.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .channel import ChannelError
from .coverage import (
    DEFAULT_ISLAND_WIDTH,
    LayoutError,
    Standard,
    auto_layout,
    coverage_sweep,
    load_layout,
)
from .presets import PresetError, check_pin, get_environment, load_presets, required_power_table
from .scenario import ScenarioError, bundled_scenario, load_scenario
from .slac import AttenuationMatrix, SlacError, slac_match

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PIN = 2

INPUT_ERRORS = (LayoutError, ScenarioError, PresetError, SlacError, ChannelError, ValueError, OSError)


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage, which is reserved for pin failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass
class RunManifest:
    command: str
    inputs: list
    seed: int
    output_dir: str
    version: str = __version__
    parameters: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)


class _Outputs:
    """Collects files in memory; nothing is written until ``flush``."""

    def __init__(self):
        self.text: dict[str, str] = {}
        self.figures: list = []  # (name, callable(path))

    def table(self, name: str, header: list[str], rows) -> None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
        self.text[name] = buf.getvalue()

    def flush(self, out_dir: Path, manifest: RunManifest, figures: bool) -> list[str]:
        out_dir.mkdir(parents=True, exist_ok=True)
        names = sorted(self.text)
        for name in names:
            (out_dir / name).write_text(self.text[name], encoding="utf-8")
        if figures:
            for name, draw in self.figures:
                draw(out_dir / name)
                names.append(name)
        manifest.outputs = names
        (out_dir / "manifest.json").write_text(
            json.dumps(asdict(manifest), indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return names


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return "nan" if math.isnan(v) else repr(v)
    return str(v)


def _parse_ranges(text: str) -> list[float]:
    """``"0,5,25"`` or ``"start:stop:step"`` (stop inclusive)."""
    try:
        if ":" in text:
            start, stop, step = (float(x) for x in text.split(":"))
            if step <= 0 or stop < start:
                raise ValueError
            n = int(math.floor((stop - start) / step + 1e-9))
            vals = [round(start + i * step, 9) for i in range(n + 1)]
        else:
            vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--ranges: cannot parse '{text}'") from None
    if not vals or any(v < 0 or not math.isfinite(v) for v in vals):
        raise InputError("--ranges: need one or more finite ranges >= 0")
    return sorted(vals)


def _parse_point(text: str, flag: str) -> tuple[float, float]:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"{flag}: expected 'x,y', got '{text}'") from None
    return (x, y)


# -- commands -----------------------------------------------------------------

def cmd_coverage(args) -> int:
    if args.range is not None and args.ranges is not None:
        raise InputError("use either --range or --ranges, not both")
    if args.range is not None:
        if args.range < 0:
            raise InputError("--range: must be >= 0")
        ranges = [args.range]
    else:
        ranges = _parse_ranges(args.ranges or "0:30:0.5")

    if args.input:
        layout = load_layout(args.input)
        source = args.input
    else:
        std = Standard.parse(args.standard)
        layout = auto_layout(std, max(ranges), args.island_width)
        source = f"standard:{std.value}"
    attacker = _parse_point(args.attacker, "--attacker") if args.attacker else layout.central_point

    results = coverage_sweep(layout, attacker, ranges)
    out = _Outputs()
    out.table("coverage_sweep.csv",
              ["seed", "range_m", "area_equivalents", "fully_covered", "affected"],
              [(args.seed, r.range_m, r.area_equivalents, r.fully_covered, r.affected)
               for r in results])
    last = results[-1]
    out.table("bay_fractions.csv",
              ["seed", "range_m", "bay_index", "center_x", "center_y", "fraction"],
              [(args.seed, last.range_m, i, b.center[0], b.center[1], f)
               for i, (b, f) in enumerate(zip(layout.bays, last.fractions))])

    from . import plotting
    out.figures.append(("coverage_sweep.png",
                        lambda p: plotting.plot_coverage_sweep(results, p, source)))
    out.figures.append(("layout.png",
                        lambda p: plotting.plot_layout(layout, p, attacker, last.range_m,
                                                       list(last.fractions))))
    manifest = RunManifest("coverage", [source], args.seed, str(args.output_dir),
                           parameters={"ranges": ranges, "attacker": list(attacker)})
    out.flush(Path(args.output_dir), manifest, not args.no_figures)
    for r in results:
        print(f"range {r.range_m:g} m: {r.area_equivalents:.2f} bay equivalents, "
              f"{r.fully_covered} fully covered, {r.affected} affected")
    return EXIT_OK


def cmd_scenario(args) -> int:
    if bool(args.input) == bool(args.bundled):
        raise InputError("give exactly one of --input or --bundled")
    spec = load_scenario(args.input) if args.input else bundled_scenario(args.bundled)
    if args.preset:
        spec.env = get_environment(args.preset)
    if args.dt is not None:
        if not args.dt > 0:
            raise InputError("--dt: must be positive")
        spec.dt = args.dt
    if args.seed is not None:
        spec.seed = args.seed
    result = spec.run()
    seed = spec.seed

    out = _Outputs()
    rows = sorted(((t, sid, s.value, p) for sid, traj in result.trajectories.items()
                   for t, s, p in traj), key=lambda r: (round(r[0], 9), r[1]))
    out.table("events.csv", ["seed", "timestamp_s", "session_id", "state", "power_w"],
              [(seed, f"{t:.3f}", sid, s, f"{p:.1f}") for t, sid, s, p in rows])
    out.table("aborts.csv", ["seed", "session_id", "time_s", "distance_m", "from_state"],
              [(seed, a.session_id, f"{a.time:.3f}", a.distance, a.from_state.value)
               for a in result.aborts])
    summary = result.summary()
    keys = [k for k in summary if k != "seed"]
    out.table("summary.csv", ["scenario", "seed"] + keys,
              [[spec.name, seed] + [summary[k] for k in keys]])

    from . import plotting
    out.figures.append(("timeline.png",
                        lambda p: plotting.plot_timeline(result.trajectories, p, spec.duration)))
    attackers = [a.position(0.0) for a in spec.attackers[:1]]
    out.figures.append(("layout.png",
                        lambda p: plotting.plot_layout(spec.layout, p,
                                                       attackers[0] if attackers else None)))
    inputs = [args.input] if args.input else [f"bundled:{args.bundled}"]
    manifest = RunManifest("scenario", inputs, seed, str(args.output_dir),
                           parameters={"dt": spec.dt, "duration": spec.duration,
                                       "preset": spec.env.preset_name})
    out.flush(Path(args.output_dir), manifest, not args.no_figures)
    print(f"{spec.name}: {summary['sessions_total']} sessions, "
          f"{summary['sessions_aborted']} aborted, {summary['sessions_prevented']} prevented, "
          f"{summary['sessions_unaffected']} unaffected")
    return EXIT_OK


def cmd_calibrate(args) -> int:
    try:
        presets = load_presets(args.input)
    except FileNotFoundError:
        raise InputError(f"preset file not found: {args.input}") from None
    if args.preset:
        get_environment(args.preset, presets)
        presets = {args.preset: presets[args.preset]}
    distances = _parse_ranges(args.ranges or "1:50:1")
    if distances[0] <= 0:
        raise InputError("--ranges: calibration distances must be > 0")

    checks = [check_pin(p) for p in presets.values() if p.pin is not None]
    table = required_power_table(presets, distances)
    out = _Outputs()
    out.table("calibration.csv",
              ["seed", "preset", "distance_m", "pinned_w", "model_w", "deviation_db",
               "rel_error", "tolerance", "ok"],
              [(args.seed, c.preset, c.distance_m, c.pinned_w, c.model_w, c.deviation_db,
                c.rel_error, c.tolerance, c.ok) for c in checks])
    out.table("required_power.csv", ["seed", "preset", "distance_m", "targeted_w", "barrage_w"],
              [(args.seed,) + row for row in table])
    from . import plotting
    out.figures.append(("required_power.png", lambda p: plotting.plot_required_power(table, p)))
    manifest = RunManifest("calibrate", [args.input or "bundled:presets"], args.seed,
                           str(args.output_dir), parameters={"distances": distances})
    out.flush(Path(args.output_dir), manifest, not args.no_figures)

    failed = [c for c in checks if not c.ok]
    for c in checks:
        status = "ok" if c.ok else "FAIL"
        print(f"{c.preset}: {c.distance_m:g} m -> {c.model_w * 1e3:.4g} mW "
              f"(pinned {c.pinned_w * 1e3:.4g} mW, {c.deviation_db:+.3f} dB) {status}")
    if failed:
        for c in failed:
            print(f"error: preset '{c.preset}' misses its pin by {c.deviation_db:+.3f} dB",
                  file=sys.stderr)
        return EXIT_PIN
    return EXIT_OK


def _read_matrix(args) -> AttenuationMatrix:
    if args.input:
        try:
            doc = json.loads(Path(args.input).read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise InputError(f"matrix file not found: {args.input}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"matrix file is not valid JSON: {exc}") from None
        if not isinstance(doc, dict) or "rows" not in doc:
            raise InputError("matrix file: missing field 'rows'")
        return AttenuationMatrix.from_rows(doc["rows"], doc.get("ev_ids"), doc.get("evse_ids"))
    try:
        rows = [[float(v) for v in r.split(",")] for r in args.matrix.split(";")]
    except ValueError:
        raise InputError(f"--matrix: cannot parse '{args.matrix}'") from None
    return AttenuationMatrix.from_rows(rows)


def cmd_slac_demo(args) -> int:
    if bool(args.input) == bool(args.matrix):
        raise InputError("give exactly one of --input or --matrix")
    m = _read_matrix(args)
    lost = []
    for tok in (args.lost or "").split(","):
        tok = tok.strip()
        if not tok:
            continue
        match = [ev for ev in m.ev_ids if str(ev) == tok]
        if not match:
            raise InputError(f"--lost: unknown EV '{tok}'")
        lost.append(match[0])
    outcome = slac_match(m, lost)
    for ev in sorted(m.ev_ids, key=str):
        if ev in outcome.pairing:
            print(f"EV {ev} -> EVSE {outcome.pairing[ev]}")
        else:
            why = "sounding lost" if outcome.sounding_lost.get(ev) else "EVSE taken"
            print(f"EV {ev} unmatched ({why})")
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ccsjam", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, seed_default=0):
        sp.add_argument("--output-dir", default="out", help="directory for tables and figures")
        sp.add_argument("--seed", type=int, default=seed_default)
        sp.add_argument("--no-figures", action="store_true", help="write tables only")

    c = sub.add_parser("coverage", help="bay coverage for a layout and range sweep")
    c.add_argument("--input", help="layout JSON file (default: generated standard lot)")
    c.add_argument("--standard", default="EuNormal", help="EuNormal, UsLarge or EuCoach")
    c.add_argument("--island-width", type=float, default=DEFAULT_ISLAND_WIDTH)
    c.add_argument("--attacker", help="attacker position 'x,y' (default: layout centre)")
    c.add_argument("--range", type=float, help="single effective range in m")
    c.add_argument("--ranges", help="'a,b,c' or 'start:stop:step' in m")
    common(c)
    c.set_defaults(func=cmd_coverage)

    s = sub.add_parser("scenario", help="run a scenario configuration")
    s.add_argument("--input", help="scenario JSON file")
    s.add_argument("--bundled", help="name of a bundled scenario")
    s.add_argument("--dt", type=float, help="override the tick length in s")
    s.add_argument("--preset", help="override the environment preset")
    common(s, seed_default=None)
    s.set_defaults(func=cmd_scenario)

    k = sub.add_parser("calibrate", help="check preset pins and tabulate required power")
    k.add_argument("--input", help="preset JSON file (default: bundled table)")
    k.add_argument("--preset", help="only this preset")
    k.add_argument("--ranges", help="distances, 'a,b,c' or 'start:stop:step' in m")
    common(k)
    k.set_defaults(func=cmd_calibrate)

    d = sub.add_parser("slac-demo", help="print the SLAC matching for an attenuation matrix")
    d.add_argument("--input", help="JSON file with 'rows' and optional 'ev_ids', 'evse_ids'")
    d.add_argument("--matrix", help="rows separated by ';', entries by ','")
    d.add_argument("--lost", help="comma-separated EV ids whose sounding was lost")
    d.set_defaults(func=cmd_slac_demo)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
