"""Environment presets and their calibration pins."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .channel import ChannelEnvironment, InterferenceKind, required_tx_power

REQUIRED_KEYS = ("preset_name", "coupling_gain_db", "obstacle_attenuation_db", "barrage_factor_db")


class PresetError(ValueError):
    pass


@dataclass(frozen=True)
class CalibrationPin:
    distance_m: float
    tx_power_w: float
    rel_tolerance: float


@dataclass(frozen=True)
class Preset:
    env: ChannelEnvironment
    pin: CalibrationPin | None = None
    note: str = ""

    @property
    def name(self) -> str:
        return self.env.preset_name


@dataclass(frozen=True)
class PinCheck:
    preset: str
    distance_m: float
    pinned_w: float
    model_w: float
    deviation_db: float
    rel_error: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.rel_error <= self.tolerance


def _env_from_record(rec: dict, where: str) -> ChannelEnvironment:
    for key in REQUIRED_KEYS:
        if key not in rec:
            raise PresetError(f"{where}: missing field '{key}'")
    try:
        return ChannelEnvironment(
            coupling_gain_db=float(rec["coupling_gain_db"]),
            obstacle_attenuation_db=float(rec["obstacle_attenuation_db"]),
            preset_name=str(rec["preset_name"]),
            barrage_factor_db=float(rec["barrage_factor_db"]),
        )
    except (TypeError, ValueError) as exc:
        raise PresetError(f"{where}: {exc}") from None


def parse_presets(doc: dict) -> dict[str, Preset]:
    if "presets" not in doc:
        raise PresetError("preset file: missing field 'presets'")
    out = {}
    for i, rec in enumerate(doc["presets"]):
        env = _env_from_record(rec, f"presets[{i}]")
        pin = None
        if "pin" in rec:
            p = rec["pin"]
            try:
                pin = CalibrationPin(float(p["distance_m"]), float(p["tx_power_w"]),
                                     float(p.get("rel_tolerance", 0.1)))
            except KeyError as exc:
                raise PresetError(f"presets[{i}].pin: missing field {exc}") from None
        out[env.preset_name] = Preset(env, pin, rec.get("note", ""))
    return out


def load_presets(path: str | Path | None = None) -> dict[str, Preset]:
    if path is None:
        text = resources.files("ccsjam").joinpath("data/presets.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresetError(f"preset file is not valid JSON: {exc}") from None
    return parse_presets(doc)


def get_environment(name: str, presets: dict[str, Preset] | None = None) -> ChannelEnvironment:
    presets = load_presets() if presets is None else presets
    try:
        return presets[name].env
    except KeyError:
        raise PresetError(f"unknown preset '{name}' (have: {', '.join(sorted(presets))})") from None


def check_pin(preset: Preset) -> PinCheck:
    pin = preset.pin
    if pin is None:
        raise PresetError(f"preset '{preset.name}' has no calibration pin")
    model = required_tx_power(pin.distance_m, preset.env, InterferenceKind.TARGETED)
    return PinCheck(
        preset=preset.name,
        distance_m=pin.distance_m,
        pinned_w=pin.tx_power_w,
        model_w=model,
        deviation_db=10 * math.log10(model / pin.tx_power_w),
        rel_error=abs(model - pin.tx_power_w) / pin.tx_power_w,
        tolerance=pin.rel_tolerance,
    )


def required_power_table(presets: dict[str, Preset], distances) -> list[tuple]:
    """Rows of (preset, distance_m, targeted_w, barrage_w)."""
    rows = []
    for name in sorted(presets):
        env = presets[name].env
        for d in distances:
            rows.append((name, d,
                         required_tx_power(d, env, InterferenceKind.TARGETED),
                         required_tx_power(d, env, InterferenceKind.BARRAGE_NOISE)))
    return rows
