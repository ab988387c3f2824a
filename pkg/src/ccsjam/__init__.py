"""Simulator of CCS rapid-charging parks under targeted PLC interference."""

from importlib.metadata import PackageNotFoundError, version

from .channel import (
    ChannelEnvironment,
    FieldRegion,
    InterferenceKind,
    effective_radius,
    friis_received_power,
    link_disrupted,
    received_interference,
    required_tx_power,
)
from .coverage import ParkLayout, Standard, covered_bay_area, coverage_sweep, standard_layout
from .presets import load_presets
from .scenario import AttackerConfig, ScenarioResult, run_scenario
from .session import SessionConfig, SessionEvent, SessionState, step
from .slac import AttenuationMatrix, slac_match

try:
    __version__ = version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

__all__ = [
    "AttackerConfig",
    "AttenuationMatrix",
    "ChannelEnvironment",
    "FieldRegion",
    "InterferenceKind",
    "ParkLayout",
    "ScenarioResult",
    "SessionConfig",
    "SessionEvent",
    "SessionState",
    "Standard",
    "covered_bay_area",
    "coverage_sweep",
    "effective_radius",
    "friis_received_power",
    "link_disrupted",
    "load_presets",
    "received_interference",
    "required_tx_power",
    "run_scenario",
    "slac_match",
    "standard_layout",
    "step",
]
