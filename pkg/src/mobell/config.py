"""Flat key = value scenario configuration.

Lines hold ``key = value`` with ``#`` comments; numbers may carry SI
suffixes (``10MHz``, ``20ns``, ``100us``). Frequencies parse to angular
rad/ns (a bare number means GHz); times parse to ns (bare means ns);
``E_C_over_h`` stays an ordinary frequency in GHz. Unknown keys are
rejected with their line number. Every device key defaults to the nominal
transducer value, so an empty file runs end to end.

Keys whose default is listed as ``auto`` (value <= 0) are derived at run
time from the pulse parameters.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .dynamics import TransducerParams
from .errorbudget import HardwareParams
from .exceptions import ConfigError
from .resourcecount import CountingScenario
from .units import GHZ, KHZ, MHZ, MS, US

_FREQ_SUFFIX = {"THz": 1e3, "GHz": 1.0, "MHz": 1e-3, "kHz": 1e-6, "Hz": 1e-9}
_TIME_SUFFIX = {"s": 1e9, "ms": 1e6, "us": 1e3, "ns": 1.0}

# kind: angfreq (rad/ns), freq (ordinary GHz), time (ns), float, int, str
KEY_TABLE: dict[str, tuple[str, object]] = {
    # transducer (device table values)
    "omega_m": ("angfreq", 5.0 * GHZ),
    "gamma_0": ("angfreq", 100.0 * KHZ),
    "gamma_b": ("angfreq", 25.0 * KHZ),
    "gamma_s": ("angfreq", 200.0 * KHZ),
    "delta_frac": ("float", 0.8),
    "n_b": ("float", 1.0),
    "G_peak": ("angfreq", 10.0 * MHZ),
    "tau_pulse_ns": ("time", 20.0),
    "kappa": ("angfreq", 1.0 * GHZ),
    "omega_q_detuned": ("angfreq", 4.8 * GHZ),
    "T_ramp_ns": ("time", 5.0),
    "E_C_over_h": ("freq", 0.2),
    "g_qm": ("angfreq", 15.0 * MHZ),
    "dim_transmon": ("int", 3),
    "dim_mech": ("int", 4),
    "dim_optics": ("int", 3),
    # integration and schedule
    "frame": ("str", "lab"),
    "dt_ns": ("time", 0.0),  # auto
    "sample_dt_ns": ("time", 0.1),
    "pump_center_ns": ("time", 0.0),  # auto
    "swap_start_ns": ("time", 0.0),  # auto
    "t_hold_ns": ("time", 0.0),  # auto
    "t_end_ns": ("time", 0.0),  # auto
    # swap sweep
    "sweep_lo_ns": ("time", 0.0),  # auto
    "sweep_hi_ns": ("time", 0.0),  # auto
    "grid_resolution_ns": ("time", 0.25),
    # bell
    "n_cycles": ("int", 200),
    "eta_PC": ("float", 0.99),
    "rel_phase": ("float", 0.0),
    # budget
    "kappa_e": ("angfreq", 1.0 * GHZ),
    "kappa_i": ("angfreq", 0.0965 * GHZ),
    "tau_budget_ns": ("time", 400.0),
    "t_swap_ns": ("time", 100.0),
    "t_cycle_ns": ("time", 1000.0),
    "gamma_budget": ("angfreq", 500.0 * KHZ),
    "n_b_gamma_b": ("angfreq", 25.0 * KHZ),
    "Gamma_OM_tau": ("float", 0.1),
    "eta_RO": ("float", 0.99),
    "T_phi_m": ("time", 100.0 * US),
    "T_phi_DR": ("time", 1.0 * MS),
    "T_1_DR": ("time", 1.0 * MS),
    "extra_optical_loss": ("float", 0.0),
    "trials": ("int", 100000),
    # graph
    "graph": ("str", "ring:6"),
    # counting
    "ring_sizes": ("str", "6"),
    "ghz_photons": ("int", 6),
    "ghz_success": ("float", 1.0 / 32.0),
    "n_ghz_per_ring": ("int", 3),
    "n_fusions": ("int", 3),
    "fusion_success": ("float", 0.5),
    "p_block": ("float", 0.2),
    "margin": ("float", 2.0),
    # shared
    "seed": ("int", 12345),
}

SCENARIOS = ("simulate", "sweep-swap", "bell", "budget", "graph", "count", "validate")

_NUM_RE = re.compile(r"^([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*([A-Za-z]*)$")


def _parse_number(value: str, kind: str, key: str, line: int) -> float:
    m = _NUM_RE.match(value)
    if not m:
        raise ConfigError(f"key {key!r}: cannot parse number {value!r}", line)
    num = float(m.group(1))
    suffix = m.group(2)
    if kind in ("angfreq", "freq"):
        if suffix == "":
            ghz = num
        elif suffix in _FREQ_SUFFIX:
            ghz = num * _FREQ_SUFFIX[suffix]
        else:
            raise ConfigError(f"key {key!r}: unknown frequency unit {suffix!r}", line)
        return ghz * GHZ if kind == "angfreq" else ghz
    if kind == "time":
        if suffix == "":
            return num
        if suffix in _TIME_SUFFIX:
            return num * _TIME_SUFFIX[suffix]
        raise ConfigError(f"key {key!r}: unknown time unit {suffix!r}", line)
    if suffix:
        raise ConfigError(f"key {key!r}: unexpected unit {suffix!r}", line)
    return num


@dataclass
class RunConfig:
    scenario: str
    params: dict
    output_dir: Path
    seed: int


def default_params() -> dict:
    return {k: v for k, (_, v) in KEY_TABLE.items()}


def parse_config_text(text: str) -> dict:
    params = default_params()
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", ln)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in KEY_TABLE:
            raise ConfigError(f"unknown key {key!r}", ln)
        kind, _default = KEY_TABLE[key]
        if kind == "str":
            params[key] = value
        elif kind == "int":
            try:
                params[key] = int(value)
            except ValueError:
                raise ConfigError(f"key {key!r}: expected integer, got {value!r}", ln) from None
        else:
            params[key] = _parse_number(value, kind, key, ln)
    return params


def load_config(path: str | Path | None) -> dict:
    if path is None:
        return default_params()
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {p}")
    return parse_config_text(p.read_text(encoding="utf-8"))


def transducer_from(params: dict, with_optics: bool = False) -> TransducerParams:
    dims = (int(params["dim_transmon"]), int(params["dim_mech"]))
    if with_optics:
        dims = dims + (int(params["dim_optics"]),)
    return TransducerParams(
        omega_m=params["omega_m"],
        gamma_0=params["gamma_0"],
        gamma_b=params["gamma_b"],
        gamma_s=params["gamma_s"],
        delta_frac=params["delta_frac"],
        n_b=params["n_b"],
        G_peak=params["G_peak"],
        tau_pulse=params["tau_pulse_ns"],
        kappa=params["kappa"],
        omega_q_detuned=params["omega_q_detuned"],
        T_ramp=params["T_ramp_ns"],
        E_C_over_h=params["E_C_over_h"],
        g_qm=params["g_qm"],
        dims=dims,
    )


def hardware_from(params: dict) -> HardwareParams:
    return HardwareParams(
        kappa_e=params["kappa_e"],
        kappa_i=params["kappa_i"],
        tau=params["tau_budget_ns"],
        t_swap=params["t_swap_ns"],
        t_cycle=params["t_cycle_ns"],
        gamma=params["gamma_budget"],
        n_b_gamma_b=params["n_b_gamma_b"],
        Gamma_OM_tau=params["Gamma_OM_tau"],
        eta_PC=params["eta_PC"],
        eta_RO=params["eta_RO"],
        T_phi_m=params["T_phi_m"],
        T_phi_DR=params["T_phi_DR"],
        T_1_DR=params["T_1_DR"],
        extra_optical_loss=params["extra_optical_loss"],
    )


def counting_from(params: dict) -> CountingScenario:
    return CountingScenario(
        ghz_photons=int(params["ghz_photons"]),
        ghz_success=params["ghz_success"],
        n_ghz_per_ring=int(params["n_ghz_per_ring"]),
        n_fusions=int(params["n_fusions"]),
        fusion_success=params["fusion_success"],
        ring_size=6,
        p_block=params["p_block"],
    )


def ring_sizes_from(params: dict) -> list[int]:
    raw = str(params["ring_sizes"])
    try:
        sizes = [int(s) for s in raw.replace(",", " ").split()]
    except ValueError:
        raise ConfigError(f"ring_sizes: expected integers, got {raw!r}") from None
    if not sizes:
        raise ConfigError("ring_sizes is empty")
    return sizes


def opt(params: dict, key: str) -> float | None:
    """Auto-derived keys: value <= 0 means 'pick the default at run time'."""
    v = params[key]
    return None if v <= 0 else float(v)
