"""Run configuration: strict JSON in, validated dataclasses out.

Every key is checked against the schema before any computation runs;
unknown keys are rejected by name, so a typo cannot silently fall back
to a default.  The full default configuration ships in
configs/default.json and is documented key by key in the README.
"""

import json
import math
from dataclasses import dataclass, field

from .constants import PhysicalConstants
from .losses import PSDModel, TrapGeometry
from .noninertial import RotationContext

FORMATS = ("csv", "json", "both")


class ConfigError(ValueError):
    """Invalid run configuration; str(err) names the offending key."""


@dataclass(frozen=True)
class ScanSettings:
    freq_max_hz: float = 1000.0
    freq_step_hz: float = 0.5
    initial_levels: tuple = (1, 2)
    rabi_pulse_s: float = 0.1   # pi/Omega


@dataclass(frozen=True)
class FallTimeSettings:
    min_s: float = 1e-6
    max_s: float = 1e-3
    points: int = 49
    max_level: int = 5


@dataclass(frozen=True)
class GradientTimeSettings:
    min_s: float = 1e-3
    max_s: float = 1000.0
    points: int = 61
    transitions: tuple = ((1, 2), (2, 7))


@dataclass(frozen=True)
class OutputSettings:
    directory: str = "out"
    format: str = "csv"


@dataclass(frozen=True)
class RunConfig:
    n_max: int = 100
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    geometry: TrapGeometry = field(default_factory=TrapGeometry)
    psd: PSDModel = field(default_factory=PSDModel)
    rotation: RotationContext = field(default_factory=RotationContext)
    level_min: int = 1
    level_max: int = 30
    scan: ScanSettings = field(default_factory=ScanSettings)
    alpha_list: tuple = (1e-6, 1e-5, 1e-4)
    fall_times: FallTimeSettings = field(default_factory=FallTimeSettings)
    gradient_times: GradientTimeSettings = field(default_factory=GradientTimeSettings)
    output: OutputSettings = field(default_factory=OutputSettings)

    @property
    def levels(self):
        return range(self.level_min, self.level_max + 1)

    def to_dict(self):
        """Plain-dict echo of the effective configuration (for sidecars)."""
        c, g, p, r = self.constants, self.geometry, self.psd, self.rotation
        return {
            "n_max": self.n_max,
            "constants": {
                "neutron_mass": c.neutron_mass,
                "gravity": c.gravity,
                "hbar": c.hbar,
                "planck_h": c.planck_h,
                "neutron_magnetic_moment": c.neutron_magnetic_moment,
                "earth_rotation_rate": c.earth_rotation_rate,
                "beta_lifetime": c.beta_lifetime,
            },
            "geometry": {
                "mirror_length": g.mirror_length,
                "wall_angle": g.wall_angle,
                "brink_size": g.brink_size,
                "velocity": g.velocity,
                "effective_hole_factor": g.effective_hole_factor,
            },
            "psd": {
                "amplitude_nm2_mm": p.amplitude_nm2_mm,
                "exponent": p.exponent,
                "k_ref_inv_m": p.k_ref,
            },
            "rotation": {
                "latitude_cos": r.latitude_cos,
                "v_ns": r.v_ns,
            },
            "levels": {"min": self.level_min, "max": self.level_max},
            "scan": {
                "freq_max_hz": self.scan.freq_max_hz,
                "freq_step_hz": self.scan.freq_step_hz,
                "initial_levels": list(self.scan.initial_levels),
                "rabi_pulse_s": self.scan.rabi_pulse_s,
            },
            "alpha_list": list(self.alpha_list),
            "fall_times": {
                "min_s": self.fall_times.min_s,
                "max_s": self.fall_times.max_s,
                "points": self.fall_times.points,
                "max_level": self.fall_times.max_level,
            },
            "gradient_times": {
                "min_s": self.gradient_times.min_s,
                "max_s": self.gradient_times.max_s,
                "points": self.gradient_times.points,
                "transitions": [list(t) for t in self.gradient_times.transitions],
            },
            "output": {
                "directory": self.output.directory,
                "format": self.output.format,
            },
        }


def default_config_dict():
    return RunConfig().to_dict()


# ---------------------------------------------------------------------------
# validation

def _require_mapping(raw, key):
    if not isinstance(raw, dict):
        raise ConfigError(f"{key}: expected an object")
    return raw


def _check_keys(raw, allowed, section):
    for k in raw:
        if k not in allowed:
            where = f"{section}.{k}" if section else k
            raise ConfigError(f"unknown key: {where}")


def _number(raw, section, key, default, minimum=None, maximum=None,
            exclusive_min=False):
    value = raw.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section}.{key}: expected a number")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{section}.{key}: must be finite")
    if minimum is not None and (value <= minimum if exclusive_min
                                else value < minimum):
        op = ">" if exclusive_min else ">="
        raise ConfigError(f"{section}.{key}: must be {op} {minimum}")
    if maximum is not None and value > maximum:
        raise ConfigError(f"{section}.{key}: must be <= {maximum}")
    return value


def _integer(raw, section, key, default, minimum=1):
    value = raw.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{section}.{key}: expected an integer")
    if value < minimum:
        raise ConfigError(f"{section}.{key}: must be >= {minimum}")
    return value


def validate_config(raw):
    """Turn a raw dict into a RunConfig, rejecting anything off-schema."""
    defaults = RunConfig()
    raw = _require_mapping(raw, "config")
    _check_keys(raw, {"n_max", "constants", "geometry", "psd", "rotation",
                      "levels", "scan", "alpha_list", "fall_times",
                      "gradient_times", "output"}, "")

    n_max = _integer(raw, "", "n_max", defaults.n_max, minimum=2)

    sec = _require_mapping(raw.get("constants", {}), "constants")
    _check_keys(sec, {"neutron_mass", "gravity", "hbar", "planck_h",
                      "neutron_magnetic_moment", "earth_rotation_rate",
                      "beta_lifetime"}, "constants")
    dc = defaults.constants
    try:
        constants = PhysicalConstants(
            neutron_mass=_number(sec, "constants", "neutron_mass",
                                 dc.neutron_mass, 0.0, exclusive_min=True),
            gravity=_number(sec, "constants", "gravity", dc.gravity,
                            0.0, exclusive_min=True),
            hbar=_number(sec, "constants", "hbar", dc.hbar,
                         0.0, exclusive_min=True),
            planck_h=_number(sec, "constants", "planck_h", dc.planck_h,
                             0.0, exclusive_min=True),
            neutron_magnetic_moment=_number(
                sec, "constants", "neutron_magnetic_moment",
                dc.neutron_magnetic_moment, 0.0, exclusive_min=True),
            earth_rotation_rate=_number(
                sec, "constants", "earth_rotation_rate",
                dc.earth_rotation_rate, 0.0, exclusive_min=True),
            beta_lifetime=_number(sec, "constants", "beta_lifetime",
                                  dc.beta_lifetime, 0.0, exclusive_min=True),
        )
    except ValueError as exc:
        raise ConfigError(f"constants: {exc}") from exc

    sec = _require_mapping(raw.get("geometry", {}), "geometry")
    _check_keys(sec, {"mirror_length", "wall_angle", "brink_size", "velocity",
                      "effective_hole_factor"}, "geometry")
    dg = defaults.geometry
    try:
        geometry = TrapGeometry(
            mirror_length=_number(sec, "geometry", "mirror_length",
                                  dg.mirror_length, 0.0, exclusive_min=True),
            wall_angle=_number(sec, "geometry", "wall_angle", dg.wall_angle,
                               0.0, maximum=0.1),
            brink_size=_number(sec, "geometry", "brink_size", dg.brink_size, 0.0),
            velocity=_number(sec, "geometry", "velocity", dg.velocity,
                             0.0, exclusive_min=True),
            effective_hole_factor=_number(
                sec, "geometry", "effective_hole_factor",
                dg.effective_hole_factor, 0.0, exclusive_min=True),
        )
    except ValueError as exc:
        raise ConfigError(f"geometry: {exc}") from exc

    sec = _require_mapping(raw.get("psd", {}), "psd")
    _check_keys(sec, {"amplitude_nm2_mm", "exponent", "k_ref_inv_m"}, "psd")
    dp = defaults.psd
    try:
        psd = PSDModel(
            amplitude_nm2_mm=_number(sec, "psd", "amplitude_nm2_mm",
                                     dp.amplitude_nm2_mm, 0.0,
                                     exclusive_min=True),
            exponent=_number(sec, "psd", "exponent", dp.exponent),
            k_ref=_number(sec, "psd", "k_ref_inv_m", dp.k_ref, 0.0,
                          exclusive_min=True),
        )
    except ValueError as exc:
        raise ConfigError(f"psd: {exc}") from exc

    sec = _require_mapping(raw.get("rotation", {}), "rotation")
    _check_keys(sec, {"latitude_cos", "v_ns"}, "rotation")
    dr = defaults.rotation
    try:
        rotation = RotationContext(
            latitude_cos=_number(sec, "rotation", "latitude_cos",
                                 dr.latitude_cos, 0.0, maximum=1.0),
            v_ns=_number(sec, "rotation", "v_ns", dr.v_ns),
        )
    except ValueError as exc:
        raise ConfigError(f"rotation: {exc}") from exc

    sec = _require_mapping(raw.get("levels", {}), "levels")
    _check_keys(sec, {"min", "max"}, "levels")
    level_min = _integer(sec, "levels", "min", defaults.level_min)
    level_max = _integer(sec, "levels", "max", defaults.level_max)
    if level_min > level_max:
        raise ConfigError("levels: min must not exceed max")
    if level_max >= n_max:
        raise ConfigError("levels.max: must be below n_max (thresholds need "
                          "the next level up)")

    sec = _require_mapping(raw.get("scan", {}), "scan")
    _check_keys(sec, {"freq_max_hz", "freq_step_hz", "initial_levels",
                      "rabi_pulse_s"}, "scan")
    ds = defaults.scan
    initial_levels = sec.get("initial_levels", list(ds.initial_levels))
    if (not isinstance(initial_levels, list) or not initial_levels
            or not all(isinstance(v, int) and not isinstance(v, bool)
                       and 1 <= v < n_max for v in initial_levels)):
        raise ConfigError("scan.initial_levels: expected a non-empty list of "
                          "level indices below n_max")
    scan = ScanSettings(
        freq_max_hz=_number(sec, "scan", "freq_max_hz", ds.freq_max_hz,
                            0.0, exclusive_min=True),
        freq_step_hz=_number(sec, "scan", "freq_step_hz", ds.freq_step_hz,
                             0.0, exclusive_min=True),
        initial_levels=tuple(initial_levels),
        rabi_pulse_s=_number(sec, "scan", "rabi_pulse_s", ds.rabi_pulse_s,
                             0.0, exclusive_min=True),
    )
    if scan.freq_step_hz > scan.freq_max_hz:
        raise ConfigError("scan.freq_step_hz: must not exceed freq_max_hz")

    alpha_list = raw.get("alpha_list", list(defaults.alpha_list))
    if (not isinstance(alpha_list, list) or not alpha_list
            or not all(isinstance(a, (int, float)) and not isinstance(a, bool)
                       and 0.0 <= float(a) < 0.1 for a in alpha_list)):
        raise ConfigError("alpha_list: expected a non-empty list of angles "
                          "in [0, 0.1) rad")

    sec = _require_mapping(raw.get("fall_times", {}), "fall_times")
    _check_keys(sec, {"min_s", "max_s", "points", "max_level"}, "fall_times")
    df = defaults.fall_times
    fall_times = FallTimeSettings(
        min_s=_number(sec, "fall_times", "min_s", df.min_s, 0.0,
                      exclusive_min=True),
        max_s=_number(sec, "fall_times", "max_s", df.max_s, 0.0,
                      maximum=5e-3, exclusive_min=True),
        points=_integer(sec, "fall_times", "points", df.points, minimum=2),
        max_level=_integer(sec, "fall_times", "max_level", df.max_level),
    )
    if fall_times.min_s >= fall_times.max_s:
        raise ConfigError("fall_times: min_s must be below max_s")
    if fall_times.max_level >= n_max:
        raise ConfigError("fall_times.max_level: must be below n_max")

    sec = _require_mapping(raw.get("gradient_times", {}), "gradient_times")
    _check_keys(sec, {"min_s", "max_s", "points", "transitions"},
                "gradient_times")
    dgt = defaults.gradient_times
    transitions = sec.get("transitions",
                          [list(t) for t in dgt.transitions])
    if (not isinstance(transitions, list) or not transitions
            or not all(isinstance(t, list) and len(t) == 2
                       and all(isinstance(v, int) and not isinstance(v, bool)
                               and 1 <= v <= n_max for v in t)
                       and t[0] != t[1] for t in transitions)):
        raise ConfigError("gradient_times.transitions: expected a non-empty "
                          "list of distinct level pairs within the table")
    gradient_times = GradientTimeSettings(
        min_s=_number(sec, "gradient_times", "min_s", dgt.min_s, 0.0,
                      exclusive_min=True),
        max_s=_number(sec, "gradient_times", "max_s", dgt.max_s, 0.0,
                      exclusive_min=True),
        points=_integer(sec, "gradient_times", "points", dgt.points,
                        minimum=2),
        transitions=tuple(tuple(t) for t in transitions),
    )
    if gradient_times.min_s >= gradient_times.max_s:
        raise ConfigError("gradient_times: min_s must be below max_s")

    sec = _require_mapping(raw.get("output", {}), "output")
    _check_keys(sec, {"directory", "format"}, "output")
    directory = sec.get("directory", defaults.output.directory)
    if not isinstance(directory, str) or not directory:
        raise ConfigError("output.directory: expected a non-empty string")
    fmt = sec.get("format", defaults.output.format)
    if fmt not in FORMATS:
        raise ConfigError(f"output.format: expected one of {FORMATS}")

    return RunConfig(
        n_max=n_max, constants=constants, geometry=geometry, psd=psd,
        rotation=rotation, level_min=level_min, level_max=level_max,
        scan=scan, alpha_list=tuple(float(a) for a in alpha_list),
        fall_times=fall_times, gradient_times=gradient_times,
        output=OutputSettings(directory=directory, format=fmt),
    )


def load_config(path=None):
    """Read and validate a JSON config file; defaults when path is None."""
    if path is None:
        return RunConfig()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    return validate_config(raw)
