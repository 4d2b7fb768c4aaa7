"""Parameter registry for the filamentary-switching simulator.

Two device flavours are built in: ``R`` (plain SiO2 stack) and ``NPs``
(the same stack with a Pt nanoparticle plane under the top electrode).
Activation energies are carried in eV; every other quantity is SI.
Values that cannot be measured directly (rate prefactors, effective
conductivities, the lumped thermal resistance) live in a versioned
calibration file so they can be swapped without touching code.
"""

from __future__ import annotations

import configparser
import dataclasses
import importlib.resources
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

KB_EV = 8.617333262e-5  # Boltzmann constant, eV/K
KB_J = 1.380649e-23  # Boltzmann constant, J/K
Q_E = 1.602176634e-19  # elementary charge, C

T_AMBIENT = 300.0  # K, default bath temperature

# Sampled activation energies are clamped (never resampled) to this range.
ENERGY_CLAMP_EV = (0.05, 5.0)

CAL_SCHEMA_VERSION = 1

PRESET_NAMES = ("R", "NPs")


@dataclass(frozen=True)
class MaterialParams:
    """Barrier heights, rate prefactors and transport coefficients."""

    E_drift: float  # eV, cation drift (growth) barrier
    E_diff: float  # eV, lateral diffusion (dissolution) barrier
    E_soret: float  # eV, thermo-diffusion activation scale
    alpha: float  # dimensionless barrier-lowering factor on q*psi
    A: float  # m/s, drift rate prefactor
    B: float  # m^2/s, diffusion rate prefactor
    C: float  # m^3/s, thermo-diffusion prefactor (rate = C/phi * S * gradT)
    sigma_cf: float  # S/m, effective filament conductivity
    sigma_ox: float  # S/m, oxide background conductivity
    k_th_cf: float  # W/(m K), filament thermal conductivity
    k_th_ox: float  # W/(m K), oxide thermal conductivity
    rho_cp: float  # J/(m^3 K), volumetric heat capacity
    R_th: float  # K/W, lumped thermal resistance (compact path)

    def validate(self) -> "MaterialParams":
        for name in ("E_drift", "E_diff", "E_soret"):
            value = getattr(self, name)
            if not (0.0 < value < 5.0):
                raise ValueError(f"{name} must lie in (0, 5) eV, got {value}")
        for name in ("alpha", "A", "B", "C", "sigma_cf", "sigma_ox",
                     "k_th_cf", "k_th_ox", "rho_cp", "R_th"):
            value = getattr(self, name)
            if not (value > 0.0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value}")
        return self


@dataclass(frozen=True)
class GeometryParams:
    """Stack and filament geometry (axisymmetric, BE at z=0)."""

    t_ox: float  # m, oxide thickness
    phi_be: float  # m, reference tip diameter at SET completion
    phi_te: float  # m, fixed wide-end diameter at the TE
    phi_min: float  # m, numerical floor for the tip diameter
    phi_max: float  # m, ceiling for the tip diameter
    r_domain: float  # m, radial extent of the PDE domain
    te_side: float  # m, top electrode square side (device area)
    np_present: bool  # Pt nanoparticle plane under the TE
    np_diameter: float  # m
    np_density: float  # 1/m^2, areal density of nanoparticles

    def validate(self) -> "GeometryParams":
        if not (self.t_ox > 0.0):
            raise ValueError(f"t_ox must be positive, got {self.t_ox}")
        if not (0.0 < self.phi_min < self.phi_be < self.phi_max):
            raise ValueError(
                "need 0 < phi_min < phi_be < phi_max, got "
                f"{self.phi_min}, {self.phi_be}, {self.phi_max}")
        if not (self.phi_te > self.phi_min):
            raise ValueError("phi_te must exceed phi_min")
        if self.r_domain < 2.5 * self.phi_max:
            raise ValueError("r_domain too small for the widest filament")
        if not (self.te_side > 0.0):
            raise ValueError("te_side must be positive")
        if self.np_present and not (self.np_diameter > 0.0 and self.np_density > 0.0):
            raise ValueError("nanoparticle plane requires positive size and density")
        return self

    @property
    def np_fill_fraction(self) -> float:
        """Areal fraction of the NP plane covered by particles."""
        if not self.np_present:
            return 0.0
        return min(1.0, self.np_density * math.pi * self.np_diameter ** 2 / 4.0)


@dataclass(frozen=True)
class VariabilityParams:
    """Gaussian jitter on barriers, device-to-device and cycle-to-cycle."""

    sd_E_drift_dev: float  # eV
    sd_E_diff_dev: float  # eV
    sd_E_drift_cyc: float  # eV
    sd_E_diff_cyc: float  # eV

    def validate(self) -> "VariabilityParams":
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if value < 0.0 or not math.isfinite(value):
                raise ValueError(f"{field.name} must be >= 0, got {value}")
        return self


@dataclass(frozen=True)
class ConductionParams:
    """Compact-path conduction closure shared by both presets."""

    R0_gap: float  # ohm, gap resistance scale at zero gap
    g0: float  # m, gap resistance e-folding length
    chi: float  # 1/V, self-rectification strength
    pol_floor: float  # floor for the rectification denominator
    gap_max: float  # m, fully ruptured gap length
    l_active: float  # m, active (tip) segment length for field/heat lumping
    l_grad: float  # m, lumped thermal gradient length
    phi_rupture: float  # m, tip diameter at which rupture opens the gap

    def validate(self) -> "ConductionParams":
        for name in ("R0_gap", "g0", "chi", "pol_floor", "gap_max",
                     "l_active", "l_grad", "phi_rupture"):
            value = getattr(self, name)
            if value <= 0.0 or not math.isfinite(value):
                raise ValueError(f"{name} must be positive, got {value}")
        if self.pol_floor >= 1.0:
            raise ValueError("pol_floor must be < 1")
        return self


@dataclass(frozen=True)
class MosfetParams:
    """Square-law n-MOSFET used as the series selector/compliance element."""

    v_th: float  # V, threshold
    k_gain: float  # A/V^2, transconductance parameter
    lam: float  # 1/V, channel-length modulation
    r_reverse: float  # ohm, composite reverse-conduction on-resistance

    def validate(self) -> "MosfetParams":
        if not (self.v_th > 0.0):
            raise ValueError("v_th must be positive")
        if not (self.k_gain > 0.0):
            raise ValueError("k_gain must be positive")
        if self.lam < 0.0:
            raise ValueError("lambda must be >= 0")
        if not (self.r_reverse > 0.0):
            raise ValueError("r_reverse must be positive")
        return self


@dataclass(frozen=True)
class SamplePreset:
    """Everything needed to instantiate one device flavour."""

    name: str
    material: MaterialParams
    geometry: GeometryParams
    variability: VariabilityParams
    conduction: ConductionParams
    mosfet: MosfetParams
    kin_window: tuple[float, float]  # V, amplitude window for the t_set slope fit
    cal_version: int
    cal_name: str

    def validate(self) -> "SamplePreset":
        if self.name not in PRESET_NAMES:
            raise ValueError(f"unknown preset name {self.name!r}")
        self.material.validate()
        self.geometry.validate()
        self.variability.validate()
        self.conduction.validate()
        self.mosfet.validate()
        lo, hi = self.kin_window
        if not (0.0 < lo < hi):
            raise ValueError(f"bad kinetics fit window {self.kin_window}")
        return self


def default_calibration_path() -> Path:
    """Path of the packaged default calibration file."""
    return Path(importlib.resources.files("cbramsim") / "defaults.cal")


def _parse_scalar(raw: str):
    text = raw.strip()
    low = text.lower()
    if low in ("true", "yes", "on"):
        return True
    if low in ("false", "no", "off"):
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def read_calibration(path: str | Path | None = None) -> dict:
    """Read a sectioned key=value calibration file into nested dicts.

    The file must carry a ``[schema]`` section whose ``version`` matches
    the schema this code understands.
    """
    cal_path = Path(path) if path is not None else default_calibration_path()
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    loaded = parser.read(cal_path)
    if not loaded:
        raise ValueError(f"calibration file not found: {cal_path}")
    if "schema" not in parser:
        raise ValueError(f"calibration file {cal_path} has no [schema] section")
    data: dict[str, dict] = {}
    for section in parser.sections():
        data[section] = {k: _parse_scalar(v) for k, v in parser[section].items()}
    version = data["schema"].get("version")
    if version != CAL_SCHEMA_VERSION:
        raise ValueError(
            f"calibration schema version {version!r} not supported "
            f"(expected {CAL_SCHEMA_VERSION})")
    return data


def apply_overrides(cal: dict, overrides: dict[str, float] | None) -> dict:
    """Apply ``section.key=value`` overrides onto a calibration dict."""
    if not overrides:
        return cal
    out = {sec: dict(kv) for sec, kv in cal.items()}
    for dotted, value in overrides.items():
        if "." not in dotted:
            raise ValueError(f"override key must be 'section.key', got {dotted!r}")
        section, key = dotted.rsplit(".", 1)
        if section not in out or key not in out[section]:
            raise ValueError(f"unknown calibration entry {dotted!r}")
        out[section][key] = value if not isinstance(value, str) else _parse_scalar(value)
    return out


def _material_from(cal: dict, name: str) -> MaterialParams:
    sec = cal[f"material.{name}"]
    return MaterialParams(
        E_drift=sec["e_drift_ev"],
        E_diff=sec["e_diff_ev"],
        E_soret=sec["e_soret_ev"],
        alpha=sec["alpha"],
        A=sec["a_m_per_s"],
        B=sec["b_m2_per_s"],
        C=sec["c_m3_per_s"],
        sigma_cf=sec["sigma_cf_s_per_m"],
        sigma_ox=sec["sigma_ox_s_per_m"],
        k_th_cf=sec["k_th_cf_w_per_mk"],
        k_th_ox=sec["k_th_ox_w_per_mk"],
        rho_cp=sec["rho_cp_j_per_m3k"],
        R_th=sec["r_th_k_per_w"],
    )


def _geometry_from(cal: dict, name: str) -> GeometryParams:
    sec = cal[f"geometry.{name}"]
    return GeometryParams(
        t_ox=sec["t_ox_m"],
        phi_be=sec["phi_be_m"],
        phi_te=sec["phi_te_m"],
        phi_min=sec["phi_min_m"],
        phi_max=sec["phi_max_m"],
        r_domain=sec["r_domain_m"],
        te_side=sec["te_side_m"],
        np_present=bool(sec["np_present"]),
        np_diameter=sec["np_diameter_m"],
        np_density=sec["np_density_per_m2"],
    )


def _variability_from(cal: dict, name: str) -> VariabilityParams:
    sec = cal[f"variability.{name}"]
    return VariabilityParams(
        sd_E_drift_dev=sec["sd_e_drift_dev_ev"],
        sd_E_diff_dev=sec["sd_e_diff_dev_ev"],
        sd_E_drift_cyc=sec["sd_e_drift_cyc_ev"],
        sd_E_diff_cyc=sec["sd_e_diff_cyc_ev"],
    )


def load_preset(name: str,
                calibration: str | Path | dict | None = None,
                overrides: dict[str, float] | None = None) -> SamplePreset:
    """Build a validated :class:`SamplePreset` from a calibration source.

    ``calibration`` may be a path, an already-parsed dict, or None for the
    packaged defaults. ``overrides`` are ``section.key -> value`` pairs.
    """
    if name not in PRESET_NAMES:
        raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    cal = calibration if isinstance(calibration, dict) else read_calibration(calibration)
    cal = apply_overrides(cal, overrides)
    cond = cal["conduction"]
    fet = cal["mosfet"]
    kin = cal[f"kinetics.{name}"]
    preset = SamplePreset(
        name=name,
        material=_material_from(cal, name),
        geometry=_geometry_from(cal, name),
        variability=_variability_from(cal, name),
        conduction=ConductionParams(
            R0_gap=cond["r0_gap_ohm"],
            g0=cond["g0_m"],
            chi=cond["chi_per_v"],
            pol_floor=cond["pol_floor"],
            gap_max=cond["gap_max_m"],
            l_active=cond["l_active_m"],
            l_grad=cond["l_grad_m"],
            phi_rupture=cond["phi_rupture_m"],
        ),
        mosfet=MosfetParams(
            v_th=fet["v_th_v"],
            k_gain=fet["k_gain_a_per_v2"],
            lam=fet["lambda_per_v"],
            r_reverse=fet["r_reverse_ohm"],
        ),
        kin_window=(kin["fit_window_lo_v"], kin["fit_window_hi_v"]),
        cal_version=cal["schema"]["version"],
        cal_name=str(cal["schema"].get("name", "unnamed")),
    )
    return preset.validate()


def clamp_energy(value: float) -> float:
    lo, hi = ENERGY_CLAMP_EV
    return min(max(value, lo), hi)


def perturb_material(mat: MaterialParams, d_drift: float, d_diff: float) -> MaterialParams:
    """Return a copy of ``mat`` with clamped barrier offsets applied."""
    return dataclasses.replace(
        mat,
        E_drift=clamp_energy(mat.E_drift + d_drift),
        E_diff=clamp_energy(mat.E_diff + d_diff),
    )


def sample_device_instance(preset: SamplePreset,
                           rng: np.random.Generator) -> MaterialParams:
    """Draw one device's material parameters (device-level jitter only)."""
    var = preset.variability
    d_drift = rng.normal(0.0, var.sd_E_drift_dev) if var.sd_E_drift_dev > 0 else 0.0
    d_diff = rng.normal(0.0, var.sd_E_diff_dev) if var.sd_E_diff_dev > 0 else 0.0
    return perturb_material(preset.material, d_drift, d_diff)


def sample_cycle_instance(base: MaterialParams,
                          preset: SamplePreset,
                          rng: np.random.Generator) -> MaterialParams:
    """Draw a cycle's effective material params on top of a device draw."""
    var = preset.variability
    d_drift = rng.normal(0.0, var.sd_E_drift_cyc) if var.sd_E_drift_cyc > 0 else 0.0
    d_diff = rng.normal(0.0, var.sd_E_diff_cyc) if var.sd_E_diff_cyc > 0 else 0.0
    return perturb_material(base, d_drift, d_diff)
