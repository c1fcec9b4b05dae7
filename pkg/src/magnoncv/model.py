"""Physical couplings, the anisotropy factor, and validity-domain checks.

The uniaxial easy-axis anisotropy enters every closed form through the single
factor kappa = 1 + 2K/(zJ) (easy axis collinear with the DM vector). Spin S
scales energies only; the entanglement quantities depend on gamma, D/J and
kappa alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

from .errors import ValidationError
from .lattice import Lattice, get_lattice, lattice_from_config


@dataclass(frozen=True, eq=False)
class ModelParams:
    """Couplings in meV plus the lattice: J > 0 exchange, D >= 0 DM strength,
    K uniaxial anisotropy, spin S > 0."""

    lattice: Lattice
    J: float
    D: float = 0.0
    K: float = 0.0
    S: float = 0.5

    @property
    def z(self) -> int:
        return self.lattice.z

    @property
    def kappa(self) -> float:
        return 1.0 + 2.0 * self.K / (self.z * self.J)

    @property
    def dj(self) -> float:
        return self.D / self.J

    @property
    def full_zone_stable(self) -> bool:
        """Whether every |gamma| <= 1 lies inside both validity domains."""
        return abs(self.kappa) > math.sqrt(1.0 + self.dj**2)


@dataclass(frozen=True)
class DomainCheck:
    gamma_ok: bool
    Gamma_ok: bool
    messages: tuple

    @property
    def ok(self) -> bool:
        return self.gamma_ok and self.Gamma_ok


def validate(params: ModelParams) -> ModelParams:
    """Check couplings; returns the params unchanged when acceptable.

    The full-zone stability inequality kappa > sqrt(1 + (D/J)^2) is not
    enforced here: points outside the valid domain surface as per-point
    domain errors, and ``full_zone_stable`` reports the global guarantee.
    """
    if not (params.J > 0):
        raise ValidationError(f"exchange J must be positive, got {params.J}")
    if not (params.S > 0):
        raise ValidationError(f"spin S must be positive, got {params.S}")
    if params.D < 0:
        raise ValidationError(f"DM strength D must be >= 0, got {params.D}")
    if not (params.kappa > 0):
        raise ValidationError(
            f"anisotropy factor kappa = 1 + 2K/(zJ) = {params.kappa} must be positive"
        )
    return params


def check_domain(params: ModelParams, gamma: complex) -> DomainCheck:
    """Per-point validity of the two diagonalization stages.

    Stage 1 needs |gamma/kappa| < 1; stage 2 additionally needs |Gamma| < 1
    with Gamma = i D gamma / (J sqrt(kappa^2 - |gamma|^2)). Both collapse to
    the familiar |gamma| < 1 when D = 0 and K = 0.
    """
    kappa = params.kappa
    messages: List[str] = []
    t = abs(gamma)
    gamma_ok = t < kappa
    if not gamma_ok:
        messages.append(f"|gamma|={t:.6g} >= kappa={kappa:.6g}: first stage diverges")
        return DomainCheck(False, False, tuple(messages))
    if params.D == 0:
        return DomainCheck(True, True, ())
    gmod2 = kappa * kappa - t * t
    Gamma_mod = params.D * t / (params.J * math.sqrt(gmod2))
    Gamma_ok = Gamma_mod < 1.0
    if not Gamma_ok:
        messages.append(
            f"|Gamma|={Gamma_mod:.6g} >= 1: DM stage diverges at |gamma|={t:.6g}"
        )
    return DomainCheck(True, Gamma_ok, tuple(messages))


# Material presets. Only SrMnO3 ships with couplings; the other entries are
# well-studied antiferromagnets listed for convenience but requiring J (and
# D, K) from the user.
MATERIALS = {
    "SrMnO3": {
        "lattice": "simple_cubic",
        "J_meV": 17.1,
        "D_meV": 0.0,
        "K_meV": 0.0,
        "S": 1.5,
        "note": "perovskite antiferromagnet, nearest-neighbor exchange only",
    },
    "La2CuO4": {
        "lattice": "square",
        "J_meV": None,
        "note": "square-lattice antiferromagnet with DM interaction; supply couplings",
    },
    "FeBO3": {
        "lattice": None,
        "J_meV": None,
        "note": "canted antiferromagnet with DM interaction; supply lattice and couplings",
    },
    "CoCO3": {
        "lattice": None,
        "J_meV": None,
        "note": "canted antiferromagnet with DM interaction; supply lattice and couplings",
    },
}


def model_from_preset(name: str, **overrides) -> ModelParams:
    """Build ModelParams from a named material, allowing field overrides."""
    try:
        entry = MATERIALS[name]
    except KeyError:
        raise ValidationError(
            f"unknown material preset {name!r}; known: {', '.join(sorted(MATERIALS))}"
        ) from None
    merged = {
        "lattice": overrides.get("lattice", entry.get("lattice")),
        "J": overrides.get("J", entry.get("J_meV")),
        "D": overrides.get("D", entry.get("D_meV") or 0.0),
        "K": overrides.get("K", entry.get("K_meV") or 0.0),
        "S": overrides.get("S", entry.get("S") or 0.5),
    }
    if merged["lattice"] is None or merged["J"] is None:
        raise ValidationError(
            f"preset {name!r} has no built-in couplings ({entry['note']})"
        )
    if isinstance(merged["lattice"], str):
        merged["lattice"] = get_lattice(merged["lattice"])
    return validate(ModelParams(**merged))


def model_from_config(cfg: dict) -> ModelParams:
    """Build ModelParams from a config mapping.

    Accepts either {"preset": name, ...overrides} or inline couplings with
    keys lattice, J_meV, D_meV, K_meV, S.
    """
    if not isinstance(cfg, dict):
        if isinstance(cfg, str):
            return model_from_preset(cfg)
        raise ValidationError("model must be a mapping or a preset name")
    cfg = dict(cfg)
    preset = cfg.pop("preset", None)
    overrides = {}
    if "lattice" in cfg:
        overrides["lattice"] = lattice_from_config(cfg.pop("lattice"))
    for key, attr in (("J_meV", "J"), ("D_meV", "D"), ("K_meV", "K"), ("S", "S")):
        if key in cfg:
            overrides[attr] = float(cfg.pop(key))
    if cfg:
        raise ValidationError(f"unknown model keys: {', '.join(sorted(cfg))}")
    if preset is not None:
        return model_from_preset(preset, **overrides)
    missing = [k for k in ("lattice", "J") if k not in overrides]
    if missing:
        raise ValidationError(f"model config missing: {', '.join(missing)}")
    return validate(ModelParams(**overrides))
