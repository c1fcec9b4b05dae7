"""Two-stage diagonalization of the quadratic magnon Hamiltonian.

Stage 1 mixes the sublattice modes (a, b) into the exchange eigenmodes
(alpha, beta); with g = gamma/kappa,

    |u|^2 = 1/(2 sqrt(1 - |g|^2)) + 1/2,   v/u* = -(1 - sqrt(1 - |g|^2))/g.

Stage 2 absorbs the DM-induced alpha-beta mixing with the same algebra driven
by Gamma = i D gamma / (J sqrt(kappa^2 - |gamma|^2)). Both stages are
parameterized here with u (and eta) chosen real positive, so each reduces to
one squeeze magnitude r = artanh|v/u*| and one phase.

Phase closed forms, all verified at build time:

    stage 1:    phi      = pi - arg gamma
    stage 2:    phi~     = pi - arg Gamma = pi/2 - arg gamma
    composite:  phi^     = pi - arg[gamma (1 + i D/J)]
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .errors import DomainError
from .model import ModelParams

_PHASE_TOL = 1e-12


class Basis(str, Enum):
    """Which mode pair a squeeze parameterizes."""

    AB_HEISENBERG = "ab_heisenberg"
    ALPHABETA_DM = "alphabeta_dm"
    AB_TOTAL = "ab_total"


@dataclass(frozen=True)
class StageCoeffs:
    """One Bogoliubov stage: u real positive, all phase content in v.

    ``source_phase`` records the argument of the generating parameter
    (gamma for stage 1, Gamma for stage 2) so the vacuum limit ratio -> 0
    keeps a well-defined phase by continuity.
    """

    u_sq: float
    v_sq: float
    ratio: complex
    u: float
    v: complex
    source_phase: float


@dataclass(frozen=True)
class SqueezeParams:
    r: float
    phi: float
    basis: Basis


@dataclass(frozen=True)
class DispersionPoint:
    eps_heisenberg: float
    eps_full: float


def wrap_angle(x: float) -> float:
    """Map an angle to the branch (-pi, pi]."""
    y = math.remainder(x, math.tau)
    if y <= -math.pi:
        y += math.tau
    return y


def _stage_from(parameter: complex, what: str) -> StageCoeffs:
    mod2 = parameter.real**2 + parameter.imag**2
    if mod2 >= 1.0:
        raise DomainError(f"|{what}| = {math.sqrt(mod2):.6g} >= 1: stage diverges")
    s = math.sqrt(1.0 - mod2)
    u_sq = 0.5 / s + 0.5
    v_sq = u_sq - 1.0
    # -(1 - s)/parameter rewritten without cancellation at small modulus
    ratio = -parameter.conjugate() / (1.0 + s)
    u = math.sqrt(u_sq)
    return StageCoeffs(u_sq, v_sq, ratio, u, ratio * u, cmath.phase(parameter))


def stage1(gamma: complex, kappa: float = 1.0) -> StageCoeffs:
    """Exchange-stage coefficients from the structure factor (pre |gamma/kappa| < 1)."""
    return _stage_from(complex(gamma) / kappa, "gamma/kappa")


def gamma_dm(gamma: complex, params: ModelParams) -> complex:
    """Mixing parameter Gamma = i D gamma / (J sqrt(kappa^2 - |gamma|^2))."""
    kappa = params.kappa
    t2 = abs(gamma) ** 2
    rad = kappa * kappa - t2
    if rad <= 0.0:
        raise DomainError(f"|gamma| = {math.sqrt(t2):.6g} >= kappa = {kappa:.6g}")
    return 1j * params.D * complex(gamma) / (params.J * math.sqrt(rad))


def stage2(gamma: complex, params: ModelParams) -> Tuple[StageCoeffs, complex]:
    """DM-stage coefficients and Gamma itself (pre |Gamma| < 1)."""
    Gamma = gamma_dm(gamma, params)
    return _stage_from(Gamma, "Gamma"), Gamma


def dispersion_heisenberg(params: ModelParams, gamma: complex) -> float:
    """Exchange-only magnon energy z S J sqrt(kappa^2 - |gamma|^2), in meV."""
    rad = params.kappa**2 - abs(gamma) ** 2
    if rad < 0.0:
        raise DomainError(f"|gamma| = {abs(gamma):.6g} > kappa = {params.kappa:.6g}")
    return params.z * params.S * params.J * math.sqrt(rad)


def dispersion_full(params: ModelParams, gamma: complex) -> float:
    """Full magnon energy z S sqrt(J^2 (kappa^2 - |gamma|^2) - D^2 |gamma|^2).

    Equals dispersion_heisenberg * sqrt(1 - |Gamma|^2) on the common domain.
    """
    t2 = abs(gamma) ** 2
    rad = params.J**2 * (params.kappa**2 - t2) - params.D**2 * t2
    if rad < 0.0:
        raise DomainError(
            f"dispersion radicand negative at |gamma| = {math.sqrt(t2):.6g} "
            f"(D/J = {params.dj:.6g})"
        )
    return params.z * params.S * math.sqrt(rad)


def dispersion_point(params: ModelParams, gamma: complex) -> DispersionPoint:
    return DispersionPoint(
        dispersion_heisenberg(params, gamma), dispersion_full(params, gamma)
    )


def _checked_phase(ratio: complex, source_phase: float, what: str) -> float:
    if ratio == 0:
        return wrap_angle(math.pi - source_phase)
    phi = wrap_angle(cmath.phase(ratio))
    law = wrap_angle(math.pi - source_phase)
    if abs(wrap_angle(phi - law)) > _PHASE_TOL:
        raise ArithmeticError(
            f"{what} phase {phi!r} violates the closed law {law!r}"
        )
    return phi


def squeeze_params_stage(coeffs: StageCoeffs, basis: Basis) -> SqueezeParams:
    """Squeeze magnitude/phase of one stage: tanh r = |v/u*|, phi = arg(v/u*).

    The phase is cross-checked against the closed law pi - arg(parameter);
    at ratio = 0 the law value itself is used (phase continuity at vacuum).
    """
    t = abs(coeffs.ratio)
    if t >= 1.0:
        raise DomainError(f"|v/u*| = {t:.6g} >= 1")
    phi = _checked_phase(coeffs.ratio, coeffs.source_phase, Basis(basis).value)
    return SqueezeParams(math.atanh(t), phi, Basis(basis))


def composite_squeeze(
    s1: StageCoeffs,
    s2: StageCoeffs,
    *,
    gamma: Optional[complex] = None,
    dj: Optional[float] = None,
) -> SqueezeParams:
    """Combine both stages into the net (a, b) squeeze.

    tanh(r^) e^{i phi^} = (v eta* + u zeta) / (u* eta* + v* zeta), with u and
    eta real positive by convention. When gamma and dj are supplied the phase
    is verified against pi - arg[gamma (1 + i dj)].
    """
    num = s1.v * s2.u + s1.u * s2.v
    den = s1.u * s2.u + s1.v.conjugate() * s2.v
    q = num / den
    t = abs(q)
    if t >= 1.0:
        raise DomainError(f"composite |tanh r| = {t:.6g} >= 1")
    r = math.atanh(t)
    if t == 0.0:
        if gamma is not None and dj is not None and gamma != 0:
            phi = wrap_angle(math.pi - cmath.phase(complex(gamma) * (1 + 1j * dj)))
        else:
            phi = math.pi
    else:
        phi = wrap_angle(cmath.phase(q))
        if gamma is not None and dj is not None:
            law = wrap_angle(math.pi - cmath.phase(complex(gamma) * (1 + 1j * dj)))
            if abs(wrap_angle(phi - law)) > _PHASE_TOL:
                raise ArithmeticError(
                    f"composite phase {phi!r} violates the closed law {law!r}"
                )
    return SqueezeParams(r, phi, Basis.AB_TOTAL)
