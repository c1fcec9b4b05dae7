"""Truncated two-mode Fock-space engine.

This is the numerical workhorse used to verify every closed form in the
package and to compute excited-state entanglement, so it deliberately avoids
the analytic shortcuts it is meant to check: states are explicit amplitude
tables over |n_a, n_b>, operators act through ladder matrix elements, and
reduced-state spectra come from a Hermitian eigensolver.

Cost control: the reduced density matrix of a state whose amplitudes occupy
only a narrow band of occupation differences n_b - n_a is itself banded, with
entries outside the band exactly zero. Above a size threshold the spectrum is
therefore obtained with a banded Hermitian eigensolver; below it (and for
wide-band states) a dense one is used. Both paths are cross-checked in the
test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import CutoffError, ValidationError

_SQRT2 = math.sqrt(2.0)
_DENSE_LIMIT = 1200  # table size above which narrow-band states go banded
_BAND_LIMIT = 32


@dataclass(frozen=True)
class CutoffPolicy:
    """Adaptive truncation: start at ``initial``, double up to ``max`` until
    the analytically known tail weight drops below ``tail_tol``."""

    initial: int = 32
    max: int = 4096
    tail_tol: float = 1e-12

    def __post_init__(self):
        if self.initial < 2:
            raise ValidationError("cutoff must be at least 2")
        if self.initial > self.max:
            raise ValidationError("initial cutoff exceeds the maximum")
        if not self.tail_tol > 0:
            raise ValidationError("tail tolerance must be positive")


@dataclass
class TwoModeState:
    """Amplitude table indexed (n_a, n_b), 0 <= n < cutoff.

    ``norm_deficit`` tracks 1 - sum|amp|^2 left by truncation;
    ``last_norm`` is the norm an operator application had before it was
    renormalized away.
    """

    amplitudes: np.ndarray
    cutoff: int
    norm_deficit: float = 0.0
    last_norm: float = 1.0


def two_mode_squeezed(
    r: float, phi: float, policy: Optional[CutoffPolicy] = None
) -> TwoModeState:
    """Diagonal-pair state with amplitude e^{i n phi} tanh^n(r) / cosh(r) at (n, n).

    The truncated tail carries weight tanh^{2N}(r) exactly, which drives the
    cutoff search.
    """
    if policy is None:
        policy = CutoffPolicy()
    if not (r >= 0):
        raise ValidationError(f"squeeze magnitude must be >= 0, got {r}")
    x = math.tanh(r) ** 2
    n_cut = policy.initial
    while x > 0.0 and x**n_cut >= policy.tail_tol:
        if n_cut >= policy.max:
            raise CutoffError(
                f"cutoff {policy.max} insufficient for r = {r:.6g} "
                f"(tail {x**n_cut:.3g} >= {policy.tail_tol:.3g})"
            )
        n_cut = min(2 * n_cut, policy.max)
    n = np.arange(n_cut)
    diag = np.exp(1j * phi * n) * (math.tanh(r) ** n) / math.cosh(r)
    amp = np.zeros((n_cut, n_cut), dtype=complex)
    np.fill_diagonal(amp, diag)
    deficit = 1.0 - float(np.sum(np.abs(diag) ** 2))
    return TwoModeState(amp, n_cut, norm_deficit=deficit)


def _ladder_apply(amp, c_adag_a, c_a, c_adag_b, c_b):
    """Raw table of (c1 a^dag + c2 a + c3 b^dag + c4 b)|state>, grown by one
    level when a creation operator participates."""
    n_cut = amp.shape[0]
    grow = 1 if (c_adag_a != 0 or c_adag_b != 0) else 0
    out = np.zeros((n_cut + grow, n_cut + grow), dtype=complex)
    root = np.sqrt(np.arange(1, n_cut + 1))
    if c_adag_a != 0:
        out[1 : n_cut + 1, :n_cut] += c_adag_a * (root[:, None] * amp)
    if c_a != 0:
        out[0 : n_cut - 1, :n_cut] += c_a * (root[: n_cut - 1, None] * amp[1:, :])
    if c_adag_b != 0:
        out[:n_cut, 1 : n_cut + 1] += c_adag_b * (root[None, :] * amp)
    if c_b != 0:
        out[:n_cut, 0 : n_cut - 1] += c_b * (root[None, : n_cut - 1] * amp[:, 1:])
    return out


def apply_linear(
    state: TwoModeState,
    c_adag_a: complex = 0,
    c_a: complex = 0,
    c_adag_b: complex = 0,
    c_b: complex = 0,
) -> TwoModeState:
    """Apply c1 a^dag + c2 a + c3 b^dag + c4 b and renormalize.

    Raises ValidationError when the operator annihilates the state.
    """
    out = _ladder_apply(state.amplitudes, c_adag_a, c_a, c_adag_b, c_b)
    nrm = float(np.linalg.norm(out))
    if nrm < 1e-14:
        raise ValidationError("operator annihilated the state")
    return TwoModeState(out / nrm, out.shape[0], norm_deficit=0.0, last_norm=nrm)


def _populated_band(amp) -> int:
    """Width of the band of occupation differences n_b - n_a carrying weight."""
    rows, cols = np.nonzero(amp)
    if len(rows) == 0:
        return 0
    d = cols - rows
    return int(d.max() - d.min())


def reduced_entropy(state: TwoModeState) -> float:
    """Von Neumann entropy (bits) of the mode-a reduced state.

    Traces out mode b, diagonalizes the reduced density matrix with a
    Hermitian eigensolver (banded variant for large narrow-band states, see
    module docstring), and sums -lambda log2 lambda over lambda > 1e-15.
    """
    amp = state.amplitudes
    n_cut = amp.shape[0]
    width = _populated_band(amp)
    if n_cut <= _DENSE_LIMIT or width > _BAND_LIMIT:
        rho = amp @ amp.conj().T
        evals = np.linalg.eigvalsh(rho)
    else:
        band = np.zeros((width + 1, n_cut), dtype=complex)
        for off in range(width + 1):
            band[off, : n_cut - off] = np.sum(
                amp[off:, :] * amp[: n_cut - off, :].conj(), axis=1
            )
        evals = scipy.linalg.eig_banded(
            band, lower=True, eigvals_only=True, check_finite=False
        )
    lam = evals[evals > 1e-15]
    return float(-(lam * np.log2(lam)).sum())


def _edge_weight(amp) -> float:
    edge = float(np.sum(np.abs(amp[-1, :]) ** 2) + np.sum(np.abs(amp[:, -1]) ** 2))
    return edge - float(np.abs(amp[-1, -1]) ** 2)


def quadrature_mean_variance(state: TwoModeState, tail_tol: float = 1e-9) -> float:
    """Mean of Var(X_A - X_B) and Var(P_A + P_B) on the state.

    Quadrature convention: X = (m + m^dag)/sqrt(2), P = (m - m^dag)/(i sqrt 2),
    vacuum variance 1/2 per mode, so the vacuum value is exactly 1. Moments
    are accumulated through ladder shifts on the amplitude table.
    """
    amp = state.amplitudes
    if _edge_weight(amp) + abs(state.norm_deficit) > tail_tol:
        raise CutoffError("state tail too heavy for a reliable variance")
    n_cut = amp.shape[0]
    padded = np.zeros((n_cut + 1, n_cut + 1), dtype=complex)
    padded[:n_cut, :n_cut] = amp

    def variance(c_adag_a, c_a, c_adag_b, c_b):
        applied = _ladder_apply(amp, c_adag_a, c_a, c_adag_b, c_b)
        mean = np.vdot(padded, applied).real
        second = float(np.vdot(applied, applied).real)
        return second - mean * mean

    var_x = variance(1 / _SQRT2, 1 / _SQRT2, -1 / _SQRT2, -1 / _SQRT2)
    var_p = variance(1j / _SQRT2, -1j / _SQRT2, 1j / _SQRT2, -1j / _SQRT2)
    return 0.5 * (var_x + var_p)
