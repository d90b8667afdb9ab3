"""Magnon treatment of the Dicke model with nearest-neighbor Ising coupling.

The spin chain (splitting omega0, Ising strength J = eta*omega0, ring
geometry) is bosonized to leading order: magnons with dispersion
E_k = omega0*(1 + 2 eta cos k) couple to the boson modes with a renormalized
per-momentum coupling g_k = g*(1 + eta cos k). Each momentum sector then
diagonalizes exactly like the single-mode model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .bogoliubov import SuperradiantInputError, _pair_modes

# the leading-order magnon description degrades as |eta| grows; warn past this
ETA_WARNING_THRESHOLD = 0.3

Dispersion = Union[float, Callable[[float], float]]


@dataclass(frozen=True)
class IsingParams:
    """Dicke-Ising model parameters.

    eta        : Ising-to-splitting ratio J/omega0 (signed)
    omega0     : spin splitting
    dispersion : boson dispersion, either a flat frequency or a callable
                 k -> omega_k (e.g. from an EffectiveDickeSpec)
    g          : collective spin-boson coupling
    n_spins    : chain length N (ring)
    """

    eta: float
    omega0: float
    dispersion: Dispersion
    g: float
    n_spins: int

    def __post_init__(self):
        if self.omega0 <= 0:
            raise ValueError("omega0 must be > 0")
        if self.g < 0:
            raise ValueError("g must be >= 0")
        if int(self.n_spins) != self.n_spins or self.n_spins < 1:
            raise ValueError("n_spins must be an integer >= 1")

    @property
    def eta_warning(self) -> bool:
        """True when |eta| exceeds the validity threshold of the leading-order
        magnon description (a warning, not an error)."""
        return abs(self.eta) > ETA_WARNING_THRESHOLD

    def omega_k(self, k: float) -> float:
        w = self.dispersion(k) if callable(self.dispersion) else float(self.dispersion)
        if w <= 0:
            raise ValueError(f"dispersion must be positive, got omega_k={w:g} at k={k:g}")
        return w


@dataclass(frozen=True)
class MagnonMode:
    """Magnon data at one momentum; the coupled-mode fields are filled only by
    ``dicke_ising_modes``."""

    k: float
    E_k: float
    alpha_k: float
    beta_k: float
    g_tilde_k: float | None = None
    eps_minus_k: float | None = None
    eps_plus_k: float | None = None
    gamma_k: float | None = None


def magnon_energy(ip: IsingParams, k: float) -> float:
    """Leading-order magnon dispersion E_k = omega0*(1 + 2 eta cos k)."""
    return ip.omega0 * (1.0 + 2.0 * ip.eta * math.cos(k))


def magnon_spectrum(ip: IsingParams, k: float) -> MagnonMode:
    """Magnon energy and Bogoliubov coefficients (alpha_k = 1,
    beta_k = eta cos k) at momentum k, to leading order in eta."""
    return MagnonMode(
        k=k, E_k=magnon_energy(ip, k), alpha_k=1.0, beta_k=ip.eta * math.cos(k)
    )


def coupling_k(ip: IsingParams, k: float) -> float:
    """Momentum-dependent spin-boson coupling g_k = g*(1 + eta cos k)."""
    return ip.g * (1.0 + ip.eta * math.cos(k))


def mixing_angle_k(ip: IsingParams, k: float) -> float:
    """Rotation angle diagonalizing the momentum-k sector, same branch as the
    single-mode model: gamma_k = atan2(4 g_k sqrt(w_k E_k), E_k^2 - w_k^2)/2.

    Defined for any parameters (it does not require the sector to be in the
    normal phase), so squeezed-quadrature coefficients remain available at and
    beyond the per-momentum critical coupling.
    """
    w_k = ip.omega_k(k)
    e_k = _positive_magnon_energy(ip, k)
    g_k = coupling_k(ip, k)
    if g_k == 0.0:
        return 0.0
    return 0.5 * math.atan2(4.0 * g_k * math.sqrt(w_k * e_k), e_k * e_k - w_k * w_k)


def _positive_magnon_energy(ip, k):
    e_k = magnon_energy(ip, k)
    if e_k <= 0:
        raise ValueError(
            f"magnon description invalid at k={k:g}: E_k={e_k:g} <= 0 "
            f"(eta={ip.eta:g} too large in magnitude)"
        )
    return e_k


def dicke_ising_modes(ip: IsingParams, k: float) -> MagnonMode:
    """Full normal-mode data of the momentum-k sector.

    eps_{pm,k}^2 = (w_k^2 + E_k^2 -+ sqrt((w_k^2-E_k^2)^2
                    + 16 g_k^2 w_k E_k))/2.

    Raises SuperradiantInputError when the sector is superradiant
    (eps_minus_k^2 < 0).
    """
    w_k = ip.omega_k(k)
    e_k = _positive_magnon_energy(ip, k)
    g_k = coupling_k(ip, k)
    em_sq, ep_sq, gamma = _pair_modes(w_k, e_k, g_k)
    if em_sq < 0.0:
        raise SuperradiantInputError(
            f"momentum k={k:g} sector is superradiant (eps_minus_k^2 < 0)"
        )
    if g_k == 0.0:
        gamma = 0.0
    return MagnonMode(
        k=k,
        E_k=e_k,
        alpha_k=1.0,
        beta_k=ip.eta * math.cos(k),
        g_tilde_k=g_k,
        eps_minus_k=math.sqrt(em_sq),
        eps_plus_k=math.sqrt(ep_sq),
        gamma_k=gamma,
    )


def critical_coupling_k(ip: IsingParams, k: float) -> tuple[float, float]:
    """Critical coupling of the momentum-k sector.

    Returns (exact_within_quadratic, leading_order):

    - exact:   g such that g*(1+eta cos k) = sqrt(w_k E_k)/2, i.e.
               sqrt(w_k E_k)/(2 (1+eta cos k)); exact for the quadratic
               magnon model, itself valid to linear order in eta.
    - leading: sqrt(w_k omega0)/2, the eta-independent value. The two agree
               to O(eta^2): the Ising coupling does not shift the critical
               point at linear order.
    """
    w_k = ip.omega_k(k)
    e_k = _positive_magnon_energy(ip, k)
    # E_k > 0 already guarantees 1 + eta*cos k > 1/2
    factor = 1.0 + ip.eta * math.cos(k)
    exact = math.sqrt(w_k * e_k) / (2.0 * factor)
    leading = math.sqrt(w_k * ip.omega0) / 2.0
    return exact, leading


def squeezed_quadrature_coefficients_k(
    ip: IsingParams, k: float
) -> tuple[float, float, np.ndarray]:
    """Coefficients of the optimally squeezed quadrature at momentum k.

    Returns (boson_weight, spin_weight, site_phases) for

        p_{-,k} = boson_weight * i (a'_{-k} - a_k)
                  - spin_weight * sum_n site_phases[n] * i (S+_n - S-_n)

    with boson_weight = sqrt(w_k/2) cos(gamma_k), spin_weight =
    sqrt(E_k/(2N)) sin(gamma_k) (1 - eta cos k) and site_phases[n] = e^{ikn}.
    At k = 0 (all phases 1) this reduces, for eta = 0, to the two-mode
    quadrature of the single-mode model.
    """
    w_k = ip.omega_k(k)
    e_k = _positive_magnon_energy(ip, k)
    gamma = mixing_angle_k(ip, k)
    boson_weight = math.sqrt(w_k / 2.0) * math.cos(gamma)
    spin_weight = (
        math.sqrt(e_k / (2.0 * ip.n_spins))
        * math.sin(gamma)
        * (1.0 - ip.eta * math.cos(k))
    )
    phases = np.exp(1j * k * np.arange(ip.n_spins))
    return boson_weight, spin_weight, phases
