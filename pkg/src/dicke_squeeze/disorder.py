"""First-order perturbation theory for squeezing with dilute defect spins.

N clean spins couple collectively; m defect spins carry individual splittings
omega' and couplings g'. The clean sector is diagonalized with the coupling
renormalized to gbar = g*sqrt(N/(N+m)) and the defect coupling is treated to
first order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bogoliubov import normal_modes
from .core import DickeParams

# A defect is flagged non-perturbative when alpha*cos(gammabar)*g' exceeds
# this fraction of |omega'|.
PERTURBATIVITY_THRESHOLD = 0.1


@dataclass(frozen=True)
class DisorderEnsemble:
    """N clean spins plus an explicit list of (omega_prime, g_prime) defects.

    omega_prime may be negative (defect aligned against the clean spins) but
    never zero: a vanishing splitting closes the perturbative gap.
    """

    n_clean: int
    defects: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if int(self.n_clean) != self.n_clean or self.n_clean < 1:
            raise ValueError("n_clean must be an integer >= 1")
        object.__setattr__(self, "defects", tuple(tuple(d) for d in self.defects))
        for i, (w, gp) in enumerate(self.defects):
            if w == 0:
                raise ValueError(f"defect {i}: omega_prime must be nonzero")
            if gp < 0:
                raise ValueError(f"defect {i}: g_prime must be >= 0")

    @property
    def m(self) -> int:
        return len(self.defects)


@dataclass(frozen=True)
class PerturbativeReport:
    """Squeezing ratio split into its three additive contributions.

    xi = term_clean + term_pinned + term_coupling, with alpha the expansion
    parameter sqrt(omega/((N+m)*eps_minus_bar)). ``validity`` holds one flag
    per defect; False marks a defect outside the perturbative regime.
    """

    xi: float
    alpha: float
    term_clean: float
    term_pinned: float
    term_coupling: float
    validity: tuple[bool, ...]


def renormalized_coupling(g: float, n_clean: int, m: int) -> float:
    """Collective coupling seen by the clean spins: gbar = g*sqrt(N/(N+m))."""
    if n_clean < 1 or m < 0:
        raise ValueError("need n_clean >= 1 and m >= 0")
    return g * math.sqrt(n_clean / (n_clean + m))


def _clean_sector(p: DickeParams, d: DisorderEnsemble):
    gbar = renormalized_coupling(p.g, d.n_clean, d.m)
    modes = normal_modes(p, g_renormalized=gbar)
    if modes.eps_minus <= 0.0:
        raise ValueError(
            "critical or superradiant after renormalization; "
            "perturbation theory invalid (eps_minus_bar <= 0)"
        )
    total = d.n_clean + d.m
    alpha = math.sqrt(p.omega / (total * modes.eps_minus))
    return gbar, modes, total, alpha


def _defect_flags(d, alpha, gamma):
    return tuple(
        alpha * math.cos(gamma) * gp <= PERTURBATIVITY_THRESHOLD * abs(w)
        for w, gp in d.defects
    )


def disorder_xi_perturbative(p: DickeParams, d: DisorderEnsemble) -> PerturbativeReport:
    """First-order squeezing ratio of the all-spin quadrature with defects.

    xi = eps_bar/omega                                        (clean sector)
         + sin^2(gammabar) * (omega0/omega) * m/(N+m)         (pinned defects)
         - (alpha cos gammabar / omega) * sqrt(eps_bar*omega0/(N+m))
           * sum_i 2<S_z^i> g'_i / (eps_bar + |omega'_i|)     (defect coupling)

    where <S_z^i> = -sign(omega'_i)/2 for the product ground state of the
    defects (a negative-splitting defect points up, and its gap enters through
    |omega'_i|). The coupling term is positive for down-pointing defects:
    disorder degrades the squeezing in proportion to the dilution m/(N+m).
    """
    gbar, modes, total, alpha = _clean_sector(p, d)
    eps = modes.eps_minus
    gamma = modes.gamma
    term_clean = eps / p.omega
    term_pinned = (math.sin(gamma) ** 2) * (p.omega0 / p.omega) * d.m / total
    s = sum(-math.copysign(1.0, w) * gp / (eps + abs(w)) for w, gp in d.defects)
    term_coupling = (
        -(alpha * math.cos(gamma) / p.omega) * math.sqrt(eps * p.omega0 / total) * s
    )
    return PerturbativeReport(
        xi=term_clean + term_pinned + term_coupling,
        alpha=alpha,
        term_clean=term_clean,
        term_pinned=term_pinned,
        term_coupling=term_coupling,
        validity=_defect_flags(d, alpha, gamma),
    )


def perturbativity_check(p: DickeParams, d: DisorderEnsemble) -> tuple[bool, ...]:
    """Per-defect validity flags: defect i is perturbative while
    alpha*cos(gammabar)*g'_i stays below the threshold fraction of |omega'_i|.
    """
    _, modes, _, alpha = _clean_sector(p, d)
    return _defect_flags(d, alpha, modes.gamma)
