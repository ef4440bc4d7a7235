"""Pointwise physics kernels for field-induced pair creation.

Normalized units: the electric field E is measured in units of the critical
field, momenta in m_e*c, densities in a reference density n0, lengths in
Compton wavelengths and times in Compton times. In these units the local
pair creation rate is

    q0(E) = (E^2 / N0) * exp(-pi / |E|),

where N0 = n0 * h^3 / (m_e * c)^3 is the dimensionless reference density.
All kernels are pure functions of their arguments (no global state) and
accept scalars or equal-shaped numpy arrays; they are safe to call from any
number of concurrent evaluators.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import constants
from .errors import InvalidParameterError, InvalidStateError

# Below this field strength q0 and q0/E are forced to exact zero. The true
# values underflow double precision near |E| ~ pi/708 ~ 4.4e-3 anyway; the
# guard only removes 0/0 and spurious signs at E = 0.
DEFAULT_EPS_FIELD = 1e-8

# SI prefactor of the pair creation rate, pairs / (m^3 s): c / ((2*pi)^3 lambda^4).
SI_RATE_PREFACTOR = constants.C / ((2.0 * math.pi) ** 3 * constants.COMPTON_LENGTH**4)


def derived_plasma_frequency(N0: float, alpha: float) -> float:
    """Normalized electron plasma frequency sqrt(2*alpha*N0) / (2*pi).

    The ion background density is the normalization density, so the plasma
    frequency (in inverse Compton times) depends only on N0 and the
    fine-structure constant.
    """
    if not (N0 > 0.0):
        raise InvalidParameterError(f"N0 must be positive, got {N0}")
    if not (alpha > 0.0):
        raise InvalidParameterError(f"alpha must be positive, got {alpha}")
    return math.sqrt(2.0 * alpha * N0) / (2.0 * math.pi)


@dataclass
class PhysicsParams:
    """Normalized physical constants of one simulation.

    N0        : dimensionless reference density n0 * h^3 / (m_e c)^3
    alpha     : fine-structure constant (configurable; CODATA by default)
    a         : recombination coefficient for the n_e*n_p loss term (0 = off)
    eps_field : small-field guard below which q0 and q0/E are exact zero
    """

    N0: float = 0.2
    alpha: float = constants.ALPHA_FINE_STRUCTURE
    a: float = 0.0
    eps_field: float = DEFAULT_EPS_FIELD
    omega_pe_sq: float = field(init=False)

    def __post_init__(self):
        if not (self.a >= 0.0):
            raise InvalidParameterError(f"recombination coefficient a must be >= 0, got {self.a}")
        if not (self.eps_field > 0.0):
            raise InvalidParameterError(f"eps_field must be positive, got {self.eps_field}")
        self.omega_pe_sq = derived_plasma_frequency(self.N0, self.alpha) ** 2

    @property
    def omega_pe(self) -> float:
        return derived_plasma_frequency(self.N0, self.alpha)


def _checked(E, name="E"):
    arr = np.asarray(E, dtype=np.float64)
    if np.isnan(arr).any():
        raise InvalidStateError(f"{name} contains NaN")
    return arr


def _maybe_scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def lorentz_gamma(p):
    """Relativistic gamma factor sqrt(1 + p^2) for momentum in units of m_e*c."""
    p = np.asarray(p, dtype=np.float64)
    return _maybe_scalar(np.sqrt(1.0 + p * p))


def schwinger_rate_norm(E, N0: float, eps_field: float = DEFAULT_EPS_FIELD):
    """Normalized pair creation rate q0 = (E^2 / N0) * exp(-pi / |E|).

    Even in E. Returns exact zero below the eps_field guard and wherever the
    exponential underflows.
    """
    if not (N0 > 0.0):
        raise InvalidParameterError(f"N0 must be positive, got {N0}")
    arr = _checked(E)
    abs_e = np.abs(arr)
    weak = abs_e < eps_field
    safe = np.where(weak, 1.0, abs_e)
    rate = np.where(weak, 0.0, (arr * arr / N0) * np.exp(-np.pi / safe))
    return _maybe_scalar(rate)


def displacement_flux(E, gamma, N0: float, eps_field: float = DEFAULT_EPS_FIELD):
    """Pair-displacement flux gamma * q0(E) / E = gamma * (E / N0) * exp(-pi / |E|).

    Models creation of the two partners at field-dependent offsets, so the
    pair's energy is drawn from the field. Odd in E; exact zero below the
    eps_field guard.
    """
    if not (N0 > 0.0):
        raise InvalidParameterError(f"N0 must be positive, got {N0}")
    arr = _checked(E)
    abs_e = np.abs(arr)
    weak = abs_e < eps_field
    safe = np.where(weak, 1.0, abs_e)
    flux = np.where(weak, 0.0, gamma * (arr / N0) * np.exp(-np.pi / safe))
    return _maybe_scalar(flux)


def schwinger_rate_si(E_field):
    """Pair creation rate in SI units (pairs per m^3 per s) for E in V/m.

    rate = c / ((2*pi)^3 * lambda^4) * (E / E_crit)^2 * exp(-pi * E_crit / |E|)

    with lambda the Compton wavelength and E_crit the critical field, both
    from the CODATA values in `constants`.
    """
    arr = _checked(E_field, name="E_field")
    abs_e = np.abs(arr)
    zero = abs_e == 0.0
    safe = np.where(zero, 1.0, abs_e)
    ratio = arr / constants.E_CRIT
    with np.errstate(over="ignore"):
        rate = np.where(
            zero, 0.0, SI_RATE_PREFACTOR * (ratio * ratio) * np.exp(-np.pi * constants.E_CRIT / safe)
        )
    return _maybe_scalar(rate)


def recombination_loss(n_e, n_p, a: float):
    """Annihilation loss rate a * n_e * n_p (per unit volume and time)."""
    if not (a >= 0.0):
        raise InvalidParameterError(f"recombination coefficient a must be >= 0, got {a}")
    n_e = np.asarray(n_e, dtype=np.float64)
    n_p = np.asarray(n_p, dtype=np.float64)
    if (n_e < 0.0).any() or (n_p < 0.0).any():
        raise InvalidStateError("densities must be non-negative")
    return _maybe_scalar(a * (n_e * n_p))


def recombination_momentum_exchange(p_self, p_other, n_other, a: float):
    """Momentum drag -a * n_other * (p_self - p_other) from annihilation."""
    if not (a >= 0.0):
        raise InvalidParameterError(f"recombination coefficient a must be >= 0, got {a}")
    p_self = np.asarray(p_self, dtype=np.float64)
    p_other = np.asarray(p_other, dtype=np.float64)
    n_other = np.asarray(n_other, dtype=np.float64)
    if (n_other < 0.0).any():
        raise InvalidStateError("densities must be non-negative")
    return _maybe_scalar(-a * (n_other * (p_self - p_other)))
