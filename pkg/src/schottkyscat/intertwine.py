r"""Standard intertwining operators in the compact picture, their
c-functions and K-type scalars.

The boundary modes e^{i n theta} diagonalize the intertwiner by
K-equivariance.  With Lebesgue measure on the unipotent group and the Weyl
representative fixed as the quarter-turn rotation, the scalars are explicit
Gamma ratios:

    c(lam)          = sqrt(pi) Gamma(lam) / Gamma(lam + 1/2)
    c_gamma(lam, n) = 2^{1-2 lam} pi Gamma(2 lam)
                      / (Gamma(lam + 1/2 + n) Gamma(lam + 1/2 - n))
    jhat_n(lam)     = (-1)^n c_gamma(-lam, n)
    j_n(lam)        = prod_{k=0}^{|n|-1} (k + 1/2 + lam) / (k + 1/2 - lam)

so the normalized multipliers are rational and satisfy
j_n(lam) j_n(-lam) = 1 identically.  For Re lam > 0 every scalar is also a
convergent integral over the real line, kept here as the quadrature oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import loggamma

from .errors import (
    BadPointError,
    DomainMismatchError,
    NormalizationZeroError,
)
from .lie import SpectralParam
from .sections import BoundarySection, coefficients_to_samples, fourier_coefficients

_POLE_TOL = 1e-8

# Weyl representative: boundary rotation by pi, matrix k(pi/2).  All phase
# conventions downstream (the (-1)^n factors) derive from this choice.
M_W_BOUNDARY_ANGLE = math.pi


@dataclass(frozen=True)
class CFunctionValue:
    value: complex
    lam: SpectralParam
    pole_flag: bool


def _near_nonpositive_int(z: complex, tol: float = _POLE_TOL) -> bool:
    if abs(z.imag) > tol:
        return False
    r = round(z.real)
    return r <= 0 and abs(z.real - r) <= tol


def c_minimal(lam: SpectralParam) -> CFunctionValue:
    """Value of the unnormalized intertwiner on constants,
    integral of (1+x^2)^(-lam-1/2) over the line."""
    z = lam.lam
    if _near_nonpositive_int(z):
        return CFunctionValue(complex(np.inf), lam, True)
    val = cmath.exp(0.5 * math.log(math.pi) + loggamma(z) - loggamma(z + 0.5))
    return CFunctionValue(val, lam, False)


def c_gamma(lam: SpectralParam, n: int) -> CFunctionValue:
    """K-type scalar for the character with boundary index n (n = 0 is the
    minimal K-type, where this reduces to c_minimal)."""
    z = lam.lam
    n = abs(int(n))
    num_pole = _near_nonpositive_int(2 * z)
    den_pole = _near_nonpositive_int(z + 0.5 + n) or _near_nonpositive_int(z + 0.5 - n)
    if num_pole and not den_pole:
        return CFunctionValue(complex(np.inf), lam, True)
    if num_pole and den_pole:
        # pole of Gamma(2 lam) cancelled by the denominator: take a limit
        eps = 1e-7
        v1 = _c_gamma_value(z + eps, n)
        v2 = _c_gamma_value(z - eps, n)
        return CFunctionValue(0.5 * (v1 + v2), lam, False)
    return CFunctionValue(_c_gamma_value(z, n), lam, False)


def _c_gamma_value(z: complex, n: int) -> complex:
    return cmath.exp(
        (1.0 - 2.0 * z) * math.log(2.0)
        + math.log(math.pi)
        + loggamma(2.0 * z)
        - loggamma(z + 0.5 + n)
        - loggamma(z + 0.5 - n)
    )


def c_gamma_quadrature(lam: complex, n: int, tol: float = 1e-11) -> complex:
    """Oracle: direct integral over the unipotent group, Re lam > 0.

    integrand (1+x^2)^(-lam-1/2) e^{-2 i n arctan x}.
    """
    lam = complex(lam)
    if lam.real <= 0:
        raise ValueError("quadrature oracle needs Re lam > 0")
    n = int(n)

    def integrand(x, part):
        val = (1.0 + x * x) ** (-lam - 0.5) * np.exp(-2j * n * np.arctan(x))
        return val.real if part == 0 else val.imag

    re, _ = integrate.quad(integrand, -np.inf, np.inf, args=(0,), epsabs=tol, epsrel=tol, limit=400)
    im, _ = integrate.quad(integrand, -np.inf, np.inf, args=(1,), epsabs=tol, epsrel=tol, limit=400)
    return complex(re, im)


def jhat_multiplier(lam: complex, n: int) -> complex:
    """Mode multiplier of the unnormalized intertwiner at parameter lam,
    equal to (-1)^n c_gamma(-lam, n); poles at nonnegative integers."""
    lam = complex(lam)
    n = abs(int(n))
    c = c_gamma(SpectralParam(-lam), n)
    if c.pole_flag:
        raise BadPointError(f"unnormalized multiplier has a pole at lam={lam}")
    return (-1) ** n * c.value


def j_multiplier(lam: complex, n: int) -> complex:
    """Normalized multiplier: rational in lam, equal to 1 on the minimal
    K-type, with j_n(lam) j_n(-lam) = 1."""
    lam = complex(lam)
    out = 1.0 + 0.0j
    for k in range(abs(int(n))):
        den = k + 0.5 - lam
        if abs(den) < 1e-13:
            raise BadPointError(f"normalized multiplier pole at lam={lam}, mode {n}")
        out *= (k + 0.5 + lam) / den
    return out


def multiplier_table(lam: complex, n_max: int, normalized: bool = True) -> np.ndarray:
    """Multipliers for modes -n_max..n_max (symmetric in the mode index)."""
    fn = j_multiplier if normalized else jhat_multiplier
    half = np.array([fn(lam, n) for n in range(n_max + 1)])
    return np.concatenate([half[:0:-1], half])


def _check_full(f: BoundarySection, lam: SpectralParam):
    if f.domain_tag != "full":
        raise DomainMismatchError("intertwiners act on full-circle sections")
    if abs(f.lam - lam.lam) > 1e-10:
        raise DomainMismatchError(
            f"section weight {f.lam} does not match operator parameter {lam.lam}"
        )


def jhat_apply(f: BoundarySection, lam: SpectralParam) -> BoundarySection:
    """Unnormalized intertwiner, diagonal on Fourier modes; output lives at
    the reflected parameter."""
    _check_full(f, lam)
    coeffs = fourier_coefficients(f)
    n = f.fourier_order
    mult = multiplier_table(lam.lam, n, normalized=False)
    if not np.all(np.isfinite(mult)):
        raise BadPointError(f"multiplier table has a pole at lam={lam.lam}")
    out = coefficients_to_samples(coeffs * mult, f.samples.size)
    return BoundarySection(out, -lam.lam, n, "full")


def j_apply(f: BoundarySection, lam: SpectralParam) -> BoundarySection:
    """Normalized intertwiner: multiplier 1 on constants; inverse of itself
    at the reflected parameter."""
    _check_full(f, lam)
    cw = c_minimal(SpectralParam(-lam.lam, lam.rank_tag))
    if not cw.pole_flag and abs(cw.value) < 1e-12:
        raise NormalizationZeroError(f"normalizing c-function vanishes at {-lam.lam}")
    coeffs = fourier_coefficients(f)
    n = f.fourier_order
    mult = multiplier_table(lam.lam, n, normalized=True)
    out = coefficients_to_samples(coeffs * mult, f.samples.size)
    return BoundarySection(out, -lam.lam, n, "full")
