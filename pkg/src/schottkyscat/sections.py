"""Sampled boundary sections.

A full-domain section is a trigonometric polynomial on the circle stored by
its values at equispaced nodes; a quotient-domain section stores values at
the u-equispaced nodes of the glued fundamental boundary.  ``lam`` is the
spectral parameter of the pairing the section participates in: smooth test
sections at ``lam`` pull back under the group with the weight
``a(g^{-1} k)^{-lam-rho}``, quotient sections carry the matching gluing
covariance ('sigma' for distribution data, 'dual' for averaged data).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainMismatchError
from .schottky import QuotientNodes

TWO_PI = 2.0 * np.pi


def full_nodes(n_nodes: int) -> np.ndarray:
    return TWO_PI * np.arange(n_nodes) / n_nodes


@dataclass
class BoundarySection:
    """Sampled section; see the module docstring for the weight convention."""

    samples: np.ndarray
    lam: complex
    fourier_order: int
    domain_tag: str = "full"
    covariance: str = "dual"  # quotient sections: 'sigma' or 'dual'
    nodes: QuotientNodes | None = field(default=None, repr=False)

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.complex128)
        self.lam = complex(self.lam)
        if self.domain_tag == "full":
            if self.samples.ndim != 1:
                raise DomainMismatchError("full sections store a flat sample vector")
            if self.samples.size < 2 * self.fourier_order + 1:
                raise DomainMismatchError(
                    f"{self.samples.size} nodes cannot carry Fourier order "
                    f"{self.fourier_order}"
                )
        elif self.domain_tag == "quotient":
            if self.nodes is None or self.samples.size != self.nodes.total:
                raise DomainMismatchError("quotient sections need matching nodes")
            if self.covariance not in ("sigma", "dual"):
                raise DomainMismatchError(f"unknown covariance {self.covariance}")
        else:
            raise DomainMismatchError(f"unknown domain tag {self.domain_tag}")

    @property
    def thetas(self) -> np.ndarray:
        if self.domain_tag == "full":
            return full_nodes(self.samples.size)
        return self.nodes.theta


def full_section(samples, lam, fourier_order: int | None = None) -> BoundarySection:
    samples = np.asarray(samples, dtype=np.complex128)
    if fourier_order is None:
        fourier_order = (samples.size - 1) // 2
    return BoundarySection(samples, lam, fourier_order, "full")


def from_function(fn, lam, n_nodes: int, fourier_order: int | None = None) -> BoundarySection:
    return full_section(fn(full_nodes(n_nodes)), lam, fourier_order)


def constant_section(value, lam, n_nodes: int = 257) -> BoundarySection:
    return full_section(np.full(n_nodes, complex(value)), lam)


def mode_section(n: int, lam, n_nodes: int = 257) -> BoundarySection:
    """The Fourier mode e^{i n theta} as a full section."""
    return from_function(lambda t: np.exp(1j * n * t), lam, n_nodes)


def fourier_coefficients(sec: BoundarySection) -> np.ndarray:
    """Coefficients c_m of e^{i m theta}, m = -N..N, from the samples."""
    if sec.domain_tag != "full":
        raise DomainMismatchError("Fourier coefficients of full sections only")
    n = sec.fourier_order
    raw = np.fft.fft(sec.samples) / sec.samples.size
    return raw[np.arange(-n, n + 1)]


def evaluate_modes(coeffs: np.ndarray, thetas) -> np.ndarray:
    """sum_m c_m e^{i m theta} for c indexed m = -N..N."""
    n = (len(coeffs) - 1) // 2
    thetas = np.asarray(thetas, dtype=np.float64)
    z = np.exp(1j * thetas)
    out = np.full(thetas.shape, coeffs[n], dtype=np.complex128)
    pos = np.ones_like(z)
    neg = np.ones_like(z)
    for m in range(1, n + 1):
        pos = pos * z
        neg = neg / z
        out += coeffs[n + m] * pos + coeffs[n - m] * neg
    return out


def evaluate_full(sec: BoundarySection, thetas) -> np.ndarray:
    """Trigonometric interpolation of a full section at arbitrary angles."""
    return evaluate_modes(fourier_coefficients(sec), thetas)


def coefficients_to_samples(coeffs: np.ndarray, n_nodes: int) -> np.ndarray:
    """Values at equispaced nodes of sum_m c_m e^{i m theta}."""
    n = (len(coeffs) - 1) // 2
    spec = np.zeros(n_nodes, dtype=np.complex128)
    for m in range(-n, n + 1):
        spec[m % n_nodes] += coeffs[m + n]
    return np.fft.ifft(spec) * n_nodes
