r"""Rank-one matrix group model: Iwasawa decomposition, boundary action,
cocycles, Weyl data and parameter predicates.

Conventions fixed here and used by every other module:

* ``a_t = diag(e^{t/2}, e^{-t/2})`` and spectral parameters are evaluated on
  the unit generator, so ``a_t^lam = e^{lam * t}``.  The half-sum constant is
  ``rho(n) = (n - 1) / 2`` for rank tag n in {2, 3}.
* K-rotations are ``k(phi) = [[cos phi, sin phi], [-sin phi, cos phi]]``.
  The boundary circle is parametrized so that the point with angle theta is
  the coset of ``k(theta / 2)``; a rotation by alpha on the boundary is the
  matrix ``k(alpha / 2)``.
* The real chart of the boundary is ``x(theta) = -cot(theta / 2)`` with the
  circle chart ``e^{i theta} = (x - i) / (x + i)``.  Rank 3 uses the
  extension of the same chart to the sphere: latitude phi measures the
  distance from the rank-2 equator.

With these choices ``a(nbar_x)^{-(lam + rho)} = (1 + x^2)^{-(lam + 1/2)}``
for the lower-unipotent ``nbar_x = [[1, 0], [x, 1]]`` in rank 2, which is
the closed form the tests check against.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidElementError, UnsupportedRankError

DET_TOL = 1e-12


def rho(rank_tag: int) -> float:
    """Half sum of restricted roots in the unit normalization."""
    if rank_tag not in (2, 3):
        raise UnsupportedRankError(f"rank_tag must be 2 or 3, got {rank_tag}")
    return (rank_tag - 1) / 2.0


def _as_matrix(entries, rank_tag):
    dtype = np.float64 if rank_tag == 2 else np.complex128
    m = np.asarray(entries, dtype=dtype)
    if m.shape != (2, 2):
        raise InvalidElementError(f"expected 2x2 entries, got shape {m.shape}")
    return m


@dataclass(frozen=True)
class GroupElement:
    """Unit-determinant 2x2 matrix over R (rank 2) or C (rank 3)."""

    entries: np.ndarray
    rank_tag: int = 2

    def __post_init__(self):
        m = _as_matrix(self.entries, self.rank_tag)
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @classmethod
    def from_matrix(cls, entries, rank_tag: int = 2) -> "GroupElement":
        """Validated constructor: determinant must be 1.

        The tolerance scales with the squared matrix magnitude, which is the
        resolution at which a floating-point determinant of a genuine group
        element can be trusted.
        """
        m = _as_matrix(entries, rank_tag)
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        scale = max(1.0, float(np.max(np.abs(m))) ** 2)
        if abs(det - 1.0) > DET_TOL * scale:
            raise InvalidElementError(f"determinant {det} is not 1")
        return cls(m, rank_tag)

    @classmethod
    def identity(cls, rank_tag: int = 2) -> "GroupElement":
        return cls(np.eye(2), rank_tag)

    @classmethod
    def rotation(cls, alpha: float, rank_tag: int = 2) -> "GroupElement":
        """Element rotating the boundary circle by ``alpha`` (matrix k(alpha/2))."""
        h = 0.5 * alpha
        return cls(np.array([[math.cos(h), math.sin(h)], [-math.sin(h), math.cos(h)]]), rank_tag)

    @classmethod
    def translation(cls, t: float, rank_tag: int = 2) -> "GroupElement":
        """Diagonal element a_t = diag(e^{t/2}, e^{-t/2})."""
        return cls(np.diag([math.exp(0.5 * t), math.exp(-0.5 * t)]), rank_tag)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        if self.rank_tag != other.rank_tag:
            raise InvalidElementError("rank tags differ")
        return GroupElement(self.entries @ other.entries, self.rank_tag)

    def inv(self) -> "GroupElement":
        a, b = self.entries[0]
        c, d = self.entries[1]
        return GroupElement(np.array([[d, -b], [-c, a]]), self.rank_tag)

    def embed(self) -> "GroupElement":
        """Verbatim embedding of a rank-2 element into rank 3."""
        if self.rank_tag != 2:
            raise UnsupportedRankError("only rank-2 elements embed upward")
        return GroupElement(self.entries.astype(np.complex128), 3)


@dataclass(frozen=True)
class IwasawaFactors:
    """KAN factors: kappa unitary, log_a = <H0, log a>, n unipotent."""

    kappa: np.ndarray
    log_a: float
    n_entry: complex

    def a_matrix(self) -> np.ndarray:
        return np.diag([math.exp(0.5 * self.log_a), math.exp(-0.5 * self.log_a)])

    def n_matrix(self) -> np.ndarray:
        n = np.eye(2, dtype=self.kappa.dtype)
        n[0, 1] = self.n_entry if np.iscomplexobj(n) else self.n_entry.real
        return n

    def reconstruct(self) -> np.ndarray:
        return self.kappa @ self.a_matrix().astype(self.kappa.dtype) @ self.n_matrix()


def iwasawa_decompose(g: GroupElement) -> IwasawaFactors:
    """g = kappa * a * n with kappa in K, a positive diagonal, n unipotent.

    2x2 closed form of the QR factorization; for unit determinant the
    diagonal of R is automatically (r, 1/r) with r > 0.
    """
    m = g.entries
    a0, c0 = m[0, 0], m[1, 0]
    r2 = abs(a0) ** 2 + abs(c0) ** 2
    if not np.isfinite(r2) or r2 == 0.0:
        raise InvalidElementError("degenerate first column")
    r = math.sqrt(r2)
    alpha, beta = a0 / r, c0 / r
    if g.rank_tag == 2:
        kappa = np.array([[alpha, -beta], [beta, alpha]], dtype=np.float64)
    else:
        kappa = np.array(
            [[alpha, -np.conj(beta)], [beta, np.conj(alpha)]], dtype=np.complex128
        )
    r12 = np.conj(alpha) * m[0, 1] + np.conj(beta) * m[1, 1]
    return IwasawaFactors(kappa=kappa, log_a=math.log(r2), n_entry=complex(r12 / r))


@dataclass(frozen=True)
class SpectralParam:
    """Principal-series parameter lambda in rho-normalized units."""

    lam: complex
    rank_tag: int = 2

    def __post_init__(self):
        rho(self.rank_tag)  # validates the tag
        object.__setattr__(self, "lam", complex(self.lam))

    @property
    def rho(self) -> float:
        return rho(self.rank_tag)


def weyl_reflect(lam: SpectralParam) -> SpectralParam:
    """Nontrivial Weyl reflection lambda -> -lambda (involution)."""
    return SpectralParam(-lam.lam, lam.rank_tag)


def is_bad(lam: SpectralParam) -> bool:
    """True iff 2*lambda is an integer (within 1e-12, imaginary part zero)."""
    z = lam.lam
    if abs(z.imag) > 1e-12:
        return False
    two = 2.0 * z.real
    return abs(two - round(two)) <= 1e-12


@dataclass(frozen=True)
class BoundaryPoint:
    """Point of the boundary: angle theta, plus latitude phi off the
    rank-2 equator when rank_tag is 3."""

    theta: float
    phi: float = 0.0
    rank_tag: int = 2

    def __post_init__(self):
        rho(self.rank_tag)
        object.__setattr__(self, "theta", float(self.theta) % (2.0 * math.pi))
        if self.rank_tag == 2 and self.phi != 0.0:
            raise UnsupportedRankError("rank-2 boundary points have no latitude")
        if not -math.pi / 2 - 1e-12 <= self.phi <= math.pi / 2 + 1e-12:
            raise UnsupportedRankError(f"latitude {self.phi} outside [-pi/2, pi/2]")


def theta_to_x(theta):
    """Circle chart to real chart, x = -cot(theta/2); theta = 0 maps to inf."""
    return -1.0 / np.tan(0.5 * np.asarray(theta, dtype=np.float64))


def x_to_theta(x):
    """Inverse chart; x = +-inf maps to theta = 0."""
    x = np.asarray(x, dtype=np.float64)
    return (2.0 * np.arctan2(-np.ones_like(x), x) + 2.0 * np.pi) % (2.0 * np.pi)


def _chart_point(b: BoundaryPoint):
    """Homogeneous coordinates (z1, z2) of the sphere-chart point zeta."""
    if b.rank_tag == 2 or b.phi == 0.0:
        h = 0.5 * b.theta
        return (-math.cos(h), math.sin(h))  # zeta = x(theta), including inf
    w = cmath.rect(math.tan(0.25 * math.pi + 0.5 * b.phi), b.theta)
    return (1j * (1.0 + w), 1.0 - w)  # zeta = i(1+w)/(1-w)


def k_representative(b: BoundaryPoint) -> GroupElement:
    """A K-element whose coset is the boundary point (k * infinity = zeta)."""
    if b.rank_tag == 2:
        return GroupElement.rotation(b.theta)
    z1, z2 = _chart_point(b)
    if abs(z2) < 1e-300 * abs(z1):
        return GroupElement.identity(3)
    zeta = complex(z1) / complex(z2)
    norm = math.sqrt(1.0 + abs(zeta) ** 2)
    k = np.array([[zeta, -1.0], [1.0, np.conj(zeta)]], dtype=np.complex128) / norm
    return GroupElement(k, 3)


def boundary_act(g: GroupElement, b: BoundaryPoint) -> BoundaryPoint:
    """Induced action on the boundary, kappa(g k_b)M in the fixed charts."""
    if g.rank_tag != b.rank_tag:
        raise UnsupportedRankError("rank tags of element and point differ")
    m = g.entries
    if g.rank_tag == 2:
        h = 0.5 * b.theta
        p = m[0, 0] * math.cos(h) - m[0, 1] * math.sin(h)
        q = m[1, 0] * math.cos(h) - m[1, 1] * math.sin(h)
        return BoundaryPoint(2.0 * math.atan2(-q, p))
    z1, z2 = _chart_point(b)
    w1 = m[0, 0] * z1 + m[0, 1] * z2
    w2 = m[1, 0] * z1 + m[1, 1] * z2
    # back through the Cayley chart: w = (zeta - i)/(zeta + i)
    num, den = w1 - 1j * w2, w1 + 1j * w2
    if abs(den) == 0.0:
        return BoundaryPoint(0.0, math.pi / 2, 3)
    w = num / den
    r = abs(w)
    phi = 2.0 * (math.atan(r) - 0.25 * math.pi) if math.isfinite(r) else math.pi / 2
    theta = cmath.phase(w) if r > 0 else 0.0
    return BoundaryPoint(theta, phi, 3)


def log_a(g: GroupElement) -> float:
    """A-coordinate of the Iwasawa decomposition of g."""
    m = g.entries
    return math.log(abs(m[0, 0]) ** 2 + abs(m[1, 0]) ** 2)


def a_power(g: GroupElement, lam: SpectralParam) -> complex:
    """a(g)^lambda = exp(lambda * <H0, log a(g)>)."""
    return cmath.exp(lam.lam * log_a(g))


def kappa_angle(g: GroupElement) -> float:
    """Boundary angle of the K-factor of g (rank 2)."""
    if g.rank_tag != 2:
        raise UnsupportedRankError("kappa_angle is rank-2 only")
    m = g.entries
    return (2.0 * math.atan2(-m[1, 0], m[0, 0])) % (2.0 * math.pi)
