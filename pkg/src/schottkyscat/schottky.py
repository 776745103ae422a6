r"""Schottky data on the circle: validated generators with paired arcs,
word enumeration, and the glued fundamental boundary with its canonical
log coordinates.

A generator g with source/target arcs (I, I') must map the complement of
the open source arc onto the closed target arc, endpoints to endpoints
(orientation forces lo -> hi and hi -> lo).  The fundamental boundary is
the complement of all paired arcs; its components close up into circles
under the endpoint identifications.  Each glued circle carries a canonical
coordinate u in [0, 2pi): develop the chain of arcs around the circle, take
the holonomy h (a hyperbolic element), and set u proportional to the log of
the Moebius chart that conjugates h to a dilation.  All quadrature in the
quotient modules is trapezoid in u.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvalidConfigurationError,
    InvalidElementError,
    NotProperlyDiscontinuousError,
    NotSchottkyError,
    UnsupportedRankError,
)
from .lie import GroupElement, rho

TWO_PI = 2.0 * math.pi
_MATCH_TOL = 1e-8


def _wrap(t):
    return np.mod(t, TWO_PI)


def act_angles(mat, thetas):
    """Boundary action of one real matrix on an array of angles.

    Returns (theta_out, log_a) of the cocycle at each angle.
    """
    m = np.asarray(mat, dtype=np.float64)
    h = 0.5 * np.asarray(thetas, dtype=np.float64)
    c, s = np.cos(h), np.sin(h)
    p = m[0, 0] * c - m[0, 1] * s
    q = m[1, 0] * c - m[1, 1] * s
    return _wrap(2.0 * np.arctan2(-q, p)), np.log(p * p + q * q)


def chord(t1, t2):
    """Chordal distance |e^{i t1} - e^{i t2}| on the circle."""
    return 2.0 * np.abs(np.sin(0.5 * (np.asarray(t1) - np.asarray(t2))))


@dataclass(frozen=True)
class Arc:
    """Closed arc on the circle: angles lo .. lo + width (counterclockwise)."""

    lo: float
    width: float

    def __post_init__(self):
        if not 0.0 < self.width < TWO_PI:
            raise InvalidConfigurationError(f"arc width {self.width} out of range")
        object.__setattr__(self, "lo", float(self.lo) % TWO_PI)

    @property
    def hi(self) -> float:
        return (self.lo + self.width) % TWO_PI

    def contains(self, theta, tol: float = 0.0):
        return np.mod(np.asarray(theta) - self.lo, TWO_PI) <= self.width + tol

    def interior_samples(self, n: int) -> np.ndarray:
        s = (np.arange(n) + 0.5) / n
        return _wrap(self.lo + s * self.width)

    @classmethod
    def from_endpoints(cls, lo: float, hi: float) -> "Arc":
        return cls(lo, (hi - lo) % TWO_PI)


@dataclass(frozen=True)
class Word:
    """Reduced word in the generators: signed 1-based indices."""

    letters: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise InvalidConfigurationError(f"word {self.letters} is not reduced")

    def __len__(self) -> int:
        return len(self.letters)


@dataclass
class _Segment:
    """One developed arc of a glued circle: ambient copy = dev @ arc."""

    arc_index: int
    dev: np.ndarray  # 2x2, development transform
    u_lo: float = 0.0


class Chain:
    """A glued circle of the fundamental boundary with its u-chart."""

    def __init__(self, segments, holonomy=None, full_circle=False):
        self.segments = segments
        self.full_circle = full_circle
        if full_circle:
            self.ell = TWO_PI
            self.holonomy = np.eye(2)
            return
        self.holonomy = holonomy
        tr = holonomy[0, 0] + holonomy[1, 1]
        if abs(tr) <= 2.0 + 1e-12:
            raise NotSchottkyError(f"chain holonomy not hyperbolic (trace {tr})")
        self._setup_chart(holonomy if tr > 0 else -holonomy)
        for seg in self.segments:
            seg.u_lo = float(self.u_of_ambient(np.array([seg.ambient_lo]))[0])
        self.segments[0].u_lo = 0.0

    # -- chart construction -------------------------------------------------

    def _setup_chart(self, h):
        a, b = h[0, 0], h[0, 1]
        c, d = h[1, 0], h[1, 1]
        lam_max = 0.5 * (abs(a + d) + math.sqrt((a + d) ** 2 - 4.0))
        self.ell = 2.0 * math.log(lam_max)
        if abs(c) < 1e-14 * max(abs(a), abs(d)):
            fixed = [np.array([1.0, 0.0]), np.array([b, d - a])]
        else:
            disc = math.sqrt((a - d) ** 2 + 4.0 * b * c)
            fixed = [
                np.array([(a - d) + disc, 2.0 * c]),
                np.array([(a - d) - disc, 2.0 * c]),
            ]
        theta0 = self.segments[0].ambient_lo
        v0 = _homog(theta0)
        rows = [np.array([p[1], -p[0]]) for p in fixed]  # each vanishes at its p

        def normalized(r1, r2):
            s1, s2 = r1 @ v0, r2 @ v0
            if s1 == 0.0 or s2 == 0.0:
                raise NotSchottkyError("chain start point hits a holonomy fixed point")
            return r1 / s1, r2 / s2

        # row1 vanishes at the repelling point; developing by h must advance u
        self._row1, self._row2 = normalized(rows[1], rows[0])
        v1 = _homog(act_angles(self.holonomy, np.array([theta0]))[0][0])
        ratio = (self._row1 @ v1) / (self._row2 @ v1)
        if ratio < 1.0:
            self._row1, self._row2 = normalized(rows[0], rows[1])
            v1r = (self._row1 @ v1) / (self._row2 @ v1)
            if v1r < 1.0:
                raise NotSchottkyError("could not orient the chain holonomy chart")

    # -- chart maps ----------------------------------------------------------

    def u_of_ambient(self, thetas):
        """u-coordinate of ambient development points (monotone lift)."""
        if self.full_circle:
            return np.asarray(thetas, dtype=np.float64)
        v = np.stack([-np.cos(0.5 * np.asarray(thetas)), np.sin(0.5 * np.asarray(thetas))])
        r1 = self._row1 @ v
        r2 = self._row2 @ v
        ratio = r1 / r2
        if np.any(ratio <= 0):
            raise NotSchottkyError("ambient point outside the development interval")
        return (TWO_PI / self.ell) * np.log(ratio)

    def ambient_of_u(self, u):
        """Ambient angle of the development at parameter u (any real u)."""
        u = np.asarray(u, dtype=np.float64)
        if self.full_circle:
            return _wrap(u)
        tau = np.exp(self.ell * u / TWO_PI)
        # solve (row1 - tau row2) . v = 0
        r = self._row1[None, :] - tau[..., None] * self._row2[None, :]
        v1, v2 = r[..., 1], -r[..., 0]
        return _wrap(2.0 * np.arctan2(v2, -v1))

    def dtheta_du_ambient(self, u):
        """Derivative d(theta_ambient)/du along the development."""
        u = np.asarray(u, dtype=np.float64)
        if self.full_circle:
            return np.ones_like(u)
        theta = self.ambient_of_u(u)
        h = 0.5 * theta
        v = np.stack([-np.cos(h), np.sin(h)])
        dv = np.stack([0.5 * np.sin(h), 0.5 * np.cos(h)])
        t1 = (self._row1 @ dv) / (self._row1 @ v)
        t2 = (self._row2 @ dv) / (self._row2 @ v)
        du_dtheta = (TWO_PI / self.ell) * (t1 - t2)
        return 1.0 / du_dtheta


def _homog(theta):
    return np.array([-math.cos(0.5 * theta), math.sin(0.5 * theta)])


@dataclass
class Gluing:
    """Identification of two fundamental-arc endpoints by a group element.

    ``mapping @ point(arc_from, 'lo') == point(arc_to, 'hi')`` on the circle.
    """

    arc_to: int  # arc whose hi endpoint is identified ...
    arc_from: int  # ... with the image of this arc's lo endpoint
    mapping: np.ndarray  # 2x2 matrix sending arc_from.lo to arc_to.hi


@dataclass
class QuotientNodes:
    """Equispaced-in-u nodes on the glued circles, with fundamental-arc
    representatives and chart weights for trapezoid quadrature."""

    counts: list[int]
    u: np.ndarray  # concatenated u values
    theta: np.ndarray  # fundamental-arc representative angles
    dtheta_du: np.ndarray  # chart weight at the representative

    @property
    def slices(self) -> list[slice]:
        out, off = [], 0
        for c in self.counts:
            out.append(slice(off, off + c))
            off += c
        return out

    @property
    def total(self) -> int:
        return int(sum(self.counts))


class FundamentalBoundary:
    """Fundamental arcs, endpoint gluings and the glued-circle charts."""

    def __init__(self, arcs, gluings, chains):
        self.arcs = arcs
        self.gluings = gluings
        self.chains = chains
        self._node_cache = {}

    @property
    def n_circles(self) -> int:
        return len(self.chains)

    def nodes(self, per_circle) -> QuotientNodes:
        """Quadrature nodes; ``per_circle`` is an int or list of ints."""
        if isinstance(per_circle, int):
            counts = [per_circle] * self.n_circles
        else:
            counts = [int(c) for c in per_circle]
        key = tuple(counts)
        if key in self._node_cache:
            return self._node_cache[key]
        u_all, th_all, w_all = [], [], []
        for chain, U in zip(self.chains, counts):
            u = TWO_PI * np.arange(U) / U
            if chain.full_circle:
                u_all.append(u)
                th_all.append(u.copy())
                w_all.append(np.ones(U))
                continue
            amb = chain.ambient_of_u(u)
            damb = chain.dtheta_du_ambient(u)
            breaks = np.array([seg.u_lo for seg in chain.segments])
            idx = np.clip(np.searchsorted(breaks, u + 1e-12, side="right") - 1, 0, len(breaks) - 1)
            theta = np.empty(U)
            weight = np.empty(U)
            for k, seg in enumerate(chain.segments):
                sel = idx == k
                if not np.any(sel):
                    continue
                inv_dev = np.linalg.inv(seg.dev)
                th_f, loga = act_angles(inv_dev, amb[sel])
                theta[sel] = th_f
                weight[sel] = damb[sel] * np.exp(-loga)
            u_all.append(u)
            th_all.append(theta)
            w_all.append(weight)
        nodes = QuotientNodes(
            counts=counts,
            u=np.concatenate(u_all),
            theta=np.concatenate(th_all),
            dtheta_du=np.concatenate(w_all),
        )
        self._node_cache[key] = nodes
        return nodes


@dataclass
class SchottkyData:
    """Validated Schottky group data: generators with paired arcs."""

    generators: list[GroupElement]
    paired_arcs: list[tuple[Arc, Arc]]
    rank_tag: int = 2
    boundary: FundamentalBoundary = field(default=None, repr=False)
    _word_cache: dict = field(default_factory=dict, repr=False)

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def generator_matrix(self, letter: int) -> np.ndarray:
        """Matrix of a signed generator index (negative = inverse)."""
        g = self.generators[abs(letter) - 1]
        return g.entries if letter > 0 else g.inv().entries

    def words(self, length: int):
        """Cached stacked word matrices up to the given length.

        Returns (mats (W,2,2), shell_ptr (length+2,), words list[Word]).
        """
        key = int(length)
        if key not in self._word_cache:
            self._word_cache[key] = _enumerate(self, key)
        return self._word_cache[key]


def _enumerate(data: SchottkyData, L: int):
    mats = [np.eye(2)]
    words = [Word(())]
    shell_ptr = [0, 1]
    prev = [((), np.eye(2))]
    r = data.n_generators
    letters = [i for i in range(1, r + 1)] + [-i for i in range(1, r + 1)]
    for _ in range(L):
        nxt = []
        for tail, mat in prev:
            for let in letters:
                if tail and tail[-1] == -let:
                    continue
                nxt.append((tail + (let,), mat @ data.generator_matrix(let)))
        for tail, mat in nxt:
            words.append(Word(tail))
            mats.append(mat)
        shell_ptr.append(len(mats))
        prev = nxt
        if not prev:
            break
    while len(shell_ptr) < L + 2:
        shell_ptr.append(len(mats))
    return np.array(mats), np.array(shell_ptr, dtype=np.int64), words


def enumerate_words(data: SchottkyData, L: int):
    """All reduced words of length <= L with their matrices, in BFS order."""
    if L < 0:
        raise InvalidConfigurationError("L must be >= 0")
    mats, _, words = data.words(L)
    return list(zip(words, [GroupElement(m, data.rank_tag) for m in mats]))


def word_count(r: int, L: int) -> int:
    """1 + sum_k 2r (2r-1)^{k-1}: reduced words of length <= L."""
    if r == 0:
        return 1
    total = 1
    for k in range(1, L + 1):
        total += 2 * r * (2 * r - 1) ** (k - 1)
    return total


# ---------------------------------------------------------------------------
# construction & validation


def build_schottky(gens, arcs, rank_tag: int = 2, samples: int = 256) -> SchottkyData:
    """Validate generators against their paired arcs and build the glued
    fundamental boundary.

    ``gens`` is a list of GroupElement (or 2x2 arrays), ``arcs`` a list of
    (source, target) Arc pairs, one per generator.
    """
    gens = [
        g if isinstance(g, GroupElement) else GroupElement.from_matrix(g, rank_tag)
        for g in gens
    ]
    if len(gens) != len(arcs):
        raise InvalidConfigurationError("one arc pair per generator required")
    pairs = [tuple(p) for p in arcs]
    flat = [a for p in pairs for a in p]
    _check_disjoint(flat)
    for g, (src, tgt) in zip(gens, pairs):
        _check_pairing(g, src, tgt, samples)
    data = SchottkyData(generators=gens, paired_arcs=pairs, rank_tag=rank_tag)
    data.boundary = _build_boundary(data)
    if gens:
        _check_distinct_words(data)
    return data


def _check_disjoint(arcs):
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            a, b = arcs[i], arcs[j]
            gap_ab = (b.lo - a.lo) % TWO_PI
            gap_ba = (a.lo - b.lo) % TWO_PI
            if gap_ab < a.width or gap_ba < b.width:
                raise InvalidConfigurationError(
                    f"arcs {i} and {j} overlap: [{a.lo:.6f},{a.width:.6f}] "
                    f"vs [{b.lo:.6f},{b.width:.6f}]"
                )


def _check_pairing(g, src, tgt, samples):
    mat = g.entries.real if g.rank_tag == 3 else g.entries
    if g.rank_tag == 3 and np.max(np.abs(g.entries.imag)) > 1e-12:
        raise NotSchottkyError("rank-3 Schottky data must come from real generators")
    # orientation forces lo -> hi, hi -> lo between the paired endpoints
    img_lo, _ = act_angles(mat, np.array([src.lo]))
    img_hi, _ = act_angles(mat, np.array([src.hi]))
    if chord(img_lo[0], tgt.hi) > _MATCH_TOL or chord(img_hi[0], tgt.lo) > _MATCH_TOL:
        raise NotSchottkyError(
            "generator does not map the source arc boundary onto the target "
            f"arc boundary (got {img_lo[0]:.8f}, {img_hi[0]:.8f}; "
            f"expected {tgt.hi:.8f}, {tgt.lo:.8f})"
        )
    # exterior of source maps into the (closed) target arc
    outside = _wrap(src.hi + (np.arange(samples) + 0.5) / samples * (TWO_PI - src.width))
    img, _ = act_angles(mat, outside)
    if not np.all(tgt.contains(img, tol=1e-9)):
        raise NotSchottkyError("generator does not map the source exterior into the target arc")


def _check_distinct_words(data, L: int = 3):
    mats, _, words = data.words(L)
    n = len(mats)
    if n != word_count(data.n_generators, L):
        raise NotSchottkyError("word enumeration lost elements")
    flat = mats.reshape(n, 4)
    for i in range(n):
        diff = np.max(np.abs(flat[i + 1 :] - flat[i]), axis=1)
        if diff.size and np.min(diff) <= 1e-8:
            raise NotSchottkyError("distinct reduced words gave equal matrices")


# ---------------------------------------------------------------------------
# fundamental boundary and glued circles


def _build_boundary(data: SchottkyData) -> FundamentalBoundary:
    if not data.generators:
        seg = _Segment(arc_index=0, dev=np.eye(2))
        seg.ambient_lo = 0.0
        chain = Chain([seg], None, full_circle=True)
        return FundamentalBoundary(
            arcs=[Arc(0.0, TWO_PI - 1e-15)], gluings=[], chains=[chain]
        )

    intervals = []  # (lo, width, gen_index, kind)
    for m, (src, tgt) in enumerate(data.paired_arcs):
        intervals.append((src.lo, src.width, m, "src"))
        intervals.append((tgt.lo, tgt.width, m, "tgt"))
    intervals.sort()
    arcs = []
    for k in range(len(intervals)):
        lo_int = intervals[k]
        prev_int = intervals[k - 1]
        start = (prev_int[0] + prev_int[1]) % TWO_PI
        width = (lo_int[0] - start) % TWO_PI
        if width <= 1e-12:
            raise InvalidConfigurationError("paired arcs leave no fundamental arc between them")
        arcs.append(Arc(start, width))

    def arc_starting_at(theta):
        for j, a in enumerate(arcs):
            if chord(a.lo, theta) < _MATCH_TOL:
                return j
        raise InvalidConfigurationError("no fundamental arc at expected seam point")

    # seam at the hi end of each arc: which interval begins there
    gluings = []
    seam_of = {}
    for i, a in enumerate(arcs):
        k = next(
            idx
            for idx, iv in enumerate(intervals)
            if chord(iv[0], a.hi) < _MATCH_TOL
        )
        lo_iv, _, m, kind = intervals[k]
        gen = data.generators[m]
        src, tgt = data.paired_arcs[m]
        if kind == "src":
            g_ij = gen.entries.real if data.rank_tag == 3 else gen.entries
            j = arc_starting_at(tgt.hi)
        else:
            g_ij = (
                gen.inv().entries.real if data.rank_tag == 3 else gen.inv().entries
            )
            j = arc_starting_at(src.hi)
        gluings.append(Gluing(arc_to=i, arc_from=j, mapping=np.asarray(g_ij, dtype=np.float64)))
        seam_of[i] = gluings[-1]

    chains = []
    remaining = set(range(len(arcs)))
    while remaining:
        start = min(remaining)
        segs = []
        g = np.eye(2)
        arc = start
        while True:
            seg = _Segment(arc_index=arc, dev=g.copy())
            theta_lo, _ = act_angles(g, np.array([arcs[arc].lo]))
            seg.ambient_lo = float(theta_lo[0])
            segs.append(seg)
            remaining.discard(arc)
            gl = seam_of[arc]
            g = g @ np.linalg.inv(gl.mapping)
            arc = gl.arc_from
            if arc == start:
                holonomy = g
                break
            if arc not in remaining:
                raise InvalidConfigurationError("seam combinatorics do not close up")
        # contiguity of the development
        for s_prev, s_next in zip(segs, segs[1:] + [None]):
            a_prev = arcs[s_prev.arc_index]
            end_theta, _ = act_angles(s_prev.dev, np.array([a_prev.hi]))
            if s_next is None:
                nxt_theta, _ = act_angles(holonomy, np.array([arcs[start].lo]))
            else:
                nxt_theta = np.array([s_next.ambient_lo])
            if chord(end_theta[0], nxt_theta[0]) > 1e-7:
                raise NotSchottkyError("developed arcs are not contiguous")
        chains.append(Chain(segs, holonomy))
    return FundamentalBoundary(arcs=arcs, gluings=gluings, chains=chains)


# ---------------------------------------------------------------------------
# displacement and embedding


def min_displacement(data: SchottkyData, Lcheck: int, samples_per_arc: int = 256) -> float:
    """Minimum chordal displacement chord(x, g x) over nontrivial words of
    length <= Lcheck and boundary samples x in the fundamental arcs."""
    if Lcheck < 1:
        raise InvalidConfigurationError("Lcheck must be >= 1")
    if not data.generators:
        return math.inf
    mats, shell_ptr, _ = data.words(Lcheck)
    pts = np.concatenate(
        [a.interior_samples(samples_per_arc) for a in data.boundary.arcs]
    )
    best = math.inf
    for w in range(1, len(mats)):  # skip the identity
        mat = mats[w].real if np.iscomplexobj(mats[w]) else mats[w]
        img, _ = act_angles(mat, pts)
        d = float(np.min(chord(img, pts)))
        best = min(best, d)
    if best <= 1e-12:
        raise NotProperlyDiscontinuousError(
            f"a nontrivial word moved a sample by only {best:.3e}"
        )
    return best


def embed_next_rank(data: SchottkyData) -> SchottkyData:
    """Reinterpret a rank-2 group inside the rank-3 model (same matrices,
    equatorial arcs, limit set unchanged)."""
    if data.rank_tag != 2:
        raise UnsupportedRankError("embedding is defined for rank_tag 2 only")
    gens3 = [g.embed() for g in data.generators]
    out = SchottkyData(
        generators=gens3, paired_arcs=list(data.paired_arcs), rank_tag=3
    )
    out.boundary = data.boundary
    return out
