"""NumPy reference implementation of the word-sum kernels.

These two routines are the hot inner loops of the whole package: every
Poincare series, averaged section and scattering-matrix column reduces to
them.  For a stack of group elements ``g_w`` (the enumerated words) and
boundary angles ``theta_b`` they accumulate

    sum_w exp(s * t[w, b]) * exp(i * m * theta'[w, b]),   |m| <= m_max,

where ``t[w, b]`` is the Iwasawa A-coordinate of ``g_w k(theta_b / 2)`` and
``theta'[w, b]`` the boundary angle of its K-factor.  Words are processed
shell by shell (length by length) in a fixed order so results are
deterministic, and per-shell absolute sums are returned for tail bounds.

A compiled Cython twin lives in ``_speedups.pyx``; ``kernels/__init__``
selects whichever is importable.
"""

import numpy as np

# Keep the (words x nodes) scratch blocks around this many complex entries.
_CHUNK_ENTRIES = 2_000_000


def _chunk(n_words: int, n_nodes: int) -> int:
    return max(1, min(n_words, _CHUNK_ENTRIES // max(1, n_nodes)))


def _cocycle_block(mats, cos_h, sin_h):
    """(loga, theta') for a block of real matrices against all nodes."""
    p = mats[:, 0, 0, None] * cos_h - mats[:, 0, 1, None] * sin_h
    q = mats[:, 1, 0, None] * cos_h - mats[:, 1, 1, None] * sin_h
    loga = np.log(p * p + q * q)
    theta_out = 2.0 * np.arctan2(-q, p)
    return loga, theta_out


def cocycle_tables(mats, thetas):
    """Iwasawa cocycle of ``g_w k(theta_b/2)`` for every word and node.

    Returns ``(loga, theta_out)`` of shape (W, B): the A-coordinate
    ⟨H0, log a⟩ and the boundary angle of the K-factor (the moved point).
    Real 2x2 matrices only.
    """
    mats = np.asarray(mats, dtype=np.float64)
    thetas = np.asarray(thetas, dtype=np.float64)
    half = 0.5 * thetas
    return _cocycle_block(mats, np.cos(half), np.sin(half))


def mode_sums(mats, thetas, s, m_max, shell_ptr):
    """Accumulate weighted Fourier modes of a word sum.

    Parameters
    ----------
    mats : (W, 2, 2) float array, words in fixed enumeration order
    thetas : (B,) node angles
    s : complex exponent applied to the A-coordinate
    m_max : highest mode; columns run m = -m_max .. m_max
    shell_ptr : (n_shells + 1,) int offsets of word-length shells

    Returns
    -------
    acc : (B, 2*m_max+1) complex, acc[b, m_max+m] = sum_w e^{s t} e^{i m theta'}
    shell_abs : (n_shells, B) float, per-shell sums of |e^{s t}|
    """
    mats = np.asarray(mats, dtype=np.float64)
    thetas = np.asarray(thetas, dtype=np.float64)
    shell_ptr = np.asarray(shell_ptr, dtype=np.int64)
    s = complex(s)
    n_words = mats.shape[0]
    n_nodes = thetas.shape[0]
    n_shells = shell_ptr.shape[0] - 1
    acc = np.zeros((2 * m_max + 1, n_nodes), dtype=np.complex128)
    shell_abs = np.zeros((n_shells, n_nodes), dtype=np.float64)
    half = 0.5 * thetas
    cos_h, sin_h = np.cos(half), np.sin(half)
    step = _chunk(n_words, n_nodes)
    for shell in range(n_shells):
        lo, hi = int(shell_ptr[shell]), int(shell_ptr[shell + 1])
        for start in range(lo, hi, step):
            stop = min(start + step, hi)
            loga, theta_out = _cocycle_block(mats[start:stop], cos_h, sin_h)
            w = np.exp(s * loga)
            shell_abs[shell] += np.abs(w).sum(axis=0)
            acc[m_max] += w.sum(axis=0)
            if m_max > 0:
                z = np.exp(1j * theta_out)
                pos = w.astype(np.complex128)
                neg = pos.copy()
                zc = np.conj(z)
                for m in range(1, m_max + 1):
                    pos = pos * z
                    neg = neg * zc
                    acc[m_max + m] += pos.sum(axis=0)
                    acc[m_max - m] += neg.sum(axis=0)
    return acc.T.copy(), shell_abs


def power_shell_sums(mats, thetas, s, shell_ptr):
    """Plain word sums sum_w e^{s t[w,b]} with per-shell absolute sums.

    Accepts real or complex matrices (ranks 2 and 3 share the formula
    t = log(|p|^2 + |q|^2) for the first column (p, q) of g_w k(theta/2)).

    Returns ``(total (B,) complex, shell_abs (n_shells, B) float)``.
    """
    mats = np.asarray(mats)
    if not np.iscomplexobj(mats):
        mats = mats.astype(np.float64)
    thetas = np.asarray(thetas, dtype=np.float64)
    shell_ptr = np.asarray(shell_ptr, dtype=np.int64)
    s = complex(s)
    n_words = mats.shape[0]
    n_nodes = thetas.shape[0]
    n_shells = shell_ptr.shape[0] - 1
    total = np.zeros(n_nodes, dtype=np.complex128)
    shell_abs = np.zeros((n_shells, n_nodes), dtype=np.float64)
    half = 0.5 * thetas
    cos_h, sin_h = np.cos(half), np.sin(half)
    step = _chunk(n_words, n_nodes)
    for shell in range(n_shells):
        lo, hi = int(shell_ptr[shell]), int(shell_ptr[shell + 1])
        for start in range(lo, hi, step):
            stop = min(start + step, hi)
            block = mats[start:stop]
            p = block[:, 0, 0, None] * cos_h - block[:, 0, 1, None] * sin_h
            q = block[:, 1, 0, None] * cos_h - block[:, 1, 1, None] * sin_h
            loga = np.log(np.abs(p) ** 2 + np.abs(q) ** 2)
            w = np.exp(s * loga)
            total += w.sum(axis=0)
            shell_abs[shell] += np.abs(w).sum(axis=0)
    return total, shell_abs
