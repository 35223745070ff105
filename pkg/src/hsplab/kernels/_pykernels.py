"""Numpy implementations of the statevector kernels.

Same signatures and in-place semantics as the compiled module. ``base`` and
``offsets`` split a flat index into the part fixed by non-target registers and
the part enumerating the target subspace, so a gate update is a gather, a small
matrix product, and a scatter.
"""

import numpy as np


def apply_matrix(amps, U, base, offsets):
    idx = base[:, None] + offsets[None, :]
    amps[idx] = amps[idx] @ U.T


def oracle_add(amps, fvals, sx, dx, sy, dy):
    i = np.arange(amps.shape[0], dtype=np.int64)
    x = (i // sx) % dx
    y = (i // sy) % dy
    j = i + ((y + fvals[x]) % dy - y) * sy
    out = np.empty_like(amps)
    out[j] = amps
    return out


def marginal(amps, s, d):
    i = np.arange(amps.shape[0], dtype=np.int64)
    return np.bincount((i // s) % d, weights=amps.real**2 + amps.imag**2, minlength=d)


def project(amps, s, d, outcome):
    i = np.arange(amps.shape[0], dtype=np.int64)
    amps[(i // s) % d != outcome] = 0
    return float(np.vdot(amps, amps).real)
