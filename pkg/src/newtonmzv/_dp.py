"""Compiled single-pass dynamic program for totally ordered nested sums.

Positions ``0..w-1`` run from the outermost variable to the innermost one.
Position ``j`` carries the kernel

    x**-e[j] * (x + z)**-s[j] * (z / (x (x + z)))**t[j]

and ``strict[j]`` says whether ``x_j > x_{j+1}`` (else ``x_j >= x_{j+1}``).
The innermost variable is >= 1.

Sweeping ``x = 1..M`` once, ``acc[j]`` holds the sum over ``x_j <= x - 1``
of position ``j``'s partial nested sum, so a weak comparator reads
``acc[j+1] + cur[j+1]`` and a strict one reads ``acc[j+1]``.  Every running
sum is compensated (TwoSum) in both real and imaginary parts.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _kernel(x, z, e, s, t):
    inv_x = 1.0 / x
    inv_xz = 1.0 / (x + z)
    f = 1.0 + 0.0j
    for _ in range(e):
        f *= inv_x
    for _ in range(s):
        f *= inv_xz
    if t > 0:
        tilde = z * inv_x * inv_xz
        for _ in range(t):
            f *= tilde
    return f


@njit(cache=True, nogil=True)
def chain_sweep(e, s, t, strict, min_x, z, checkpoints):
    """Run the sweep up to ``checkpoints[-1]``.

    Returns ``(totals, inner, abs_mass)``: the outer running sum and the
    outermost variable's inner factor (the sum it multiplies) at every
    checkpoint, plus the sum of absolute values of the outer summands.
    """
    w = e.shape[0]
    M = checkpoints[-1]
    n_cp = checkpoints.shape[0]
    hi = np.zeros(w, dtype=np.complex128)
    lo = np.zeros(w, dtype=np.complex128)
    cur = np.zeros(w, dtype=np.complex128)
    totals = np.zeros(n_cp, dtype=np.complex128)
    inner = np.zeros(n_cp, dtype=np.complex128)
    abs_mass = 0.0
    c = 0
    outer_inner = 0.0 + 0.0j
    for x in range(1, M + 1):
        xf = float(x)
        for j in range(w - 1, -1, -1):
            if x < min_x[j]:
                cur[j] = 0.0
                if j == 0:
                    outer_inner = 0.0
                continue
            if j == w - 1:
                b = 1.0 + 0.0j
            else:
                b = hi[j + 1] + lo[j + 1]
                if not strict[j]:
                    b += cur[j + 1]
            if j == 0:
                outer_inner = b
            cur[j] = _kernel(xf, z, e[j], s[j], t[j]) * b
        for j in range(w):
            a = cur[j]
            tot = hi[j] + a
            bp = tot - hi[j]
            lo[j] += (hi[j] - (tot - bp)) + (a - bp)
            hi[j] = tot
        abs_mass += abs(cur[0])
        while c < n_cp and checkpoints[c] == x:
            totals[c] = hi[0] + lo[0]
            inner[c] = outer_inner
            c += 1
    return totals, inner, abs_mass


@njit(cache=True, nogil=True)
def kernel_values(xs, z, e, s, t):
    out = np.empty(xs.shape[0], dtype=np.complex128)
    for i in range(xs.shape[0]):
        out[i] = _kernel(xs[i], z, e, s, t)
    return out
