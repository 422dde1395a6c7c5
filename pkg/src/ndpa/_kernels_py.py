"""Pure numpy implementations of the hot loops.

These are the reference versions; ``_ckernels.pyx`` mirrors them line for
line and must produce identical results to rounding.
"""
import numpy as np


def laguerre_recurrence(n, alpha, x):
    """Associated Laguerre ``L_n^alpha(x)`` by upward recurrence in ``n``."""
    x = np.asarray(x, dtype=np.float64)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + alpha - x
    for j in range(1, n):
        nxt = ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1)
        prev, cur = cur, nxt
    return cur


def _apply_h(x, k0, kp, w, s, c):
    # -i H x for H = w*diag(k0) + s + c*L + conj(c)*L^T, L the subdiagonal kp
    y = (w * k0 + s) * x
    y[1:] += c * kp * x[:-1]
    y[:-1] += np.conj(c) * kp * x[1:]
    return -1j * y


def rk4_tridiag(psi0, k0, kp, omega, shift, coupling, dt, record_every):
    """Classical RK4 for ``i dpsi/dt = H(t) psi`` with tridiagonal ``H``.

    ``omega``, ``shift`` and ``coupling`` hold the time-dependent
    coefficients sampled on the half-step grid (length ``2*steps + 1``).
    Returns the recorded step indices and the states at those steps.
    """
    psi = np.array(psi0, dtype=np.complex128)
    k0 = np.asarray(k0, dtype=np.float64)
    kp = np.asarray(kp, dtype=np.float64)
    if record_every < 1:
        raise ValueError("record_every must be positive")
    if kp.size != psi.size - 1 or k0.size != psi.size:
        raise ValueError("k0 and kp must have lengths dim and dim - 1")
    if not len(omega) == len(shift) == len(coupling) or len(omega) % 2 == 0:
        raise ValueError("coefficient arrays must share an odd length 2*steps + 1")
    steps = (len(omega) - 1) // 2
    rec = list(range(0, steps + 1, record_every))
    if rec[-1] != steps:
        rec.append(steps)
    out = np.empty((len(rec), psi.size), dtype=np.complex128)
    out[0] = psi
    slot = 1
    half = 0.5 * dt
    for i in range(steps):
        j = 2 * i
        k1 = _apply_h(psi, k0, kp, omega[j], shift[j], coupling[j])
        k2 = _apply_h(psi + half * k1, k0, kp, omega[j + 1], shift[j + 1], coupling[j + 1])
        k3 = _apply_h(psi + half * k2, k0, kp, omega[j + 1], shift[j + 1], coupling[j + 1])
        k4 = _apply_h(psi + dt * k3, k0, kp, omega[j + 2], shift[j + 2], coupling[j + 2])
        psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if slot < len(rec) and rec[slot] == i + 1:
            out[slot] = psi
            slot += 1
    return np.asarray(rec, dtype=np.int64), out
