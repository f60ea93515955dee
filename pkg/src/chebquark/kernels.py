"""Legendre machinery and partial-wave kernels of the Coulomb-plus-linear potential.

In momentum space the Coulomb and linear potentials project, for orbital
momentum ell, onto kernels built from the Legendre function of the second
kind at z = (x^2 + x'^2)/(2 x x') >= 1.  The log singularity at x' = x is
carried entirely by Q_0(z) = log|(x'+x)/(x'-x)|, the double pole by Q_0'(z).
This module supplies the polynomial pieces (P_ell, the polynomial remainder
w_{ell-1}, and their derivatives) and groups them the way the solver consumes
them: a log coefficient, a regular remainder, and the principal value factor
left after the double pole has been reduced by integration by parts.

All functions accept scalars or numpy arrays in z.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def legendre_P(ell, z, with_derivative=False):
    """Legendre polynomial P_ell(z), optionally with its derivative.

    Values by the Bonnet recurrence, derivative from
    (z^2 - 1) P'_ell = ell (z P_ell - P_{ell-1}); the formula degenerates at
    z = 1 where P'_ell(1) = ell(ell+1)/2 is substituted directly.
    """
    if ell < 0:
        raise ValueError("orbital momentum must be nonnegative")
    z = np.asarray(z, dtype=float)
    pkm1 = np.ones_like(z)
    if ell == 0:
        p = pkm1
        pprev = np.zeros_like(z)
    else:
        pprev = pkm1
        p = z.copy()
        for k in range(2, ell + 1):
            pprev, p = p, ((2 * k - 1) * z * p - (k - 1) * pprev) / k
    if not with_derivative:
        return p if p.ndim else float(p)
    if ell == 0:
        dp = np.zeros_like(z)
    else:
        denom = z * z - 1.0
        at_one = np.isclose(denom, 0.0, atol=1e-14)
        safe = np.where(at_one, 1.0, denom)
        dp = ell * (z * p - pprev) / safe
        dp = np.where(at_one, 0.5 * ell * (ell + 1) * np.sign(z) ** (ell + 1), dp)
    if p.ndim:
        return p, dp
    return float(p), float(dp)


def w_poly(ell, z, with_derivative=False):
    """Polynomial remainder w_{ell-1}(z) of Q_ell, and optionally its derivative.

    w_{ell-1}(z) = sum_{n=1..ell} P_{n-1}(z) P_{ell-n}(z) / n.  The term is
    absent from the kernels at ell = 0, so ell >= 1 is required here.
    """
    if ell < 1:
        raise ValueError("polynomial remainder exists only for ell >= 1")
    z = np.asarray(z, dtype=float)
    w = np.zeros_like(z)
    dw = np.zeros_like(z)
    table = [legendre_P(k, z, with_derivative=True) for k in range(ell)]
    for n in range(1, ell + 1):
        pa, dpa = table[n - 1]
        pb, dpb = table[ell - n]
        w = w + pa * pb / n
        if with_derivative:
            dw = dw + (dpa * pb + pa * dpb) / n
    if not with_derivative:
        return w if w.ndim else float(w)
    if w.ndim:
        return w, dw
    return float(w), float(dw)


def q0(z):
    """Q_0(z) = (1/2) log|(1+z)/(1-z)|, for z > 1 equal to log|(x'+x)/(x'-x)|."""
    z = np.asarray(z, dtype=float)
    if np.any(np.isclose(z, 1.0, atol=1e-15)):
        raise ValueError("Q_0 is singular at z = 1")
    out = 0.5 * np.log(np.abs((1.0 + z) / (1.0 - z)))
    return out if out.ndim else float(out)


def q0_prime(z):
    """Q_0'(z) = 1/(1 - z^2); carries the double pole of the linear kernel."""
    z = np.asarray(z, dtype=float)
    if np.any(np.isclose(z, 1.0, atol=1e-15)):
        raise ValueError("Q_0' is singular at z = 1")
    out = 1.0 / (1.0 - z * z)
    return out if out.ndim else float(out)


def z_of(x, xp):
    """Kernel argument z = (x^2 + x'^2)/(2 x x') >= 1, equal to 1 iff x = x'."""
    x = np.asarray(x, dtype=float)
    xp = np.asarray(xp, dtype=float)
    if np.any(x <= 0.0) or np.any(xp <= 0.0):
        raise ValueError("momenta must be positive")
    out = (x * x + xp * xp) / (2.0 * x * xp)
    return out if out.ndim else float(out)


def z_minus_one(x, xp):
    """Cancellation-free z - 1 = (x - x')^2 / (2 x x') for near-diagonal work."""
    x = np.asarray(x, dtype=float)
    xp = np.asarray(xp, dtype=float)
    out = (x - xp) ** 2 / (2.0 * x * xp)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class KernelPieces:
    """Kernel of the bound-state equation at one (x, x'), grouped by singularity.

    The right-hand side of the equation reads, schematically,

      [linear_log_coeff * log|(x'+x)/(x'-x)| + linear_regular] phi(x') dx'
      + pv_factor * {chi(x') + phi(x') d/dx'} applied under PV dx'/(x'-x)
      + [coulomb_log_coeff * log|(x'+x)/(x'-x)| + coulomb_regular] phi(x') dx'

    pv_factor_dxp is the analytic x'-derivative of the known factor inside
    the PV brace (the d/dx' term acting on pv_factor's kernel).
    """

    ell: int
    x: float
    xp: float
    alpha: float
    z: float
    linear_log_coeff: float
    linear_regular: float
    pv_factor: float
    pv_factor_dxp: float
    coulomb_log_coeff: float
    coulomb_regular: float


def kernel_pieces(ell, x, xp, alpha):
    """Evaluate all kernel groupings at one off-diagonal point (x, x')."""
    if x <= 0.0 or xp <= 0.0:
        raise ValueError("momenta must be positive")
    z = z_of(x, xp)
    p, dp = legendre_P(ell, z, with_derivative=True)
    if ell >= 1:
        w, dw = w_poly(ell, z, with_derivative=True)
    else:
        w = dw = 0.0
    lin_log = dp / (np.pi * x * x)
    lin_reg = -dw / (np.pi * x * x)
    pv_fac = -(4.0 / np.pi) * xp * xp * p / (xp + x) ** 2
    pv_dxp = -(4.0 / np.pi) * _pv_kernel_dxp(ell, x, xp, z, p, dp)
    cou_log = -(alpha / (np.pi * x)) * p * xp
    cou_reg = (alpha / (np.pi * x)) * w * xp
    return KernelPieces(
        ell=ell, x=float(x), xp=float(xp), alpha=float(alpha), z=float(z),
        linear_log_coeff=float(lin_log), linear_regular=float(lin_reg),
        pv_factor=float(pv_fac), pv_factor_dxp=float(pv_dxp),
        coulomb_log_coeff=float(cou_log), coulomb_regular=float(cou_reg),
    )


def _pv_kernel_dxp(ell, x, xp, z, p, dp):
    """d/dx' of x'^2 P_ell(z)/(x'+x)^2 by the chain rule through z."""
    # d/dx' [x'^2/(x'+x)^2] = 2 x x'/(x'+x)^3;  dz/dx' = (x'^2 - x^2)/(2 x x'^2)
    return (
        p * 2.0 * x * xp / (xp + x) ** 3
        + dp * (xp * xp - x * x) / (2.0 * x * (xp + x) ** 2)
    )
