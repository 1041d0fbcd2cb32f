"""Scalar special functions: log-gamma, Jacobi polynomials, associated Legendre functions,
complex and real spherical harmonics and solid harmonics.

Angles follow one convention throughout the package: ``theta`` is the colatitude in
[0, pi] and ``phi`` the azimuth in [0, 2 pi). All functions accept numpy arrays and
broadcast; scalar input gives a Python scalar back.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any

import numpy as np

from fraclap.core.errors import DimensionError, DomainError, HarmonicIndexError
from fraclap.models.params import HarmonicIndex, JacobiParams


# Lanczos approximation with g = 6.0246800407767295 and 13 terms, in the "exp(g) scaled"
# rational form of the cephes/Boost lanczos13m53 kernel. Both polynomials are stored with the
# highest power first. The denominator is x (x + 1) ... (x + 11).
LANCZOS_G = 6.024680040776729583740234375
_LANCZOS_NUM = np.array(
    [
        0.006061842346248906525783753964555936883222,
        0.5098416655656676188125178644804694509993,
        19.51992788247617482847860966235652136208,
        449.9445569063168119446858607650988409623,
        6955.999602515376140356310115515198987526,
        75999.29304014542649875303443598909137092,
        601859.6171681098786670226533699352302507,
        3481712.15498064590882071018964774556468,
        14605578.08768506808414169982791359218571,
        43338889.32467613834773723740590533316085,
        86363131.28813859145546927288977868422342,
        103794043.1163445451906271053616070238554,
        56906521.91347156388090791033559122686859,
    ]
)
_LANCZOS_DENOM = np.array(
    [
        1.0,
        66.0,
        1925.0,
        32670.0,
        357423.0,
        2637558.0,
        13339535.0,
        45995730.0,
        105258076.0,
        150917976.0,
        120543840.0,
        39916800.0,
        0.0,
    ]
)


def _scalar_or_array(value: np.ndarray) -> Any:
    return value.item() if value.ndim == 0 else value


def _lanczos_sum_expg_scaled(x: np.ndarray) -> np.ndarray:
    small = x <= 1.0
    safe = np.where(small, 2.0, x)
    y = 1.0 / safe
    # For x > 1 both polynomials are evaluated in 1/x (same degree, so x^12 cancels).
    large_ratio = np.polyval(_LANCZOS_NUM[::-1], y) / np.polyval(_LANCZOS_DENOM[::-1], y)
    x_small = np.where(small, x, 1.0)
    small_ratio = np.polyval(_LANCZOS_NUM, x_small) / np.polyval(_LANCZOS_DENOM, x_small)
    return np.where(small, small_ratio, large_ratio)


def _log_gamma_right(x: np.ndarray) -> np.ndarray:
    zgh = x + LANCZOS_G - 0.5
    return (x - 0.5) * (np.log(zgh) - 1.0) + np.log(_lanczos_sum_expg_scaled(x))


def log_gamma(x: Any) -> Any:
    """ln Gamma(x) for x > 0."""

    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x <= 0.0):
        raise DomainError("log_gamma is only defined here for finite x > 0")

    reflect = x < 0.5
    right = _log_gamma_right(np.where(reflect, 1.0 - x, x))
    # Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    reflected = np.log(np.pi / np.sin(np.pi * np.where(reflect, x, 0.25))) - right
    return _scalar_or_array(np.where(reflect, reflected, right))


def beta_moment(j: Any, exponent: float) -> Any:
    """Integral of r^j (1 - r^2)^exponent over [0, 1], i.e. B((j + 1) / 2, exponent + 1) / 2."""

    j = np.asarray(j, dtype=float)
    p = 0.5 * (j + 1.0)
    q = exponent + 1.0
    log_beta = log_gamma(p) + log_gamma(q) - log_gamma(p + q)
    return _scalar_or_array(0.5 * np.exp(np.asarray(log_beta)))


def jacobi_table(a: float, b: float, n_max: int, z: Any) -> np.ndarray:
    """P_k^{(a, b)}(z) for k = 0..n_max, stacked along the first axis.

    Ascending three-term recurrence (Karniadakis & Sherwin form).
    """

    z = np.asarray(z, dtype=float)
    table = np.empty((n_max + 1,) + z.shape)
    table[0] = 1.0
    if n_max == 0:
        return table

    apb = a + b
    table[1] = 0.5 * (a - b + (apb + 2.0) * z)
    for k in range(2, n_max + 1):
        a1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0)
        a2 = (2.0 * k + apb - 1.0) * (a * a - b * b)
        a3 = (2.0 * k + apb - 2.0) * (2.0 * k + apb - 1.0) * (2.0 * k + apb)
        a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + apb)
        table[k] = ((a2 + a3 * z) * table[k - 1] - a4 * table[k - 2]) / a1
    return table


def jacobi_eval(p: JacobiParams, z: Any) -> Any:
    return _scalar_or_array(jacobi_table(p.a, p.b, p.n, z)[p.n])


def jacobi_series(p: JacobiParams, z: Any) -> Any:
    """Jacobi polynomial from its terminating hypergeometric series, summed in exact rational
    arithmetic (reference evaluation)."""

    z = np.asarray(z, dtype=float)
    a, b, n = Fraction(p.a), Fraction(p.b), p.n
    c = 1 + a + b + n
    lead = Fraction(1)
    for j in range(1, n + 1):
        lead *= (a + j) / j

    out = np.empty(z.shape)
    for idx, zv in np.ndenumerate(z):
        x = (1 - Fraction(float(zv))) / 2
        term = total = lead
        for k in range(n):
            term *= Fraction(-(n - k), k + 1) * (c + k) / (a + 1 + k) * x
            total += term
        out[idx] = float(total)
    return _scalar_or_array(out)


def _legendre_columns(m: int, l_max: int, x: np.ndarray) -> np.ndarray:
    """Normalized associated Legendre values for degrees m..l_max at fixed order m >= 0.

    Normalization sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) is built into the recurrence; no
    Condon-Shortley phase.
    """

    sin_theta = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    pmm = np.full(x.shape, 1.0 / math.sqrt(4.0 * math.pi))
    for k in range(1, m + 1):
        pmm = pmm * math.sqrt((2.0 * k + 1.0) / (2.0 * k)) * sin_theta

    out = np.empty((l_max - m + 1,) + x.shape)
    out[0] = pmm
    if l_max == m:
        return out

    out[1] = math.sqrt(2.0 * m + 3.0) * x * pmm
    for l in range(m + 2, l_max + 1):
        a_lm = math.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
        b_lm = math.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
        out[l - m] = a_lm * (x * out[l - m - 1] - b_lm * out[l - m - 2])
    return out


def legendre_normalized(h: HarmonicIndex, x: Any) -> Any:
    if h.m < 0:
        raise HarmonicIndexError("associated Legendre functions are tabulated for m >= 0", l=h.l, m=h.m)
    x = np.asarray(x, dtype=float)
    return _scalar_or_array(_legendre_columns(h.m, h.l, x)[-1])


def assoc_legendre(h: HarmonicIndex, x: Any) -> Any:
    """P_l^m(x), m >= 0, without the Condon-Shortley phase."""

    scaled = np.asarray(legendre_normalized(h, x))
    log_norm = 0.5 * (
        math.log((2.0 * h.l + 1.0) / (4.0 * math.pi))
        + log_gamma(h.l - h.m + 1.0)
        - log_gamma(h.l + h.m + 1.0)
    )
    return _scalar_or_array(scaled / math.exp(log_norm))


def sph_harm_complex(h: HarmonicIndex, theta: Any, phi: Any) -> Any:
    """Y_l^m(theta, phi) = (-1)^m N P_l^m(cos theta) e^{i m phi}, orthonormal on the sphere."""

    theta, phi = np.broadcast_arrays(np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))
    mu = abs(h.m)
    plm = _legendre_columns(mu, h.l, np.cos(theta))[-1]
    if h.m >= 0:
        value = (-1.0) ** mu * plm * np.exp(1j * mu * phi)
    else:
        # Y_l^{-m} = (-1)^m conj(Y_l^m)
        value = plm * np.exp(-1j * mu * phi)
    return _scalar_or_array(value)


def real_harmonics_table(l: int, theta: Any, phi: Any) -> np.ndarray:
    """Real spherical harmonics Y_{l,m}, m = -l..l, stacked along the first axis."""

    theta, phi = np.broadcast_arrays(np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))
    x = np.cos(theta)
    out = np.empty((2 * l + 1,) + theta.shape)
    root2 = math.sqrt(2.0)
    for mu in range(l + 1):
        plm = _legendre_columns(mu, l, x)[-1]
        if mu == 0:
            out[l] = plm
        else:
            out[l + mu] = root2 * plm * np.cos(mu * phi)
            out[l - mu] = root2 * plm * np.sin(mu * phi)
    return out


def sph_harm_real(h: HarmonicIndex, theta: Any, phi: Any) -> Any:
    return _scalar_or_array(real_harmonics_table(h.l, theta, phi)[h.l + h.m])


def cartesian_to_spherical(x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(r, colatitude, azimuth) of points with a trailing axis of length 3."""

    r = np.linalg.norm(x, axis=-1)
    cos_theta = np.divide(x[..., 2], r, out=np.ones_like(r), where=r > 0.0)
    theta = np.arccos(np.clip(cos_theta, -1.0, 1.0))
    phi = np.mod(np.arctan2(x[..., 1], x[..., 0]), 2.0 * np.pi)
    return r, theta, phi


def unit_vectors(angles: np.ndarray) -> np.ndarray:
    """Unit vectors from an (n, d - 1) angle array: theta in 2D, (colatitude, azimuth) in 3D."""

    angles = np.asarray(angles, dtype=float)
    if angles.shape[-1] == 1:
        theta = angles[..., 0]
        return np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    theta, phi = angles[..., 0], angles[..., 1]
    return np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1)


def solid_harm(h: HarmonicIndex, x: Any) -> Any:
    """Solid harmonic V_{l,m}(x) = r^l Y_{l,m}; the dimension is the length of the last axis.

    In 2D the channels are r^l cos(l theta) (m >= 0) and r^l sin(l theta) (m < 0), with |m| = l.
    """

    x = np.asarray(x, dtype=float)
    dim = x.shape[-1]
    if dim == 3:
        r, theta, phi = cartesian_to_spherical(x)
        return _scalar_or_array(r**h.l * sph_harm_real(h, theta, phi))
    if dim == 2:
        if h.l > 0 and abs(h.m) != h.l:
            raise HarmonicIndexError("2D solid harmonics use m = l (cos) or m = -l (sin)", l=h.l, m=h.m)
        r = np.hypot(x[..., 0], x[..., 1])
        theta = np.arctan2(x[..., 1], x[..., 0])
        trig = np.cos(h.l * theta) if h.m >= 0 else np.sin(h.l * theta)
        return _scalar_or_array(r**h.l * trig)
    raise DimensionError(f"solid harmonics are implemented for d = 2, 3, got {dim}", dim=dim)
