"""Plasma dispersion function and its relatives, entire in the complex argument.

The workhorse is the Faddeeva function ``w(z) = exp(-z^2) erfc(-iz)``; the
plasma dispersion function is its rescaling ``t(z) = i sqrt(pi) w(z)``, which
for Im z > 0 equals the Hilbert-type integral of the Gaussian and elsewhere is
the analytic (Landau) continuation from the upper half-plane.  All evaluators
here are scalar, pure, and target ~1e-13 relative accuracy in double
precision; the slow quadrature cross-checks live in :mod:`qplasma.oracle`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import gamma as _gamma

SQRT_PI = math.sqrt(math.pi)
_INV_PI = 1.0 / math.pi
_TWO_I_SQRT_PI = 2j * SQRT_PI


@dataclass(frozen=True)
class AccuracyPolicy:
    """Evaluation thresholds for the fast special-function paths.

    target_rel_error is the accuracy contract of the public operations;
    series_switch_q scales the cancellation guard of :func:`t_diff_over_q`;
    asymptotic_switch_z is the |z| beyond which t and lambda0 go through
    their large-argument tail series.
    """

    target_rel_error: float = 1e-12
    series_switch_q: float = 1e-3
    asymptotic_switch_z: float = 100.0

    def __post_init__(self):
        for name in ("target_rel_error", "series_switch_q", "asymptotic_switch_z"):
            v = getattr(self, name)
            if not (v > 0):
                raise ValueError(f"{name} must be strictly positive, got {v!r}")


DEFAULT_POLICY = AccuracyPolicy()


def _check_finite(z: complex, name: str = "z") -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {z!r}")
    return z


# ----------------------------------------------------------------------------
# Faddeeva function.  Region split:
#   |z| <= 1.8                    Maclaurin series (entire, no cancellation)
#   1.8 < |z| < 12, Im z >= 0     trapezoidal sampling of the defining
#                                 integral plus residue correction for the
#                                 pole inside the summation strip
#   |z| >= 12, Im z >= 0          Laplace continued fraction
#   Im z < 0                      reflection w(z) = 2 exp(-z^2) - w(-z)
# The trapezoid step h = 0.5 puts the quadrature floor at exp(-pi^2/h^2)
# ~ 7e-18; the node/correction pair is combined analytically near the
# correction poles z = k*h to avoid the 0/0 cancellation there.
# ----------------------------------------------------------------------------

_SERIES_RADIUS = 1.8
_TRAP_RADIUS = 12.0
_H = 0.5
_NMAX = 14  # sampling nodes k*h with |k| <= NMAX; exp(-49) below double noise
_PI_OVER_H = math.pi / _H
_TRAP_NODES = [(k * _H, math.exp(-((k * _H) ** 2))) for k in range(-_NMAX, _NMAX + 1)]
_MACLAURIN = [1.0 / _gamma(0.5 * n + 1.0) for n in range(96)]
_PAIR_RADIUS = 0.01  # switch to the analytic node/correction pair inside this


def _w_series(z: complex) -> complex:
    # w(z) = sum_n (iz)^n / Gamma(n/2 + 1); benign for |z| <= 1.8
    iz = 1j * z
    term = 1.0 + 0j
    acc = complex(_MACLAURIN[0])
    for n in range(1, len(_MACLAURIN)):
        term *= iz
        contrib = term * _MACLAURIN[n]
        acc += contrib
        if abs(contrib) < 1e-18 * abs(acc):
            break
    return acc


def _w_cf(z: complex, depth: int) -> complex:
    # Laplace continued fraction, evaluated by backward recurrence.
    f = z
    for k in range(depth, 0, -1):
        f = z - (0.5 * k) / f
    return (1j / SQRT_PI) / f


def _cexpm1_over(w: complex) -> complex:
    # expm1(w)/w for complex w, stable as w -> 0
    if abs(w) < 0.5:
        term = 1.0 + 0j
        acc = 1.0 + 0j
        n = 1
        while abs(term) > 1e-18 * abs(acc) and n < 32:
            n += 1
            term *= w / n
            acc += term
        return acc
    return (cmath.exp(w) - 1.0) / w


def _corr_pole_regular(a: complex) -> complex:
    # G(a) = 1/(exp(-ia) - 1) + 1/(ia); removable singularity at a = 0,
    # expanded with Bernoulli coefficients for small |a|
    s = -1j * a
    if abs(a) < 0.25:
        s2 = s * s
        return -0.5 + s * (
            1.0 / 12 + s2 * (-1.0 / 720 + s2 * (1.0 / 30240 + s2 * (-1.0 / 1209600)))
        )
    return 1.0 / (cmath.exp(s) - 1.0) + 1.0 / (1j * a)


def _w_trapezoid(z: complex) -> complex:
    x, y = z.real, z.imag
    # the correction term has poles at every z = k*h on the real axis
    k0 = round(x / _H)
    u = z - k0 * _H
    pair_path = (y < _PI_OVER_H) and abs(u) < _PAIR_RADIUS
    t0 = k0 * _H
    acc = 0j
    for node, weight in _TRAP_NODES:
        if pair_path and node == t0:
            continue
        acc += weight / (z - node)
    w = (1j * _INV_PI * _H) * acc
    if y >= _PI_OVER_H:
        # pole outside the summation strip; plain trapezoid already exact
        return w
    if pair_path:
        # node term and correction diverge individually; their sum is
        # analytic: (ih/pi) (e0 - e^{-z^2})/u  -  2 e^{-z^2} G(2 pi u / h)
        e0 = math.exp(-t0 * t0)
        ez2 = cmath.exp(-z * z)
        ratio = e0 * (2.0 * t0 + u) * _cexpm1_over(-(2.0 * t0 + u) * u)
        return w + (1j * _INV_PI * _H) * ratio - 2.0 * ez2 * _corr_pole_regular(
            2.0 * math.pi * u / _H
        )
    ez2 = cmath.exp(-z * z)
    return w - 2.0 * ez2 / (cmath.exp(-2j * math.pi * z / _H) - 1.0)


def _w_upper(z: complex) -> complex:
    az = abs(z)
    if az <= _SERIES_RADIUS:
        return _w_series(z)
    if az < _TRAP_RADIUS:
        return _w_trapezoid(z)
    if az < 20.0:
        return _w_cf(z, 36)
    if az < 100.0:
        return _w_cf(z, 16)
    return _w_cf(z, 8)


def _exp_minus_z2(z: complex) -> complex:
    # exp(-z^2) with Re(-z^2) formed cancellation-free as (y-x)(y+x)
    m = (z.imag - z.real) * (z.imag + z.real)
    if m > 708.0:
        raise OverflowError(
            f"exp(-z^2) exceeds double-precision range at z={z!r}; "
            "the function value itself is not representable there"
        )
    return cmath.exp(complex(m, -2.0 * z.real * z.imag))


def faddeeva_w(z: complex) -> complex:
    """Faddeeva function ``w(z) = exp(-z^2) erfc(-iz)``.

    Entire in z; relative accuracy ~1e-13 for |z| <= 1e4.  For Im z < 0 the
    reflection ``w(z) = 2 exp(-z^2) - w(-z)`` is used with the exponent
    assembled cancellation-free, so no intermediate overflow occurs while the
    result is representable; where the true value overflows double range
    (deep lower half-plane) an OverflowError is raised instead of returning
    infinities.
    """
    z = _check_finite(z)
    if z.imag >= 0.0:
        return _w_upper(z)
    return 2.0 * _exp_minus_z2(z) - _w_upper(-z)


# ----------------------------------------------------------------------------
# Plasma dispersion function t(z) and the Van Kampen function lambda0(z)
# ----------------------------------------------------------------------------

def _t_asymptotic(z: complex) -> complex:
    # t(z) ~ -(1/z)(1 + 1/(2 z^2) + 3/(4 z^4) + ...) plus the exponential
    # continuation term for Im z < 0
    z2 = z * z
    term = 1.0 + 0j
    acc = 1.0 + 0j
    for m in range(1, 12):
        term *= (m - 0.5) / z2
        acc += term
        if abs(term) < 1e-17 * abs(acc):
            break
    val = -acc / z
    if z.imag < 0.0:
        m = (z.imag - z.real) * (z.imag + z.real)
        if m > -745.0:  # else the term underflows entirely
            val += _TWO_I_SQRT_PI * _exp_minus_z2(z)
    return val


def plasma_t(z: complex, policy: AccuracyPolicy = DEFAULT_POLICY) -> complex:
    """Entire (Landau) continuation of the plasma dispersion integral.

    For Im z > 0 this equals (1/sqrt(pi)) Int e^{-mu^2}/(mu - z) dmu; on the
    real axis and below it is the continuation from above, i.e.
    ``i sqrt(pi) w(z)``.
    """
    z = _check_finite(z)
    if abs(z) > policy.asymptotic_switch_z:
        return _t_asymptotic(z)
    return 1j * SQRT_PI * faddeeva_w(z)


def lambda0(z: complex, policy: AccuracyPolicy = DEFAULT_POLICY) -> complex:
    """Van Kampen dispersion function, ``1 + z t(z)``.

    Beyond the asymptotic switch the tail series
    ``-1/(2 z^2) - 3/(4 z^4) - ...`` is used directly: the literal
    ``1 + z t`` cancels ~2|z|^2-fold there and would lose that many digits.
    """
    z = _check_finite(z)
    if abs(z) <= policy.asymptotic_switch_z:
        return 1.0 + z * plasma_t(z, policy)
    z2 = z * z
    term = 0.5 + 0j
    acc = 0.5 + 0j
    for m in range(1, 12):
        term *= (m + 0.5) / z2
        acc += term
        if abs(term) < 1e-17 * abs(acc):
            break
    val = -acc / z2
    if z.imag < 0.0:
        m = (z.imag - z.real) * (z.imag + z.real)
        if m > -745.0:
            val += z * _TWO_I_SQRT_PI * _exp_minus_z2(z)
    return val


# ----------------------------------------------------------------------------
# Dawson integral F(u) = exp(-u^2) Int_0^u exp(s^2) ds, real argument.
# Independent of the Faddeeva path on purpose: the identity
# F(u) = (sqrt(pi)/2) Im w(u) is kept as a cross-check between the two
# implementations, not used as the evaluator.
# ----------------------------------------------------------------------------

_DAWSON_H = 0.27  # sampling step; rule floor exp(-pi^2/(4 h^2)) ~ 2e-15


def _dawson_series(u: float) -> float:
    # F(u) = sum_n (-2)^n u^{2n+1} / (2n+1)!!
    term = u
    acc = u
    m2 = -2.0 * u * u
    n = 0
    while abs(term) > 1e-17 * abs(acc) + 5e-324:
        n += 1
        term *= m2 / (2 * n + 1)
        acc += term
        if n > 60:
            break
    return acc


def _dawson_sampling(u: float) -> float:
    # exponentially convergent sampling over odd multiples of the step
    h = _DAWSON_H
    n_lo = int(math.floor((u - 6.6) / h))
    n_hi = int(math.ceil((u + 6.6) / h))
    if n_lo % 2 == 0:
        n_lo += 1
    acc = 0.0
    for n in range(n_lo, n_hi + 1, 2):
        d = u - n * h
        acc += math.exp(-d * d) / n
    return acc / SQRT_PI


def _dawson_asymptotic(u: float) -> float:
    # F(u) ~ (1/(2u))(1 + 1/(2u^2) + 3/(4u^4) + ...)
    u2 = u * u
    term = 1.0
    acc = 1.0
    for m in range(1, 12):
        term *= (m - 0.5) / u2
        acc += term
        if term < 1e-17 * acc:
            break
    return acc / (2.0 * u)


def dawson(u: float) -> float:
    """Dawson integral F(u); odd, peaks at ~0.5410442246 near u ~ 0.9241."""
    u = float(u)
    if not math.isfinite(u):
        raise ValueError(f"u must be finite, got {u!r}")
    a = abs(u)
    if a <= 1.0:
        return _dawson_series(u)
    if a < 10.0:
        val = _dawson_sampling(a)
    else:
        val = _dawson_asymptotic(a)
    return math.copysign(val, u)


# ----------------------------------------------------------------------------
# Derivatives of t and the cancellation-safe symmetric difference
# ----------------------------------------------------------------------------

def t_derivatives(
    z: complex, n: int, policy: AccuracyPolicy = DEFAULT_POLICY
) -> list[complex]:
    """[t, t', ..., t^(n)] via t' = -2 lambda0 and
    t^(m+1) = -2 (m t^(m-1) + z t^(m)).  Requires 0 <= n <= 6."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"derivative order must be an integer, got {n!r}")
    if not 0 <= n <= 6:
        raise ValueError(f"derivative order must be in 0..6, got {n}")
    z = _check_finite(z)
    out = [plasma_t(z, policy)]
    if n >= 1:
        out.append(-2.0 * lambda0(z, policy))
    for m in range(1, n):
        out.append(-2.0 * (m * out[m - 1] + z * out[m]))
    return out


def t_diff_over_q(
    z: complex, q: float, policy: AccuracyPolicy = DEFAULT_POLICY
) -> complex:
    """[t(z - q/2) - t(z + q/2)] / q.

    Below q = series_switch_q * (1 + |z|) the direct difference suffers an
    ~|z|/q-fold cancellation amplification, so the odd-order Taylor form
    -(t' + q^2 t'''/24 + q^4 t^(5)/1920) is used instead; the two branches
    agree within the accuracy target at the switch.
    """
    z = _check_finite(z)
    q = float(q)
    if not (q > 0.0):
        raise ValueError(f"q must be strictly positive, got {q!r}")
    if q < policy.series_switch_q * (1.0 + abs(z)):
        d = t_derivatives(z, 5, policy)
        q2 = q * q
        return -(d[1] + q2 * (d[3] / 24.0 + q2 * d[5] / 1920.0))
    half = 0.5 * q
    return (plasma_t(z - half, policy) - plasma_t(z + half, policy)) / q
