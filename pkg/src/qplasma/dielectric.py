"""Longitudinal permittivity models in dimensionless variables.

All models take the plasma state (x_p, y) and an evaluation point (x, q),
where frequencies are in units of k_T v_T and wave numbers in units of the
thermal wave number k_T.  The internal evaluators accept a complex frequency
so the dispersion solver can continue them off the real axis; the public
operations expose the physical real-frequency surface.

Normalization note (re-derivation of the classical form): with
omega -> x, nu -> y, omega_p -> x_p in units of k_T v_T and k -> q in units
of k_T, the prefactor 2 omega_p^2/(k^2 v_T^2) becomes 2 x_p^2/q^2 and
z = (omega + i nu)/(k v_T) = (x + i y)/q, giving

    eps_classical = 1 + (2 x_p^2/q^2) (x+iy) lambda0(z) / (x + i y lambda0(z))
    eps_quantum   = 1 + (x_p^2/q^2)  (x+iy) D(z,q)     / (x + i y lambda0(z))

with D(z,q) = [t(z-q/2) - t(z+q/2)]/q.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .special_functions import (
    DEFAULT_POLICY,
    AccuracyPolicy,
    SQRT_PI,
    dawson,
    faddeeva_w,
    lambda0,
    plasma_t,
    t_diff_over_q,
)

#: below this wave number the quantum/classical models switch to the
#: long-wave kernel expansion (z grows like 1/q; the direct prefactor
#: x_p^2/q^2 against the ~q^2 kernel would otherwise run as 0*inf)
Q_MIN = 1e-4

#: |z| above which the long-wave kernel series is trusted; for smaller |z|
#: at q < Q_MIN the direct formula is already cancellation-free
_KERNEL_Z_MIN = 50.0


class ModelKind(str, Enum):
    QUANTUM = "quantum"
    CLASSICAL = "classical"
    MERMIN = "mermin"
    LINDHARD = "lindhard_collisionless"
    STATIC = "static"
    DRUDE = "drude"


@dataclass(frozen=True)
class PlasmaParams:
    """Dimensionless plasma state: x_p = omega_p/(k_T v_T), y = nu/(k_T v_T)."""

    x_p: float
    y: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.x_p) and self.x_p >= 0):
            raise ValueError(f"x_p must be finite and >= 0, got {self.x_p!r}")
        if not (math.isfinite(self.y) and self.y >= 0):
            raise ValueError(f"y must be finite and >= 0, got {self.y!r}")

    @property
    def quantum_parameter(self) -> float:
        # Q = hbar omega_p / (kappa T); with kappa T = m v_T^2 / 2 and
        # k_T = m v_T / hbar this reduces to 2 x_p
        return 2.0 * self.x_p

    @property
    def debye_wavenumber(self) -> float:
        # k_D / k_T = sqrt(2) omega_p / (v_T k_T) = sqrt(2) x_p
        return math.sqrt(2.0) * self.x_p


@dataclass(frozen=True)
class QueryPoint:
    """Evaluation point: x = omega/(k_T v_T), q = k/k_T."""

    x: float
    q: float

    def __post_init__(self):
        if not math.isfinite(self.x):
            raise ValueError(f"x must be finite, got {self.x!r}")
        if not (math.isfinite(self.q) and self.q >= 0):
            raise ValueError(f"q must be finite and >= 0, got {self.q!r}")

    def z(self, y: float) -> complex:
        if self.q <= 0:
            raise ValueError("z = (x + iy)/q is defined only for q > 0")
        return complex(self.x, y) / self.q


def _require_positive_q(q: float) -> float:
    q = float(q)
    if not q > 0.0:
        raise ValueError(f"wave number q must be strictly positive, got {q!r}")
    return q


# ---------------------------------------------------------------------------
# Long-wave kernel series: A = z^2 lambda0(z) and B = z^2 (1/2 + z^2 lambda0)
# as tail series in 1/z^2, both cancellation-free for large |z|
# ---------------------------------------------------------------------------

def _kernel_A(z2: complex) -> complex:
    term = 0.5 + 0j
    acc = 0.5 + 0j
    for m in range(1, 14):
        term *= (m + 0.5) / z2
        acc += term
        if abs(term) < 1e-17 * abs(acc):
            break
    return -acc


def _kernel_B(z2: complex) -> complex:
    term = 0.75 + 0j
    acc = 0.75 + 0j
    for m in range(2, 15):
        term *= (m + 0.5) / z2
        acc += term
        if abs(term) < 1e-17 * abs(acc):
            break
    return -acc


# ---------------------------------------------------------------------------
# Complex-frequency cores (used by the public surface and the root solver)
# ---------------------------------------------------------------------------

def eps_quantum_omega(x_p: float, y: float, omega: complex, q: float,
                      policy: AccuracyPolicy = DEFAULT_POLICY) -> complex:
    """Quantum-model permittivity at (possibly complex) frequency omega."""
    q = _require_positive_q(q)
    if x_p == 0.0:
        return 1.0 + 0j
    xy = omega + 1j * y
    z = xy / q
    if q < Q_MIN and abs(z) >= _KERNEL_Z_MIN:
        z2 = z * z
        kernel = cmath.exp(-0.25 * q * q) * (
            2.0 * _kernel_A(z2) + (q * q / 3.0) * _kernel_B(z2)
        )
        return 1.0 + x_p * x_p * kernel / (xy * (omega + 1j * y * lambda0(z, policy)))
    num = t_diff_over_q(z, q, policy)
    return 1.0 + (x_p * x_p / (q * q)) * xy * num / (omega + 1j * y * lambda0(z, policy))


def eps_classical_omega(x_p: float, y: float, omega: complex, q: float,
                        policy: AccuracyPolicy = DEFAULT_POLICY) -> complex:
    """Classical-model permittivity at (possibly complex) frequency omega."""
    q = _require_positive_q(q)
    if x_p == 0.0:
        return 1.0 + 0j
    xy = omega + 1j * y
    z = xy / q
    if q < Q_MIN and abs(z) >= _KERNEL_Z_MIN:
        # exact identity: (2 x_p^2/q^2) xy lambda0 = 2 x_p^2 z^2 lambda0 / xy
        return 1.0 + 2.0 * x_p * x_p * _kernel_A(z * z) / (
            xy * (omega + 1j * y * lambda0(z, policy))
        )
    lam = lambda0(z, policy)
    return 1.0 + (2.0 * x_p * x_p / (q * q)) * xy * lam / (omega + 1j * y * lam)


def mermin_static_denominator(q: float, paper_d0: bool = False) -> float:
    """D0(q) = [t(-q/2) - t(q/2)]/q entering Mermin's number-conserving
    correction.  The verified value is 4 F(q/2)/q (Dawson F); a historical
    2 F(q/2) variant is kept behind ``paper_d0`` for comparison studies,
    never as the default (it misses the q -> 0 limit D0 -> 2)."""
    q = _require_positive_q(q)
    F = dawson(0.5 * q)
    if paper_d0:
        return 2.0 * F
    return 4.0 * F / q


def eps_mermin_omega(x_p: float, y: float, omega: complex, q: float,
                     policy: AccuracyPolicy = DEFAULT_POLICY,
                     paper_d0: bool = False) -> complex:
    """Mermin-model permittivity at (possibly complex) frequency omega."""
    q = _require_positive_q(q)
    if x_p == 0.0:
        return 1.0 + 0j
    xy = omega + 1j * y
    z = xy / q
    D = t_diff_over_q(z, q, policy)
    D0 = mermin_static_denominator(q, paper_d0)
    return 1.0 + (x_p * x_p / (q * q)) * xy * D / (omega + 1j * y * D / D0)


# ---------------------------------------------------------------------------
# Public real-frequency surface
# ---------------------------------------------------------------------------

def epsilon_quantum(params: PlasmaParams, point: QueryPoint,
                    policy: AccuracyPolicy = DEFAULT_POLICY) -> complex:
    """Quantum longitudinal permittivity (coordinate-space BGK model)."""
    return eps_quantum_omega(params.x_p, params.y, point.x, point.q, policy)


def epsilon_classical(params: PlasmaParams, point: QueryPoint,
                      policy: AccuracyPolicy = DEFAULT_POLICY) -> complex:
    """Classical (BGK) longitudinal permittivity; no quantum recoil."""
    return eps_classical_omega(params.x_p, params.y, point.x, point.q, policy)


def epsilon_lindhard(x_p: float, x: float, q: float,
                     policy: AccuracyPolicy = DEFAULT_POLICY,
                     form: str = "kernel") -> complex:
    """Collisionless (Landau-continued) permittivity.

    ``form="kernel"`` evaluates the symmetric-difference kernel D(x/q, q);
    ``form="difference"`` evaluates the two t values literally.  Both agree
    to ~1e-12 away from the cancellation regime and exist to cross-check
    each other.
    """
    q = _require_positive_q(q)
    if x_p == 0.0:
        return 1.0 + 0j
    z = complex(x / q, 0.0)
    if form == "kernel":
        num = t_diff_over_q(z, q, policy)
    elif form == "difference":
        num = (plasma_t(z - 0.5 * q, policy) - plasma_t(z + 0.5 * q, policy)) / q
    else:
        raise ValueError(f"unknown form {form!r}; use 'kernel' or 'difference'")
    return 1.0 + (x_p * x_p / (q * q)) * num


def epsilon_static(x_p: float, y: float, q: float,
                   policy: AccuracyPolicy = DEFAULT_POLICY) -> complex:
    """Zero-frequency (screening) permittivity; exactly real by construction.

    At x = 0 the argument is z = iy/q, and the reflection symmetry
    t(-conj z) = -conj t(z) makes both the kernel and lambda0 real:
    D(iv, q) = -2 Re t(q/2 + iv)/q and lambda0(iv) = 1 - sqrt(pi) v w(iv).
    The evaluation is carried out in real arithmetic on those parts.
    """
    q = _require_positive_q(q)
    y = float(y)
    if not y > 0.0:
        raise ValueError(f"static limit requires y > 0, got {y!r}")
    if x_p == 0.0:
        return 1.0 + 0j
    v = y / q
    kernel = -2.0 * plasma_t(complex(0.5 * q, v), policy).real / q
    lam = 1.0 - SQRT_PI * v * faddeeva_w(1j * v).real
    return complex(1.0 + (x_p * x_p / (q * q)) * kernel / lam, 0.0)


def epsilon_drude(x_p: float, x: float, y: float) -> complex:
    """Fully evaluated long-wave (k -> 0) limit, 1 - x_p^2/((x+iy) x).

    The static and long-wave limits do not commute, so x = 0 is rejected
    rather than silently mapped to the screening branch.
    """
    x = float(x)
    if x == 0.0:
        raise ValueError(
            "drude limit is undefined at x = 0 (static and long-wave limits "
            "do not commute); use epsilon_static instead"
        )
    return 1.0 - x_p * x_p / (complex(x, y) * x)


def epsilon_mermin(params: PlasmaParams, point: QueryPoint,
                   policy: AccuracyPolicy = DEFAULT_POLICY,
                   paper_d0: bool = False) -> complex:
    """Mermin (momentum-space RTA) permittivity in the same variables."""
    return eps_mermin_omega(params.x_p, params.y, point.x, point.q,
                            policy, paper_d0)


def evaluate(model: ModelKind, params: PlasmaParams, point: QueryPoint,
             policy: AccuracyPolicy = DEFAULT_POLICY,
             mermin_paper_d0: bool = False) -> complex:
    """Dispatch a permittivity model on (params, point)."""
    model = ModelKind(model)
    if model is ModelKind.QUANTUM:
        return epsilon_quantum(params, point, policy)
    if model is ModelKind.CLASSICAL:
        return epsilon_classical(params, point, policy)
    if model is ModelKind.MERMIN:
        return epsilon_mermin(params, point, policy, paper_d0=mermin_paper_d0)
    if model is ModelKind.LINDHARD:
        return epsilon_lindhard(params.x_p, point.x, point.q, policy)
    if model is ModelKind.STATIC:
        return epsilon_static(params.x_p, params.y, point.q, policy)
    if model is ModelKind.DRUDE:
        return epsilon_drude(params.x_p, point.x, params.y)
    raise ValueError(f"unknown model {model!r}")


def conductivity(params: PlasmaParams, point: QueryPoint, model: ModelKind,
                 policy: AccuracyPolicy = DEFAULT_POLICY) -> complex:
    """Dimensionless longitudinal conductivity s = 4 pi sigma_l/(k_T v_T),
    defined through eps = 1 + i s / x, i.e. s = -i x (eps - 1).

    Only the eps-derived normalization is exposed; x > 0 required.
    """
    if not point.x > 0.0:
        raise ValueError(f"conductivity requires x > 0, got {point.x!r}")
    eps = evaluate(model, params, point, policy)
    return -1j * point.x * (eps - 1.0)
