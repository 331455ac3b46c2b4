"""Plasma-oscillation dispersion: eps_l(omega, k) = 0.

Closed-form long-wave asymptotics for the oscillation frequency and damping
decrement, a damped complex-Newton root solver with a Muller fallback, and
wave-number continuation along a branch.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .dielectric import (
    ModelKind,
    PlasmaParams,
    eps_classical_omega,
    eps_mermin_omega,
    eps_quantum_omega,
)

_SQRT_PI_OVER_8 = math.sqrt(math.pi / 8.0)


@dataclass(frozen=True)
class SolverConfig:
    residual_tol: float = 1e-12
    max_iter: int = 60
    fd_step: float = 1e-7
    continuation_step: float = 0.1

    def __post_init__(self):
        for name in ("residual_tol", "max_iter", "fd_step", "continuation_step"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class DispersionRoot:
    """One converged root omega = Re + i Im of eps(omega, q) = 0, with the
    residual |eps| at return and the iteration count spent."""

    q: float
    omega: complex
    residual: float
    iterations: int


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, last_omega: complex, residual: float):
        super().__init__(f"{message} (last omega={last_omega!r}, |eps|={residual:.3e})")
        self.last_omega = last_omega
        self.residual = residual


class NonPhysicalRootError(RuntimeError):
    """Converged onto a branch with Re omega <= 0."""


class BranchLossError(RuntimeError):
    def __init__(self, message: str, q: float):
        super().__init__(f"{message} at q={q!r}")
        self.q = q


def omega_asymptotic(k_over_kD: float, Q: float) -> float:
    """Long-wave oscillation frequency over omega_p:
    sqrt(1 + 3 kappa^2 + 6 kappa^4 (1 + Q^2/24)), kappa = k/k_D.

    Q = 0 reproduces the classical Bohm-Gross form with its kappa^4 term.
    """
    if k_over_kD < 0:
        raise ValueError(f"k/k_D must be >= 0, got {k_over_kD!r}")
    if Q < 0:
        raise ValueError(f"Q must be >= 0, got {Q!r}")
    k2 = k_over_kD * k_over_kD
    return math.sqrt(1.0 + 3.0 * k2 + 6.0 * k2 * k2 * (1.0 + Q * Q / 24.0))


def gamma_asymptotic(params: PlasmaParams, q: float,
                     quantum_factors: bool = True) -> float:
    """Long-wave damping decrement in units of k_T v_T:

        -y/2 - sqrt(pi/8) x_p (k_D/k)^3 exp(-3/2 - (k_D/k)^2/2) * QF,

    QF = (1 - q^2/4)(1 + q^2 z^2/6) with z = omega_k/(k v_T) taken real
    (weak-damping regime), or 1 when ``quantum_factors`` is False, which
    gives the classical collisional decrement; y = 0 then reduces it to the
    Landau value.  Valid for k well below k_D.
    """
    q = float(q)
    if not q > 0.0:
        raise ValueError(f"q must be strictly positive, got {q!r}")
    if not params.x_p > 0.0:
        raise ValueError("gamma_asymptotic requires x_p > 0")
    kD = params.debye_wavenumber
    kappa = q / kD
    ratio = 1.0 / kappa  # k_D/k
    landau = (
        _SQRT_PI_OVER_8 * params.x_p * ratio ** 3
        * math.exp(-1.5 - 0.5 * ratio * ratio)
    )
    if quantum_factors:
        Q = params.quantum_parameter
        omega_k = params.x_p * omega_asymptotic(kappa, Q)
        z_real = omega_k / q
        landau *= (1.0 - 0.25 * q * q) * (1.0 + q * q * z_real * z_real / 6.0)
    return -0.5 * params.y - landau


_SOLVABLE = (ModelKind.QUANTUM, ModelKind.CLASSICAL, ModelKind.MERMIN)


def _eps_at(model: ModelKind, params: PlasmaParams, omega: complex, q: float) -> complex:
    if model is ModelKind.QUANTUM:
        return eps_quantum_omega(params.x_p, params.y, omega, q)
    if model is ModelKind.CLASSICAL:
        return eps_classical_omega(params.x_p, params.y, omega, q)
    return eps_mermin_omega(params.x_p, params.y, omega, q)


def default_guess(params: PlasmaParams, q: float, model: ModelKind) -> complex:
    """Asymptotic seed: omega_p-scaled long-wave frequency plus i times the
    damping decrement, quantum factors per model."""
    quantum = model is not ModelKind.CLASSICAL
    Q = params.quantum_parameter if quantum else 0.0
    kappa = q / params.debye_wavenumber
    re = params.x_p * omega_asymptotic(kappa, Q)
    im = gamma_asymptotic(params, q, quantum_factors=quantum)
    return complex(re, im)


def _safe_eps(model, params, omega, q) -> complex:
    try:
        return _eps_at(model, params, omega, q)
    except (OverflowError, ValueError, ZeroDivisionError):
        return complex(math.inf, math.inf)


def _muller_step(h0, h1, h2):
    """One Muller iterate from three (omega, f) pairs; returns a new omega."""
    (x0, f0), (x1, f1), (x2, f2) = h0, h1, h2
    if x1 == x0 or x2 == x1:
        return x2 * (1.0 + 1e-6) + 1e-12
    q_r = (x2 - x1) / (x1 - x0)
    a = q_r * f2 - q_r * (1.0 + q_r) * f1 + q_r * q_r * f0
    b = (2.0 * q_r + 1.0) * f2 - (1.0 + q_r) ** 2 * f1 + q_r * q_r * f0
    c = (1.0 + q_r) * f2
    disc = cmath.sqrt(b * b - 4.0 * a * c)
    den_plus = b + disc
    den_minus = b - disc
    den = den_plus if abs(den_plus) >= abs(den_minus) else den_minus
    if den == 0:
        return x2 * (1.0 + 1e-6) + 1e-12
    return x2 - (x2 - x1) * (2.0 * c / den)


def solve_root(params: PlasmaParams, q: float, model: ModelKind,
               guess: Optional[complex] = None,
               cfg: SolverConfig = DEFAULT_CONFIG) -> DispersionRoot:
    """Solve eps(omega, q) = 0 for complex omega at fixed q.

    Damped Newton iteration with a central finite-difference derivative
    (relative step cfg.fd_step); after three stagnant iterations a Muller
    step over the last three iterates takes over.  Converges when
    |eps| <= cfg.residual_tol; raises ConvergenceError otherwise and
    NonPhysicalRootError if the converged root has Re omega <= 0.
    """
    q = float(q)
    if not q > 0.0:
        raise ValueError(f"q must be strictly positive, got {q!r}")
    model = ModelKind(model)
    if model not in _SOLVABLE:
        raise ValueError(f"solve_root supports {[m.value for m in _SOLVABLE]}, got {model.value!r}")
    omega = complex(guess) if guess is not None else default_guess(params, q, model)

    f = _safe_eps(model, params, omega, q)
    history = [(omega, f)]
    stagnant = 0
    iterations = 0
    for iterations in range(1, cfg.max_iter + 1):
        if abs(f) <= cfg.residual_tol:
            break
        if stagnant >= 3 and len(history) >= 3:
            omega_new = _muller_step(*history[-3:])
            f_new = _safe_eps(model, params, omega_new, q)
            stagnant = 0
        else:
            d = cfg.fd_step * max(abs(omega), 1.0)
            fp = (_safe_eps(model, params, omega + d, q)
                  - _safe_eps(model, params, omega - d, q)) / (2.0 * d)
            if fp == 0 or not (math.isfinite(fp.real) and math.isfinite(fp.imag)):
                stagnant = 3
                continue
            step = -f / fp
            lam = 1.0
            omega_new, f_new = omega, f
            for _ in range(12):
                cand = omega + lam * step
                f_cand = _safe_eps(model, params, cand, q)
                if abs(f_cand) < abs(f):
                    omega_new, f_new = cand, f_cand
                    break
                lam *= 0.5
            else:
                stagnant += 1
                continue
            stagnant = stagnant + 1 if abs(f_new) > 0.5 * abs(f) else 0
        omega, f = omega_new, f_new
        history.append((omega, f))

    residual = abs(f)
    if residual > cfg.residual_tol:
        raise ConvergenceError(
            f"no root of {model.value} model within {cfg.max_iter} iterations",
            omega, residual,
        )
    if omega.real <= 0.0:
        raise NonPhysicalRootError(
            f"converged to nonphysical branch Re omega = {omega.real!r} <= 0"
        )
    return DispersionRoot(q=q, omega=omega, residual=residual, iterations=iterations)


def trace_branch(params: PlasmaParams, q_start: float, q_end: float,
                 n_points: int, model: ModelKind,
                 cfg: SolverConfig = DEFAULT_CONFIG) -> list[DispersionRoot]:
    """Continue a dispersion branch from q_start to q_end on n_points.

    Each grid point is solved with the previous root as the seed; if the
    root moves by more than cfg.continuation_step (fractionally), the q step
    is bisected internally until the motion is tame.  A persistent jump or
    failed solve raises BranchLossError with the offending q.
    """
    if not (0.0 < q_start < q_end):
        raise ValueError(f"need 0 < q_start < q_end, got {q_start!r}, {q_end!r}")
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points!r}")
    model = ModelKind(model)

    qs = [q_start + (q_end - q_start) * i / (n_points - 1) for i in range(n_points)]
    first = solve_root(params, qs[0], model, cfg=cfg)
    roots = [first]
    prev = first
    for q_target in qs[1:]:
        prev = _continue_to(params, model, cfg, prev, q_target, depth=0)
        roots.append(prev)
    return roots


_MAX_BISECT = 12


def _continue_to(params, model, cfg, prev: DispersionRoot, q_target: float,
                 depth: int) -> DispersionRoot:
    try:
        root = solve_root(params, q_target, model, guess=prev.omega, cfg=cfg)
        jump = abs(root.omega - prev.omega) / max(abs(prev.omega), 1e-300)
        if jump <= cfg.continuation_step:
            return root
    except (ConvergenceError, NonPhysicalRootError):
        root = None
    if depth >= _MAX_BISECT:
        raise BranchLossError(
            "branch lost: root jump or solve failure persists after bisection",
            q_target,
        )
    q_mid = 0.5 * (prev.q + q_target)
    mid = _continue_to(params, model, cfg, prev, q_mid, depth + 1)
    return _continue_to(params, model, cfg, mid, q_target, depth + 1)
