"""Step budget of the decaying solution ``X(t) = M X0 exp(-nu t)``.

Particle paths of the decaying field follow the orbits of ``X0`` in the
reparametrized time ``tau(t) = (M / nu) (1 - exp(-nu t))``, which never reaches
``M / nu``.  A simulation needing ``tau_per_step`` of ``X0``-time per machine
step therefore completes only finitely many steps.

``tau`` and ``amplitude`` are floating point; the integer budget is computed
in exact rationals so that boundary cases (``n * tau_per_step == M / nu``) are
decided correctly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _exact(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class NSParams:
    nu: Fraction
    m: Fraction

    def __post_init__(self):
        object.__setattr__(self, "nu", _exact(self.nu))
        object.__setattr__(self, "m", _exact(self.m))
        if self.nu <= 0 or self.m <= 0:
            raise ValueError("viscosity and amplitude must be positive")

    @property
    def tau_sup(self) -> Fraction:
        return self.m / self.nu


def tau(t: float, params: NSParams) -> float:
    if t < 0:
        raise ValueError("tau is defined for t >= 0")
    nu, m = float(params.nu), float(params.m)
    return -(m / nu) * math.expm1(-nu * t)


def amplitude(t: float, params: NSParams) -> float:
    """``M exp(-nu t)``, the factor multiplying ``X0``."""
    if t < 0:
        raise ValueError("amplitude is defined for t >= 0")
    return float(params.m) * math.exp(-float(params.nu) * t)


def pressure_coefficient(t: float, params: NSParams) -> float:
    """Coefficient of ``g(X0, X0)`` in the pressure: ``-M^2 exp(-2 nu t) / 2``."""
    return -0.5 * amplitude(t, params) ** 2


def step_budget(params: NSParams, tau_per_step) -> int:
    """Largest ``n`` with ``n * tau_per_step < M / nu``."""
    step = _exact(tau_per_step)
    if step <= 0:
        raise ValueError("tau_per_step must be positive")
    ratio = params.tau_sup / step
    return math.ceil(ratio) - 1


@dataclass(frozen=True)
class AmplitudeBound:
    m: Fraction
    attained: bool = False


def min_amplitude(nu, tau_per_step, n: int) -> AmplitudeBound:
    """Infimum of the amplitudes that allow ``n`` complete steps.

    Equal to ``n * nu * tau_per_step`` and not attained: at exactly that
    amplitude the n-th step would end at ``M / nu``, which ``tau`` never reaches.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    return AmplitudeBound(n * _exact(nu) * _exact(tau_per_step), False)


def tau_curve(params: NSParams, t_max: float, samples: int) -> list:
    """``samples`` evenly spaced ``(t, tau(t))`` pairs on ``[0, t_max]``."""
    if samples < 2:
        raise ValueError("need at least two samples")
    return [(t_max * i / (samples - 1), tau(t_max * i / (samples - 1), params)) for i in range(samples)]
