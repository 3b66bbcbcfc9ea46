"""Reference evaluation of the Lambert W function.

Provides a high-accuracy iterative evaluator for the principal branch W0 on
the cut plane (cut along (-inf, -1/e]) and for the real lower branch W-1 on
[-1/e, 0), together with the parameterizations of the branch cut that the
integral representations are built from:

    u(v) = -v*cot(v),   t(v) = -v*csc(v)*exp(-v*cot(v)),   v in [0, pi)
    s(v) =  v*sec(v)*exp(v*tan(v)),                        v in [0, pi/2)

Here v = Im W(t) on the upper edge of the cut, so t(v) parameterizes the cut
itself and im_w_on_cut inverts it.  All functions are pure; complex scalars
are plain Python ``complex`` and every returned value is finite (error
conditions raise, they never return inf/nan).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

INV_E = math.exp(-1.0)

# Taylor coefficients of W at 0: (-n)^(n-1)/n!, n = 1..20.
_TAYLOR = [(-n) ** (n - 1) / math.factorial(n) for n in range(1, 21)]

# v*cot(v) and v*csc(v) lose digits to 0/0 below this; switch to series.
_SERIES_CUTOFF = 1e-3


def vcotv(v: float) -> float:
    """v*cot(v) for v in [0, pi), via series near 0."""
    if v < _SERIES_CUTOFF:
        v2 = v * v
        return 1.0 - v2 / 3.0 - v2 * v2 / 45.0 - 2.0 * v2 * v2 * v2 / 945.0
    return v / math.tan(v)


def vcscv(v: float) -> float:
    """v*csc(v) for v in (0, pi), via series near 0 (limit 1 at v=0)."""
    if v < _SERIES_CUTOFF:
        v2 = v * v
        return 1.0 + v2 / 6.0 + 7.0 * v2 * v2 / 360.0 + 31.0 * v2 * v2 * v2 / 15120.0
    return v / math.sin(v)


def taylor_w(z: complex, terms: int = 20) -> complex:
    """Partial sum of the series of W at the origin (radius 1/e)."""
    if terms > len(_TAYLOR):
        raise ValueError(f"at most {len(_TAYLOR)} series terms are tabulated")
    z = complex(z)
    acc = 0j
    zn = 1.0 + 0j
    for k in range(terms):
        zn *= z
        acc += _TAYLOR[k] * zn
    return acc


def _on_cut(z: complex) -> bool:
    """True when z lies on the closed branch cut (-inf, -1/e]."""
    return z.imag == 0.0 and z.real <= -INV_E


def _initial_guess(z: complex) -> complex:
    # Region split: series at the origin, square-root expansion around the
    # branch point (wide window: it seeds Halley reliably for moderate |z|),
    # log asymptotics elsewhere.  log(z)-log(log(z)) is singular at z = 1,
    # hence the wide middle window rather than a narrow branch-point one.
    if abs(z) < 0.5 * INV_E:
        return taylor_w(z, 6)
    if abs(z + INV_E) <= 1.5:
        p = cmath.sqrt(2.0 * (math.e * z + 1.0))
        if abs(p) < 1.0:
            return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
        return -1.0 + p
    lz = cmath.log(z)
    return lz - cmath.log(lz)


def w_principal(z: complex, tol: float = 1e-14, max_iter: int = 50) -> complex:
    """Principal branch W0(z) by Halley iteration on w*exp(w) - z.

    Parameters
    ----------
    z : complex
        Point in the cut plane.  Real z < -1/e (the open cut) is rejected;
        z = -1/e returns -1 exactly.
    tol : float
        Relative residual target: |w e^w - z| <= tol * max(|z|, 1e-300).
    max_iter : int
        Iteration cap before ConvergenceError.

    Raises
    ------
    DomainError for z on the open branch cut, ConvergenceError if the
    residual target is not met.
    """
    z = complex(z)
    if z.imag == 0.0:
        x = z.real
        if x == -INV_E:
            return complex(-1.0, 0.0)
        if x < -INV_E:
            raise DomainError(
                f"w_principal is undefined on the branch cut (-inf, -1/e]; got z={x!r}"
            )
        if x == 0.0:
            return 0j
    w = _initial_guess(z)
    floor = max(abs(z), 1e-300)
    try:
        for _ in range(max_iter):
            ew = cmath.exp(w)
            f = w * ew - z
            if abs(f) <= tol * floor:
                return w
            wp1 = w + 1.0
            if wp1 == 0:  # only reachable from a degenerate guess
                wp1 = 1e-12
            w -= f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
    except OverflowError:
        raise ConvergenceError(f"Halley iterate overflowed for z={z!r}") from None
    raise ConvergenceError(f"no convergence after {max_iter} Halley steps for z={z!r}")


def w_branch_m1(x: float, tol: float = 1e-14) -> float:
    """Real branch W-1(x) on [-1/e, 0): the solution w <= -1 of w*exp(w) = x.

    Bracketing bisection on (-inf, -1], polished by one Halley step.
    """
    x = float(x)
    if not -INV_E <= x < 0.0:
        raise DomainError(f"w_branch_m1 requires -1/e <= x < 0; got {x!r}")
    if x == -INV_E:
        return -1.0
    hi = -1.0  # g(-1) = -1/e - x <= 0
    lo = -2.0
    while lo * math.exp(lo) - x <= 0.0:
        lo *= 2.0
        if lo < -1e6:  # x this close to 0 underflows w*e^w first
            break
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if mid * math.exp(mid) - x <= 0.0:
            hi = mid
        else:
            lo = mid
    w = 0.5 * (lo + hi)
    ew = math.exp(w)
    f = w * ew - x
    wp1 = w + 1.0
    if wp1 != 0.0:
        w -= f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
    if abs(w * math.exp(w) - x) > max(tol, 1e-13) * abs(x):
        raise ConvergenceError(f"w_branch_m1 residual too large at x={x!r}")
    return w


def t_of_v(v: float) -> float:
    """Cut parameterization t(v) = -v*csc(v)*exp(-v*cot(v)), v in [0, pi).

    Strictly decreasing from t(0) = -1/e to -inf as v -> pi.
    """
    if not 0.0 <= v < math.pi:
        raise DomainError(f"t_of_v requires 0 <= v < pi; got {v!r}")
    return -vcscv(v) * math.exp(-vcotv(v))


def u_of_v(v: float) -> float:
    """Re W on the cut as a function of v = Im W: u(v) = -v*cot(v)."""
    if not 0.0 <= v < math.pi:
        raise DomainError(f"u_of_v requires 0 <= v < pi; got {v!r}")
    return -vcotv(v)


def s_of_v(v: float) -> float:
    """Imaginary-axis parameterization s(v) = v*sec(v)*exp(v*tan(v)), v in [0, pi/2)."""
    if not 0.0 <= v < 0.5 * math.pi:
        raise DomainError(f"s_of_v requires 0 <= v < pi/2; got {v!r}")
    return v / math.cos(v) * math.exp(v * math.tan(v))


def im_w_on_cut(t: float, iterations: int = 80) -> float:
    """Im W(t) on the upper edge of the cut, t <= -1/e: inverts t_of_v.

    Bisection on log|t(v)| - log|t|, which is strictly increasing in v; the
    log form stays finite arbitrarily close to v = pi.
    """
    t = float(t)
    if t > -INV_E:
        raise DomainError(f"im_w_on_cut requires t <= -1/e; got {t!r}")
    if t == -INV_E:
        return 0.0
    target = math.log(-t)

    def h(v: float) -> float:
        return math.log(vcscv(v)) - vcotv(v) - target

    lo, hi = 1e-12, math.pi - 1e-12
    if h(lo) >= 0.0:  # t a hair below -1/e: root indistinguishable from 0
        return 0.0
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if h(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def w_derivative_oracle(z: complex) -> complex:
    """W'(z) = W(z) / (z*(1+W(z))) from the principal-branch oracle.

    The removable point z = 0 returns 1; the branch point z = -1/e, where the
    derivative blows up, is rejected.
    """
    z = complex(z)
    if z == 0:
        return complex(1.0, 0.0)
    if z.imag == 0.0 and z.real == -INV_E:
        raise DomainError("W' is singular at the branch point z = -1/e")
    w = w_principal(z)
    return w / (z * (1.0 + w))


@dataclass(frozen=True)
class BranchCutPoint:
    """A point on the branch cut: position t < -1/e and v = Im W(t) from above."""

    t: float
    v: float

    def __post_init__(self):
        if self.t > -INV_E:
            raise DomainError(f"cut points need t <= -1/e; got t={self.t!r}")
        if not 0.0 <= self.v < math.pi:
            raise DomainError(f"cut points need v in [0, pi); got v={self.v!r}")

    @classmethod
    def from_t(cls, t: float) -> "BranchCutPoint":
        return cls(t=float(t), v=im_w_on_cut(t))

    @classmethod
    def from_v(cls, v: float) -> "BranchCutPoint":
        return cls(t=t_of_v(v), v=float(v))

    def residual(self) -> float:
        """Defect of the defining relation t = t(v)."""
        return self.t - t_of_v(self.v)
