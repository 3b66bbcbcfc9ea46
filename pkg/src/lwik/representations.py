"""Integral-representation evaluators for W and related functions.

Each representation gets one evaluator returning an EvalResult; all of them
are validated against the iterative oracle on their region of validity.  The
catalog covers:

* Stieltjes integrals over the branch-cut density for W(z)/z, W'(z),
  1/(1+W(z)), 1/W(z), and the log form W = ln(z/W);
* the Thorin-Bernstein log integral and the Levy-measure (double-integral)
  Bernstein form with its density factor phi;
* Nevanlinna/Pick kernel forms for W, W/z (two ways), z/W, and a
  right-half-plane form whose denominator carries z^2 (well suited to
  large |z|);
* Poisson-kernel integrals on (-1/e, e) and a variant derived from the
  log-inverse relation on (0, e);
* contour/boundary-value forms: log-modulus and arctan integrals on
  (-1/e, e), a complex-plane form with semi-infinite integral, its two
  real-axis simplifications on (1/e, inf), and a circular-contour form for
  the real branch W_{-1}.

Evaluators accept any QuadratureSpec; defaults pick the midpoint rule for
the smooth even [0, pi]-type kernels (spectrally convergent there) and
adaptive/semi-infinite rules for the theta- and t-kernels.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Optional

from .errors import DomainError, NonFiniteError, NotConvergedError
from .quadrature import (
    QuadratureSpec,
    QuadResult,
    QuadRule,
    integrate,
    integrate_gauss_legendre,
    map_semi_infinite,
    _fsum_complex,
    _leggauss,
)
from .w_oracle import (
    INV_E,
    vcotv,
    vcscv,
    w_branch_m1,
    w_derivative_oracle,
    w_principal,
)

PI = math.pi

# v*cot(v) below this is so negative that every cut-kernel integrand has
# decayed under double-precision resolution; clamp the tail to 0.
_TAIL_VCOTV = -400.0
# v*tan(v) above this overflows the z^2-form denominator; integrand ~ e^-vt.
_TAIL_VTANV = 330.0


class Target(Enum):
    """Which function of W an evaluator's value represents."""

    W = "W"
    W_PRIME = "W'"
    W_OVER_Z = "W/z"
    INV_ONE_PLUS_W = "1/(1+W)"
    INV_W = "1/W"
    Z_OVER_W = "z/W"
    W_BRANCH_M1 = "W_-1"


class Representation(Enum):
    """Tags for the representation catalog; values are the CLI names."""

    STIELTJES_W_OVER_Z = "stieltjes-w-over-z"
    W_PRIME = "w-prime"
    INV_ONE_PLUS_W = "inv-one-plus-w"
    INV_W = "inv-w"
    W_LOG_FORM = "w-log-form"
    THORIN_W = "thorin"
    BERNSTEIN_W = "bernstein"
    PICK_W = "pick-w"
    PICK_EXP_FORM = "pick-exp"
    PICK_W_OVER_Z = "pick-w-over-z"
    PICK_Z_OVER_W = "pick-z-over-w"
    CAUER_Z2 = "cauer-z2"
    POISSON_1 = "poisson1"
    POISSON_2 = "poisson2"
    POISSON_WRIGHT = "poisson-wright"
    BS_LOG_MODULUS = "bs-log-modulus"
    BS_ARCTAN = "bs-arctan"
    BS_SIEWERT_COMPLEX = "bs-siewert-complex"
    BS_SIEWERT_REAL_2 = "bs-siewert-arctan"
    BS_SIEWERT_REAL_3 = "bs-siewert-parts"
    BS_BRANCH_M1 = "bs-branch-m1"


TARGET_OF = {
    Representation.STIELTJES_W_OVER_Z: Target.W_OVER_Z,
    Representation.W_PRIME: Target.W_PRIME,
    Representation.INV_ONE_PLUS_W: Target.INV_ONE_PLUS_W,
    Representation.INV_W: Target.INV_W,
    Representation.W_LOG_FORM: Target.W,
    Representation.THORIN_W: Target.W,
    Representation.BERNSTEIN_W: Target.W,
    Representation.PICK_W: Target.W,
    Representation.PICK_EXP_FORM: Target.W_OVER_Z,
    Representation.PICK_W_OVER_Z: Target.W_OVER_Z,
    Representation.PICK_Z_OVER_W: Target.Z_OVER_W,
    Representation.CAUER_Z2: Target.W_OVER_Z,
    Representation.POISSON_1: Target.W,
    Representation.POISSON_2: Target.W,
    Representation.POISSON_WRIGHT: Target.W,
    Representation.BS_LOG_MODULUS: Target.W,
    Representation.BS_ARCTAN: Target.W,
    Representation.BS_SIEWERT_COMPLEX: Target.W,
    Representation.BS_SIEWERT_REAL_2: Target.W,
    Representation.BS_SIEWERT_REAL_3: Target.W,
    Representation.BS_BRANCH_M1: Target.W_BRANCH_M1,
}


@dataclass
class EvalResult:
    """Value of one representation at one point, with quadrature metadata."""

    value: complex
    err_estimate: float
    nodes_used: int
    rep: Representation
    target: Target
    converged: bool = True


@dataclass(frozen=True)
class PickKernelPoint:
    """Argument pair (z, v) of the Nevanlinna kernel used by the Pick forms."""

    z: complex
    v: float

    def kernel(self) -> complex:
        if not 0.0 < self.v < PI:
            raise DomainError(f"kernel parameter v must lie in (0, pi); got {self.v!r}")
        return _pick_kernel(complex(self.z), self.v)


# ---------------------------------------------------------------------------
# constants computed from the oracle (never hard-coded)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def pick_constants() -> tuple[float, float, float, float]:
    """(alpha0, beta0, gamma0, eta0) = (Re W(i), Im W(i), e^-alpha0, Re[i/W(i)])."""
    wi = w_principal(1j)
    alpha0 = wi.real
    beta0 = wi.imag
    gamma0 = math.exp(-alpha0)
    eta0 = (1j / wi).real
    return alpha0, beta0, gamma0, eta0


# ---------------------------------------------------------------------------
# domains
# ---------------------------------------------------------------------------

def _off_cut(z: complex) -> bool:
    return not (z.imag == 0.0 and z.real <= -INV_E)


def _is_real(z: complex) -> bool:
    return z.imag == 0.0


def branch_m1_window(c: float) -> tuple[float, float]:
    """Admissible open x-interval of the W_{-1} contour form for a given c > 1."""
    if not c > 1.0:
        raise DomainError(f"contour constant c must exceed 1; got {c!r}")
    return (-INV_E, -(2.0 * c - 1.0) * math.exp(1.0 - 2.0 * c))


_DOMAIN_TEXT = {
    Representation.STIELTJES_W_OVER_Z: "cut plane: z not in (-inf, -1/e]",
    Representation.W_PRIME: "cut plane: z not in (-inf, -1/e]",
    Representation.INV_ONE_PLUS_W: "cut plane: z not in (-inf, -1/e]",
    Representation.INV_W: "cut plane, z != 0",
    Representation.W_LOG_FORM: "cut plane, z != 0",
    Representation.THORIN_W: "cut plane: z not in (-inf, -1/e]",
    Representation.BERNSTEIN_W: "closed right half-plane Re z >= 0",
    Representation.PICK_W: "cut plane: z not in (-inf, -1/e]",
    Representation.PICK_EXP_FORM: "cut plane: z not in (-inf, -1/e]",
    Representation.PICK_W_OVER_Z: "cut plane: z not in (-inf, -1/e]",
    Representation.PICK_Z_OVER_W: "cut plane, z != 0",
    Representation.CAUER_Z2: "open right half-plane Re z > 0",
    Representation.POISSON_1: "real x in (-1/e, e)",
    Representation.POISSON_2: "real x in (-1/e, e)",
    Representation.POISSON_WRIGHT: "real x in (0, e)",
    Representation.BS_LOG_MODULUS: "real x in (-1/e, e)",
    Representation.BS_ARCTAN: "real x in (-1/e, e)",
    Representation.BS_SIEWERT_COMPLEX: "complex plane minus the real segment (-inf, 0]",
    Representation.BS_SIEWERT_REAL_2: "real x > 1/e",
    Representation.BS_SIEWERT_REAL_3: "real x > 1/e",
    Representation.BS_BRANCH_M1: "real x in (-1/e, -(2c-1)e^(1-2c)) for contour constant c > 1",
}


def in_domain(rep: Representation, z: complex, c: float = 1.5) -> bool:
    """True when z lies in the validity region of the representation."""
    z = complex(z)
    if rep in (
        Representation.STIELTJES_W_OVER_Z,
        Representation.W_PRIME,
        Representation.INV_ONE_PLUS_W,
        Representation.THORIN_W,
        Representation.PICK_W,
        Representation.PICK_EXP_FORM,
        Representation.PICK_W_OVER_Z,
    ):
        return _off_cut(z)
    if rep in (Representation.INV_W, Representation.W_LOG_FORM, Representation.PICK_Z_OVER_W):
        return _off_cut(z) and z != 0
    if rep is Representation.BERNSTEIN_W:
        return z.real >= 0.0
    if rep is Representation.CAUER_Z2:
        return z.real > 0.0
    if rep in (Representation.POISSON_1, Representation.POISSON_2,
               Representation.BS_LOG_MODULUS, Representation.BS_ARCTAN):
        return _is_real(z) and -INV_E < z.real < math.e
    if rep is Representation.POISSON_WRIGHT:
        return _is_real(z) and 0.0 < z.real < math.e
    if rep is Representation.BS_SIEWERT_COMPLEX:
        return not (_is_real(z) and z.real <= 0.0)
    if rep in (Representation.BS_SIEWERT_REAL_2, Representation.BS_SIEWERT_REAL_3):
        return _is_real(z) and z.real > 1.0 / math.e
    if rep is Representation.BS_BRANCH_M1:
        lo, hi = branch_m1_window(c)
        return _is_real(z) and lo < z.real < hi
    raise ValueError(f"unknown representation {rep!r}")


def domain_description(rep: Representation) -> str:
    return _DOMAIN_TEXT[rep]


def _require(rep: Representation, z: complex, c: float = 1.5) -> complex:
    z = complex(z)
    if not in_domain(rep, z, c):
        raise DomainError(f"{rep.value}: z={z!r} outside validity region ({_DOMAIN_TEXT[rep]})")
    return z


# ---------------------------------------------------------------------------
# default quadrature per representation
# ---------------------------------------------------------------------------

_MIDPOINT_REPS = {
    Representation.STIELTJES_W_OVER_Z,
    Representation.W_PRIME,
    Representation.INV_ONE_PLUS_W,
    Representation.THORIN_W,
    Representation.PICK_W,
    Representation.PICK_EXP_FORM,
    Representation.PICK_W_OVER_Z,
    Representation.CAUER_Z2,
}

# These kernels tend to their v -> pi limits only algebraically, so the
# periodized integrand has a corner there and the midpoint rule drops to
# O(h^2); plain Gauss panels do not care about periodicity.
_GAUSS_REPS = {
    Representation.INV_W,
    Representation.W_LOG_FORM,
    Representation.PICK_Z_OVER_W,
}


def default_spec(rep: Representation, tol: float = 1e-10) -> QuadratureSpec:
    """Rule matched to the integrand's smoothness class, at the given tol."""
    if rep in _MIDPOINT_REPS:
        return QuadratureSpec(QuadRule.MIDPOINT_PERIODIC, nodes=32, tol=tol, max_refinements=12)
    if rep in _GAUSS_REPS:
        return QuadratureSpec(QuadRule.GAUSS_LEGENDRE, nodes=32, tol=tol, max_refinements=8)
    if rep is Representation.BS_BRANCH_M1:
        return QuadratureSpec(QuadRule.GAUSS_LEGENDRE, nodes=16, tol=tol, max_refinements=9)
    if rep in (Representation.BS_SIEWERT_COMPLEX, Representation.BS_SIEWERT_REAL_2,
               Representation.BS_SIEWERT_REAL_3, Representation.BERNSTEIN_W):
        return QuadratureSpec(QuadRule.SEMI_INFINITE, nodes=8, tol=tol, max_refinements=42)
    return QuadratureSpec(QuadRule.ADAPTIVE_SIMPSON, nodes=8, tol=tol, max_refinements=42)


# ---------------------------------------------------------------------------
# kernel pieces
# ---------------------------------------------------------------------------

def _kernel_B(v: float, c: float) -> float:
    # v^2 + (1 - v*cot v)^2 with c = v*cot v precomputed
    return v * v + (1.0 - c) * (1.0 - c)


def _q_param(v: float, c: float) -> float:
    # q(v) = (sin v / v) e^{v cot v} = -1/t(v); decreasing from e to 0 on (0, pi)
    return math.exp(c) / vcscv(v) if c > -745.0 else 0.0


def _pick_kernel(z: complex, v: float) -> complex:
    # K(z,v) = (1 + z t)(v^2 + (1 - v cot v)^2) / ((z - t)(1 + t^2)) with
    # t = t(v) = -1/q, rewritten in q so nothing overflows as v -> pi.
    c = vcotv(v)
    q = _q_param(v, c)
    B = _kernel_B(v, c)
    return q * q * (q - z) * B / ((1.0 + z * q) * (1.0 + q * q))


# ---------------------------------------------------------------------------
# core integrands (exposed for cross-rule validation)
# ---------------------------------------------------------------------------

def _f_stieltjes_w_over_z(z: complex) -> Callable[[float], complex]:
    def f(v):
        v = abs(v)
        c = vcotv(v)
        if c < _TAIL_VCOTV:
            return 0j
        return _kernel_B(v, c) / (z + vcscv(v) * math.exp(-c))
    return f


def _f_w_prime(z: complex) -> Callable[[float], complex]:
    def f(v):
        v = abs(v)
        c = vcotv(v)
        if c < _TAIL_VCOTV:
            return 0j
        return 1.0 / (z + vcscv(v) * math.exp(-c))
    return f


def _f_inv_one_plus_w(z: complex) -> Callable[[float], complex]:
    def f(v):
        v = abs(v)
        c = vcotv(v)
        return 1.0 / (1.0 + z * _q_param(v, c))
    return f


def _f_inv_w(z: complex) -> Callable[[float], complex]:
    def f(v):
        v = abs(v)
        c = vcotv(v)
        A = vcscv(v)
        ec = math.exp(c) if c > -745.0 else 0.0
        return _kernel_B(v, c) / (A * (A + z * ec))
    return f


def _f_thorin(z: complex) -> Callable[[float], complex]:
    def f(v):
        v = abs(v)
        c = vcotv(v)
        arg = 1.0 + z * _q_param(v, c)
        if arg.real <= 0.0 and arg.imag == 0.0:
            raise DomainError(f"thorin log argument crossed the negative axis at v={v!r}")
        return cmath.log(arg)
    return f


def _f_varphi(xi: float) -> Callable[[float], complex]:
    def f(v):
        v = abs(v)
        c = vcotv(v)
        if c < _TAIL_VCOTV:
            return 0.0
        t = xi * vcscv(v) * math.exp(-c)
        return math.exp(-t) if t < 745.0 else 0.0
    return f


def _f_pick_w(z: complex) -> Callable[[float], complex]:
    # K(z,v) * t(v) with t = -1/q
    def f(v):
        v = abs(v)
        c = vcotv(v)
        q = _q_param(v, c)
        B = _kernel_B(v, c)
        return q * (z - q) * B / ((1.0 + z * q) * (1.0 + q * q))
    return f


def _f_pick_kernel(z: complex) -> Callable[[float], complex]:
    def f(v):
        return _pick_kernel(z, abs(v))
    return f


def _f_pick_z_over_w(z: complex) -> Callable[[float], complex]:
    # K(z,v) e^{-2 v cot v} = (q - z) B / ((1 + z q)(1 + q^2) A^2); tends to -z
    def f(v):
        v = abs(v)
        c = vcotv(v)
        q = _q_param(v, c)
        A = vcscv(v)
        B = _kernel_B(v, c)
        return (q - z) * B / ((1.0 + z * q) * (1.0 + q * q) * A * A)
    return f


def _f_cauer(z: complex) -> Callable[[float], complex]:
    z2 = z * z
    def f(v):
        v = abs(v)
        tv = math.tan(v)
        vt = v * tv
        if vt > _TAIL_VTANV:
            return 0j
        s = v / math.cos(v) * math.exp(vt)
        N = v * v + (1.0 + vt) * (1.0 + vt)
        return N * s * tv / (z2 + s * s)
    return f


def _f_poisson_1(x: float) -> Callable[[float], float]:
    def f(th):
        ec = x * math.exp(-math.cos(th))
        den = 1.0 - 2.0 * ec * math.cos(th + math.sin(th)) + ec * ec
        if abs(den) < 1e-300:
            raise NonFiniteError(f"poisson kernel denominator vanished at theta={th!r}")
        num = math.cos(1.5 * th) - ec * math.cos(2.5 * th + math.sin(th))
        return num / den * math.cos(0.5 * th)
    return f


def _f_poisson_2(x: float) -> Callable[[float], float]:
    def f(th):
        ec = x * math.exp(math.cos(th))
        den = 1.0 + 2.0 * ec * math.cos(th - math.sin(th)) + ec * ec
        if abs(den) < 1e-300:
            raise NonFiniteError(f"poisson kernel denominator vanished at theta={th!r}")
        num = math.sin(1.5 * th) + ec * math.sin(2.5 * th - math.sin(th))
        return num / den * math.sin(0.5 * th)
    return f


def _f_poisson_wright_main(x: float) -> Callable[[float], float]:
    L = math.log(x)
    def f(th):
        den = 1.0 + 2.0 * th * math.sin(th) + th * th - 2.0 * math.cos(th) * L + L * L
        num = math.cos(0.5 * th) + th * math.sin(1.5 * th) - math.cos(1.5 * th) * L
        return num / den * math.cos(0.5 * th)
    return f


def _f_poisson_wright_psi(x: float) -> Callable[[float], float]:
    L = math.log(x)
    def f(t):
        d = L + t - math.log(t)
        return (t - 1.0) / (PI * PI + d * d)
    return f


def _boundary_RI(x: float, th: float) -> tuple[float, float]:
    # Real/imaginary parts of F(e^{i th}) e^{-i th} for F(w) = w - x e^{-w}
    ec = x * math.exp(-math.cos(th))
    ang = th + math.sin(th)
    return 1.0 - ec * math.cos(ang), ec * math.sin(ang)


def _f_bs_log_modulus(x: float) -> Callable[[float], float]:
    def f(th):
        R, I = _boundary_RI(x, th)
        return math.log(R * R + I * I)
    return f


def _f_bs_arctan(x: float) -> Callable[[float], float]:
    def f(th):
        R, I = _boundary_RI(x, th)
        return 2.0 * math.atan2(I, R) * math.sin(th) - math.log(R * R + I * I) * math.cos(th)
    return f


def _f_bs_siewert_complex(z: complex) -> Callable[[float], complex]:
    lz = cmath.log(z)
    base_re, b = lz.real, lz.imag
    def f(t):
        base = base_re + t - math.log(t)
        n = complex(base, b + PI)   # strictly upper half-plane
        d = complex(base, b - PI)   # strictly lower half-plane
        # continuous branch of log(n/d): arg difference lies in (0, 2 pi)
        val = complex(math.log(abs(n)) - math.log(abs(d)), cmath.phase(n) - cmath.phase(d))
        return val / (1.0 + t)
    return f


def _f_bs_siewert_arctan(x: float) -> Callable[[float], float]:
    L = math.log(x)
    def f(t):
        return math.atan(PI / (L + t - math.log(t))) / (1.0 + t)
    return f


def _f_bs_siewert_parts(x: float) -> Callable[[float], float]:
    L = math.log(x)
    def f(t):
        d = L + t - math.log(t)
        return (t - 1.0) / (PI * PI + d * d) * math.log1p(t) / t
    return f


# ---------------------------------------------------------------------------
# evaluators
# ---------------------------------------------------------------------------

def _result(rep: Representation, value: complex, quad: QuadResult,
            err: Optional[float] = None) -> EvalResult:
    return EvalResult(
        value=value,
        err_estimate=quad.err_estimate if err is None else err,
        nodes_used=quad.nodes_used,
        rep=rep,
        target=TARGET_OF[rep],
        converged=quad.converged,
    )


def stieltjes_w_over_z(z: complex, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(z)/z as a Stieltjes integral of the cut density over v in (0, pi)."""
    rep = Representation.STIELTJES_W_OVER_Z
    z = _require(rep, z)
    spec = spec or default_spec(rep)
    q = integrate(_f_stieltjes_w_over_z(z), 0.0, PI, spec)
    return _result(rep, q.value / PI, q, q.err_estimate / PI)


def w_prime(z: complex, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W'(z) as a Stieltjes integral with the same cut parameterization."""
    rep = Representation.W_PRIME
    z = _require(rep, z)
    spec = spec or default_spec(rep)
    q = integrate(_f_w_prime(z), 0.0, PI, spec)
    return _result(rep, q.value / PI, q, q.err_estimate / PI)


def inv_one_plus_w(z: complex, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """1/(1 + W(z)) as a Stieltjes integral."""
    rep = Representation.INV_ONE_PLUS_W
    z = _require(rep, z)
    spec = spec or default_spec(rep)
    q = integrate(_f_inv_one_plus_w(z), 0.0, PI, spec)
    return _result(rep, q.value / PI, q, q.err_estimate / PI)


def inv_w(z: complex, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """1/W(z) = 1/z + Stieltjes integral."""
    rep = Representation.INV_W
    z = _require(rep, z)
    spec = spec or default_spec(rep)
    q = integrate(_f_inv_w(z), 0.0, PI, spec)
    return _result(rep, 1.0 / z + q.value / PI, q, q.err_estimate / PI)


def w_log_form(z: complex, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(z) = ln(z/W(z)) with z/W built from the 1/W integral."""
    rep = Representation.W_LOG_FORM
    z = _require(rep, z)
    spec = spec or default_spec(rep)
    q = integrate(_f_inv_w(z), 0.0, PI, spec)
    inner = 1.0 + z * q.value / PI   # equals z/W(z)
    value = cmath.log(inner)
    err = abs(z / inner) * q.err_estimate / PI
    return _result(rep, value, q, err)


def thorin_w(z: complex, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(z) as the Thorin-Bernstein logarithmic integral."""
    rep = Representation.THORIN_W
    z = _require(rep, z)
    spec = spec or default_spec(rep)
    q = integrate(_f_thorin(z), 0.0, PI, spec)
    return _result(rep, q.value / PI, q, q.err_estimate / PI)


def varphi(xi: float, spec: Optional[QuadratureSpec] = None) -> float:
    """Levy-density factor phi(xi): average of exp(-xi * |t(v)|) over v.

    Completely monotone with phi(0) = 1, decaying like exp(-xi/e).
    """
    xi = float(xi)
    if xi < 0.0:
        raise DomainError(f"varphi requires xi >= 0; got {xi!r}")
    if xi == 0.0:
        return 1.0
    spec = spec or QuadratureSpec(QuadRule.GAUSS_LEGENDRE, nodes=64, tol=1e-13, max_refinements=4)
    q = integrate(_f_varphi(xi), 0.0, PI, spec)
    return q.value.real / PI


def bernstein_w(z: complex, spec: Optional[QuadratureSpec] = None,
                inner_spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(z) on Re z >= 0 via the Levy-Khintchine double integral.

    The inner phi(xi) integral uses a fixed Gauss panel per outer node, with
    results memoized on the xi grid; the outer integral runs through the
    semi-infinite rational map.
    """
    rep = Representation.BERNSTEIN_W
    z = _require(rep, z)
    spec = spec or default_spec(rep)
    inner_order = inner_spec.nodes if inner_spec is not None else 64
    xs, ws = _leggauss(min(inner_order, 128))
    half = 0.5 * PI
    inner_nodes = [half + half * xi for xi in xs]
    inner_weights = [half * wi for wi in ws]

    cache: dict[float, float] = {}

    def phi(xi: float) -> float:
        got = cache.get(xi)
        if got is None:
            f = _f_varphi(xi)
            got = math.fsum(wi * f(vi) for vi, wi in zip(inner_nodes, inner_weights)) / PI
            cache[xi] = got
        return got

    def outer(xi: float) -> complex:
        u = z * xi
        if abs(u) < 1e-8:
            lead = z * (1.0 - 0.5 * u + u * u / 6.0)
        else:
            lead = (1.0 - cmath.exp(-u)) / xi
        p = phi(xi)
        return lead * p if p != 0.0 else 0j

    q = _semi_infinite(outer, spec)
    nodes = q.nodes_used * (len(inner_nodes) + 1)
    res = _result(rep, q.value, q)
    res.nodes_used = nodes
    return res


def pick_w(z: complex, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(z) from the Nevanlinna form: alpha0 plus a kernel integral."""
    rep = Representation.PICK_W
    z = _require(rep, z)
    spec = spec or default_spec(rep)
    alpha0 = pick_constants()[0]
    q = integrate(_f_pick_w(z), 0.0, PI, spec)
    return _result(rep, alpha0 + q.value / PI, q, q.err_estimate / PI)


def pick_exp_form(z: complex, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(z)/z = gamma0 * exp(-kernel integral); equals exp(-pick_w(z))."""
    rep = Representation.PICK_EXP_FORM
    z = _require(rep, z)
    spec = spec or default_spec(rep)
    gamma0 = pick_constants()[2]
    q = integrate(_f_pick_w(z), 0.0, PI, spec)
    value = gamma0 * cmath.exp(-q.value / PI)
    return _result(rep, value, q, abs(value) * q.err_estimate / PI)


def pick_w_over_z(z: complex, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(z)/z = beta0 plus the bare kernel integral."""
    rep = Representation.PICK_W_OVER_Z
    z = _require(rep, z)
    spec = spec or default_spec(rep)
    beta0 = pick_constants()[1]
    q = integrate(_f_pick_kernel(z), 0.0, PI, spec)
    return _result(rep, beta0 + q.value / PI, q, q.err_estimate / PI)


def pick_z_over_w(z: complex, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """z/W(z) = eta0 minus the kernel integral weighted by e^{-2 v cot v}."""
    rep = Representation.PICK_Z_OVER_W
    z = _require(rep, z)
    spec = spec or default_spec(rep)
    eta0 = pick_constants()[3]
    q = integrate(_f_pick_z_over_w(z), 0.0, PI, spec)
    return _result(rep, eta0 - q.value / PI, q, q.err_estimate / PI)


def cauer_w_over_z(z: complex, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(z)/z for Re z > 0 via the imaginary-axis form whose denominator
    carries z^2 (advantageous at large |z|)."""
    rep = Representation.CAUER_Z2
    z = _require(rep, z)
    spec = spec or default_spec(rep)
    q = integrate(_f_cauer(z), 0.0, 0.5 * PI, spec)
    return _result(rep, 2.0 * q.value / PI, q, 2.0 * q.err_estimate / PI)


def poisson_1(x: float, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(x) on (-1/e, e) by the Poisson-kernel cosine integral."""
    rep = Representation.POISSON_1
    z = _require(rep, x)
    spec = spec or default_spec(rep)
    q = integrate(_f_poisson_1(z.real), 0.0, PI, spec)
    return _result(rep, 2.0 * q.value / PI, q, 2.0 * q.err_estimate / PI)


def poisson_2(x: float, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(x) on (-1/e, e) by the companion sine-kernel integral."""
    rep = Representation.POISSON_2
    z = _require(rep, x)
    spec = spec or default_spec(rep)
    q = integrate(_f_poisson_2(z.real), 0.0, PI, spec)
    return _result(rep, -2.0 * q.value / PI, q, 2.0 * q.err_estimate / PI)


def poisson_wright(x: float, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(x) on (0, e) from the log-inverse relation: psi(x) plus a
    Poisson-type theta integral."""
    rep = Representation.POISSON_WRIGHT
    z = _require(rep, x)
    x = z.real
    spec = spec or default_spec(rep)
    q_psi = integrate(_f_poisson_wright_psi(x), 0.0, 1.0, spec)
    q_main = integrate(_f_poisson_wright_main(x), 0.0, PI, spec)
    value = q_psi.value.real + 2.0 * q_main.value.real / PI
    err = q_psi.err_estimate + 2.0 * q_main.err_estimate / PI
    out = _result(rep, complex(value), q_main, err)
    out.nodes_used = q_psi.nodes_used + q_main.nodes_used
    out.converged = q_psi.converged and q_main.converged
    return out


def bs_log_modulus(x: float, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(x) on (-1/e, e) as the half-period average of ln|F(e^{i th})/e^{i th}|^2
    for F(w) = w - x e^{-w}."""
    rep = Representation.BS_LOG_MODULUS
    z = _require(rep, x)
    spec = spec or default_spec(rep)
    q = integrate(_f_bs_log_modulus(z.real), 0.0, PI, spec)
    return _result(rep, q.value / (2.0 * PI), q, q.err_estimate / (2.0 * PI))


def bs_arctan(x: float, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(x) on (-1/e, e) combining boundary argument and log-modulus terms."""
    rep = Representation.BS_ARCTAN
    z = _require(rep, x)
    spec = spec or default_spec(rep)
    q = integrate(_f_bs_arctan(z.real), 0.0, PI, spec)
    return _result(rep, q.value / (2.0 * PI), q, q.err_estimate / (2.0 * PI))


def bs_siewert_complex(z: complex, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(z) off [-1/e, 0] via the canonical-function boundary integral.

    Uses the complex-log form of the boundary ratio, which stays exact off
    the real axis; for real z > 0 it reduces to the familiar arg integral.
    """
    rep = Representation.BS_SIEWERT_COMPLEX
    z = _require(rep, z)
    spec = spec or default_spec(rep)
    q = _semi_infinite(_f_bs_siewert_complex(z), spec)
    lz = cmath.log(z)
    factor = cmath.exp(1j * q.value / (2.0 * PI))
    value = 1.0 + (lz - 1.0) * factor
    err = abs(lz - 1.0) * abs(factor) * q.err_estimate / (2.0 * PI)
    return _result(rep, value, q, err)


def bs_siewert_real_arctan(x: float, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(x) for x > 1/e: arctan-kernel simplification of the boundary integral."""
    rep = Representation.BS_SIEWERT_REAL_2
    z = _require(rep, x)
    x = z.real
    spec = spec or default_spec(rep)
    q = _semi_infinite(_f_bs_siewert_arctan(x), spec)
    L = math.log(x)
    factor = math.exp(-q.value.real / PI)
    value = 1.0 + (L - 1.0) * factor
    err = abs(L - 1.0) * factor * q.err_estimate / PI
    return _result(rep, complex(value), q, err)


def bs_siewert_real_parts(x: float, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W(x) for x > 1/e: the integrated-by-parts variant with ln(1+t)/t kernel."""
    rep = Representation.BS_SIEWERT_REAL_3
    z = _require(rep, x)
    x = z.real
    spec = spec or default_spec(rep)
    q = _semi_infinite(_f_bs_siewert_parts(x), spec)
    L = math.log(x)
    factor = math.exp(-q.value.real)
    value = 1.0 + (L - 1.0) * factor
    err = abs(L - 1.0) * factor * q.err_estimate
    return _result(rep, complex(value), q, err)


def bs_branch_m1(x: float, c: float = 1.5, spec: Optional[QuadratureSpec] = None) -> EvalResult:
    """W_{-1}(x) from a closed-contour log integral around its location.

    The contour is the circle |zeta + c| = c - 1 (c > 1), which encloses the
    W_{-1} solution of w e^w = x exactly when x lies in the window
    (-1/e, -(2c-1) e^{1-2c}).  The integrand's logarithm must be a single
    continuous branch along the contour, so arguments are unwound across
    consecutive nodes; the net 2*pi winding is what encodes the root.
    """
    rep = Representation.BS_BRANCH_M1
    z = _require(rep, x, c)
    x = z.real
    spec = spec or default_spec(rep)
    radius = c - 1.0
    order = min(max(spec.nodes, 8), 64)
    xs, ws = _leggauss(order)

    def contour_sum(panels: int) -> complex:
        width = 2.0 * PI / panels
        vals = []
        prev_arg = None
        for p in range(panels):
            mid = -PI + (p + 0.5) * width
            half = 0.5 * width
            for xi, wi in zip(xs, ws):
                th = mid + half * xi
                e = cmath.exp(1j * th)
                zeta = -c + radius * e
                ratio = (zeta - x * cmath.exp(-zeta)) / zeta
                ang = cmath.phase(ratio)
                if prev_arg is not None:
                    ang += 2.0 * PI * round((prev_arg - ang) / (2.0 * PI))
                prev_arg = ang
                lg = complex(math.log(abs(ratio)), ang)
                vals.append(wi * half * lg * 1j * radius * e)
        return _fsum_complex(vals)

    panels = 4
    prev = None
    total_nodes = 0
    cur = 0j
    err = math.inf
    converged = False
    for _ in range(spec.max_refinements + 1):
        cur = contour_sum(panels)
        total_nodes += panels * order
        if prev is not None:
            err = abs(cur - prev) / (2.0 * PI)
            if err <= spec.tol:
                converged = True
                break
        prev = cur
        panels *= 2
    value = 1.0 - 2.0 * c - cur / (2j * PI)
    quad = QuadResult(cur, err, total_nodes, converged)
    return _result(rep, value, quad, err)


def _semi_infinite(f: Callable[[float], complex], spec: QuadratureSpec) -> QuadResult:
    # Rational map first, then whichever finite rule the spec names, so the
    # semi-infinite representations stay cross-checkable between rules.
    g = map_semi_infinite(f)
    if spec.rule in (QuadRule.SEMI_INFINITE, QuadRule.ADAPTIVE_SIMPSON):
        return integrate(g, 0.0, 1.0,
                         QuadratureSpec(QuadRule.ADAPTIVE_SIMPSON, spec.nodes, spec.tol, spec.max_refinements))
    return integrate(g, 0.0, 1.0, spec)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_EVALUATORS = {
    Representation.STIELTJES_W_OVER_Z: stieltjes_w_over_z,
    Representation.W_PRIME: w_prime,
    Representation.INV_ONE_PLUS_W: inv_one_plus_w,
    Representation.INV_W: inv_w,
    Representation.W_LOG_FORM: w_log_form,
    Representation.THORIN_W: thorin_w,
    Representation.BERNSTEIN_W: bernstein_w,
    Representation.PICK_W: pick_w,
    Representation.PICK_EXP_FORM: pick_exp_form,
    Representation.PICK_W_OVER_Z: pick_w_over_z,
    Representation.PICK_Z_OVER_W: pick_z_over_w,
    Representation.CAUER_Z2: cauer_w_over_z,
    Representation.POISSON_1: poisson_1,
    Representation.POISSON_2: poisson_2,
    Representation.POISSON_WRIGHT: poisson_wright,
    Representation.BS_LOG_MODULUS: bs_log_modulus,
    Representation.BS_ARCTAN: bs_arctan,
    Representation.BS_SIEWERT_COMPLEX: bs_siewert_complex,
    Representation.BS_SIEWERT_REAL_2: bs_siewert_real_arctan,
    Representation.BS_SIEWERT_REAL_3: bs_siewert_real_parts,
    Representation.BS_BRANCH_M1: bs_branch_m1,
}

_REAL_ARG_REPS = {
    Representation.POISSON_1,
    Representation.POISSON_2,
    Representation.POISSON_WRIGHT,
    Representation.BS_LOG_MODULUS,
    Representation.BS_ARCTAN,
    Representation.BS_SIEWERT_REAL_2,
    Representation.BS_SIEWERT_REAL_3,
    Representation.BS_BRANCH_M1,
}


def evaluate(rep: Representation, z: complex,
             spec: Optional[QuadratureSpec] = None, c: float = 1.5) -> EvalResult:
    """Evaluate any representation at z; c is the W_{-1} contour constant."""
    fn = _EVALUATORS[rep]
    if rep is Representation.BS_BRANCH_M1:
        return fn(complex(z).real if _is_real(complex(z)) else z, c=c, spec=spec)
    if rep in _REAL_ARG_REPS:
        return fn(complex(z).real if _is_real(complex(z)) else z, spec=spec)
    return fn(z, spec=spec)


def by_tag(tag: str) -> Representation:
    """Look a representation up by its CLI tag."""
    for rep in Representation:
        if rep.value == tag:
            return rep
    raise KeyError(tag)


def oracle_value(target: Target, z: complex) -> complex:
    """Value of the target function computed from the iterative oracle."""
    z = complex(z)
    if target is Target.W:
        return w_principal(z)
    if target is Target.W_PRIME:
        return w_derivative_oracle(z)
    if target is Target.W_OVER_Z:
        return complex(1.0) if z == 0 else w_principal(z) / z
    if target is Target.INV_ONE_PLUS_W:
        return 1.0 / (1.0 + w_principal(z))
    if target is Target.INV_W:
        return 1.0 / w_principal(z)
    if target is Target.Z_OVER_W:
        return complex(1.0) if z == 0 else z / w_principal(z)
    if target is Target.W_BRANCH_M1:
        return complex(w_branch_m1(z.real))
    raise ValueError(f"unknown target {target!r}")


def core_integrand(rep: Representation, z: complex,
                   c: float = 1.5):
    """(integrand, a, b) of the representation's defining integral.

    Semi-infinite integrals are returned already mapped onto (0, 1); the
    contour form for W_{-1} is excluded (its integrand is path-ordered).
    """
    z = complex(z)
    if rep is Representation.STIELTJES_W_OVER_Z:
        return _f_stieltjes_w_over_z(z), 0.0, PI
    if rep is Representation.W_PRIME:
        return _f_w_prime(z), 0.0, PI
    if rep is Representation.INV_ONE_PLUS_W:
        return _f_inv_one_plus_w(z), 0.0, PI
    if rep in (Representation.INV_W, Representation.W_LOG_FORM):
        return _f_inv_w(z), 0.0, PI
    if rep is Representation.THORIN_W:
        return _f_thorin(z), 0.0, PI
    if rep is Representation.BERNSTEIN_W:
        return map_semi_infinite(lambda xi: (-(cmath.exp(-z * xi) - 1.0) / xi if xi > 0 else z) * varphi(xi)), 0.0, 1.0
    if rep in (Representation.PICK_W, Representation.PICK_EXP_FORM):
        return _f_pick_w(z), 0.0, PI
    if rep is Representation.PICK_W_OVER_Z:
        return _f_pick_kernel(z), 0.0, PI
    if rep is Representation.PICK_Z_OVER_W:
        return _f_pick_z_over_w(z), 0.0, PI
    if rep is Representation.CAUER_Z2:
        return _f_cauer(z), 0.0, 0.5 * PI
    if rep is Representation.POISSON_1:
        return _f_poisson_1(z.real), 0.0, PI
    if rep is Representation.POISSON_2:
        return _f_poisson_2(z.real), 0.0, PI
    if rep is Representation.POISSON_WRIGHT:
        return _f_poisson_wright_main(z.real), 0.0, PI
    if rep is Representation.BS_LOG_MODULUS:
        return _f_bs_log_modulus(z.real), 0.0, PI
    if rep is Representation.BS_ARCTAN:
        return _f_bs_arctan(z.real), 0.0, PI
    if rep is Representation.BS_SIEWERT_COMPLEX:
        return map_semi_infinite(_f_bs_siewert_complex(z)), 0.0, 1.0
    if rep is Representation.BS_SIEWERT_REAL_2:
        return map_semi_infinite(_f_bs_siewert_arctan(z.real)), 0.0, 1.0
    if rep is Representation.BS_SIEWERT_REAL_3:
        return map_semi_infinite(_f_bs_siewert_parts(z.real)), 0.0, 1.0
    raise ValueError(f"no plain integrand exposed for {rep!r}")
