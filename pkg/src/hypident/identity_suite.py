"""Named, parameterized identity checks.

Every check evaluates one side of an identity numerically (quadrature over
closed-form integrands) and compares it against the closed form of the
other side, returning a CheckRecord.  The family under test:

* the main identity: the weighted integral over (T, S) of a product of two
  hypergeometric closed forms is independent of the spectral parameter t
  and equals pi / sqrt((1-T)(1-S));
* Barnes-type gamma integrals and three sech-weighted spectral integrals
  with shift parameters (A, tau, r, B);
* the rational-kernel route to the same result: the spectral kernel
  factorization, the q-substituted Q(r) integral, and the partial-fraction
  obstruction integer that must vanish.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

from .errors import DegenerateConfigurationError, DomainError
from .policy import DEFAULT_POLICY, EvaluationPolicy
from .quadrature import (IntegralEstimate, chebyshev_rule,
                         integrate_chebyshev_weighted,
                         integrate_decaying_halfline)
from .records import CheckRecord, build_record, record_id
from .special_functions import f_2it_unit_interval, f_it, log_gamma

__all__ = [
    "ParameterPair",
    "QuadraticFamily",
    "kernel_shifts",
    "kernel_factors",
    "main_integrand",
    "quadratic_family",
    "check_main_identity",
    "check_barnes_triple",
    "check_spectral_power",
    "check_spectral_resolvent",
    "check_spectral_product",
    "check_spectral_kernel",
    "check_q_integral",
    "check_obstruction_integer",
    "check_weighted_residual",
]

PI = math.pi
TWO_PI = 2.0 * math.pi
_LN_4PI = math.log(4.0 * PI)
_LN_4PI2 = math.log(4.0 * PI * PI)
_LN_2 = math.log(2.0)
_SQRT_PI = math.sqrt(PI)


@dataclass(frozen=True)
class ParameterPair:
    """The fixed pair (T, S) with 0 < T < S < 1."""

    T: float
    S: float

    def __post_init__(self):
        if not (0.0 < self.T < self.S < 1.0):
            raise DomainError(
                f"parameter pair must satisfy 0 < T < S < 1, got ({self.T:g}, {self.S:g})")

    @property
    def sqrt_T(self) -> float:
        return math.sqrt(self.T)

    @property
    def sqrt_S(self) -> float:
        return math.sqrt(self.S)

    def main_closed_form(self) -> float:
        """pi / (sqrt(1-T) sqrt(1-S)), the t-independent value of the main integral."""
        return PI / math.sqrt((1.0 - self.T) * (1.0 - self.S))

    def q_closed_form(self) -> float:
        """Closed form of the Q integral:
        pi / (sqrt(1-T) sqrt(1-S) sqrt(1-sqrt(T)) sqrt(1-sqrt(S)))."""
        return PI / (math.sqrt((1.0 - self.T) * (1.0 - self.S))
                     * math.sqrt((1.0 - self.sqrt_T) * (1.0 - self.sqrt_S)))


def _ln_cosh(u: float) -> float:
    u = abs(u)
    return u + math.log1p(math.exp(-2.0 * u)) - _LN_2


def _growth_rate(a: float) -> float:
    # exponential growth rate (in s) of F(+-is;1/2;-a): zero for a >= 0,
    # 2 asin(sqrt(-a)) < pi for a in (-1, 0)
    if a >= 0.0:
        return 0.0
    return 2.0 * math.asin(math.sqrt(-a))


# ---------------------------------------------------------------------------
# kernels on [T, S]

def kernel_shifts(z: float, pair: ParameterPair) -> tuple[float, float]:
    """Shift arguments (A(z), B(z)) feeding the spectral product identity:

        A(z) = -(1+sqrt(z))(sqrt(z)-sqrt(T)) / (2(1-sqrt(T)) sqrt(z))
        B(z) =  (1+sqrt(z))(sqrt(S)-sqrt(z)) / (2(1-sqrt(S)) sqrt(z))

    For T <= z <= S these satisfy A > -1 and B >= 0.
    """
    if not pair.T <= z <= pair.S:
        raise DomainError(f"z = {z:g} outside [{pair.T:g}, {pair.S:g}]")
    sz = math.sqrt(z)
    a = -(1.0 + sz) * (sz - pair.sqrt_T) / (2.0 * (1.0 - pair.sqrt_T) * sz)
    b = (1.0 + sz) * (pair.sqrt_S - sz) / (2.0 * (1.0 - pair.sqrt_S) * sz)
    return a, b


def _poly_coeffs(r: float, pair: ParameterPair) -> tuple[float, float, float, float]:
    # R and the quadratic-in-z coefficients E, F, G of the kernel denominator
    st, ss = pair.sqrt_T, pair.sqrt_S
    rr = 2.0 * r * (1.0 - st) * (1.0 - ss)
    m = st + ss - 2.0 * ss * st
    k = st + ss - 2.0
    e = m * m + 2.0 * rr * ss * st
    f = 2.0 * k * m + 2.0 * rr * (1.0 + ss * st - 2.0 * st - 2.0 * ss) + rr * rr
    g = k * k + 2.0 * rr
    return rr, e, f, g


def kernel_factors(z: float, r: float, pair: ParameterPair) -> tuple[float, float]:
    """Geometric prefactor and rational factor of the spectral kernel.

    The first factor is
        pi (1-sqrt(z)) sqrt(sqrt(z)+sqrt(T)) sqrt(sqrt(z)+sqrt(S))
           sqrt(1-sqrt(T)) sqrt(1-sqrt(S)),
    the second a rational function of z whose denominator E + F z + G z^2
    is strictly positive on [T, S] for every r > 0.
    """
    if not pair.T <= z <= pair.S:
        raise DomainError(f"z = {z:g} outside [{pair.T:g}, {pair.S:g}]")
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r:g}")
    st, ss = pair.sqrt_T, pair.sqrt_S
    sz = math.sqrt(z)
    i1 = (PI * (1.0 - sz) * math.sqrt(sz + st) * math.sqrt(sz + ss)
          * math.sqrt(1.0 - st) * math.sqrt(1.0 - ss))
    rr, e, f, g = _poly_coeffs(r, pair)
    num = (st + ss - 2.0 * ss * st) + rr * sz + z * (st + ss - 2.0)
    i2 = num / (e + f * z + g * z * z)
    return i1, i2


def _second_argument(z: float, pair: ParameterPair) -> float:
    # argument x of the second closed-form factor in the main integrand
    return (pair.S - z) * (1.0 - z) / ((1.0 - pair.sqrt_S) ** 2 * z)


def main_integrand(z: float, pair: ParameterPair, t: complex) -> complex:
    """Smooth part of the main integrand at interior z (T < z < S).

    Product of the two hypergeometric closed-form factors divided by
    (1 - z); the endpoint weight 1/sqrt((z-T)(S-z)) is owned by the
    quadrature engine and must not be applied here.
    """
    if not pair.T < z < pair.S:
        raise DomainError(f"z = {z:g} outside ({pair.T:g}, {pair.S:g})")
    a_shift, _ = kernel_shifts(z, pair)
    y = -a_shift
    x = _second_argument(z, pair)
    return f_2it_unit_interval(t, y) * f_it(t, x) / (1.0 - z)


# ---------------------------------------------------------------------------
# main identity

def check_main_identity(pair: ParameterPair, t: complex,
                        policy: EvaluationPolicy = DEFAULT_POLICY,
                        tolerance: float = 1e-7,
                        re_t_cap: float = 2.0) -> CheckRecord:
    """Integrate the main integrand over (T, S) and compare with
    pi / sqrt((1-T)(1-S)).

    The integrand grows like exp(4 |Re t| asin(sqrt(Y))) while the answer
    stays O(1), so |Re t| is capped (default 2) and the record carries a
    digits-lost metric log10(max |integrand| / closed form) making the
    cancellation visible.
    """
    t = complex(t)
    if abs(t.real) > re_t_cap:
        raise DomainError(
            f"|Re t| = {abs(t.real):g} exceeds the cancellation cap {re_t_cap:g}")
    st, ss = pair.sqrt_T, pair.sqrt_S
    s_val, t_val = pair.S, pair.T
    peak = [0.0]

    if t.imag == 0.0:
        tr = t.real
        inv_ss = 1.0 / (1.0 - ss) ** 2

        def f(z: float) -> float:
            sz = math.sqrt(z)
            y = (1.0 + sz) * (sz - st) / (2.0 * (1.0 - st) * sz)
            x = (s_val - z) * (1.0 - z) * inv_ss / z
            v = (math.cosh(4.0 * tr * math.asin(math.sqrt(y)))
                 * math.cos(2.0 * tr * math.asinh(math.sqrt(x))) / (1.0 - z))
            av = abs(v)
            if av > peak[0]:
                peak[0] = av
            return v
    else:
        def f(z: float) -> complex:
            v = main_integrand(z, pair, t)
            av = abs(v)
            if av > peak[0]:
                peak[0] = av
            return v

    est = integrate_chebyshev_weighted(f, t_val, s_val, policy)
    rhs = pair.main_closed_form()
    digits_lost = math.log10(peak[0] / rhs) if peak[0] > 0.0 else 0.0
    rid = record_id("main_identity", T=pair.T, S=pair.S, t=t)
    return build_record(
        rid, est.value, rhs, tolerance, converged=est.converged,
        metadata={"T": pair.T, "S": pair.S, "t": t,
                  "nodes": est.nodes_used, "digits_lost": digits_lost,
                  "quadrature_error": est.error_estimate})


# ---------------------------------------------------------------------------
# Barnes-type and sech-weighted spectral integrals

def check_barnes_triple(a: float, b: float, c: float,
                        policy: EvaluationPolicy = DEFAULT_POLICY,
                        tolerance: float = 1e-8) -> CheckRecord:
    """Barnes-type integral
        (1/2pi) int_0^inf Gamma(a+-is) Gamma(b+-is) Gamma(c+-is)
                          / Gamma(+-2is) ds
      = Gamma(a+b) Gamma(a+c) Gamma(b+c)   for a >= 0, b, c > 0,

    where Gamma(x+-is) denotes Gamma(x+is) Gamma(x-is).  For a = 0 the
    singular ratio Gamma(+-is)/Gamma(+-2is) is replaced by its closed form
    4 cosh(pi s), which has the finite limit 4 at s = 0.
    """
    if a < 0.0 or b <= 0.0 or c <= 0.0:
        raise DomainError(
            f"Barnes integral requires a >= 0 and b, c > 0, got ({a:g}, {b:g}, {c:g})")

    if a == 0.0:
        def g(s: float) -> float:
            ln_core = (_LN_2 * 2.0 + _ln_cosh(PI * s)
                       + 2.0 * (log_gamma(complex(b, s)).real
                                + log_gamma(complex(c, s)).real))
            return math.exp(ln_core)
    else:
        def g(s: float) -> float:
            ln_core = 2.0 * (log_gamma(complex(a, s)).real
                             + log_gamma(complex(b, s)).real
                             + log_gamma(complex(c, s)).real
                             - log_gamma(complex(0.0, 2.0 * s)).real)
            return math.exp(ln_core)

    est = integrate_decaying_halfline(g, 0.9 * PI, policy)
    lhs = est.value / (2.0 * PI)
    rhs = math.gamma(a + b) * math.gamma(a + c) * math.gamma(b + c)
    rid = record_id("barnes", a=a, b=b, c=c)
    return build_record(rid, lhs, rhs, tolerance, converged=est.converged,
                        metadata={"a": a, "b": b, "c": c,
                                  "nodes": est.nodes_used})


def check_spectral_power(a_shift: float, tau: float,
                         policy: EvaluationPolicy = DEFAULT_POLICY,
                         tolerance: float = 1e-8) -> CheckRecord:
    """Sech-class spectral integral with a gamma shift tau >= 0:

        (1/2pi) int_0^inf 4 pi |Gamma(1/2+tau+is)|^2 F(+-is;1/2;-A) ds
      = sqrt(pi) Gamma(1+tau) Gamma(1/2+tau) (1+A)^(-1/2-tau),  A > -1.

    The gamma prefactor is the closed form of
    Gamma(+-is) Gamma(1/2+-is) Gamma(1/2+tau+-is) / Gamma(+-2is).
    """
    if a_shift <= -1.0:
        raise DomainError(f"shift must satisfy A > -1, got {a_shift:g}")
    if tau < 0.0:
        raise DomainError(f"tau must be non-negative, got {tau:g}")

    z0 = 0.5 + tau
    if a_shift >= 0.0:
        la = math.asinh(math.sqrt(a_shift))

        def g(s: float) -> float:
            base = _LN_4PI + 2.0 * log_gamma(complex(z0, s)).real
            return math.exp(base) * math.cos(2.0 * s * la)
    else:
        ga = math.asin(math.sqrt(-a_shift))

        def g(s: float) -> float:
            base = _LN_4PI + 2.0 * log_gamma(complex(z0, s)).real
            return math.exp(base + _ln_cosh(2.0 * s * ga))

    decay = 0.9 * (PI - _growth_rate(a_shift))
    est = integrate_decaying_halfline(g, decay, policy)
    lhs = est.value / (2.0 * PI)
    rhs = (_SQRT_PI * math.gamma(1.0 + tau) * math.gamma(0.5 + tau)
           * (1.0 + a_shift) ** (-0.5 - tau))
    rid = record_id("spectral_power", A=a_shift, tau=tau)
    return build_record(rid, lhs, rhs, tolerance, converged=est.converged,
                        metadata={"A": a_shift, "tau": tau,
                                  "nodes": est.nodes_used})


def _resolvent_product_estimate(a_shift: float, r: float, b_shift: float,
                                policy: EvaluationPolicy) -> tuple[IntegralEstimate, complex]:
    # shared integrand of the resolvent (B = 0) and product checks; the
    # B factor multiplies last so the B = 0 instance is bit-identical to
    # the resolvent evaluation (cos(0) == 1.0 exactly)
    lr = math.asinh(math.sqrt(r))
    inv_sqrt_1pr = 1.0 / math.sqrt(1.0 + r)
    lb = math.asinh(math.sqrt(b_shift))

    if a_shift >= 0.0:
        la = math.asinh(math.sqrt(a_shift))

        def g(s: float) -> float:
            w = math.exp(_LN_4PI2 - _ln_cosh(PI * s))
            return (w * math.cos(2.0 * s * lr) * inv_sqrt_1pr
                    * math.cos(2.0 * s * la) * math.cos(2.0 * s * lb))
    else:
        ga = math.asin(math.sqrt(-a_shift))

        def g(s: float) -> float:
            w = math.exp(_LN_4PI2 - _ln_cosh(PI * s) + _ln_cosh(2.0 * s * ga))
            return (w * math.cos(2.0 * s * lr) * inv_sqrt_1pr
                    * math.cos(2.0 * s * lb))

    decay = 0.9 * (PI - _growth_rate(a_shift))
    est = integrate_decaying_halfline(g, decay, policy)
    return est, est.value / (2.0 * PI)


def check_spectral_resolvent(a_shift: float, r: float,
                             policy: EvaluationPolicy = DEFAULT_POLICY,
                             tolerance: float = 1e-8) -> CheckRecord:
    """Sech-weighted spectral integral with the half-shifted factor:

        (1/2pi) int_0^inf (4pi^2/cosh(pi s)) F(1/2+-is;1/2;-r)
                          F(+-is;1/2;-A) ds
      = pi sqrt(1+A) / (1+r+A),   A > -1, r > 0.
    """
    if a_shift <= -1.0:
        raise DomainError(f"shift must satisfy A > -1, got {a_shift:g}")
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r:g}")
    est, lhs = _resolvent_product_estimate(a_shift, r, 0.0, policy)
    rhs = PI * math.sqrt(1.0 + a_shift) / (1.0 + r + a_shift)
    rid = record_id("spectral_resolvent", A=a_shift, r=r)
    return build_record(rid, lhs, rhs, tolerance, converged=est.converged,
                        metadata={"A": a_shift, "r": r,
                                  "nodes": est.nodes_used})


def check_spectral_product(a_shift: float, r: float, b_shift: float,
                           policy: EvaluationPolicy = DEFAULT_POLICY,
                           tolerance: float = 1e-8) -> CheckRecord:
    """Two-shift generalization of the resolvent integral:

        (1/2pi) int (4pi^2/cosh(pi s)) F(1/2+-is;1/2;-r)
                    F(+-is;1/2;-A) F(+-is;1/2;-B) ds
      = pi sqrt(1+A) sqrt(1+B) (1+A+r+B) / ((1+A+r+B)^2 + 4rAB)

    for A > -1, r > 0, B >= 0.  Positivity of the denominator is asserted;
    the B = 0 rows reproduce the resolvent check bit for bit.
    """
    if a_shift <= -1.0:
        raise DomainError(f"shift must satisfy A > -1, got {a_shift:g}")
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r:g}")
    if b_shift < 0.0:
        raise DomainError(f"B must be non-negative, got {b_shift:g}")
    est, lhs = _resolvent_product_estimate(a_shift, r, b_shift, policy)
    if b_shift == 0.0:
        denom = (1.0 + r + a_shift) ** 2
        rhs = PI * math.sqrt(1.0 + a_shift) / (1.0 + r + a_shift)
    else:
        denom = (1.0 + a_shift + r + b_shift) ** 2 + 4.0 * r * a_shift * b_shift
        rhs = (PI * math.sqrt(1.0 + a_shift) * math.sqrt(1.0 + b_shift)
               * (1.0 + a_shift + r + b_shift) / denom)
    rid = record_id("spectral_product", A=a_shift, r=r, B=b_shift)
    return build_record(rid, lhs, rhs, tolerance, converged=est.converged,
                        consistent=denom > 0.0,
                        metadata={"A": a_shift, "r": r, "B": b_shift,
                                  "denominator": denom,
                                  "nodes": est.nodes_used})


# ---------------------------------------------------------------------------
# spectral kernel factorization

def check_spectral_kernel(z: float, r: float, pair: ParameterPair,
                          policy: EvaluationPolicy = DEFAULT_POLICY,
                          tolerance: float = 1e-7) -> CheckRecord:
    """Spectral integral of the two-factor product against the doubled
    sech weight, compared with the kernel factorization:

        (1/pi) int_0^inf (4pi^2/cosh(2 pi t)) F(1/2+-2it;1/2;-r)
                         B_t(z) dt  =  i1(z) i2(r, z)

    where B_t(z) is the product of the two closed-form factors of the main
    integrand and (i1, i2) = kernel_factors(z, r, pair).  Valid on the
    closed interval T <= z <= S (the first factor degenerates to 1 at
    z = T, the second at z = S).
    """
    a_shift, _ = kernel_shifts(z, pair)
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r:g}")
    y = -a_shift
    x = _second_argument(z, pair)
    as_y = math.asin(math.sqrt(y)) if y > 0.0 else 0.0
    lx = math.asinh(math.sqrt(x))
    lr = math.asinh(math.sqrt(r))
    inv_sqrt_1pr = 1.0 / math.sqrt(1.0 + r)

    def g(t: float) -> float:
        ln_w = _LN_4PI2 - _ln_cosh(TWO_PI * t)
        if as_y > 0.0:
            ln_w += _ln_cosh(4.0 * t * as_y)
        return (math.exp(ln_w) * math.cos(4.0 * t * lr) * inv_sqrt_1pr
                * math.cos(2.0 * t * lx))

    decay = 0.9 * (TWO_PI - 4.0 * as_y)
    est = integrate_decaying_halfline(g, decay, policy)
    lhs = est.value / PI
    i1, i2 = kernel_factors(z, r, pair)
    rid = record_id("spectral_kernel", T=pair.T, S=pair.S, z=z, r=r)
    return build_record(rid, lhs, i1 * i2, tolerance, converged=est.converged,
                        metadata={"T": pair.T, "S": pair.S, "z": z, "r": r,
                                  "nodes": est.nodes_used})


# ---------------------------------------------------------------------------
# Q integral and the partial-fraction obstruction

def _q_integrand(pair: ParameterPair, r: float):
    st, ss = pair.sqrt_T, pair.sqrt_S
    rr, e, f, g = _poly_coeffs(r, pair)
    m = st + ss - 2.0 * ss * st
    k = st + ss - 2.0
    span = ss - st

    def h(q: float) -> float:
        sz = st + q * span
        z = sz * sz
        i2 = (m + rr * sz + z * k) / (e + f * z + g * z * z)
        return 2.0 * sz * i2 / (1.0 + sz)

    return h


def _q_estimate(pair: ParameterPair, r: float,
                policy: EvaluationPolicy) -> tuple[complex, IntegralEstimate]:
    est = integrate_chebyshev_weighted(_q_integrand(pair, r), 0.0, 1.0, policy)
    return (1.0 + r) * est.value, est


def check_q_integral(r: float, pair: ParameterPair,
                     policy: EvaluationPolicy = DEFAULT_POLICY,
                     tolerance: float = 1e-7) -> CheckRecord:
    """Q(r): the q-substituted integral of the rational kernel over (0, 1)
    with the sqrt(q(1-q)) endpoint weight, times (1+r), against the
    closed form pi / (sqrt(1-T) sqrt(1-S) sqrt(1-sqrt(T)) sqrt(1-sqrt(S))).

    The identity holds for every r > 0.  The record also carries the
    integrated magnitude of the O(1/r) kernel defect
    (1+r) i2(r,z) - 1/(2(1-sqrt(T))(1-sqrt(S)) sqrt(z)), the quantity whose
    decay rate the large-r analysis rests on.
    """
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r:g}")
    lhs, est = _q_estimate(pair, r, policy)
    rhs = pair.q_closed_form()

    st, ss = pair.sqrt_T, pair.sqrt_S
    rr, e, f, g = _poly_coeffs(r, pair)
    m = st + ss - 2.0 * ss * st
    k = st + ss - 2.0
    span = ss - st
    inv_base = 1.0 / (2.0 * (1.0 - st) * (1.0 - ss))

    def defect(q: float) -> float:
        sz = st + q * span
        z = sz * sz
        i2 = (m + rr * sz + z * k) / (e + f * z + g * z * z)
        return 2.0 * sz * abs((1.0 + r) * i2 - inv_base / sz) / (1.0 + sz)

    # |defect| has an interior kink; a fixed fat rule is plenty for the
    # two digits the rate comparison needs
    kernel_defect = chebyshev_rule(defect, 0.0, 1.0, 2048).real

    rid = record_id("q_integral", T=pair.T, S=pair.S, r=r)
    return build_record(rid, lhs, rhs, tolerance, converged=est.converged,
                        metadata={"T": pair.T, "S": pair.S, "r": r,
                                  "nodes": est.nodes_used,
                                  "kernel_defect": kernel_defect})


@dataclass(frozen=True)
class QuadraticFamily:
    """All r-dependent algebra of the rational kernel at one r.

    E + F z + G z^2 = E (1 - alpha1 z)(1 - alpha2 z); sqrt_alpha1/2 are the
    fixed (principal) square-root choices used consistently in the
    partial-fraction coefficients a..e and the four closed-form integral
    terms D1..D4.  pf_residual is the worst relative mismatch between the
    rational kernel and its partial-fraction expansion at five interior
    sample points.
    """

    r: float
    R: float
    E: float
    F: float
    G: float
    alpha1: complex
    alpha2: complex
    sqrt_alpha1: complex
    sqrt_alpha2: complex
    a: complex
    b: complex
    c: complex
    d: complex
    e: complex
    D1: complex
    D2: complex
    D3: complex
    D4: complex
    pf_residual: float


def quadratic_family(r: float, pair: ParameterPair,
                     pf_tolerance: float = 1e-9) -> QuadraticFamily:
    """Solve the kernel quadratic, build the partial-fraction coefficients
    and the four closed-form integral terms.

    Roots 1/alpha1, 1/alpha2 are ordered by (real, imaginary) part, making
    the construction deterministic; sqrt(alpha_i) is the principal branch.
    A double root, a root at z = 0 or z = 1, or a partial-fraction
    residual above pf_tolerance raises DegenerateConfigurationError.
    """
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r:g}")
    st, ss = pair.sqrt_T, pair.sqrt_S
    rr, e_c, f_c, g_c = _poly_coeffs(r, pair)
    m = st + ss - 2.0 * ss * st
    k = st + ss - 2.0

    disc = f_c * f_c - 4.0 * e_c * g_c
    scale = max(f_c * f_c, abs(4.0 * e_c * g_c))
    if abs(disc) <= 1e-12 * scale:
        raise DegenerateConfigurationError(
            f"kernel quadratic has a (near-)double root at r = {r:g} "
            f"(relative discriminant {abs(disc) / scale:.2e})")
    sum_efg = e_c + f_c + g_c
    if e_c <= 0.0 or abs(sum_efg) <= 1e-12 * (abs(e_c) + abs(f_c) + abs(g_c)):
        raise DegenerateConfigurationError(
            f"kernel quadratic has a root at z = 0 or z = 1 at r = {r:g}")

    # roots of E + F z + G z^2 via the stable Vieta split
    sq = cmath.sqrt(complex(disc))
    if (f_c.conjugate() * sq).real >= 0.0:
        qq = -0.5 * (f_c + sq)
    else:
        qq = -0.5 * (f_c - sq)
    z_roots = sorted([qq / g_c, e_c / qq], key=lambda w: (w.real, w.imag))
    alpha1, alpha2 = 1.0 / z_roots[0], 1.0 / z_roots[1]
    sqa1, sqa2 = cmath.sqrt(alpha1), cmath.sqrt(alpha2)
    y1, y2 = 1.0 / sqa1, 1.0 / sqa2

    def one_plus_shifts(y: complex) -> complex:
        # 1 + A + r + B continued to complex sqrt(z) = y
        a_s = -(1.0 + y) * (y - st) / (2.0 * (1.0 - st) * y)
        b_s = (1.0 + y) * (ss - y) / (2.0 * (1.0 - ss) * y)
        return 1.0 + a_s + r + b_s

    pref = (1.0 - st) * (1.0 - ss)
    a_co = -(m - rr + k) / sum_efg
    b_co = pref * one_plus_shifts(y1) / ((alpha1 - alpha2) * (1.0 + y1) * e_c)
    c_co = pref * one_plus_shifts(-y1) / ((alpha1 - alpha2) * (1.0 - y1) * e_c)
    d_co = pref * one_plus_shifts(y2) / ((alpha2 - alpha1) * (1.0 + y2) * e_c)
    e_co = pref * one_plus_shifts(-y2) / ((alpha2 - alpha1) * (1.0 - y2) * e_c)

    # worst relative mismatch of kernel vs expansion at 5 interior points
    worst = 0.0
    for frac in (0.1, 0.3, 0.5, 0.7, 0.9):
        y = st + frac * (ss - st)
        z = y * y
        ref = y * (m + rr * y + k * z) / ((1.0 + y) * (e_c + f_c * z + g_c * z * z))
        got = (a_co / (1.0 + y) + b_co / (1.0 - sqa1 * y) + c_co / (1.0 + sqa1 * y)
               + d_co / (1.0 - sqa2 * y) + e_co / (1.0 + sqa2 * y))
        worst = max(worst, abs(got - ref) / abs(ref))
    if worst > pf_tolerance:
        raise DegenerateConfigurationError(
            f"partial-fraction expansion lost accuracy at r = {r:g} "
            f"(relative residual {worst:.2e}); roots too close")

    def closed_term(coeff: complex, u: complex) -> complex:
        # 2 (1+r) * coeff * pi/(1 - u sqrt(T)) * ((1-u sqrt(S))/(1-u sqrt(T)))^(-1/2)
        base = (1.0 - u * ss) / (1.0 - u * st)
        return 2.0 * (1.0 + r) * coeff * PI / (1.0 - u * st) * base ** -0.5

    d1 = closed_term(b_co, sqa1)
    d2 = closed_term(c_co, -sqa1)
    d3 = closed_term(d_co, sqa2)
    d4 = closed_term(e_co, -sqa2)

    return QuadraticFamily(r=r, R=rr, E=e_c, F=f_c, G=g_c,
                           alpha1=alpha1, alpha2=alpha2,
                           sqrt_alpha1=sqa1, sqrt_alpha2=sqa2,
                           a=a_co, b=b_co, c=c_co, d=d_co, e=e_co,
                           D1=d1, D2=d2, D3=d3, D4=d4, pf_residual=worst)


def check_obstruction_integer(r: float, pair: ParameterPair,
                              policy: EvaluationPolicy = DEFAULT_POLICY,
                              tolerance: float = 1e-8,
                              integer_tolerance: float = 1e-6,
                              large_r: float = 10.0,
                              strict_r: float = 50.0) -> CheckRecord:
    """Partial-fraction route: Q(r) minus its closed form must equal the
    sum D1+D2+D3+D4 of the four closed-form terms, each of which squares
    to the same value

        -4 pi^2 (1-sqrt(T))(1-sqrt(S)) r (1+r)^2 / ((alpha1-alpha2)^2 E^2),

    so the difference is an integer multiple n_r in [-4, 4] of a known
    transcendental factor.  The record asserts the sum identity and the
    equality of the |D_i| always, integrality of n_r for r >= large_r, and
    n_r = 0 for r >= strict_r.
    """
    fam = quadratic_family(r, pair)
    tight = replace(policy, abs_tol=min(policy.abs_tol, 1e-12),
                    rel_tol=min(policy.rel_tol, 1e-12))
    q_val, est = _q_estimate(pair, r, tight)
    closed = pair.q_closed_form()
    residual = q_val - closed

    d_terms = (fam.D1, fam.D2, fam.D3, fam.D4)
    d_sum = fam.D1 + fam.D2 + fam.D3 + fam.D4
    d_abs = [abs(d) for d in d_terms]
    spread = (max(d_abs) - min(d_abs)) / max(d_abs)
    sq_closed = (-4.0 * PI * PI * (1.0 - pair.sqrt_T) * (1.0 - pair.sqrt_S)
                 * r * (1.0 + r) ** 2
                 / ((fam.alpha1 - fam.alpha2) ** 2 * fam.E ** 2))
    sq_resid = max(abs(d * d - sq_closed) for d in d_terms) / abs(sq_closed)

    factor = (2j * PI * math.sqrt((1.0 - pair.sqrt_T) * (1.0 - pair.sqrt_S))
              * math.sqrt(r) * (1.0 + r)
              / cmath.sqrt(complex(fam.F * fam.F - 4.0 * fam.E * fam.G)))
    n_r = residual / factor
    n_int = max(-4, min(4, round(n_r.real)))
    n_dist = abs(n_r - n_int)

    ok = spread <= 1e-9 and sq_resid <= 1e-8
    if r >= large_r:
        ok = ok and n_dist <= integer_tolerance
    if r >= strict_r:
        ok = ok and n_int == 0 and abs(n_r) <= integer_tolerance

    rid = record_id("obstruction", T=pair.T, S=pair.S, r=r)
    return build_record(
        rid, d_sum, residual, tolerance, converged=est.converged,
        consistent=ok,
        metadata={"T": pair.T, "S": pair.S, "r": r,
                  "n_r": n_r, "n_int": n_int, "n_dist": n_dist,
                  "d_abs_spread": spread, "d_square_residual": sq_resid,
                  "q_value": q_val, "q_closed_form": closed,
                  "pf_residual": fam.pf_residual,
                  "nodes": est.nodes_used})


# ---------------------------------------------------------------------------
# weighted residual of the main identity

def check_weighted_residual(r: float, pair: ParameterPair,
                            t_policy: EvaluationPolicy | None = None,
                            policy: EvaluationPolicy | None = None,
                            tolerance: float = 1e-6) -> CheckRecord:
    """Smoke-level consistency check: the doubled-sech-weighted spectral
    average of (main integral at t) minus (its closed form) over t in
    (0, inf) must vanish.

    Computed by linearity as (weighted average of the main integral)
    minus (closed form) * (weighted unit integral); both pieces share the
    same truncation so their errors largely cancel.  The weighted unit
    integral is itself compared against its closed form pi/(1+r) and the
    residual stored in the metadata.  The inner quadrature tolerance is
    relaxed by the weight's own decay, since at large t the weight crushes
    the inner cancellation noise.
    """
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r:g}")
    if t_policy is None:
        t_policy = EvaluationPolicy(abs_tol=1e-8, rel_tol=1e-8, max_nodes=20000)
    if policy is None:
        policy = EvaluationPolicy(abs_tol=2e-10, rel_tol=1e-9, max_nodes=60000)

    st, ss = pair.sqrt_T, pair.sqrt_S
    t_lo, s_hi = pair.T, pair.S
    inv_ss = 1.0 / (1.0 - ss) ** 2
    lr = math.asinh(math.sqrt(r))
    inv_sqrt_1pr = 1.0 / math.sqrt(1.0 + r)
    rhs_const = pair.main_closed_form()

    inner_nodes = [0]
    inner_unconverged = [0]

    def weight(t: float) -> float:
        return (math.exp(_LN_4PI2 - _ln_cosh(TWO_PI * t))
                * math.cos(4.0 * t * lr) * inv_sqrt_1pr)

    def inner_main(t: float) -> float:
        def f(z: float) -> float:
            sz = math.sqrt(z)
            y = (1.0 + sz) * (sz - st) / (2.0 * (1.0 - st) * sz)
            x = (s_hi - z) * (1.0 - z) * inv_ss / z
            return (math.cosh(4.0 * t * math.asin(math.sqrt(y)))
                    * math.cos(2.0 * t * math.asinh(math.sqrt(x))) / (1.0 - z))

        loosen = math.cosh(min(TWO_PI * t, 700.0))
        scaled = replace(policy,
                         abs_tol=min(max(policy.abs_tol * loosen, policy.abs_tol), 1e6))
        est = integrate_chebyshev_weighted(f, t_lo, s_hi, scaled)
        inner_nodes[0] += est.nodes_used
        if not est.converged:
            inner_unconverged[0] += 1
        return est.value.real

    unit_est = integrate_decaying_halfline(weight, 0.9 * TWO_PI, t_policy)
    full_est = integrate_decaying_halfline(
        lambda t: weight(t) * inner_main(t), 0.9 * TWO_PI, t_policy)

    lhs = (full_est.value - rhs_const * unit_est.value) / PI
    unit_residual = abs(unit_est.value / PI - PI / (1.0 + r))
    converged = (unit_est.converged and full_est.converged
                 and inner_unconverged[0] == 0)
    rid = record_id("weighted_residual", T=pair.T, S=pair.S, r=r)
    return build_record(
        rid, lhs, 0.0, tolerance, converged=converged,
        metadata={"T": pair.T, "S": pair.S, "r": r,
                  "unit_residual": unit_residual,
                  "nodes": (unit_est.nodes_used + full_est.nodes_used
                            + inner_nodes[0]),
                  "inner_unconverged": inner_unconverged[0]})
