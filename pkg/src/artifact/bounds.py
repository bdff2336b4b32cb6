"""Scalar generating functions and convergence-radius computations.

Everything here runs in binary64.  Special functions that lose precision
near a removable singularity switch to a truncated Taylor series below a
documented threshold.  Quadratures go through scipy.integrate.quad and the
blow-up search through scipy.integrate.solve_ivp (RK45 with event location).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, optimize

from .config import DEFAULTS
from .errors import DivergenceError, DomainError, IntegrationError
from .magnus_core import bernoulli, theta_coefficient
from .series import RationalSeries

TWO_PI = 2.0 * math.pi
QUAD_ABS = float(DEFAULTS["quad_abs"])
BLOWUP_THRESHOLD = float(DEFAULTS["blowup_threshold"])

# below this |h| the difference quotient (e^h - 1)/h is taken from its series
_EXPM1_SERIES = 1e-8
# below this |x| the cot-based generating functions use their Taylor series
_COT_SERIES = 1.0
_COT_TERMS = 14


# ---------------------------------------------------------------------------
# the Eulerian generating function

def _expm1_quotient(h):
    """(e^h - 1)/h, accurate for tiny |h| and usable with complex h."""
    if abs(h) < _EXPM1_SERIES:
        return 1 + h / 2 + h * h / 6
    if isinstance(h, complex):
        return (np.exp(h) - 1) / h
    return math.expm1(h) / h


def G(u, v):
    """Bivariate Eulerian generating function (e^u - e^v)/(u e^v - v e^u).

    Written as E/(1 - vE) with E = (e^(u-v) - 1)/(u-v), which is the same
    function and has no removable singularity on u = v (there G = 1/(1-u)).
    Complex arguments are accepted.
    """
    E = _expm1_quotient(u - v)
    den = 1 - v * E
    if abs(den) < 1e-300 or abs(den) < 1e-14 * abs(E):
        raise DomainError(f"G({u}, {v}) is on the pole locus")
    return E / den


def theta_numeric(x: float, epsabs: float = QUAD_ABS) -> float:
    """Theta(x) = x * int_0^1 G(tx, (1-t)x) dt; diverges for x >= 2."""
    if x < 0:
        raise DomainError("theta_numeric needs x >= 0")
    if x >= 2:
        raise DivergenceError("Theta(x) = +inf for x >= 2")
    if x == 0:
        return 0.0
    val, _ = integrate.quad(lambda t: G(t * x, (1 - t) * x), 0.0, 1.0, epsabs=epsabs, epsrel=1e-13, limit=200)
    return x * val


def theta_partial_sum(x: float, K: int = 25) -> float:
    return sum(float(theta_coefficient(k)) * x ** k for k in range(1, K + 1))


def taylor_coefficients_2d(f: Callable, n: int, r: float = 0.25, m: int = 64) -> np.ndarray:
    """c[i, j] = coefficient of u^i v^j of f around (0, 0), by a 2D Cauchy FFT."""
    th = np.exp(2j * np.pi * np.arange(m) / m)
    vals = np.array([[f(r * a, r * b) for b in th] for a in th])
    c = np.fft.fft2(vals) / (m * m)
    out = np.zeros((n + 1, n + 1))
    for i in range(n + 1):
        for j in range(n + 1 - i):
            out[i, j] = c[i, j].real / r ** (i + j)
    return out


# ---------------------------------------------------------------------------
# resolvent bounds

def _branch(lam: float) -> Tuple[float, float]:
    D = 8 * lam * lam - 8 * lam + 1
    if abs(D) < 1e-12:
        D = 0.0
    return D, abs(1 - 2 * lam)


def _check_lambda(lam: float) -> None:
    if not 0.0 <= lam <= 1.0:
        raise DomainError("lambda must lie in [0, 1]")


def h_lambda(lam: float) -> float:
    """Pole of g_lambda; g_lambda is log-convex on [0, h(lambda)]."""
    _check_lambda(lam)
    D, a = _branch(lam)
    if D == 0.0:
        return 2 * math.sqrt(2)
    if D < 0:
        w = math.sqrt(-D)
        return 2 * math.atan2(w, a) / w
    w = math.sqrt(D)
    z = w / a
    if z >= 1.0:
        return math.inf
    # artanh(z)/z, series near z = 0 to avoid 0/0
    q = math.atanh(z) / z if z > 1e-6 else 1 + z * z / 3
    return 2 * q / a


def g_lambda(lam: float, x: float) -> float:
    """Solution of g' = 1 + |1-2l| g + l(1-l) g^2, g(0) = 0."""
    _check_lambda(lam)
    if x < 0:
        raise DomainError("g_lambda is evaluated at x >= 0")
    if x >= h_lambda(lam):
        raise DomainError(f"x = {x} is beyond the pole of g_lambda at {h_lambda(lam)}")
    if x == 0:
        return 0.0
    D, a = _branch(lam)
    if D == 0.0:
        return 4 * x / (4 - math.sqrt(2) * x)
    if D < 0:
        w = math.sqrt(-D)
        s = x * w / 2
        # 2/(-a + w cot s) = 2 sin s/(w cos s - a sin s)
        return 2 * math.sin(s) / (w * math.cos(s) - a * math.sin(s))
    w = math.sqrt(D)
    s = x * w / 2
    return 2 * math.sinh(s) / (w * math.cosh(s) - a * math.sinh(s))


def c1(xatol: float = 1e-10) -> float:
    """C_1 = min of h(lambda) over [0, 1/2]."""
    res = optimize.minimize_scalar(h_lambda, bounds=(1e-9, 0.5), method="bounded",
                                   options={"xatol": xatol})
    return float(res.fun)


def c1_argmin(xatol: float = 1e-10) -> float:
    res = optimize.minimize_scalar(h_lambda, bounds=(1e-9, 0.5), method="bounded",
                                   options={"xatol": xatol})
    return float(res.x)


def bch_resolvent_bound(lam: float, x: float, y: float) -> float:
    """(g(x) + g(y) + g(x)g(y)) / (1 - l(1-l) g(x) g(y))."""
    try:
        gx, gy = g_lambda(lam, x), g_lambda(lam, y)
    except DomainError as exc:
        raise DivergenceError(str(exc)) from None
    den = 1 - lam * (1 - lam) * gx * gy
    if den <= 0:
        raise DivergenceError("lambda(1-lambda) g(x) g(y) >= 1")
    return (gx + gy + gx * gy) / den


def g_resolvent(lam: float, x: float) -> float:
    """G^(lambda)(x) = x G((1-lambda)x, lambda x)."""
    _check_lambda(lam)
    return x * G((1 - lam) * x, lam * x)


def g_resolvent_pole(lam: float) -> float:
    _check_lambda(lam)
    if lam == 0.0:
        return math.inf
    if abs(1 - 2 * lam) < 1e-12:
        return 2.0
    return math.log((1 - lam) / lam) / (1 - 2 * lam)


def g_resolvent_inverse(lam: float, value: float) -> float:
    """Inverse of G^(lambda) on [0, pole) by bracketed root finding."""
    if value < 0:
        raise DomainError("G^(lambda) takes nonnegative values here")
    if value == 0:
        return 0.0
    hi = g_resolvent_pole(lam)
    if math.isinf(hi):
        hi = 1.0
        while g_resolvent(lam, hi) < value:
            hi *= 2
    else:
        hi = hi * (1 - 1e-15)
    return optimize.brentq(lambda s: g_resolvent(lam, s) - value, 0.0, hi, xtol=1e-15, rtol=4e-16)


def ghat_lambda(lam: float, x: float, y: float) -> float:
    """G^(lambda)((G^(lambda))^-1(x) + y)."""
    s = g_resolvent_inverse(lam, x) + y
    if s >= g_resolvent_pole(lam):
        raise DivergenceError("argument passes the pole of G^(lambda)")
    return g_resolvent(lam, s)


# ---------------------------------------------------------------------------
# beta-tilde and friends

@lru_cache(maxsize=None)
def _bb_coefficients() -> Tuple[float, ...]:
    # bb(x) = beta~(x) - 1 - x/2 = sum_{n>=1} |B_2n| x^2n / (2n)!
    return tuple(float(abs(bernoulli(2 * n)) / math.factorial(2 * n)) for n in range(1, _COT_TERMS + 1))


def _bb_series(x: float, deriv: int = 0) -> float:
    acc = 0.0
    for n, c in enumerate(_bb_coefficients(), 1):
        p = 2 * n
        if deriv == 0:
            acc += c * x ** p
        elif deriv == 1:
            acc += c * p * x ** (p - 1)
        else:
            acc += c * p * (p - 1) * x ** (p - 2)
    return acc


def beta_tilde_tilde(x: float) -> float:
    """beta~(x) - 1 - x/2 = 1 - (x/2) cot(x/2)."""
    if abs(x) < _COT_SERIES:
        return _bb_series(x)
    return 1 - (x / 2) / math.tan(x / 2)


def beta_tilde_tilde_prime(x: float) -> float:
    if abs(x) < _COT_SERIES:
        return _bb_series(x, 1)
    s = math.sin(x / 2)
    return -0.5 / math.tan(x / 2) + x / (4 * s * s)


def beta_tilde(x: float) -> float:
    """2 + x/2 - (x/2) cot(x/2); pole at x = 2 pi."""
    if not 0 <= x < TWO_PI:
        raise DomainError("beta_tilde is used on [0, 2 pi)")
    return 1 + x / 2 + beta_tilde_tilde(x)


def beta_tilde_prime(x: float) -> float:
    return 0.5 + beta_tilde_tilde_prime(x)


def beta_tilde_series(N: int) -> RationalSeries:
    """Exact coefficients of beta~ for x^0..x^N (all positive)."""
    c = [Fraction(0)] * (N + 1)
    c[0] = Fraction(1)
    if N >= 1:
        c[1] = Fraction(1, 2)
    for n in range(2, N + 1, 2):
        c[n] = abs(bernoulli(n)) / math.factorial(n)
    return RationalSeries(c)


def delta_standard(epsabs: float = 1e-12) -> float:
    """delta = int_0^{2 pi} dy / beta~(y)."""
    val, _ = integrate.quad(lambda y: 1 / beta_tilde(y) if y < TWO_PI else 0.0, 0.0, TWO_PI,
                            epsabs=epsabs, epsrel=1e-13, limit=200)
    return val


def chi(y: float) -> float:
    """int_0^y dt / beta~(t), the inverse of the standard psi."""
    if y <= 0:
        return 0.0
    val, _ = integrate.quad(lambda t: 1 / beta_tilde(t), 0.0, min(y, TWO_PI), epsabs=1e-13, epsrel=1e-13, limit=200)
    return val


def _c_cot(w: float) -> float:
    """cot w - 1/w, series near 0."""
    if abs(w) < 0.1:
        w2 = w * w
        return -w * (1 / 3 + w2 * (1 / 45 + w2 * (2 / 945 + w2 / 4725)))
    return 1 / math.tan(w) - 1 / w


def _c_cot_prime(w: float) -> float:
    if abs(w) < 0.1:
        w2 = w * w
        return -(1 / 3 + w2 * (3 / 45 + w2 * (10 / 945 + 7 * w2 / 4725)))
    s = math.sin(w)
    return -1 / (s * s) + 1 / (w * w)


def beta_ring(x: float) -> float:
    """The N >= 2 zeta tail: beta~~(x) - 2 x^2/(4 pi^2 - x^2); regular at 2 pi."""
    if x < math.pi:
        return beta_tilde_tilde(x) - 2 * x * x / (4 * math.pi ** 2 - x * x)
    u = x / 2
    return 1 - u * _c_cot(u - math.pi) + u / (math.pi + u)


def beta_ring_prime(x: float) -> float:
    if x < math.pi:
        d = 4 * math.pi ** 2 - x * x
        return beta_tilde_tilde_prime(x) - 16 * math.pi ** 2 * x / (d * d)
    u = x / 2
    w = u - math.pi
    du = -_c_cot(w) - u * _c_cot_prime(w) + math.pi / (math.pi + u) ** 2
    return du / 2


# ---------------------------------------------------------------------------
# exact series

def psi_series(N: int) -> RationalSeries:
    """Coefficients of psi with psi' = beta~(psi), psi(0) = 0, for x^0..x^N.

    Equivalent to k psi_k = sum_s |beta_s| sum_{l_1+..+l_s = k-1} psi_l1 .. psi_ls.
    """
    if N > 30:
        raise DomainError("psi_series is limited to N <= 30")
    bt = beta_tilde_series(N + 1)
    psi = RationalSeries([0, 1] + [0] * (N - 1)) if N >= 1 else RationalSeries([0])
    for n in range(2, N + 1):
        rhs = bt.compose(RationalSeries(psi.coefficients[:n] + [0]))
        c = psi.coefficients[:]
        c[n] = rhs[n - 1] / n
        psi = RationalSeries(c)
    return psi


THETA_LIE_K6 = Fraction(37, 60)


def theta_lie_series(N: int = 6, solve_k6: bool = False) -> RationalSeries:
    """Theta^Lie coefficients for x^0..x^N (N <= 6).

    Orders k <= 5 come from the exact LP.  Order 6 comes from the LP only when
    solve_k6 is set (several seconds); otherwise the stored optimum 37/60,
    which the test suite certifies separately, is used.
    """
    from .lie_min import theta_lie

    if N > 6:
        raise DomainError("Theta^Lie is available up to order 6")
    c = [Fraction(0)] * (N + 1)
    if N >= 1:
        c[1] = Fraction(1)
    for k in range(2, N + 1):
        if k == 6 and not solve_k6:
            obj = THETA_LIE_K6
        else:
            obj = theta_lie(k).objective
        c[k] = obj / math.factorial(k)
    return RationalSeries(c)


def delta6_series(solve_k6: bool = False) -> RationalSeries:
    """Delta_6: degree <= 5 part of beta~(Theta^Lie) - (Theta^Lie)'."""
    th = theta_lie_series(6, solve_k6)
    full = beta_tilde_series(6).compose(th) - th.derivative()
    return RationalSeries(full.coefficients[:6])


DELTA6 = (0.0, 0.0, 1 / 24, 1 / 72, 53 / 8640, 11 / 4320)


def delta6(x: float) -> float:
    return sum(c * x ** i for i, c in enumerate(DELTA6))


def delta6_integral(x: float) -> float:
    return sum(c * x ** (i + 1) / (i + 1) for i, c in enumerate(DELTA6))


# ---------------------------------------------------------------------------
# blow-up detection

@dataclass
class IVPSystem:
    """y' = rhs(x, y), y(0) = y0; blow-up when |y| passes threshold or
    singular_distance(y) reaches 0 (the RHS has a pole there)."""

    name: str
    rhs: Callable[[float, np.ndarray], np.ndarray]
    y0: Sequence[float]
    threshold: float = BLOWUP_THRESHOLD
    singular_distance: Optional[Callable[[np.ndarray], float]] = None
    x_max: float = 10.0

    @property
    def dimension(self) -> int:
        return len(self.y0)


@dataclass
class BlowupResult:
    radius: float
    est_error: float
    reason: str
    steps: int = 0
    notes: List[str] = field(default_factory=list)


def _blowup_once(system: IVPSystem, rtol: float, atol: float) -> Tuple[float, str, int]:
    # arclength-like time: d(x, y)/dtau = (1, f)/(1 + |f|)
    def flow(tau, z):
        x, y = z[0], z[1:]
        if system.singular_distance is not None and system.singular_distance(y) <= 0:
            return np.full_like(z, np.nan)
        try:
            f = np.asarray(system.rhs(x, y), dtype=float)
        except DomainError:
            return np.full_like(z, np.nan)
        s = 1.0 + np.max(np.abs(f))
        return np.concatenate(([1.0 / s], f / s))

    def ev_threshold(tau, z):
        return system.threshold - np.max(np.abs(z[1:]))

    ev_threshold.terminal = True
    events, names = [ev_threshold], ["threshold"]
    if system.singular_distance is not None:
        def ev_singular(tau, z):
            return system.singular_distance(z[1:]) - 1e-9
        ev_singular.terminal = True
        events.append(ev_singular)
        names.append("singularity")

    def ev_xmax(tau, z):
        return system.x_max - z[0]
    ev_xmax.terminal = True
    events.append(ev_xmax)
    names.append("x_max")

    z0 = np.concatenate(([0.0], np.asarray(system.y0, dtype=float)))
    sol = integrate.solve_ivp(flow, (0.0, 1e12), z0, method="RK45", rtol=rtol, atol=atol, events=events)
    if sol.status == -1:
        raise IntegrationError(f"{system.name}: {sol.message}")
    for i, name in enumerate(names):
        if len(sol.t_events[i]):
            if name == "x_max":
                raise IntegrationError(f"{system.name}: no blow-up before x = {system.x_max}")
            return float(sol.y_events[i][0][0]), name, len(sol.t)
    if not np.all(np.isfinite(sol.y[:, -1])):
        raise IntegrationError(f"{system.name}: non-finite state before blow-up")
    raise IntegrationError(f"{system.name}: integration ended without blow-up")


def blowup_radius(system: IVPSystem, rtol: float = 1e-11, atol: float = 1e-13) -> BlowupResult:
    """Abscissa where the solution escapes; error from a rerun at 1/10 the tolerances."""
    x1, reason, n = _blowup_once(system, rtol, atol)
    x2, _, _ = _blowup_once(system, rtol / 10, atol / 10)
    # the threshold itself cuts the blow-up short by about 1/threshold
    floor = 1.0 / system.threshold if reason == "threshold" else 0.0
    return BlowupResult(radius=x2, est_error=abs(x2 - x1) + floor, reason=reason, steps=n)


def _psi_singular(y: np.ndarray) -> float:
    return TWO_PI - y[0]


def standard_system() -> IVPSystem:
    return IVPSystem("standard", lambda x, y: np.array([beta_tilde(y[0])]), [0.0],
                     singular_distance=_psi_singular)


def method1_system() -> IVPSystem:
    return IVPSystem("method1", lambda x, y: np.array([beta_tilde(y[0]) - delta6(x)]), [0.0],
                     singular_distance=_psi_singular)


def method3_system() -> IVPSystem:
    def rhs(x, y):
        psi, q = y
        return np.array([1 + psi / 2 + q, beta_tilde_tilde_prime(psi) * (1 + q) + q])
    return IVPSystem("method3", rhs, [0.0, 0.0], singular_distance=_psi_singular)


def method4_system() -> IVPSystem:
    a = 1 / TWO_PI

    def rhs(x, y):
        psi, e, o, r = y
        D = 1 + 2 * e + r
        m = psi * a + o
        return np.array([
            1 + psi / 2 + 2 * e + r,
            a * 2 * m * (1 + e) * D + e,
            a * (2 * e + e * e + m * m) * D + o,
            beta_ring_prime(psi) * D + r,
        ])
    # beta_ring has its first pole at 4 pi
    return IVPSystem("method4", rhs, [0.0] * 4, singular_distance=lambda y: 2 * TWO_PI - y[0])


def method5_system() -> IVPSystem:
    a, b = 1 / TWO_PI, 1 / (2 * TWO_PI)
    k = 8 * (math.pi ** 2 / 6 - 1)

    def rhs(x, y):
        th, e, o, ee, oo = y
        D = 1 + 2 * e + k * ee
        m1 = th * a + o
        m2 = th * b + oo
        return np.array([
            D + th / 2,
            a * 2 * m1 * (1 + e) * D + e,
            a * (2 * e + e * e + m1 * m1) * D + o,
            b * 2 * m2 * (1 + ee) * D + ee,
            b * (2 * ee + ee * ee + m2 * m2) * D + oo,
        ])
    return IVPSystem("method5", rhs, [0.0] * 5)


BUILTIN_SYSTEMS = {
    "standard": standard_system,
    "method1": method1_system,
    "method3": method3_system,
    "method4": method4_system,
    "method5": method5_system,
}


def hodograph_radius(system: IVPSystem) -> float:
    """For scalar systems psi' = F(psi): x* = int_0^{2pi} dpsi / F(psi)."""
    val, _ = integrate.quad(lambda p: 1 / system.rhs(0.0, np.array([p]))[0] if p < TWO_PI else 0.0,
                            0.0, TWO_PI, epsabs=1e-12, epsrel=1e-12, limit=200)
    return val


def method1_lower_bound() -> Tuple[float, float]:
    """(L^, delta + L^) from the crude comparison with the standard solution."""
    d = delta_standard()
    lhat = d - chi(TWO_PI - delta6_integral(d))
    return lhat, d + lhat


# ---------------------------------------------------------------------------
# method 2

def method2_f(x: float) -> float:
    """f = 1/2 + x/4 + bb' - bb/x + (3/2) bb + (2/x) bb^2 with bb = beta~~."""
    if x == 0:
        return 0.5
    bb = beta_tilde_tilde(x)
    return 0.5 + x / 4 + beta_tilde_tilde_prime(x) - bb / x + 1.5 * bb + 2 * bb * bb / x


def method2_f_closed(x: float) -> float:
    """The same f written with cot; loses accuracy near 0."""
    ct = 1 / math.tan(x / 2)
    return 2 + x / 2 + 1 / x - 2 * ct - 0.75 * x * ct + 0.75 * x * ct * ct


def method2_radius(epsabs: float = 1e-10) -> float:
    """delta_2 = int_0^{2 pi} du / sqrt(1 + 2 int_0^u f)."""
    # cumulative F on a fixed grid; each outer evaluation adds one short quad
    nodes = np.linspace(0.0, TWO_PI, 257)
    cum = [0.0]
    for lo, hi in zip(nodes[:-2], nodes[1:-1]):  # F is infinite at 2 pi itself
        v, _ = integrate.quad(method2_f, lo, hi, epsabs=1e-13, epsrel=1e-13, limit=200)
        cum.append(cum[-1] + v)

    def F(u):
        i = min(int(u / nodes[1]), len(nodes) - 2)
        v, _ = integrate.quad(method2_f, nodes[i], u, epsabs=1e-13, epsrel=1e-13)
        return cum[i] + v

    val, _ = integrate.quad(lambda u: 1 / math.sqrt(1 + 2 * F(u)) if u < TWO_PI else 0.0,
                            0.0, TWO_PI, epsabs=epsabs, epsrel=1e-10, limit=200)
    return val


# ---------------------------------------------------------------------------
# H(p)

_GL_X, _GL_W = np.polynomial.legendre.leggauss(40)


def _sinc(z):
    return np.sinc(z / np.pi)


def hh(p: float, t):
    """Integrand HH(p, t) through its four entire factors."""
    t = np.asarray(t, dtype=float)
    s, c = np.sin(t), np.cos(t)
    q = (p / 2) * (_GL_X + 1)  # nodes on [0, p]
    w = (p / 2) * _GL_W
    qs = np.multiply.outer(s, q)
    qc = np.multiply.outer(c, q)
    F1 = (_sinc(qs) * q ** 2) @ w / p ** 3
    F4 = (_sinc(qs) * np.cosh(qc) * q) @ w / p ** 2
    F2 = 2 * (np.sinh(p * c / 2) ** 2 + np.sin(p * s / 2) ** 2) / p ** 2
    F3 = _sinc(p * s)
    return p * p * s * F1 * F2 / (F3 * F4)


def hh_direct(p: float, t: float) -> float:
    """HH(p, t) in its original closed form, for cross-checks away from t = 0, pi."""
    s, c = math.sin(t), math.cos(t)
    ps = p * s
    num = (math.sin(ps) - ps * math.cos(ps)) * (math.exp(p * c) + math.exp(-p * c) - 2 * math.cos(ps))
    den = math.sin(ps) * (2 * s + math.exp(p * c) * math.sin(-t + ps) - math.exp(-p * c) * math.sin(t + ps))
    return num / den


def _h_head(p: float) -> float:
    # p - 2 log(2 cosh(p/2) - (2/p) sinh(p/2)) = p - 2 log1p(S)
    z = p / 2
    if z < 1.0:
        S, term, n = 0.0, 1.0, 1
        while True:
            term *= z * z / ((2 * n) * (2 * n + 1))
            add = (4 * n + 1) * term
            S += add
            if add < 1e-18 * S:
                break
            n += 1
    else:
        S = 2 * math.cosh(z) - math.sinh(z) / z - 1
    return p - 2 * math.log1p(S)


def h_estimate(p: float, epsabs: float = 1e-14) -> float:
    """Upper bound H(p) for |log A| when the conformal range lies in exp D(0, p)."""
    if not 0 <= p < math.pi:
        raise DomainError("H(p) is defined for 0 <= p < pi")
    if p == 0:
        return 0.0
    f = lambda t: float(hh(p, t))
    half = math.pi / 2
    a, _ = integrate.quad(f, 0.0, half, epsabs=epsabs, epsrel=1e-13, limit=400)
    b, _ = integrate.quad(f, half, math.pi, epsabs=epsabs, epsrel=1e-13, limit=400)
    return _h_head(p) + a + b


def h_series(p: float) -> float:
    return p + p * p / 4 + 23 * p ** 4 / 864


def h_crude(p: float) -> float:
    return p * math.sqrt((math.pi + p) / (math.pi - p))


def h_pi() -> float:
    """Constant term of H at p = pi after removing 2 pi^2 / sqrt(pi^2 - p^2)."""
    gap = 1e-3

    def reg(t):
        c = math.cos(t)
        return float(hh(math.pi, t)) - 2 / (c * c)

    def g(t):
        # both terms blow up like 2/cos^2 at pi/2; the difference is smooth and
        # symmetric, so inside the gap use the value at the gap edge
        if abs(t - math.pi / 2) < gap:
            return reg(math.pi / 2 - gap)
        return reg(t)

    a, _ = integrate.quad(g, 0.0, math.pi / 2, epsabs=1e-9, limit=400)
    b, _ = integrate.quad(g, math.pi / 2, math.pi, epsabs=1e-9, limit=400)
    return _h_head(math.pi) + a + b


def magnus_term_bound(k: int, L: float) -> float:
    """pi^(1-k) * 2 sqrt(e k) * L^k."""
    if k < 1:
        raise DomainError("k >= 1")
    if not 0 <= L < math.pi:
        raise DomainError("the term bound needs 0 <= L < pi")
    return math.pi ** (1 - k) * 2 * math.sqrt(math.e * k) * L ** k


# ---------------------------------------------------------------------------
# named constants for the CLI and the reproduce table

def constant(name: str) -> Tuple[float, float]:
    """(value, estimated error) of a named constant."""
    if name == "delta":
        return delta_standard(), 1e-12
    if name == "c1":
        return c1(), 1e-9
    if name == "delta2":
        return method2_radius(), 1e-9
    if name == "method1-lower":
        return method1_lower_bound()[1], 1e-10
    if name == "h-pi":
        return h_pi(), 1e-4
    if name in BUILTIN_SYSTEMS:
        r = blowup_radius(BUILTIN_SYSTEMS[name]())
        return r.radius, r.est_error
    raise DomainError(f"unknown constant {name!r}")


CONSTANT_NAMES = ("delta", "c1", "delta2", "method1", "method1-lower", "method3", "method4", "method5", "h-pi")
