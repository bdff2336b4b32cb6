"""Geometry of real 2x2 matrices: norms, chiral disks, logarithms, Magnus exponent.

A matrix [[a, b], [c, d]] is written a*Id + b~*I~ + c~*J~ + d~*K~ with

    I~ = [[0, -1], [1, 0]]    J~ = diag(1, -1)    K~ = [[0, 1], [1, 0]]

The chiral disk CD(A) has center (a+d)/2 + i(c-b)/2 and radius
sqrt(((a-d)/2)^2 + ((b+c)/2)^2).  The principal disk PD(A) is its reflection
into the closed upper half plane.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .config import DEFAULTS
from .errors import DomainError

SERIES_RADIUS = 1e-4
LOGABLE_TOL = 1e-12
POINT_DISK = 1e-15
PARABOLIC_TOL = float(DEFAULTS["parabolic"])
MP_SAMPLES = 4096


@dataclass(frozen=True)
class Mat2:
    """Row-major real matrix [[a, b], [c, d]]."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"matrix entry {name} is not finite")
            object.__setattr__(self, name, v)

    @classmethod
    def from_array(cls, m) -> "Mat2":
        m = np.asarray(m, dtype=float)
        if m.shape != (2, 2):
            raise DomainError("expected a 2x2 array")
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def parse(cls, text: str) -> "Mat2":
        parts = [s for s in text.replace(";", ",").split(",") if s.strip()]
        if len(parts) != 4:
            raise DomainError("matrix must be given as a,b,c,d")
        return cls(*(float(s) for s in parts))

    def array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def tolist(self) -> List[List[float]]:
        return [[self.a, self.b], [self.c, self.d]]

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def __add__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, s: float) -> "Mat2":
        return Mat2(s * self.a, s * self.b, s * self.c, s * self.d)

    __rmul__ = __mul__

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inv(self) -> "Mat2":
        det = self.det
        if det == 0:
            raise DomainError("singular matrix")
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def dist(self, o: "Mat2") -> float:
        """Max-entry distance."""
        return max(abs(self.a - o.a), abs(self.b - o.b), abs(self.c - o.c), abs(self.d - o.d))

    def coordinates(self) -> Tuple[float, float, float, float]:
        """(a~, b~, c~, d~) with A = a~ Id + b~ I~ + c~ J~ + d~ K~."""
        return ((self.a + self.d) / 2, (self.c - self.b) / 2,
                (self.a - self.d) / 2, (self.b + self.c) / 2)


ID = Mat2(1, 0, 0, 1)
I_T = Mat2(0, -1, 1, 0)
J_T = Mat2(1, 0, 0, -1)
K_T = Mat2(0, 1, 1, 0)
P_T = Mat2(0, -1, 0, 0)


def from_coordinates(a: float, b: float, c: float, d: float) -> Mat2:
    return Mat2(a + c, d - b, b + d, a - c)


def rotation(alpha: float) -> Mat2:
    return Mat2(math.cos(alpha), -math.sin(alpha), math.sin(alpha), math.cos(alpha))


def symmetric_unit(beta: float) -> Mat2:
    """-sin(beta) J~ + cos(beta) K~, the unit elements of the symmetric traceless plane."""
    return J_T * (-math.sin(beta)) + K_T * math.cos(beta)


def symmetric_angle(F: Mat2) -> float:
    return math.atan2(-F.a, F.b) % (2 * math.pi)


# ---------------------------------------------------------------------------
# norms and disks

def norm2(A: Mat2) -> float:
    return (math.hypot(A.a + A.d, A.c - A.b) + math.hypot(A.a - A.d, A.b + A.c)) / 2


def conorm_signed(A: Mat2) -> float:
    return (math.hypot(A.a + A.d, A.c - A.b) - math.hypot(A.a - A.d, A.b + A.c)) / 2


@dataclass(frozen=True)
class Disk:
    center_re: float
    center_im: float
    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise DomainError("disk radius must be nonnegative")

    @property
    def center(self) -> complex:
        return complex(self.center_re, self.center_im)

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        return abs(z - self.center) <= self.radius + tol

    def contains_disk(self, other: "Disk", tol: float = 0.0) -> bool:
        return abs(other.center - self.center) + other.radius <= self.radius + tol

    def meets_negative_axis(self, tol: float = LOGABLE_TOL) -> bool:
        """Whether the closed disk meets (-inf, 0]."""
        y = abs(self.center_im)
        if y > self.radius + tol:
            return False
        half = math.sqrt(max(self.radius ** 2 - y * y, 0.0))
        return self.center_re - half <= tol

    def boundary(self, theta) -> np.ndarray:
        return self.center + self.radius * np.exp(1j * np.asarray(theta))

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.center_re, self.center_im, self.radius)


def chiral_disk(A: Mat2) -> Disk:
    return Disk((A.a + A.d) / 2, (A.c - A.b) / 2, math.hypot((A.a - A.d) / 2, (A.b + A.c) / 2))


def principal_disk(A: Mat2) -> Disk:
    cd = chiral_disk(A)
    return Disk(cd.center_re, abs(cd.center_im), cd.radius)


def matrix_from_disk(center: complex, radius: float, beta: float = 0.0) -> Mat2:
    """A matrix whose chiral disk is D(center, radius); beta rotates the symmetric part."""
    return ID * center.real + I_T * center.imag + symmetric_unit(beta) * radius


# ---------------------------------------------------------------------------
# AC, AS, AT

def _ac_series_coefficients(n: int) -> List[Fraction]:
    # AC(1 + u) = sum a_k u^k with a_k = -k/(2k+1) a_{k-1}
    out = [Fraction(1)]
    for k in range(1, n):
        out.append(-Fraction(k, 2 * k + 1) * out[-1])
    return out


def _series_mul(p: Sequence[Fraction], q: Sequence[Fraction], n: int) -> List[Fraction]:
    return [sum((p[i] * q[k - i] for i in range(k + 1) if i < len(p) and k - i < len(q)),
                Fraction(0)) for k in range(n)]


def _as_series_coefficients(n: int) -> List[float]:
    a = _ac_series_coefficients(n + 2)
    sq = _series_mul(a, a, n + 2)
    sq[0] -= 1
    num = [-c for c in sq[1:]]          # (AC^2 - 1) / (-u)
    g = []                              # num / (2 + u)
    for k in range(n + 1):
        prev = g[k - 1] if k else Fraction(0)
        g.append((num[k] - prev) / 2)
    # square root of g by the usual recurrence; g[0] = 1/3 so s[0] is irrational
    s0 = math.sqrt(float(g[0]))
    s = [s0]
    for k in range(1, n):
        acc = float(g[k]) - sum(s[i] * s[k - i] for i in range(1, k))
        s.append(acc / (2 * s0))
    return s


_AC_SERIES = [float(c) for c in _ac_series_coefficients(6)]
_AS_SERIES = _as_series_coefficients(6)


def _poly(coeffs: Sequence[float], u: float) -> float:
    out = 0.0
    for c in reversed(coeffs):
        out = out * u + c
    return out


def _check_ac_domain(x: float) -> None:
    if not x > -1:
        raise DomainError(f"AC is defined for x > -1, got {x!r}")


def ac(x: float) -> float:
    """arccos(x)/sqrt(1-x^2) for x < 1, 1 at x = 1, arcosh(x)/sqrt(x^2-1) for x > 1."""
    _check_ac_domain(x)
    u = x - 1
    if abs(u) < SERIES_RADIUS:
        return _poly(_AC_SERIES, u)
    if x < 1:
        return math.acos(x) / math.sqrt((1 - x) * (1 + x))
    return math.acosh(x) / math.sqrt((x - 1) * (x + 1))


def ac_prime(x: float) -> float:
    """Derivative of AC from the functional equation (x AC(x) - 1)/(1 - x^2)."""
    _check_ac_domain(x)
    u = x - 1
    if abs(u) < SERIES_RADIUS:
        return _poly([k * c for k, c in enumerate(_AC_SERIES)][1:], u)
    return (x * ac(x) - 1) / ((1 - x) * (1 + x))


def as_fn(x: float) -> float:
    """AS(x) = sqrt((AC(x)^2 - 1)/(1 - x^2))."""
    _check_ac_domain(x)
    u = x - 1
    if abs(u) < SERIES_RADIUS:
        return _poly(_AS_SERIES, u)
    return math.sqrt((ac(x) ** 2 - 1) / ((1 - x) * (1 + x)))


def at_fn(x: float) -> float:
    """AT(x) = (AC(x) - 1)/AS(x)."""
    _check_ac_domain(x)
    u = x - 1
    if abs(u) < SERIES_RADIUS:
        return _poly(_AC_SERIES[1:], u) * u / as_fn(x)
    return (ac(x) - 1) / as_fn(x)


# ---------------------------------------------------------------------------
# exp and log

def ccc(x: float) -> float:
    if abs(x) < SERIES_RADIUS:
        return 1 + x / 2 + x * x / 24 + x ** 3 / 720
    if x < 0:
        return math.cos(math.sqrt(-x))
    return math.cosh(math.sqrt(x))


def sss(x: float) -> float:
    if abs(x) < SERIES_RADIUS:
        return 1 + x / 6 + x * x / 120 + x ** 3 / 5040
    if x < 0:
        r = math.sqrt(-x)
        return math.sin(r) / r
    r = math.sqrt(x)
    return math.sinh(r) / r


def expm2(X: Mat2) -> Mat2:
    """exp(X) = e^(tr/2) (CCC(q) Id + SSS(q) B), B the traceless part, B^2 = q Id."""
    h = X.trace / 2
    B = X - ID * h
    q = -B.det
    return (ID * ccc(q) + B * sss(q)) * math.exp(h)


def logability(A: Mat2) -> Optional[str]:
    """None if A is log-able, otherwise the violated condition."""
    det = A.det
    if not det > 0:
        return "det A > 0"
    if not A.trace / (2 * math.sqrt(det)) > -1 + LOGABLE_TOL:
        return "tr A / (2 sqrt(det A)) > -1"
    return None


def is_logable(A: Mat2) -> bool:
    return logability(A) is None


def log2x2(A: Mat2) -> Mat2:
    """Principal logarithm of a real 2x2 matrix whose spectrum misses (-inf, 0]."""
    bad = logability(A)
    if bad is not None:
        raise DomainError(f"matrix is not log-able: violates {bad}")
    s = math.sqrt(A.det)
    x = A.trace / (2 * s)
    return ID * math.log(s) + (A - ID * (A.trace / 2)) * (ac(x) / s)


def log_norms_from_disk(a: float, b: float, r: float) -> Tuple[float, float]:
    """(norm, signed co-norm) of log A for any A with chiral disk D(a + ib, r)."""
    if r < 0:
        raise DomainError("radius must be nonnegative")
    if Disk(a, b, r).meets_negative_axis(tol=0.0):
        raise DomainError("disk meets (-inf, 0]")
    s = math.sqrt(a * a + b * b - r * r)
    q = ac(a / s) / s
    f_ca = math.hypot(math.log(s), b * q)
    f_rd = r * q
    return f_ca + f_rd, f_ca - f_rd


# ---------------------------------------------------------------------------
# developments

def W(p: float, w: float) -> Mat2:
    """Time-ordered exponential of the rotating frame a K~ at angular speed b, at (a, b) theta."""
    q = p * p - w * w
    return rotation(w) @ (ID * ccc(q) + (I_T * (-w) + K_T * p) * sss(q))


def E(p: float, w: float) -> Mat2:
    return rotation(p) @ (ID - I_T * w + K_T * w)


def gamma(p: float, t) -> np.ndarray:
    """Boundary curve of exp D(0, p)."""
    return np.exp(p * np.exp(1j * np.asarray(t)))


def maximal_disk(p: float, t: float) -> Disk:
    if not 0 < p < math.pi:
        raise DomainError("maximal disks need 0 < p < pi")
    if not -math.pi / 2 <= t <= math.pi / 2:
        raise DomainError("maximal disks need t in [-pi/2, pi/2]")
    return chiral_disk(W(p, p * math.sin(t)))


def maximal_disk_radius(p: float, t: float) -> float:
    c = math.cos(t)
    return p if abs(c) < 1e-300 else math.sinh(p * c) / c


def tangency_residual(p: float, t: float) -> float:
    """Distance and normal-direction defect of the maximal disk at gamma_p(t)."""
    D = maximal_disk(p, t)
    g = complex(gamma(p, t))
    v = g - D.center
    dist = abs(abs(v) - D.radius)
    if D.radius == 0:
        return dist
    normal = g * cmath.exp(1j * t)
    align = abs((v * normal.conjugate()).imag) / (abs(v) * abs(normal))
    return max(dist, align)


# ---------------------------------------------------------------------------
# Magnus exponent

def _log_modulus(z: np.ndarray, arg0: Optional[float], center: complex) -> np.ndarray:
    if arg0 is None:
        arg = np.angle(z)
    else:
        arg = arg0 + np.angle(z / center)
    return np.hypot(np.log(np.abs(z)), arg)


def _sup_on_boundary(disk: Disk, arg0: Optional[float] = None,
                     samples: int = MP_SAMPLES) -> Tuple[float, float]:
    """(max |log z|, argmax angle) over the boundary circle."""
    c = disk.center
    if disk.radius < POINT_DISK:
        return float(_log_modulus(np.array([c]), arg0, c)[0]), 0.0
    theta = np.linspace(0, 2 * math.pi, samples, endpoint=False)
    vals = _log_modulus(disk.boundary(theta), arg0, c)
    step = 2 * math.pi / samples
    peaks = np.flatnonzero((vals >= np.roll(vals, 1)) & (vals >= np.roll(vals, -1)))
    peaks = peaks[np.argsort(vals[peaks])[::-1][:2]]
    best = (float(vals.max()), float(theta[int(vals.argmax())]))

    def f(th):
        return -float(_log_modulus(disk.boundary(np.array([th])), arg0, c)[0])

    for i in peaks:
        res = minimize_scalar(f, bounds=(theta[i] - step, theta[i] + step), method="bounded",
                              options={"xatol": 1e-13})
        if -res.fun > best[0]:
            best = (-float(res.fun), float(res.x))
    return best


def _mp_search(A: Mat2, lift: bool = False) -> Tuple[float, float, Disk]:
    disk = chiral_disk(A)
    if not lift:
        if disk.meets_negative_axis():
            raise DomainError("chiral disk meets (-inf, 0]; out of scope (try lift=True)")
        val, th = _sup_on_boundary(disk)
        if val >= math.pi:
            raise DomainError("chiral disk is not inside exp D(0, pi)")
        return val, th, disk
    if abs(disk.center) <= disk.radius + LOGABLE_TOL:
        raise DomainError("chiral disk contains 0")
    base = cmath.phase(disk.center)
    best = None
    for k in (-1, 0, 1):
        val, th = _sup_on_boundary(disk, base + 2 * math.pi * k)
        if best is None or val < best[0]:
            best = (val, th)
    return best[0], best[1], disk


def magnus_exponent(A: Mat2, lift: bool = False) -> float:
    """sup |log z| over CD(A).

    With ``lift`` the logarithm is continued over the disk from the principal
    argument of its center (universal-cover lift), so disks crossing the
    negative axis but avoiding 0 are accepted; the minimum over the three
    lifts nearest the principal one is returned.
    """
    return _mp_search(A, lift)[0]


# ---------------------------------------------------------------------------
# classification

CLASSES = ("identity", "quasicomplex", "elliptic", "parabolic", "hyperbolic", "loxodromic")


def classify_margin(A: Mat2) -> float:
    """2 arctan((r+|b|)/(a+1)) - r for the chiral disk D(a+ib, r)."""
    D = chiral_disk(A)
    return 2 * math.atan2(D.radius + abs(D.center_im), D.center_re + 1) - D.radius


def classify(A: Mat2) -> str:
    if A.dist(ID) < 1e-12:
        return "identity"
    _mp_search(A)
    if chiral_disk(A).radius < 1e-12:
        return "quasicomplex"
    if abs(A.det - 1) > 1e-9:
        return "loxodromic"
    m = classify_margin(A)
    if abs(m) <= PARABOLIC_TOL:
        return "parabolic"
    return "elliptic" if m > 0 else "hyperbolic"


# ---------------------------------------------------------------------------
# normal forms

@dataclass(frozen=True)
class NormalForm:
    p1: float
    p2: float
    t: float
    beta: float = 0.0
    f_used: bool = True

    def __post_init__(self):
        if self.p1 < 0 or self.p2 < 0:
            raise DomainError("normal form needs p1, p2 >= 0")
        if not self.p1 + self.p2 < math.pi:
            raise DomainError("normal form needs p1 + p2 < pi")
        object.__setattr__(self, "t", self.t % (2 * math.pi))

    @property
    def p(self) -> float:
        return self.p1 + self.p2

    @property
    def F(self) -> Mat2:
        return symmetric_unit(self.beta)


def _sinhc(x: float, c: float) -> float:
    # sinh(x c)/c, continuous at c = 0
    if abs(x * c) < 1e-8:
        return x * (1 + (x * c) ** 2 / 6)
    return math.sinh(x * c) / c


def nw_build(nf: NormalForm) -> Mat2:
    c, s = math.cos(nf.t), math.sin(nf.t)
    sh = _sinhc(nf.p2, c)
    inner = ID * math.cosh(nf.p2 * c) - I_T * (sh * s)
    return (rotation(nf.p * s) @ inner + nf.F * sh) * math.exp(nf.p1 * c)


def _refine_t(p: float, center: complex, t0: float) -> float:
    # stationary point of |gamma_p(t) - center|^2 near t0
    def h(t):
        g = cmath.exp(p * cmath.exp(1j * t))
        return ((g - center) * (g * 1j * p * cmath.exp(1j * t)).conjugate()).real

    for d in (1e-7, 1e-5, 1e-3, 1e-2):
        lo, hi = h(t0 - d), h(t0 + d)
        if lo == 0:
            return t0 - d
        if lo * hi < 0:
            return brentq(h, t0 - d, t0 + d, xtol=1e-15)
    return t0


def normal_form(A: Mat2) -> NormalForm:
    if A.dist(ID) < 1e-14:
        raise DomainError("the identity has no normal form")
    p, th, disk = _mp_search(A)
    if disk.radius < POINT_DISK:
        z = cmath.log(disk.center)
        return NormalForm(p, 0.0, cmath.phase(z), 0.0, f_used=False)
    z = complex(disk.boundary(th))
    t = _refine_t(p, disk.center, cmath.phase(cmath.log(z)))
    c = math.cos(t)
    r = disk.radius
    if abs(c) < 1e-12:
        p2 = r
    else:
        p2 = -math.log1p(-2 * r * c * math.exp(-p * c)) / (2 * c)
    p2 = min(max(p2, 0.0), p)
    p1 = p - p2
    s = math.sin(t)
    inner = ID * math.cosh(p2 * c) - I_T * (_sinhc(p2, c) * s)
    resid = A * math.exp(-p1 * c) - rotation(p * s) @ inner
    beta = symmetric_angle(resid)
    return NormalForm(p1, p2, t, beta)


# ---------------------------------------------------------------------------
# example families

SQRT2_PI32 = math.sqrt(2) * math.pi ** 1.5


def critical_coefficient(n: int) -> Fraction:
    """(2m)!/(4^m m!^2) with m = floor(n/2); the norm of the n-th term is pi times this."""
    if n < 1:
        raise DomainError("term index must be positive")
    if n == 1:
        return Fraction(0)
    m = n // 2
    return Fraction(math.comb(2 * m, m), 4 ** m)


def critical_series_coefficients(N: int) -> List[Fraction]:
    """Taylor coefficients of 1/sqrt(1-s) - 1 in s = t^2, up to s^N, by the sqrt recurrence."""
    # y = (1-s)^(-1/2) satisfies 2(1-s) y' = y
    y = [Fraction(1)]
    for k in range(1, N + 1):
        y.append(y[-1] * Fraction(2 * k - 1, 2 * k))
    y[0] = Fraction(0)
    return y


def critical_norm(p: float) -> float:
    t = p / math.pi
    return math.pi * (1 / math.sqrt((1 - t) * (1 + t)) - 1) * (1 + t)


def parabolic_norm(p: float) -> float:
    return ac(math.cos(p) + p * math.sin(p)) * (math.sin(p) - p * math.cos(p) + p)


def hyperbolic_norm(p: float, sin_t: Optional[float] = None) -> float:
    s = p / math.pi if sin_t is None else sin_t
    c = math.sqrt((1 - s) * (1 + s))
    sh = _sinhc(p, c)
    ch = math.cosh(p * c)
    x = ch * math.cos(p * s) + sh * math.sin(p * s) * s
    return ac(x) * (abs(ch * math.sin(p * s) - sh * math.cos(p * s) * s) + sh)


def skew_loxodromic_norm(alpha: float, beta: float) -> float:
    return ac(math.cosh(alpha) * math.cos(beta)) * (math.sinh(alpha) + math.cosh(alpha) * math.sin(beta))


def skew_elliptic_norm(alpha: float, beta: float) -> float:
    return ac(math.cos(beta) - alpha / 2 * math.sin(beta)) * (
        math.sin(beta) + alpha / 2 * math.cos(beta) + alpha / 2)


def skew_loxodromic_tilde(p: float) -> Tuple[float, float]:
    q = (math.pi ** 2 * (math.pi - p)) ** (1 / 3)
    return p - math.pi + q, math.pi - q


def skew_loxodromic_ridge(x: float) -> Tuple[float, float]:
    A, S = ac(x), as_fn(x)
    k = 1 - x * S
    root = math.sqrt(A * A - 4 * x * k * S)
    return math.acosh((A + root) / (2 * k)), math.acos((A - root) / (2 * S))


def skew_elliptic_ridge(x: float) -> Tuple[float, float]:
    T = at_fn(x)
    y = x + T
    return 2 * T / math.sqrt((1 - y) * (1 + y)), math.acos(y)


@dataclass
class AsymptoticFit:
    name: str
    path: str
    exponent: float
    coefficient: float
    expected_exponent: float
    expected_coefficient: Optional[float]
    rows: List[Tuple[float, float, float]] = field(default_factory=list)

    def as_dict(self) -> Dict[str, object]:
        return {"name": self.name, "path": self.path, "exponent": self.exponent,
                "coefficient": self.coefficient, "expected_exponent": self.expected_exponent,
                "expected_coefficient": self.expected_coefficient,
                "rows": [list(r) for r in self.rows]}


def _fit(name: str, path: str, eps: np.ndarray, vals: np.ndarray, expected_exp: float,
         expected_coef: Optional[float], params: np.ndarray) -> AsymptoticFit:
    slope, intercept = np.polyfit(np.log(eps), np.log(vals), 1)
    gamma_fit = -slope
    coef = float(math.exp(intercept))
    rows = [(float(q), float(v), float(v * e ** gamma_fit)) for q, v, e in zip(params, vals, eps)]
    return AsymptoticFit(name, path, float(-gamma_fit), coef, expected_exp, expected_coef, rows)


EXAMPLES = ("skew-loxodromic", "skew-elliptic", "critical", "parabolic", "hyperbolic")


def example_asymptotics(name: str, points: int = 25) -> List[AsymptoticFit]:
    """Fit c (pi - p)^(-gamma) to the closed-form log norms of an example family.

    Rows are (parameter, exact value, value * (pi - p)^gamma_fit).  Exponents
    are reported with their sign, e.g. -1/3.
    """
    if name not in EXAMPLES:
        raise DomainError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    fits = []
    if name in ("critical", "parabolic", "hyperbolic"):
        fn = {"critical": critical_norm, "parabolic": parabolic_norm, "hyperbolic": hyperbolic_norm}[name]
        eps = np.logspace(-10, -8, points)
        p = math.pi - eps
        vals = np.array([fn(float(q)) for q in p])
        fits.append(_fit(name, "p", eps, vals, -0.5, SQRT2_PI32, p))
    elif name == "skew-loxodromic":
        eps = np.logspace(-8, -6, points)
        p = math.pi - eps
        vals = np.array([skew_loxodromic_norm(*skew_loxodromic_tilde(float(q))) for q in p])
        fits.append(_fit(name, "tilde", eps, vals, -1 / 3, math.sqrt(12 * math.pi ** (8 / 3) / (math.pi ** 2 + 6)), p))
        fits.append(_ridge_fit(name, skew_loxodromic_ridge, skew_loxodromic_norm,
                               2 * math.pi * 3 ** (-1 / 3), points))
    else:
        fits.append(_ridge_fit(name, skew_elliptic_ridge, skew_elliptic_norm, None, points))
    return fits


def _ridge_fit(name, ridge, norm, expected, points) -> AsymptoticFit:
    xs = -1 + np.logspace(-9, -7, points)
    ab = [ridge(float(x)) for x in xs]
    eps = np.array([math.pi - a - b for a, b in ab])
    vals = np.array([norm(a, b) for a, b in ab])
    return _fit(name, "ridge", eps, vals, -1 / 3, expected, xs)
