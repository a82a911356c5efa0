"""Einstein conditions, the obstruction integral, and the metric profile.

For a segment with endpoints Z1 = m1*Z + Z_kappa and Z2 = -m2*Z + Z_kappa the
whole Einstein problem reduces to the polynomial

    P(v) = prod over alpha in R_m+ of alpha(Z1 - v*Z),   v in [0, m1+m2],

its antiderivative data, and the scalar obstruction

    I = integral_{-m1}^{m2} y * prod alpha(Z_kappa - y*Z) dy,

which is the same integral as integral_0^{m1+m2} P(v)(v - m1) dv after the
shift y = v - m1.  When I vanishes and the segment is admissible, the profile
f(t) is recovered from the first integral

    u(f) = (f')^2 = -2 * [integral_0^f P(v)(v - m1) dv] / P(f),

inverted through the quadrature t(f) = integral_0^f ds / sqrt(u(s)).  The
inverse-square-root behaviour of the integrand at both ends is removed
analytically by the substitutions s = w^2 and (m1+m2) - s = w^2 applied to the
exactly deflated polynomials, so all numeric integrands here are smooth.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import brentq

from . import linalg
from .errors import DegreeMismatchError, InputError, NoKahlerEinsteinError, SingularConfigurationError
from .flag import FlagData, InvariantComplexStructure, ricci_invariant
from .model import AdmissibleSegment, CenterLine, analyze_segment, make_base
from .polys import (
    Poly,
    p_add,
    p_antideriv,
    p_compose_linear,
    p_deriv,
    p_eval,
    p_eval_float,
    p_low_order,
    p_mul,
    p_scale,
    p_to_float,
    p_trim,
)
from .rootsys import CartanVector, Root, evaluate, killing
from .scalars import Scalar, is_exact, scalar_is_zero

FUTAKI_FLOAT_TOL = 1e-10


# ---------------------------------------------------------------------------
# endpoints and the obstruction integral


def ke_endpoints(zk: CartanVector, z: CartanVector, m1: int, m2: int) -> Tuple[CartanVector, CartanVector]:
    """Endpoints forced by the Einstein condition: Z1 = m1*Z + Zk, Z2 = -m2*Z + Zk."""
    if m1 < 1 or m2 < 1:
        raise InputError("degrees must be >= 1")
    return zk + z.scale(m1), zk + z.scale(-m2)


@dataclass(frozen=True)
class FutakiReport:
    value: Scalar
    vanishes: bool
    exact: bool
    tol: float
    error_bound: Optional[float] = None


def futaki(
    flag: FlagData,
    j: InvariantComplexStructure,
    z: CartanVector,
    m1: int,
    m2: int,
    tol: float = FUTAKI_FLOAT_TOL,
) -> FutakiReport:
    """The obstruction integral over [-m1, m2], exact on exact inputs.

    The integrand y * prod alpha(Z_kappa - y z) is expanded term by term and
    integrated as a polynomial; on the float path a crude roundoff bound
    accompanies the value.
    """
    if m1 < 1 or m2 < 1:
        raise InputError("degrees must be >= 1")
    zk = ricci_invariant(flag, j)
    poly: Poly = [Fraction(1)]
    for alpha in j.positive:
        poly = p_mul(poly, [evaluate(alpha, zk), -evaluate(alpha, z)])
    poly = [Fraction(0)] + list(poly)  # multiply by y
    exact = all(is_exact(c) for c in poly)
    lo, hi = -Fraction(m1), Fraction(m2)
    if exact:
        value = _poly_integral(poly, lo, hi)
        return FutakiReport(value=value, vanishes=scalar_is_zero(value), exact=True, tol=0.0)
    val = 0.0
    bound = 0.0
    big = float(max(m1, m2))
    for k, c in enumerate(poly):
        c = float(c)
        term = c * (float(hi) ** (k + 1) - float(lo) ** (k + 1)) / (k + 1)
        val += term
        bound += abs(c) * big ** (k + 1) * 2.0 / (k + 1)
    bound *= len(poly) * np.finfo(float).eps * 8
    return FutakiReport(value=val, vanishes=abs(val) <= max(tol, bound), exact=False, tol=tol, error_bound=bound)


def _poly_integral(poly: Sequence[Scalar], lo: Scalar, hi: Scalar) -> Scalar:
    out: Scalar = Fraction(0)
    for k, c in enumerate(poly):
        if scalar_is_zero(c):
            continue
        out = out + c * (hi ** (k + 1) - lo ** (k + 1)) / (k + 1)
    return out


def futaki_shifted(base: CenterLine, m1: int, m2: int) -> Scalar:
    """integral_0^{m1+m2} P(v)(v - m1) dv computed from the segment polynomial.

    Equal to the obstruction integral after y = v - m1; kept as a separate
    computation path so the change of variables can be asserted exactly.
    """
    sp = SegmentPolynomial.from_base(base, m1, m2, validate_degrees=False)
    return p_eval(sp.q_coeffs, Fraction(m1 + m2))


# ---------------------------------------------------------------------------
# the segment polynomial


@dataclass(frozen=True)
class RootFactor:
    root: Root
    a: Scalar  # alpha(Z1)
    k: Scalar  # alpha(Z)
    zk: Scalar  # alpha(Z_kappa)


class SegmentPolynomial:
    """P(v) = prod alpha(Z1 - v Z) with exact derivatives and deflations.

    Attributes ending in ``_f`` are float coefficient arrays for numerics;
    everything else is exact when the inputs are exact.  Instances are
    immutable after construction.
    """

    def __init__(self, factors: Sequence[RootFactor], m1: int, m2: int, validate_degrees: bool = True):
        self.factors = tuple(factors)
        self.m1, self.m2 = int(m1), int(m2)
        self.f_delta = Fraction(m1 + m2)
        self.exact = all(is_exact(f.a) and is_exact(f.k) for f in self.factors)

        n_wall1 = sum(1 for f in self.factors if scalar_is_zero(f.a, 1e-12))
        n_wall2 = sum(1 for f in self.factors if scalar_is_zero(f.a - f.k * self.f_delta, 1e-12))
        if validate_degrees and (n_wall1 != m1 - 1 or n_wall2 != m2 - 1):
            raise DegreeMismatchError(
                "wall order (%d, %d) disagrees with declared degrees (%d, %d)"
                % (n_wall1 + 1, n_wall2 + 1, m1, m2),
                details={
                    "computed": (n_wall1 + 1, n_wall2 + 1),
                    "declared": (m1, m2),
                    "walls_at_z1": [f.root.coords for f in self.factors if scalar_is_zero(f.a, 1e-12)],
                    "walls_at_z2": [
                        f.root.coords for f in self.factors if scalar_is_zero(f.a - f.k * self.f_delta, 1e-12)
                    ],
                },
            )

        poly: Poly = [Fraction(1)]
        for f in self.factors:
            poly = p_mul(poly, [f.a, -f.k])
        self.coeffs = p_trim(poly)
        self.d_coeffs = p_deriv(self.coeffs)
        self.d2_coeffs = p_deriv(self.d_coeffs)
        # Q(f) = integral_0^f P(v)(v - m1) dv; zero of order m1 at 0
        self.q_coeffs = p_antideriv(p_mul(self.coeffs, [-Fraction(m1), Fraction(1)]))

        self.coeffs_f = p_to_float(self.coeffs)
        self.q_coeffs_f = p_to_float(self.q_coeffs)
        self.a_f = np.array([float(f.a) for f in self.factors])
        self.k_f = np.array([float(f.k) for f in self.factors])
        self.zk_f = np.array([float(f.zk) for f in self.factors])
        self._deflations: Optional[tuple] = None

    @property
    def deflations(self) -> tuple:
        """(p_left, q_left, p_right, q_right) and float twins, built on demand.

        The right-end deflation certifies the vanishing of the obstruction
        integral, so non-Einstein segment polynomials stay constructible and
        only the profile machinery trips this check.
        """
        if self._deflations is None:
            pl, ql = self._deflate_left()
            pr, qr = self._deflate_right()
            self._deflations = (
                pl, ql, pr, qr,
                p_to_float(pl), p_to_float(ql), p_to_float(pr), p_to_float(qr),
                p_to_float(p_deriv(pl)), p_to_float(p_deriv(pr)),
            )
        return self._deflations

    @property
    def p_left(self) -> Poly:
        return self.deflations[0]

    @property
    def q_left(self) -> Poly:
        return self.deflations[1]

    @property
    def p_right(self) -> Poly:
        return self.deflations[2]

    @property
    def q_right(self) -> Poly:
        return self.deflations[3]

    @property
    def p_left_f(self) -> np.ndarray:
        return self.deflations[4]

    @property
    def q_left_f(self) -> np.ndarray:
        return self.deflations[5]

    @property
    def p_right_f(self) -> np.ndarray:
        return self.deflations[6]

    @property
    def q_right_f(self) -> np.ndarray:
        return self.deflations[7]

    @property
    def dp_left_f(self) -> np.ndarray:
        return self.deflations[8]

    @property
    def dp_right_f(self) -> np.ndarray:
        return self.deflations[9]

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_base(base: CenterLine, m1: int, m2: int, validate_degrees: bool = True) -> "SegmentPolynomial":
        zk = ricci_invariant(base.flag, base.j)
        z1, _ = ke_endpoints(zk, base.z, m1, m2)
        factors = [
            RootFactor(root=a, a=evaluate(a, z1), k=evaluate(a, base.z), zk=evaluate(a, zk))
            for a in base.j.positive
        ]
        return SegmentPolynomial(factors, m1, m2, validate_degrees=validate_degrees)

    # -- deflations ----------------------------------------------------------

    def _deflate_left(self) -> Tuple[Poly, Poly]:
        lp = p_low_order(self.coeffs) if self.exact else _float_low_order(self.coeffs, self.m1 - 1)
        if lp != self.m1 - 1:
            raise DegreeMismatchError("P vanishes to order %d at 0, expected %d" % (lp, self.m1 - 1))
        lq = p_low_order(self.q_coeffs) if self.exact else _float_low_order(self.q_coeffs, self.m1)
        if lq < self.m1:
            raise DegreeMismatchError("Q vanishes to order %d at 0, expected %d" % (lq, self.m1))
        return list(self.coeffs[self.m1 - 1:]), list(self.q_coeffs[self.m1:])

    def _deflate_right(self) -> Tuple[Poly, Poly]:
        # compose with v = f_delta - x; valid profiles need Q(f_delta) = 0
        pr = p_compose_linear(self.coeffs, self.f_delta, Fraction(-1))
        qr = p_compose_linear(self.q_coeffs, self.f_delta, Fraction(-1))
        lo = p_low_order(pr) if self.exact else _float_low_order(pr, self.m2 - 1)
        if lo != self.m2 - 1:
            raise DegreeMismatchError("P vanishes to order %d at the right end, expected %d" % (lo, self.m2 - 1))
        if self.exact:
            lq = p_low_order(qr)
        else:
            qr = list(qr)
            scale = max(abs(float(c)) for c in qr) or 1.0
            for i in range(self.m2):
                if abs(float(qr[i])) <= 1e-9 * scale:
                    qr[i] = Fraction(0)
            lq = p_low_order(qr)
        if lq < self.m2:
            raise NoKahlerEinsteinError(
                "obstruction integral does not vanish: Q(m1+m2) = %s" % (p_eval(self.q_coeffs, self.f_delta),)
            )
        return list(pr[self.m2 - 1:]), list(qr[self.m2:])

    # -- pointwise data ------------------------------------------------------

    def p_eval(self, v: Scalar) -> Scalar:
        return p_eval(self.coeffs, v)

    def u_exact(self, f: Scalar) -> Scalar:
        num = p_eval(self.q_coeffs, f)
        den = p_eval(self.coeffs, f)
        if scalar_is_zero(den):
            raise SingularConfigurationError("P vanishes at f = %s" % (f,))
        return -2 * num / den

    def u_float(self, f: float) -> float:
        """u(f) evaluated through the endpoint-deflated forms, stable at walls.

        Segment polynomials without a valid profile (nonvanishing obstruction
        or mismatched walls) have no deflations; they fall back to the direct
        ratio, valid on the open interval away from walls.
        """
        f = float(f)
        fd = float(self.f_delta)
        try:
            if f <= fd / 2:
                den = p_eval_float(self.p_left_f, f)
                if den == 0:
                    raise SingularConfigurationError("P vanishes at f = %g" % f)
                return f * (-2.0) * p_eval_float(self.q_left_f, f) / den
            x = fd - f
            den = p_eval_float(self.p_right_f, x)
            if den == 0:
                raise SingularConfigurationError("P vanishes at f = %g" % f)
            return x * (-2.0) * p_eval_float(self.q_right_f, x) / den
        except (NoKahlerEinsteinError, DegreeMismatchError):
            den = p_eval_float(self.coeffs_f, f)
            if den == 0:
                raise SingularConfigurationError("P vanishes at f = %g" % f)
            return -2.0 * p_eval_float(self.q_coeffs_f, f) / den

    def log_deriv_sums(self, f: float) -> Tuple[float, float]:
        """(s1, s2) with s1 = sum k/(a - k f), s2 = sum k^2/(a - k f)^2.

        These are -P'/P and (P'/P)^2 - P''/P, summed per positive root; the
        doubled real basis carries each root twice, which cancels everywhere
        these sums are used.
        """
        g = self.a_f - self.k_f * f
        if np.any(g == 0):
            raise SingularConfigurationError("metric eigenvalue vanishes at f = %g" % f)
        s1 = float(np.sum(self.k_f / g))
        s2 = float(np.sum((self.k_f / g) ** 2))
        return s1, s2

    def fpp_float(self, f: float) -> float:
        """f'' from the closed form u*F - f + m1, stable at both endpoints."""
        f = float(f)
        fd = float(self.f_delta)
        if f <= fd / 2:
            pt = p_eval_float(self.p_left_f, f)
            qt = p_eval_float(self.q_left_f, f)
            dpt = p_eval_float(self.dp_left_f, f) if len(self.p_left) > 1 else 0.0
            uf_term = qt * ((self.m1 - 1) * pt + f * dpt) / (pt * pt)
        else:
            x = fd - f
            pt = p_eval_float(self.p_right_f, x)
            qt = p_eval_float(self.q_right_f, x)
            dpt = p_eval_float(self.dp_right_f, x) if len(self.p_right) > 1 else 0.0
            uf_term = -qt * ((self.m2 - 1) * pt + x * dpt) / (pt * pt)
        return uf_term - f + self.m1

    def series_u(self, side: str) -> Tuple[float, float, float]:
        """Taylor data (u1, u2, u3) of u at an end: u = u1 x + u2 x^2 + u3 x^3."""
        p, q = (self.p_left, self.q_left) if side == "left" else (self.p_right, self.q_right)
        p0 = float(p[0])
        p1 = float(p[1]) if len(p) > 1 else 0.0
        p2 = float(p[2]) if len(p) > 2 else 0.0
        q0 = float(q[0])
        q1 = float(q[1]) if len(q) > 1 else 0.0
        q2 = float(q[2]) if len(q) > 2 else 0.0
        # g = -2 q / p expanded to second order
        g0 = -2 * q0 / p0
        g1 = -2 * (q1 - q0 * p1 / p0) / p0
        g2 = -2 * (q2 - q1 * p1 / p0 + q0 * ((p1 / p0) ** 2 - p2 / p0)) / p0
        return g0, g1, g2


def _float_low_order(coeffs: Sequence[Scalar], expected: int, rel_tol: float = 1e-9) -> int:
    scale = max(abs(float(c)) for c in coeffs) or 1.0
    for k, c in enumerate(coeffs):
        if abs(float(c)) > rel_tol * scale:
            return k
    return len(coeffs)


def build_segment_polynomial(base: CenterLine, m1: int, m2: int) -> SegmentPolynomial:
    """Segment polynomial for the Einstein endpoints, with degree validation."""
    return SegmentPolynomial.from_base(base, m1, m2, validate_degrees=True)


def u_eval(sp: SegmentPolynomial, f: Scalar) -> Scalar:
    """u(f) = -2 [int_0^f P(v)(v-m1) dv] / P(f); exact on exact inputs."""
    if isinstance(f, float):
        return sp.u_float(f)
    return sp.u_exact(f)


def first_integral_identity_numerator(sp: SegmentPolynomial) -> Poly:
    """Numerator polynomial of (1/2)u' - u*F + H over a common denominator.

    With u = A/B, A = -2Q, B = P, F = -P'/(2P) and H = f - m1, the unreduced
    numerator over 2 B^2 (2P) is N = (A'B - A B')(2P) - 4 A C B/2 ... computed
    below by cross-multiplication.  For a genuine first integral N is the zero
    polynomial, exactly.
    """
    A = p_scale(sp.q_coeffs, Fraction(-2))
    B = list(sp.coeffs)
    C = p_scale(sp.d_coeffs, Fraction(-1))
    D = p_scale(B, Fraction(2))
    H: Poly = [-Fraction(sp.m1), Fraction(1)]
    Ap = p_deriv(A)
    Bp = p_deriv(B)
    # (1/2) (A'B - AB')/B^2 - AC/(BD) + H  over the denominator 2 B^2 D
    term1 = p_mul(p_add(p_mul(Ap, B), p_scale(p_mul(A, Bp), Fraction(-1))), D)
    term2 = p_scale(p_mul(p_mul(A, C), B), Fraction(-2))
    term3 = p_scale(p_mul(H, p_mul(p_mul(B, B), D)), Fraction(2))
    return p_trim(p_add(p_add(term1, term2), term3))


# ---------------------------------------------------------------------------
# the profile map t <-> f


class ProfileMap:
    """Invertible map between arclength t and the profile value f.

    Built once per segment polynomial: composite Gauss-Legendre tables in the
    square-root variables w = sqrt(f) (left) and w = sqrt(m1+m2-f) (right),
    where the integrand of t(f) is smooth.
    """

    def __init__(self, sp: SegmentPolynomial, n_panels: int = 192, gauss_order: int = 16):
        self.sp = sp
        self.fd = float(sp.f_delta)
        self.fm = self.fd / 2.0
        gx, gw = np.polynomial.legendre.leggauss(gauss_order)
        self._gx, self._gw = gx, gw

        self._wl_max = math.sqrt(self.fm)
        self._wr_max = math.sqrt(self.fd - self.fm)
        self._edges_l = np.linspace(0.0, self._wl_max, n_panels + 1)
        self._edges_r = np.linspace(0.0, self._wr_max, n_panels + 1)
        self._cum_l = self._cumulative(self._integrand_left, self._edges_l)
        self._cum_r = self._cumulative(self._integrand_right, self._edges_r)
        self.delta = float(self._cum_l[-1] + self._cum_r[-1])

    # integrands 2/sqrt(ratio(w^2)); both tend to sqrt(2) at the ends
    def _integrand_left(self, w):
        W = np.asarray(w, dtype=float) ** 2
        ratio = -2.0 * p_eval_float(self.sp.q_left_f, W) / p_eval_float(self.sp.p_left_f, W)
        if np.any(ratio <= 0):
            raise NoKahlerEinsteinError("first integral not positive on the open segment")
        return 2.0 / np.sqrt(ratio)

    def _integrand_right(self, w):
        W = np.asarray(w, dtype=float) ** 2
        ratio = -2.0 * p_eval_float(self.sp.q_right_f, W) / p_eval_float(self.sp.p_right_f, W)
        if np.any(ratio <= 0):
            raise NoKahlerEinsteinError("first integral not positive on the open segment")
        return 2.0 / np.sqrt(ratio)

    def _cumulative(self, g: Callable, edges: np.ndarray) -> np.ndarray:
        mid = (edges[1:] + edges[:-1]) / 2
        half = (edges[1:] - edges[:-1]) / 2
        nodes = mid[:, None] + half[:, None] * self._gx[None, :]
        vals = g(nodes.ravel()).reshape(nodes.shape)
        panels = (vals * self._gw[None, :]).sum(axis=1) * half
        return np.concatenate([[0.0], np.cumsum(panels)])

    def _partial(self, g: Callable, a: float, b: float) -> float:
        if b <= a:
            return 0.0
        mid, half = (a + b) / 2, (b - a) / 2
        return float(np.dot(g(mid + half * self._gx), self._gw) * half)

    def _side_value(self, g, edges, cum, w: float) -> float:
        i = int(np.searchsorted(edges, w, side="right")) - 1
        i = max(0, min(i, len(edges) - 2))
        return float(cum[i] + self._partial(g, edges[i], min(w, edges[-1])))

    def t_of_f(self, f: float) -> float:
        """t(f) = integral_0^f ds/sqrt(u(s)), via the smooth substitutions."""
        f = float(f)
        if f <= 0:
            return 0.0
        if f >= self.fd:
            return self.delta
        if f <= self.fm:
            return self._side_value(self._integrand_left, self._edges_l, self._cum_l, math.sqrt(f))
        return self.delta - self._side_value(
            self._integrand_right, self._edges_r, self._cum_r, math.sqrt(self.fd - f)
        )

    def f_of_t(self, t: float) -> float:
        t = float(t)
        if t <= 0:
            return 0.0
        if t >= self.delta:
            return self.fd
        left_total = float(self._cum_l[-1])
        if t <= left_total:
            edges, cum, g = self._edges_l, self._cum_l, self._integrand_left
            target = t
        else:
            edges, cum, g = self._edges_r, self._cum_r, self._integrand_right
            target = self.delta - t
        i = int(np.searchsorted(cum, target, side="right")) - 1
        i = max(0, min(i, len(edges) - 2))
        lo, hi = float(edges[i]), float(edges[i + 1])

        def h(w: float) -> float:
            return cum[i] + self._partial(g, lo, w) - target

        if h(hi) < 0:  # guard against cumulative rounding at panel edges
            hi = float(edges[-1])
        w = brentq(h, lo, hi, xtol=1e-15, rtol=8.9e-16)
        f = w * w
        return f if t <= left_total else self.fd - f

    def quad_error_estimate(self) -> float:
        """Compare the table totals against adaptive quadrature."""
        il, el = quad(lambda w: float(self._integrand_left(w)), 0.0, self._wl_max,
                      epsabs=1e-12, epsrel=1e-12, full_output=False)[:2]
        ir, er = quad(lambda w: float(self._integrand_right(w)), 0.0, self._wr_max,
                      epsabs=1e-12, epsrel=1e-12, full_output=False)[:2]
        return abs(il + ir - self.delta) + el + er


def profile_t_of_f(sp: SegmentPolynomial) -> ProfileMap:
    """The monotone map t(f) with its inverse; fails if no profile exists."""
    return ProfileMap(sp)


def profile_delta_by_ode(sp: SegmentPolynomial, eps_frac: float = 1e-4) -> float:
    """delta recomputed by integrating f' = sqrt(u(f)) in time.

    Starts on the exact series f = t^2/2 + c4 t^4 + c6 t^6 near 0 and stops a
    sliver before the far end, which is crossed with the mirrored series; this
    is the independent route used to cross-check the quadrature of t(f).
    """
    u1, u2, u3 = sp.series_u("left")
    assert abs(u1 - 2.0) < 1e-9, "first integral must open with slope 2"
    c4, c6 = u2 / 24.0, u2 * u2 / 720.0 + u3 / 80.0
    fd = float(sp.f_delta)
    t0 = 1e-2 * min(1.0, fd)
    f0 = 0.5 * t0 * t0 + c4 * t0 ** 4 + c6 * t0 ** 6
    eps = eps_frac * max(1.0, fd)

    def rhs(_t, y):
        return [math.sqrt(max(sp.u_float(y[0]), 0.0))]

    def hit_end(_t, y):
        return y[0] - (fd - eps)

    hit_end.terminal = True
    hit_end.direction = 1.0
    sol = solve_ivp(rhs, (t0, 1e4), [f0], rtol=1e-11, atol=1e-13, events=hit_end, max_step=0.05)
    if sol.t_events[0].size == 0:
        raise NoKahlerEinsteinError("profile never reaches the far endpoint")
    t_event = float(sol.t_events[0][0])
    # analytic tail: integral over the last sliver in the substituted variable
    gx, gw = np.polynomial.legendre.leggauss(16)
    wmax = math.sqrt(eps)
    mid, half = wmax / 2, wmax / 2
    w = mid + half * gx
    W = w ** 2
    ratio = -2.0 * p_eval_float(sp.q_right_f, W) / p_eval_float(sp.p_right_f, W)
    tail = float(np.dot(2.0 / np.sqrt(ratio), gw) * half)
    return t_event + tail


@dataclass(frozen=True)
class ProfileSolution:
    delta: float
    t: np.ndarray
    f: np.ndarray
    fp: np.ndarray
    fpp: np.ndarray
    m1: int
    m2: int
    map: ProfileMap
    sp: SegmentPolynomial
    diagnostics: Dict[str, float]
    einstein_constant: float = 1.0  # the c = 1 normalization; others by rescaling


def profile_solve(sp: SegmentPolynomial, grid_size: int = 512) -> ProfileSolution:
    """Solve the profile on a uniform t-grid by inverting t(f).

    f' = sqrt(u(f)); f'' comes from the closed form u F(f) - f + m1, whose
    one-sided limits are 1 and -1 at the ends for any valid configuration.
    """
    if grid_size < 16:
        raise InputError("grid must have at least 16 points")
    pmap = ProfileMap(sp)
    t = np.linspace(0.0, pmap.delta, grid_size)
    f = np.array([pmap.f_of_t(ti) for ti in t])
    fp = np.array([math.sqrt(max(sp.u_float(fi), 0.0)) for fi in f])
    fpp = np.array([sp.fpp_float(fi) for fi in f])

    interior = slice(1, -1)
    s1 = np.array([sp.log_deriv_sums(fi)[0] for fi in f[interior]])
    u_int = fp[interior] ** 2
    ode_res = fpp[interior] - u_int * s1 / 2.0 + f[interior] - sp.m1

    diagnostics = {
        "f_delta_error": abs(f[-1] - float(sp.f_delta)),
        "fpp0": float(fpp[0]),
        "fpp_delta": float(fpp[-1]),
        "max_ode_residual": float(np.max(np.abs(ode_res))) if ode_res.size else 0.0,
        "quad_error_estimate": pmap.quad_error_estimate(),
    }
    assert abs(diagnostics["fpp0"] - 1.0) < 1e-6, "f''(0) limit drifted from 1"
    assert abs(diagnostics["fpp_delta"] + 1.0) < 1e-6, "f''(delta) limit drifted from -1"
    return ProfileSolution(
        delta=pmap.delta, t=t, f=f, fp=fp, fpp=fpp, m1=sp.m1, m2=sp.m2, map=pmap, sp=sp,
        diagnostics=diagnostics,
    )


# ---------------------------------------------------------------------------
# Ricci evaluations along the profile


def _state_at(sp: SegmentPolynomial, profile: ProfileSolution, t: float) -> Tuple[float, float, float]:
    if not 0.0 < t < profile.delta:
        raise InputError("t must be interior to (0, delta)")
    f = profile.map.f_of_t(t)
    fp = math.sqrt(max(sp.u_float(f), 0.0))
    fpp = sp.fpp_float(f)
    return f, fp, fpp


def ricci_tangential(sp: SegmentPolynomial, profile: ProfileSolution, alpha: Root, t: float) -> float:
    """Per-root Ricci eigenvalue r_alpha(t) = alpha(Zk) + q(t) alpha(Z)."""
    idx = _factor_index(sp, alpha)
    f, fp, fpp = _state_at(sp, profile, t)
    s1, _ = sp.log_deriv_sums(f)
    q = fpp - (fp * fp) * s1 / 2.0
    return float(sp.zk_f[idx] + q * sp.k_f[idx])


def metric_eigenvalue(sp: SegmentPolynomial, alpha: Root, f: float) -> float:
    idx = _factor_index(sp, alpha)
    return float(sp.a_f[idx] - sp.k_f[idx] * f)


def tangential_residuals_state(sp: SegmentPolynomial, f: float, fp: float, fpp: float) -> np.ndarray:
    s1, _ = sp.log_deriv_sums(f)
    q = fpp - (fp * fp) * s1 / 2.0
    r = sp.zk_f + q * sp.k_f
    g = sp.a_f - sp.k_f * f
    if np.any(g == 0):
        raise SingularConfigurationError("metric eigenvalue vanishes at f = %g" % f)
    return r / g - 1.0


def tangential_residuals(sp: SegmentPolynomial, profile: ProfileSolution, t: float) -> np.ndarray:
    """r_alpha/g_alpha - 1 for every positive root at time t."""
    f, fp, fpp = _state_at(sp, profile, t)
    return tangential_residuals_state(sp, f, fp, fpp)


def _factor_index(sp: SegmentPolynomial, alpha: Root) -> int:
    for i, fac in enumerate(sp.factors):
        if fac.root == alpha:
            return i
    raise InputError("root %s is not a positive root of the configuration" % (alpha.coords,))


def ricci_normal_state(sp: SegmentPolynomial, f: float, fp: float, fpp: float) -> float:
    s1, s2 = sp.log_deriv_sums(f)
    u = fp * fp
    F = s1 / 2.0
    Fp = s2 / 2.0
    fppp = 2.0 * fp * fpp * F + fp ** 3 * Fp - fp
    if fp == 0:
        raise SingularConfigurationError("f' vanishes in the interior")
    return -fppp / fp + fpp * s1 + 0.5 * u * s2


def ricci_normal(profile: ProfileSolution, sp: SegmentPolynomial, t: float) -> float:
    """r(xi, xi) by the closed form with f''' from the differentiated flow."""
    f, fp, fpp = _state_at(sp, profile, t)
    return ricci_normal_state(sp, f, fp, fpp)


def ricci_normal_fd(profile: ProfileSolution, sp: SegmentPolynomial, t: float, h: Optional[float] = None) -> float:
    """r(xi, xi) via -(1/f') d/dt [f'' - (f')^2/4 sum k/(h - f k)].

    The bracket is evaluated through the full numeric chain (inversion of
    t(f) at stencil points) and differentiated with a five-point stencil, so
    this route genuinely cross-checks the closed form.
    """
    if h is None:
        h = profile.delta / 400.0
    h = min(h, t / 3.0, (profile.delta - t) / 3.0)

    def q_of(tt: float) -> float:
        f, fp, fpp = _state_at(sp, profile, tt)
        s1, _ = sp.log_deriv_sums(f)
        return fpp - (fp * fp) * s1 / 2.0

    qm2, qm1, qp1, qp2 = q_of(t - 2 * h), q_of(t - h), q_of(t + h), q_of(t + 2 * h)
    dq = (qm2 - 8 * qm1 + 8 * qp1 - qp2) / (12 * h)
    _, fp, _ = _state_at(sp, profile, t)
    return -dq / fp


def verify_profile(sp: SegmentPolynomial, profile: ProfileSolution, n_check: int = 64) -> Dict[str, float]:
    """Einstein residual maxima and the two-route agreements along the profile."""
    ts = np.linspace(0.0, profile.delta, n_check + 2)[1:-1]
    max_tan = 0.0
    max_norm = 0.0
    max_norm_fd = 0.0
    for t in ts:
        max_tan = max(max_tan, float(np.max(np.abs(tangential_residuals(sp, profile, t)))))
        rn = ricci_normal(profile, sp, t)
        max_norm = max(max_norm, abs(rn - 1.0))
        max_norm_fd = max(max_norm_fd, abs(rn - ricci_normal_fd(profile, sp, t)))
    roundtrip = max(
        abs(profile.map.t_of_f(profile.map.f_of_t(t)) - t) for t in ts
    )
    return {
        "max_tangential_residual": max_tan,
        "max_normal_residual": max_norm,
        "normal_two_route_gap": max_norm_fd,
        "roundtrip_error": float(roundtrip),
        "delta_ode_gap": abs(profile_delta_by_ode(sp) - profile.delta),
    }


def scaled_ricci_control(base: CenterLine, m1: int, m2: int, lam: Fraction) -> SegmentPolynomial:
    """Segment polynomial with the metric endpoint built from lam * Z_kappa.

    The Ricci data keeps the true Z_kappa, so for lam != 1 the tangential
    Einstein residuals are bounded away from zero: the negative control.
    """
    zk = ricci_invariant(base.flag, base.j)
    zk_scaled = zk.scale(Fraction(lam))
    z1 = zk_scaled + base.z.scale(m1)
    factors = [
        RootFactor(root=a, a=evaluate(a, z1), k=evaluate(a, base.z), zk=evaluate(a, zk))
        for a in base.j.positive
    ]
    return SegmentPolynomial(factors, m1, m2, validate_degrees=True)


# ---------------------------------------------------------------------------
# searches


@dataclass(frozen=True)
class SphereCheck:
    """Exact test of the sphere-in-chamber hypothesis for diameter segments."""

    ok: bool
    min_distance_sq: Fraction  # full dual norm, as specified
    min_distance_sq_center: Fraction  # dual norm restricted to the center
    binding_root: Root


def sphere_in_chamber(flag: FlagData, j: InvariantComplexStructure) -> SphereCheck:
    """min over R_m+ of alpha(Zk)^2 / |alpha|^2, exactly, both norm variants.

    The restricted variant measures the distance inside the center of k,
    where the sphere actually lives; both minima agree on a full flag.
    """
    if not j.positive:
        raise InputError("flag has no transverse roots; paint fewer simple roots")
    rs = flag.rs
    zk = ricci_invariant(flag, j)
    gram_c = [
        [Fraction(killing(rs, b1, b2)) for b2 in flag.center_basis] for b1 in flag.center_basis
    ]
    best = None
    best_center = None
    binding = None
    for alpha in j.positive:
        az = Fraction(evaluate(alpha, zk))
        full = az * az / rs.dual_pairing(alpha.coords, alpha.coords)
        rhs = [Fraction(evaluate(alpha, b)) for b in flag.center_basis]
        coeffs = linalg.solve(gram_c, rhs)
        norm_center = sum((c * r for c, r in zip(coeffs, rhs)), Fraction(0))
        center = az * az / norm_center
        if best is None or full < best:
            best, binding = full, alpha
        if best_center is None or center < best_center:
            best_center = center
    return SphereCheck(ok=bool(best > 1), min_distance_sq=best, min_distance_sq_center=best_center, binding_root=binding)


@dataclass(frozen=True)
class DiameterCandidate:
    z_values: Tuple[Scalar, ...]
    futaki: FutakiReport
    segment: AdmissibleSegment
    confirmed_exact: bool

    @property
    def ke_ok(self) -> bool:
        return self.futaki.vanishes and self.segment.overall_ok


@dataclass(frozen=True)
class DiameterSearchResult:
    hypothesis: SphereCheck
    candidates: Tuple[DiameterCandidate, ...]


def search_diameters(base: CenterLine, n_grid: int = 720, tol: float = FUTAKI_FLOAT_TOL) -> DiameterSearchResult:
    """Zeros of the obstruction on the unit sphere of the center, m1 = m2 = 1.

    The sphere-in-chamber hypothesis is evaluated exactly and reported; the
    sign-change search runs regardless, since the hypothesis is sufficient
    but not necessary for admissible diameters.  Float zeros are confirmed
    exactly whenever the direction rationalizes.
    """
    flag, j = base.flag, base.j
    d = flag.center_dim
    if d < 1 or d > 3:
        raise InputError("diameter search supports center dimension 1..3, got %d" % d)
    hypothesis = sphere_in_chamber(flag, j)

    candidates: List[DiameterCandidate] = []
    seen: set = set()

    def consider_exact(direction_values: Sequence[Fraction]) -> None:
        vec = CartanVector(tuple(Fraction(v) for v in direction_values))
        if vec.is_zero:
            return
        cand_base = make_base(flag, j, vec, period_scale=base.period_scale)
        key = _direction_key([float(v) for v in cand_base.z.values])
        if key in seen:
            return
        rep = futaki(flag, j, cand_base.z, 1, 1, tol=tol)
        if not rep.vanishes:
            return
        seen.add(key)
        zk = ricci_invariant(flag, j)
        z1, _ = ke_endpoints(zk, cand_base.z, 1, 1)
        seg = analyze_segment(cand_base, z1, Fraction(2))
        candidates.append(DiameterCandidate(cand_base.z.values, rep, seg, confirmed_exact=True))

    def consider_float(values: np.ndarray) -> None:
        key = _direction_key(values)
        if key in seen:
            return
        exact_dir = _rationalize_direction(flag, values)
        if exact_dir is not None:
            before = len(candidates)
            consider_exact(exact_dir)
            if len(candidates) > before:
                return
        seen.add(key)
        zf = CartanVector(tuple(float(v) for v in values))
        rep = futaki(flag, j, zf, 1, 1, tol=tol)
        zkf = CartanVector(tuple(float(v) for v in ricci_invariant(flag, j).values))
        z1 = zkf + zf.scale(1.0)
        base_f = CenterLine(flag=flag, j=j, z=zf, orientation=1, period_scale=base.period_scale)
        seg = analyze_segment(base_f, z1, 2.0, tol=1e-9)
        candidates.append(DiameterCandidate(zf.values, rep, seg, confirmed_exact=False))

    if d == 1:
        consider_exact(flag.center_basis[0].values)
        consider_exact([-v for v in flag.center_basis[0].values])
    else:
        onb = _orthonormal_center_basis(base)
        fut_at = _futaki_fast(flag, j)
        if d == 2:
            _circle_scan(onb[0], onb[1], fut_at, consider_float, n_grid, tol)
        else:
            n_lat = max(8, n_grid // 24)
            for phi in np.linspace(0.0, math.pi, n_lat + 2)[1:-1]:
                axis = math.cos(phi) * onb[2]
                r = math.sin(phi)
                _circle_scan(r * onb[0], r * onb[1], fut_at, consider_float, n_grid, tol, offset=axis)

    order = {True: 0, False: 1}
    candidates.sort(key=lambda c: (order[c.confirmed_exact], tuple(float(v) for v in c.z_values)))
    return DiameterSearchResult(hypothesis=hypothesis, candidates=tuple(candidates))


def _futaki_fast(flag: FlagData, j: InvariantComplexStructure):
    """Float evaluator of the obstruction integral, for sign-change scans."""
    zk = ricci_invariant(flag, j)
    coords = np.array([a.coords for a in j.positive], dtype=float)
    zk_vals = coords @ np.array([float(v) for v in zk.values])
    lo, hi = -1.0, 1.0

    def fut(z_values: np.ndarray) -> float:
        k_vals = coords @ np.asarray(z_values, dtype=float)
        poly = np.array([1.0])
        for a, k in zip(zk_vals, k_vals):
            poly = np.convolve(poly, np.array([a, -k]))
        # integral of y * poly(y) over [-1, 1]
        ks = np.arange(2, len(poly) + 2, dtype=float)
        return float(np.sum(poly * (hi ** ks - lo ** ks) / ks))

    return fut


def _circle_scan(b1: np.ndarray, b2: np.ndarray, fut_at, consider, n_grid: int, tol: float, offset=0.0):
    thetas = np.linspace(0.0, 2 * math.pi, n_grid, endpoint=False)
    step = 2 * math.pi / n_grid

    def vec(theta: float) -> np.ndarray:
        return math.cos(theta) * b1 + math.sin(theta) * b2 + offset

    vals = np.array([fut_at(vec(th)) for th in thetas])
    for i in range(n_grid):
        a, b = vals[i], vals[(i + 1) % n_grid]
        th_a = thetas[i]
        if abs(a) <= tol:
            consider(vec(th_a))
            continue
        if a * b < 0:
            # re-evaluate at the actual bracket end: th_a + step is not
            # bit-identical to the next grid node, and a crossing within
            # float noise of a node would hand brentq an invalid bracket
            th_b = th_a + step
            fb = fut_at(vec(th_b))
            if a * fb > 0:
                consider(vec(th_b))
                continue
            theta0 = brentq(lambda th: fut_at(vec(th)), th_a, th_b, xtol=1e-14)
            consider(vec(theta0))


def _direction_key(values: Sequence[float]) -> Tuple[int, ...]:
    arr = np.array([float(v) for v in values])
    scale = np.max(np.abs(arr))
    if scale == 0:
        return (0,) * len(arr)
    arr = arr / scale
    lead = next(x for x in arr if abs(x) > 1e-9)
    if lead < 0:
        arr = -arr
    return tuple(int(round(x * 10 ** 7)) for x in arr)


def _orthonormal_center_basis(base: CenterLine) -> List[np.ndarray]:
    rs = base.flag.rs
    gram = np.array([[float(x) for x in row] for row in rs.gram])
    vecs = [np.array([float(v) for v in b.values]) for b in base.flag.center_basis]
    out: List[np.ndarray] = []
    for v in vecs:
        for u in out:
            v = v - (u @ gram @ v) * u
        v = v / math.sqrt(float(v @ gram @ v))
        out.append(v)
    return out


def _rationalize_direction(flag: FlagData, values: Sequence[float], max_den: int = 10 ** 6) -> Optional[List[Fraction]]:
    """Rebuild a float direction as an exact rational center vector, if close."""
    basis = [np.array([float(v) for v in b.values]) for b in flag.center_basis]
    B = np.stack(basis, axis=1)
    coeffs, *_ = np.linalg.lstsq(B, np.array([float(v) for v in values]), rcond=None)
    scale = np.max(np.abs(coeffs))
    if scale == 0:
        return None
    coeffs = coeffs / scale
    rat = [Fraction(c).limit_denominator(max_den) for c in coeffs]
    if all(r == 0 for r in rat):
        return None
    if max(abs(float(r) - c) for r, c in zip(rat, coeffs)) > 1e-7:
        return None
    vals = [Fraction(0)] * flag.rs.rank
    for r, b in zip(rat, flag.center_basis):
        vals = [x + r * y for x, y in zip(vals, b.values)]
    return vals


@dataclass(frozen=True)
class WalledCandidate:
    w1: Tuple[Root, ...]
    w2: Tuple[Root, ...]
    z_values: Tuple[Scalar, ...]
    futaki: FutakiReport
    segment: AdmissibleSegment


def search_walled(base: CenterLine, m1: int, m2: int, max_pairs: int = 20000) -> Tuple[WalledCandidate, ...]:
    """Walled Kahler-Einstein candidates for declared degrees (m1, m2).

    Enumerates wall sets W1, W2 in R_m+ of sizes m1-1 and m2-1, solves the
    exact linear system pinning Z, intersects with the unit-norm condition
    (solution lines give quadratic-field solutions), and keeps candidates
    passing admissibility and the vanishing of the obstruction.  Affine
    solution spaces of dimension two or more are skipped: they are
    continuous families, not isolated candidates.
    """
    if m1 + m2 < 3:
        raise InputError("walled search needs m1 + m2 >= 3; use search_diameters")
    flag, j = base.flag, base.j
    rs = flag.rs
    pos = list(j.positive)
    if m1 - 1 > len(pos) or m2 - 1 > len(pos):
        return ()
    zk = ricci_invariant(flag, j)
    basis = flag.center_basis
    d = len(basis)
    ps2 = Fraction(base.period_scale) ** 2
    gram_c = [[Fraction(killing(rs, b1, b2)) for b2 in basis] for b1 in basis]

    n_pairs = math.comb(len(pos), m1 - 1) * math.comb(len(pos), m2 - 1)
    if n_pairs > max_pairs:
        raise InputError("wall enumeration too large (%d pairs)" % n_pairs)

    out: List[WalledCandidate] = []
    seen: set = set()
    for w1 in itertools.combinations(pos, m1 - 1):
        for w2 in itertools.combinations(pos, m2 - 1):
            rows: List[List[Fraction]] = []
            rhs: List[Fraction] = []
            for alpha in w1:
                rows.append([Fraction(evaluate(alpha, b)) for b in basis])
                rhs.append(Fraction(-Fraction(evaluate(alpha, zk)), m1))
            for alpha in w2:
                rows.append([Fraction(evaluate(alpha, b)) for b in basis])
                rhs.append(Fraction(Fraction(evaluate(alpha, zk)), m2))
            if not rows:
                continue
            sol = linalg.solve(rows, rhs)
            if sol is None:
                continue
            null = linalg.nullspace(rows, n_cols=d)
            if len(null) >= 2:
                continue  # continuous family; out of enumeration scope
            for coeffs in _unit_norm_solutions(sol, null, gram_c, ps2):
                vals = [Fraction(0)] * rs.rank
                for c, b in zip(coeffs, basis):
                    vals = [x + c * y for x, y in zip(vals, b.values)]
                z = CartanVector(tuple(vals))
                key = _direction_key([float(v) for v in z.values])
                if key in seen:
                    continue
                seen.add(key)
                rep = futaki(flag, j, z, m1, m2)
                if not rep.vanishes:
                    continue
                cand_base = CenterLine(flag=flag, j=j, z=z, orientation=1, period_scale=base.period_scale)
                z1, _ = ke_endpoints(zk, z, m1, m2)
                seg = analyze_segment(cand_base, z1, Fraction(m1 + m2))
                if seg.candidate.m1 != m1 or seg.candidate.m2 != m2:
                    continue
                if not seg.overall_ok:
                    continue
                out.append(WalledCandidate(tuple(w1), tuple(w2), z.values, rep, seg))
    out.sort(key=lambda c: tuple(float(v) for v in c.z_values))
    return tuple(out)


def _unit_norm_solutions(sol: List[Fraction], null: List[List[Fraction]], gram_c, ps2: Fraction):
    """Solutions of E(Z, Z) = ps2 on the affine line sol + s * null[0]."""

    def dot(u, v):
        return sum(
            (ui * sum((gram_c[i][k] * vk for k, vk in enumerate(v)), Fraction(0)) for i, ui in enumerate(u)),
            Fraction(0),
        )

    if not null:
        if dot(sol, sol) == ps2:
            yield [Fraction(c) for c in sol]
        return
    v = null[0]
    a = dot(v, v)
    b = 2 * dot(sol, v)
    c = dot(sol, sol) - ps2
    disc = b * b - 4 * a * c
    if disc < 0:
        return
    from .scalars import exact_sqrt

    root = exact_sqrt(disc)
    for sgn in (1, -1):
        s = (-b + sgn * root) / (2 * a)
        yield [s0 + s * vi for s0, vi in zip(sol, v)]
        if disc == 0:
            return
