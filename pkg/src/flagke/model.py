"""Segment geometry in the center of k: bases, admissibility, parametrizations.

A ``CenterLine`` fixes the flag data, an invariant complex structure and a
unit direction Z inside the center of k.  Candidate segments Z1 - [0, C] * Z
are then classified exactly: the chamber condition, the endpoint wall sets
and degrees, the projective-space test at each singular endpoint, and the
holomorphic-projection closure condition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import InputError
from .flag import FlagData, InvariantComplexStructure, validate_complex_structure
from .rootsys import CartanVector, Root, evaluate, killing
from .scalars import Quad, Scalar, exact_sqrt, is_exact, scalar_sign


@dataclass(frozen=True)
class CenterLine:
    """Flag data plus a choice of unit direction Z in the center of k.

    ``z`` is normalized so that E(Z, Z) equals ``period_scale`` squared
    (default 1); for a rational input direction the normalized values live in
    an exact quadratic extension.  ``orientation`` records the sign of the
    input direction relative to the stored z.
    """

    flag: FlagData
    j: InvariantComplexStructure
    z: CartanVector
    orientation: int = 1
    period_scale: Fraction = Fraction(1)


def make_base(
    flag: FlagData,
    j: InvariantComplexStructure,
    z_direction: CartanVector,
    period_scale: Fraction = Fraction(1),
    tol: float = 1e-12,
) -> CenterLine:
    """Normalize a nonzero center direction to E(Z, Z) = period_scale**2."""
    verdict = validate_complex_structure(flag, j)
    if not verdict.ok:
        raise InputError("invalid complex structure: %s" % (verdict.violations,))
    if z_direction.is_zero:
        raise InputError("zero direction for Z")
    simple = flag.rs.simple_roots()
    for i in sorted(flag.painted):
        if scalar_sign(evaluate(simple[i], z_direction), tol) != 0:
            raise InputError("direction not in the center of k: alpha_%d(Z) != 0" % i)
    norm_sq = killing(flag.rs, z_direction, z_direction)
    if isinstance(norm_sq, Quad):
        raise InputError("pass an unnormalized rational (or float) direction")
    if is_exact(norm_sq):
        scale = exact_sqrt(Fraction(norm_sq) / (period_scale * period_scale))
        z = z_direction.scale(1 / scale)
    else:
        z = z_direction.scale(float(period_scale) / float(norm_sq) ** 0.5)
    return CenterLine(flag=flag, j=j, z=z, orientation=1, period_scale=Fraction(period_scale))


@dataclass(frozen=True)
class SegmentCandidate:
    z1: CartanVector
    length: Scalar  # C, in multiples of Z
    z2: CartanVector
    w1: Tuple[Root, ...]
    w2: Tuple[Root, ...]
    m1: int
    m2: int


@dataclass(frozen=True)
class AdmissibleSegment:
    candidate: SegmentCandidate
    chamber_ok: bool
    degrees_ok: bool
    projection_ok: bool
    failures: Tuple[str, ...]

    @property
    def overall_ok(self) -> bool:
        return self.chamber_ok and self.degrees_ok and self.projection_ok


def analyze_segment(base: CenterLine, z1: CartanVector, length: Scalar, tol: float = 1e-12) -> AdmissibleSegment:
    """Classify the segment from Z1 to Z2 = Z1 - C*Z.

    All verdicts are exact on exact inputs.  A root vanishing at both
    endpoints would vanish on the whole segment, which the chamber test
    reports as a failure rather than a wall.
    """
    if scalar_sign(length, tol) <= 0:
        raise InputError("segment length must be positive")
    flag, j = base.flag, base.j
    z2 = z1 - base.z.scale(length)
    failures: List[str] = []

    chamber_ok = True
    w1: List[Root] = []
    w2: List[Root] = []
    for alpha in j.positive:
        s1 = scalar_sign(evaluate(alpha, z1), tol)
        s2 = scalar_sign(evaluate(alpha, z2), tol)
        if s1 < 0 or s2 < 0:
            chamber_ok = False
            failures.append("chamber: alpha=%s negative at an endpoint" % (alpha.coords,))
            continue
        if s1 == 0 and s2 == 0:
            chamber_ok = False
            failures.append("chamber: alpha=%s vanishes on the whole segment" % (alpha.coords,))
            continue
        if s1 == 0:
            w1.extend([alpha, -alpha])
        if s2 == 0:
            w2.extend([alpha, -alpha])
    w1.sort()
    w2.sort()
    m1 = len(w1) // 2 + 1
    m2 = len(w2) // 2 + 1

    deg1, fail1 = _projective_space_test(flag, tuple(w1))
    deg2, fail2 = _projective_space_test(flag, tuple(w2))
    degrees_ok = deg1 and deg2
    failures.extend("endpoint 1 %s" % f for f in fail1)
    failures.extend("endpoint 2 %s" % f for f in fail2)

    proj_ok = True
    for tag, walls in (("endpoint 1", frozenset(r.coords for r in w1)),
                       ("endpoint 2", frozenset(r.coords for r in w2))):
        bad = _projection_violation(flag, j, walls)
        if bad is not None:
            proj_ok = False
            failures.append("%s holomorphic projection fails at %s + %s" % (tag, bad[0], bad[1]))

    cand = SegmentCandidate(z1=z1, length=length, z2=z2, w1=tuple(w1), w2=tuple(w2), m1=m1, m2=m2)
    return AdmissibleSegment(cand, chamber_ok, degrees_ok, proj_ok, tuple(failures))


def _projection_violation(flag: FlagData, j: InvariantComplexStructure, walls: frozenset):
    """First pair (alpha, beta) violating (R_m+ \\ W) + (R_K u W) closure."""
    all_roots = flag.rs.root_set()
    pos_nonwall = frozenset(r.coords for r in j.positive) - walls
    h_roots = [r.coords for r in flag.r_k] + sorted(walls)
    for a in sorted(pos_nonwall):
        for b in h_roots:
            s = tuple(x + y for x, y in zip(a, b))
            if s in all_roots and s not in pos_nonwall:
                return a, b
    return None


def _projective_space_test(flag: FlagData, walls: Tuple[Root, ...]) -> Tuple[bool, List[str]]:
    """Decide whether the endpoint centralizer fibers over K as CP^m.

    Builds the closed subsystem R_K u W, extracts its simple system, and
    checks the textbook characterization: exactly one component meets the
    walls, it is a simple-laced path (type A) of length |W|/2, and removing
    one terminal node lands on painted roots only.
    """
    if not walls:
        return True, []
    rs = flag.rs
    wall_pos = sorted({r.coords for r in walls if r.is_positive})
    sub_pos = sorted({r.coords for r in flag.r_k if r.is_positive} | set(wall_pos))
    sub_set = set(sub_pos)

    # simple roots of the subsystem: positive roots that are not sums of two
    sums = set()
    for i, a in enumerate(sub_pos):
        for b in sub_pos[i:]:
            s = tuple(x + y for x, y in zip(a, b))
            if s in sub_set:
                sums.add(s)
    nodes = [c for c in sub_pos if c not in sums]

    # Dynkin adjacency from exact Cartan integers
    m = len(nodes)
    pair: Dict[Tuple[int, int], Fraction] = {}
    for i in range(m):
        for k in range(m):
            pair[i, k] = rs.dual_pairing(nodes[i], nodes[k])
    adj = [[k for k in range(m) if k != i and pair[i, k] != 0] for i in range(m)]

    comp_id = [-1] * m
    n_comp = 0
    for i in range(m):
        if comp_id[i] != -1:
            continue
        stack = [i]
        comp_id[i] = n_comp
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if comp_id[v] == -1:
                    comp_id[v] = n_comp
                    stack.append(v)
        n_comp += 1

    painted_coords = {
        tuple(int(t == i) for t in range(rs.rank)) for i in flag.painted
    }
    wall_set = set(wall_pos)
    failures: List[str] = []
    meet = sorted({comp_id[i] for i in range(m) if nodes[i] in wall_set})
    if len(meet) != 1:
        failures.append("wall roots spread over %d simple components" % len(meet))
        return False, failures
    comp_nodes = [i for i in range(m) if comp_id[i] == meet[0]]
    for i in range(m):
        if comp_id[i] != meet[0] and nodes[i] not in painted_coords:
            failures.append("non-painted simple root %s outside the wall component" % (nodes[i],))

    target = len(wall_pos)
    if len(comp_nodes) != target:
        failures.append(
            "wall component has %d nodes, expected %d" % (len(comp_nodes), target)
        )
    # type A: connected path, single bonds, equal lengths
    degs = {i: len([v for v in adj[i] if comp_id[v] == meet[0]]) for i in comp_nodes}
    if any(d > 2 for d in degs.values()):
        failures.append("wall component branches; not a path")
    lengths = {pair[i, i] for i in comp_nodes}
    if len(lengths) != 1:
        failures.append("wall component has roots of two lengths")
    for i in comp_nodes:
        for k in adj[i]:
            if comp_id[k] == meet[0]:
                n_ik = 2 * pair[i, k] / pair[k, k]
                n_ki = 2 * pair[k, i] / pair[i, i]
                if n_ik * n_ki != 1:
                    failures.append("multiple bond inside wall component")
    unpainted = [i for i in comp_nodes if nodes[i] not in painted_coords]
    if len(unpainted) != 1:
        failures.append("expected exactly one non-painted node, found %d" % len(unpainted))
    elif degs[unpainted[0]] > 1:
        failures.append("non-painted node is not terminal in the path")
    # every wall root must lie in the Z-span of the component
    comp_support = set()
    for i in comp_nodes:
        comp_support.update(t for t, c in enumerate(nodes[i]) if c != 0)
    for w in wall_pos:
        if not {t for t, c in enumerate(w) if c != 0} <= comp_support:
            failures.append("wall root %s escapes the component span" % (w,))
    return not failures, failures


# ---------------------------------------------------------------------------
# profile parametrization checks


@dataclass(frozen=True)
class ParametrizationVerdict:
    ok: bool
    boundary_ok: bool
    monotone_ok: bool
    symmetry_ok: bool
    curvature_ok: bool
    fpp0: float
    fpp_delta: float
    details: Tuple[str, ...]


def check_parametrization(
    t: Sequence[float],
    f: Sequence[float],
    delta: float,
    length: float,
    tol: float = 1e-4,
) -> ParametrizationVerdict:
    """Validate a sampled profile f on a grid over [0, delta].

    Checks boundary values f(0) = 0 and f(delta) = C, strict monotonicity,
    evenness about both ends (first one-sided derivatives vanish to second
    order), and the curvature normalization f''(0) = 1 = -f''(delta), each
    within ``tol``.  Uses one-sided Richardson stencils, so the grid must
    resolve the ends: at least 16 points.
    """
    t = np.asarray(t, dtype=float)
    f = np.asarray(f, dtype=float)
    if len(t) < 16:
        raise InputError("grid resolution must be at least 16 points")
    details: List[str] = []

    boundary_ok = abs(f[0]) <= tol and abs(f[-1] - length) <= tol
    if not boundary_ok:
        details.append("boundary values f(0)=%g f(delta)=%g" % (f[0], f[-1]))

    monotone_ok = bool(np.all(np.diff(f) > 0))
    if not monotone_ok:
        details.append("profile not strictly increasing")

    h = t[1] - t[0]
    # evenness about 0 and delta: odd first derivative must vanish
    fp0 = (4 * f[1] - f[2] - 3 * f[0]) / (2 * h)
    fpd = (3 * f[-1] - 4 * f[-2] + f[-3]) / (2 * h)
    symmetry_ok = abs(fp0) <= tol * max(1.0, abs(length) / max(delta, 1e-30)) and abs(fpd) <= tol * max(
        1.0, abs(length) / max(delta, 1e-30)
    )
    if not symmetry_ok:
        details.append("end derivatives f'(0)=%g f'(delta)=%g" % (fp0, fpd))

    # second difference with the h^4 end correction (odd derivatives vanish)
    fpp0 = (16 * (f[1] - f[0]) - (f[2] - f[0])) / (6 * h * h)
    fppd = (16 * (f[-2] - f[-1]) - (f[-3] - f[-1])) / (6 * h * h)
    curvature_ok = abs(fpp0 - 1.0) <= tol and abs(fppd + 1.0) <= tol
    if not curvature_ok:
        details.append("end curvature f''(0)=%g f''(delta)=%g" % (fpp0, fppd))

    ok = boundary_ok and monotone_ok and symmetry_ok and curvature_ok
    return ParametrizationVerdict(
        bool(ok), bool(boundary_ok), bool(monotone_ok), bool(symmetry_ok), bool(curvature_ok),
        float(fpp0), float(fppd), tuple(details),
    )
