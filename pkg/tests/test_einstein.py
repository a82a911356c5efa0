import math
import random
from fractions import Fraction

import numpy as np
import pytest

from flagke import einstein as ein
from flagke.errors import DegreeMismatchError, InputError, NoKahlerEinsteinError
from flagke.flag import build_flag, default_complex_structure, ricci_invariant
from flagke.model import CenterLine, make_base
from flagke.polys import p_deriv, p_eval, p_trim
from flagke.rootsys import (
    CartanVector,
    LieAlgebraSpec,
    Root,
    build_root_system,
    coroot_vector,
    evaluate,
    killing,
)
from flagke.scalars import Quad


def rs(text):
    return build_root_system(LieAlgebraSpec.parse(text))


def _flag_j(text, painted=()):
    flag = build_flag(rs(text), painted)
    return flag, default_complex_structure(flag)


def _simpson_oracle(flag, j, z_float, m1, m2, panels=10 ** 6):
    """Composite Simpson evaluation of the obstruction integral."""
    zk = ricci_invariant(flag, j)
    zkv = np.array([float(evaluate(a, zk)) for a in j.positive])
    kv = np.array([float(evaluate(a, CartanVector(tuple(z_float)))) for a in j.positive])
    y = np.linspace(-m1, m2, 2 * panels + 1)
    vals = y * np.prod(zkv[:, None] - np.outer(kv, y), axis=0)
    h = (m1 + m2) / (2 * panels)
    w = np.ones_like(y)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(np.dot(w, vals) * h / 3.0)


# ---------------------------------------------------------------------------
# endpoints and the obstruction


def test_ke_endpoints_midpoint_identity():
    flag, j = _flag_j("A1xA1")
    h1 = coroot_vector(flag.rs, flag.rs.simple_roots()[0])
    h2 = coroot_vector(flag.rs, flag.rs.simple_roots()[1])
    base = make_base(flag, j, h1 - h2)
    zk = ricci_invariant(flag, j)
    z1, z2 = ein.ke_endpoints(zk, base.z, 1, 1)
    assert (z1 - z2).values == base.z.scale(2).values
    mid = (z1 + z2).scale(Fraction(1, 2))
    assert mid.values == zk.values
    # the wall hit: alpha_2(Z1) = 0 exactly
    assert evaluate(flag.rs.simple_roots()[1], z1) == 0

    la1, lj1 = _flag_j("A1")
    b1 = make_base(la1, lj1, coroot_vector(la1.rs, la1.rs.simple_roots()[0]))
    z1a, _ = ein.ke_endpoints(ricci_invariant(la1, lj1), b1.z, 1, 1)
    assert evaluate(la1.rs.simple_roots()[0], z1a) == Fraction(1, 2) + Quad(Fraction(0), Fraction(1, 2), Fraction(2))

    norm = killing(flag.rs, z1 - z2, z1 - z2)
    assert norm == 4  # (m1 + m2)^2


def test_futaki_su2_exact_value():
    flag, j = _flag_j("A1")
    base = make_base(flag, j, coroot_vector(flag.rs, flag.rs.simple_roots()[0]))
    rep = ein.futaki(flag, j, base.z, 1, 1)
    assert rep.exact
    assert rep.value == Quad(Fraction(0), Fraction(-1, 3), Fraction(2))
    assert not rep.vanishes


def test_futaki_product_values():
    flag, j = _flag_j("A1xA1")
    h1 = coroot_vector(flag.rs, flag.rs.simple_roots()[0])
    h2 = coroot_vector(flag.rs, flag.rs.simple_roots()[1])
    rep_minus = ein.futaki(flag, j, make_base(flag, j, h1 - h2).z, 1, 1)
    assert rep_minus.value == 0 and rep_minus.vanishes
    rep_plus = ein.futaki(flag, j, make_base(flag, j, h1 + h2).z, 1, 1)
    assert rep_plus.value == Fraction(-1, 3) and not rep_plus.vanishes


def test_futaki_simpson_oracle_agreement():
    flag, j = _flag_j("A1")
    base = make_base(flag, j, coroot_vector(flag.rs, flag.rs.simple_roots()[0]))
    simpson = _simpson_oracle(flag, j, [float(v) for v in base.z.values], 1, 1)
    assert abs(simpson - float(ein.futaki(flag, j, base.z, 1, 1).value)) < 1e-9


def test_futaki_float_path_reports_bound():
    flag, j = _flag_j("A1xA1")
    z = CartanVector((0.5, -0.5))
    rep = ein.futaki(flag, j, z, 1, 1)
    assert not rep.exact
    assert rep.error_bound is not None and rep.error_bound < 1e-12
    assert rep.vanishes  # odd integrand, zero to roundoff


def test_change_of_variable_equivalence_random_configs():
    rng = random.Random(7)
    families = ["A", "B", "C", "D"]
    done = 0
    while done < 25:
        fam = rng.choice(families)
        rank = rng.randint(2 if fam != "A" else 1, 4)
        system = rs("%s%d" % (fam, rank))
        painted = tuple(i for i in range(system.rank) if rng.random() < 0.4)
        if len(painted) == system.rank:
            continue
        flag = build_flag(system, painted)
        j = default_complex_structure(flag)
        vals = [Fraction(0)] * system.rank
        for b in flag.center_basis:
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 7))
            vals = [x + c * y for x, y in zip(vals, b.values)]
        z = CartanVector(tuple(vals))
        if z.is_zero:
            continue
        m1, m2 = rng.randint(1, 3), rng.randint(1, 3)
        lhs = ein.futaki(flag, j, z, m1, m2).value
        base = CenterLine(flag=flag, j=j, z=z)
        rhs = ein.futaki_shifted(base, m1, m2)
        assert lhs == rhs, (fam, rank, painted, m1, m2)
        done += 1


# ---------------------------------------------------------------------------
# segment polynomial and the first integral


def _toy_sp():
    # P(v) = (1 - v/2)(v/2): factors with a wall at v = 0
    fac = [
        ein.RootFactor(Root((1, 0)), Fraction(1), Fraction(1, 2), Fraction(1, 2)),
        ein.RootFactor(Root((0, 1)), Fraction(0), Fraction(-1, 2), Fraction(1, 2)),
    ]
    return ein.SegmentPolynomial(fac, 1, 1, validate_degrees=False)


def test_u_eval_worked_example():
    sp = _toy_sp()
    assert p_eval(sp.coeffs, Fraction(1)) == Fraction(1, 4)
    assert p_trim(sp.d_coeffs) == [Fraction(1, 2), Fraction(-1, 2)]
    assert ein.u_eval(sp, Fraction(1)) == Fraction(1, 2)
    # u(0+) -> 0
    assert abs(ein.u_eval(sp, Fraction(1, 10 ** 6))) < Fraction(1, 10 ** 5)


def test_u_nonzero_at_far_end_when_obstruction_nonzero():
    # walls on both far ends: the lazy deflation reports the degree clash
    flag, j = _flag_j("A1xA1")
    h1 = coroot_vector(flag.rs, flag.rs.simple_roots()[0])
    h2 = coroot_vector(flag.rs, flag.rs.simple_roots()[1])
    base = make_base(flag, j, h1 + h2)
    sp = ein.SegmentPolynomial.from_base(base, 1, 1, validate_degrees=False)
    # oracle: the shifted integral equals the obstruction value, nonzero
    assert p_eval(sp.q_coeffs, sp.f_delta) == ein.futaki(flag, j, base.z, 1, 1).value != 0
    with pytest.raises(DegreeMismatchError):
        _ = sp.p_right

    # wall-free non-vanishing configuration: u stays away from 0 at the far end
    flag4, j4 = _flag_j("A2xA2", (1, 3))
    direction = CartanVector((Fraction(1), Fraction(0), Fraction(1), Fraction(0)))
    base4 = make_base(flag4, j4, direction)
    sp4 = ein.SegmentPolynomial.from_base(base4, 1, 1, validate_degrees=True)
    assert p_eval(sp4.q_coeffs, sp4.f_delta) == ein.futaki(flag4, j4, base4.z, 1, 1).value != 0
    with pytest.raises(NoKahlerEinsteinError):
        _ = sp4.p_right
    assert abs(sp4.u_exact(Fraction(1999, 1000))) > Fraction(1, 100)


def test_u_float_on_non_einstein_segment():
    # pointwise evaluation stays available away from walls even when no
    # profile exists (the obstruction does not vanish)
    flag, j = _flag_j("A2xA2", (1, 3))
    direction = CartanVector((Fraction(1), Fraction(0), Fraction(1), Fraction(0)))
    base = make_base(flag, j, direction)
    sp = ein.SegmentPolynomial.from_base(base, 1, 1)
    exact = float(sp.u_exact(Fraction(3, 2)))
    assert abs(ein.u_eval(sp, 1.5) - exact) < 1e-12 * max(1.0, abs(exact))


def test_degree_mismatch_raises():
    flag, j = _flag_j("A1xA1")
    h1 = coroot_vector(flag.rs, flag.rs.simple_roots()[0])
    h2 = coroot_vector(flag.rs, flag.rs.simple_roots()[1])
    base = make_base(flag, j, h1 - h2)
    with pytest.raises(DegreeMismatchError) as err:
        ein.build_segment_polynomial(base, 1, 1)
    assert err.value.details["computed"] == (2, 2)


def test_first_integral_identity_on_random_polynomials():
    rng = random.Random(99)
    for _ in range(20):
        n = rng.randint(1, 6)
        m1 = rng.randint(1, 3)
        fac = []
        for i in range(n):
            a = Fraction(rng.randint(1, 9), rng.randint(1, 5))
            k = Fraction(rng.randint(-6, 6), rng.randint(1, 5))
            fac.append(ein.RootFactor(Root((i,)), a, k, a))
        sp = ein.SegmentPolynomial(fac, m1, 1, validate_degrees=False)
        assert ein.first_integral_identity_numerator(sp) == []


def test_log_derivative_identities():
    sp = _toy_sp()
    for f in (0.3, 0.9, 1.7):
        s1, s2 = sp.log_deriv_sums(f)
        p = p_eval(sp.coeffs, Fraction(f).limit_denominator(10 ** 9))
        dp = p_eval(sp.d_coeffs, Fraction(f).limit_denominator(10 ** 9))
        d2p = p_eval(p_deriv(sp.d_coeffs), Fraction(f).limit_denominator(10 ** 9))
        assert abs(s1 + float(dp) / float(p)) < 1e-12
        assert abs(s2 - ((float(dp) / float(p)) ** 2 - float(d2p) / float(p))) < 1e-12


# ---------------------------------------------------------------------------
# the profile on the exact Einstein configuration


def test_profile_map_consistency(ke_base):
    sp = ein.build_segment_polynomial(ke_base, 1, 1)
    pmap = ein.profile_t_of_f(sp)
    assert pmap.t_of_f(0.0) == 0.0
    # dt/df = 1 / sqrt(u(f)) at 20 interior points, via central differences
    for f in np.linspace(0.1, 1.9, 20):
        h = 1e-5
        fd = (pmap.t_of_f(f + h) - pmap.t_of_f(f - h)) / (2 * h)
        assert abs(fd - 1.0 / math.sqrt(sp.u_float(f))) < 1e-6
    # two-method delta
    assert abs(ein.profile_delta_by_ode(sp) - pmap.delta) < 1e-6


def test_profile_solution_boundary_and_symmetry(ke_profile):
    sp, prof = ke_profile
    assert prof.diagnostics["f_delta_error"] < 1e-8
    assert abs(prof.diagnostics["fpp0"] - 1.0) < 1e-4
    assert abs(prof.diagnostics["fpp_delta"] + 1.0) < 1e-4
    # midpoint symmetry for m1 = m2 symmetric data
    assert abs(prof.map.f_of_t(prof.delta / 2) - 1.0) < 1e-8
    # symmetric pairs sum to m1 + m2
    for s in (0.1, 0.4, 1.1):
        f_lo = prof.map.f_of_t(prof.delta / 2 - s)
        f_hi = prof.map.f_of_t(prof.delta / 2 + s)
        assert abs(f_lo + f_hi - 2.0) < 1e-8


def test_profile_roundtrip_identity(ke_profile):
    sp, prof = ke_profile
    for t in np.linspace(0.05, prof.delta - 0.05, 30):
        assert abs(prof.map.t_of_f(prof.map.f_of_t(t)) - t) < 1e-8


def test_solved_profile_is_admissible_parametrization(ke_profile):
    from flagke.model import check_parametrization

    sp, prof = ke_profile
    verdict = check_parametrization(prof.t, prof.f, prof.delta, float(sp.f_delta))
    assert verdict.ok and verdict.boundary_ok and verdict.monotone_ok
    assert verdict.symmetry_ok and verdict.curvature_ok


def test_ricci_tangential_and_normal_residuals(ke_profile):
    sp, prof = ke_profile
    ver = ein.verify_profile(sp, prof, n_check=64)
    assert ver["max_tangential_residual"] < 1e-6
    assert ver["max_normal_residual"] < 1e-6
    assert ver["normal_two_route_gap"] < 1e-6
    assert ver["delta_ode_gap"] < 1e-6
    assert prof.diagnostics["max_ode_residual"] < 1e-8


def test_ricci_single_root_evaluation(ke_profile):
    sp, prof = ke_profile
    t = prof.delta / 3
    alpha = sp.factors[0].root
    r = ein.ricci_tangential(sp, prof, alpha, t)
    f = prof.map.f_of_t(t)
    g = ein.metric_eigenvalue(sp, alpha, f)
    assert abs(r / g - 1.0) < 1e-6
    with pytest.raises(InputError):
        ein.ricci_tangential(sp, prof, Root((9, 9, 9, 9)), t)
    with pytest.raises(InputError):
        ein.ricci_tangential(sp, prof, alpha, prof.delta * 2)


def test_q_odd_about_midpoint_for_symmetric_data(ke_profile):
    sp, prof = ke_profile
    mid = prof.delta / 2
    for s in (0.2, 0.5, 1.0):
        qs = []
        for t in (mid - s, mid + s):
            f = prof.map.f_of_t(t)
            fp2 = sp.u_float(f)
            fpp = sp.fpp_float(f)
            s1, _ = sp.log_deriv_sums(f)
            qs.append(fpp - fp2 * s1 / 2.0)
        assert abs(qs[0] + qs[1]) < 1e-8


def test_scaled_ricci_control_breaks_tangential_only(ke_base):
    sp = ein.scaled_ricci_control(ke_base, 1, 1, Fraction(11, 10))
    prof = ein.profile_solve(sp, grid_size=130)
    ver = ein.verify_profile(sp, prof, n_check=16)
    assert ver["max_tangential_residual"] > 1e-2
    # the normal equation is a first-integral identity, insensitive to Zk
    assert ver["max_normal_residual"] < 1e-10


# ---------------------------------------------------------------------------
# searches


def test_sphere_check_product_of_su2():
    flag, j = _flag_j("A1xA1")
    chk = ein.sphere_in_chamber(flag, j)
    assert not chk.ok
    assert chk.min_distance_sq == Fraction(1, 2)  # (1/2)^2 / (1/2)
    assert chk.min_distance_sq_center == Fraction(1, 2)


def test_sphere_check_cp3_flag_center_norm():
    flag, j = _flag_j("A3", (1, 2))
    chk = ein.sphere_in_chamber(flag, j)
    assert chk.min_distance_sq == 1  # full dual norm formula
    assert chk.min_distance_sq_center == Fraction(3, 2)  # measured inside the center


def test_search_diameters_d1_no_candidates():
    flag, j = _flag_j("A2", (1,))
    base = make_base(flag, j, flag.center_basis[0])
    res = ein.search_diameters(base)
    assert flag.center_dim == 1
    assert res.candidates == ()


def test_search_diameters_finds_exact_product_zero(ke_base):
    res = ein.search_diameters(ke_base)
    assert not res.hypothesis.ok
    winners = [c for c in res.candidates if c.ke_ok]
    assert len(winners) == 1
    c = winners[0]
    assert c.confirmed_exact and c.futaki.exact and c.futaki.value == 0
    assert c.segment.candidate.m1 == 1 and c.segment.candidate.m2 == 1
    # the exact direction is (e1 - e2)/sqrt(2) up to overall sign
    mags = [abs(float(v)) for v in c.z_values]
    assert abs(mags[0] - math.sqrt(2) / 4) < 1e-12 and mags[1] == 0


def test_search_diameters_full_flag_zeros_inadmissible():
    flag, j = _flag_j("A2")
    base = make_base(flag, j, coroot_vector(flag.rs, flag.rs.simple_roots()[0]))
    res = ein.search_diameters(base)
    assert res.candidates  # the symmetric zero is found...
    assert all(not c.ke_ok for c in res.candidates)  # ...but exits the chamber


def test_search_diameters_three_dimensional_center():
    # the zero locus is a curve on the 2-sphere; the latitude scan samples it
    flag, j = _flag_j("A1xA1xA1")
    base = make_base(flag, j, flag.center_basis[0])
    with_default = ein.search_diameters(base, n_grid=240)
    assert flag.center_dim == 3
    assert with_default.candidates  # crossings exist away from the walls
    # per the sign analysis, none of the sampled zeros is chamber-admissible
    assert all(not c.ke_ok for c in with_default.candidates)


def test_search_diameters_triple_product_exact_zeros(ke_profile):
    # on the triple product the zero locus is a surface containing the three
    # pairwise-difference directions; all three rationalize and recertify,
    # and the inert factor cancels from u, reproducing the pair profile
    flag, j = _flag_j("A2xA2xA2", (1, 3, 5))
    base = make_base(flag, j, flag.center_basis[0])
    res = ein.search_diameters(base, n_grid=360)
    exact_ke = [c for c in res.candidates if c.ke_ok and c.confirmed_exact]
    assert len(exact_ke) == 3
    c = exact_ke[0]
    b = CenterLine(flag=flag, j=j, z=CartanVector(c.z_values))
    sp = ein.build_segment_polynomial(b, 1, 1)
    prof = ein.profile_solve(sp, grid_size=128)
    _, pair_profile = ke_profile
    assert abs(prof.delta - pair_profile.delta) < 1e-10


def test_search_diameters_rejects_large_centers():
    flag, j = _flag_j("A1xA1xA1xA1")
    base = make_base(flag, j, flag.center_basis[0])
    with pytest.raises(InputError):
        ein.search_diameters(base)


def test_search_walled_su2_product_rejected_by_norm():
    flag, j = _flag_j("A1xA1")
    h1 = coroot_vector(flag.rs, flag.rs.simple_roots()[0])
    h2 = coroot_vector(flag.rs, flag.rs.simple_roots()[1])
    base = make_base(flag, j, h1 - h2)
    assert ein.search_walled(base, 2, 2) == ()


def test_search_walled_oversized_walls_empty():
    flag, j = _flag_j("A1xA1")
    h1 = coroot_vector(flag.rs, flag.rs.simple_roots()[0])
    base = make_base(flag, j, h1 - coroot_vector(flag.rs, flag.rs.simple_roots()[1]))
    assert ein.search_walled(base, 5, 1) == ()


def test_search_walled_rejects_diameter_case():
    flag, j = _flag_j("A1xA1")
    h1 = coroot_vector(flag.rs, flag.rs.simple_roots()[0])
    base = make_base(flag, j, h1 - coroot_vector(flag.rs, flag.rs.simple_roots()[1]))
    with pytest.raises(InputError):
        ein.search_walled(base, 1, 1)


def test_projective_space_profile_matches_closed_form():
    # degrees (3, 1) on the painted-A2 flag at period scale 1/3: the segment
    # polynomial is P(v) = v^2/36, so u = -2 [v^4/144 - v^3/36]/(v^2/36)
    # = f(4 - f)/2 and delta = sqrt(2) * int_0^4 df/sqrt(f(4-f)) = sqrt(2) pi
    flag, j = _flag_j("A2", (1,))
    probe = make_base(flag, j, flag.center_basis[0], period_scale=Fraction(1, 3))
    cand = ein.search_walled(probe, 3, 1)[0]
    base = CenterLine(flag=flag, j=j, z=CartanVector(cand.z_values), period_scale=Fraction(1, 3))
    sp = ein.build_segment_polynomial(base, 3, 1)
    assert sp.coeffs == [Fraction(0), Fraction(0), Fraction(1, 36)]
    assert ein.u_eval(sp, Fraction(1)) == Fraction(3, 2)  # f(4-f)/2 at f=1
    assert ein.u_eval(sp, Fraction(2)) == 2

    profile = ein.profile_solve(sp, grid_size=300)
    assert abs(profile.delta - math.sqrt(2) * math.pi) < 1e-12
    ver = ein.verify_profile(sp, profile, n_check=32)
    assert ver["max_tangential_residual"] < 1e-9
    assert ver["max_normal_residual"] < 1e-9
    assert ver["normal_two_route_gap"] < 1e-6
    assert ver["delta_ode_gap"] < 1e-6
    from flagke.model import check_parametrization

    pv = check_parametrization(profile.t, profile.f, profile.delta, 4.0)
    assert pv.ok


def test_asymmetric_product_numeric_zero_diameter():
    # CP^2 x CP^3 flags: the obstruction zero sits at an irrational angle, so
    # the candidate is reported as a numeric zero and solved on the float path
    flag, j = _flag_j("A2xA3", (1, 3, 4))
    base = make_base(flag, j, flag.center_basis[0])
    res = ein.search_diameters(base)
    winners = [c for c in res.candidates if c.ke_ok]
    assert winners
    cand = winners[0]
    assert not cand.confirmed_exact and not cand.futaki.exact
    assert abs(float(cand.futaki.value)) < 1e-10
    assert cand.futaki.error_bound is not None

    b = CenterLine(flag=flag, j=j, z=CartanVector(cand.z_values))
    sp = ein.SegmentPolynomial.from_base(b, 1, 1)
    assert not sp.exact
    profile = ein.profile_solve(sp, grid_size=200)
    ver = ein.verify_profile(sp, profile, n_check=24)
    assert profile.diagnostics["f_delta_error"] < 1e-8
    assert ver["max_tangential_residual"] < 1e-9
    assert ver["max_normal_residual"] < 1e-9
    assert ver["normal_two_route_gap"] < 1e-6


def test_projective_space_profile_same_metric_from_product_realization():
    # the same Einstein manifold realized by a product group: symmetric (2,2)
    # walls at period scale 1/2 must reproduce delta = sqrt(2) pi exactly
    flag, j = _flag_j("A1xA1")
    h1 = coroot_vector(flag.rs, flag.rs.simple_roots()[0])
    h2 = coroot_vector(flag.rs, flag.rs.simple_roots()[1])
    base = make_base(flag, j, h1 - h2, period_scale=Fraction(1, 2))
    found = ein.search_walled(base, 2, 2)
    assert len(found) == 1
    cand = found[0]
    assert cand.z_values == (Fraction(1, 4), Fraction(-1, 4)) or cand.z_values == (
        Fraction(-1, 4), Fraction(1, 4))
    assert cand.futaki.value == 0 and cand.segment.overall_ok

    b = CenterLine(flag=flag, j=j, z=CartanVector(cand.z_values), period_scale=Fraction(1, 2))
    sp = ein.build_segment_polynomial(b, 2, 2)
    assert sp.coeffs == [Fraction(0), Fraction(1, 4), Fraction(-1, 16)]  # v(4-v)/16
    prof = ein.profile_solve(sp, grid_size=200)
    assert abs(prof.delta - math.sqrt(2) * math.pi) < 1e-12
    ver = ein.verify_profile(sp, prof, n_check=24)
    assert ver["max_tangential_residual"] < 1e-9
    assert ver["max_normal_residual"] < 1e-9


def test_unit_norm_solutions_quadratic_field_line():
    # an affine line of wall solutions meets the unit sphere in Q(sqrt(3))
    gram = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    sols = list(ein._unit_norm_solutions([Fraction(1, 2), Fraction(0)],
                                         [[Fraction(0), Fraction(1)]], gram, Fraction(1)))
    assert len(sols) == 2
    for s in sols:
        norm = s[0] * s[0] + s[1] * s[1]
        assert norm == 1
        assert isinstance(s[1], Quad) and s[1].r == 3

    # tangent line: a single rational solution
    sols = list(ein._unit_norm_solutions([Fraction(1), Fraction(0)],
                                         [[Fraction(0), Fraction(1)]], gram, Fraction(1)))
    assert sols == [[Fraction(1), Fraction(0)]]

    # a line missing the sphere entirely
    sols = list(ein._unit_norm_solutions([Fraction(2), Fraction(0)],
                                         [[Fraction(0), Fraction(1)]], gram, Fraction(1)))
    assert sols == []


def test_search_walled_underdetermined_line_path_runs():
    # one wall on a two-dimensional center: the solver walks an affine line
    # and intersects the unit sphere; here nothing survives the later filters
    flag, j = _flag_j("A2xA2", (1, 3))
    base = make_base(flag, j, flag.center_basis[0])
    assert ein.search_walled(base, 2, 1) == ()


def test_search_walled_fixed_point_case_under_period_scale():
    # the projective-space configuration: full wall at one end; the linear
    # system forces Z = -Zk/m1, which meets the norm condition only for
    # period scale 1/3 (paper-literal scale 1 rejects it)
    flag, j = _flag_j("A2", (1,))
    base1 = make_base(flag, j, flag.center_basis[0])
    assert ein.search_walled(base1, 3, 1) == ()
    base3 = make_base(flag, j, flag.center_basis[0], period_scale=Fraction(1, 3))
    found = ein.search_walled(base3, 3, 1)
    assert len(found) == 1
    cand = found[0]
    assert cand.futaki.value == 0
    assert cand.segment.candidate.m1 == 3 and cand.segment.candidate.m2 == 1
    assert cand.segment.overall_ok
    zk = ricci_invariant(flag, j)
    assert CartanVector(cand.z_values).scale(-3).values == zk.values
