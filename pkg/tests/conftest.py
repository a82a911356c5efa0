import pytest
from fractions import Fraction

from flagke import einstein as ein
from flagke.flag import build_flag, default_complex_structure
from flagke.model import make_base
from flagke.rootsys import CartanVector, LieAlgebraSpec, build_root_system


def rs(text):
    return build_root_system(LieAlgebraSpec.parse(text))


@pytest.fixture(scope="session")
def ke_base():
    """The CP2 x CP2 flag with its exact Futaki-vanishing diameter direction."""
    system = rs("A2xA2")
    flag = build_flag(system, [1, 3])
    j = default_complex_structure(flag)
    direction = CartanVector((Fraction(1), Fraction(0), Fraction(-1), Fraction(0)))
    return make_base(flag, j, direction)


@pytest.fixture(scope="session")
def ke_profile(ke_base):
    sp = ein.build_segment_polynomial(ke_base, 1, 1)
    profile = ein.profile_solve(sp, grid_size=514)
    return sp, profile
