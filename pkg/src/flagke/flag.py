"""Flag-manifold data attached to a painted set of simple roots.

Painting a subset of the simple roots selects the isotropy subgroup K: its
semisimple part is generated by the painted roots, so the root system splits
as R = R_K + R_m with R_K the roots supported on painted indices.  An
invariant complex structure is a choice of positive half R_m+ of R_m closed
under addition of R_K and of itself (a parabolic choice).  The module also
computes the center of k, wall roots, chamber membership and the Ricci
element Z_kappa = sum of coroots over R_m+.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence, Tuple

from . import linalg
from .errors import InputError
from .rootsys import CartanVector, Root, RootSystem, coroot_vector, evaluate
from .scalars import scalar_sign


@dataclass(frozen=True)
class FlagData:
    rs: RootSystem
    painted: FrozenSet[int]
    r_k: Tuple[Root, ...]
    r_m: Tuple[Root, ...]
    center_basis: Tuple[CartanVector, ...]

    @property
    def center_dim(self) -> int:
        return len(self.center_basis)

    def r_m_set(self) -> frozenset:
        return frozenset(r.coords for r in self.r_m)


@dataclass(frozen=True)
class InvariantComplexStructure:
    """Sign assignment on R_m, stored as the positive half R_m+."""

    positive: Tuple[Root, ...]

    def positive_set(self) -> frozenset:
        return frozenset(r.coords for r in self.positive)

    def reversed(self) -> "InvariantComplexStructure":
        return InvariantComplexStructure(tuple(sorted(-r for r in self.positive)))


@dataclass(frozen=True)
class StructureVerdict:
    ok: bool
    violations: Tuple[str, ...] = ()


@dataclass(frozen=True)
class ChamberPosition:
    position: str  # "interior" | "boundary" | "outside"
    walls: Tuple[Root, ...] = ()


def build_flag(rs: RootSystem, painted: Sequence[int]) -> FlagData:
    """Split R into R_K and R_m and compute the center of k.

    In simple-root coordinates, span_Z(painted) consists of the vectors
    supported on painted indices, and the center {H : alpha(H) = 0 for all
    painted alpha} is an exact null space in the values representation.
    """
    painted_set = frozenset(int(i) for i in painted)
    for i in painted_set:
        if not 0 <= i < rs.rank:
            raise InputError("painted index %d out of range" % i)
    r_k, r_m = [], []
    for r in rs.roots:
        (r_k if set(r.support()) <= painted_set else r_m).append(r)
    rows = [[Fraction(int(j == i)) for j in range(rs.rank)] for i in sorted(painted_set)]
    basis = [CartanVector(tuple(v)) for v in linalg.nullspace(rows, n_cols=rs.rank)]
    return FlagData(
        rs=rs,
        painted=painted_set,
        r_k=tuple(r_k),
        r_m=tuple(r_m),
        center_basis=tuple(basis),
    )


def default_complex_structure(flag: FlagData) -> InvariantComplexStructure:
    """R_m+ = roots of R_m positive in the standard simple-root order."""
    j = InvariantComplexStructure(tuple(r for r in flag.r_m if r.is_positive))
    verdict = validate_complex_structure(flag, j)
    assert verdict.ok, "standard order failed parabolic closure: %s" % (verdict.violations,)
    return j


def validate_complex_structure(flag: FlagData, j: InvariantComplexStructure) -> StructureVerdict:
    """Check that R_m+ halves R_m and is closed under R_K- and self-addition."""
    rm = flag.r_m_set()
    pos = j.positive_set()
    violations: List[str] = []
    if not pos <= rm:
        violations.append("positive set not contained in R_m")
        return StructureVerdict(False, tuple(violations))
    neg = {tuple(-c for c in p) for p in pos}
    if pos & neg:
        violations.append("some root and its negative both declared positive")
    if pos | neg != rm:
        violations.append("positive and negative halves do not cover R_m")
    all_roots = flag.rs.root_set()
    for p in sorted(pos):
        for q in sorted(k.coords for k in flag.r_k):
            s = tuple(a + b for a, b in zip(p, q))
            if s in all_roots and s not in pos:
                violations.append("closure under R_K fails: %s + %s" % (p, q))
        for q in sorted(pos):
            s = tuple(a + b for a, b in zip(p, q))
            if s in all_roots and s not in pos:
                violations.append("closure under R_m+ fails: %s + %s" % (p, q))
    return StructureVerdict(not violations, tuple(violations))


def ricci_invariant(flag: FlagData, j: InvariantComplexStructure) -> CartanVector:
    """Z_kappa = sum over alpha in R_m+ of the coroot H_alpha; exact rational."""
    vals = [Fraction(0)] * flag.rs.rank
    for alpha in j.positive:
        h = coroot_vector(flag.rs, alpha)
        vals = [a + b for a, b in zip(vals, h.values)]
    return CartanVector(tuple(vals))


def wall_roots(flag: FlagData, x: CartanVector, tol: float = 1e-12) -> Tuple[Root, ...]:
    """Roots of R_m vanishing on X; X is regular iff this is empty."""
    out = []
    for alpha in flag.r_m:
        if scalar_sign(evaluate(alpha, x), tol) == 0:
            out.append(alpha)
    return tuple(out)


def chamber_position(
    flag: FlagData,
    j: InvariantComplexStructure,
    x: CartanVector,
    tol: float = 1e-12,
) -> ChamberPosition:
    """Locate X relative to the positive chamber {alpha > 0 on R_m+}."""
    walls = []
    for alpha in j.positive:
        s = scalar_sign(evaluate(alpha, x), tol)
        if s < 0:
            return ChamberPosition("outside")
        if s == 0:
            walls.extend([alpha, -alpha])
    if walls:
        return ChamberPosition("boundary", tuple(sorted(walls)))
    return ChamberPosition("interior")


def in_center(flag: FlagData, x: CartanVector, tol: float = 1e-12) -> bool:
    simple = flag.rs.simple_roots()
    return all(scalar_sign(evaluate(simple[i], x), tol) == 0 for i in flag.painted)


def center_coordinates(flag: FlagData, x: CartanVector) -> Optional[List[Fraction]]:
    """Exact coordinates of a rational X in the center basis, or None."""
    if x.kind != "rational":
        raise InputError("exact center coordinates need a rational vector")
    rows = [[b.values[i] for b in flag.center_basis] for i in range(flag.rs.rank)]
    return linalg.solve(rows, list(x.values))
