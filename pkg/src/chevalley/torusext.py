"""Torus lifts over a root-adjunction extension.

A basic torus element of the residue picture acts on the generator of the
first simple root by a unit r and fixes the other simple-root generators.
The lift realizes this action as a genuine diagonal element over S = R or
over S = R[y]/(y^m - r), as a product of h_{alpha_i} factors whose exponents
are the first fundamental coweight cleared of denominators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .group import GroupElement, h_alpha, x_elem
from .rings import ExtRing, Ring, RingElem, RingError, adjoin_root, is_unit
from .roots import Root, RootSystem

# (root power m, exponent of the adjoined root s in each h_{alpha_i} factor)
LIFT_TABLES: dict[str, tuple[int, tuple[int, ...]]] = {
    "A": (0, ()),  # computed per rank: m = l + 1, exponents (l, l-1, ..., 1)
    "D": (2, ()),  # m = 2, exponents (2, ..., 2, 1, 1)
    "E6": (3, (4, 3, 5, 6, 4, 2)),
    "E7": (1, (2, 2, 3, 4, 3, 2, 1)),
    "E8": (1, (4, 5, 7, 10, 8, 6, 4, 2)),
}


def lift_exponents(sys: RootSystem) -> tuple[int, tuple[int, ...]]:
    """(m, exponents): the lift is prod_i h_{alpha_i}(s^{e_i}) with s^m = r."""
    if sys.kind == "A":
        l = sys.rank
        return l + 1, tuple(range(l, 0, -1))
    if sys.kind == "D":
        return 2, tuple([2] * (sys.rank - 2) + [1, 1])
    m, exps = LIFT_TABLES[sys.name]
    return m, exps


def coweight_exponents(sys: RootSystem) -> tuple[int, tuple[int, ...]]:
    """Independent derivation: clear denominators in A^{-1} e_1."""
    l = sys.rank
    A = [[Fraction(int(sys.cartan[i, j])) for j in range(l)] for i in range(l)]
    rhs = [Fraction(int(i == 0)) for i in range(l)]
    # solve A x = e_1 exactly
    for c in range(l):
        piv = next(r for r in range(c, l) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        rhs[c], rhs[piv] = rhs[piv], rhs[c]
        f = A[c][c]
        A[c] = [x / f for x in A[c]]
        rhs[c] /= f
        for r in range(l):
            if r != c and A[r][c] != 0:
                g = A[r][c]
                A[r] = [x - g * y for x, y in zip(A[r], A[c])]
                rhs[r] -= g * rhs[c]
    denom = 1
    for x in rhs:
        denom = denom * x.denominator // math.gcd(denom, x.denominator)
    return denom, tuple(int(x * denom) for x in rhs)


@dataclass(frozen=True)
class TorusLift:
    system: str
    base: Ring
    ring: Ring                 # S: the base itself or an extension
    r: RingElem                # unit of the base being realized
    root_power: int            # m with s^m = r (1 when S = R)
    exponents: tuple[int, ...]
    gen: RingElem              # s in S
    element: GroupElement      # the diagonal lift t

    def embed(self, x: RingElem) -> RingElem:
        if isinstance(self.ring, ExtRing):
            return self.ring.embed(x)
        return x


def build_lift(sys: RootSystem, base: Ring, r: RingElem) -> TorusLift:
    if not is_unit(r):
        raise RingError("the realized torus value must be a unit")
    m, exps = lift_exponents(sys)
    if m == 1:
        S: Ring = base
        s = r
    else:
        S, s = adjoin_root(base, r, m)
    t = GroupElement.identity(sys, S)
    for i, e in enumerate(exps):
        t = t @ h_alpha(sys, S, sys.simple[i], s**e)
    return TorusLift(
        system=sys.name,
        base=base,
        ring=S,
        r=r,
        root_power=m,
        exponents=exps,
        gen=s,
        element=t,
    )


@dataclass(frozen=True)
class LiftCheck:
    root: Root
    expected_power: int
    ok: bool


@dataclass(frozen=True)
class LiftReport:
    system: str
    checks: tuple[LiftCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _conjugate(lift: TorusLift, g: GroupElement) -> GroupElement:
    diag = lift.element.mat.diagonal_elems()
    return GroupElement(g.sys, g.ring, g.mat.conjugate_by_diagonal(diag), None)


def verify_lift(
    lift: TorusLift,
    sys: RootSystem,
    rng,
    *,
    general_roots: int = 20,
) -> LiftReport:
    """Check t x_a(u) t^{-1} = x_a(r^k u) with k the alpha_1 coefficient of a.

    Simple roots are all checked; `general_roots` further roots are sampled,
    always including one of maximal alpha_1 coefficient.
    """
    S, base = lift.ring, lift.base
    checks: list[LiftCheck] = []
    sample: list[Root] = list(sys.simple)
    others = [r for r in sys.roots if r not in sys.simple]
    kmax = max(others, key=lambda r: r[0])
    sample.append(kmax)
    for _ in range(max(0, general_roots - 1)):
        sample.append(others[rng.randrange(len(others))])
    for root in sample:
        k = root[0]
        u = base.random_element(rng)
        x = x_elem(sys, S, root, lift.embed(u))
        lhs = _conjugate(lift, x)
        rhs = x_elem(sys, S, root, lift.embed((lift.r**k) * u))
        checks.append(LiftCheck(root=root, expected_power=k, ok=lhs == rhs))
    return LiftReport(system=sys.name, checks=tuple(checks))
