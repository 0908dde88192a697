"""Group elements of the adjoint Chevalley group over a ring.

Elements carry an exact matrix plus, when they were built from generators, a
word of tagged factors (unipotent, torus, scalar, diagram) that multiplies
out to the matrix.  Words make inverses cheap and serialize to JSON.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lie import StructureConstants, ad_x, ad_x_squared, h_index, root_index
from .matrices import Mat
from .rings import Ring, RingElem, RingError
from .roots import Root, RootSystem, add, height, neg

Factor = tuple  # ("x", root, t) | ("h", values) | ("scalar", lam) | ("perm", name, data)


class GroupElement:
    __slots__ = ("sys", "ring", "mat", "word")

    def __init__(self, sys: RootSystem, ring: Ring, mat: Mat, word: tuple[Factor, ...] | None):
        self.sys = sys
        self.ring = ring
        self.mat = mat
        self.word = word

    @classmethod
    def identity(cls, sys: RootSystem, ring: Ring) -> "GroupElement":
        return cls(sys, ring, Mat.identity(ring, sys.n), ())

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return GroupElement(self.sys, self.ring, self.mat @ other.mat, word)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupElement) and self.mat == other.mat

    def __hash__(self) -> int:  # pragma: no cover
        return hash(self.mat)

    def is_identity(self) -> bool:
        return self.mat.is_identity()

    def inverse(self) -> "GroupElement":
        if self.word is not None:
            inv = GroupElement.identity(self.sys, self.ring)
            for f in reversed(self.word):
                inv = inv @ _factor_inverse(self.sys, self.ring, f)
            return inv
        if self.mat.is_diagonal():
            diag = [e.inv() for e in self.mat.diagonal_elems()]
            return GroupElement(self.sys, self.ring, Mat.diagonal(self.ring, diag), None)
        if self.ring.local and congruence_member(self):
            return GroupElement(self.sys, self.ring, self.mat.neumann_inv(), None)
        return GroupElement(self.sys, self.ring, self.mat.inv(), None)

    def is_invertible(self) -> bool:
        if self.word is not None or self.mat.is_diagonal():
            return True
        return self.mat.is_invertible()

    def word_to_json(self) -> list:
        if self.word is None:
            raise RingError("element has no generator word")
        out = []
        for f in self.word:
            if f[0] == "x":
                out.append({"kind": "x", "root": list(f[1]), "param": self.ring.elem_to_json(f[2])})
            elif f[0] == "h":
                out.append({"kind": "h", "values": [self.ring.elem_to_json(v) for v in f[1]]})
            elif f[0] == "scalar":
                out.append({"kind": "scalar", "value": self.ring.elem_to_json(f[1])})
            else:
                out.append({"kind": "graph", "delta": f[1], "inverse": bool(f[2].get("inv"))})
        return out

    def __repr__(self) -> str:
        w = "?" if self.word is None else len(self.word)
        return f"GroupElement({self.sys.name}/{self.ring.descriptor}, word={w})"


def _factor_matrix(sys: RootSystem, ring: Ring, f: Factor) -> Mat:
    if f[0] == "x":
        return _x_mat(sys, ring, f[1], f[2])
    if f[0] == "h":
        return _char_mat(sys, ring, f[1])
    if f[0] == "scalar":
        return Mat.identity(ring, sys.n).scale(f[1])
    data = f[2]["matrix"]
    m = Mat.from_int_matrix(ring, data.T if f[2].get("inv") else data)
    return m


def _factor_inverse(sys: RootSystem, ring: Ring, f: Factor) -> GroupElement:
    if f[0] == "x":
        g = GroupElement(sys, ring, _x_mat(sys, ring, f[1], -f[2]), (("x", f[1], -f[2]),))
        return g
    if f[0] == "h":
        vals = tuple(v.inv() for v in f[1])
        return GroupElement(sys, ring, _char_mat(sys, ring, vals), (("h", vals),))
    if f[0] == "scalar":
        lam = f[1].inv()
        return GroupElement(sys, ring, Mat.identity(ring, sys.n).scale(lam), (("scalar", lam),))
    # signed permutation: the inverse is the transpose
    data = dict(f[2])
    data["inv"] = not f[2].get("inv")
    return GroupElement(sys, ring, _factor_matrix(sys, ring, ("perm", f[1], data)), (("perm", f[1], data),))


def word_to_matrix(sys: RootSystem, ring: Ring, word) -> Mat:
    out = Mat.identity(ring, sys.n)
    for f in word:
        out = out @ _factor_matrix(sys, ring, f)
    return out


# ---------------------------------------------------------------------------
# unipotent generators
# ---------------------------------------------------------------------------


def _x_mat(sys: RootSystem, ring: Ring, r: Root, t: RingElem) -> Mat:
    N = _constants(sys)
    X = ad_x(sys, N, r)
    X2 = ad_x_squared(sys, N, r)
    data = Mat.identity(ring, sys.n).data.copy()
    data += ring.mat_scale_int(t.vec, X)
    data += ring.mat_scale_int((t * t * ring.half).vec, X2)
    return Mat(ring, data)


def _constants(sys: RootSystem) -> StructureConstants:
    from .lie import structure_constants

    return structure_constants(sys)


def x_elem(sys: RootSystem, ring: Ring, r: Root, t: RingElem) -> GroupElement:
    """Exponential of t x_r: the series stops at degree two on the adjoint module."""
    r = tuple(r)
    if not sys.is_root(r):
        raise ValueError(f"{r} is not a root of {sys.name}")
    return GroupElement(sys, ring, _x_mat(sys, ring, r, t), (("x", r, t),))


# ---------------------------------------------------------------------------
# torus elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Character:
    """Multiplicative character of the root lattice, given on the simple roots."""

    ring: Ring
    values: tuple[RingElem, ...]

    def __post_init__(self):
        for v in self.values:
            if not self.ring.is_unit_vec(v.vec):
                raise RingError("character values must be units")

    def value(self, r: Root) -> RingElem:
        out = self.ring.one
        for v, c in zip(self.values, r):
            if c:
                out = out * v**c
        return out


def _char_mat(sys: RootSystem, ring: Ring, values: tuple[RingElem, ...]) -> Mat:
    chi = Character(ring, values)
    diag = []
    for p in sys.positive:
        v = chi.value(p)
        diag += [v, v.inv()]
    diag += [ring.one] * sys.rank
    return Mat.diagonal(ring, diag)


def h_elem(sys: RootSystem, chi: Character) -> GroupElement:
    """Diagonal torus element acting on each root position by chi(root)."""
    ring = chi.ring
    return GroupElement(sys, ring, _char_mat(sys, ring, chi.values), (("h", chi.values),))


def h_alpha(sys: RootSystem, ring: Ring, alpha: Root, u: RingElem) -> GroupElement:
    """h_alpha(u): the character sends lambda to u^<lambda, alpha>."""
    values = tuple(u ** sys.pairing(s, tuple(alpha)) for s in sys.simple)
    return h_elem(sys, Character(ring, values))


def t_k(sys: RootSystem, ring: Ring, k: int, x: RingElem) -> GroupElement:
    """Torus element whose character is x on alpha_k and 1 on the other simples."""
    values = tuple(x if i == k else ring.one for i in range(sys.rank))
    return h_elem(sys, Character(ring, values))


def scalar_elem(sys: RootSystem, ring: Ring, lam: RingElem) -> GroupElement:
    if not ring.is_unit_vec(lam.vec):
        raise RingError("scalar factor must be a unit")
    return GroupElement(sys, ring, Mat.identity(ring, sys.n).scale(lam), (("scalar", lam),))


# ---------------------------------------------------------------------------
# identities used as oracles
# ---------------------------------------------------------------------------


def check_torus_conjugation(sys: RootSystem, chi: Character, beta: Root, xi: RingElem) -> bool:
    """Exact check of h(chi) x_beta(xi) h(chi)^{-1} = x_beta(chi(beta) xi)."""
    ring = chi.ring
    h = h_elem(sys, chi)
    lhs = h @ x_elem(sys, ring, beta, xi) @ h.inverse()
    rhs = x_elem(sys, ring, beta, chi.value(tuple(beta)) * xi)
    return lhs == rhs


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    return g @ h @ g.inverse() @ h.inverse()


def commutator_check(
    sys: RootSystem, ring: Ring, a: Root, b: Root, t: RingElem, u: RingElem
) -> bool:
    """[x_a(t), x_b(u)] = x_{a+b}(N(a,b) t u) when a+b is a root, identity otherwise."""
    a, b = tuple(a), tuple(b)
    if a == neg(b):
        raise ValueError("opposite roots are outside the commutator identity")
    c = commutator(x_elem(sys, ring, a, t), x_elem(sys, ring, b, u))
    s = add(a, b)
    if sys.is_root(s):
        N = _constants(sys)
        return c == x_elem(sys, ring, s, ring.from_int(N.n(a, b)) * t * u)
    return c.is_identity()


def congruence_member(g: GroupElement) -> bool:
    """True iff every entry of g - I lies in the radical (local rings only)."""
    ring = g.ring
    if not ring.local:
        raise RingError(f"{ring.descriptor}: locality not guaranteed")
    diff = g.mat - Mat.identity(ring, g.sys.n)
    return ring.mat_radical_all(diff.data)


# ---------------------------------------------------------------------------
# diagram automorphisms
# ---------------------------------------------------------------------------


def diagram_automorphisms(sys: RootSystem) -> dict[str, tuple[int, ...]]:
    """Named symmetries of the Dynkin diagram, as permutations of simple indices."""
    l = sys.rank
    out = {"identity": tuple(range(l))}
    if sys.kind == "A" and l >= 2:
        out["flip"] = tuple(l - 1 - i for i in range(l))
    elif sys.kind == "D":
        swap = list(range(l))
        swap[l - 2], swap[l - 1] = swap[l - 1], swap[l - 2]
        out["swap"] = tuple(swap)
        if l == 4:
            out["triality"] = (2, 1, 3, 0)  # alpha_1 -> alpha_3 -> alpha_4 -> alpha_1
    elif sys.kind == "E" and l == 6:
        out["flip"] = (5, 1, 4, 3, 2, 0)
    return out


def _check_diagram_symmetry(sys: RootSystem, perm: tuple[int, ...]) -> None:
    l = sys.rank
    if sorted(perm) != list(range(l)):
        raise ValueError("not a permutation of the simple roots")
    for i in range(l):
        for j in range(l):
            if sys.cartan[perm[i], perm[j]] != sys.cartan[i, j]:
                raise ValueError("permutation is not a diagram symmetry")


def apply_diagram(perm: tuple[int, ...], r: Root) -> Root:
    out = [0] * len(r)
    for i, c in enumerate(r):
        out[perm[i]] = c
    return tuple(out)


def _graph_signs(sys: RootSystem, perm: tuple[int, ...]) -> dict[Root, int]:
    """Column signs for the diagram-automorphism matrix, +1 on the simple roots."""
    N = _constants(sys)
    eps: dict[Root, int] = {s: 1 for s in sys.simple}
    for g in sorted(sys.positive, key=lambda r: (height(r), r)):
        if g in eps:
            continue
        for i, s in enumerate(sys.simple):
            rest = tuple(a - b for a, b in zip(g, s))
            if sys.is_root(rest) and rest in eps:
                num = N.n(s, rest)
                den = N.n(apply_diagram(perm, s), apply_diagram(perm, rest))
                eps[g] = eps[rest] * num * den
                break
        else:  # pragma: no cover - positive roots always split off a simple root
            raise ValueError(f"cannot split {g}")
    for g in list(eps):
        eps[neg(g)] = eps[g]
    return eps


def graph_matrix(sys: RootSystem, ring: Ring, delta: str | tuple[int, ...]) -> GroupElement:
    """Signed permutation realizing a diagram automorphism by conjugation."""
    if isinstance(delta, str):
        autos = diagram_automorphisms(sys)
        if delta not in autos:
            raise ValueError(f"{sys.name} has no diagram automorphism {delta!r}")
        name, perm = delta, autos[delta]
    else:
        name, perm = "custom", tuple(delta)
    _check_diagram_symmetry(sys, perm)
    eps = _graph_signs(sys, perm)
    n = sys.n
    A = np.zeros((n, n), dtype=np.int64)
    for r in sys.roots:
        A[root_index(sys, apply_diagram(perm, r)), root_index(sys, r)] = eps[r]
    for i in range(sys.rank):
        A[h_index(sys, perm[i]), h_index(sys, i)] = 1
    # conjugation must permute the generator set: A X_r A^T = eps(r) X_{delta r}
    N = _constants(sys)
    for r in sys.roots:
        lhs = A @ ad_x(sys, N, r) @ A.T
        if not np.array_equal(lhs, eps[r] * ad_x(sys, N, apply_diagram(perm, r))):
            raise RuntimeError(f"diagram matrix fails on {r}")  # pragma: no cover
    word = (("perm", name, {"matrix": A, "inv": False}),)
    return GroupElement(sys, ring, Mat.from_int_matrix(ring, A), word)
