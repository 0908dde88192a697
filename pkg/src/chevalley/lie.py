"""Chevalley basis data: structure constants and adjoint-representation matrices.

Basis ordering of the n = l + 2m dimensional module: for the i-th positive
root (0-based, in the system's fixed enumeration) the vectors x_{+root} and
x_{-root} sit at columns 2i and 2i+1; the Cartan generators h_1..h_l follow.

Structure-constant signs come from a bilinear +-1 cocycle on the root lattice
(defined by its values on pairs of simple roots), twisted by root-sign parity
so that [x_a, x_{-a}] = +h_a holds on the nose.  The choice is deterministic
and is validated by the exhaustive Jacobi tests.
"""

from __future__ import annotations

import numpy as np

from .roots import Root, RootSystem, add, height, neg

BasisElem = tuple  # ("x", root) | ("h", i)


class StructureConstants:
    """Signs N(a, b) with [x_a, x_b] = N(a, b) x_{a+b} when a + b is a root."""

    def __init__(self, sys: RootSystem):
        self.sys = sys
        l = sys.rank
        # eps(a_i, a_i) = -1; eps(a_i, a_j) = (-1)^(a_i, a_j) for i < j; else +1
        B = np.zeros((l, l), dtype=np.int64)
        for i in range(l):
            B[i, i] = 1
            for j in range(i + 1, l):
                B[i, j] = sys.cartan[i, j] % 2
        self._B = B

    def n(self, a: Root, b: Root) -> int:
        s = add(a, b)
        if not self.sys.is_root(s):
            raise ValueError(f"{a} + {b} is not a root")
        e = int(np.asarray(a) @ self._B @ np.asarray(b)) % 2
        sign = -1 if e else 1
        # parity twist: keeps the opposite-root bracket normalized to +h_a
        if height(a) < 0:
            sign = -sign
        if height(b) < 0:
            sign = -sign
        if height(s) < 0:
            sign = -sign
        return sign

    def bracket(self, u: BasisElem, v: BasisElem) -> dict[BasisElem, int]:
        """Bracket of two basis elements as a sparse coefficient map."""
        sys = self.sys
        out: dict[BasisElem, int] = {}
        if u[0] == "h" and v[0] == "h":
            return out
        if u[0] == "h":
            out[v] = sys.pairing(v[1], sys.simple[u[1]])
            return out
        if v[0] == "h":
            out[u] = -sys.pairing(u[1], sys.simple[v[1]])
            return out
        a, b = u[1], v[1]
        s = add(a, b)
        if all(c == 0 for c in s):
            # coroot coefficients equal root coefficients (simply laced)
            pos = a if height(a) > 0 else neg(a)
            sign = 1 if height(a) > 0 else -1
            for i, c in enumerate(pos):
                if c:
                    out[("h", i)] = sign * c
            return out
        if sys.is_root(s):
            out[("x", s)] = self.n(a, b)
        return out


def structure_constants(sys: RootSystem) -> StructureConstants:
    if "N" not in sys._ad_cache:
        sys._ad_cache["N"] = StructureConstants(sys)
    return sys._ad_cache["N"]


# ---------------------------------------------------------------------------
# basis indexing
# ---------------------------------------------------------------------------


def root_index(sys: RootSystem, r: Root) -> int:
    rt = tuple(r)
    if height(rt) > 0:
        return 2 * sys.pos_index[rt]
    return 2 * sys.pos_index[neg(rt)] + 1


def h_index(sys: RootSystem, i: int) -> int:
    return 2 * sys.m + i


def basis_elements(sys: RootSystem) -> list[BasisElem]:
    out: list[BasisElem] = []
    for p in sys.positive:
        out.append(("x", p))
        out.append(("x", neg(p)))
    out += [("h", i) for i in range(sys.rank)]
    return out


def index_of(sys: RootSystem, elem: BasisElem) -> int:
    return root_index(sys, elem[1]) if elem[0] == "x" else h_index(sys, elem[1])


# ---------------------------------------------------------------------------
# matrices (plain integer numpy arrays; rings lift them as needed)
# ---------------------------------------------------------------------------


def ad_x(sys: RootSystem, N: StructureConstants, r: Root) -> np.ndarray:
    """Matrix of ad x_r on the Chevalley basis; columns index the source vector."""
    key = ("ad", tuple(r))
    if key not in sys._ad_cache:
        n = sys.n
        X = np.zeros((n, n), dtype=np.int64)
        for col, u in enumerate(basis_elements(sys)):
            for t, c in N.bracket(("x", tuple(r)), u).items():
                X[index_of(sys, t), col] += c
        X.setflags(write=False)
        sys._ad_cache[key] = X
    return sys._ad_cache[key]


def ad_x_squared(sys: RootSystem, N: StructureConstants, r: Root) -> np.ndarray:
    key = ("ad2", tuple(r))
    if key not in sys._ad_cache:
        X = ad_x(sys, N, r)
        X2 = X @ X
        X2.setflags(write=False)
        sys._ad_cache[key] = X2
    return sys._ad_cache[key]


def t_matrix(sys: RootSystem, i: int) -> np.ndarray:
    """Diagonal matrix reading off the alpha_i coefficient of each root position."""
    if not 0 <= i < sys.rank:
        raise ValueError(f"simple-root index {i} out of range")
    n = sys.n
    T = np.zeros((n, n), dtype=np.int64)
    for k, p in enumerate(sys.positive):
        T[2 * k, 2 * k] = p[i]
        T[2 * k + 1, 2 * k + 1] = -p[i]
    return T


def h_diagonal(sys: RootSystem, r: Root) -> np.ndarray:
    """Diagonal of H_r = [X_r, X_{-r}]: pairing <beta, r> at each root position."""
    d = np.zeros(sys.n, dtype=np.int64)
    for k, p in enumerate(sys.positive):
        d[2 * k] = sys.pairing(p, r)
        d[2 * k + 1] = -sys.pairing(p, r)
    return d


def _bracket_combo(N: StructureConstants, u: BasisElem, combo: dict[BasisElem, int]) -> dict[BasisElem, int]:
    out: dict[BasisElem, int] = {}
    for v, c in combo.items():
        for t, c2 in N.bracket(u, v).items():
            out[t] = out.get(t, 0) + c * c2
    return {k: v for k, v in out.items() if v}


def jacobi_defect(N: StructureConstants, u: BasisElem, v: BasisElem, w: BasisElem) -> dict[BasisElem, int]:
    """[u,[v,w]] + [v,[w,u]] + [w,[u,v]] as a coefficient map (empty iff zero)."""
    acc: dict[BasisElem, int] = {}
    for a, b, c in ((u, v, w), (v, w, u), (w, u, v)):
        for t, coeff in _bracket_combo(N, a, N.bracket(b, c)).items():
            acc[t] = acc.get(t, 0) + coeff
    return {k: val for k, val in acc.items() if val}
