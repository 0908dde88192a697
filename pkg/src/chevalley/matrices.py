"""Square matrices over the rings in :mod:`chevalley.rings`.

Storage is a numpy int64 stack of shape (depth, n, n) with canonical entries;
multiplication dispatches to the owning ring's exact kernel, so products over
Z/p^k, F_p[eps]/(eps^k) and extensions all reduce to a handful of integer
matmuls.
"""

from __future__ import annotations

import numpy as np

from .rings import Ring, RingElem, RingError


class Mat:
    __slots__ = ("ring", "n", "data")

    def __init__(self, ring: Ring, data: np.ndarray, *, reduce: bool = True):
        self.ring = ring
        if reduce:
            data = ring.mat_mod(data.astype(np.int64, copy=True))
        self.n = data.shape[1]
        data.setflags(write=False)
        self.data = data

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zeros(cls, ring: Ring, n: int) -> "Mat":
        return cls(ring, np.zeros((ring.depth, n, n), dtype=np.int64), reduce=False)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Mat":
        data = np.zeros((ring.depth, n, n), dtype=np.int64)
        data[0] = np.eye(n, dtype=np.int64) % ring.moduli[0]
        return cls(ring, data, reduce=False)

    @classmethod
    def from_int_matrix(cls, ring: Ring, intmat: np.ndarray) -> "Mat":
        return cls(ring, ring.lift_int_matrix(np.asarray(intmat, dtype=np.int64)), reduce=False)

    @classmethod
    def diagonal(cls, ring: Ring, elems) -> "Mat":
        elems = list(elems)
        n = len(elems)
        data = np.zeros((ring.depth, n, n), dtype=np.int64)
        for i, e in enumerate(elems):
            data[:, i, i] = e.vec
        return cls(ring, data, reduce=False)

    # -- arithmetic --------------------------------------------------------------

    def __matmul__(self, other: "Mat") -> "Mat":
        return Mat(self.ring, self.ring.mat_mul(self.data, other.data))

    def __add__(self, other: "Mat") -> "Mat":
        return Mat(self.ring, self.data + other.data)

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat(self.ring, self.data - other.data)

    def __neg__(self) -> "Mat":
        return Mat(self.ring, -self.data)

    def scale(self, e: RingElem) -> "Mat":
        one = np.ones((self.n, self.n), dtype=np.int64)
        svec3 = np.stack([c * one for c in e.vec])
        return Mat(self.ring, self.ring.mat_elemmul(svec3, self.data))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Mat)
            and self.ring == other.ring
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key
        return hash((self.ring.descriptor, self.data.tobytes()))

    # -- entry access ------------------------------------------------------------

    def get(self, i: int, j: int) -> RingElem:
        return self.ring.elem(tuple(int(c) for c in self.data[:, i, j]))

    def with_entry(self, i: int, j: int, value: RingElem) -> "Mat":
        data = self.data.copy()
        data[:, i, j] = value.vec
        return Mat(self.ring, data)

    def diagonal_elems(self) -> list[RingElem]:
        return [self.get(i, i) for i in range(self.n)]

    def is_identity(self) -> bool:
        return self == Mat.identity(self.ring, self.n)

    def is_diagonal(self) -> bool:
        off = self.data.copy()
        for d in range(off.shape[0]):
            np.fill_diagonal(off[d], 0)
        return not off.any()

    # -- conjugation by an invertible diagonal ------------------------------------

    def conjugate_by_diagonal(self, diag: list[RingElem]) -> "Mat":
        """Compute D · self · D^{-1} for D = diag(diag) without full matmuls."""
        ring = self.ring
        dvecs = np.stack([np.asarray(e.vec, dtype=np.int64) for e in diag], axis=1)
        dinv = np.stack([np.asarray(e.inv().vec, dtype=np.int64) for e in diag], axis=1)
        left = ring.mat_elemmul(dvecs[:, :, None], self.data)
        return Mat(ring, ring.mat_elemmul(left, dinv[:, None, :]))

    # -- inverses ------------------------------------------------------------------

    def inv(self) -> "Mat":
        """Exact inverse via elimination on unit pivots (local-ring safe)."""
        ring, n = self.ring, self.n
        A = [[self.get(i, j) for j in range(n)] for i in range(n)]
        B = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if ring.is_unit_vec(A[r][c].vec)), None)
            if piv is None:
                raise RingError("matrix is not invertible (no unit pivot)")
            A[c], A[piv] = A[piv], A[c]
            B[c], B[piv] = B[piv], B[c]
            f = A[c][c].inv()
            A[c] = [f * x for x in A[c]]
            B[c] = [f * x for x in B[c]]
            for r in range(n):
                if r != c and A[r][c].vec != ring.zero.vec:
                    g = A[r][c]
                    A[r] = [x - g * y for x, y in zip(A[r], A[c])]
                    B[r] = [x - g * y for x, y in zip(B[r], B[c])]
        data = np.zeros((ring.depth, n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                data[:, i, j] = B[i][j].vec
        return Mat(ring, data, reduce=False)

    def neumann_inv(self) -> "Mat":
        """Inverse of I - N with nilpotent N; valid when self = I mod radical."""
        ring = self.ring
        if ring.nilpotency is None:
            raise RingError("neumann_inv needs a local ring")
        eye = Mat.identity(ring, self.n)
        N = eye - self
        acc, power = eye, N
        for _ in range(ring.nilpotency - 1):
            acc = acc + power
            power = power @ N
        return acc

    def is_invertible(self) -> bool:
        try:
            self.inv()
            return True
        except RingError:
            return False

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        rows = [
            [self.ring.elem_to_json(self.get(i, j)) for j in range(self.n)]
            for i in range(self.n)
        ]
        return {"n": self.n, "ring": self.ring.descriptor, "rows": rows}

    @classmethod
    def from_json(cls, ring: Ring, obj: dict) -> "Mat":
        n = int(obj["n"])
        if obj.get("ring") not in (ring.descriptor, "int"):
            raise RingError(f"matrix ring {obj.get('ring')!r} != {ring.descriptor!r}")
        data = np.zeros((ring.depth, n, n), dtype=np.int64)
        for i, row in enumerate(obj["rows"]):
            if len(row) != n:
                raise RingError("ragged matrix rows")
            for j, entry in enumerate(row):
                data[:, i, j] = ring.elem_from_json(entry).vec
        return cls(ring, data, reduce=False)

    def __repr__(self) -> str:
        return f"Mat({self.ring.descriptor}, n={self.n})"
