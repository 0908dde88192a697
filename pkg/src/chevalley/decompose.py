"""Big-cell normal form: compose the factorization and recover its parameters.

The normal form is

    X = lam * t_1(s_1) ... t_l(s_l) * x_{b_1}(t_1) ... x_{b_m}(t_m)
        * x_{-b_1}(u_1) ... x_{-b_m}(u_m)

over a local ring with nilpotent radical J, where lam and the s_i are units
congruent to 1 mod J and the t_i, u_i lie in J.  Exactly n + 1 matrix cells
pin the n + 1 parameters: one diagonal cell per torus degree of freedom and
one cell for each unipotent parameter, laid out along the marked root chain.
Recovery solves the cell equations by a J-adic fixed point: each unknown's
designated cell carries it with a unit coefficient while every other
occurrence is damped by a radical factor, so each sweep gains one power of J
and nilpotency forces exact termination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .group import GroupElement, scalar_elem, t_k, x_elem
from .lie import ad_x, h_index, root_index, structure_constants
from .matrices import Mat
from .rings import Ring, RingElem, RingError, is_unit
from .roots import (
    MarkedSequence,
    Root,
    RootSystem,
    add,
    height,
    marked_sequence,
    neg,
    sub,
)


class RecoveryError(RingError):
    pass


@dataclass(frozen=True)
class FactoredElement:
    ring: Ring
    lam: RingElem
    s: tuple[RingElem, ...]
    t: tuple[RingElem, ...]
    u: tuple[RingElem, ...]

    def to_json(self) -> dict:
        r = self.ring
        return {
            "lambda": r.elem_to_json(self.lam),
            "s": [r.elem_to_json(x) for x in self.s],
            "t": [r.elem_to_json(x) for x in self.t],
            "u": [r.elem_to_json(x) for x in self.u],
        }

    @classmethod
    def from_json(cls, ring: Ring, obj: dict) -> "FactoredElement":
        return cls(
            ring=ring,
            lam=ring.elem_from_json(obj["lambda"]),
            s=tuple(ring.elem_from_json(x) for x in obj["s"]),
            t=tuple(ring.elem_from_json(x) for x in obj["t"]),
            u=tuple(ring.elem_from_json(x) for x in obj["u"]),
        )

    @classmethod
    def trivial(cls, sys: RootSystem, ring: Ring) -> "FactoredElement":
        return cls(
            ring=ring,
            lam=ring.one,
            s=(ring.one,) * sys.rank,
            t=(ring.zero,) * sys.m,
            u=(ring.zero,) * sys.m,
        )


def torus_exponents(sys: RootSystem, mu: Root) -> tuple[int, ...]:
    """Exponent of each s_i in the diagonal value at root position mu."""
    return tuple(mu)


def _torus_diag(sys: RootSystem, f: FactoredElement) -> list[RingElem]:
    ring = f.ring
    svals = list(f.s)
    diag = []
    for p in sys.positive:
        v = f.lam
        for sv, c in zip(svals, p):
            if c:
                v = v * sv**c
        diag += [v, v.inv() * f.lam * f.lam]
    diag += [f.lam] * sys.rank
    return diag


def compose(sys: RootSystem, f: FactoredElement) -> GroupElement:
    """Multiply out the normal form exactly (word recorded)."""
    ring = f.ring
    if not is_unit(f.lam) or not all(is_unit(x) for x in f.s):
        raise RingError("lambda and the torus parameters must be units")
    g = scalar_elem(sys, ring, f.lam)
    for k in range(sys.rank):
        g = g @ t_k(sys, ring, k, f.s[k])
    for i, p in enumerate(sys.positive):
        g = g @ x_elem(sys, ring, p, f.t[i])
    for i, p in enumerate(sys.positive):
        g = g @ x_elem(sys, ring, neg(p), f.u[i])
    return g


def _compose_inverse_mat(sys: RootSystem, f: FactoredElement) -> Mat:
    ring = f.ring
    out = Mat.identity(ring, sys.n)
    for i in reversed(range(sys.m)):
        out = out @ x_elem(sys, ring, neg(sys.positive[i]), -f.u[i]).mat
    for i in reversed(range(sys.m)):
        out = out @ x_elem(sys, ring, sys.positive[i], -f.t[i]).mat
    inv = FactoredElement(
        ring=ring,
        lam=f.lam.inv(),
        s=tuple(x.inv() for x in f.s),
        t=(ring.zero,) * sys.m,
        u=(ring.zero,) * sys.m,
    )
    return out @ Mat.diagonal(ring, _torus_diag(sys, inv))


# ---------------------------------------------------------------------------
# designated positions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DesignatedCell:
    row: int
    col: int
    kind: str          # "diag" | "t" | "u"
    stage: int
    root: Root         # pinned root (t/u) or the diagonal root (diag)
    index: int         # positive-root index (t/u) or diagonal slot (diag)


@dataclass(frozen=True)
class PositionTable:
    system: str
    cells: tuple[DesignatedCell, ...]
    diag_roots: tuple[Root, ...]
    # integer inverse of the exponent matrix rows (1, diag_root): recovers
    # (lam, s_1..s_l) multiplicatively from the l+1 diagonal values
    exponent_inverse: tuple[tuple[int, ...], ...]

    def cell_set(self) -> set[tuple[int, int]]:
        return {(c.row, c.col) for c in self.cells}


def _exponent_inverse(sys: RootSystem, diag_roots) -> tuple[tuple[int, ...], ...]:
    l = sys.rank
    rows = [[1] + [-c for c in rho] for rho in diag_roots]
    M = [[Fraction(x) for x in row] for row in rows]
    inv = [[Fraction(int(i == j)) for j in range(l + 1)] for i in range(l + 1)]
    for c in range(l + 1):
        piv = next((r for r in range(c, l + 1) if M[r][c] != 0), None)
        if piv is None:
            raise RecoveryError("diagonal exponent system is singular")
        M[c], M[piv] = M[piv], M[c]
        inv[c], inv[piv] = inv[piv], inv[c]
        f = M[c][c]
        M[c] = [x / f for x in M[c]]
        inv[c] = [x / f for x in inv[c]]
        for r in range(l + 1):
            if r != c and M[r][c] != 0:
                g = M[r][c]
                M[r] = [x - g * y for x, y in zip(M[r], M[c])]
                inv[r] = [x - g * y for x, y in zip(inv[r], inv[c])]
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise RecoveryError("exponent system is not unimodular")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


@lru_cache(maxsize=None)
def _positions(kind: str, rank: int) -> PositionTable:
    from .roots import build_root_system

    sys = build_root_system(kind, rank)
    seq = marked_sequence(sys)
    gammas = seq.gammas
    l = sys.rank
    cells: list[DesignatedCell] = []
    pinned_t: dict[Root, DesignatedCell] = {}
    pinned_u: dict[Root, DesignatedCell] = {}
    stage = 0

    def ridx(r: Root) -> int:
        return root_index(sys, r)

    def pin(root: Root, trow: int, tcol: int, urow: int, ucol: int, stage: int) -> None:
        i = sys.pos_index[root]
        pinned_t[root] = DesignatedCell(trow, tcol, "t", stage, root, i)
        pinned_u[root] = DesignatedCell(urow, ucol, "u", stage, root, i)

    # chain pair scan: gamma_i - gamma_s pins one positive root per first pair
    for s in range(1, len(gammas)):
        stage += 1
        for i in range(s):
            d = sub(gammas[i], gammas[s])
            if sys.is_root(d) and d not in pinned_t:
                pin(d, ridx(neg(gammas[s])), ridx(neg(gammas[i])),
                    ridx(neg(gammas[i])), ridx(neg(gammas[s])), stage)

    # chain members not seen as differences: anchor on an earlier member, or
    # (for the maximal root) on the Cartan rows/columns
    stage += 1
    for j, g in enumerate(gammas):
        if g in pinned_t:
            continue
        anchor = None
        for a in range(j):
            d = sub(gammas[a], g)
            if sys.is_root(d):
                anchor = gammas[a]
                delta = d
                break
        if anchor is not None:
            pin(g, ridx(neg(delta)), ridx(neg(anchor)), ridx(neg(anchor)), ridx(neg(delta)), stage)
            continue
        qt = max(q for q, c in enumerate(g) if c in (1, 2))
        qu = max(q for q in range(l) if sys.pairing(g, sys.simple[q]) in (1, 2))
        i = sys.pos_index[g]
        pinned_t[g] = DesignatedCell(h_index(sys, qt), ridx(neg(g)), "t", stage, g, i)
        pinned_u[g] = DesignatedCell(ridx(neg(g)), h_index(sys, qu), "u", stage, g, i)

    # exceptions, by height, anchored per the marked-sequence entries
    stage += 1
    for e in seq.exceptions:
        pin(e.beta, ridx(neg(e.delta)), ridx(neg(e.anchor)),
            ridx(neg(e.anchor)), ridx(neg(e.delta)), stage)

    if set(pinned_t) != set(sys.positive):  # pragma: no cover - coverage bug guard
        missing = set(sys.positive) - set(pinned_t)
        raise RecoveryError(f"unpinned unipotent parameters: {sorted(missing)}")

    # diagonal cells: the first l+1 chain members, padded (A_l) with the
    # earliest chain differences until the exponent system is unimodular
    diag_roots = list(gammas[: l + 1])
    if len(diag_roots) < l + 1:
        for s in range(1, len(gammas)):
            for i in range(s):
                d = sub(gammas[i], gammas[s])
                if sys.is_root(d) and d not in diag_roots:
                    diag_roots.append(d)
                    if len(diag_roots) == l + 1:
                        break
            if len(diag_roots) == l + 1:
                break
    expinv = _exponent_inverse(sys, diag_roots)

    for k, rho in enumerate(diag_roots):
        cells.append(DesignatedCell(ridx(neg(rho)), ridx(neg(rho)), "diag", 0, rho, k))
    order = sorted(sys.positive, key=lambda r: (height(r), r))
    for r in order:
        cells.append(pinned_t[r])
        cells.append(pinned_u[r])

    table = PositionTable(
        system=sys.name,
        cells=tuple(cells),
        diag_roots=tuple(diag_roots),
        exponent_inverse=expinv,
    )
    assert len(table.cells) == sys.n + 1
    assert len(table.cell_set()) == sys.n + 1
    return table


def designated_positions(sys: RootSystem, seq: MarkedSequence | None = None) -> PositionTable:
    if seq is not None and seq.system != sys.name:
        raise RecoveryError("marked sequence belongs to a different system")
    return _positions(sys.kind, sys.rank)


# ---------------------------------------------------------------------------
# recovery
# ---------------------------------------------------------------------------


def _lead_coefficient(sys: RootSystem, cell: DesignatedCell) -> int:
    """Integer coefficient of the pinned parameter in the gauge residual."""
    if cell.kind == "diag":
        return 1
    r = cell.root if cell.kind == "t" else neg(cell.root)
    N = structure_constants(sys)
    return int(ad_x(sys, N, r)[cell.row, cell.col])


def recover(
    sys: RootSystem,
    X: GroupElement | Mat,
    *,
    require_exact: bool = True,
) -> FactoredElement:
    """Read the n + 1 designated cells of X and solve for the parameters.

    With require_exact the recovered factorization must reproduce X entirely
    (raises RecoveryError otherwise); without it only the designated cells are
    matched, which is the gauge used by the standardness pipeline.
    """
    mat = X.mat if isinstance(X, GroupElement) else X
    ring = mat.ring
    if not ring.local:
        raise RecoveryError("recovery needs a local ring")
    table = designated_positions(sys)
    l = sys.rank

    for cell in table.cells:
        if cell.kind == "diag" and not is_unit(mat.get(cell.row, cell.col)):
            raise RecoveryError("not in normal form: designated diagonal entry is not a unit")
        if cell.kind != "diag":
            c = _lead_coefficient(sys, cell)
            if not ring.is_unit_vec(ring.from_int(c).vec):  # pragma: no cover - guarded by design
                raise RecoveryError(f"leading coefficient {c} is not a unit")

    f = FactoredElement.trivial(sys, ring)
    dvals = [ring.one] * (l + 1)
    sweeps = (ring.nilpotency or 1) + 2
    converged = False
    for _ in range(sweeps):
        W = _compose_inverse_mat(sys, f) @ mat
        stable = True
        tnew, unew = list(f.t), list(f.u)
        for cell in table.cells:
            w = W.get(cell.row, cell.col)
            if cell.kind == "diag":
                if w != ring.one:
                    stable = False
                    dvals[cell.index] = dvals[cell.index] * w
            else:
                if w != ring.zero:
                    stable = False
                    coeff = ring.from_int(_lead_coefficient(sys, cell))
                    incr = w * coeff.inv()
                    if cell.kind == "t":
                        tnew[cell.index] = tnew[cell.index] + incr
                    else:
                        unew[cell.index] = unew[cell.index] + incr
        if stable:
            converged = True
            break
        lam_s = []
        for row in table.exponent_inverse:
            v = ring.one
            for d, e in zip(dvals, row):
                if e:
                    v = v * d**e
            lam_s.append(v)
        f = FactoredElement(ring=ring, lam=lam_s[0], s=tuple(lam_s[1:]), t=tuple(tnew), u=tuple(unew))
    if not converged:
        raise RecoveryError("recovery did not converge; not in normal form")
    if require_exact and compose(sys, f).mat != mat:
        raise RecoveryError("matrix is not in the big-cell normal form")
    return f


def gauge_normal_form(sys: RootSystem, C: GroupElement) -> tuple[GroupElement, GroupElement]:
    """Return (D, C') with D in normal form, C' = D^{-1} C and C' matching the
    identity at every designated cell."""
    f = recover(sys, C, require_exact=False)
    D = compose(sys, f)
    Cp = GroupElement(sys, C.ring, _compose_inverse_mat(sys, f) @ C.mat, None)
    return D, Cp


# ---------------------------------------------------------------------------
# symbolic entry formula
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EntryFormula:
    """Entry of the normal-form product at one matrix cell, as a formal sum.

    Each term is (integer coefficient, factors) with factors a tuple of
    ("t"|"u", positive-root index); the whole sum is multiplied by the torus
    diagonal value of the row.  Terms whose path crosses the Cartan subspace
    carry integer coefficients beyond +-1.
    """

    system: str
    row: int
    col: int
    row_label: tuple
    col_label: tuple
    terms: tuple[tuple[int, tuple[tuple[str, int], ...]], ...]

    def evaluate(self, sys: RootSystem, f: FactoredElement) -> RingElem:
        ring = f.ring
        d_row = _torus_diag(sys, f)[self.row]
        total = ring.zero
        for coeff, factors in self.terms:
            v = ring.from_int(coeff)
            for kind, idx in factors:
                v = v * (f.t[idx] if kind == "t" else f.u[idx])
            total = total + v
        return d_row * total


def entry_formula(sys: RootSystem, mu, nu) -> EntryFormula:
    """Formal description of the compose entry at (row mu, column nu).

    mu and nu are roots, or ("h", i) for a Cartan row/column.  A path starts
    at the column's basis vector and applies the unipotent factors right to
    left, each step a bracket with one factor's generator; only paths ending
    on the row's basis vector contribute.  Steps through the Cartan subspace
    carry the bracket's integer coefficients, so such terms are not just +-1.
    """
    N = structure_constants(sys)
    mu_l = ("h", mu[1]) if isinstance(mu[0], str) else ("x", tuple(mu))
    nu_l = ("h", nu[1]) if isinstance(nu[0], str) else ("x", tuple(nu))
    row = h_index(sys, mu_l[1]) if mu_l[0] == "h" else root_index(sys, mu_l[1])
    col = h_index(sys, nu_l[1]) if nu_l[0] == "h" else root_index(sys, nu_l[1])

    # factors in the order they act on a column vector (rightmost first)
    applied: list[tuple[str, int, Root]] = []
    for i in reversed(range(sys.m)):
        applied.append(("u", i, neg(sys.positive[i])))
    for i in reversed(range(sys.m)):
        applied.append(("t", i, sys.positive[i]))

    # state: ("x", root) or ("h", coefficient vector over h_1..h_l)
    if nu_l[0] == "h":
        start = ("h", tuple(1 if q == nu_l[1] else 0 for q in range(sys.rank)))
    else:
        start = ("x", nu_l[1])

    terms: list[tuple[int, tuple[tuple[str, int], ...]]] = []

    def final_coeff(state) -> int:
        if mu_l[0] == "h":
            return state[1][mu_l[1]] if state[0] == "h" else 0
        return 1 if state == mu_l else 0

    def step(state, r: Root):
        """One application of X_r: yields (new state, integer coefficient)."""
        if state[0] == "x":
            src = state[1]
            s = add(src, r)
            if sys.is_root(s):
                yield ("x", s), N.n(r, src)
            elif all(c == 0 for c in s):
                # [x_r, x_{-r}] = h_r; coroot coefficients = the coefficients of r
                yield ("h", tuple(r)), 1
        else:
            hv = state[1]
            c = -sum(h * sys.pairing(tuple(r), sys.simple[q]) for q, h in enumerate(hv))
            if c:
                yield ("x", tuple(r)), c

    def dfs(pos: int, state, coeff: int, used: list) -> None:
        if pos == len(applied):
            c = coeff * final_coeff(state)
            if c:
                terms.append((c, tuple(used)))
            return
        kind, idx, r = applied[pos]
        dfs(pos + 1, state, coeff, used)
        for st1, c1 in step(state, r):
            used.append((kind, idx))
            dfs(pos + 1, st1, coeff * c1, used)
            # quadratic term of the same factor: only the route through the
            # Cartan subspace survives, with an even product, so the series'
            # one half cancels to an integer
            for st2, c2 in step(st1, r):
                used.append((kind, idx))
                dfs(pos + 1, st2, coeff * c1 * c2 // 2, used)
                used.pop()
            used.pop()

    dfs(0, start, 1, [])
    merged: dict[tuple, int] = {}
    for c, fs in terms:
        merged[fs] = merged.get(fs, 0) + c
    final = tuple(
        (c, fs) for fs, c in sorted(merged.items(), key=lambda kv: (len(kv[0]), kv[0])) if c
    )
    return EntryFormula(
        system=sys.name,
        row=row,
        col=col,
        row_label=mu_l,
        col_label=nu_l,
        terms=final,
    )
