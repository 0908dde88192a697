import random

import numpy as np
import pytest

from chevalley.decompose import compose, designated_positions
from chevalley.group import GroupElement, graph_matrix, x_elem
from chevalley.lie import ad_x, structure_constants, t_matrix
from chevalley.matrices import Mat
from chevalley.rings import make_ring
from chevalley.roots import neg, system
from chevalley.standardize import (
    build_commutation_system,
    build_linearized_system,
    conjugation_defect,
    kernel_dimension,
    rank_mod_p,
    standardness_certificate,
)
from chevalley.suites import eq3_element, random_factored

A2 = system("A2")
Z27 = make_ring("zmod:3^3")


def naive_block_assembly(sys, p):
    """Independent loop-built copy of the linearized system (oracle)."""
    table = designated_positions(sys)
    zeros = table.cell_set()
    n = sys.n
    N = structure_constants(sys)
    zidx = {}
    for i in range(n):
        for j in range(n):
            if (i, j) not in zeros:
                zidx[(i, j)] = len(zidx)
    blocks = [s for s in sys.simple] + [neg(s) for s in sys.simple]
    cols_per_block = []
    rows = []
    for e in blocks:
        X = ad_x(sys, N, e)
        xe = np.eye(n, dtype=np.int64) + X + (X @ X) // 2
        mats = [t_matrix(sys, i) for i in range(sys.rank)]
        mats += [ad_x(sys, N, r) for r in sys.positive if r != e]
        mats += [ad_x(sys, N, neg(r)) for r in sys.positive if neg(r) != e]
        cols_per_block.append(len(mats))
        blk = np.zeros((n * n, len(zidx) + len(mats)), dtype=np.int64)
        for r in range(n):
            for c in range(n):
                eq = r * n + c
                for q in range(n):
                    if xe[q, c] and (r, q) in zidx:
                        blk[eq, zidx[(r, q)]] += xe[q, c]
                    if xe[r, q] and (q, c) in zidx:
                        blk[eq, zidx[(q, c)]] -= xe[r, q]
        for k, M in enumerate(mats):
            blk[:, len(zidx) + k] -= (xe @ M).reshape(-1)
        rows.append(blk)
    total_abc = sum(cols_per_block)
    A = np.zeros((len(blocks) * n * n, len(zidx) + total_abc), dtype=np.int64)
    off = len(zidx)
    for bi, blk in enumerate(rows):
        A[bi * n * n:(bi + 1) * n * n, : len(zidx)] = blk[:, : len(zidx)]
        nab = blk.shape[1] - len(zidx)
        A[bi * n * n:(bi + 1) * n * n, off:off + nab] = blk[:, len(zidx):]
        off += nab
    return A % p


def test_linearized_system_census_a2():
    lin = build_linearized_system(A2, 3)
    assert lin.z_unknowns == 64 - 9 == 55
    # per block: 2 torus + 3 + 3 unipotent coefficients, one dropped
    assert lin.abc_unknowns == 4 * 7
    assert lin.unknowns == 83
    assert lin.equations == 4 * 64


def test_linearized_system_census_a3_d4():
    a3 = build_linearized_system(system("A3"), 5)
    assert a3.z_unknowns == 15 * 15 - 16
    assert len(a3.blocks) == 6
    d4 = build_linearized_system(system("D4"), 3)
    assert len(d4.blocks) == 8
    assert d4.equations == 8 * 28 * 28


def test_matrix_assembly_matches_naive_oracle():
    lin = build_linearized_system(A2, 3)
    oracle = naive_block_assembly(A2, 3)
    assert np.array_equal(lin.matrix, oracle)


@pytest.mark.parametrize("token,p", [("A2", 3), ("A2", 5), ("A3", 3), ("A3", 5)])
def test_kernel_dimension_zero(token, p):
    lin = build_linearized_system(system(token), p)
    assert kernel_dimension(lin) == 0


@pytest.mark.parametrize("p", [3, 5])
def test_commutation_control_kernel_is_scalars(p):
    lin = build_commutation_system(A2, p)
    assert lin.z_unknowns == 64
    assert kernel_dimension(lin) == 1
    # independent cross-check via numpy kron in column-major convention
    n = A2.n
    N = structure_constants(A2)
    rows = []
    for r in A2.roots:
        X = ad_x(A2, N, r)
        xe = np.eye(n, dtype=np.int64) + X + (X @ X) // 2
        rows.append(np.kron(xe.T, np.eye(n, dtype=np.int64)) - np.kron(np.eye(n, dtype=np.int64), xe))
    M = np.vstack(rows) % p
    assert n * n - rank_mod_p(M, p) == 1


def test_rank_mod_p_small_cases():
    M = np.array([[1, 2], [2, 4]])
    assert rank_mod_p(M, 5) == 1
    assert rank_mod_p(np.eye(3, dtype=np.int64), 3) == 3
    assert rank_mod_p(np.zeros((2, 2), dtype=np.int64), 3) == 0


def test_conjugation_defect_identity_cases():
    g = GroupElement.identity(A2, Z27)
    for a in A2.simple:
        defect, cong = conjugation_defect(A2, g, a)
        assert defect.is_identity()
        assert cong
    # same root subgroup commutes
    x = x_elem(A2, Z27, (1, 0), Z27.from_int(3))
    defect, cong = conjugation_defect(A2, x, (1, 0))
    assert defect.is_identity() and cong


def test_conjugation_defect_of_congruence_elements():
    rng = random.Random(0)
    for _ in range(5):
        g = eq3_element(A2, Z27, rng)
        for a in list(A2.simple) + [neg(s) for s in A2.simple]:
            _, cong = conjugation_defect(A2, g, a)
            assert cong


def test_certificate_identity_is_standard():
    cert = standardness_certificate(A2, GroupElement.identity(A2, Z27))
    assert cert.standard
    # the witness word is the all-trivial factorization
    assert all(f.get("param", f.get("value", 1)) in (0, 1) for f in cert.d_word
               if f["kind"] in ("x", "scalar"))


def test_gauge_residual_over_dual_numbers():
    ring = make_ring("trunc:3:2")
    rng = random.Random(5)
    g = eq3_element(A2, ring, rng)
    j = ring.eps  # j^2 = 0
    pert = Mat.identity(ring, A2.n).with_entry(0, 2, j)
    from chevalley.decompose import gauge_normal_form

    _, resid = gauge_normal_form(A2, GroupElement(A2, ring, g.mat @ pert, None))
    assert not resid.is_identity()
    assert resid.mat == pert


def test_certificate_standard_for_eq3_elements():
    rng = random.Random(1)
    for _ in range(10):
        g = eq3_element(A2, Z27, rng)
        cert = standardness_certificate(A2, g)
        assert cert.standard
        assert cert.residual_zero
        assert cert.d_word is not None


def test_certificate_rejects_off_group_perturbation():
    rng = random.Random(2)
    g = eq3_element(A2, Z27, rng)
    j = Z27.from_int(9)
    pert = Mat.identity(Z27, A2.n).with_entry(0, 2, j)
    cert = standardness_certificate(A2, GroupElement(A2, Z27, g.mat @ pert, None))
    assert not cert.standard
    assert cert.verdict == "nonstandard-or-outside-scope"


def test_certificate_rejects_non_congruence_without_residue_data():
    g = x_elem(A2, Z27, (1, 0), Z27.one)
    cert = standardness_certificate(A2, g)
    assert not cert.standard


def test_certificate_with_supplied_residue_data():
    rng = random.Random(3)
    f = random_factored(A2, Z27, rng)
    inner = compose(A2, f)
    delta = "flip"
    a_delta = graph_matrix(A2, Z27, delta)
    # residue-level witness: a unipotent word lifted to the ring
    word = (("x", (1, 0), Z27.one), ("x", (0, 1), Z27.from_int(2)))
    from chevalley.group import word_to_matrix

    gp = GroupElement(A2, Z27, word_to_matrix(A2, Z27, word), None)
    C = a_delta @ gp @ inner
    cert = standardness_certificate(A2, C, delta=delta, residue_word=word)
    assert cert.standard
    assert cert.delta == "flip"
    obj = cert.to_json()
    assert obj["verdict"] == "standard"
    assert obj["residual_norm_zero"] is True


def test_certificate_over_truncated_polynomials():
    from chevalley.suites import suite_certificate

    rep = suite_certificate("A2", "trunc:3:2", count=10, seed=6)
    assert rep["ok"], rep["failures"]


def test_certificate_certified_elements_have_congruent_defects():
    rng = random.Random(4)
    g = eq3_element(A2, Z27, rng)
    cert = standardness_certificate(A2, g)
    assert cert.standard
    for a in list(A2.simple) + [neg(s) for s in A2.simple]:
        _, cong = conjugation_defect(A2, g, a)
        assert cong
