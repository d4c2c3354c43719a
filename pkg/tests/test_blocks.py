import numpy as np
import pytest

from dualdrazin import (
    BlockInstance,
    DualMatrix,
    THEOREMS,
    abco_drazin,
    abio_drazin,
    bipartite_drazin,
    check_hypotheses,
    cline,
    closed_form,
    dmul,
    dual_drazin,
    sum_pq_zero,
    tri_drazin,
)
from dualdrazin.errors import HypothesisViolated, ShapeMismatch

from conftest import rand_int_dual, rel_err


def dual_eye(n):
    return DualMatrix.identity(n)


def test_cline_identity_blocks():
    assert (cline(dual_eye(3), dual_eye(3)) - dual_eye(3)).norm() <= 1e-12


def test_cline_zero_factor():
    a = rand_int_dual(np.random.default_rng(0), 3, 2)
    assert cline(a, DualMatrix.zeros(2, 3)).norm() == 0


def test_cline_rectangular_matches_direct(rng):
    for _ in range(10):
        a = rand_int_dual(rng, 3, 2)
        b = rand_int_dual(rng, 2, 3)
        want = dual_drazin(dmul(a, b)).inverse
        assert rel_err(cline(a, b), want) <= 1e-9


def test_cline_with_identity_reduces_to_dual_drazin(rng):
    a = rand_int_dual(rng, 3)
    want = dual_drazin(a).inverse
    assert rel_err(cline(a, dual_eye(3)), want) <= 1e-9


def test_tri_zero_coupling_is_block_diagonal(rng):
    a = rand_int_dual(rng, 2)
    d = rand_int_dual(rng, 3)
    out = tri_drazin(a, DualMatrix.zeros(2, 3), d)
    assert np.allclose(out.std[:2, 2:], 0) and np.allclose(out.inf[:2, 2:], 0)
    assert rel_err(out.block(slice(0, 2), slice(0, 2)), dual_drazin(a).inverse) <= 1e-9
    assert rel_err(out.block(slice(2, 5), slice(2, 5)), dual_drazin(d).inverse) <= 1e-9


def test_tri_invertible_top_nilpotent_bottom(rng):
    # with D = 0 only the i = 0 term of the coupling series survives
    a = rand_int_dual(rng, 2)
    while abs(np.linalg.det(a.std)) < 0.5:
        a = rand_int_dual(rng, 2)
    b = rand_int_dual(rng, 2)
    d = DualMatrix.zeros(2)
    out = tri_drazin(a, b, d)
    ad = dual_drazin(a).inverse
    want = dmul(dmul(ad, ad), b)
    assert rel_err(out.block(slice(0, 2), slice(2, 4)), want) <= 1e-9


def test_tri_lower_orientation(rng):
    # invertible diagonal blocks keep the assembled matrix invertible too
    def invertible():
        x = rand_int_dual(rng, 2)
        while abs(np.linalg.det(x.std)) < 0.5:
            x = rand_int_dual(rng, 2)
        return x

    a, b, d = invertible(), rand_int_dual(rng, 2), invertible()
    inst = BlockInstance("TRI_LOWER", {"A": a, "B": b, "D": d})
    want = dual_drazin(inst.assembled()).inverse
    assert rel_err(tri_drazin(a, b, d, orientation="lower"), want) <= 1e-8


def test_tri_rejects_unknown_orientation(rng):
    a = rand_int_dual(rng, 2)
    with pytest.raises(ValueError):
        tri_drazin(a, a, a, orientation="diagonal")


def test_sum_block_diagonal_split(rng):
    n1 = np.triu(rng.integers(-2, 3, (2, 2)).astype(complex), 1)
    p = DualMatrix(np.block([[n1, np.zeros((2, 2))], [np.zeros((2, 2)), np.zeros((2, 2))]]))
    q_core = rand_int_dual(rng, 2)
    q = DualMatrix(
        np.block([[np.zeros((2, 2)), np.zeros((2, 2))], [np.zeros((2, 2)), q_core.std]]),
        np.block([[np.zeros((2, 2)), np.zeros((2, 2))], [np.zeros((2, 2)), q_core.inf]]),
    )
    assert dmul(p, q).norm() == 0
    want = dual_drazin(p + q).inverse
    assert rel_err(sum_pq_zero(p, q), want) <= 1e-9


def test_sum_degenerate_operands(rng):
    p = rand_int_dual(rng, 3)
    z = DualMatrix.zeros(3)
    assert rel_err(sum_pq_zero(p, z), dual_drazin(p).inverse) <= 1e-12
    assert rel_err(sum_pq_zero(z, p), dual_drazin(p).inverse) <= 1e-12


def test_sum_rejects_nonzero_product(rng):
    p = dual_eye(2)
    with pytest.raises(HypothesisViolated):
        sum_pq_zero(p, p)


def test_abio_zero_corner_block():
    # A = 0 leaves [[0, B^e],[B^D, 0]]
    rng = np.random.default_rng(11)
    b = rand_int_dual(rng, 3)
    while abs(np.linalg.det(b.std)) < 0.5:
        b = rand_int_dual(rng, 3)
    out = abio_drazin(DualMatrix.zeros(3), b)
    bd = dual_drazin(b).inverse
    be = dmul(b, bd)
    assert rel_err(out.block(slice(0, 3), slice(3, 6)), be) <= 1e-9
    assert rel_err(out.block(slice(3, 6), slice(0, 3)), bd) <= 1e-9
    assert np.allclose(out.std[:3, :3], 0) and np.allclose(out.std[3:, 3:], 0)


def test_abio_nilpotent_with_identity_coupling():
    a = DualMatrix([[0.0, 1.0], [0.0, 0.0]])
    out = abio_drazin(a, dual_eye(2))
    expected = np.block(
        [[np.zeros((2, 2)), np.eye(2)], [np.eye(2), -a.std]]
    )
    assert np.allclose(out.std, expected, atol=1e-10)
    assert np.allclose(out.inf, 0, atol=1e-10)


def test_abco_zero_bottom_row(rng):
    a = rand_int_dual(rng, 3)
    b = rand_int_dual(rng, 3, 2)
    c = DualMatrix.zeros(2, 3)
    out = abco_drazin(a, b, c)
    ad = dual_drazin(a).inverse
    want_tr = dmul(dmul(ad, ad), b)
    assert rel_err(out.block(slice(0, 3), slice(0, 3)), ad) <= 1e-9
    assert rel_err(out.block(slice(0, 3), slice(3, 5)), want_tr) <= 1e-9
    assert np.allclose(out.std[3:, :], 0) and np.allclose(out.inf[3:, :], 0)


def test_abco_zero_core_is_bipartite(rng):
    b = rand_int_dual(rng, 2, 3)
    c = rand_int_dual(rng, 3, 2)
    out = abco_drazin(DualMatrix.zeros(2), b, c)
    want = bipartite_drazin(b, c)
    assert rel_err(out, want) <= 1e-9


def test_bipartite_identity_is_involution():
    out = bipartite_drazin(dual_eye(2), dual_eye(2))
    want = np.block([[np.zeros((2, 2)), np.eye(2)], [np.eye(2), np.zeros((2, 2))]])
    assert np.allclose(out.std, want) and np.allclose(out.inf, 0)


def test_bipartite_zero_block():
    assert bipartite_drazin(DualMatrix.zeros(2, 3), rand_int_dual(np.random.default_rng(1), 3, 2)).norm() == 0


def test_bipartite_random_matches_direct(rng):
    b = rand_int_dual(rng, 3)
    c = rand_int_dual(rng, 3)
    inst = BlockInstance("BIPARTITE", {"B": b, "C": c})
    want = dual_drazin(inst.assembled()).inverse
    assert rel_err(bipartite_drazin(b, c), want) <= 1e-8


def test_hypothesis_report_names_every_condition(rng):
    a = rand_int_dual(rng, 3)
    b = rand_int_dual(rng, 3, 2)
    inst = BlockInstance("ABCO_RIGHT", {"A": a, "B": b, "C": DualMatrix.zeros(2, 3)})
    rep = check_hypotheses(inst)
    assert rep.passed
    assert {c.name for c in rep.conditions} >= {"annihilation", "commutation"}
    assert all(c.residual == 0 for c in rep.conditions)


def test_hypothesis_failure_has_scale():
    rep = check_hypotheses(
        BlockInstance("ABIO_RIGHT", {"A": dual_eye(2), "B": dual_eye(2)})
    )
    assert not rep.passed
    assert rep.residual("annihilation") > 0.1


def test_strict_mode_rejects_tiny_nonzero():
    # PQ has a 1e-13 entry: inside tolerance, but not exactly zero
    p = DualMatrix(np.diag([1.0, 0.0]))
    q = DualMatrix(np.array([[1e-13, 0.0], [0.0, 1.0]]))
    inst = BlockInstance("SUM_PQ0", {"P": p, "Q": q})
    assert check_hypotheses(inst).passed
    assert not check_hypotheses(inst, strict=True).passed


def test_formula_functions_reject_violations(rng):
    a = dual_eye(2)
    with pytest.raises(HypothesisViolated):
        abio_drazin(a, a)
    with pytest.raises(HypothesisViolated):
        abco_drazin(a, a, a)


def test_instance_doc_round_trip(rng):
    inst = BlockInstance(
        "TRI_UPPER",
        {"A": rand_int_dual(rng, 2), "B": rand_int_dual(rng, 2, 3), "D": rand_int_dual(rng, 3)},
    )
    back = BlockInstance.from_doc(inst.to_doc())
    assert back.theorem == inst.theorem
    for key in inst.blocks:
        assert (back[key] - inst[key]).norm() == 0


def test_instance_validates_blocks():
    with pytest.raises(ValueError):
        BlockInstance("NOPE", {})
    with pytest.raises(ShapeMismatch):
        BlockInstance("CLINE", {"A": DualMatrix.zeros(2)})


def test_closed_form_dispatches_every_theorem(rng):
    # closed_form and the per-theorem functions must agree on easy instances
    eye2 = dual_eye(2)
    z22 = DualMatrix.zeros(2)
    cases = {
        "CLINE": {"A": eye2, "B": eye2},
        "TRI_UPPER": {"A": eye2, "B": z22, "D": eye2},
        "TRI_LOWER": {"A": eye2, "B": z22, "D": eye2},
        "SUM_PQ0": {"P": z22, "Q": eye2},
        "ABIO_RIGHT": {"A": z22, "B": eye2},
        "ABIO_LEFT": {"A": z22, "B": eye2},
        "ABCO_RIGHT": {"A": z22, "B": eye2, "C": eye2},
        "ABCO_LEFT": {"A": z22, "B": eye2, "C": eye2},
        "BIPARTITE": {"B": eye2, "C": eye2},
    }
    assert set(cases) == set(THEOREMS)
    for theorem, blocks in cases.items():
        inst = BlockInstance(theorem, blocks)
        got = closed_form(inst)
        want = dual_drazin(inst.assembled()).inverse
        assert rel_err(got, want) <= 1e-9, theorem
