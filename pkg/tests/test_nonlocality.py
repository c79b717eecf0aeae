from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from entcert.constructions import ket
from entcert.exactla import ExactMatrix, ExactScalar, column_stack, rank
from entcert.nonlocality import (
    NoNontrivialOplmError,
    OrthogonalityError,
    certify_strong_nonlocality,
    construct_nontrivial_oplm,
    gershgorin_bound,
    is_orthogonality_preserving,
    oplm_solution_space,
    reduced_feature_matrices,
    solution_operators,
    verify_measurement,
)
from entcert.states import Grouping, PartySystem, PureState, tripartite_groupings

A_BC, B_CA, C_AB = tripartite_groupings()
D2 = (2, 2, 2)
J4 = ExactMatrix.from_rows([[Fraction(1, 4)] * 4] * 4)


def test_feature_matrix_toy_example():
    # |0>|0> and |1>|1> on a 2x2 system
    system = PartySystem((2, 2))
    a = PureState(system, {(0, 0): 1})
    b = PureState(system, {(1, 1): 1})
    fam = reduced_feature_matrices([a, b], Grouping.of((0,), 2))
    assert fam.pairs == ((0, 1), (1, 0))
    assert all(m.is_zero() for m in fam.matrices)
    assert oplm_solution_space(fam).solution_dim == 4


def test_feature_matrix_entries_by_hand():
    system = PartySystem((2, 2))
    a = PureState(system, {(0, 0): 1, (1, 1): 1})
    b = PureState(system, {(0, 0): 1, (1, 1): -1})
    fam = reduced_feature_matrices([a, b], Grouping.of((0,), 2))
    assert fam.matrices[0] == ExactMatrix.from_rows([[1, 0], [0, -1]])
    # Pi_ij with trace zero means the identity solves the system
    assert fam.matrices[0].trace() == ExactScalar(0)


def test_feature_matrix_count_and_shape(f000):
    fam = reduced_feature_matrices(f000.U, C_AB, "right")
    assert len(fam.matrices) == 19 * 18 == 342
    assert fam.dim == 9 and fam.matrices[0].shape == (9, 9)


def test_u000_is_locally_irreducible_on_ab(f000):
    cert = oplm_solution_space(reduced_feature_matrices(f000.U, C_AB, "right"))
    assert cert.span_dim == 80 and cert.solution_dim == 1 and not cert.nontrivial_exists


def test_u000_is_strongly_nonlocal(f000):
    rep = certify_strong_nonlocality(f000.U)
    assert rep.strongly_nonlocal
    assert len(rep.certificates) == 6
    assert all(c.solution_dim == 1 for c in rep.certificates)
    assert rep.witness is None


def test_u000_has_no_nontrivial_measurement(f000):
    with pytest.raises(NoNontrivialOplmError):
        construct_nontrivial_oplm(reduced_feature_matrices(f000.U, C_AB, "right"))


def test_u222_is_reducible_on_bc(f222):
    rep = certify_strong_nonlocality(f222.U)
    assert not rep.strongly_nonlocal
    w = rep.witness
    assert (w.grouping.name, w.side_name) == ("A|BC", "BC")
    assert w.solution_dim == 3
    meas = w.witness
    assert verify_measurement(f222.U, A_BC, "right", meas.outcomes) == []
    assert meas.lam == gershgorin_bound(meas.generator) > 0


def test_hand_measurement_on_bc_preserves_orthogonality(f222):
    ident = ExactMatrix.identity(4)
    outcomes = (J4, ident - J4)
    assert verify_measurement(f222.U, A_BC, "right", outcomes) == []
    ok, pair = is_orthogonality_preserving(f222.U, A_BC, "right", J4)
    assert ok and pair is None


def test_solution_operators_contain_identity_and_hand_measurement(f222):
    fam = reduced_feature_matrices(f222.U, A_BC, "right")
    sols = solution_operators(fam)
    assert len(sols) == 3
    base = rank(column_stack(sols))
    assert rank(column_stack(sols + [ExactMatrix.identity(4)])) == base
    assert rank(column_stack(sols + [J4])) == base


def test_identity_only_fails_verification(f222):
    ident = ExactMatrix.identity(4)
    half = ident.scale(ExactScalar(Fraction(1, 2)))
    assert "every outcome is proportional to the identity" in verify_measurement(f222.U, A_BC, "right", (half, half))


def test_verify_measurement_catches_bad_outcomes(f222):
    bad = ExactMatrix.from_rows([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    problems = verify_measurement(f222.U, A_BC, "right", (bad, ExactMatrix.identity(4) - bad))
    assert any("breaks orthogonality" in p for p in problems)
    neg = ExactMatrix.from_rows([[2, 0], [0, 0]])
    problems = verify_measurement(f222.U, A_BC, "left", (neg, ExactMatrix.identity(2) - neg))
    assert any("positive semidefinite" in p for p in problems)


def test_computational_basis_is_not_strongly_nonlocal():
    system = PartySystem(D2)
    full = [PureState(system, {idx: 1}) for idx in system.basis()]
    rep = certify_strong_nonlocality(full, with_witness=False)
    assert not rep.strongly_nonlocal
    assert all(c.solution_dim >= 2 for c in rep.certificates)


def test_non_orthogonal_input_is_rejected():
    with pytest.raises(OrthogonalityError):
        oplm_solution_space(
            reduced_feature_matrices([ket(D2, "000"), ket(D2, {"000": 1, "111": 1})], A_BC)
        )


def test_feature_matrices_are_hermitian_pairs(f222):
    fam = reduced_feature_matrices(f222.U, B_CA, "right")
    index = {p: m for p, m in zip(fam.pairs, fam.matrices)}
    for (i, j), m in index.items():
        assert index[(j, i)] == m.H


def test_feature_matrices_with_complex_phases():
    system = PartySystem(D2)
    a = PureState(system, {(0, 0, 0): ExactScalar(0, 1), (1, 1, 1): 1})
    b = PureState(system, {(0, 0, 0): ExactScalar(0, 1), (1, 1, 1): -1})
    fam = reduced_feature_matrices([a, b], A_BC)
    assert fam.matrices[1] == fam.matrices[0].H
    assert oplm_solution_space(fam).solution_dim == 3


@given(st.permutations(range(6)), st.lists(st.sampled_from([1, -1, 2, ExactScalar(0, 1)]), min_size=6, max_size=6))
def test_solution_dim_invariant_under_order_and_scaling(f222, perm, scales):
    base = [(c.span_dim, c.solution_dim) for c in certify_strong_nonlocality(f222.U, with_witness=False).certificates]
    states = [f222.U[p] * s for p, s in zip(perm, scales)]
    got = [(c.span_dim, c.solution_dim) for c in certify_strong_nonlocality(states, with_witness=False).certificates]
    assert got == base


def test_report_serialization(f222):
    d = certify_strong_nonlocality(f222.U).to_dict()
    assert d["pass"] is False and len(d["certificates"]) == 6
    bc = d["certificates"][1]
    assert bc["active_parties"] == "BC" and bc["witness"] is not None
