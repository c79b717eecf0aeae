import pytest

from entcert.constructions import (
    FAMILIES,
    OmegaPreconditionError,
    RotationTriple,
    all_rotations,
    build_family,
    ket,
    omega_set,
    primitive,
    stopper,
)
from entcert.exactla import ExactScalar, rank
from entcert.states import StateSet, inner_product, is_biseparable, is_mutually_orthogonal

D2, D3 = (2, 2, 2), (3, 3, 3)


def test_stopper():
    assert len(stopper(2, 3).coeffs) == 8
    s = stopper(3, 3)
    assert len(s.coeffs) == 27 and set(s.coeffs.values()) == {ExactScalar(1)}
    with pytest.raises(ValueError):
        stopper(1, 3)


def test_stopper_is_orthogonal_to_minus_states(f222):
    tau = stopper(2, 3)
    for s in f222.Gminus:
        assert not inner_product(tau, s)
    for s in f222.Gplus:
        assert inner_product(tau, s)


def test_family_222_shape(f222):
    assert len(f222.U) == 6 and len(f222.G) == 8
    assert is_mutually_orthogonal(f222.G)[0]
    assert rank(f222.G.coefficient_matrix()) == 8
    assert [s.label for s in f222.Gplus] == ["psi_0+", "psi_1+", "eta+"]
    psi0m = next(s for s in f222.U if s.label == "psi_0-")
    assert psi0m == ket(D2, {"000": 1, "010": 1, "001": -2})


def test_omega_222(omega2):
    assert list(omega2) == [
        ket(D2, {"000": 2, "010": 2, "001": 2, "011": -3, "101": -3}),
        ket(D2, {"100": 2, "110": 2, "111": 2, "011": -3, "101": -3}),
    ]
    tau = stopper(2, 3)
    assert all(not inner_product(tau, s) for s in omega2)


def test_omega_set_size_and_independence(f000):
    assert len(f000.ges_basis) == len(f000.Gplus) - 1 == 8
    assert rank(f000.ges_basis.coefficient_matrix()) == 8
    tau = stopper(3, 3)
    assert all(not inner_product(tau, s) for s in f000.ges_basis)


def test_omega_set_preconditions(f222):
    with pytest.raises(OmegaPreconditionError, match="out of range"):
        omega_set(f222.Gplus, 5, 2, 3)
    with pytest.raises(OmegaPreconditionError, match="orthogonal to the stopper"):
        omega_set(f222.Gminus, 0, 2, 3)
    dup = [f222.Gplus[0], f222.Gplus[0] * 2]
    with pytest.raises(OmegaPreconditionError, match="independent"):
        omega_set(dup, 0, 2, 3)
    with pytest.raises(OmegaPreconditionError, match="system"):
        omega_set(f222.Gplus, 0, 3, 3)


def test_primitive_rescales_only():
    s = ket(D2, {"000": 4, "111": -6})
    p = primitive(s)
    assert p == ket(D2, {"000": 2, "111": -3})


def test_rotation_triple():
    assert RotationTriple.parse("1,2,0") == RotationTriple(1, 2, 0)
    assert RotationTriple.parse("120") == RotationTriple(1, 2, 0)
    assert str(RotationTriple(0, 1, 2)) == "012"
    assert len(all_rotations()) == 27
    for bad in ("1,2", "3,0,0", "a,b,c"):
        with pytest.raises(ValueError):
            RotationTriple.parse(bad)


def test_u000_size_and_display(f000):
    assert len(f000.U) == 19
    by_label = {s.label: s for s in f000.U}
    assert by_label["phi_0^(g=0)-"] == ket(D3, {"001": 1, "012": -1})
    assert by_label["eta_0^(g=0)-"] == ket(D3, {"001": 1, "012": 1, "020": 1, "000": -3})


def test_ges_basis_first_state(f000):
    assert f000.ges_basis[0] == ket(
        D3, {"110": 4, "111": 4, "121": 4, "000": -3, "001": -3, "012": -3, "020": -3}
    )


@pytest.mark.parametrize("rot", [(r.h, r.q, r.m) for r in all_rotations()], ids=str)
def test_every_rotation_gives_an_orthogonal_basis(family333, rot):
    f = family333(rot)
    assert len(f.G) == 27
    assert is_mutually_orthogonal(f.G)[0]
    assert rank(f.G.coefficient_matrix()) == 27
    tau = stopper(3, 3)
    assert all(not inner_product(tau, s) for s in f.Gminus)
    assert all(inner_product(tau, s) for s in f.Gplus)
    assert all(is_biseparable(s) is not None for s in f.U)
    assert rank(f.ges_basis.coefficient_matrix()) == 8


def test_u_states_are_biseparable(f222):
    assert all(is_biseparable(s) is not None for s in f222.U)


def test_build_family():
    assert len(build_family("U")) == 6
    assert len(build_family("Uhqm", RotationTriple(0, 0, 0))) == 19
    assert len(build_family("stopper", d=3, r=3)[0].coeffs) == 27
    assert len(build_family("omega")) == 2
    assert len(build_family("Ghqm\u2212")) == len(build_family("Ghqm-")) == 18
    assert set(FAMILIES) >= {"G", "Gplus", "U", "Ghqm+", "Ghqm-", "Uhqm", "GES", "stopper", "omega"}
    with pytest.raises(ValueError):
        build_family("nope")
    with pytest.raises(ValueError):
        build_family("U", RotationTriple(0, 0, 0))
    assert isinstance(build_family("GES"), StateSet)
