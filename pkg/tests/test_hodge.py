from fractions import Fraction

import pytest

from focklab.forms import Form
from focklab.hodge import (
    ConnectionData,
    DegenerateFrame,
    HodgeFamily,
    NotSymplecticFrame,
    connection_blocks,
    constant_family,
    curvature,
    default_extension_frame,
    load_family,
    modular_family,
    nabla_h_insertion_identity,
    second_fundamental_form,
    siegel_family,
    u_section,
    verify_theorem31,
)
from focklab.linalg import ExactMatrix
from focklab.ratfunc import DifferentialField
from focklab.scalars import GaussianRational

F = Fraction


def test_modular_family_certifies():
    fam = modular_family()
    assert fam.g == 1


def test_positivity_guard_at_sample():
    field = DifferentialField(["x", "y"])
    flat = ExactMatrix([[GaussianRational(0), GaussianRational(1)],
                        [GaussianRational(-1), GaussianRational(0)]])
    v = [field.one, field.parse("x + i*y")]
    with pytest.raises(DegenerateFrame):
        HodgeFamily(field, flat, [v], {"x": 0, "y": -1})  # lower half plane


def test_sigma_modular():
    fam = modular_family()
    sigma = second_fundamental_form(fam)
    # sigma(v) = (dx + i dy) vbar / (taubar - tau): coefficient 1/(-2iy) = i/(2y)
    want = fam.field.parse("i/(2*y)")
    assert sigma.coefficient(("x",))[0, 0] == want
    assert sigma.coefficient(("y",))[0, 0] == want * fam.field.i


def test_sigma_constant_family_vanishes():
    assert not second_fundamental_form(constant_family())


def test_sigma_symmetry_coupled_g2():
    fam = siegel_family(coupling=F(1, 2))
    conn = connection_blocks(fam)
    # (sigma(v_i), v_j) symmetric: built-in certification ran; also directly
    for key in conn.sigma.terms:
        m = conn.sigma.coefficient(key)
        weighted = ExactMatrix(
            [
                [
                    sum(
                        m[b, i] * fam.pairing(fam.conj_frame[b], fam.frame[j])
                        for b in range(fam.g)
                    )
                    for j in range(fam.g)
                ]
                for i in range(fam.g)
            ]
        )
        assert (weighted - weighted.transpose()).is_zero()


def test_sigma_tensoriality():
    """Rescaling a frame vector by a holomorphic function rescales sigma."""
    fam = modular_family()
    conn = connection_blocks(fam)
    field = fam.field
    tau = field.parse("x + i*y")
    fam2 = HodgeFamily(
        field,
        ExactMatrix([[GaussianRational(0), GaussianRational(1)],
                     [GaussianRational(-1), GaussianRational(0)]]),
        [[tau * c for c in fam.frame[0]]],
        {"x": 0, "y": 1},
    )
    conn2 = connection_blocks(fam2)
    for key in conn.sigma.terms:
        # sigma2(tau v) = tau sigma(v); the new Fbar frame is conj(tau) vbar
        got = conn2.sigma.coefficient(key)[0, 0]
        want = conn.sigma.coefficient(key)[0, 0] * tau / tau.conj()
        assert got == want


def test_curvature_of_scalar_form():
    field = DifferentialField(["x", "y"])
    omega = Form.from_function(field, field.var("x")).wedge(Form.d_param(field, "y"))
    c = curvature(omega)
    assert c.scalar_coefficient(("x", "y")) == field.one


def test_abar_curvature_is_minus_sigma_wedge_sigmabar():
    fam = modular_family()
    conn = connection_blocks(fam)
    lhs = curvature(conn.a_f_bar)
    rhs = -(conn.sigma.wedge(conn.sigma_bar))
    assert lhs == rhs


def test_verify_theorem31_modular():
    report = verify_theorem31(modular_family(), probe_grade=4)
    assert all(report.values()), report


def test_verify_theorem31_constant():
    report = verify_theorem31(constant_family(), probe_grade=3)
    assert all(report.values()), report


def test_verify_theorem31_siegel_block():
    report = verify_theorem31(siegel_family(), probe_grade=3)
    assert all(report.values()), report


def test_modular_scalar_value():
    """The predicted scalar 2-form is -(i/4) dx^dy / y^2."""
    fam = modular_family()
    conn = connection_blocks(fam)
    omega_det = curvature(conn.a_f).trace()
    scalar = omega_det.scalar_coefficient(("x", "y")) * F(1, 2)
    assert scalar == fam.field.parse("-i/(4*y^2)")


def test_u_section_modular():
    fam = modular_family()
    out = u_section(fam)
    assert out["matches_sbar"] is True
    # u = dtau vbar (x) vbar / (8 y^2): check the x-component coefficient
    conn = out["connection"]
    assert out["u"][0][0, 0] * fam.pairing(
        out["extension"][1][0], fam.frame[0]
    ) ** 0 is not None  # shape sanity
    # compare through sbar directly
    assert conn.sbar_coeff[0][0, 0] == fam.field.parse("1/(8*y^2)")


def test_u_section_constant_family_zero():
    out = u_section(constant_family())
    for mat in out["u"].values():
        assert mat.is_zero()


def test_u_section_rejects_bad_frame():
    fam = modular_family()
    pos, neg = default_extension_frame(fam)
    bad_neg = [[c * 2 for c in neg[0]]]
    with pytest.raises(NotSymplecticFrame):
        u_section(fam, (pos, bad_neg))


def test_nabla_h_insertion_identity():
    assert nabla_h_insertion_identity(modular_family(), probe_key=(-1, -1))
    assert nabla_h_insertion_identity(constant_family(), probe_key=(-1,))


def test_load_family_roundtrip():
    text = """
    # the standard upper-half-plane family
    params: x y
    flat_gram: [[0, 1], [-1, 0]]
    frame: [1, x + i*y]
    sample: x=0 y=1
    """
    fam = load_family(text)
    assert fam.g == 1
    sigma = second_fundamental_form(fam)
    assert sigma.coefficient(("x",))[0, 0] == fam.field.parse("i/(2*y)")


def test_load_family_g2():
    text = """
    params: x1 y1 x2 y2
    flat_gram: [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    frame: [1, 0, x1 + i*y1, 0]
    frame: [0, 1, 0, x2 + i*y2]
    sample: x1=0 y1=1 x2=0 y2=2
    """
    fam = load_family(text)
    assert fam.g == 2
