from qsl2r.ncpoly import NCPoly
from qsl2r.presentations import podles, qsl2r_presentation, symbolic_t
from qsl2r.spectral import (build_spectral_elements, casimir_element,
                            lift_to_qsl2r, substitute_b_scalar,
                            verify_att_relations, verify_casimir,
                            verify_xyzt_inversion)
from qsl2r.scalars import IUNIT, Scalar, qang, qnum, qpow


def test_shift_operator_relations_exact():
    rep = verify_att_relations()
    assert rep.ok, rep.summary()
    assert len(rep.residuals) == 4
    assert all(r.is_zero() for r in rep.residuals.values())


def test_generator_inversion_exact():
    rep = verify_xyzt_inversion()
    assert rep.ok, rep.summary()


def test_casimir_identities_exact():
    rep = verify_casimir()
    assert rep.ok, rep.summary()


def test_casimir_is_star_invariant():
    om = casimir_element()
    assert om.star() == om


def test_diagonal_substitution_for_skew_generator():
    # B acts as -i[c] on a weight vector; after substitution the Casimir
    # becomes the scalar i q^-1 X + (q-q^-1)(-i[c]) i Z - i q Y
    om = casimir_element()
    eig = -Scalar(IUNIT) * qnum({"c": 1})
    sub = substitute_b_scalar(om, eig)
    P = podles()
    X, Y, Z = (NCPoly.gen(P, g) for g in ("X", "Y", "Z"))
    i = Scalar(IUNIT)
    expected = i * qpow(-1) * X + (qpow(1) - qpow(-1)) * eig * i * Z \
        - i * qpow(1) * Y
    lifted = lift_to_qsl2r(expected)
    assert sub == lifted


def test_spectral_element_shift_consistency():
    el = build_spectral_elements()
    up = el.shifted(2)
    # A at c+2 evaluates like A with c replaced by c+2
    val = el.a.coefficient(("Z",))
    val_up = up.a.coefficient(("Z",))
    assert val.subs_c_shift(2) == val_up
