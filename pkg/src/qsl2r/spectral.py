"""The spectral symbolic layer: T_c^+/A_c/T_c^- elements, their exact
commutation relations, the matrix inversion recovering X, Y, Z, and the
Casimir element.

The eigenvalue parameter c is carried multiplicatively through the
indeterminate z = q^c; the shift c -> c + 2k is z -> q^(2k) z.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ncpoly import NCPoly
from .presentations import podles, qsl2r_presentation, symbolic_t
from .scalars import IUNIT, U, VA, ZC, Scalar, qang, qnum, qpow

__all__ = [
    "SpectralElements", "build_spectral_elements",
    "IdentityReport", "verify_xyzt_inversion", "verify_att_relations",
    "verify_casimir", "casimir_element", "lift_to_qsl2r",
    "substitute_b_scalar",
]

_Q = Scalar(U ** 2)
_QI = Scalar(1 / U ** 2)
_I = Scalar(IUNIT)


@dataclass(frozen=True)
class SpectralElements:
    """The triple (T_c^+, A_c, T_c^-) as sphere polynomials with z = q^c
    coefficients."""

    tplus: NCPoly
    a: NCPoly
    tminus: NCPoly

    def shifted(self, k: int) -> "SpectralElements":
        """Shift c -> c + k in all three elements."""
        return SpectralElements(self.tplus.subs_c_shift(k),
                                self.a.subs_c_shift(k),
                                self.tminus.subs_c_shift(k))


def build_spectral_elements(t: Scalar = None) -> SpectralElements:
    """T_c^+ = iq^c X - (q^-1+q) Z + iq^-c Y - t, A_c = iq^-1 X +
    (q^c - q^-c) Z - iq Y, T_c^- = -iq^-c X - (q^-1+q) Z - iq^c Y - t."""
    if t is None:
        t = symbolic_t()
    pres = podles()
    X, Y, Z = (NCPoly.gen(pres, g) for g in ("X", "Y", "Z"))
    one = NCPoly.one(pres)
    zc, zci = Scalar(ZC), Scalar(1 / ZC)
    ang1 = _Q + _QI
    tplus = (_I * zc) * X + (-ang1) * Z + (_I * zci) * Y + (-t) * one
    a = (_I * _QI) * X + (zc - zci) * Z + (-_I * _Q) * Y
    tminus = (-_I * zci) * X + (-ang1) * Z + (-_I * zc) * Y + (-t) * one
    return SpectralElements(tplus, a, tminus)


@dataclass
class IdentityReport:
    """Outcome of a batch of exact identity checks."""

    name: str
    residuals: dict = field(default_factory=dict)  # label -> NCPoly

    @property
    def ok(self) -> bool:
        return all(r.is_zero() for r in self.residuals.values())

    def failures(self):
        return {k: v for k, v in self.residuals.items() if not v.is_zero()}

    def summary(self) -> str:
        lines = [f"{self.name}: {len(self.residuals)} identit"
                 f"{'y' if len(self.residuals) == 1 else 'ies'}, "
                 f"{len(self.failures())} failure(s)"]
        for k, v in self.failures().items():
            lines.append(f"  {k}: residual {v.render()}")
        return "\n".join(lines)


def verify_att_relations(t: Scalar = None) -> IdentityReport:
    """The four exact commutation identities among T_c^+/- and A_c.

    With S(x) denoting q^x + q^-x:
      T_{c+2}^- T_c^+ = (S(c-a+1) - A_c)(S(c+a+1) + A_c)
      A_{c+2} T_c^+   = T_c^+ A_c
      A_{c-2} T_c^-   = T_c^- A_c
      T_{c-2}^+ T_c^- = (S(c-a-1) - A_c)(S(c+a-1) + A_c)
    """
    el = build_spectral_elements(t)
    up, down = el.shifted(2), el.shifted(-2)
    pres = el.a.pres
    one = NCPoly.one(pres)

    def factored(s1: Scalar, s2: Scalar) -> NCPoly:
        return (s1 * one - el.a) * (s2 * one + el.a)

    rep = IdentityReport("att")
    rep.residuals["Tminus(c+2) Tplus(c)"] = (
        up.tminus * el.tplus
        - factored(qang({"c": 1, "a": -1, "1": 1}),
                   qang({"c": 1, "a": 1, "1": 1})))
    rep.residuals["A(c+2) Tplus(c)"] = up.a * el.tplus - el.tplus * el.a
    rep.residuals["A(c-2) Tminus(c)"] = down.a * el.tminus - el.tminus * el.a
    rep.residuals["Tplus(c-2) Tminus(c)"] = (
        down.tplus * el.tminus
        - factored(qang({"c": 1, "a": -1, "1": -1}),
                   qang({"c": 1, "a": 1, "1": -1})))
    return rep


def verify_xyzt_inversion(t: Scalar = None) -> IdentityReport:
    """Inverting the linear system expressing (T_c^+ + t, A_c, T_c^- + t)
    in (X, Z, Y): the displayed inverse matrix with common denominator
    S(c-1)S(c)S(c+1) recovers the sphere generators exactly."""
    if t is None:
        t = symbolic_t()
    el = build_spectral_elements(t)
    pres = el.a.pres
    X, Y, Z = (NCPoly.gen(pres, g) for g in ("X", "Y", "Z"))
    one = NCPoly.one(pres)

    angm = qang({"c": 1, "1": -1})   # S(c-1)
    ang0 = qang({"c": 1})            # S(c)
    angp = qang({"c": 1, "1": 1})    # S(c+1)
    den = angm * ang0 * angp
    v0 = angm * (el.tplus + t * one)
    v1 = ang0 * el.a
    v2 = angp * (el.tminus + t * one)
    q, qi = _Q, _QI
    zc, zci = Scalar(ZC), Scalar(1 / ZC)

    rep = IdentityReport("xyzt-inversion")
    rep.residuals["X row"] = (
        (-_I * q * zc / den) * v0 + (-_I * (qi + q) / den) * v1
        + (_I * q * zci / den) * v2 - X)
    rep.residuals["Z row"] = (
        (Scalar(-1) / den) * v0 + ((zc - zci) / den) * v1
        + (Scalar(-1) / den) * v2 - Z)
    rep.residuals["Y row"] = (
        (-_I * qi * zci / den) * v0 + (_I * (qi + q) / den) * v1
        + (_I * qi * zc / den) * v2 - Y)

    for x in (-2.3, -0.5, 0.0, 0.7, 3.1):
        for qv in (0.1, 0.5, 0.9):
            if not qv ** x + qv ** (-x) >= 2.0:
                rep.residuals[f"denominator unit at ({qv},{x})"] = one
    return rep


# -- Casimir --------------------------------------------------------------

def casimir_element(t: Scalar = None) -> NCPoly:
    """Omega_t = iq^-1 X + (q - q^-1) i Z B - iq Y in the double."""
    if t is None:
        t = symbolic_t()
    pres = qsl2r_presentation()
    X, Y, Z, B = (NCPoly.gen(pres, g) for g in ("X", "Y", "Z", "B"))
    return (_I * _QI) * X + ((_Q - _QI) * _I) * (Z * B) + (-_I * _Q) * Y


def lift_to_qsl2r(p: NCPoly) -> NCPoly:
    """Embed a sphere polynomial into the double (shared generator names;
    sphere normal words stay normal)."""
    pres = qsl2r_presentation()
    return NCPoly(pres, dict(p.terms), normal=True)


def substitute_b_scalar(p: NCPoly, value: Scalar) -> NCPoly:
    """Formally replace the (right-normalized) generator B by a scalar."""
    pres = p.pres
    out = NCPoly.zero(pres)
    for w, c in p.terms.items():
        n = len(w)
        while n > 0 and w[n - 1] == "B":
            n -= 1
        power = len(w) - n
        out = out + NCPoly(pres, {w[:n]: c * value ** power}, normal=True)
    return out


def verify_casimir(t: Scalar = None) -> IdentityReport:
    """Centrality and self-adjointness of Omega_t, the B-X-Y commutation,
    and the eigenvector identity Omega_t = A_c + (q-q^-1) i Z (B + i[c])
    after the formal substitution B -> -i[c]."""
    om = casimir_element(t)
    pres = om.pres
    rep = IdentityReport("casimir")
    for g in pres.generators:
        gp = NCPoly.gen(pres, g)
        rep.residuals[f"[Omega, {g}]"] = om * gp - gp * om
    rep.residuals["star(Omega) - Omega"] = om.star() - om

    X, Y, Z, B = (NCPoly.gen(pres, g) for g in ("X", "Y", "Z", "B"))
    rep.residuals["B(qY - q^-1 X) - (q^-1 Y - qX)B"] = (
        B * (_Q * Y + (-_QI) * X) - (_QI * Y + (-_Q) * X) * B)

    el = build_spectral_elements(t)
    eig = -_I * qnum({"c": 1})  # -i[c]
    diff = om - lift_to_qsl2r(el.a) - ((_Q - _QI) * _I) * (
        Z * (B + (-eig) * NCPoly.one(pres)))
    rep.residuals["eigenvector identity"] = substitute_b_scalar(diff, eig)
    return rep
