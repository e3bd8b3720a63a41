"""The four bundled presentations and the coideal-orthogonality machinery.

Generator names (ascending rewrite order):

* UQSU2:  f < ki < k < e        (ki is the inverse of the grouplike k)
* OQSU2:  be < ga < de < al     (the 2x2 corepresentation matrix entries)
* PODLES: Y < X < Z             (the equatorial sphere generators)
* QSL2R:  Y < X < Z < B         (sphere plus the skew generator B)

The deformation parameter t is kept symbolic as va - 1/va throughout; a
different Scalar value may be passed to the factories.

The rewrite orientations are chosen so that every system is genuinely
confluent with the intended PBW basis:

* OQSU2 pushes al to the right; normal words are be^j ga^k de^l and
  be^j ga^k al^i (al and de never coexist, reflecting the determinant
  relations al de = 1 + q be ga and de al = 1 + q^-1 be ga).
* The sphere satisfies both determinant relations XY = 1 - qtZ - q^2 Z^2
  and YX = 1 - q^-1 tZ - q^-2 Z^2 (the second is forced by the cross
  relations with B), so normal words are Y^i Z^j and X^k Z^j: X and Y
  never coexist and Z sits on the right.
* Weighted word orders (diagonal corepresentation entries and X, Y, B
  weigh 2; the rest weigh 1) orient the determinant relations downward,
  which a plain degree-graded order cannot do.
"""

from __future__ import annotations

import functools

import sympy

from .ncpoly import NCPoly, Pairing, Presentation, confluence_check
from .scalars import IUNIT, LAM, U, VA, VB, ZC, Scalar, qbrack

__all__ = [
    "uqsu2", "oqsu2", "podles", "qsl2r_presentation",
    "symbolic_t", "b_element", "standard_pairing",
    "et_matrix", "podles_generators_in_oqsu2", "podles_image",
    "verify_orthogonality", "podles_image_rank", "OrthogonalityReport",
    "dump_presentation", "load_presentation",
]

_Q = U ** 2


def _s(e) -> Scalar:
    return Scalar(e)


def symbolic_t() -> Scalar:
    """t = [[a]] = q^a - q^-a."""
    return qbrack({"a": 1})


def _mono(spec: dict) -> dict:
    return {w: (c if isinstance(c, Scalar) else _s(c)) for w, c in spec.items()}


def _verify_hopf(pres: Presentation):
    """Check m(S (x) id)Delta(g) = eps(g) 1 = m(id (x) S)Delta(g) for all g."""
    one = NCPoly.one(pres)
    for g in pres.generators:
        want = NCPoly.scalar(pres, pres.counit[g])
        left = NCPoly.zero(pres)
        right = NCPoly.zero(pres)
        for w1, w2, c in pres.coproduct[g]:
            p1 = NCPoly(pres, {w1: _s(1)})
            p2 = NCPoly(pres, {w2: _s(1)})
            left = left + c * (p1.antipode() * p2)
            right = right + c * (p1 * p2.antipode())
        if left != want or right != want:
            raise ValueError(f"antipode of {g} in {pres.name} fails the Hopf axiom")
    del one


@functools.lru_cache(maxsize=None)
def uqsu2() -> Presentation:
    q, qi = _s(_Q), _s(1 / _Q)
    dq = _s(_Q - 1 / _Q)  # q - q^-1
    pres = Presentation(
        name="UQSU2",
        generators=("f", "ki", "k", "e"),
        rules={
            ("e", "f"): _mono({("f", "e"): 1,
                               ("k",): _s(1) / dq,
                               ("ki",): _s(-1) / dq}),
            ("e", "k"): _mono({("k", "e"): qi * qi}),
            ("e", "ki"): _mono({("ki", "e"): q * q}),
            ("k", "f"): _mono({("f", "k"): qi * qi}),
            ("ki", "f"): _mono({("f", "ki"): q * q}),
            ("k", "ki"): _mono({(): 1}),
            ("ki", "k"): _mono({(): 1}),
        },
        star={
            "e": _mono({("f", "k"): 1}),
            "f": _mono({("ki", "e"): 1}),
            "k": _mono({("k",): 1}),
            "ki": _mono({("ki",): 1}),
        },
        coproduct={
            "e": [(("e",), (), _s(1)), (("k",), ("e",), _s(1))],
            "f": [(("f",), ("ki",), _s(1)), ((), ("f",), _s(1))],
            "k": [(("k",), ("k",), _s(1))],
            "ki": [(("ki",), ("ki",), _s(1))],
        },
        counit={"e": _s(0), "f": _s(0), "k": _s(1), "ki": _s(1)},
        antipode={
            "e": _mono({("ki", "e"): -1}),
            "f": _mono({("f", "k"): -1}),
            "k": _mono({("ki",): 1}),
            "ki": _mono({("k",): 1}),
        },
    )
    _verify_hopf(pres)
    return pres


@functools.lru_cache(maxsize=None)
def oqsu2() -> Presentation:
    q, qi = _s(_Q), _s(1 / _Q)
    pres = Presentation(
        name="OQSU2",
        generators=("be", "ga", "de", "al"),
        weights={"al": 2, "be": 1, "ga": 1, "de": 2},
        rules={
            ("al", "be"): _mono({("be", "al"): q}),
            ("al", "ga"): _mono({("ga", "al"): q}),
            ("ga", "be"): _mono({("be", "ga"): 1}),
            ("de", "be"): _mono({("be", "de"): qi}),
            ("de", "ga"): _mono({("ga", "de"): qi}),
            ("de", "al"): _mono({(): 1, ("be", "ga"): qi}),
            ("al", "de"): _mono({(): 1, ("be", "ga"): q}),
        },
        star={
            "al": _mono({("de",): 1}),
            "be": _mono({("ga",): -q}),
            "ga": _mono({("be",): -qi}),
            "de": _mono({("al",): 1}),
        },
        coproduct={
            "al": [(("al",), ("al",), _s(1)), (("be",), ("ga",), _s(1))],
            "be": [(("al",), ("be",), _s(1)), (("be",), ("de",), _s(1))],
            "ga": [(("ga",), ("al",), _s(1)), (("de",), ("ga",), _s(1))],
            "de": [(("ga",), ("be",), _s(1)), (("de",), ("de",), _s(1))],
        },
        counit={"al": _s(1), "be": _s(0), "ga": _s(0), "de": _s(1)},
        antipode={
            "al": _mono({("de",): 1}),
            "be": _mono({("be",): -qi}),
            "ga": _mono({("ga",): -q}),
            "de": _mono({("al",): 1}),
        },
    )
    _verify_hopf(pres)
    return pres


def _podles_rules(t: Scalar) -> dict:
    q, qi = _s(_Q), _s(1 / _Q)
    return {
        ("Z", "X"): _mono({("X", "Z"): qi * qi}),
        ("Z", "Y"): _mono({("Y", "Z"): q * q}),
        ("X", "Y"): _mono({(): 1, ("Z",): -q * t, ("Z", "Z"): -q * q}),
        ("Y", "X"): _mono({(): 1, ("Z",): -t / q, ("Z", "Z"): -qi * qi}),
    }


_SPHERE_WEIGHTS = {"Y": 2, "X": 2, "Z": 1}


@functools.lru_cache(maxsize=None)
def podles(t: Scalar = None) -> Presentation:
    if t is None:
        t = symbolic_t()
    return Presentation(
        name="PODLES",
        generators=("Y", "X", "Z"),
        weights=dict(_SPHERE_WEIGHTS),
        rules=_podles_rules(t),
        star={"X": _mono({("Y",): 1}), "Y": _mono({("X",): 1}),
              "Z": _mono({("Z",): 1})},
    )


@functools.lru_cache(maxsize=None)
def qsl2r_presentation(t: Scalar = None) -> Presentation:
    if t is None:
        t = symbolic_t()
    q, qi = _s(_Q), _s(1 / _Q)
    ang1 = q + qi
    rules = _podles_rules(t)
    rules.update({
        ("B", "X"): _mono({("X", "B"): q * q, ("Z",): q * ang1, (): q * t}),
        ("B", "Y"): _mono({("Y", "B"): qi * qi, ("Z",): qi * ang1, (): qi * t}),
        ("B", "Z"): _mono({("Z", "B"): 1, ("X",): -1, ("Y",): -1}),
    })
    return Presentation(
        name="QSL2R",
        generators=("Y", "X", "Z", "B"),
        weights=dict(_SPHERE_WEIGHTS, B=2),
        rules=rules,
        star={"X": _mono({("Y",): 1}), "Y": _mono({("X",): 1}),
              "Z": _mono({("Z",): 1}), "B": _mono({("B",): -1})},
    )


# -- the coideal generator and the pairing --------------------------------

def b_element(t: Scalar = None) -> NCPoly:
    """B_t = q^(-1/2)(e - f k) - i t k / (q - q^-1) in UQSU2."""
    if t is None:
        t = symbolic_t()
    pres = uqsu2()
    dq = _s(_Q - 1 / _Q)  # q - q^-1
    return NCPoly(pres, {
        ("e",): _s(1 / U),
        ("f", "k"): _s(-1 / U),
        ("k",): _s(-IUNIT) * t / dq,
    }, normal=True)


@functools.lru_cache(maxsize=None)
def standard_pairing(max_degree: int = 6) -> Pairing:
    """The unitary pairing of OQSU2 against UQSU2 seeded by the spin-1/2
    representation matrices."""
    seed = {
        ("al", "k"): _s(_Q), ("de", "k"): _s(1 / _Q),
        ("al", "ki"): _s(1 / _Q), ("de", "ki"): _s(_Q),
        ("be", "e"): _s(U), ("ga", "f"): _s(1 / U),
    }
    return Pairing(oqsu2(), uqsu2(), seed, max_degree=max_degree)


# -- the sphere inside OQSU2 ----------------------------------------------

def _matmul(A, B, pres):
    n, m, p = len(A), len(B), len(B[0])
    out = [[NCPoly.zero(pres) for _ in range(p)] for _ in range(n)]
    for i in range(n):
        for j in range(p):
            acc = NCPoly.zero(pres)
            for k in range(m):
                acc = acc + A[i][k] * B[k][j]
            out[i][j] = acc
    return out


def l_matrix(t: Scalar = None):
    """The seed matrix [[0, i], [-i, -t]] of Scalars."""
    if t is None:
        t = symbolic_t()
    return [[_s(0), _s(IUNIT)], [_s(-IUNIT), -t]]


def et_matrix(t: Scalar = None):
    """E_t = U* L_t U computed by symbolic 2x2 matrix multiplication in
    OQSU2 (the quadratic entry expressions are never hard-coded)."""
    pres = oqsu2()
    if t is None:
        t = symbolic_t()
    g = lambda name: NCPoly.gen(pres, name)
    Umat = [[g("al"), g("be")], [g("ga"), g("de")]]
    Ustar = [[Umat[0][0].star(), Umat[1][0].star()],
             [Umat[0][1].star(), Umat[1][1].star()]]
    Lt = [[NCPoly.scalar(pres, c) for c in row] for row in l_matrix(t)]
    return _matmul(_matmul(Ustar, Lt, pres), Umat, pres)


def podles_generators_in_oqsu2(t: Scalar = None):
    """(X_t, Y_t, Z_t) read off E_t = [[q^-1 Z, Y], [X, -t - q Z]]."""
    E = et_matrix(t)
    q = _s(_Q)
    Z = q * E[0][0]
    Y = E[0][1]
    X = E[1][0]
    return X, Y, Z


def podles_image(p: NCPoly, t: Scalar = None) -> NCPoly:
    """The algebra map PODLES -> OQSU2 sending the sphere generators to the
    E_t entries."""
    Xi, Yi, Zi = podles_generators_in_oqsu2(t)
    images = {"X": Xi, "Y": Yi, "Z": Zi}
    target = oqsu2()
    out = NCPoly.zero(target)
    for w, c in p.terms.items():
        q = NCPoly.scalar(target, c)
        for gname in w:
            q = q * images[gname]
        out = out + q
    return out


# -- orthogonality of the sphere coideal to the B_t coideal ----------------

class OrthogonalityReport:
    def __init__(self):
        self.entry_failures = []   # (i, j, residual NCPoly)
        self.monomial_failures = []  # (word, residual NCPoly)
        self.monomials_checked = []

    @property
    def ok(self) -> bool:
        return not self.entry_failures and not self.monomial_failures

    def summary(self) -> str:
        lines = [f"orthogonality: {len(self.monomials_checked)} monomial(s) "
                 f"checked, entry failures {len(self.entry_failures)}, "
                 f"monomial failures {len(self.monomial_failures)}"]
        for i, j, r in self.entry_failures:
            lines.append(f"  entry ({i},{j}) residual {r.render()}")
        for w, r in self.monomial_failures:
            lines.append(f"  monomial {' '.join(w) or '1'} residual {r.render()}")
        return "\n".join(lines)


def _podles_normal_words(max_degree: int):
    """Normal sphere monomials of word length <= max_degree: Y^i Z^j and
    X^k Z^j (X and Y never coexist)."""
    words = [()]
    for j in range(max_degree + 1):
        for i in range(1, max_degree + 1 - j):
            words.append(("Y",) * i + ("Z",) * j)
            words.append(("X",) * i + ("Z",) * j)
        if j > 0:
            words.append(("Z",) * j)
    return words


# Fast exact pairing against elements of UQSU2 through the spin-1/2
# tensor-power representation: an OQSU2 word g_1...g_L is the matrix
# coefficient u_{i_1 j_1}...u_{i_L j_L}, and pair(w, h) is the
# ((i_l), (j_l)) entry of pi^{tensor L}(h) built via the iterated
# coproduct.  This avoids the exponential recursive splitting.

_LETTER_INDEX = {"al": (0, 0), "be": (0, 1), "ga": (1, 0), "de": (1, 1)}
_INDEX_LETTER = {v: k for k, v in _LETTER_INDEX.items()}


def _k_row_coeff(I, invert: bool = False) -> Scalar:
    # <I| pi^{tensor L}(k) is diagonal with entries prod q^{+-1}
    e = sum(1 - 2 * i for i in I)
    if invert:
        e = -e
    return _s(_Q) ** e if e >= 0 else _s(1 / _Q) ** (-e)


def _b_pair_rows(I, t: Scalar) -> dict:
    """dict J -> pair(u_{I,J}, B_t), via Delta^(L)(e) = sum k..k e 1..1,
    Delta^(L)(f) = sum 1..1 f ki..ki, Delta^(L)(k) = k..k."""
    q, qi, uu = _s(_Q), _s(1 / _Q), _s(U)
    out = {}

    def add(J, c):
        if c.is_zero():
            return
        out[J] = out.get(J, _s(0)) + c

    L = len(I)
    # (1/u) e  contributes pi(e)_{01} = q^(1/2) at one position
    for p in range(L):
        if I[p] == 0:
            c = _s(1) / uu * uu  # (1/u) * pi(e)_{01}
            for l in range(p):
                c = c * (q if I[l] == 0 else qi)
            add(I[:p] + (1,) + I[p + 1:], c)
    # -(1/u) f k: pi(f)_{10} = q^(-1/2), trailing ki legs, then k column
    for p in range(L):
        if I[p] == 1:
            J = I[:p] + (0,) + I[p + 1:]
            c = _s(-1) / uu / uu  # -(1/u) * pi(f)_{10}
            for l in range(p + 1, L):
                c = c * (qi if I[l] == 0 else q)
            c = c * _k_row_coeff(J)
            add(J, c)
    # -(it/(q-q^-1)) k
    add(I, _s(-IUNIT) * t / (q - qi) * _k_row_coeff(I))
    return out


def _pair_poly_with_b(p: NCPoly, t: Scalar) -> Scalar:
    total = _s(0)
    for w, c in p.terms.items():
        I = tuple(_LETTER_INDEX[g][0] for g in w)
        J = tuple(_LETTER_INDEX[g][1] for g in w)
        total = total + c * _b_pair_rows(I, t).get(J, _s(0))
    return total


def verify_orthogonality(max_degree: int = 3) -> OrthogonalityReport:
    """Exact check that the sphere coideal pairs trivially against B_t.

    (i)  pair(entry of U* (L_t (x) 1) U, B_t) = eps(B_t) L_t entrywise;
    (ii) for every image x of a PODLES normal monomial up to ``max_degree``,
         sum pair(x_(1), B_t) x_(2) = eps(B_t) x.
    """
    t = symbolic_t()
    bt = b_element()
    eps_bt = bt.counit()
    report = OrthogonalityReport()

    E = et_matrix()
    Lt = l_matrix()
    for i in range(2):
        for j in range(2):
            got = _pair_poly_with_b(E[i][j], t)
            want = eps_bt * Lt[i][j]
            if got != want:
                res = NCPoly.scalar(oqsu2(), got - want)
                report.entry_failures.append((i, j, res))

    target = oqsu2()
    for w in _podles_normal_words(max_degree):
        x = podles_image(NCPoly(podles(), {w: _s(1)}, normal=True))
        acc = NCPoly.zero(target)
        for wx, c in x.terms.items():
            I = tuple(_LETTER_INDEX[g][0] for g in wx)
            J = tuple(_LETTER_INDEX[g][1] for g in wx)
            # Delta(u_{I,J}) = sum_K u_{I,K} (x) u_{K,J}; pair the left leg
            for K, v in _b_pair_rows(I, t).items():
                word = tuple(_INDEX_LETTER[(K[l], J[l])] for l in range(len(wx)))
                acc = acc + NCPoly(target, {word: c * v})
        residual = acc - x * eps_bt
        report.monomials_checked.append(w)
        if not residual.is_zero():
            report.monomial_failures.append((w, residual))
    return report


def podles_image_rank(max_degree: int = 4, q: float = 0.37,
                      a: float = 0.21) -> tuple:
    """Numeric rank of the linear map sending PODLES normal monomials
    (degree <= max_degree) to their normal forms in OQSU2.

    Returns (rank, number of monomials); full rank means the two are equal.
    """
    import numpy as np

    words = _podles_normal_words(max_degree)
    images = [podles_image(NCPoly(podles(), {w: _s(1)}, normal=True))
              for w in words]
    basis = sorted({w for img in images for w in img.terms})
    pos = {w: i for i, w in enumerate(basis)}
    M = np.zeros((len(basis), len(words)), dtype=complex)
    for j, img in enumerate(images):
        for w, c in img.terms.items():
            M[pos[w], j] = c.evaluate(q=q, a=a)
    return int(np.linalg.matrix_rank(M, tol=1e-9)), len(words)


# -- dump/load ------------------------------------------------------------

def _render_poly(terms: dict) -> str:
    if not terms:
        return "0"
    parts = []
    for w in sorted(terms):
        c = terms[w]
        mono = " ".join(w) if w else "1"
        parts.append(f"[{c.render()}] {mono}")
    return " + ".join(parts)


def _parse_poly(text: str) -> dict:
    text = text.strip()
    if text == "0":
        return {}
    terms = {}
    depth = 0
    chunk = ""
    chunks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and text[i:i + 3] == " + ":
            chunks.append(chunk)
            chunk = ""
            i += 3
            continue
        chunk += ch
        i += 1
    chunks.append(chunk)
    for part in chunks:
        part = part.strip()
        close = part.rindex("]")
        coeff = Scalar.parse(part[1:close])
        mono = part[close + 1:].split()
        w = () if mono == ["1"] else tuple(mono)
        terms[w] = coeff
    return terms


def dump_presentation(pres: Presentation) -> str:
    lines = [f"presentation {pres.name}",
             "generators " + " ".join(pres.generators),
             "weights " + " ".join(f"{g}={pres.weights[g]}"
                                   for g in pres.generators)]
    for head in sorted(pres.rules, key=pres.word_key):
        lines.append(f"rule {' '.join(head)} -> "
                     f"{_render_poly(pres.rules[head])}")
    for g in pres.generators:
        lines.append(f"star {g} -> {_render_poly(pres.star[g])}")
    if pres.coproduct is not None:
        for g in pres.generators:
            entry = " ; ".join(
                f"[{c.render()}] {' '.join(w1) or '1'} | {' '.join(w2) or '1'}"
                for w1, w2, c in pres.coproduct[g])
            lines.append(f"coproduct {g} -> {entry}")
    if pres.counit is not None:
        for g in pres.generators:
            lines.append(f"counit {g} -> {pres.counit[g].render()}")
    if pres.antipode is not None:
        for g in pres.generators:
            lines.append(f"antipode {g} -> {_render_poly(pres.antipode[g])}")
    return "\n".join(lines) + "\n"


def load_presentation(text: str) -> Presentation:
    name = None
    generators = ()
    weights = {}
    rules = {}
    star = {}
    coproduct = {}
    counit = {}
    antipode = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        kind, _, rest = line.partition(" ")
        if kind == "presentation":
            name = rest.strip()
        elif kind == "generators":
            generators = tuple(rest.split())
        elif kind == "weights":
            for item in rest.split():
                g, _, wgt = item.partition("=")
                weights[g] = int(wgt)
        elif kind == "rule":
            head_s, _, poly_s = rest.partition("->")
            rules[tuple(head_s.split())] = _parse_poly(poly_s)
        elif kind == "star":
            g, _, poly_s = rest.partition("->")
            star[g.strip()] = _parse_poly(poly_s)
        elif kind == "coproduct":
            g, _, entry_s = rest.partition("->")
            entries = []
            for item in entry_s.split(";"):
                item = item.strip()
                close = item.rindex("]")
                c = Scalar.parse(item[1:close])
                left_s, _, right_s = item[close + 1:].partition("|")
                w1 = tuple(left_s.split()) if left_s.split() != ["1"] else ()
                w2 = tuple(right_s.split()) if right_s.split() != ["1"] else ()
                entries.append((w1, w2, c))
            coproduct[g.strip()] = entries
        elif kind == "counit":
            g, _, v = rest.partition("->")
            counit[g.strip()] = Scalar.parse(v)
        elif kind == "antipode":
            g, _, poly_s = rest.partition("->")
            antipode[g.strip()] = _parse_poly(poly_s)
        else:
            raise ValueError(f"unrecognized line: {line!r}")
    return Presentation(
        name=name or "LOADED",
        generators=generators,
        rules=rules,
        star=star,
        weights=weights,
        coproduct=coproduct or None,
        counit=counit or None,
        antipode=antipode or None,
    )


def bundled_presentations():
    return [uqsu2(), oqsu2(), podles(), qsl2r_presentation()]


def confluence_reports():
    return [confluence_check(p) for p in bundled_presentations()]
