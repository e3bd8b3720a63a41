"""Unitarity analysis and classification of irreducible *-representations.

The norm recurrence attaches to each lattice bond (c, c+2), c in b + 2Z,
the factor F(c) = (lam + S(a+c+1)) (S(a-c-1) - lam) with S(x) = q^x +
q^-x.  A module is unitary exactly when every partial product of bond
factors away from b is nonnegative; since the negative-bond region is a
single bounded interval whose endpoints are the factor zeros, the case
analysis closes in finitely many comparisons.  An independent
sign-pattern scan of the partial products cross-validates the closed
form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, asdict

from .scalars import fqang
from .modules import bond_factor

__all__ = [
    "UnitarityVerdict", "ClassEntry", "ConsistencyError",
    "reduce_center", "reduce_center_mirror", "unitarity_test", "sign_scan",
    "classify", "completeness_scan", "finite_dim_classify",
    "subquotient_identify", "parse_lam_token", "entries_to_json",
    "SCHEMA_VERSION", "DEFAULT_TOL",
]

SCHEMA_VERSION = "1.0"
DEFAULT_TOL = 1e-9


class ConsistencyError(RuntimeError):
    """Closed-form case analysis and sign-pattern scan disagree."""


@dataclass
class UnitarityVerdict:
    unitary: bool
    case: int | None          # 1..4 per the unitary-module case split
    support_lo: float | None  # smallest weight index, None if unbounded
    support_hi: float | None
    b_red: float              # representative of b + 2Z in (a-2, a]
    b_prime: float            # representative in (-a-2, -a]
    detail: str = ""

    @property
    def support(self) -> str:
        if not self.unitary:
            return "none"
        if self.support_lo is None and self.support_hi is None:
            return "two-sided"
        if self.support_hi is None:
            return "lower-bounded"
        if self.support_lo is None:
            return "upper-bounded"
        return "finite"


@dataclass
class ClassEntry:
    family: str               # L+ | L- | D+ | D- | E+ | E- | I | C | VN+ | VN-
    b: float
    lam: float | None = None          # None for continuous families
    lam_range: tuple | None = None    # (lo, hi), open interval
    n: int | None = None
    sector: int = 0                   # parity of b - a (0 even, 1 odd)
    support: str = "two-sided"
    admissible: bool = True
    schema_version: str = SCHEMA_VERSION

    def sort_key(self):
        lam = self.lam if self.lam is not None else self.lam_range[0]
        return (lam, self.b, self.family)

    def contains_lam(self, lam, tol=DEFAULT_TOL) -> bool:
        if self.lam_range is not None:
            lo, hi = self.lam_range
            return lo + tol < lam < hi - tol
        return abs(lam - self.lam) <= max(tol, 1e-7 * max(1.0, abs(self.lam)))


def reduce_center(b, a) -> float:
    """Unique representative of b + 2Z in (a-2, a]."""
    return b - 2 * math.ceil((b - a) / 2 - 1e-12)


def reduce_center_mirror(b, a) -> float:
    """Unique representative of b + 2Z in (-a-2, -a]."""
    return b - 2 * math.ceil((b + a) / 2 - 1e-12)


def _factor_zeros(q, a, lam, tol):
    """Bond coordinates where a norm-recurrence factor vanishes, and the
    open interval of strictly negative bonds.  Returns (zeros, lo, hi);
    zeros is empty for |lam| < 2."""
    mag = abs(lam)
    if mag < 2 - 10 * tol:
        return [], None, None
    x = 0.0 if mag <= 2 else math.log((mag + math.sqrt(mag * mag - 4)) / 2) \
        / math.log(1 / q)
    center = a - 1 if lam > 0 else -a - 1
    return [center - x, center + x], center - x, center + x


def _on_lattice(z, b, q, a, lam, tol):
    """Snap z to the coset b + 2Z; accept when the snapped bond's factor
    vanishes in lam-space within tolerance."""
    k = round((z - b) / 2)
    c = b + 2 * k
    scale = max(1.0, abs(lam))
    f1 = lam + fqang(q, a + c + 1)
    f2 = fqang(q, a - c - 1) - lam
    if min(abs(f1), abs(f2)) <= tol * scale:
        return c
    return None


def unitarity_test(q, a, lam, b, tol=DEFAULT_TOL,
                   cross_validate=True) -> UnitarityVerdict:
    """Closed-form unitarity case analysis for the lambda-basic module
    centered at b, optionally cross-validated against the sign-pattern
    scan of the partial products."""
    b_red = reduce_center(b, a)
    b_prime = reduce_center_mirror(b, a)
    zeros, neg_lo, neg_hi = _factor_zeros(q, a, lam, tol)
    lattice_zeros = []
    for z in zeros:
        c = _on_lattice(z, b, q, a, lam, tol)
        if c is not None and c not in lattice_zeros:
            lattice_zeros.append(c)

    def first_neg_up():
        # smallest lattice bond >= b strictly inside (neg_lo, neg_hi)
        if neg_lo is None:
            return None
        start = max(b, b + 2 * math.ceil((neg_lo + tol - b) / 2))
        if start < neg_hi - tol and all(abs(start - z) > tol
                                        for z in lattice_zeros):
            return start
        return None

    def first_neg_dn():
        # largest lattice bond <= b - 2 strictly inside the interval
        if neg_lo is None:
            return None
        start = min(b - 2, b + 2 * math.floor((neg_hi - tol - b) / 2))
        if start > neg_lo + tol and all(abs(start - z) > tol
                                        for z in lattice_zeros):
            return start
        return None

    up_zeros = sorted(z for z in lattice_zeros if z >= b - tol)
    dn_zeros = sorted((z for z in lattice_zeros if z <= b - 2 + tol),
                      reverse=True)
    nu, nd = first_neg_up(), first_neg_dn()

    hi = None
    if up_zeros and (nu is None or up_zeros[0] <= nu + tol):
        hi = up_zeros[0]
    elif nu is not None:
        verdict = UnitarityVerdict(False, None, None, None, b_red, b_prime,
                                   detail="negative bond at c=%.6g" % nu)
        if cross_validate:
            _check_against_scan(verdict, q, a, lam, b, tol)
        return verdict

    lo = None
    if dn_zeros and (nd is None or dn_zeros[0] >= nd - tol):
        lo = dn_zeros[0] + 2
    elif nd is not None:
        verdict = UnitarityVerdict(False, None, None, None, b_red, b_prime,
                                   detail="negative bond at c=%.6g" % nd)
        if cross_validate:
            _check_against_scan(verdict, q, a, lam, b, tol)
        return verdict

    if hi is None and lo is None:
        case, detail = 1, "two-sided"
    elif hi is None:
        case, detail = 2, "lower-bounded at c=%.6g" % lo
    elif lo is None:
        case, detail = 3, "upper-bounded at c=%.6g" % hi
    elif abs(hi - lo) <= tol:
        case, detail = 4, "one-dimensional at c=%.6g" % hi
    else:
        # finite support of dimension >= 2 cannot carry a positive form;
        # the geometry above should never produce it
        verdict = UnitarityVerdict(False, None, lo, hi, b_red, b_prime,
                                   detail="finite support, not unitary")
        if cross_validate:
            _check_against_scan(verdict, q, a, lam, b, tol)
        return verdict

    verdict = UnitarityVerdict(True, case, lo, hi, b_red, b_prime, detail)
    if cross_validate:
        _check_against_scan(verdict, q, a, lam, b, tol)
    return verdict


def sign_scan(q, a, lam, b, n_max=60, tol=DEFAULT_TOL):
    """Independent unitarity check: walk the bond factors away from b
    and track the sign of every partial product (a zero latches the
    direction).  Returns (unitary, support_lo, support_hi); bounds are
    None when no truncation occurs within n_max steps."""
    scale = max(1.0, abs(lam))

    def walk(step):
        c = b if step > 0 else b - 2
        for _ in range(n_max):
            f = bond_factor(q, a, lam, c)
            f1 = lam + fqang(q, a + c + 1)
            f2 = fqang(q, a - c - 1) - lam
            if min(abs(f1), abs(f2)) <= tol * scale:
                return True, c      # zero bond: truncation, rest latched
            if f < 0:
                return False, c     # negative partial product
            c += step
        return True, None

    ok_up, top = walk(2)
    if not ok_up:
        return False, None, None
    ok_dn, bot = walk(-2)
    if not ok_dn:
        return False, None, None
    return True, (None if bot is None else bot + 2), top


def _check_against_scan(verdict, q, a, lam, b, tol):
    unitary, lo, hi = sign_scan(q, a, lam, b, tol=tol)
    same = unitary == verdict.unitary
    if unitary and verdict.unitary:
        for mine, scanned in ((verdict.support_lo, lo),
                              (verdict.support_hi, hi)):
            if (mine is None) != (scanned is None):
                # the scan only sees a finite window; a truncation beyond
                # its range legitimately appears unbounded there
                if scanned is None and mine is not None \
                        and abs(mine - b) > 110:
                    continue
                same = False
            elif mine is not None and abs(mine - scanned) > tol:
                same = False
    if not same:
        raise ConsistencyError(
            f"case analysis {verdict} disagrees with sign scan "
            f"{(unitary, lo, hi)} at q={q}, a={a}, lam={lam}, b={b}")


# -- classification -------------------------------------------------------

def _is_half_integral(a, tol=DEFAULT_TOL) -> bool:
    return abs(2 * a - round(2 * a)) <= tol


def classify(q, a, n_max=16, tol=DEFAULT_TOL) -> list:
    """All irreducible *-representation families for the given (q, a),
    discrete series enumerated up to n_max.  Every entry is validated
    through unitarity_test."""
    entries = []

    def sector(b):
        return round(b - a) % 2

    # continuous families: two-sided modules on the even/odd lattices
    for b in (a, a - 1):
        upper = fqang(q, a - reduce_center(b, a) - 1)
        lower = -fqang(q, a + reduce_center_mirror(b, a) + 1)
        if lower < upper - tol:
            entries.append(ClassEntry(
                family="L+" if sector(b) == 0 else "L-", b=b,
                lam_range=(lower, upper), sector=sector(b),
                support="two-sided"))

    # discrete series D_n^+-: lam = S(n-1), center a +- n
    for n in range(1, n_max + 1):
        lam = fqang(q, n - 1)
        entries.append(ClassEntry(family="D+", b=a + n, lam=lam, n=n,
                                  sector=sector(a + n),
                                  support="lower-bounded"))
        entries.append(ClassEntry(family="D-", b=a - n, lam=lam, n=n,
                                  sector=sector(a - n),
                                  support="upper-bounded"))

    # exceptional series E_n^+-
    n = math.floor(-2 * a) + 1
    while n <= n_max:
        if n > -2 * a + tol:
            entries.append(ClassEntry(
                family="E+", b=a + n, lam=-fqang(q, 2 * a + n - 1), n=n,
                sector=sector(a + n), support="lower-bounded"))
        n += 1
    n = math.floor(2 * a) + 1
    while n <= n_max:
        if n > 2 * a + tol:
            entries.append(ClassEntry(
                family="E-", b=a - n, lam=-fqang(q, -2 * a + n - 1), n=n,
                sector=sector(a - n), support="upper-bounded"))
        n += 1

    # the trivial module and, for half-integral a, the sign module
    entries.append(ClassEntry(family="I", b=a, lam=fqang(q, 1), sector=0,
                              support="finite"))
    if _is_half_integral(a, tol):
        entries.append(ClassEntry(family="C", b=-a, lam=-fqang(q, 1),
                                  sector=sector(-a), support="finite"))

    for e in entries:
        lam = e.lam if e.lam is not None else 0.5 * (e.lam_range[0]
                                                     + e.lam_range[1])
        v = unitarity_test(q, a, lam, e.b, tol=tol)
        if not v.unitary or v.support != e.support:
            raise ConsistencyError(
                f"classification entry {e} fails unitarity_test: {v}")
    entries.sort(key=ClassEntry.sort_key)
    return entries


def completeness_scan(q, a, b, entries=None, n_points=400,
                      lam_span=None, tol=DEFAULT_TOL) -> list:
    """Scan a lambda-grid for unitary verdicts not covered by the
    emitted families; returns the offending lambda values (empty when
    the classification is complete)."""
    if entries is None:
        entries = classify(q, a, tol=tol)
    if lam_span is None:
        lam_span = (-2 * fqang(q, 1) - 1, 2 * fqang(q, 1) + 1)
    parity = round(b - a) % 2
    missing = []
    for i in range(n_points):
        lam = lam_span[0] + (lam_span[1] - lam_span[0]) * i / (n_points - 1)
        v = unitarity_test(q, a, lam, b, tol=tol)
        if not v.unitary:
            continue
        covered = any(e.sector == parity and e.contains_lam(lam, tol)
                      for e in entries)
        if not covered:
            missing.append(lam)
    return missing


def finite_dim_classify(q, a, N, tol=DEFAULT_TOL) -> list:
    """The two dimension-N modules: V_N^+ at (b, lam) = (a-N+1, S(N)),
    V_N^- at (-a-N+1, -S(N)); the minus module is admissible (its
    weights land on the integral lattice) exactly when a is a
    half-integer."""
    if N < 1 or N != int(N):
        raise ValueError("N must be a positive integer")
    out = []
    for family, b, lam, adm in (
            ("VN+", a - N + 1, fqang(q, N), True),
            ("VN-", -a - N + 1, -fqang(q, N), _is_half_integral(a, tol))):
        out.append(ClassEntry(family=family, b=b, lam=lam, n=N,
                              sector=round(b - a) % 2, support="finite",
                              admissible=adm))
    return out


def subquotient_identify(q, a, lam, b, sign="+", tol=DEFAULT_TOL) -> dict:
    """Locate the irreducible constituents of the admissible family
    V^sign on the coset b + 2Z at the given lambda.

    Case 1 (irreducible) when -lam_chi^- < lam < lam_chi^+ with
    lam_chi^+- the minimum of S(a -+ (c+1)) over the coset; otherwise
    the boundary equalities of cases 2-4 identify an embedded or
    quotient module, reported through unitarity_test.
    """
    c_plus = b + 2 * round((a - 1 - b) / 2)
    c_minus = b + 2 * round((-a - 1 - b) / 2)
    lam_chi_plus = fqang(q, a - c_plus - 1)
    lam_chi_minus = fqang(q, a + c_minus + 1)
    genericity_ok = abs(fqang(q, a - b + 1) - lam) > tol

    result = {
        "schema_version": SCHEMA_VERSION,
        "lam_chi_plus": lam_chi_plus,
        "lam_chi_minus": lam_chi_minus,
        "genericity_ok": genericity_ok,
    }
    if -lam_chi_minus + tol < lam < lam_chi_plus - tol:
        result["case"] = 1
        result["constituents"] = [{
            "module": "L", "lam": lam, "b": b, "support": "two-sided"}]
        return result

    v = unitarity_test(q, a, lam, b, tol=tol)
    if v.unitary and v.case == 4:
        result["case"] = 4
        result["constituents"] = [{
            "module": "I" if lam > 0 else "C", "lam": lam,
            "b": v.support_hi, "support": "finite"}]
        return result
    if v.unitary and v.case in (2, 3):
        result["case"] = v.case
        B = v.support_lo if v.case == 2 else v.support_hi
        result["constituents"] = [{
            "module": "L", "lam": lam, "b": B,
            "support": v.support}]
        return result
    # boundary lambda with b inside the finite block, or non-unitary
    result["case"] = None
    result["constituents"] = []
    result["note"] = v.detail or "no unitary constituent through this center"
    return result


def parse_lam_token(token, q) -> float:
    """lambda given numerically or symbolically as 'qang:x' (= q^x+q^-x)
    or 'neg-qang:x'."""
    if isinstance(token, (int, float)):
        return float(token)
    token = token.strip()
    if token.startswith("qang:"):
        return fqang(q, float(token[5:]))
    if token.startswith("neg-qang:"):
        return -fqang(q, float(token[9:]))
    return float(token)


def entries_to_json(entries) -> str:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "entries": [asdict(e) for e in entries],
    }
    return json.dumps(payload, indent=2, sort_keys=True)
