"""Noncommutative polynomials with directed rewriting to normal form.

Words are tuples of generator names.  A Presentation fixes the generator
order, the rewrite rules (head word -> normal-form polynomial), the star
images of generators, and optionally coproduct, counit, antipode and a
pairing seed.  Rewriting replaces the leftmost rule head occurring in a
word; the word order (total generator weight, then lexicographic position)
strictly decreases on every rule, so rewriting terminates, and the bundled
rule sets are confluent (see ``confluence_check``).

Presentations are immutable after construction; all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .scalars import Scalar

__all__ = [
    "Word", "Presentation", "NCPoly", "Pairing",
    "RewriteError", "UnsupportedOperation", "DegreeBoundError",
    "ConfluenceReport", "confluence_check",
]

Word = tuple  # tuple of generator name strings

_MAX_REWRITE_STEPS = 2_000_000


class RewriteError(Exception):
    """Rewriting failed to terminate within the step budget."""


class UnsupportedOperation(Exception):
    """The presentation lacks the structure needed for this operation."""


class DegreeBoundError(Exception):
    """Pairing degree bound exceeded."""


@dataclass(frozen=True)
class Presentation:
    """A finitely presented algebra with a confluent rewriting system.

    rules map two-letter head words to their normal-form replacement
    (a dict word -> Scalar); star maps each generator to a normal-form
    polynomial.  coproduct entries are lists of (left, right) tensor
    factors, each factor a monomial word with unit coefficient.
    """

    name: str
    generators: tuple
    rules: dict = field(default_factory=dict)
    star: dict = field(default_factory=dict)
    weights: dict = field(default_factory=dict)
    coproduct: Optional[dict] = None
    counit: Optional[dict] = None
    antipode: Optional[dict] = None

    def __post_init__(self):
        for g in self.generators:
            self.weights.setdefault(g, 1)

    def index(self, g: str) -> int:
        return self.generators.index(g)

    def word_weight(self, w: Word) -> int:
        return sum(self.weights[g] for g in w)

    def word_key(self, w: Word):
        """Total order on words: weight, then lexicographic by generator rank."""
        return (self.word_weight(w), tuple(self.index(g) for g in w))

    # -- rewriting -------------------------------------------------------

    def reduce_word(self, word: Word, coeff: Scalar) -> dict:
        """Fully rewrite ``coeff * word``; returns {normal word: Scalar}."""
        out: dict = {}
        stack = [(tuple(word), coeff)]
        steps = 0
        while stack:
            w, c = stack.pop()
            steps += 1
            if steps > _MAX_REWRITE_STEPS:
                raise RewriteError(
                    f"rewriting in {self.name} exceeded {_MAX_REWRITE_STEPS} steps")
            for i in range(len(w) - 1):
                head = (w[i], w[i + 1])
                rhs = self.rules.get(head)
                if rhs is not None:
                    pre, post = w[:i], w[i + 2:]
                    for rw, rc in rhs.items():
                        stack.append((pre + rw + post, c * rc))
                    break
            else:
                nc = out.get(w)
                out[w] = c if nc is None else nc + c
                if out[w].is_zero():
                    del out[w]
        return out

    def is_normal(self, w: Word) -> bool:
        return all((w[i], w[i + 1]) not in self.rules for i in range(len(w) - 1))


class NCPoly:
    """A finite Scalar-linear combination of normal-form words."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: Presentation, terms: Optional[dict] = None,
                 normal: bool = False):
        self.pres = pres
        if terms is None:
            terms = {}
        if normal:
            self.terms = {w: c for w, c in terms.items() if not c.is_zero()}
        else:
            acc: dict = {}
            for w, c in terms.items():
                if c.is_zero():
                    continue
                for nw, nc in pres.reduce_word(w, c).items():
                    prev = acc.get(nw)
                    s = nc if prev is None else prev + nc
                    if s.is_zero():
                        acc.pop(nw, None)
                    else:
                        acc[nw] = s
            self.terms = acc

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(pres: Presentation) -> "NCPoly":
        return NCPoly(pres, {}, normal=True)

    @staticmethod
    def one(pres: Presentation) -> "NCPoly":
        return NCPoly(pres, {(): Scalar(1)}, normal=True)

    @staticmethod
    def gen(pres: Presentation, g: str) -> "NCPoly":
        if g not in pres.generators:
            raise KeyError(f"{g!r} is not a generator of {pres.name}")
        return NCPoly(pres, {(g,): Scalar(1)}, normal=True)

    @staticmethod
    def scalar(pres: Presentation, s) -> "NCPoly":
        s = s if isinstance(s, Scalar) else Scalar(s)
        return NCPoly(pres, {(): s}, normal=True)

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "NCPoly"):
        if self.pres is not other.pres:
            raise ValueError("operands belong to different presentations")

    def __add__(self, other):
        if isinstance(other, (Scalar, int)):
            other = NCPoly.scalar(self.pres, other)
        self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            s = acc.get(w, None)
            s = c if s is None else s + c
            if s.is_zero():
                acc.pop(w, None)
            else:
                acc[w] = s
        return NCPoly(self.pres, acc, normal=True)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.pres, {w: -c for w, c in self.terms.items()},
                      normal=True)

    def __sub__(self, other):
        if isinstance(other, (Scalar, int)):
            other = NCPoly.scalar(self.pres, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            s = other if isinstance(other, Scalar) else Scalar(other)
            return NCPoly(self.pres,
                          {w: c * s for w, c in self.terms.items()},
                          normal=True)
        self._check(other)
        raw: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                prev = raw.get(w)
                raw[w] = c if prev is None else prev + c
        return NCPoly(self.pres, raw)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (Scalar, int)):
            other = NCPoly.scalar(self.pres, other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("NCPoly is unhashable")

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def map_coeffs(self, f) -> "NCPoly":
        return NCPoly(self.pres, {w: f(c) for w, c in self.terms.items()},
                      normal=True)

    def coefficient(self, w: Word) -> Scalar:
        return self.terms.get(tuple(w), Scalar(0))

    # -- structure maps --------------------------------------------------

    def star(self) -> "NCPoly":
        """Conjugate-linear anti-multiplicative involution, in normal form."""
        out = NCPoly.zero(self.pres)
        for w, c in self.terms.items():
            p = NCPoly.scalar(self.pres, c.conj())
            for g in reversed(w):
                p = p * NCPoly(self.pres, self.pres.star[g], normal=True)
            out = out + p
        return out

    def counit(self) -> Scalar:
        if self.pres.counit is None:
            raise UnsupportedOperation(f"{self.pres.name} has no counit")
        total = Scalar(0)
        for w, c in self.terms.items():
            val = c
            for g in w:
                val = val * self.pres.counit[g]
                if val.is_zero():
                    break
            total = total + val
        return total

    def coproduct(self) -> dict:
        """Multiplicative coproduct; returns {(word1, word2): Scalar} with
        both tensor legs in normal form."""
        if self.pres.coproduct is None:
            raise UnsupportedOperation(f"{self.pres.name} has no coproduct")
        acc: dict = {}
        for w, c in self.terms.items():
            for w1, w2, cc in _raw_coproduct_word(self.pres, w):
                left = self.pres.reduce_word(w1, c * cc)
                for lw, lc in left.items():
                    right = self.pres.reduce_word(w2, lc)
                    for rw, rc in right.items():
                        key = (lw, rw)
                        prev = acc.get(key)
                        s = rc if prev is None else prev + rc
                        if s.is_zero():
                            acc.pop(key, None)
                        else:
                            acc[key] = s
        return acc

    def antipode(self) -> "NCPoly":
        if self.pres.antipode is None:
            raise UnsupportedOperation(f"{self.pres.name} has no antipode")
        out = NCPoly.zero(self.pres)
        for w, c in self.terms.items():
            p = NCPoly.scalar(self.pres, c)
            for g in w:  # S is an anti-homomorphism: S(xy) = S(y)S(x)
                p = NCPoly(self.pres, self.pres.antipode[g], normal=True) * p
            out = out + p
        return out

    def subs_c_shift(self, k: int) -> "NCPoly":
        """Shift the spectral parameter: z -> q^k z in every coefficient."""
        return self.map_coeffs(lambda s: s.subs_c_shift(k))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=self.pres.word_key):
            c = self.terms[w]
            mono = " ".join(w) if w else "1"
            parts.append(f"({c.render()}) {mono}" if w else f"({c.render()})")
        return " + ".join(parts)

    def __repr__(self):
        return f"NCPoly<{self.pres.name}>({self.render()})"


def _raw_coproduct_word(pres: Presentation, w: Word):
    """Unreduced multiplicative coproduct of a word: yields (w1, w2, coeff)."""
    combos = [((), (), Scalar(1))]
    for g in w:
        entry = pres.coproduct[g]
        combos = [(w1 + f1, w2 + f2, c * cc)
                  for (w1, w2, c) in combos
                  for (f1, f2, cc) in entry]
    return combos


# -- confluence -----------------------------------------------------------

@dataclass
class ConfluenceReport:
    presentation: str
    ambiguities: list
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        head = (f"{self.presentation}: {len(self.ambiguities)} overlap(s) "
                f"checked, {len(self.failures)} failure(s)")
        lines = [head]
        for (w, lhs, rhs) in self.failures:
            lines.append(f"  divergent overlap {' '.join(w)}: "
                         f"{lhs.render()}  vs  {rhs.render()}")
        return "\n".join(lines)


def confluence_check(pres: Presentation) -> ConfluenceReport:
    """Resolve every overlap ambiguity x y z with (x,y) and (y,z) rule heads.

    Also validates that each rule strictly decreases the word order and that
    every right-hand side is already in normal form.
    """
    ambiguities = []
    failures = []
    for head, rhs in pres.rules.items():
        hk = pres.word_key(head)
        for w in rhs:
            if not pres.is_normal(w):
                failures.append((head, NCPoly(pres, dict(rhs), normal=True),
                                 NCPoly.zero(pres)))
            if pres.word_key(w) >= hk:
                raise RewriteError(
                    f"rule {' '.join(head)} in {pres.name} does not decrease "
                    f"the word order (offending term {' '.join(w)})")
    for (x, y1) in pres.rules:
        for (y2, zg) in pres.rules:
            if y1 != y2:
                continue
            w = (x, y1, zg)
            ambiguities.append(w)
            # reduce the left pair first, then the right pair first
            left = NCPoly(pres, {lw + (zg,): lc
                                 for lw, lc in pres.rules[(x, y1)].items()})
            right = NCPoly(pres, {(x,) + rw: rc
                                  for rw, rc in pres.rules[(y2, zg)].items()})
            if not (left - right).is_zero():
                failures.append((w, left, right))
    return ConfluenceReport(pres.name, ambiguities, failures)


# -- Hopf pairing ---------------------------------------------------------

class Pairing:
    """A bilinear Hopf pairing between presentations A and U.

    The seed fixes the value on (generator-or-1, generator-or-1); composite
    arguments are split recursively through the coproducts, with memoization
    on word pairs.  Tensor factors of all bundled coproducts are words of
    length <= 1, which the recursion relies on for its base case.
    """

    def __init__(self, a_pres: Presentation, u_pres: Presentation,
                 seed: dict, max_degree: int = 6):
        if a_pres.coproduct is None or u_pres.coproduct is None:
            raise UnsupportedOperation("pairing needs coproducts on both sides")
        self.a_pres = a_pres
        self.u_pres = u_pres
        self.seed = seed
        self.max_degree = max_degree
        self._memo: dict = {}

    def pair(self, x: NCPoly, h: NCPoly) -> Scalar:
        if x.pres is not self.a_pres or h.pres is not self.u_pres:
            raise ValueError("pairing arguments belong to the wrong algebras")
        total = Scalar(0)
        for wa, ca in x.terms.items():
            if len(wa) > self.max_degree:
                raise DegreeBoundError(
                    f"monomial degree {len(wa)} exceeds bound {self.max_degree}")
            for wu, cu in h.terms.items():
                if len(wu) > self.max_degree:
                    raise DegreeBoundError(
                        f"monomial degree {len(wu)} exceeds bound "
                        f"{self.max_degree}")
                total = total + ca * cu * self._pair_words(wa, wu)
        return total

    def _seed_value(self, wa: Word, wu: Word) -> Scalar:
        if not wa and not wu:
            return Scalar(1)
        if not wa:
            return self.u_pres.counit[wu[0]]
        if not wu:
            return self.a_pres.counit[wa[0]]
        return self.seed.get((wa[0], wu[0]), Scalar(0))

    def _pair_words(self, wa: Word, wu: Word) -> Scalar:
        if len(wa) <= 1 and len(wu) <= 1:
            return self._seed_value(wa, wu)
        if not wu:
            total = Scalar(1)
            for g in wa:
                total = total * self.a_pres.counit[g]
            return total
        if not wa:
            total = Scalar(1)
            for g in wu:
                total = total * self.u_pres.counit[g]
            return total
        key = (wa, wu)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        total = Scalar(0)
        if len(wu) > 1:
            h1, rest = (wu[0],), wu[1:]
            for w1, w2, c in _raw_coproduct_word(self.a_pres, wa):
                if c.is_zero():
                    continue
                v1 = self._pair_words(w1, h1)
                if v1.is_zero():
                    continue
                total = total + c * v1 * self._pair_words(w2, rest)
        else:
            a1, rest = (wa[0],), wa[1:]
            for f1, f2, c in self.u_pres.coproduct[wu[0]]:
                v1 = self._pair_words(a1, f1)
                if v1.is_zero():
                    continue
                total = total + c * v1 * self._pair_words(rest, f2)
        self._memo[key] = total
        return total
