import random

import numpy as np
import pytest

from qsl2r.modules import (admissible_family, canonical_module,
                           casimir_matrix, check_casimir,
                           check_star_property, check_window_relations,
                           finite_module, gram_oracle, norm_sequence,
                           window_csv)
from qsl2r.scalars import fqang, fqnum


def test_norm_recurrence_reference_value():
    # q=0.5, a=0, lam=0, b=0: r_2 = (<0>/<2>) <1> <1> r_0
    r = norm_sequence(0.5, 0.0, 0.0, 0.0, W=2)
    expected = (2 / 4.25) * 2.5 * 2.5
    assert abs(r[2.0] - expected) < 1e-12
    assert r[0.0] == 1.0


def test_trivial_module_truncates_both_ways():
    q, a = 0.5, 0.7
    lam = q + 1 / q
    r = norm_sequence(q, a, lam, a, W=2)
    assert abs(r[round(a + 2, 9)]) < 1e-12
    assert abs(r[round(a - 2, 9)]) < 1e-12


def test_window_relations_gram_and_casimir():
    rng = random.Random(41)
    for _ in range(6):
        q = rng.uniform(0.3, 0.9)
        a = rng.uniform(-2, 2)
        lam = rng.uniform(-3, 3)
        b = rng.uniform(-2, 2)
        w = canonical_module(q, a, lam, b, W=12)
        assert max(check_window_relations(w).values()) < 1e-10
        assert check_casimir(w) < 1e-10
        G = np.diag(gram_oracle(w))
        r = np.array([w.r[round(c, 9)] for c in w.cs])
        idx = w.interior()
        rel = np.abs(G[idx] - r[idx]) / np.maximum(np.abs(r[idx]), 1e-300)
        assert rel.max() < 1e-10
        assert max(check_star_property(w).values()) < 1e-10


def test_diagonal_skew_action():
    w = canonical_module(0.5, 0.3, 1.0, 0.1, W=4)
    for i, c in enumerate(w.cs):
        assert abs(w.B[i, i] - (-1j * fqnum(0.5, c))) < 1e-12


def test_admissible_families_satisfy_relations():
    rng = random.Random(43)
    for _ in range(4):
        q = rng.uniform(0.3, 0.9)
        a = rng.uniform(-2, 2)
        lam = rng.uniform(-2, 2)
        b = rng.uniform(-2, 2)
        for sign in "+-":
            w = admissible_family(q, a, lam, b, sign, W=12)
            assert max(check_window_relations(w).values()) < 1e-10
            assert check_casimir(w) < 1e-10


def test_admissible_diagonal_coefficient_closed_form():
    # Z diagonal = (-<1>[[a]] + [[c]] lam) / (<c-1><c+1>)
    q, a, lam, b = 0.5, 0.25, 0.8, 0.75
    w = admissible_family(q, a, lam, b, "+", W=6)
    for i, c in enumerate(w.cs):
        ref = (-fqang(q, 1) * (q ** a - q ** -a)
               + (q ** c - q ** -c) * lam) / (fqang(q, c - 1) * fqang(q, c + 1))
        assert abs(w.Z[i, i] - ref) < 1e-12


def test_admissible_coefficients_uniformly_bounded():
    q, a, lam, b = 0.5, 0.3, 1.2, 0.7
    for sign in "+-":
        sups = []
        for W in (10, 20, 40):
            w = admissible_family(q, a, lam, b, sign, W)
            sups.append(max(np.abs(M).max() for M in (w.X, w.Y, w.Z)))
        assert abs(sups[0] - sups[2]) < 1e-9


def test_finite_modules_truncate_and_carry_casimir():
    q, a = 0.5, 0.5
    for N in (1, 2, 5):
        for sign, s in (("+", 1), ("-", -1)):
            w = finite_module(q, a, N, sign)
            assert w.dim == N
            lam = s * fqang(q, N)
            assert abs(w.lam - lam) < 1e-12
            res = np.abs(casimir_matrix(w) - lam * np.eye(N)).max()
            assert res < 1e-10 * max(1.0, abs(lam))
            # truncation: the canonical norms vanish just outside
            r = norm_sequence(q, a, lam, w.b, W=N + 1)
            top = w.cs[-1]
            assert abs(r[round(w.b - 2, 9)]) < 1e-9
            assert abs(r[round(top + 2, 9)]) < 1e-9 * max(
                1.0, abs(r[round(top, 9)]))


def test_finite_module_rejects_bad_input():
    with pytest.raises(ValueError):
        finite_module(0.5, 0.0, 0, "+")
    with pytest.raises(ValueError):
        finite_module(0.5, 0.0, 2, "x")


def test_window_csv_shape():
    w = canonical_module(0.5, 0.0, 0.0, 0.0, W=3)
    text = window_csv(w)
    lines = text.strip().split("\n")
    assert len(lines) == 1 + w.dim
    assert lines[0].startswith("c,r_c,")
