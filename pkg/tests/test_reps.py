import random

import numpy as np
import pytest

from qsl2r.reps import (SphericalVectorError, SpectralMismatchError,
                        ib_matrix, rep_matrix, spectrum_exact,
                        spectrum_json, spectrum_numeric, spherical_vector,
                        verify_rep_relations)
from qsl2r.scalars import fqnum


def test_defining_relations_in_every_spin():
    rng = random.Random(5)
    for j2 in range(0, 9):  # j = 0, 1/2, ..., 4
        q = rng.uniform(0.2, 0.9)
        res = verify_rep_relations(j2 / 2, q)
        worst = max(res.values())
        assert worst < 1e-11, (j2 / 2, res)


def test_ib_is_hermitian_tridiagonal():
    M = ib_matrix(3 / 2, 0.6, 0.4)
    assert np.allclose(M, M.conj().T)
    n = M.shape[0]
    for i in range(n):
        for k in range(n):
            if abs(i - k) > 1:
                assert M[i, k] == 0


def test_spectrum_exact_low_spins():
    for n in range(0, 5):
        ident = spectrum_exact(n / 2)
        assert ident.ok


def test_spectrum_numeric_matches_analytic_labels():
    rng = random.Random(9)
    for _ in range(4):
        q = rng.uniform(0.2, 0.9)
        a = rng.uniform(-2, 2)
        for n in (1, 4, 9):
            pairs = spectrum_numeric(n / 2, q, a)
            assert len(pairs) == n + 1


def test_spectrum_numeric_raises_on_wrong_targets():
    with pytest.raises(SpectralMismatchError):
        spectrum_numeric(1, 0.5, 0.3, tol=1e-30)


def test_spectrum_json_schema():
    payload = spectrum_json(1, 0.5, 0.0)
    assert payload["spin"] == 1
    assert [e["c"] for e in payload["eigenvalues"]] == [-2.0, 0.0, 2.0]
    vals = sorted(e["value"] for e in payload["eigenvalues"])
    assert abs(vals[0] + 2.5) < 1e-12 and abs(vals[2] - 2.5) < 1e-12


def test_spherical_vector_requires_integer_spin():
    with pytest.raises(SphericalVectorError):
        spherical_vector(3 / 2, 0.5, 0.3)


def test_spherical_vector_j1_closed_form():
    # (q^-1/2, i t / sqrt(q+q^-1), q^1/2) normalized
    for q, a in ((0.5, 0.3), (0.7, -1.1)):
        t = q ** a - q ** (-a)
        v = spherical_vector(1, q, a)
        ref = np.array([q ** -0.5, 1j * t / np.sqrt(q + 1 / q), q ** 0.5])
        ref = ref / np.linalg.norm(ref)
        comp = np.array(v.components)
        phase = ref[0] / comp[0]
        assert abs(abs(phase) - 1) < 1e-12
        assert np.abs(comp * phase - ref).max() < 1e-9
        assert v.residual < 1e-9


def test_spherical_companions_are_other_eigenvectors():
    q, a = 0.55, 0.8
    M = ib_matrix(1, q, a)
    s = np.sqrt(q + 1 / q)
    plus = np.array([q ** (a + 0.5), -1j * s, -q ** (-a - 0.5)])
    minus = np.array([-q ** (-a + 0.5), -1j * s, q ** (a - 0.5)])
    for vec, c in ((plus, a + 2), (minus, a - 2)):
        lam = fqnum(q, c)
        assert np.abs(M @ vec - lam * vec).max() < 1e-12
