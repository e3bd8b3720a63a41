"""Finite-dimensional representations of U_q(su(2)), the tridiagonal
operator iB_t, its exact and numeric spectral theory, and spherical
vectors.

Spin j acts on the n+1 = 2j+1 dimensional space with orthonormal basis
xi_0, ..., xi_n.  Square roots in the orthonormal gauge force floats; the
exact spectral statement is routed through the root-free dual
q^(-2)-Krawtchouk three-term recurrence, whose Jacobi matrix is similar
to (q - q^-1) iB_t rescaled by q^(n-a).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scalars import LAM, U, VA, Scalar, fqnum, qpow
from fractions import Fraction

__all__ = [
    "SpinError", "SphericalVectorError", "SpectralMismatchError",
    "rep_matrix", "ib_matrix", "scaled_ib_matrix",
    "krawtchouk_jacobi", "spectrum_exact", "spectrum_numeric",
    "SphericalVector", "spherical_vector",
    "verify_rep_relations", "omega_scalar", "big_omega_scalar",
    "spectrum_json", "SpectrumIdentity",
]


class SpinError(ValueError):
    pass


class SphericalVectorError(ValueError):
    pass


class SpectralMismatchError(ValueError):
    pass


def _dim(j) -> int:
    n = 2 * j
    if abs(n - round(n)) > 1e-12 or round(n) < 0:
        raise SpinError(f"invalid spin {j}; need j in (1/2) Z_>=0")
    return int(round(n)) + 1


GENERATORS = ("e", "f", "k", "ki", "X", "Y")


def rep_matrix(j, generator: str, q: float) -> np.ndarray:
    """Orthonormal-gauge matrix of a generator in the spin-j representation.

    k is diagonal with entries q^(n-2p); X raises p, Y = X* lowers p, and
    e, f are their rescalings by q^(1/2) / (q^-1 - q) and conjugation.
    """
    n = _dim(j) - 1
    M = np.zeros((n + 1, n + 1), dtype=complex)
    if generator == "k":
        for p in range(n + 1):
            M[p, p] = q ** (n - 2 * p)
    elif generator == "ki":
        for p in range(n + 1):
            M[p, p] = q ** (2 * p - n)
    elif generator == "X":
        for p in range(n):
            M[p + 1, p] = np.sqrt((1 - q ** (2 * n - 2 * p))
                                  * (q ** (-2 * p - 2) - 1))
    elif generator == "Y":
        for p in range(1, n + 1):
            M[p - 1, p] = np.sqrt((1 - q ** (2 * n - 2 * p + 2))
                                  * (q ** (-2 * p) - 1))
    elif generator == "e":
        # Y = q^(-1/2)(q^-1 - q) e
        M = rep_matrix(j, "Y", q) * q ** 0.5 / (1 / q - q)
    elif generator == "f":
        # e* = fk, so pi(f) = pi(e)^dagger pi(k)^-1
        M = rep_matrix(j, "e", q).conj().T @ rep_matrix(j, "ki", q)
    else:
        raise ValueError(f"unknown generator {generator!r}")
    return M


def ib_matrix(j, q: float, a: float) -> np.ndarray:
    """The Hermitian tridiagonal matrix of iB_t at t = [[a]] = q^a - q^-a:
    iB_t = (iX - iY + t k) / (q - q^-1)."""
    return scaled_ib_matrix(j, q, a) / (q - 1 / q)


def scaled_ib_matrix(j, q: float, a: float) -> np.ndarray:
    """(q - q^-1) iB_t = iX - iY + t k with t = [[a]]."""
    t = q ** a - q ** (-a)
    return (1j * rep_matrix(j, "X", q) - 1j * rep_matrix(j, "Y", q)
            + t * rep_matrix(j, "k", q))


# -- exact spectrum via the dual q^(-2)-Krawtchouk recurrence -------------

def krawtchouk_jacobi(n: int):
    """The exact Jacobi matrix of the recurrence

    mu P_p = P_{p+1} + (1-q^(-2a)) q^(2n-2p) P_p
             - q^(-2a+2n) (1-q^(-2p)) (1-q^(-2p+2n+2)) P_{p-1}

    as rows (subdiagonal 1, diagonal b_p, superdiagonal c_p) of Scalars.
    Its eigenvalues are q^(n-a) [[a+n-2p]].
    """
    if n < 0 or n > 12:
        raise SpinError("exact spectrum supported for 0 <= n <= 12")
    b = [(1 - qpow({"a": -2})) * qpow(2 * n - 2 * p) for p in range(n + 1)]
    c = [qpow({"a": -2, "1": 2 * n}) * (1 - qpow(-2 * p))
         * (1 - qpow(-2 * p + 2 * n + 2)) for p in range(1, n + 1)]
    return b, c


@dataclass(frozen=True)
class SpectrumIdentity:
    """Outcome of the exact characteristic-polynomial comparison."""

    n: int
    residual: Scalar

    @property
    def ok(self) -> bool:
        return self.residual.is_zero()


def spectrum_exact(j) -> SpectrumIdentity:
    """Verify, exactly in Scalars with a symbolic, that the characteristic
    polynomial of the Krawtchouk Jacobi matrix equals
    prod_p (mu - q^(n-a)(q^(a+n-2p) - q^(-a-n+2p))), with mu carried by
    the spare indeterminate L."""
    n = _dim(j) - 1
    b, c = krawtchouk_jacobi(n)
    mu = Scalar(LAM)
    # det(mu I - J) for a tridiagonal J via the three-term recurrence
    dprev, dcur = Scalar(1), Scalar(1)
    for p in range(n + 1):
        # the subdiagonal entry of the Jacobi matrix is -c_p, the
        # superdiagonal is 1, so the determinant recurrence gains +c_p
        dnext = (mu - b[p]) * dcur + (c[p - 1] * dprev if p > 0 else Scalar(0))
        dprev, dcur = dcur, dnext
    target = Scalar(1)
    for p in range(n + 1):
        root = qpow({"a": -1, "1": n}) * (
            qpow({"a": 1, "1": n - 2 * p}) - qpow({"a": -1, "1": 2 * p - n}))
        target = target * (mu - root)
    return SpectrumIdentity(n=n, residual=dcur - target)


def spectrum_numeric(j, q: float, a: float, tol: float = 1e-8):
    """Eigenvalues of iB_t labeled by c = a+n-2p; each must match [c].

    Returns a list of dicts sorted by c ascending.  Raises
    SpectralMismatchError when a residual exceeds tol * max(1, |[a+n]|).
    """
    n = _dim(j) - 1
    vals = np.linalg.eigvalsh(ib_matrix(j, q, a))
    labels = sorted(a + n - 2 * p for p in range(n + 1))
    targets = [fqnum(q, c) for c in labels]
    out = []
    bound = tol * max(1.0, abs(fqnum(q, a + n)))
    # [c] is increasing in c, so sorted labels pair with sorted eigenvalues
    pairs = sorted(zip(targets, labels))
    for (target, c), value in zip(pairs, np.sort(vals)):
        residual = abs(value - target)
        if residual > bound:
            raise SpectralMismatchError(
                f"eigenvalue {value} vs [c]={target} at c={c}: "
                f"residual {residual:.3e} > {bound:.3e}")
        out.append({"c": c, "value": float(value), "residual": float(residual)})
    out.sort(key=lambda d: d["c"])
    return out


# -- spherical vectors ----------------------------------------------------

@dataclass(frozen=True)
class SphericalVector:
    """Normalized eigenvector of iB_t at eigenvalue [a] (integer spin)."""

    j: int
    components: tuple
    eigenvalue: float
    residual: float


def spherical_vector(j, q: float, a: float) -> SphericalVector:
    """The iB_t-eigenvector at [a]; exists iff n = 2j is even.

    Normalization: unit norm with the first nonzero component real
    positive.
    """
    n = _dim(j) - 1
    if n % 2 != 0:
        raise SphericalVectorError(
            f"spin {j}: eigenvalue [a] occurs only for integer spin")
    M = ib_matrix(j, q, a)
    vals, vecs = np.linalg.eigh(M)
    target = fqnum(q, a)
    idx = int(np.argmin(np.abs(vals - target)))
    v = vecs[:, idx]
    lead = next(x for x in v if abs(x) > 1e-9)
    v = v * (abs(lead) / lead)
    v = v / np.linalg.norm(v)
    residual = float(np.linalg.norm(M @ v - target * v))
    return SphericalVector(j=int(round(j)), components=tuple(v),
                           eigenvalue=target, residual=residual)


# -- relation checks and Casimir ------------------------------------------

def omega_scalar(j, q: float) -> float:
    """The Casimir scalar [j][j+1] in spin j."""
    return fqnum(q, float(j)) * fqnum(q, float(j) + 1)


def big_omega_scalar(j, q: float) -> float:
    """Omega = (q^-1 - q)^2 omega + (q^-1 + q)."""
    return (1 / q - q) ** 2 * omega_scalar(j, q) + (1 / q + q)


def verify_rep_relations(j, q: float) -> dict:
    """Max-norm residuals of the defining relations in spin j:
    k-commutations, the e-f commutator, and the X/Y quadratic relations
    against the scalar Omega."""
    e, f, k, ki, X, Y = (rep_matrix(j, g, q) for g in GENERATORS)
    n1 = _dim(j)
    I = np.eye(n1)
    Om = big_omega_scalar(j, q)

    def rel(lhs, rhs):
        scale = max(1.0, float(np.abs(rhs).max()))
        return float(np.abs(lhs - rhs).max()) / scale

    return {
        "ke = q^2 ek": rel(k @ e, q ** 2 * e @ k),
        "kf = q^-2 fk": rel(k @ f, q ** -2 * f @ k),
        "k ki = 1": rel(k @ ki, I),
        "ef - fe = (k - ki)/(q - q^-1)": rel(
            e @ f - f @ e, (k - ki) / (q - 1 / q)),
        "Xk = q^2 kX": rel(X @ k, q ** 2 * k @ X),
        "Yk = q^-2 kY": rel(Y @ k, q ** -2 * k @ Y),
        "XY = -1 + q Omega k - q^2 k^2": rel(
            X @ Y, -I + q * Om * k - q ** 2 * k @ k),
        "YX = -1 + q^-1 Omega k - q^-2 k^2": rel(
            Y @ X, -I + Om * k / q - k @ k / q ** 2),
        "X* = Y": rel(X.conj().T, Y),
        "omega scalar": rel(
            e @ f + (q ** -1 * k + q * ki - (q + q ** -1) * I)
            / (q ** -1 - q) ** 2, omega_scalar(j, q) * I),
    }


def spectrum_json(j, q: float, a: float) -> dict:
    """JSON-ready spectral report for the CLI."""
    return {
        "spin": float(j),
        "q": q,
        "a": a,
        "eigenvalues": spectrum_numeric(j, q, a),
    }
