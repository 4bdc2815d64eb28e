"""Pointwise linear algebra of a metric contact structure.

A contact metric point is modeled on R^n, n = 2m+1, by a triple
(g, eta, J): a positive definite metric, a unit 1-form eta, and an
endomorphism J with

    J^2 = -Id + eta (x) xi,   J xi = 0,   eta o J = 0,

where xi = sharp(eta) is the Reeb vector. The fundamental 2-form is
F(X, Y) = g(JX, Y); compatibility demands F be skew and
g(JX, JY) = g(X, Y) - eta(X) eta(Y). The contact distribution is
C = ker eta, on which J is a genuine complex structure.

Index conventions used throughout the package:
  * vectors and covectors are 1-d arrays of length n;
  * endomorphisms act by column convention, (J X)^a = J[a, b] X^b;
  * bilinear forms are covariant, B(X, Y) = X^T B Y.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import PreconditionError, StructuralError
from .report import CheckReport

DEFAULT_TOL = 1e-9


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(eq=False)
class ContactMetricSpace:
    """One tangent space with a compatible metric contact structure.

    Instances are immutable (component arrays are frozen) and safe to
    share between threads; every derived object is cached on first use.
    """

    g: np.ndarray
    eta: np.ndarray
    J: np.ndarray

    def __post_init__(self) -> None:
        self.g = _readonly(self.g)
        self.eta = _readonly(self.eta)
        self.J = _readonly(self.J)
        if self.g.ndim != 2 or self.g.shape[0] != self.g.shape[1]:
            raise StructuralError(f"metric must be square, got shape {self.g.shape}")
        n = self.g.shape[0]
        if n % 2 == 0 or n < 3:
            raise StructuralError(f"dimension must be odd and >= 3, got {n}")
        if self.eta.shape != (n,):
            raise StructuralError(
                f"eta has shape {self.eta.shape}, expected ({n},)")
        if self.J.shape != (n, n):
            raise StructuralError(
                f"J has shape {self.J.shape}, expected ({n}, {n})")

    @property
    def n(self) -> int:
        return self.g.shape[0]

    @property
    def m(self) -> int:
        return (self.n - 1) // 2

    @cached_property
    def g_inv(self) -> np.ndarray:
        return _readonly(np.linalg.inv(self.g))

    @cached_property
    def xi(self) -> np.ndarray:
        """Reeb vector, the metric dual of eta."""
        return _readonly(self.g_inv @ self.eta)

    @cached_property
    def F(self) -> np.ndarray:
        """Fundamental 2-form, F[i, j] = g(J b_i, b_j)."""
        return _readonly(self.J.T @ self.g)

    @cached_property
    def proj_contact(self) -> np.ndarray:
        """Projection onto C = ker eta along xi: P = Id - xi (x) eta."""
        return _readonly(np.eye(self.n) - np.outer(self.xi, self.eta))

    @cached_property
    def proj_value(self) -> np.ndarray:
        """Covariant counterpart of proj_contact: Q = Id - eta (x) xi.

        For a vector V, g(X, PV) = (QX^flat)(V); Q acts on the lowered
        value slot of component tables.
        """
        return _readonly(np.eye(self.n) - np.outer(self.eta, self.xi))

    def inner(self, u: np.ndarray, v: np.ndarray) -> float:
        return float(u @ self.g @ v)


def sharp(space: ContactMetricSpace, covector: np.ndarray) -> np.ndarray:
    """Raise an index: the vector metric-dual to a covector."""
    covector = np.asarray(covector, dtype=float)
    if covector.shape != (space.n,):
        raise StructuralError(
            f"covector has shape {covector.shape}, expected ({space.n},)")
    return space.g_inv @ covector


def flat(space: ContactMetricSpace, vector: np.ndarray) -> np.ndarray:
    """Lower an index: the covector metric-dual to a vector."""
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (space.n,):
        raise StructuralError(
            f"vector has shape {vector.shape}, expected ({space.n},)")
    return space.g @ vector


def validate(space: ContactMetricSpace, tol: float = DEFAULT_TOL) -> CheckReport:
    """Check every structure invariant, reporting worst violations.

    Shape problems raise StructuralError (they are caught at
    construction); genuine invariant violations never raise, they show
    up as failed records so a caller can see all of them at once.
    """
    g, eta, J, n = space.g, space.eta, space.J, space.n
    rep = CheckReport("contact-metric-space")

    rep.check("g-symmetric", "g(X,Y) = g(Y,X)",
              np.abs(g - g.T).max(), tol)
    lam_min = float(np.linalg.eigvalsh((g + g.T) / 2).min())
    rep.check("g-positive", "g positive definite",
              max(0.0, -lam_min + (tol if lam_min <= 0 else 0.0)), tol,
              note=f"min eigenvalue {lam_min:.3e}")
    rep.check("eta-unit", "|eta|_g = 1",
              abs(float(eta @ space.g_inv @ eta) - 1.0), tol)
    rep.check("j-squared", "J^2 = -Id + eta (x) xi",
              np.abs(J @ J + np.eye(n) - np.outer(space.xi, eta)).max(), tol)
    rep.check("j-kills-reeb", "J xi = 0", np.abs(J @ space.xi).max(), tol)
    rep.check("eta-kills-j", "eta o J = 0", np.abs(eta @ J).max(), tol)
    F = J.T @ g
    rep.check("f-skew", "F(X,Y) = -F(Y,X)", np.abs(F + F.T).max(), tol)
    rep.check("j-compatible", "g(JX,JY) = g(X,Y) - eta(X)eta(Y)",
              np.abs(J.T @ g @ J - g + np.outer(eta, eta)).max(), tol)
    rep.check("reeb-normalized", "eta(xi) = 1",
              abs(float(eta @ space.xi) - 1.0), tol)
    rep.check("f-kills-reeb", "F(xi, .) = 0",
              np.abs(space.xi @ F).max(), tol)
    return rep


@dataclass(eq=False)
class AdaptedFrame:
    """Orthonormal frame (e_1, f_1, ..., e_m, f_m, xi) with f_i = J e_i.

    basis[:, 2i] = e_{i+1}, basis[:, 2i+1] = f_{i+1}, basis[:, -1] = xi,
    columns expressed in ambient coordinates. Construction is
    deterministic, so a frame doubles as a canonical identification of
    the contact distribution with R^{2m}.
    """

    space: ContactMetricSpace
    basis: np.ndarray

    def __post_init__(self) -> None:
        self.basis = _readonly(self.basis)

    def e(self, i: int) -> np.ndarray:
        return self.basis[:, 2 * i]

    def f(self, i: int) -> np.ndarray:
        return self.basis[:, 2 * i + 1]

    @property
    def xi(self) -> np.ndarray:
        return self.basis[:, -1]

    @cached_property
    def dual(self) -> np.ndarray:
        """Rows are the dual coframe covectors."""
        return _readonly(np.linalg.inv(self.basis))

    def gram(self) -> np.ndarray:
        return self.basis.T @ self.space.g @ self.basis

    # -- component conversion helpers ------------------------------------
    # Covariant tables contract with frame vectors; vectors convert with
    # the dual coframe.

    def vector_to_frame(self, v: np.ndarray) -> np.ndarray:
        return self.dual @ v

    def vector_from_frame(self, v: np.ndarray) -> np.ndarray:
        return self.basis @ v

    def cov2_to_frame(self, t: np.ndarray) -> np.ndarray:
        return self.basis.T @ t @ self.basis

    def cov3_to_frame(self, t: np.ndarray) -> np.ndarray:
        return np.einsum('abc,ai,bj,ck->ijk', t, self.basis, self.basis,
                         self.basis, optimize=True)

    def cov3_from_frame(self, w: np.ndarray) -> np.ndarray:
        return np.einsum('ijk,ia,jb,kc->abc', w, self.dual, self.dual,
                         self.dual, optimize=True)

    def endo_from_contact_frame(self, phi: np.ndarray) -> np.ndarray:
        """Extend a 2m x 2m matrix on frame C-coordinates to ambient."""
        k = 2 * self.space.m
        return self.basis[:, :k] @ phi @ self.dual[:k, :]


def adapted_frame(space: ContactMetricSpace, tol: float = DEFAULT_TOL) -> AdaptedFrame:
    """Deterministic adapted orthonormal frame for a valid space.

    Gram-Schmidt against g over the standard basis vectors taken in
    coordinate order; each accepted seed vector e contributes the pair
    (e, Je). J-invariance of the orthogonal complement keeps the pairs
    orthonormal, so no re-orthogonalization of f = Je is performed
    (that would break f = Je exactly).
    """
    rep = validate(space, tol)
    if not rep.passed:
        bad = ", ".join(r.check_id for r in rep.failures())
        raise PreconditionError(f"space fails validation ({bad})")
    n, m, g = space.n, space.m, space.g
    cols = [space.xi]
    pairs: list[np.ndarray] = []
    for k in range(n):
        if len(pairs) == 2 * m:
            break
        v = np.zeros(n)
        v[k] = 1.0
        for _ in range(2):  # twice for numerical stability
            for u in cols + pairs:
                v = v - (u @ g @ v) * u
        norm = float(np.sqrt(v @ g @ v))
        if norm < 1e-8:
            continue
        e = v / norm
        pairs.append(e)
        pairs.append(space.J @ e)
    if len(pairs) != 2 * m:
        raise PreconditionError("could not complete an adapted frame; "
                                "J-invariant complement is degenerate")
    basis = np.column_stack(pairs + cols)
    return AdaptedFrame(space, basis)


def random_space(m: int, seed: int) -> ContactMetricSpace:
    """Random compatible structure on R^{2m+1}.

    Draws a random unit covector eta and a transversal Reeb direction,
    then a random nondegenerate skew form rho on ker eta; the complex
    structure on the contact distribution is the orthogonal polar
    factor of rho and the metric is rho(., J.), extended by eta (x) eta.
    Degenerate draws are rejected and resampled, so this always returns
    a space passing validate() at default tolerance.
    """
    if m < 1:
        raise StructuralError(f"m must be >= 1, got {m}")
    rng = np.random.default_rng(seed)
    n = 2 * m + 1
    for _ in range(1000):
        eta = rng.standard_normal(n)
        eta /= np.linalg.norm(eta)
        # orthonormal (euclidean) basis of ker eta
        _, _, vt = np.linalg.svd(eta.reshape(1, n))
        K = vt[1:].T
        xi0 = rng.standard_normal(n)
        s = float(eta @ xi0)
        if abs(s) < 0.3:
            continue
        xi0 = xi0 / s
        S = rng.standard_normal((2 * m, 2 * m))
        R = (S - S.T) / 2
        sv = np.linalg.svd(R, compute_uv=False)
        if sv.max() == 0.0 or sv.min() / sv.max() < 0.05:
            continue
        R = R / sv.max()
        J_K, g_K = _polar_complex_structure(R)
        C = np.column_stack([K, xi0])
        if np.linalg.cond(C) > 1e3:
            continue
        Ci = np.linalg.inv(C)
        g_b = np.zeros((n, n))
        g_b[:2 * m, :2 * m] = g_K
        g_b[-1, -1] = 1.0
        g_amb = Ci.T @ g_b @ Ci
        g_amb = (g_amb + g_amb.T) / 2
        J_b = np.zeros((n, n))
        J_b[:2 * m, :2 * m] = J_K
        J_amb = C @ J_b @ Ci
        eta_amb = Ci[-1, :].copy()
        space = ContactMetricSpace(g=g_amb, eta=eta_amb, J=J_amb)
        if validate(space).passed:
            return space
    raise PreconditionError("random_space failed to draw a well-conditioned "
                            "structure; this should be unreachable")


def _polar_complex_structure(R: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Polar factor of a nondegenerate skew form and its induced metric.

    With rho(u, v) = u^T R v and A = -R, the orthogonal polar factor
    J = A (A^T A)^{-1/2} squares to -Id, and h = R J = (A^T A)^{1/2} is
    symmetric positive definite with h(u, v) = rho(u, J v).
    """
    A = -R
    u, _, vt = np.linalg.svd(A)
    J = u @ vt
    h = R @ J
    return J, (h + h.T) / 2


def random_orthonormal_basis(space: ContactMetricSpace,
                             rng: np.random.Generator) -> np.ndarray:
    """Random g-orthonormal basis (columns). Used to test basis independence."""
    n = space.n
    for _ in range(100):
        raw = rng.standard_normal((n, n))
        if abs(np.linalg.det(raw)) < 1e-3:
            continue
        cols = []
        for k in range(n):
            v = raw[:, k]
            for u in cols:
                v = v - (u @ space.g @ v) * u
            nrm = float(np.sqrt(v @ space.g @ v))
            if nrm < 1e-8:
                break
            cols.append(v / nrm)
        if len(cols) == n:
            return np.column_stack(cols)
    raise PreconditionError("failed to draw a random orthonormal basis")


def canonical_space(m: int) -> ContactMetricSpace:
    """The flat model: g = Id, eta the last coordinate, J the standard
    block rotation pairing coordinates (2i, 2i+1)."""
    n = 2 * m + 1
    g = np.eye(n)
    eta = np.zeros(n)
    eta[-1] = 1.0
    J = np.zeros((n, n))
    for i in range(m):
        J[2 * i + 1, 2 * i] = 1.0
        J[2 * i, 2 * i + 1] = -1.0
    return ContactMetricSpace(g=g, eta=eta, J=J)
