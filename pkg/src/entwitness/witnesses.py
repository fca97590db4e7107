"""Entanglement criteria built from expectation values of non-hermitian operators.

The two base tests for a bipartite state, with A supported on one side and B
on the other:

* cross-correlation test:   |<A^dag B>|^2  >  <A^dag A B^dag B>
* pairing test:             |<A B>|^2      >  <A^dag A> <B^dag B>

Either inequality certifies entanglement; both hold with <= for every
separable state.  Expanding A (or B, or both) in a small operator basis
turns the first inequality into a quadratic form, whose Hermitian
coefficient matrix certifies entanglement whenever it has a positive
eigenvalue.  This module builds those matrices, provides the product-vector
machinery for the doubly-expanded (bilinear) form, evaluates local
uncertainty bounds, and supplies the partial-transpose minimum eigenvalue as
an independent cross-check.

An eigenvalue counts as positive when it exceeds
``POSITIVITY_EPS * max(1, spectral scale)``; everything below that is
numerical noise, not entanglement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.optimize

from . import linalg
from .spaces import (
    LabeledOperator,
    SignatureError,
    State,
    StateVector,
    density_of,
    expectation,
)

POSITIVITY_EPS = 1e-9
WITNESS_TOL_SCALE = 1e-9


class SupportError(SignatureError):
    """Operators meant for different sides share a factor."""


@dataclass(frozen=True)
class WitnessReport:
    """Outcome of a single criterion evaluation.

    ``margin = lhs - rhs``; the state is flagged entangled when the margin
    exceeds the tolerance.
    """

    lhs: float
    rhs: float
    margin: float
    entangled: bool
    tolerance: float


@dataclass(frozen=True)
class WitnessMatrix:
    """Hermitian coefficient matrix of an expanded criterion.

    For a single-side expansion the matrix is indexed by the expansion
    operators; for a bilinear (two-side) expansion it is indexed by pairs,
    row-major in (side a, side b), and ``dims`` records the two basis sizes.
    """

    matrix: np.ndarray
    basis_a: tuple[str, ...]
    basis_b: tuple[str, ...] = ()

    @property
    def dims(self) -> tuple[int, int]:
        return (len(self.basis_a), max(len(self.basis_b), 1))

    def max_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix)[-1])

    def has_positive_eigenvalue(self) -> bool:
        return matrix_has_positive_eigenvalue(self.matrix)


def positivity_threshold(eigenvalues: np.ndarray) -> float:
    scale = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    return POSITIVITY_EPS * max(1.0, scale)


def matrix_has_positive_eigenvalue(m: np.ndarray) -> bool:
    w = np.linalg.eigvalsh(np.asarray(m, dtype=complex))
    return bool(w[-1] > positivity_threshold(w))


def _names(ops_list: Sequence[LabeledOperator], stem: str) -> tuple[str, ...]:
    return tuple(op.name or f"{stem}{j + 1}" for j, op in enumerate(ops_list))


def _check_disjoint(side_a: Iterable[LabeledOperator], side_b: Iterable[LabeledOperator]):
    sup_a = frozenset().union(*(op.support for op in side_a))
    sup_b = frozenset().union(*(op.support for op in side_b))
    if sup_a & sup_b:
        raise SupportError(f"operator supports overlap on factors {sorted(sup_a & sup_b)}")


def _report(lhs: float, rhs: float) -> WitnessReport:
    tol = WITNESS_TOL_SCALE * max(1.0, abs(rhs))
    margin = lhs - rhs
    return WitnessReport(lhs, rhs, margin, bool(margin > tol), tol)


def _real(value: complex, what: str) -> float:
    if abs(value.imag) > 1e-8 * max(1.0, abs(value)):
        raise ValueError(f"{what} should be real, got imaginary part {value.imag:.3e}")
    return float(value.real)


def cond1(state: State, a: LabeledOperator, b: LabeledOperator) -> WitnessReport:
    """Cross-correlation test: |<A^dag B>|^2 > <A^dag A B^dag B>."""
    _check_disjoint([a], [b])
    if isinstance(state, StateVector):
        # A and B commute, so <A^dag A B^dag B> = ||A B psi||^2
        psi = state.amplitudes
        a_psi = a.matrix @ psi
        b_psi = b.matrix @ psi
        lhs = abs(np.vdot(a_psi, b_psi)) ** 2
        rhs = float(np.linalg.norm(b.matrix @ a_psi) ** 2)
        return _report(lhs, rhs)
    lhs = abs(expectation(state, a.dag() @ b)) ** 2
    rhs = _real(expectation(state, a.dag() @ a @ b.dag() @ b), "<A^dag A B^dag B>")
    return _report(lhs, rhs)


def cond2(state: State, a: LabeledOperator, b: LabeledOperator) -> WitnessReport:
    """Pairing test: |<A B>|^2 > <A^dag A><B^dag B>."""
    _check_disjoint([a], [b])
    if isinstance(state, StateVector):
        psi = state.amplitudes
        a_psi = a.matrix @ psi
        b_psi = b.matrix @ psi
        lhs = abs(np.vdot(psi, a.matrix @ b_psi)) ** 2
        rhs = float(np.linalg.norm(a_psi) ** 2) * float(np.linalg.norm(b_psi) ** 2)
        return _report(lhs, rhs)
    lhs = abs(expectation(state, a @ b)) ** 2
    rhs = _real(expectation(state, a.dag() @ a), "<A^dag A>") * _real(
        expectation(state, b.dag() @ b), "<B^dag B>"
    )
    return _report(lhs, rhs)


def witness_matrix_expand_a(
    state: State,
    ops_a: Sequence[LabeledOperator],
    b: LabeledOperator,
) -> WitnessMatrix:
    """Expand A = sum_j z_j E_j against a fixed B.

    The returned Hermitian matrix M satisfies
    z^dag M z = cond1 margin of (sum_j z_j E_j, B) for every coefficient
    vector z, so a positive eigenvalue certifies entanglement.
    """
    _check_disjoint(ops_a, [b])
    n = len(ops_a)
    if isinstance(state, StateVector):
        psi = state.amplitudes
        b_psi = b.matrix @ psi
        e_psi = [e.matrix @ psi for e in ops_a]
        d = np.array([np.vdot(ep, b_psi) for ep in e_psi])
        w = b.matrix.conj().T @ b_psi
        e_w = [e.matrix @ w for e in ops_a]
        m = np.outer(d, d.conj())
        for j in range(n):
            for k in range(n):
                m[j, k] -= np.vdot(e_psi[j], e_w[k])
    else:
        bb = b.dag() @ b
        d = np.array([expectation(state, e.dag() @ b) for e in ops_a])
        m = np.outer(d, d.conj())
        for j in range(n):
            for k in range(j, n):
                val = expectation(state, ops_a[j].dag() @ ops_a[k] @ bb)
                m[j, k] -= val
                if k != j:
                    m[k, j] -= np.conj(val)
                else:
                    m[j, j] = m[j, j].real
    return WitnessMatrix((m + m.conj().T) / 2, _names(ops_a, "E"))


def witness_matrix_expand_b(
    state: State,
    a: LabeledOperator,
    ops_b: Sequence[LabeledOperator],
) -> WitnessMatrix:
    """Expand B = sum_j z_j F_j against a fixed A.

    M_jk = <A^dag F_j>^* <A^dag F_k> - <A^dag A F_j^dag F_k>, and
    z^dag M z reproduces the cond1 margin of (A, sum_j z_j F_j).
    """
    _check_disjoint([a], ops_b)
    n = len(ops_b)
    if isinstance(state, StateVector):
        # A commutes with every F, so <A^dag A F_j^dag F_k> = <F_j A psi|F_k A psi>
        psi = state.amplitudes
        a_psi = a.matrix @ psi
        f_psi = [f.matrix @ psi for f in ops_b]
        f_a_psi = [f.matrix @ a_psi for f in ops_b]
        d = np.array([np.vdot(a_psi, fp) for fp in f_psi])
        m = np.outer(d.conj(), d)
        for j in range(n):
            for k in range(n):
                m[j, k] -= np.vdot(f_a_psi[j], f_a_psi[k])
    else:
        aa = a.dag() @ a
        d = np.array([expectation(state, a.dag() @ f) for f in ops_b])
        m = np.outer(d.conj(), d)
        for j in range(n):
            for k in range(j, n):
                val = expectation(state, aa @ ops_b[j].dag() @ ops_b[k])
                m[j, k] -= val
                if k != j:
                    m[k, j] -= np.conj(val)
                else:
                    m[j, j] = m[j, j].real
    return WitnessMatrix((m + m.conj().T) / 2, _names(ops_b, "F"))


def eig2_positive(m: WitnessMatrix | np.ndarray) -> bool:
    """Positive-eigenvalue test for a 2x2 Hermitian matrix, in closed form.

    Equivalent to (M11 + M22) > 0 or |M12|^2 > M11 M22.
    """
    mat = m.matrix if isinstance(m, WitnessMatrix) else np.asarray(m, dtype=complex)
    if mat.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {mat.shape}")
    m11, m22 = mat[0, 0].real, mat[1, 1].real
    disc = np.sqrt((m11 - m22) ** 2 + 4 * abs(mat[0, 1]) ** 2)
    lam_max = 0.5 * ((m11 + m22) + disc)
    lam_min = 0.5 * ((m11 + m22) - disc)
    return bool(lam_max > positivity_threshold(np.array([lam_max, lam_min])))


def bilinear_form(
    state: State,
    ops_a: Sequence[LabeledOperator],
    ops_b: Sequence[LabeledOperator],
) -> WitnessMatrix:
    """Expand both sides: A = sum_j u_j F_j, B = sum_k v_k G_k.

    Returns the Hermitian form X on the coefficient product space with
    (u (x) v)^dag X (u (x) v) = cond1 margin of (A, B).  Entanglement is
    certified by a product coefficient vector with positive form value.
    """
    _check_disjoint(ops_a, ops_b)
    na, nb = len(ops_a), len(ops_b)
    x = np.zeros((na, nb, na, nb), dtype=complex)
    if isinstance(state, StateVector):
        psi = state.amplitudes
        f_psi = [f.matrix @ psi for f in ops_a]
        g_psi = [g.matrix @ psi for g in ops_b]
        fg_psi = [[f.matrix @ gp for gp in g_psi] for f in ops_a]
        c = np.array([[np.vdot(fp, gp) for gp in g_psi] for fp in f_psi])
        for j in range(na):
            for jp in range(na):
                for k in range(nb):
                    for kp in range(nb):
                        x[j, k, jp, kp] = c[j, kp] * np.conj(c[jp, k]) - np.vdot(
                            fg_psi[j][k], fg_psi[jp][kp]
                        )
    else:
        c = np.array([[expectation(state, f.dag() @ g) for g in ops_b] for f in ops_a])
        for j in range(na):
            for jp in range(na):
                ffa = ops_a[j].dag() @ ops_a[jp]
                for k in range(nb):
                    for kp in range(nb):
                        x[j, k, jp, kp] = c[j, kp] * np.conj(c[jp, k]) - expectation(
                            state, ffa @ ops_b[k].dag() @ ops_b[kp]
                        )
    x = x.reshape(na * nb, na * nb)
    return WitnessMatrix((x + x.conj().T) / 2, _names(ops_a, "F"), _names(ops_b, "G"))


def xv_slice(x: WitnessMatrix, v: np.ndarray) -> np.ndarray:
    """Contract the side-b indices of X with a fixed vector v.

    The result X_v is Hermitian on the side-a coefficient space and obeys
    u^dag X_v u = (u (x) v)^dag X (u (x) v).
    """
    v = np.asarray(v, dtype=complex).ravel()
    if np.linalg.norm(v) == 0.0:
        raise ValueError("slice vector must be nonzero")
    na, nb = x.dims
    if v.size != nb:
        raise ValueError(f"slice vector has length {v.size}, expected {nb}")
    t = x.matrix.reshape(na, nb, na, nb)
    return np.einsum("jkml,k,l->jm", t, v.conj(), v)


def reduced_criterion(x: WitnessMatrix) -> bool:
    """Positive eigenvalue of the side-b partial trace of X.

    Sufficient for a satisfying product vector to exist (recoverable with
    :func:`product_vector_scan`), but not necessary.
    """
    na, nb = x.dims
    x1 = np.einsum("jkmk->jm", x.matrix.reshape(na, nb, na, nb))
    return matrix_has_positive_eigenvalue(x1)


@dataclass(frozen=True)
class ProductScanResult:
    value: float
    u: np.ndarray
    v: np.ndarray


def _lambda_max_batch(mats: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(mats)[..., -1]


def product_vector_scan(x: WitnessMatrix, grid: int = 180) -> ProductScanResult:
    """Maximize (u (x) v)^dag X (u (x) v) over unit product vectors.

    The side-b vector is parametrized as (cos t, e^{i phi} sin t) on a
    grid x grid mesh, the side-a optimum is the top eigenvector of X_v, and
    the best cell is polished by a local simplex ascent.  Requires a
    two-dimensional side-b space.
    """
    na, nb = x.dims
    if nb != 2:
        raise ValueError("the dense scan is implemented for a 2-dim side-b space")
    t4 = x.matrix.reshape(na, nb, na, nb)

    ts = np.linspace(0.0, np.pi / 2, grid)
    phis = np.linspace(0.0, 2 * np.pi, grid, endpoint=False)
    tt, pp = np.meshgrid(ts, phis, indexing="ij")
    vs = np.stack([np.cos(tt), np.exp(1j * pp) * np.sin(tt)], axis=-1).reshape(-1, 2)
    xv = np.einsum("jkml,pk,pl->pjm", t4, vs.conj(), vs)
    lams = _lambda_max_batch(xv)
    best = int(np.argmax(lams))

    def neg_best(params):
        t, phi = params
        v = np.array([np.cos(t), np.exp(1j * phi) * np.sin(t)])
        return -float(np.linalg.eigvalsh(np.einsum("jkml,k,l->jm", t4, v.conj(), v))[-1])

    x0 = np.array([tt.ravel()[best], pp.ravel()[best]])
    res = scipy.optimize.minimize(neg_best, x0, method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-14})
    t_opt, phi_opt = (res.x if -res.fun >= lams[best] else x0)
    v = np.array([np.cos(t_opt), np.exp(1j * phi_opt) * np.sin(t_opt)])
    xv_opt = np.einsum("jkml,k,l->jm", t4, v.conj(), v)
    w, vecs = np.linalg.eigh(xv_opt)
    return ProductScanResult(float(w[-1]), vecs[:, -1], v)


def product_from_two_positive(x: WitnessMatrix) -> ProductScanResult:
    """Build a product vector with positive form value from two positive eigenvalues.

    Any combination alpha x1 + beta x2 of the two top eigenvectors keeps a
    positive form value; the product condition on its 2x2 coefficient matrix
    is one quadratic equation in y = alpha/beta.  Falls back to the dense
    scan when the quadratic degenerates.
    """
    na, nb = x.dims
    if na != 2 or nb != 2:
        raise ValueError("the quadratic construction needs a 2 (x) 2 coefficient space")
    w, vecs = np.linalg.eigh(x.matrix)
    thresh = positivity_threshold(w)
    if np.sum(w > thresh) < 2:
        raise ValueError("need at least two positive eigenvalues")
    x1 = vecs[:, -1]
    x2 = vecs[:, -2]

    kappa, left, right = linalg.schmidt(x1, (2, 2))
    if kappa[1] <= 1e-12:
        # x1 is already a product vector
        value = float(np.real(np.conj(x1) @ x.matrix @ x1))
        return ProductScanResult(value, left[:, 0], right[:, 0])
    # expand x2 in the Schmidt basis of x1
    d = np.array(
        [
            [np.vdot(np.kron(left[:, j], right[:, k]), x2) for k in range(2)]
            for j in range(2)
        ]
    )
    coeffs = [kappa[0] * kappa[1], kappa[0] * d[1, 1] + kappa[1] * d[0, 0],
              d[0, 0] * d[1, 1] - d[0, 1] * d[1, 0]]
    roots = np.roots(coeffs)
    if roots.size == 0 or not np.all(np.isfinite(roots)):
        return product_vector_scan(x)
    best = None
    for y in roots:
        vec = y * x1 + x2
        nrm = np.linalg.norm(vec)
        if nrm < 1e-12:
            continue
        vec = vec / nrm
        s, lv, rv = linalg.schmidt(vec, (2, 2))
        if s[1] > 1e-8:
            continue
        value = float(np.real(np.conj(vec) @ x.matrix @ vec))
        if best is None or value > best.value:
            best = ProductScanResult(value, lv[:, 0], rv[:, 0])
    if best is None:
        return product_vector_scan(x)
    return best


def lur_value(
    state: State,
    pairs: Sequence[tuple[LabeledOperator, LabeledOperator]],
    separable_bound: float,
) -> WitnessReport:
    """Local-uncertainty sum sum_j [<D_j^dag D_j> - |<D_j>|^2] with D_j = A_j + B_j.

    Every separable state obeys value >= bound, so the report's lhs is the
    caller-supplied bound and rhs is the measured value: a positive margin
    (value below the bound) certifies entanglement.
    """
    total = 0.0
    for a, b in pairs:
        _check_disjoint([a], [b])
        d_op = a + b
        if isinstance(state, StateVector):
            w = d_op.matrix @ state.amplitudes
            total += float(np.vdot(w, w).real) - abs(np.vdot(state.amplitudes, w)) ** 2
        else:
            total += _real(expectation(state, d_op.dag() @ d_op), "<D^dag D>") - abs(
                expectation(state, d_op)
            ) ** 2
    return _report(float(separable_bound), total)


def ppt_min_eig(state: State, transpose_labels: Iterable[str]) -> float:
    """Minimum eigenvalue of the partial transpose over the given factors.

    A value below -1e-10 certifies entanglement across the corresponding cut.
    """
    sig = state.signature
    rho = density_of(state)
    labels = list(transpose_labels)
    if not labels:
        raise ValueError("need at least one factor to transpose")
    for lab in labels:
        rho = linalg.partial_transpose(rho, sig.dims, sig.axis(lab))
    return float(np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0])


PPT_TOL = 1e-10


@dataclass(frozen=True)
class PptCrosscheck:
    cond1: WitnessReport
    cond2: WitnessReport
    min_eigenvalue: float

    @property
    def flagged(self) -> bool:
        return self.cond1.entangled or self.cond2.entangled

    @property
    def consistent(self) -> bool:
        """Criteria only fire on states whose partial transpose is negative."""
        return (not self.flagged) or self.min_eigenvalue < -PPT_TOL


def ppt_crosscheck(state: State, a: LabeledOperator, b: LabeledOperator) -> PptCrosscheck:
    """Evaluate both base criteria and the partial-transpose eigenvalue together.

    Both criteria are implied by the partial-transpose test, so any state
    they flag must have a negative partial transpose; the report makes that
    implication checkable.
    """
    rep1 = cond1(state, a, b)
    rep2 = cond2(state, a, b)
    labels = sorted(a.support) or [state.signature.labels[0]]
    return PptCrosscheck(rep1, rep2, ppt_min_eig(state, labels))
