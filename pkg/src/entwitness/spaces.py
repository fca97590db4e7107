"""Labeled tensor-product spaces: states, operators, embedding, evolution.

A :class:`SpaceSignature` fixes an ordered list of subsystem factors, each a
truncated bosonic mode or a qubit.  Every state and operator carries its
signature, so partial traces, partial transposes and operator embeddings
never have to guess a tensor layout.

Truncation policy: each bosonic factor has an explicit dimension, and the
population of its top two levels ("leakage") measures how badly a state is
feeling the cutoff.  Operations that can pump population upward are expected
to keep leakage below :data:`LEAKAGE_THRESHOLD`; experiment drivers escalate
dimensions (doubling, capped at :data:`MAX_FOCK_DIM`) when it is exceeded.

All values here are immutable and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from . import linalg

BOSON = "boson"
QUBIT = "qubit"

LEAKAGE_THRESHOLD = 1e-6
MAX_FOCK_DIM = 4096


class SignatureError(ValueError):
    """Mismatched or malformed space signatures."""


class LeakageError(RuntimeError):
    """Population of the top Fock levels exceeded the truncation budget."""

    def __init__(self, label: str, population: float, threshold: float):
        self.label = label
        self.population = float(population)
        self.threshold = float(threshold)
        super().__init__(
            f"factor '{label}' holds {self.population:.3e} of its population in the "
            f"top two levels (threshold {self.threshold:.1e}); increase the truncation"
        )


@dataclass(frozen=True)
class Factor:
    label: str
    kind: str
    dim: int

    def __post_init__(self):
        if self.kind not in (BOSON, QUBIT):
            raise SignatureError(f"unknown factor kind '{self.kind}'")
        if self.dim < 2:
            raise SignatureError(f"factor '{self.label}' needs dim >= 2, got {self.dim}")
        if self.kind == QUBIT and self.dim != 2:
            raise SignatureError(f"qubit factor '{self.label}' must have dim 2")


def boson(label: str, dim: int) -> Factor:
    """A bosonic mode truncated to its lowest ``dim`` Fock levels."""
    return Factor(label, BOSON, int(dim))


def qubit(label: str) -> Factor:
    """A two-level factor with basis order (ground, excited)."""
    return Factor(label, QUBIT, 2)


@dataclass(frozen=True)
class SpaceSignature:
    factors: tuple[Factor, ...]

    def __post_init__(self):
        labels = [f.label for f in self.factors]
        if not labels:
            raise SignatureError("a signature needs at least one factor")
        if len(set(labels)) != len(labels):
            raise SignatureError(f"duplicate factor labels in {labels}")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f.label for f in self.factors)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def axis(self, label: str) -> int:
        for i, f in enumerate(self.factors):
            if f.label == label:
                return i
        raise SignatureError(f"no factor labeled '{label}' in {self.labels}")

    def factor(self, label: str) -> Factor:
        return self.factors[self.axis(label)]


def signature(*factors: Factor) -> SpaceSignature:
    return SpaceSignature(tuple(factors))


def _same_signature(a: SpaceSignature, b: SpaceSignature):
    if a != b:
        raise SignatureError(f"signature mismatch: {a.labels} vs {b.labels}")


@dataclass(frozen=True)
class StateVector:
    signature: SpaceSignature
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        if amps.size != self.signature.total_dim:
            raise SignatureError(
                f"{amps.size} amplitudes for a space of dim {self.signature.total_dim}"
            )
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.signature, self.amplitudes / n)

    def to_density(self) -> "DensityMatrix":
        a = self.amplitudes
        return DensityMatrix(self.signature, np.outer(a, a.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    signature: SpaceSignature
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        d = self.signature.total_dim
        if m.shape != (d, d):
            raise SignatureError(f"matrix shape {m.shape} does not match dim {d}")
        object.__setattr__(self, "matrix", m)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))


State = Union[StateVector, DensityMatrix]


@dataclass(frozen=True)
class LabeledOperator:
    signature: SpaceSignature
    matrix: np.ndarray
    support: frozenset = field(default_factory=frozenset)
    name: str = ""

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        d = self.signature.total_dim
        if m.shape != (d, d):
            raise SignatureError(f"matrix shape {m.shape} does not match dim {d}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "support", frozenset(self.support))

    def dag(self) -> "LabeledOperator":
        name = f"{self.name}^dag" if self.name else ""
        return LabeledOperator(self.signature, self.matrix.conj().T, self.support, name)

    def __matmul__(self, other: "LabeledOperator") -> "LabeledOperator":
        _same_signature(self.signature, other.signature)
        return LabeledOperator(
            self.signature, self.matrix @ other.matrix, self.support | other.support
        )

    def __add__(self, other: "LabeledOperator") -> "LabeledOperator":
        _same_signature(self.signature, other.signature)
        return LabeledOperator(
            self.signature, self.matrix + other.matrix, self.support | other.support
        )

    def __sub__(self, other: "LabeledOperator") -> "LabeledOperator":
        _same_signature(self.signature, other.signature)
        return LabeledOperator(
            self.signature, self.matrix - other.matrix, self.support | other.support
        )

    def __mul__(self, scalar) -> "LabeledOperator":
        return LabeledOperator(self.signature, self.matrix * scalar, self.support, self.name)

    __rmul__ = __mul__

    def __neg__(self) -> "LabeledOperator":
        return self * (-1.0)


def identity_operator(sig: SpaceSignature) -> LabeledOperator:
    return LabeledOperator(sig, np.eye(sig.total_dim, dtype=complex), frozenset(), "I")


def embed_many(
    local: np.ndarray,
    labels: Sequence[str],
    sig: SpaceSignature,
    name: str = "",
) -> LabeledOperator:
    """Lift an operator on chosen factors (in the given order) to the full space.

    The remaining factors carry the identity.
    """
    labels = list(labels)
    if len(set(labels)) != len(labels):
        raise SignatureError(f"repeated labels in {labels}")
    axes = [sig.axis(lab) for lab in labels]
    dims = sig.dims
    sub_dims = tuple(dims[ax] for ax in axes)
    local = np.asarray(local, dtype=complex)
    d_sub = int(np.prod(sub_dims))
    if local.shape != (d_sub, d_sub):
        raise SignatureError(
            f"local operator shape {local.shape} does not match factor dims {sub_dims}"
        )
    rest = [i for i in range(len(dims)) if i not in axes]
    d_rest = int(np.prod([dims[i] for i in rest])) if rest else 1
    big = np.kron(local, np.eye(d_rest, dtype=complex))
    # axes currently ordered (chosen..., rest...); permute back to signature order
    order = axes + rest
    inverse = np.argsort(order)
    t = big.reshape(tuple(dims[i] for i in order) * 2)
    n = len(dims)
    t = np.transpose(t, axes=list(inverse) + [i + n for i in inverse])
    return LabeledOperator(sig, t.reshape(big.shape), frozenset(labels), name)


def embed(local: np.ndarray, label: str, sig: SpaceSignature, name: str = "") -> LabeledOperator:
    """Lift a single-factor operator to the full space, identity elsewhere."""
    return embed_many(local, [label], sig, name)


def basis_state(sig: SpaceSignature, occupations: Mapping[str, int]) -> StateVector:
    """Product basis vector |n_1, n_2, ...> given one level index per factor."""
    parts = []
    for f in sig.factors:
        n = int(occupations.get(f.label, 0))
        if not 0 <= n < f.dim:
            raise SignatureError(f"level {n} out of range for factor '{f.label}'")
        v = np.zeros(f.dim, dtype=complex)
        v[n] = 1.0
        parts.append(v)
    return StateVector(sig, linalg.kron_all(parts))


def product_state(sig: SpaceSignature, parts: Mapping[str, np.ndarray]) -> StateVector:
    """Tensor product of one amplitude vector per factor."""
    vecs = []
    for f in sig.factors:
        if f.label not in parts:
            raise SignatureError(f"missing amplitudes for factor '{f.label}'")
        v = np.asarray(parts[f.label], dtype=complex).ravel()
        if v.size != f.dim:
            raise SignatureError(f"factor '{f.label}' expects dim {f.dim}, got {v.size}")
        vecs.append(v)
    return StateVector(sig, linalg.kron_all(vecs))


def density_of(state: State) -> np.ndarray:
    if isinstance(state, StateVector):
        return np.outer(state.amplitudes, state.amplitudes.conj())
    return state.matrix


def expectation(state: State, op: LabeledOperator) -> complex:
    """<psi|O|psi> for vectors, Tr(rho O) for density matrices."""
    _same_signature(state.signature, op.signature)
    if isinstance(state, StateVector):
        return complex(np.vdot(state.amplitudes, op.matrix @ state.amplitudes))
    return complex(np.einsum("ij,ji->", state.matrix, op.matrix))


def apply_operator(state: State, op: LabeledOperator) -> State:
    """O|psi> or O rho O^dag; used for local unitaries."""
    _same_signature(state.signature, op.signature)
    if isinstance(state, StateVector):
        return StateVector(state.signature, op.matrix @ state.amplitudes)
    return DensityMatrix(state.signature, op.matrix @ state.matrix @ op.matrix.conj().T)


def apply_local(state: State, label: str, u_local: np.ndarray) -> State:
    return apply_operator(state, embed(u_local, label, state.signature))


def evolve(h: LabeledOperator, t: float, state: State) -> State:
    """Propagate a state under exp(-i H t) for a Hermitian generator."""
    _same_signature(h.signature, state.signature)
    ed = linalg.herm_eig(h.matrix)
    u = ed.function_of(lambda w: np.exp(-1j * w * t))
    return apply_operator(state, LabeledOperator(h.signature, u, h.support))


def propagator_family(h: LabeledOperator):
    """One eigendecomposition, many times: returns U(t) as a callable."""
    ed = linalg.herm_eig(h.matrix)

    def u_of_t(t: float) -> LabeledOperator:
        u = ed.function_of(lambda w: np.exp(-1j * w * t))
        return LabeledOperator(h.signature, u, h.support)

    return u_of_t


@dataclass(frozen=True)
class DensityValidation:
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float

    @property
    def ok(self) -> bool:
        return (
            self.hermiticity_defect <= 1e-10
            and self.trace_defect <= 1e-8
            and self.min_eigenvalue >= -1e-8
        )


def validate_density(rho: DensityMatrix) -> DensityValidation:
    """Report-only check of Hermiticity, unit trace and positivity."""
    m = rho.matrix
    herm = float(np.abs(m - m.conj().T).max())
    tr = abs(complex(np.trace(m)) - 1.0)
    w = np.linalg.eigvalsh((m + m.conj().T) / 2)
    return DensityValidation(herm, float(tr), float(w[0]))


def level_populations(state: State, label: str) -> np.ndarray:
    """Marginal occupation probabilities of one factor's levels."""
    sig = state.signature
    ax = sig.axis(label)
    dims = sig.dims
    if isinstance(state, StateVector):
        probs = np.abs(state.amplitudes.reshape(dims)) ** 2
        other = tuple(i for i in range(len(dims)) if i != ax)
        return probs.sum(axis=other) if other else probs
    diag = np.real(np.diag(state.matrix)).reshape(dims)
    other = tuple(i for i in range(len(dims)) if i != ax)
    return diag.sum(axis=other) if other else diag


def leakage(state: State, label: str) -> float:
    """Population of the top two levels of a bosonic factor."""
    pops = level_populations(state, label)
    return float(pops[-2:].sum())


def require_low_leakage(
    state: State,
    labels: Iterable[str] | None = None,
    threshold: float = LEAKAGE_THRESHOLD,
):
    """Raise :class:`LeakageError` if any bosonic factor leaks too much."""
    sig = state.signature
    if labels is None:
        labels = [f.label for f in sig.factors if f.kind == BOSON]
    for lab in labels:
        pop = leakage(state, lab)
        if pop >= threshold:
            raise LeakageError(lab, pop, threshold)


def escalate_fock_dim(run, start_dim: int, max_dim: int = MAX_FOCK_DIM):
    """Retry ``run(dim)`` with doubled truncation until leakage is acceptable.

    ``run`` must raise :class:`LeakageError` when the truncation is too
    small.  Dimensions double from ``start_dim`` up to ``max_dim``.
    """
    dim = int(start_dim)
    while True:
        try:
            return run(dim)
        except LeakageError:
            if dim >= max_dim:
                raise
            dim = min(2 * dim, max_dim)
