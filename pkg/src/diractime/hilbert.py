"""Discretized state space on a uniform momentum grid.

Conventions (hbar = c = 1)::

    psi(x) = (2 pi)^(-3/2) * integral exp(+i p.x) phi(p) d^3p

so position acts on momentum-space amplitudes as ``r = i grad_p``. Grid
indices are centred: p_k = k dp for k = -n/2 .. n/2 - 1, so p = 0 and x = 0
are both nodes. An axis with n = 1 is a frozen transverse direction
(p = x = 0 there); the grid (1, 1, n) is the one-dimensional mode along z.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Literal, Protocol, Sequence

import numpy as np
import scipy.fft

from .errors import LocalizationError, ValidationError

Representation = Literal["momentum", "position"]

NORM_TOL = 1e-10
LOCALIZATION_TOL = 1e-10


def thread_count() -> int:
    """Parallelism cap from TOOL_THREADS (absent -> all cores)."""
    raw = os.environ.get("TOOL_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _as_triple(value, name: str) -> tuple:
    if np.ndim(value) == 0:
        return (value, value, value)
    value = tuple(value)
    if len(value) != 3:
        raise ValidationError(f"{name} must be a scalar or a 3-tuple")
    return value


@dataclass(frozen=True)
class MomentumGrid:
    shape: tuple[int, int, int]
    p_max: tuple[float, float, float]

    @property
    def dp(self) -> np.ndarray:
        return np.array([2 * pm / n if n > 1 else 1.0 for n, pm in zip(self.shape, self.p_max)])

    @property
    def dx(self) -> np.ndarray:
        return np.array([2 * np.pi / (n * d) if n > 1 else 1.0 for n, d in zip(self.shape, self.dp)])

    @property
    def active_axes(self) -> tuple[int, ...]:
        return tuple(i for i, n in enumerate(self.shape) if n > 1)

    @property
    def p_axes(self) -> tuple[np.ndarray, ...]:
        return tuple(np.arange(-(n // 2), n - n // 2) * d for n, d in zip(self.shape, self.dp))

    @property
    def x_axes(self) -> tuple[np.ndarray, ...]:
        return tuple(np.arange(-(n // 2), n - n // 2) * d for n, d in zip(self.shape, self.dx))

    def mesh(self, representation: Representation) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Broadcastable coordinate arrays of shapes (n,1,1), (1,n,1), (1,1,n)."""
        axes = self.p_axes if representation == "momentum" else self.x_axes
        return tuple(a.reshape([-1 if i == k else 1 for i in range(3)]) for k, a in enumerate(axes))

    def cell_volume(self, representation: Representation) -> float:
        d = self.dp if representation == "momentum" else self.dx
        return float(np.prod([d[i] for i in self.active_axes]))

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))


def make_grid(n, p_max) -> MomentumGrid:
    ns = tuple(int(v) for v in _as_triple(n, "n"))
    pm = tuple(float(v) for v in _as_triple(p_max, "p_max"))
    for v in ns:
        if v < 1 or v & (v - 1):
            raise ValidationError(f"grid size {v} is not a power of two")
    for v in pm:
        if not v > 0 or not np.isfinite(v):
            raise ValidationError(f"p_max must be positive, got {v}")
    return MomentumGrid(shape=ns, p_max=pm)


def make_line_grid(n: int, p_max: float) -> MomentumGrid:
    """One-dimensional mode: n nodes along z, transverse momenta frozen at 0."""
    return make_grid((1, 1, n), (1.0, 1.0, p_max))


@dataclass(frozen=True, eq=False)
class SpinorField:
    grid: MomentumGrid
    data: np.ndarray  # (4, nx, ny, nz) complex
    representation: Representation = "momentum"

    def __post_init__(self):
        if self.data.shape != (4, *self.grid.shape):
            raise ValidationError(f"field data shape {self.data.shape} does not match grid {self.grid.shape}")
        if self.representation not in ("momentum", "position"):
            raise ValidationError(f"unknown representation {self.representation!r}")

    def replace(self, data: np.ndarray, representation: Representation | None = None) -> "SpinorField":
        return SpinorField(self.grid, data, representation or self.representation)

    def to(self, representation: Representation) -> "SpinorField":
        if representation == self.representation:
            return self
        return switch_representation(self)

    def to_momentum(self) -> "SpinorField":
        return self.to("momentum")

    def to_position(self) -> "SpinorField":
        return self.to("position")

    def density(self) -> np.ndarray:
        return np.sum(np.abs(self.data) ** 2, axis=0)

    def norm2(self) -> float:
        return float(np.sum(self.density()) * self.grid.cell_volume(self.representation))

    def __add__(self, other: "SpinorField") -> "SpinorField":
        other = other.to(self.representation)
        return self.replace(self.data + other.data)

    def __sub__(self, other: "SpinorField") -> "SpinorField":
        other = other.to(self.representation)
        return self.replace(self.data - other.data)

    def __mul__(self, scalar) -> "SpinorField":
        return self.replace(self.data * scalar)

    __rmul__ = __mul__


def _fft_axes(grid: MomentumGrid) -> tuple[int, ...]:
    return tuple(a + 1 for a in grid.active_axes)


def switch_representation(f: SpinorField) -> SpinorField:
    """Unitary centred DFT between momentum and position amplitudes."""
    grid = f.grid
    axes = _fft_axes(grid)
    if not axes:
        return f.replace(f.data.copy(), "position" if f.representation == "momentum" else "momentum")
    scale = np.sqrt(grid.cell_volume("momentum") / grid.cell_volume("position"))
    shifted = scipy.fft.ifftshift(f.data, axes=axes)
    if f.representation == "momentum":
        out = scipy.fft.ifftn(shifted, axes=axes, norm="ortho", workers=thread_count())
        return f.replace(scipy.fft.fftshift(out, axes=axes) * scale, "position")
    out = scipy.fft.fftn(shifted, axes=axes, norm="ortho", workers=thread_count())
    return f.replace(scipy.fft.fftshift(out, axes=axes) / scale, "momentum")


def inner_product(a: SpinorField, b: SpinorField) -> complex:
    if a.grid != b.grid:
        raise ValidationError("fields live on different grids")
    if a.representation != b.representation:
        raise ValidationError("fields are in different representations")
    return complex(np.vdot(a.data, b.data) * a.grid.cell_volume(a.representation))


def normalize(f: SpinorField) -> SpinorField:
    n2 = f.norm2()
    if not n2 > 0:
        raise ValidationError("cannot normalize a zero field")
    return f * (1.0 / np.sqrt(n2))


def boundary_amplitude(f: SpinorField, representation: Representation | None = None) -> float:
    """Largest node amplitude on the outermost grid layer.

    Amplitudes are those of the unit-norm state vector in the orthonormal node
    basis, |psi_node| sqrt(cell volume) / ||psi||, so |amplitude|^2 is the
    probability carried by that node.
    """
    g = f.to(representation or f.representation)
    n2 = g.norm2()
    if n2 == 0:
        return 0.0
    amp = np.sqrt(g.density() * g.grid.cell_volume(g.representation) / n2)
    edge = 0.0
    for ax in g.grid.active_axes:
        for idx in (0, -1):
            edge = max(edge, float(np.take(amp, idx, axis=ax).max()))
    return edge


def require_localized(f: SpinorField, tol: float = LOCALIZATION_TOL) -> None:
    for rep in ("momentum", "position"):
        b = boundary_amplitude(f, rep)
        if b > tol:
            raise LocalizationError(f"{rep}-space boundary amplitude {b:.3e} exceeds {tol:.1e}")


def require_normalized(f: SpinorField, tol: float = NORM_TOL) -> None:
    n2 = f.norm2()
    if abs(n2 - 1.0) > tol:
        raise ValidationError(f"field is not normalized (<psi|psi> = {n2:.15g})")


def apply_matrix(m: np.ndarray, data: np.ndarray) -> np.ndarray:
    """Constant 4x4 matrix acting on every node."""
    return np.einsum("ab,b...->a...", m, data, optimize=True)


class Observable(Protocol):
    name: str

    def apply(self, f: SpinorField) -> SpinorField: ...


Coefficient = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class MatrixField:
    """Node-local matrix-valued function M(k) = sum_j c_j(k) G_j.

    ``k`` is momentum or position depending on ``representation``; each term is
    a scalar coefficient function of the three coordinates and a constant
    4x4 matrix.
    """

    terms: tuple[tuple[Coefficient, np.ndarray], ...]
    representation: Representation = "momentum"
    name: str = "M"
    hermitian: bool = True

    def at(self, k: Sequence[float]) -> np.ndarray:
        kx, ky, kz = (np.asarray(v, dtype=float) for v in k)
        out = np.zeros((4, 4), dtype=complex)
        for coef, mat in self.terms:
            out += complex(np.asarray(coef(kx, ky, kz))) * mat
        return out

    def apply(self, f: SpinorField) -> SpinorField:
        g = f.to(self.representation)
        kx, ky, kz = g.grid.mesh(self.representation)
        out = np.zeros_like(g.data)
        for coef, mat in self.terms:
            c = coef(kx, ky, kz)
            out += c * apply_matrix(mat, g.data)
        return g.replace(out)

    def __add__(self, other: "MatrixField") -> "MatrixField":
        if other.representation != self.representation:
            raise ValidationError("cannot add matrix fields in different representations")
        return MatrixField(self.terms + other.terms, self.representation, f"{self.name}+{other.name}",
                           self.hermitian and other.hermitian)

    def scaled(self, s: float) -> "MatrixField":
        return MatrixField(tuple((_scale(c, s), m) for c, m in self.terms), self.representation,
                           f"{s}*{self.name}", self.hermitian and np.isreal(s))


def _scale(c: Coefficient, s) -> Coefficient:
    return lambda x, y, z: s * c(x, y, z)


def constant(value: float) -> Coefficient:
    return lambda x, y, z: value


def coordinate(axis: int) -> Coefficient:
    return lambda x, y, z: (x, y, z)[axis]


_I4 = np.eye(4, dtype=complex)


def position_operator(axis: int) -> MatrixField:
    return MatrixField(((coordinate(axis), _I4),), "position", "xyz"[axis])


def momentum_operator(axis: int) -> MatrixField:
    return MatrixField(((coordinate(axis), _I4),), "momentum", "p" + "xyz"[axis])


def identity_operator() -> MatrixField:
    return MatrixField(((constant(1.0), _I4),), "momentum", "I")


@dataclass(frozen=True)
class ProductOperator:
    """A @ B (rightmost applied first)."""

    left: Observable
    right: Observable
    name: str = "AB"

    def apply(self, f: SpinorField) -> SpinorField:
        return self.left.apply(self.right.apply(f))


@dataclass(frozen=True)
class SumOperator:
    parts: tuple[tuple[complex, Observable], ...]
    name: str = "sum"

    def apply(self, f: SpinorField) -> SpinorField:
        out = None
        for c, op in self.parts:
            g = op.apply(f).to(f.representation)
            out = g * c if out is None else out + g * c
        return out


def matrix_element(a: SpinorField, op: Observable, b: SpinorField) -> complex:
    """<a| op |b>."""
    ob = op.apply(b)
    return inner_product(a.to(ob.representation), ob)


def expect_complex(f: SpinorField, op: Observable) -> complex:
    return matrix_element(f, op, f)


def expect_observable(f: SpinorField, op: Observable) -> float:
    require_normalized(f)
    return expect_complex(f, op).real


def variance(f: SpinorField, op: Observable) -> float:
    """<O^2> - <O>^2 with <O^2> = ||O psi||^2 (Hermitian O); clipped at 0."""
    require_normalized(f)
    of = op.apply(f)
    mean = inner_product(f.to(of.representation), of).real
    return max(of.norm2() - mean * mean, 0.0)


def expect_commutator(f: SpinorField, a: Observable, b: Observable) -> complex:
    """<[A, B]> = <A psi|B psi> - <B psi|A psi> for Hermitian A, B."""
    af = a.apply(f)
    bf = b.apply(f).to(af.representation)
    return 2j * inner_product(af, bf).imag


def gradient_fd(f: SpinorField, axis: int, order: int = 8) -> np.ndarray:
    """Central finite-difference d/dp_axis of momentum amplitudes (periodic stencil)."""
    if f.representation != "momentum":
        raise ValidationError("finite-difference gradient needs the momentum representation")
    if f.grid.shape[axis] == 1:
        return np.zeros_like(f.data)
    weights = _central_weights(order)
    h = f.grid.dp[axis]
    out = np.zeros_like(f.data)
    for k, w in enumerate(weights, start=1):
        out += w * (np.roll(f.data, -k, axis=axis + 1) - np.roll(f.data, k, axis=axis + 1))
    return out / h


def _central_weights(order: int) -> np.ndarray:
    """Weights w_k for f'(0) ~ sum_k w_k (f(k) - f(-k)), k = 1..order/2."""
    if order % 2 or order < 2:
        raise ValidationError("finite-difference order must be an even integer >= 2")
    m = order // 2
    k = np.arange(1, m + 1, dtype=float)
    # odd moments: sum_k w_k 2 k^(2j+1) = delta_j0
    a = np.array([2 * k ** (2 * j + 1) for j in range(m)])
    rhs = np.zeros(m)
    rhs[0] = 1.0
    return np.linalg.solve(a, rhs)


def position_gradient_field(f: SpinorField, axis: int, order: int = 8) -> SpinorField:
    """x_axis psi evaluated as i d/dp psi by finite differences (momentum representation)."""
    g = f.to_momentum()
    return g.replace(1j * gradient_fd(g, axis, order))
