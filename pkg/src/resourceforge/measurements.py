"""Complete rank-one projective measurements and local dephasing maps.

A measurement is stored as the unitary whose columns are the measured
basis, which keeps the projector family complete and orthogonal by
construction.  Bases are parametrised by d^2 - 1 angles: a fixed sequence
of two-angle Givens rotations (the elimination order of a QR sweep)
followed by d - 1 relative column phases.  The chart reaches every
rank-one complete measurement; projector relabeling and column-phase
redundancy are accepted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NotAQubit,
    NotBipartite,
    NotUnitary,
    ParamCountMismatch,
)
from .states import CONSTRUCTION_TOL, DensityMatrix


@dataclass(frozen=True)
class ProjectiveMeasurement:
    """Complete family of rank-one projectors P_i = |b_i><b_i|."""

    dimension: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.array(self.basis, dtype=np.complex128)
        if b.shape != (self.dimension, self.dimension):
            raise DimensionMismatch(
                f"basis shape {b.shape} does not match dimension {self.dimension}"
            )
        if np.max(np.abs(b.conj().T @ b - np.eye(self.dimension))) > CONSTRUCTION_TOL:
            raise NotUnitary("basis columns are not orthonormal")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    def projectors(self) -> list[np.ndarray]:
        return [
            np.outer(self.basis[:, i], self.basis[:, i].conj())
            for i in range(self.dimension)
        ]


def param_count(d: int) -> int:
    """Number of angles parametrising bases in dimension d."""
    return d * d - 1


def _elimination_sequence(d: int) -> list[tuple[int, int, int]]:
    # (i, j, col): the rotation on rows (i, j) that zeroes entry (j, col)
    seq = []
    for col in range(d - 1):
        for row in range(d - 1, col, -1):
            seq.append((row - 1, row, col))
    return seq


def _givens(d: int, i: int, j: int, theta: float, phi: float) -> np.ndarray:
    g = np.eye(d, dtype=np.complex128)
    c, s = np.cos(theta), np.sin(theta)
    g[i, i] = c
    g[i, j] = -s * np.exp(1j * phi)
    g[j, i] = s * np.exp(-1j * phi)
    g[j, j] = c
    return g


def unitary_from_params(params, d: int) -> np.ndarray:
    """Build the basis unitary for a parameter vector of length d^2 - 1.

    Layout: [theta_1, phi_1, ..., theta_K, phi_K, alpha_1, ..., alpha_{d-1}]
    with K = d(d-1)/2.  Natural ranges are theta in [0, pi/2], phi and
    alpha in [0, 2 pi); the chart is periodic so any real values are valid.
    """
    p = np.asarray(params, dtype=float).ravel()
    if p.shape != (param_count(d),):
        raise ParamCountMismatch(
            f"expected {param_count(d)} parameters for dimension {d}, got {p.size}"
        )
    seq = _elimination_sequence(d)
    u = np.eye(d, dtype=np.complex128)
    for k, (i, j, _col) in enumerate(seq):
        u = u @ _givens(d, i, j, p[2 * k], p[2 * k + 1])
    phases = np.ones(d, dtype=np.complex128)
    phases[1:] = np.exp(1j * p[2 * len(seq):])
    return u * phases[None, :]


def params_from_unitary(u) -> np.ndarray:
    """Invert the chart: angles reproducing u up to a global phase.

    ``unitary_from_params(params_from_unitary(u), d)`` equals u times a
    unit-modulus scalar, so it defines the same projective measurement.
    """
    v = np.array(u, dtype=np.complex128)
    d = v.shape[0]
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {v.shape}")
    if np.max(np.abs(v.conj().T @ v - np.eye(d))) > CONSTRUCTION_TOL:
        raise NotUnitary("matrix is not unitary")
    rot = []
    for (i, j, col) in _elimination_sequence(d):
        a, b = v[i, col], v[j, col]
        if abs(b) < 1e-14:
            theta, phi = 0.0, 0.0
        elif abs(a) < 1e-14:
            theta, phi = np.pi / 2, 0.0
        else:
            theta = np.arctan2(abs(b), abs(a))
            phi = float(np.angle(a) - np.angle(b))
        rot.extend((theta, phi))
        c, s = np.cos(theta), np.sin(theta)
        row_i = c * v[i] + s * np.exp(1j * phi) * v[j]
        row_j = -s * np.exp(-1j * phi) * v[i] + c * v[j]
        v[i], v[j] = row_i, row_j
    diag = np.diagonal(v)
    alphas = np.angle(diag[1:] * np.conj(diag[0]))
    return np.concatenate([np.asarray(rot, dtype=float), alphas])


def param_ranges(d: int) -> np.ndarray:
    """(n, 2) array of natural [lo, hi) ranges matching the chart layout."""
    n_rot = d * (d - 1) // 2
    ranges = []
    for _ in range(n_rot):
        ranges.append((0.0, np.pi / 2))
        ranges.append((0.0, 2 * np.pi))
    for _ in range(d - 1):
        ranges.append((0.0, 2 * np.pi))
    return np.asarray(ranges, dtype=float)


def measurement_from_params(params, d: int) -> ProjectiveMeasurement:
    """Measurement whose basis is the chart unitary at ``params``."""
    return ProjectiveMeasurement(d, unitary_from_params(params, d))


def _site_split(dims: tuple[int, ...], site: int) -> tuple[int, int, int]:
    left = int(np.prod(dims[:site]))
    right = int(np.prod(dims[site + 1:]))
    return left, dims[site], right


def _dephase_site(matrix: np.ndarray, dims: tuple[int, ...], site: int) -> np.ndarray:
    """Zero every block that is off-diagonal in the site's computational index."""
    left, ds, right = _site_split(dims, site)
    t = matrix.reshape(left, ds, right, left, ds, right)
    out = np.zeros_like(t)
    for s in range(ds):
        out[:, s, :, :, s, :] = t[:, s, :, :, s, :]
    d = matrix.shape[0]
    return out.reshape(d, d)


def measure_local(
    rho: DensityMatrix, m: ProjectiveMeasurement, side: int
) -> DensityMatrix:
    """Dephase one subsystem in the measurement basis: sum_i P_i rho P_i."""
    n = len(rho.dims)
    if side < 0 or side >= n:
        raise DimensionMismatch(f"subsystem {side} not in 0..{n - 1}")
    if m.dimension != rho.dims[side]:
        raise DimensionMismatch(
            f"measurement dimension {m.dimension} != subsystem dimension "
            f"{rho.dims[side]}"
        )
    left, ds, right = _site_split(rho.dims, side)
    w = np.kron(np.eye(left), np.kron(m.basis.conj().T, np.eye(right)))
    rotated = w @ rho.matrix @ w.conj().T
    dephased = _dephase_site(rotated, rho.dims, side)
    out = w.conj().T @ dephased @ w
    out = (out + out.conj().T) / 2
    return DensityMatrix(out, rho.dims)


def measure_both(
    rho: DensityMatrix,
    m_a: ProjectiveMeasurement,
    m_b: ProjectiveMeasurement,
) -> DensityMatrix:
    """Dephase both sides of a bipartite state; order does not matter."""
    if len(rho.dims) != 2:
        raise NotBipartite(f"expected two subsystems, got dims {rho.dims}")
    return measure_local(measure_local(rho, m_a, 0), m_b, 1)


def dephasing_channel(rho: DensityMatrix, qubit: int) -> DensityMatrix:
    """Computational-basis dephasing of one qubit subsystem.

    This is the classical-communication primitive; other dephasing bases
    are obtained by conjugating with local unitaries.
    """
    n = len(rho.dims)
    if qubit < 0 or qubit >= n:
        raise DimensionMismatch(f"subsystem {qubit} not in 0..{n - 1}")
    if rho.dims[qubit] != 2:
        raise NotAQubit(
            f"subsystem {qubit} has dimension {rho.dims[qubit]}, expected 2"
        )
    return DensityMatrix(_dephase_site(rho.matrix, rho.dims, qubit), rho.dims)
