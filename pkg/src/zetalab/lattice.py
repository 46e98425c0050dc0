"""Successive minima of a distance function on a lattice (Minkowski).

Lattice points are enumerated with the Fincke-Pohst recursion on the Gram
matrix, which lists *every* coefficient vector whose image lies in a Euclidean
ball. A ball of radius ``euclid_ratio * r`` contains the ``g``-ball of radius
``r`` as long as ``|x|_2 <= euclid_ratio * g(x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from zetalab.errors import ContractViolation, DomainError


def _euclidean(x):
    return float(np.sqrt(np.dot(x, x)))


def _sup(x):
    return float(np.max(np.abs(x)))


def _l1(x):
    return float(np.sum(np.abs(x)))


# name -> (g, constant c(n) such that |x|_2 <= c(n) g(x))
NORMS: dict[str, tuple[Callable, Callable[[int], float]]] = {
    "euclidean": (_euclidean, lambda n: 1.0),
    "sup": (_sup, lambda n: math.sqrt(n)),
    "l1": (_l1, lambda n: 1.0),
}


@dataclass(frozen=True)
class LatticeInstance:
    """Lattice spanned by the *rows* of ``basis`` with distance function ``norm``."""

    basis: np.ndarray
    norm: str | Callable = "euclidean"
    euclid_ratio: float | None = None

    def __post_init__(self):
        b = np.array(self.basis, dtype=float)
        if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape[0] == 0:
            raise ContractViolation(f"basis must be a non-empty square matrix, got shape {b.shape}")
        if abs(np.linalg.det(b)) < 1e-12:
            raise ContractViolation("basis is singular")
        object.__setattr__(self, "basis", b)
        n = b.shape[0]
        if isinstance(self.norm, str):
            if self.norm not in NORMS:
                raise ContractViolation(f"unknown norm {self.norm!r}; choose from {sorted(NORMS)}")
            if self.euclid_ratio is None:
                object.__setattr__(self, "euclid_ratio", NORMS[self.norm][1](n))
        elif self.euclid_ratio is None:
            raise ContractViolation("a custom distance function needs euclid_ratio")
        if self.g(np.zeros(n)) != 0:
            raise ContractViolation("distance function must vanish at 0")
        for row in b:
            if not self.g(row) > 0:
                raise ContractViolation("distance function must be positive off 0")

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    def g(self, x) -> float:
        fn = NORMS[self.norm][0] if isinstance(self.norm, str) else self.norm
        return float(fn(np.asarray(x, dtype=float)))

    def sufficient_radius(self) -> float:
        """A radius that always contains n independent lattice points: the basis itself."""
        return max(self.g(row) for row in self.basis)


def fincke_pohst(basis: np.ndarray, radius: float) -> list[tuple[int, ...]]:
    """All nonzero integer vectors ``c`` with ``|c @ basis|_2 <= radius``."""
    basis = np.asarray(basis, dtype=float)
    n = basis.shape[0]
    gram = basis @ basis.T
    # q[i,i] * (c_i + sum_{j>i} q[i,j] c_j)^2 summed over i equals c G c^T
    q = np.array(gram, dtype=float)
    for i in range(n):
        for j in range(i + 1, n):
            q[j, i] = q[i, j]
            q[i, j] = q[i, j] / q[i, i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k, l] -= q[k, i] * q[i, l]
    r2 = radius * radius * (1 + 1e-9) + 1e-12
    out = []
    c = [0] * n

    def recurse(i: int, remaining: float):
        centre = -sum(q[i, j] * c[j] for j in range(i + 1, n))
        span = math.sqrt(max(remaining, 0.0) / q[i, i])
        for ci in range(math.ceil(centre - span - 1e-12), math.floor(centre + span + 1e-12) + 1):
            used = q[i, i] * (ci - centre) ** 2
            if used > remaining + 1e-12:
                continue
            c[i] = ci
            if i == 0:
                if any(c):
                    out.append(tuple(c))
            else:
                recurse(i - 1, remaining - used)
        c[i] = 0

    recurse(n - 1, r2)
    return out


def lattice_points(lat: LatticeInstance, radius: float) -> list[tuple[tuple[int, ...], float]]:
    """Nonzero lattice points with ``g <= radius`` as (coefficients, g-value), sorted by g."""
    pts = []
    for c in fincke_pohst(lat.basis, lat.euclid_ratio * radius):
        gv = lat.g(np.array(c, dtype=float) @ lat.basis)
        if gv <= radius:
            pts.append((c, gv))
    pts.sort(key=lambda t: (t[1], t[0]))
    return pts


def minkowski_minima(lat: LatticeInstance, radius: float | None = None) -> list[float]:
    """Successive minima mu_1 <= ... <= mu_n of ``g`` on the lattice.

    ``radius`` defaults to the largest basis-vector length, which is always
    enough; a user radius too small to contain n independent points is an error.
    """
    n = lat.dimension
    if radius is None:
        radius = lat.sufficient_radius()
    if not radius > 0:
        raise DomainError("radius must be positive")
    minima: list[float] = []
    chosen: list[np.ndarray] = []
    for c, gv in lattice_points(lat, radius):
        v = np.array(c, dtype=float) @ lat.basis
        if np.linalg.matrix_rank(np.array(chosen + [v])) > len(chosen):
            chosen.append(v)
            minima.append(gv)
            if len(minima) == n:
                return minima
    raise DomainError(
        f"radius too small: only {len(minima)} of {n} independent lattice points have g <= {radius}"
    )
