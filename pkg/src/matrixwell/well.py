"""Infinite square well: configuration, spectrum, and closed-form matrix elements.

Walls sit at x = 0 and x = L.  Mode n (1-based, n = 1 is the ground state) has

    psi_n(x)  = sqrt(2/L) sin(n pi x / L)
    E_n       = hbar^2 pi^2 n^2 / (2 m L^2)
    omega_n   = E_n / hbar

All matrices produced by this package live in this energy eigenbasis,
truncated to the first N modes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class WellConfig:
    """Physical parameters of the well plus the truncation dimension.

    Every derived quantity in the package takes its units from here.
    Defaults are natural units (L = m = hbar = 1).  N is the number of
    retained eigenstates; every matrix in a computation shares this one
    dimension.
    """

    L: float = 1.0
    m: float = 1.0
    hbar: float = 1.0
    N: int = 100

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError(f"well width L must be positive, got {self.L}")
        if not self.m > 0:
            raise ValueError(f"mass m must be positive, got {self.m}")
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if int(self.N) != self.N or self.N < 2:
            raise ValueError(f"truncation dimension N must be an integer >= 2, got {self.N}")
        object.__setattr__(self, "N", int(self.N))

    @property
    def base_frequency(self) -> float:
        """omega_1 = hbar pi^2 / (2 m L^2); omega_n = n^2 * omega_1."""
        return self.hbar * math.pi**2 / (2.0 * self.m * self.L**2)

    def mode_numbers(self) -> np.ndarray:
        return np.arange(1, self.N + 1)


def _check_mode(cfg: WellConfig, n: int) -> int:
    if int(n) != n or not (1 <= n <= cfg.N):
        raise ValueError(f"mode index must be an integer in 1..{cfg.N}, got {n}")
    return int(n)


def wavenumber(cfg: WellConfig, n: int) -> float:
    """k_n = n pi / L."""
    n = _check_mode(cfg, n)
    return n * math.pi / cfg.L


def eigenfunction(cfg: WellConfig, n: int, x):
    """psi_n(x) = sqrt(2/L) sin(k_n x), defined on 0 <= x <= L.

    `x` may be a scalar or an array; values outside [0, L] are rejected.
    """
    n = _check_mode(cfg, n)
    xv = np.asarray(x, dtype=float)
    if np.any(xv < 0.0) or np.any(xv > cfg.L):
        raise ValueError(f"position outside the well [0, {cfg.L}]")
    out = math.sqrt(2.0 / cfg.L) * np.sin(wavenumber(cfg, n) * xv)
    return float(out) if np.isscalar(x) else out


def eigen_energy(cfg: WellConfig, n: int) -> float:
    """E_n = hbar^2 pi^2 n^2 / (2 m L^2)."""
    n = _check_mode(cfg, n)
    return cfg.hbar**2 * math.pi**2 * n**2 / (2.0 * cfg.m * cfg.L**2)


def mode_frequency(cfg: WellConfig, n: int) -> float:
    """omega_n = E_n / hbar = n^2 * base_frequency."""
    n = _check_mode(cfg, n)
    return n * n * cfg.base_frequency


def position_element(cfg: WellConfig, k: int, l: int) -> float:
    """Matrix element x_kl = <k| x |l> in closed form.

    x_nn = L/2.  Off the diagonal the element vanishes for k+l even
    (parity selection) and equals -8 L k l / (pi^2 (k^2 - l^2)^2) for
    k+l odd.  Integer arithmetic is used for k l and (k^2 - l^2)^2 so
    the matrix is exactly symmetric.
    """
    k = _check_mode(cfg, k)
    l = _check_mode(cfg, l)
    if k == l:
        return cfg.L / 2.0
    if (k + l) % 2 == 0:
        return 0.0
    d = k * k - l * l
    return -8.0 * cfg.L * (k * l) / (math.pi**2 * (d * d))


def momentum_element(cfg: WellConfig, k: int, l: int) -> complex:
    """Matrix element p_kl = <k| -i hbar d/dx |l> in closed form.

    The diagonal vanishes, as do all elements with k+l even; for k+l odd

        p_kl = 4 i hbar k l / (L (l^2 - k^2)).

    The matrix is Hermitian: purely imaginary and antisymmetric.  It also
    satisfies p_kl = i m (omega_k - omega_l) x_kl, i.e. p = m dx/dt at t=0.
    """
    k = _check_mode(cfg, k)
    l = _check_mode(cfg, l)
    if k == l or (k + l) % 2 == 0:
        return 0.0 + 0.0j
    return 4j * cfg.hbar * (k * l) / (cfg.L * (l * l - k * k))
