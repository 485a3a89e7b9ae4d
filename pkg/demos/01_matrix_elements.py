#!/usr/bin/env python3
"""Closed-form position and momentum matrices in the energy eigenbasis.

Builds the truncated operators for a unit well, prints the leading
block, and checks the structure everything else relies on: parity
zeros, Hermiticity, and p = m dx/dt at t = 0.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from matrixwell import (
    WellConfig,
    build_momentum,
    build_position,
    mode_frequency,
)

cfg = WellConfig(N=8)
x = build_position(cfg).entries.real
p = build_momentum(cfg).entries

print(f"well: L={cfg.L}, m={cfg.m}, hbar={cfg.hbar}, N={cfg.N}")
print("\nposition matrix, leading 5x5 block:")
for row in x[:5, :5]:
    print("  " + "  ".join(f"{v:+10.6f}" for v in row))

print("\nmomentum matrix (imaginary parts), leading 5x5 block:")
for row in p[:5, :5]:
    print("  " + "  ".join(f"{v.imag:+10.6f}" for v in row))

k = np.arange(1, cfg.N + 1)
parity_mask = (k[:, None] + k[None, :]) % 2 == 0
off_diag = ~np.eye(cfg.N, dtype=bool)
print("\nstructure checks:")
print("  diagonal of x is L/2 everywhere:", np.all(x.diagonal() == cfg.L / 2))
print("  x elements with k+l even vanish:", np.all(x[parity_mask & off_diag] == 0.0))
print("  p diagonal vanishes:            ", np.all(p.diagonal() == 0.0))
print("  x is exactly symmetric:         ", np.array_equal(x, x.T))
print("  p is exactly Hermitian:         ", np.array_equal(p, p.conj().T))

# p_kl = i m (omega_k - omega_l) x_kl: momentum is the rate of change of position
omegas = np.array([mode_frequency(cfg, int(n)) for n in k])
rate = 1j * cfg.m * (omegas[:, None] - omegas[None, :]) * x
print("  max |p - i m (w_k - w_l) x|:     %.3e" % np.abs(p - rate).max())
