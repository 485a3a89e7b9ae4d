#!/usr/bin/env python3
"""Collapse and revival of a Gaussian packet, tracked in the Heisenberg picture.

The quadratic spectrum makes every phase factor return to 1 at
t_r = 4 m L^2 / (hbar pi), so the position operator itself revives:
x(t_r) = x(0) to machine precision, and with it the packet's spread.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from matrixwell import (
    TimeGrid,
    WellConfig,
    build_position,
    evolve,
    gaussian_packet,
    revival_time,
    spread_report,
)

cfg = WellConfig(N=200)
packet = gaussian_packet(cfg, center=0.5, width=0.05)
t_r = revival_time(cfg)
print(f"revival time t_r = 4 m L^2 / (hbar pi) = {t_r:.12f}")

# a packet centered at L/2 lives on odd modes only and sub-revives every
# t_r/8; the 28-step grid stays off those times so the collapse is visible
rep = spread_report(packet, cfg, TimeGrid(0.0, t_r, 29))
print("\n      t/t_r      dx(t)     dx(t) dx(0)   |<[x(t),x(0)]>|/2")
for row in rep.data[::4]:
    t, dx, dx0, bound = row[0], row[3], row[5], row[6]
    print(f"     {t / t_r:6.3f}   {dx:9.5f}   {dx * dx0:11.6f}    {bound:13.6f}")

x = build_position(cfg)
xt = evolve(x, cfg, t_r)
print("\nrevival exactness:")
print("  max |x(t_r) - x(0)|     = %.3e" % np.abs(xt.entries - x.entries).max())
print("  |dx(t_r) - dx(0)|       = %.3e" % abs(rep.column("dx")[-1] - rep.column("dx0")[0]))
print("  Robertson bound held on every sampled row (validated during construction).")
