"""States, expectation values, dispersion curves, and collapse/revival diagnostics.

Everything here works in the Heisenberg picture: states are static
coefficient vectors over the energy eigenstates, operators carry the
time dependence.  Reports are plain time-series tables ready for CSV or
JSON emission.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import InvariantViolation, ProjectionError
from .operators import (
    OperatorMatrix,
    _phase_exponents,
    build_momentum,
    build_position,
    commutator,
    evolve,
)
from .well import WellConfig, wavenumber


@dataclass(frozen=True)
class StateVector:
    """Complex coefficients a_n over the energy eigenstates, unit norm."""

    coeffs: np.ndarray

    def __post_init__(self):
        a = np.array(self.coeffs, dtype=complex).ravel()
        if a.size < 1:
            raise ValueError("state needs at least one coefficient")
        norm = float(np.linalg.norm(a))
        if not np.isfinite(norm) or norm < 1e-12:
            raise ValueError("state coefficients have (near-)zero or non-finite norm")
        a = a / norm
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", a)

    @property
    def dim(self) -> int:
        return self.coeffs.size

    @classmethod
    def eigenstate(cls, n: int, dim: int) -> "StateVector":
        if not (1 <= n <= dim):
            raise ValueError(f"eigenstate index must be in 1..{dim}, got {n}")
        a = np.zeros(dim, dtype=complex)
        a[n - 1] = 1.0
        return cls(a)

    @classmethod
    def uniform_superposition(cls, modes, dim: int) -> "StateVector":
        a = np.zeros(dim, dtype=complex)
        for n in modes:
            if not (1 <= n <= dim):
                raise ValueError(f"mode {n} outside 1..{dim}")
            a[n - 1] = 1.0
        return cls(a)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform sampling of [t_start, t_end] with `steps` points."""

    t_start: float
    t_end: float
    steps: int

    def __post_init__(self):
        if not self.t_start < self.t_end:
            raise ValueError("need t_start < t_end")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError("steps must be an integer >= 2")
        object.__setattr__(self, "steps", int(self.steps))

    @property
    def spacing(self) -> float:
        return (self.t_end - self.t_start) / (self.steps - 1)

    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.steps)


class RunReport:
    """Time-series table: one row per sample, fixed column order.

    Columns: t, <x>, <p>, dx = Delta x(t), dp = Delta p(t), dx0 = Delta x(0),
    robertson_bound = |<[x(t), x(0)]>| / 2, free_particle_bound = hbar |t| / 2m,
    residual_x = |d<x>/dt - <p>/m|, residual_p = |d<p>/dt + <dV/dx>|.

    Construction checks the row invariants: dispersions are nonnegative,
    dx * dp >= hbar/2 - 1e-9, and dx * dx0 >= robertson_bound - 1e-9.
    """

    COLUMNS = (
        "t",
        "x_mean",
        "p_mean",
        "dx",
        "dp",
        "dx0",
        "robertson_bound",
        "free_particle_bound",
        "residual_x",
        "residual_p",
    )

    def __init__(self, data: np.ndarray, hbar: float, meta: dict | None = None):
        data = np.asarray(data, dtype=float)
        if data.ndim != 2 or data.shape[1] != len(self.COLUMNS):
            raise ValueError(f"report data must have {len(self.COLUMNS)} columns")
        dx = data[:, 3]
        dp = data[:, 4]
        dx0 = data[:, 5]
        bound = data[:, 6]
        if np.any(dx < 0) or np.any(dp < 0):
            raise InvariantViolation("negative dispersion in report rows")
        bad = np.nonzero(dx * dp < hbar / 2.0 - 1e-9)[0]
        if bad.size:
            i = int(bad[0])
            raise InvariantViolation(
                f"uncertainty product {dx[i] * dp[i]:.6g} < hbar/2 at t={data[i, 0]:.6g}"
                " (truncation too small for this state)"
            )
        bad = np.nonzero(dx * dx0 < bound - 1e-9)[0]
        if bad.size:
            i = int(bad[0])
            raise InvariantViolation(
                f"Robertson bound violated at t={data[i, 0]:.6g}:"
                f" {dx[i] * dx0[i]:.6g} < {bound[i]:.6g}"
            )
        self.data = data
        self.data.setflags(write=False)
        self.meta = dict(meta or {})

    @property
    def nrows(self) -> int:
        return self.data.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.COLUMNS.index(name)]


def _overlap_with_mode(cfg: WellConfig, n: int, f) -> complex:
    """sqrt(2/L) * integral of f(x) sin(k_n x) over [0, L] by oscillatory quadrature."""
    w = wavenumber(cfg, n)
    re, _ = integrate.quad(lambda x: np.real(f(x)), 0.0, cfg.L, weight="sin", wvar=w, limit=400)
    im, _ = integrate.quad(lambda x: np.imag(f(x)), 0.0, cfg.L, weight="sin", wvar=w, limit=400)
    return math.sqrt(2.0 / cfg.L) * (re + 1j * im)


def projection_capture(cfg: WellConfig, f) -> float:
    """Fraction of |f|^2 norm captured by the first N modes."""
    total, _ = integrate.quad(lambda x: abs(f(x)) ** 2, 0.0, cfg.L, limit=400)
    if total <= 0:
        raise ValueError("wavefunction has zero norm on [0, L]")
    captured = sum(abs(_overlap_with_mode(cfg, n, f)) ** 2 for n in range(1, cfg.N + 1))
    return captured / total


def project_wavefunction(cfg: WellConfig, f, min_capture: float | None = 0.999) -> StateVector:
    """Project a wavefunction f(x) onto the retained modes and normalize.

    Raises ProjectionError when the first N modes capture less than
    `min_capture` of the norm of f (the truncation would silently distort
    the state).  Pass min_capture=None to skip the check.
    """
    raw = np.array([_overlap_with_mode(cfg, n, f) for n in range(1, cfg.N + 1)])
    if min_capture is not None:
        total, _ = integrate.quad(lambda x: abs(f(x)) ** 2, 0.0, cfg.L, limit=400)
        if total <= 0:
            raise ValueError("wavefunction has zero norm on [0, L]")
        captured = float(np.sum(np.abs(raw) ** 2)) / total
        if captured < min_capture:
            raise ProjectionError(
                f"first {cfg.N} modes capture {captured:.6f} < {min_capture} of the norm;"
                " increase N or widen the packet"
            )
    return StateVector(raw)


def gaussian_packet(
    cfg: WellConfig,
    center: float,
    width: float,
    mean_momentum: float = 0.0,
    min_capture: float = 0.999,
) -> StateVector:
    """Gaussian wave packet projected onto the energy eigenbasis.

    The envelope is exp(-(x - center)^2 / (4 width^2)), so `width` is the
    position spread of the packet before the walls matter, times a plane
    wave exp(i mean_momentum x / hbar).
    """
    if not (0.0 < center < cfg.L):
        raise ValueError(f"packet center must lie inside (0, {cfg.L})")
    if not (0.0 < width < cfg.L / 4.0):
        raise ValueError(f"packet width must lie in (0, L/4 = {cfg.L / 4.0})")

    k0 = mean_momentum / cfg.hbar

    def packet(x):
        return np.exp(-((x - center) ** 2) / (4.0 * width**2) + 1j * k0 * x)

    return project_wavefunction(cfg, packet, min_capture=min_capture)


def expectation(state: StateVector, op: OperatorMatrix) -> complex:
    """<state| op |state> = a^dagger O a; real up to roundoff for Hermitian op."""
    if state.dim != op.dim:
        raise ValueError(f"dimension mismatch: state {state.dim} vs operator {op.dim}")
    return complex(np.vdot(state.coeffs, op.entries @ state.coeffs))


def _std_from_moments(second: float, mean: float, what: str) -> float:
    var = second - mean * mean
    if var < -1e-12:
        raise InvariantViolation(f"negative variance {var:.3e} for {what}")
    return math.sqrt(max(var, 0.0))


def dispersion(state: StateVector, op: OperatorMatrix) -> float:
    """Delta O = sqrt(<O^2> - <O>^2) for a Hermitian operator."""
    if op.hermiticity_defect() > 1e-10:
        raise ValueError("dispersion is defined for Hermitian operators only")
    if state.dim != op.dim:
        raise ValueError(f"dimension mismatch: state {state.dim} vs operator {op.dim}")
    w = op.entries @ state.coeffs
    mean = float(np.real(np.vdot(state.coeffs, w)))
    second = float(np.real(np.vdot(w, w)))
    return _std_from_moments(second, mean, "dispersion")


def revival_time(cfg: WellConfig) -> float:
    """t_r = 4 m L^2 / (hbar pi); every phase (omega_k - omega_l) t_r is a multiple of 2 pi."""
    return 4.0 * cfg.m * cfg.L**2 / (cfg.hbar * math.pi)


def force_matrix(cfg: WellConfig, t: float = 0.0) -> OperatorMatrix:
    """Force matrix (dV/dx)(t) = -dp(t)/dt, elementwise -i(omega_k - omega_l) p_kl(t).

    The sign follows Hamilton's equation dp/dt = -dV/dx.  Real symmetric
    at t = 0 and Hermitian for all t.
    """
    p = build_momentum(cfg)
    domega = _phase_exponents(cfg) * cfg.base_frequency
    f0 = OperatorMatrix(-1j * domega * p.entries)
    return evolve(f0, cfg, t)


def xt_x0_commutator(cfg: WellConfig, t: float) -> OperatorMatrix:
    """[x(t), x(0)]; zero at t = 0 and again at every multiple of the revival time."""
    x = build_position(cfg)
    return commutator(evolve(x, cfg, t), x)


def _series_report(state: StateVector, cfg: WellConfig, grid: TimeGrid, meta: dict) -> RunReport:
    if state.dim != cfg.N:
        raise ValueError(f"state dimension {state.dim} does not match cfg.N={cfg.N}")
    x = build_position(cfg).entries
    p = build_momentum(cfg).entries
    d = _phase_exponents(cfg)
    om1 = cfg.base_frequency
    f0 = -1j * (d * om1) * p

    a = state.coeffs
    u0 = x @ a
    x0_mean = float(np.real(np.vdot(a, u0)))
    dx0 = _std_from_moments(float(np.real(np.vdot(u0, u0))), x0_mean, "dx(0)")

    times = grid.times()
    cols = np.empty((times.size, len(RunReport.COLUMNS)))
    f_means = np.empty(times.size)
    for i, t in enumerate(times):
        ph = np.exp(1j * (d * (om1 * t)))
        wx = (x * ph) @ a
        wp = (p * ph) @ a
        wf = (f0 * ph) @ a
        x_mean = float(np.real(np.vdot(a, wx)))
        p_mean = float(np.real(np.vdot(a, wp)))
        f_means[i] = float(np.real(np.vdot(a, wf)))
        dx = _std_from_moments(float(np.real(np.vdot(wx, wx))), x_mean, "dx(t)")
        dp = _std_from_moments(float(np.real(np.vdot(wp, wp))), p_mean, "dp(t)")
        robertson = abs(float(np.imag(np.vdot(wx, u0))))
        cols[i] = (
            t,
            x_mean,
            p_mean,
            dx,
            dp,
            dx0,
            robertson,
            cfg.hbar * abs(t) / (2.0 * cfg.m),
            0.0,
            0.0,
        )

    h = grid.spacing
    dxdt = np.gradient(cols[:, 1], h, edge_order=2)
    dpdt = np.gradient(cols[:, 2], h, edge_order=2)
    cols[:, 8] = np.abs(dxdt - cols[:, 2] / cfg.m)
    cols[:, 9] = np.abs(dpdt + f_means)

    meta = dict(meta)
    meta.update(
        {
            "dim": cfg.N,
            "grid_spacing": h,
            "revival_time": revival_time(cfg),
            "max_residual_x": float(cols[:, 8].max()),
            "max_residual_p": float(cols[:, 9].max()),
        }
    )
    return RunReport(cols, hbar=cfg.hbar, meta=meta)


def ehrenfest_report(state: StateVector, cfg: WellConfig, grid: TimeGrid) -> RunReport:
    """Track <x>, <p>, dispersions, and the Ehrenfest residuals on a time grid.

    residual_x = |d<x>/dt - <p>/m| and residual_p = |d<p>/dt + <dV/dx>|,
    with the time derivatives estimated by second-order finite differences
    on the grid itself, so both residuals scale as O(h^2).
    """
    return _series_report(state, cfg, grid, {"scenario": "ehrenfest"})


def spread_report(state: StateVector, cfg: WellConfig, grid: TimeGrid) -> RunReport:
    """Track Delta x(t) against Delta x(0), the Robertson bound, and hbar t / 2m.

    Row construction verifies Delta x(t) * Delta x(0) >= |<[x(t), x(0)]>|/2 - 1e-9
    at every sampled time.
    """
    return _series_report(state, cfg, grid, {"scenario": "spread"})


@dataclass(frozen=True)
class ShortTimeResiduals:
    """Interior-block Taylor residuals of x(dt).

    r1 drops the force term and is O(dt^2); r2 keeps it and is O(dt^3).
    """

    dt: float
    r1: float
    r2: float
    max_index: int


def short_time_expansion_check(
    cfg: WellConfig, dt: float, max_index: int | None = None
) -> ShortTimeResiduals:
    """Frobenius norms of x(dt) - x - (p/m) dt [+ (dV/dx) dt^2 / 2m] on an interior block."""
    if dt < 0:
        raise ValueError("dt must be nonnegative")
    b = cfg.N // 4 if max_index is None else int(max_index)
    if not (1 <= b <= cfg.N):
        raise ValueError(f"max_index must be in 1..{cfg.N}")
    x = build_position(cfg)
    p = build_momentum(cfg)
    f0 = force_matrix(cfg, 0.0)
    xt = evolve(x, cfg, dt)
    first = xt.entries - x.entries - (dt / cfg.m) * p.entries
    second = first + (dt * dt / (2.0 * cfg.m)) * f0.entries
    r1 = float(np.linalg.norm(first[:b, :b]))
    r2 = float(np.linalg.norm(second[:b, :b]))
    return ShortTimeResiduals(dt=dt, r1=r1, r2=r2, max_index=b)
