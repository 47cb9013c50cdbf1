"""Parameter sweeps over time, reservoir memory, initial amplitude and purity,
plus the oracle verification suite."""

from __future__ import annotations

import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy import integrate

from . import discord, dynamics, qstate
from .dynamics import EVOLUTION_RULES, ReservoirParams, evolve_three, p_t
from .states import DEFAULT_ALPHA_SQ, make_state

CASE1_RATIOS = (2.5, 0.1, 0.05, 0.01)
NON_MARKOVIAN_RATIO = 0.01
DEFAULT_T_MAX = 100.0
DEFAULT_STEPS = 2001
REVIVAL_THRESHOLD = 1e-6


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    state_family: str = "ghz"
    lambda_ratios: tuple[float, ...] = CASE1_RATIOS
    t_max: float = DEFAULT_T_MAX
    n_t: int = DEFAULT_STEPS
    alpha_sq: float | None = None
    r: float = 1.0
    alpha_sq_grid: tuple[float, ...] | None = None
    r_grid: tuple[float, ...] | None = None
    delta: float = 0.0
    epsilon: float = 0.0
    out: str | None = None
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.state_family not in ("ghz", "w"):
            raise ConfigError(f"state family must be 'ghz' or 'w', got {self.state_family!r}")
        if not self.lambda_ratios or any(not (x > 0 and math.isfinite(x)) for x in self.lambda_ratios):
            raise ConfigError("lambda ratios must be positive and finite")
        if not (self.t_max > 0 and math.isfinite(self.t_max)):
            raise ConfigError("t_max must be positive")
        if self.n_t < 2:
            raise ConfigError("need at least 2 time steps")
        if self.alpha_sq is not None and not 0.0 <= self.alpha_sq <= 1.0:
            raise ConfigError("alpha_sq must lie in [0, 1]")
        if not 0.0 <= self.r <= 1.0:
            raise ConfigError("r must lie in [0, 1]")
        for name in ("alpha_sq_grid", "r_grid"):
            grid = getattr(self, name)
            if grid is not None and (not grid or any(not 0.0 <= g <= 1.0 for g in grid)):
                raise ConfigError(f"{name} values must lie in [0, 1]")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n_t)

    @property
    def family_alpha_sq(self) -> float:
        return DEFAULT_ALPHA_SQ[self.state_family] if self.alpha_sq is None else self.alpha_sq


def unit_grid(n: int = 101) -> tuple[float, ...]:
    return tuple(float(x) for x in np.linspace(0.0, 1.0, n))


# -- sweep engine ------------------------------------------------------------

@dataclass(frozen=True)
class _Task:
    family: str
    alpha_sq: float
    r: float
    delta: float
    epsilon: float
    ratio: float
    times: tuple[float, ...]


def _run_task(task: _Task) -> list[tuple[float, float, float, float]]:
    rho0 = make_state(task.family, task.alpha_sq, task.r, task.delta, task.epsilon)
    params = ReservoirParams.from_ratio(task.ratio)
    out = []
    for t in task.times:
        rep = discord.tqc(evolve_three(rho0, p_t(t, params)))
        out.append((rep.d1, rep.d2, rep.d3, rep.q))
    return out


def _map(tasks: Sequence[_Task], jobs: int) -> list[list[tuple[float, float, float, float]]]:
    # executor.map yields in submission order, so rows stay in grid order
    if jobs == 1 or len(tasks) == 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_task, tasks))


def q_series(family: str, ratio: float, times: Iterable[float], alpha_sq: float | None = None,
             r: float = 1.0, delta: float = 0.0, epsilon: float = 0.0) -> np.ndarray:
    """(n, 4) array of D1, D2, D3, Q along ``times``."""
    a = DEFAULT_ALPHA_SQ[family] if alpha_sq is None else alpha_sq
    task = _Task(family, a, r, delta, epsilon, ratio, tuple(float(t) for t in times))
    return np.array(_run_task(task)).reshape(-1, 4)


@dataclass
class Table:
    header: tuple[str, ...]
    rows: list[tuple[float, ...]] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        i = self.header.index(name)
        return np.array([row[i] for row in self.rows])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.header) + "\n")
        for row in self.rows:
            buf.write(",".join(f"{x:.17g}" for x in row) + "\n")
        return buf.getvalue()


def run_case1(cfg: SweepConfig) -> Table:
    """D1, D2, D3 and Q against time for each reservoir ratio."""
    times = tuple(float(t) for t in cfg.times)
    a = cfg.family_alpha_sq
    tasks = [_Task(cfg.state_family, a, cfg.r, cfg.delta, cfg.epsilon, ratio, times) for ratio in cfg.lambda_ratios]
    table = Table(("lambda_ratio", "gamma0_t", "D1", "D2", "D3", "Q"))
    for ratio, series in zip(cfg.lambda_ratios, _map(tasks, cfg.jobs)):
        for t, (d1, d2, d3, q) in zip(times, series):
            table.rows.append((ratio, t, d1, d2, d3, q))
    return table


def _single_ratio(cfg: SweepConfig) -> float:
    if len(cfg.lambda_ratios) != 1:
        raise ConfigError("this sweep takes exactly one lambda ratio")
    return cfg.lambda_ratios[0]


def run_case2(cfg: SweepConfig) -> Table:
    """Q against time for a grid of initial squared amplitudes (r from cfg)."""
    ratio = _single_ratio(cfg)
    times = tuple(float(t) for t in cfg.times)
    grid = cfg.alpha_sq_grid if cfg.alpha_sq_grid is not None else unit_grid()
    tasks = [_Task(cfg.state_family, a, cfg.r, cfg.delta, cfg.epsilon, ratio, times) for a in grid]
    table = Table(("alpha_sq", "gamma0_t", "Q"))
    for a, series in zip(grid, _map(tasks, cfg.jobs)):
        for t, row in zip(times, series):
            table.rows.append((a, t, row[3]))
    return table


def run_case3(cfg: SweepConfig) -> Table:
    """Q against time for a grid of purities."""
    ratio = _single_ratio(cfg)
    times = tuple(float(t) for t in cfg.times)
    grid = cfg.r_grid if cfg.r_grid is not None else unit_grid()
    a = cfg.family_alpha_sq
    tasks = [_Task(cfg.state_family, a, r, cfg.delta, cfg.epsilon, ratio, times) for r in grid]
    table = Table(("r", "gamma0_t", "Q"))
    for r, series in zip(grid, _map(tasks, cfg.jobs)):
        for t, row in zip(times, series):
            table.rows.append((r, t, row[3]))
    return table


def case_config(case: int, **overrides) -> SweepConfig:
    """Default configuration for one of the three sweeps."""
    if case not in (1, 2, 3):
        raise ConfigError(f"unknown case {case}")
    base = {} if case == 1 else {"lambda_ratios": (NON_MARKOVIAN_RATIO,)}
    base.update(overrides)
    return SweepConfig(**base)


def run_pt(ratios: Sequence[float], t_max: float, n_t: int) -> Table:
    table = Table(("lambda_ratio", "gamma0_t", "P_t"))
    times = np.linspace(0.0, t_max, n_t)
    for ratio in ratios:
        vals = p_t(times, ReservoirParams.from_ratio(ratio))
        table.rows.extend((ratio, float(t), float(v)) for t, v in zip(times, vals))
    return table


# -- revival diagnostics -----------------------------------------------------

def revival_lobes(times, q, first_zero: float, threshold: float = REVIVAL_THRESHOLD) -> int:
    """Number of contiguous runs with ``q > threshold`` at or after ``first_zero``."""
    times, q = np.asarray(times), np.asarray(q)
    above = q[times >= first_zero] > threshold
    if above.size == 0:
        return 0
    return int(above[0]) + int(np.sum(above[1:] & ~above[:-1]))


def has_revival_after_minimum(q, threshold: float = REVIVAL_THRESHOLD) -> bool:
    """True if some value exceeds an earlier running minimum by more than ``threshold``."""
    q = np.asarray(q)
    running_min = np.minimum.accumulate(q)
    return bool(np.any(q - running_min > threshold))


# -- discord of a state file -------------------------------------------------

def run_discord_file(path) -> dict:
    rho = qstate.validate_density(qstate.read_density(path))
    rep = discord.tqc(rho)
    out = rep.as_dict()
    out["pairwise"] = {
        f"{a}{b}": discord.gqd_two_qubit(qstate.reduce_two_qubit(rho, (a, b))) for a, b in qstate.PAIRS
    }
    return out


# -- verification suite ------------------------------------------------------

@dataclass(frozen=True)
class VerifyCounts:
    kraus: int = 500
    brute_force: int = 20
    tqc_oracle: int = 5
    round_trip: int = 1000
    classicality: int = 100


def _suite(max_error: float, tol: float, n: int) -> dict:
    return {"passed": bool(max_error < tol), "max_error": float(max_error), "tolerance": tol, "samples": n}


def kernel_quadrature_error(params: ReservoirParams, taus: Sequence[float]) -> float:
    """Largest gap between the closed-form kernel and a quadrature of the spectral density."""
    worst = 0.0
    for tau in taus:
        # J is even in the detuning, so the Fourier integral is twice a cosine transform
        if tau == 0:
            val, _ = integrate.quad(params.spectral_density, 0, np.inf)
        else:
            val, _ = integrate.quad(params.spectral_density, 0, np.inf, weight="cos", wvar=tau)
        worst = max(worst, abs(2.0 * val - float(params.kernel(tau))))
    return worst


def run_verify(seed: int = 0, counts: VerifyCounts = VerifyCounts(), rules=EVOLUTION_RULES) -> dict:
    """Run every oracle suite and return a JSON-serialisable report."""
    rng = np.random.default_rng(seed)
    suites: dict[str, dict] = {}

    worst = 0.0
    for _ in range(counts.kraus):
        rho = qstate.random_density(rng)
        p = float(rng.uniform())
        got = evolve_three(rho, p, rules=rules, check=False)
        worst = max(worst, float(np.max(np.abs(got - dynamics.kraus_oracle(rho, p)))))
    suites["kraus_vs_elementwise"] = _suite(worst, 1e-12, counts.kraus)

    ratios = CASE1_RATIOS
    worst = max(kernel_quadrature_error(ReservoirParams.from_ratio(x), (0.0, 0.5, 2.0, 7.0)) for x in ratios)
    suites["kernel_quadrature"] = _suite(worst, 1e-8, len(ratios))

    worst = 0.0
    for x in ratios:
        params = ReservoirParams.from_ratio(x)
        t, num = dynamics.p_t_numeric(params, 10.0, 1e-4)
        worst = max(worst, float(np.max(np.abs(num - p_t(t, params)))))
    suites["volterra_vs_closed_form"] = _suite(worst, 1e-6, len(ratios))

    params = ReservoirParams.from_ratio(NON_MARKOVIAN_RATIO)
    worst = max(p_t(t, params) for t in dynamics.p_t_zeros(params, 3))
    suites["p_t_zeros"] = _suite(worst, 1e-12, 3)

    worst = 0.0
    for _ in range(counts.round_trip):
        rho = qstate.random_density(rng)
        c = qstate.coeff_tensor(rho)
        worst = max(
            worst,
            float(np.max(np.abs(qstate.rho_from_coeff(c) - rho))),
            abs(float(np.trace(rho @ rho).real) - float(np.sum(c**2))),
        )
    suites["round_trip"] = _suite(worst, 1e-12, counts.round_trip)

    worst = 0.0
    for _ in range(counts.brute_force):
        rho = qstate.random_density(rng)
        for k in (1, 2, 3):
            worst = max(worst, abs(discord.gqd_k(rho, k)[0] - discord.gqd_brute_force(rho, k)))
    suites["closed_form_vs_brute_force"] = _suite(worst, 1e-5, counts.brute_force)

    worst = 0.0
    for _ in range(counts.tqc_oracle):
        rho = qstate.random_density(rng)
        rep = discord.tqc(rho)
        bf = discord.tqc_brute_force(rho, rep.axes)
        worst = max(worst, *(abs(a - b) for a, b in zip((rep.d1, rep.d2, rep.d3), bf)))
    suites["successive_measurement"] = _suite(worst, 1e-6, counts.tqc_oracle)

    worst = 0.0
    for _ in range(counts.classicality):
        c = qstate.coeff_tensor(qstate.random_density(rng))
        for k in (1, 2, 3):
            _, axis = discord.gqd_k(c, k)
            worst = max(worst, discord.gqd_k(discord.project_measure(c, axis, k), k)[0])
    suites["post_measurement_classicality"] = _suite(worst, 1e-8, counts.classicality)

    return {"seed": seed, "passed": all(s["passed"] for s in suites.values()), "suites": suites}


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


__all__ = [
    "CASE1_RATIOS",
    "ConfigError",
    "SweepConfig",
    "Table",
    "VerifyCounts",
    "case_config",
    "has_revival_after_minimum",
    "kernel_quadrature_error",
    "q_series",
    "report_json",
    "revival_lobes",
    "run_case1",
    "run_case2",
    "run_case3",
    "run_discord_file",
    "run_pt",
    "run_verify",
    "unit_grid",
]
