"""Continuous relaxation dynamics for QUBO instances.

Three solver families share one pair of integrators:

  first order (kinds I and II):
      dx_i/dt = -alpha x_i + beta sum_j J_ij phi(x_j)
  second order (kind III):
      d2x_i/dt2 = gamma dx_i/dt - alpha x_i + beta sum_j J_ij phi(x_j)

Kind I takes constant coefficients, kind II lets alpha and beta be
schedules (functions of the step index), kind III adds the velocity
term.  The bifurcation-machine mode (kind TBM) is kind III with the
sign nonlinearity, gamma = 0, a pump schedule p(t) raised linearly to
2, and coefficients alpha(t) = delta * (delta - p(t)), beta = delta *
xi0; it is executed through the identical class-III path so the
mapping is exact step for step.

Integration is plain forward Euler with step dt for both orders: a
second-order step advances the position by dt times the old velocity
and the velocity by dt times the acceleration evaluated at the old
state.  Second-order trajectories are confined to the derivative
window [-w, w]: a coordinate crossing it is clamped to the boundary
and its velocity zeroed, which acts as the threshold element of the
bifurcation machine.  A trajectory is steady once
max_i |delta x_i| < steady_tol * dt; steady_tol = 0 therefore never
converges and runs a fixed step count.  States beyond |x| = 1e6 abort
as divergence.

Whole blocks of trajectories integrate together as (runs, n) arrays;
rows freeze once converged or diverged, and a row's trajectory never
depends on the other rows of the block.  Final energies are evaluated
in one vectorised pass over the block, whose floating-point rounding
can differ in the last ulp from a single-row evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Union

import numpy as np

from .errors import DivergenceError, ValidationError
from .instance import Instance

__all__ = [
    "Schedule",
    "LinearRamp",
    "PumpRamp",
    "TbmParams",
    "SolverConfig",
    "RunOutcome",
    "random_initial",
    "run",
    "run_batch",
    "run_class1",
    "run_class2",
    "run_class3",
    "run_tbm",
    "trajectory",
]

DIVERGENCE_LIMIT = 1e6

Schedule = Union[float, Callable[[int], float]]


def _value(coeff: Schedule, step: int) -> float:
    return coeff(step) if callable(coeff) else coeff


@dataclass(frozen=True)
class LinearRamp:
    """Linear schedule from start to stop over num_steps, then held."""

    start: float
    stop: float
    num_steps: int

    def __call__(self, step: int) -> float:
        if self.num_steps <= 0:
            return self.stop
        t = min(step / self.num_steps, 1.0)
        return self.start + (self.stop - self.start) * t


@dataclass(frozen=True)
class PumpRamp:
    """Bifurcation pump p(t) = min(rate * step / num_steps, cap)."""

    num_steps: int = 1000
    rate: float = 2.0
    cap: float = 2.0

    def __call__(self, step: int) -> float:
        return min(self.rate * step / self.num_steps, self.cap)


@dataclass(frozen=True)
class _DetuneSchedule:
    """alpha(t) = delta * (delta - p(t)) for the bifurcation machine."""

    delta: float
    pump: Callable[[int], float]

    def __call__(self, step: int) -> float:
        return self.delta * (self.delta - self.pump(step))


@dataclass(frozen=True)
class TbmParams:
    """Bifurcation-machine knobs: detuning delta, coupling scale xi0.

    p_schedule defaults to PumpRamp(max_steps) when left None.
    """

    delta: float = 1.0
    xi0: float = 0.1
    p_schedule: Callable[[int], float] | None = None


@dataclass(frozen=True)
class SolverConfig:
    """Solver selection and integration parameters.

    kind: "I", "II", "III", or "TBM".  alpha, beta, gamma accept
    constants or per-step schedules.  derivative_window bounds
    second-order trajectories (use float("inf") to disable).
    init_amplitude is the half-width of the uniform initial condition
    drawn by random_initial.
    """

    kind: str = "I"
    alpha: Schedule = 1.0
    beta: Schedule = 1.0
    gamma: Schedule = 0.0
    nonlinearity: str = "tanh"
    derivative_window: float = 1.0
    dt: float = 0.1
    max_steps: int = 1000
    steady_tol: float = 1e-9
    init_amplitude: float = 0.5
    seed: int = 0
    tbm: TbmParams | None = None


@dataclass(frozen=True, eq=False)
class RunOutcome:
    """Result of one trajectory.

    final_spins is sign(x) with sign(0) := +1.  label is attached when
    the instance carries a pattern source, and is None for diverged
    runs.
    """

    final_spins: np.ndarray
    final_energy: float
    steps_used: int
    converged: bool
    diverged: bool
    label: "object | None"
    seed: int


def _clip_unit(x: np.ndarray) -> np.ndarray:
    return np.clip(x, -1.0, 1.0)


_NONLINEARITIES: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "tanh": np.tanh,
    "sign": np.sign,
    "identity-clip": _clip_unit,
}


def random_initial(n: int, amplitude: float = 0.5, seed: int = 0) -> np.ndarray:
    """Uniform initial state on [-amplitude, amplitude]^n."""
    if amplitude <= 0:
        raise ValidationError("amplitude must be positive")
    return np.random.default_rng(seed).uniform(-amplitude, amplitude, size=n)


def _phi(name: str) -> Callable[[np.ndarray], np.ndarray]:
    try:
        return _NONLINEARITIES[name]
    except KeyError:
        raise ValidationError(
            f"unknown nonlinearity {name!r}; choose from {sorted(_NONLINEARITIES)}"
        ) from None


RUNNING, CONVERGED, DIVERGED = 0, 1, 2


def _first_order(
    j: np.ndarray,
    x0: np.ndarray,
    alpha: Schedule,
    beta: Schedule,
    phi: Callable,
    dt: float,
    max_steps: int,
    steady_tol: float,
    record: list | None = None,
):
    x = np.array(x0, dtype=np.float64)
    r = x.shape[0]
    steps = np.full(r, max_steps, dtype=np.int64)
    status = np.full(r, RUNNING, dtype=np.int8)
    threshold = steady_tol * dt
    if record is not None:
        record.append(x.copy())
    for step in range(max_steps):
        running = status == RUNNING
        if not running.any():
            break
        a = _value(alpha, step)
        b = _value(beta, step)
        dx = dt * (b * (phi(x) @ j) - a * x)
        x = np.where(running[:, None], x + dx, x)
        if record is not None:
            record.append(x.copy())
        move = np.abs(dx).max(axis=1)
        amp = np.abs(x).max(axis=1)
        diverged = running & (amp > DIVERGENCE_LIMIT)
        converged = running & ~diverged & (move < threshold)
        status[diverged] = DIVERGED
        status[converged] = CONVERGED
        steps[diverged | converged] = step + 1
    return x, steps, status


def _second_order(
    j: np.ndarray,
    x0: np.ndarray,
    v0: np.ndarray,
    alpha: Schedule,
    beta: Schedule,
    gamma: Schedule,
    phi: Callable,
    dt: float,
    max_steps: int,
    steady_tol: float,
    window: float,
    record: list | None = None,
):
    if not window > 0:
        raise ValidationError("derivative window must be positive")
    x = np.array(x0, dtype=np.float64)
    v = np.array(v0, dtype=np.float64)
    r = x.shape[0]
    steps = np.full(r, max_steps, dtype=np.int64)
    status = np.full(r, RUNNING, dtype=np.int8)
    threshold = steady_tol * dt
    if record is not None:
        record.append(x.copy())
    for step in range(max_steps):
        running = status == RUNNING
        if not running.any():
            break
        a = _value(alpha, step)
        b = _value(beta, step)
        g = _value(gamma, step)
        acc = g * v - a * x + b * (phi(x) @ j)
        x_new = x + dt * v
        v_new = v + dt * acc
        over = np.abs(x_new) > window
        if over.any():
            x_new = np.clip(x_new, -window, window)
            v_new = np.where(over, 0.0, v_new)
        # Steady only when both the realized move and the imminent move
        # dt*|v| are below threshold; with v0 = 0 the first realized
        # move is identically zero and alone would trip the detector.
        dx = np.maximum(np.abs(x_new - x), dt * np.abs(v_new))
        x = np.where(running[:, None], x_new, x)
        v = np.where(running[:, None], v_new, v)
        if record is not None:
            record.append(x.copy())
        move = dx.max(axis=1)
        amp = np.abs(x).max(axis=1)
        diverged = running & (amp > DIVERGENCE_LIMIT)
        converged = running & ~diverged & (move < threshold)
        status[diverged] = DIVERGED
        status[converged] = CONVERGED
        steps[diverged | converged] = step + 1
    return x, steps, status


def _tbm_mapped(cfg: SolverConfig) -> SolverConfig:
    """Rewrite a TBM config as the equivalent class-III config."""
    if cfg.tbm is None:
        raise ValidationError("TBM runs need cfg.tbm parameters")
    params = cfg.tbm
    pump = params.p_schedule if params.p_schedule is not None else PumpRamp(cfg.max_steps)
    # The pump keeps the coefficients time dependent for the whole
    # schedule, so the machine integrates a fixed step count instead of
    # stopping at an intermediate wall-pinned state.
    return replace(
        cfg,
        kind="III",
        alpha=_DetuneSchedule(params.delta, pump),
        beta=params.delta * params.xi0,
        gamma=0.0,
        nonlinearity="sign",
        steady_tol=0.0,
    )


def _integrate_block(
    inst: Instance,
    cfg: SolverConfig,
    x0: np.ndarray,
    v0: np.ndarray | None,
    record: list | None = None,
):
    if cfg.kind == "TBM":
        cfg = _tbm_mapped(cfg)
    phi = _phi(cfg.nonlinearity)
    if cfg.kind in ("I", "II"):
        return _first_order(
            inst.coupling, x0, cfg.alpha, cfg.beta, phi,
            cfg.dt, cfg.max_steps, cfg.steady_tol, record,
        )
    if cfg.kind == "III":
        if v0 is None:
            v0 = np.zeros_like(np.asarray(x0, dtype=np.float64))
        return _second_order(
            inst.coupling, x0, v0, cfg.alpha, cfg.beta, cfg.gamma, phi,
            cfg.dt, cfg.max_steps, cfg.steady_tol, cfg.derivative_window, record,
        )
    raise ValidationError(f"unknown solver kind {cfg.kind!r}")


def _spins(x: np.ndarray) -> np.ndarray:
    return np.where(x >= 0, 1, -1).astype(np.int8)


def run_batch(
    inst: Instance,
    cfg: SolverConfig,
    x0_block: np.ndarray,
    v0_block: np.ndarray | None = None,
    seeds: np.ndarray | None = None,
    classifier: "object | None" = None,
) -> list[RunOutcome]:
    """Integrate a (runs, n) block of initial states in one sweep.

    Diverged rows come back flagged instead of raising, so harnesses
    can count them as a failure category.  classifier, when given,
    overrides the instance-derived outcome classifier.
    """
    from . import energy as energy_mod

    x0_block = np.asarray(x0_block, dtype=np.float64)
    if x0_block.ndim != 2 or x0_block.shape[1] != inst.n:
        raise ValidationError(f"initial block must be (runs, {inst.n})")
    r = x0_block.shape[0]
    if seeds is None:
        seeds = np.full(r, cfg.seed, dtype=np.int64)
    x, steps, status = _integrate_block(inst, cfg, x0_block, v0_block)
    spins = _spins(x)
    energies = energy_mod.qubo_energy_many(inst.coupling, spins)
    ps = inst.pattern_set
    if classifier is None and ps is not None and inst.spectrum is not None:
        classifier = energy_mod.OutcomeClassifier(ps, inst.spectrum)
    outcomes = []
    for i in range(r):
        diverged = status[i] == DIVERGED
        label = None
        if classifier is not None and not diverged:
            label = classifier.classify(spins[i], float(energies[i]))
        outcomes.append(
            RunOutcome(
                final_spins=spins[i],
                final_energy=float(energies[i]),
                steps_used=int(steps[i]),
                converged=bool(status[i] == CONVERGED),
                diverged=bool(diverged),
                label=label,
                seed=int(seeds[i]),
            )
        )
    return outcomes


def run(
    inst: Instance,
    cfg: SolverConfig,
    x0: np.ndarray,
    v0: np.ndarray | None = None,
) -> RunOutcome:
    """Integrate a single trajectory; raises DivergenceError on blow-up."""
    x0 = np.asarray(x0, dtype=np.float64)
    if x0.shape != (inst.n,):
        raise ValidationError(f"initial state must have shape ({inst.n},)")
    v0_block = None if v0 is None else np.asarray(v0, dtype=np.float64)[None, :]
    outcome = run_batch(inst, cfg, x0[None, :], v0_block)[0]
    if outcome.diverged:
        raise DivergenceError(step=outcome.steps_used, max_abs=DIVERGENCE_LIMIT)
    return outcome


def run_class1(inst: Instance, cfg: SolverConfig, x0: np.ndarray) -> RunOutcome:
    """First-order relaxation with constant coefficients."""
    return run(inst, replace(cfg, kind="I"), x0)


def run_class2(inst: Instance, cfg: SolverConfig, x0: np.ndarray) -> RunOutcome:
    """First-order relaxation with scheduled alpha(t), beta(t).

    Constant schedules reproduce run_class1 exactly: both kinds share
    one integrator.
    """
    return run(inst, replace(cfg, kind="II"), x0)


def run_class3(
    inst: Instance, cfg: SolverConfig, x0: np.ndarray, v0: np.ndarray | None = None
) -> RunOutcome:
    """Second-order relaxation; v0 defaults to zero."""
    return run(inst, replace(cfg, kind="III"), x0, v0)


def run_tbm(
    inst: Instance, cfg: SolverConfig, x0: np.ndarray, v0: np.ndarray | None = None
) -> RunOutcome:
    """Bifurcation-machine run: class III under the TBM parameter map.

    Uses cfg.tbm = (delta, xi0, p_schedule); the sign nonlinearity is
    forced and gamma is zero.  Identical arithmetic to run_class3 with
    alpha(t) = delta*(delta - p(t)) and beta = delta*xi0.
    """
    return run(inst, replace(cfg, kind="TBM"), x0, v0)


def trajectory(
    inst: Instance,
    cfg: SolverConfig,
    x0: np.ndarray,
    v0: np.ndarray | None = None,
) -> np.ndarray:
    """Full state history of one run, shape (steps_taken + 1, n).

    Row 0 is the initial state; integration stops at convergence,
    divergence, or max_steps exactly as in run().
    """
    x0 = np.asarray(x0, dtype=np.float64)
    if x0.shape != (inst.n,):
        raise ValidationError(f"initial state must have shape ({inst.n},)")
    v0_block = None if v0 is None else np.asarray(v0, dtype=np.float64)[None, :]
    record: list[np.ndarray] = []
    _integrate_block(inst, cfg, x0[None, :], v0_block, record=record)
    return np.vstack([row[0][None, :] for row in record])
