"""Experiment sweeps: SR grids, transition scans, and K sweeps.

A sweep evaluates a solver over a small cartesian parameter grid.  Each
grid point runs runs_per_point independent trajectories whose initial
states come from per-run seeds derived as

    seed = blake2b("{base_seed}:{point_index}:{run_index}") mod 2^63,

so results are reproducible bit for bit, independent of worker count,
and grid points never share seeds.  A run counts as a hit when its
final spins match the ground state or its mirror exactly; the ground
state comes from the brute-force oracle for n <= 24 and from the
largest-weight planted pattern above that.

Per point the sweep also tallies outcome-label categories (planted,
mirror, mixed, spurious, below, above, plus diverged and unlabelled)
and the nested fraction-band counts of the planted energy range.  CSV
emission uses one row per grid point with a fixed column schema:

    <axis names...>, sr, n_runs, hits, diverged,
    label:<category>..., band:<fraction>..., band:below, band:above

Floats are written with repr so files round-trip exactly.  A text
sidecar (<out>.meta.txt) records the spec hash, seeds, and versions;
no timestamps are written anywhere, which keeps replays byte-identical.

K sweeps regenerate an orthogonal instance per K (dw = 0.001), set the
projection strength to half the dominant eigenvalue, and aggregate an
energy histogram (uniform bins between the found extremes, log density
shifted by delta = 3e-5, Gaussian smoothing of one bin width for
plotting only) together with the label and band tallies.
"""

from __future__ import annotations

import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Sequence, Union

import numpy as np

from . import energy as energy_mod
from . import oracle as oracle_mod
from .dynamics import RunOutcome, SolverConfig, TbmParams, random_initial, run_batch
from .errors import ValidationError
from .instance import (
    Instance,
    build_couplings,
    catalogue_pattern_set,
    generate_orthogonal_patterns,
    perturb_patterns,
    shared_sign_coordinate,
)

__all__ = [
    "LOG_SHIFT",
    "LABEL_CATEGORIES",
    "SweepSpec",
    "PointResult",
    "SweepResult",
    "HistogramReport",
    "KSweepEntry",
    "CataloguePerturbationFactory",
    "CatalogueWeightStepFactory",
    "EquidistantPerturbationFactory",
    "derive_seed",
    "default_alpha_grid",
    "sweep_sr",
    "scan_transition",
    "sweep_k",
    "histogram",
    "count_modes",
    "cluster_split",
    "cluster_report",
    "write_sweep_csv",
    "write_ksweep_csv",
    "write_hist_csv",
    "write_sidecar",
]

LOG_SHIFT = 3e-5
HIST_BINS = 60

LABEL_CATEGORIES = (
    "planted",
    "mirror",
    "mixed",
    "spurious",
    "below",
    "above",
    "diverged",
    "unlabelled",
)

InstanceSource = Union[Instance, Callable[[float], Instance]]


def derive_seed(base_seed: int, *parts) -> int:
    """Stable 63-bit seed from a base seed and identifying parts."""
    key = ":".join([str(int(base_seed))] + [str(p) for p in parts]).encode()
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return int.from_bytes(digest, "big") & (2**63 - 1)


def default_alpha_grid(lam_max: float, num: int = 50) -> tuple[float, ...]:
    """Log-spaced projection strengths spanning [lam/20, 4*lam]."""
    if lam_max <= 0:
        raise ValidationError("alpha grid needs a positive eigenvalue scale")
    return tuple(float(v) for v in np.geomspace(lam_max / 20, 4 * lam_max, num))


# ---------------------------------------------------------------------------
# sweep specification


@dataclass(frozen=True)
class SweepSpec:
    """One experiment grid.

    instance is either a fixed Instance or a picklable factory mapping
    the first axis value to an Instance (lambdas will break process
    pools).  axes holds one or two (name, values) pairs; grid points
    enumerate the cartesian product in row-major order.  Solver axis
    names: alpha, beta, gamma, dt, window, delta, xi0 (the last two
    address the bifurcation-machine parameters).  ground_truth is
    "oracle", "largest-weight", or "auto" (oracle up to the brute-force
    cap, largest-weight beyond).
    """

    instance: InstanceSource
    solver: SolverConfig
    axes: tuple[tuple[str, tuple[float, ...]], ...]
    runs_per_point: int = 200
    base_seed: int = 0
    ground_truth: str = "auto"
    keep_energies: bool = False
    fractions: tuple[float, ...] = energy_mod.DEFAULT_FRACTIONS

    def __post_init__(self):
        if not self.axes or len(self.axes) > 2:
            raise ValidationError("axes must hold one or two (name, values) pairs")
        if self.runs_per_point < 1:
            raise ValidationError("runs_per_point must be >= 1")
        if self.ground_truth not in ("oracle", "largest-weight", "auto"):
            raise ValidationError("ground_truth must be oracle, largest-weight, or auto")
        normalized = tuple(
            (str(name), tuple(float(v) for v in values)) for name, values in self.axes
        )
        object.__setattr__(self, "axes", normalized)
        for name, values in normalized:
            if not values:
                raise ValidationError(f"axis {name!r} is empty")

    @property
    def axis_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.axes)

    @property
    def grid_shape(self) -> tuple[int, ...]:
        return tuple(len(values) for _, values in self.axes)

    @property
    def n_points(self) -> int:
        out = 1
        for s in self.grid_shape:
            out *= s
        return out

    def point_coords(self, index: int) -> tuple[tuple[str, float], ...]:
        shape = self.grid_shape
        if len(shape) == 1:
            return ((self.axes[0][0], self.axes[0][1][index]),)
        i, j = divmod(index, shape[1])
        return (
            (self.axes[0][0], self.axes[0][1][i]),
            (self.axes[1][0], self.axes[1][1][j]),
        )

    def spec_hash(self) -> str:
        h = hashlib.blake2b(digest_size=8)
        if isinstance(self.instance, Instance):
            h.update(b"instance:")
            h.update(self.instance.label.encode())
            h.update(np.ascontiguousarray(self.instance.coupling).tobytes())
        else:
            h.update(b"factory:")
            h.update(repr(self.instance).encode())
        h.update(repr(self.solver).encode())
        h.update(repr(self.axes).encode())
        h.update(
            repr((self.runs_per_point, self.base_seed, self.ground_truth, self.fractions)).encode()
        )
        return h.hexdigest()


@dataclass(frozen=True)
class PointResult:
    """Aggregate of one grid point."""

    index: int
    coords: tuple[tuple[str, float], ...]
    n_runs: int
    hits: int
    sr: float
    label_counts: tuple[tuple[str, int], ...]
    measure_counts: tuple[tuple[str, int], ...]
    diverged: int
    energies: tuple[float, ...] | None = None


@dataclass(frozen=True)
class SweepResult:
    """Ordered grid-point aggregates plus reproducibility metadata.

    wall_time is informational only and never serialized, so emitted
    files stay byte-identical across replays and worker counts.
    """

    spec_hash: str
    axes: tuple[tuple[str, tuple[float, ...]], ...]
    points: tuple[PointResult, ...]
    runs_per_point: int
    base_seed: int
    ground_truth: str
    instance_label: str
    solver_repr: str
    wall_time: float

    @property
    def sr_grid(self) -> np.ndarray:
        shape = tuple(len(values) for _, values in self.axes)
        return np.array([p.sr for p in self.points]).reshape(shape)

    def max_sr(self) -> float:
        return max(p.sr for p in self.points)


# ---------------------------------------------------------------------------
# instance factories for transition scans


def _scaled_edit(ps, pattern_index: int, coordinate: int, scale: float, value: float):
    """Edit (pattern, coordinate) by value relative to the stored sign.

    value is expressed for a +1 coordinate (so -2 always means a full
    flip); the stored sign folds in via multiplication.
    """
    base = float(ps.patterns[pattern_index, coordinate])
    return (pattern_index, coordinate, scale * value * base)


@dataclass(frozen=True)
class CataloguePerturbationFactory:
    """Continuous flip of one coordinate of the lightest pattern.

    The scan value is the perturbation of a coordinate whose sign all
    planted patterns share, expressed for a +1 coordinate: 0 leaves the
    catalogue instance untouched and -2 flips the coordinate entirely.
    """

    catalogue_id: str = "c"
    pattern: int = 1
    coordinate: int | None = None

    def __call__(self, value: float) -> Instance:
        ps = catalogue_pattern_set(self.catalogue_id)
        coord = self.coordinate
        if coord is None:
            coord = shared_sign_coordinate(ps)
        edit = _scaled_edit(ps, self.pattern - 1, coord, 1.0, float(value))
        perturbed = perturb_patterns(ps, [edit])
        return build_couplings(
            perturbed, label=f"small-{self.catalogue_id}-dxi={float(value)!r}"
        )


@dataclass(frozen=True)
class CatalogueWeightStepFactory:
    """Rebuilds a catalogue instance with a different weight step dw."""

    catalogue_id: str = "c"

    def __call__(self, value: float) -> Instance:
        ps = catalogue_pattern_set(self.catalogue_id, dw=float(value))
        return build_couplings(
            ps, label=f"small-{self.catalogue_id}-dw={float(value)!r}"
        )


@dataclass(frozen=True)
class EquidistantPerturbationFactory:
    """One-parameter deformation of the equidistant four-pattern set.

    At the first coordinate where patterns 1 and 2 agree and pattern 3
    opposes them, patterns 1 and 2 move away from the hypercube corner
    by 0.2p and pattern 3 moves toward zero by 0.1p.
    """

    catalogue_id: str = "f"

    def __call__(self, p: float) -> Instance:
        ps = catalogue_pattern_set(self.catalogue_id)
        pats = ps.patterns
        coord = None
        for j in range(ps.n):
            if pats[0, j] == pats[1, j] != pats[2, j]:
                coord = j
                break
        if coord is None:
            raise ValidationError("no coordinate with patterns 1,2 vs 3 sign split")
        p = float(p)
        edits = [
            _scaled_edit(ps, 0, coord, 0.2, p),
            _scaled_edit(ps, 1, coord, 0.2, p),
            _scaled_edit(ps, 2, coord, -0.1, p),
        ]
        perturbed = perturb_patterns(ps, edits)
        return build_couplings(perturbed, label=f"small-{self.catalogue_id}-p={p!r}")


# ---------------------------------------------------------------------------
# point evaluation


def _apply_solver_param(cfg: SolverConfig, name: str, value: float) -> SolverConfig:
    if name in ("alpha", "beta", "gamma", "dt"):
        return replace(cfg, **{name: float(value)})
    if name == "window":
        return replace(cfg, derivative_window=float(value))
    if name in ("delta", "xi0"):
        tbm = cfg.tbm if cfg.tbm is not None else TbmParams()
        return replace(cfg, tbm=replace(tbm, **{name: float(value)}))
    raise ValidationError(
        f"unknown solver axis {name!r}; use alpha, beta, gamma, dt, window, delta, xi0"
    )


def _ground_state(inst: Instance, mode: str) -> np.ndarray:
    if mode == "auto":
        mode = "oracle" if inst.n <= oracle_mod.BRUTE_FORCE_LIMIT else "largest-weight"
    if mode == "oracle":
        return oracle_mod.brute_force(inst).ground_state
    ps = inst.pattern_set
    if ps is None:
        raise ValidationError("largest-weight ground truth needs a planted instance")
    heaviest = int(np.argmax(ps.weights))
    return ps.patterns[heaviest].copy()


def _measure_counts(
    spectrum, energies: np.ndarray, fractions: tuple[float, ...]
) -> dict[str, int]:
    """Band counts that tolerate a zero-span (single level) spectrum.

    With all planted energies equal, an energy at that level (within
    the usual 1e-9 relative tolerance) counts as the full band "1",
    strictly lower counts as below, higher as above.
    """
    labels = [energy_mod.band_label(f) for f in fractions]
    counts = dict.fromkeys(labels + ["below", "above"], 0)
    if spectrum is None:
        return counts
    if spectrum.span > 0:
        return energy_mod.measure_bins(spectrum, energies, fractions)
    e = np.asarray(energies, dtype=np.float64)
    tol = 1e-9 * max(1.0, abs(spectrum.e_min))
    counts["below"] = int((e < spectrum.e_min - tol).sum())
    counts["above"] = int((e > spectrum.e_min + tol).sum())
    counts["1"] = int(e.size) - counts["below"] - counts["above"]
    return counts


def _aggregate_point(
    spec: SweepSpec,
    index: int,
    inst: Instance,
    cfg: SolverConfig,
    ground: np.ndarray,
    outcomes: list[RunOutcome],
) -> PointResult:
    hits = 0
    label_counts = dict.fromkeys(LABEL_CATEGORIES, 0)
    kept: list[float] = []
    for out in outcomes:
        if out.diverged:
            label_counts["diverged"] += 1
            continue
        if out.label is None:
            label_counts["unlabelled"] += 1
        else:
            label_counts[out.label.category] += 1
        kept.append(out.final_energy)
        spins = out.final_spins
        if np.array_equal(spins, ground) or np.array_equal(spins, -ground):
            hits += 1
    measure = _measure_counts(inst.spectrum, np.array(kept), spec.fractions)
    return PointResult(
        index=index,
        coords=spec.point_coords(index),
        n_runs=spec.runs_per_point,
        hits=hits,
        sr=hits / spec.runs_per_point,
        label_counts=tuple(label_counts.items()),
        measure_counts=tuple(measure.items()),
        diverged=label_counts["diverged"],
        energies=tuple(kept) if spec.keep_energies else None,
    )


def _eval_point(spec: SweepSpec, index: int) -> PointResult:
    coords = spec.point_coords(index)
    if isinstance(spec.instance, Instance):
        inst = spec.instance
        solver_axes = coords
    else:
        inst = spec.instance(coords[0][1])
        solver_axes = coords[1:]
    cfg = spec.solver
    for name, value in solver_axes:
        cfg = _apply_solver_param(cfg, name, value)
    ground = _ground_state(inst, spec.ground_truth)
    seeds = np.array(
        [derive_seed(spec.base_seed, index, r) for r in range(spec.runs_per_point)],
        dtype=np.int64,
    )
    x0 = np.vstack(
        [random_initial(inst.n, cfg.init_amplitude, int(s)) for s in seeds]
    )
    classifier = None
    ps = inst.pattern_set
    if ps is not None and inst.spectrum is not None:
        classifier = energy_mod.OutcomeClassifier(ps, inst.spectrum)
    outcomes = run_batch(inst, cfg, x0, seeds=seeds, classifier=classifier)
    return _aggregate_point(spec, index, inst, cfg, ground, outcomes)


def _run_points(spec: SweepSpec, threads: int) -> list[PointResult]:
    indices = range(spec.n_points)
    if threads <= 1:
        return [_eval_point(spec, i) for i in indices]
    results: dict[int, PointResult] = {}
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = {i: pool.submit(_eval_point, spec, i) for i in indices}
        for i, fut in futures.items():
            results[i] = fut.result()
    return [results[i] for i in indices]


def sweep_sr(spec: SweepSpec, threads: int = 1) -> SweepResult:
    """Success-rate grid over the spec's axes.

    Output is byte-stable for a given spec: worker count only changes
    wall time, never results (points are reduced in index order).
    """
    start = time.perf_counter()
    points = _run_points(spec, threads)
    if isinstance(spec.instance, Instance):
        label = spec.instance.label
    else:
        label = repr(spec.instance)
    return SweepResult(
        spec_hash=spec.spec_hash(),
        axes=spec.axes,
        points=tuple(points),
        runs_per_point=spec.runs_per_point,
        base_seed=spec.base_seed,
        ground_truth=spec.ground_truth,
        instance_label=label,
        solver_repr=repr(spec.solver),
        wall_time=time.perf_counter() - start,
    )


_SCAN_FACTORIES = {
    "dxi": CataloguePerturbationFactory,
    "dw": CatalogueWeightStepFactory,
    "p": EquidistantPerturbationFactory,
}


def scan_transition(spec: SweepSpec, threads: int = 1) -> SweepResult:
    """Complexity-transition scan: first axis deforms the instance.

    The instance must be one of the scan factories (coordinate
    perturbation, weight-step override, or the equidistant-set
    deformation); the optional second axis is a solver parameter,
    normally alpha.
    """
    if isinstance(spec.instance, Instance):
        raise ValidationError("scan_transition needs an instance factory, not a fixed instance")
    if not isinstance(spec.instance, tuple(_SCAN_FACTORIES.values())):
        raise ValidationError(
            "instance factory must be one of "
            + ", ".join(c.__name__ for c in _SCAN_FACTORIES.values())
        )
    return sweep_sr(spec, threads)


# ---------------------------------------------------------------------------
# histograms and K sweeps


@dataclass(frozen=True)
class HistogramReport:
    """Uniform-bin energy histogram between the found extremes.

    density integrates to 1 over the found range; log_density_shifted
    is log(density + 3e-5) so empty bins sit at a finite floor.
    smoothed_density convolves density with a unit-bin-width Gaussian
    for plotting only; counts stay raw.  A degenerate report (all
    energies equal) uses one bin of nominal width 1.
    """

    edges: tuple[float, ...]
    counts: tuple[int, ...]
    density: tuple[float, ...]
    log_density_shifted: tuple[float, ...]
    smoothed_density: tuple[float, ...]
    planted_min: float
    planted_max: float
    n_runs: int
    degenerate: bool

    @property
    def found_min(self) -> float:
        return self.edges[0]

    @property
    def found_max(self) -> float:
        return self.edges[-1]


def _gaussian_smooth(density: np.ndarray) -> np.ndarray:
    radius = 4
    offsets = np.arange(-radius, radius + 1)
    kernel = np.exp(-0.5 * offsets.astype(np.float64) ** 2)
    kernel /= kernel.sum()
    return np.convolve(density, kernel, mode="same")


def histogram(
    energies: Sequence[float],
    n_bins: int = HIST_BINS,
    planted=None,
) -> HistogramReport:
    """Histogram of found energies with log-shifted density."""
    e = np.asarray(list(energies), dtype=np.float64)
    if e.size < 1:
        raise ValidationError("histogram needs at least one energy")
    if n_bins < 1:
        raise ValidationError("n_bins must be >= 1")
    planted_min = float(planted.e_min) if planted is not None else float(e.min())
    planted_max = float(planted.e_max) if planted is not None else float(e.max())
    lo, hi = float(e.min()), float(e.max())
    if lo == hi:
        density = np.array([1.0])
        return HistogramReport(
            edges=(lo - 0.5, lo + 0.5),
            counts=(int(e.size),),
            density=(1.0,),
            log_density_shifted=(float(np.log(1.0 + LOG_SHIFT)),),
            smoothed_density=tuple(float(v) for v in _gaussian_smooth(density)),
            planted_min=planted_min,
            planted_max=planted_max,
            n_runs=int(e.size),
            degenerate=True,
        )
    counts, edges = np.histogram(e, bins=n_bins, range=(lo, hi))
    width = edges[1] - edges[0]
    density = counts / (e.size * width)
    return HistogramReport(
        edges=tuple(float(v) for v in edges),
        counts=tuple(int(c) for c in counts),
        density=tuple(float(v) for v in density),
        log_density_shifted=tuple(float(v) for v in np.log(density + LOG_SHIFT)),
        smoothed_density=tuple(float(v) for v in _gaussian_smooth(density)),
        planted_min=planted_min,
        planted_max=planted_max,
        n_runs=int(e.size),
        degenerate=False,
    )


def count_modes(report: HistogramReport, floor: float = 0.02) -> int:
    """Local maxima of the smoothed density above floor * peak."""
    d = np.asarray(report.smoothed_density)
    if d.size == 1:
        return 1
    cut = floor * d.max()
    modes = 0
    for i in range(d.size):
        left = d[i - 1] if i > 0 else -np.inf
        right = d[i + 1] if i < d.size - 1 else -np.inf
        if d[i] > cut and d[i] >= left and d[i] > right:
            modes += 1
    return modes


def cluster_split(energies: Sequence[float], n_clusters: int) -> list[np.ndarray]:
    """Partition by the largest gaps in sorted energy order.

    Returns index arrays into the original sequence, ordered by
    increasing energy.
    """
    e = np.asarray(list(energies), dtype=np.float64)
    if n_clusters < 1 or n_clusters > e.size:
        raise ValidationError("n_clusters must be in [1, len(energies)]")
    order = np.argsort(e, kind="stable")
    if n_clusters == 1:
        return [order]
    gaps = np.diff(e[order])
    cuts = np.sort(np.argsort(gaps, kind="stable")[-(n_clusters - 1):])
    return [np.array(part) for part in np.split(order, cuts + 1)]


def cluster_report(
    energies: Sequence[float],
    spins: np.ndarray,
    n_clusters: int,
) -> list[dict]:
    """Per-cluster share, mean energy, and mean intra-cluster Hamming."""
    spins = np.asarray(spins)
    e = np.asarray(list(energies), dtype=np.float64)
    groups = cluster_split(e, n_clusters)
    total = e.size
    out = []
    for idx in groups:
        members = spins[idx].astype(np.int16)
        m = members.shape[0]
        if m > 1:
            agree = members @ members.T
            ham = (members.shape[1] - agree) / 2
            mean_ham = float(ham[np.triu_indices(m, k=1)].mean())
        else:
            mean_ham = 0.0
        out.append(
            {
                "share": m / total,
                "mean_energy": float(e[idx].mean()),
                "mean_hamming": mean_ham,
                "size": int(m),
            }
        )
    return out


@dataclass(frozen=True)
class KSweepEntry:
    """Aggregates for one pattern count K."""

    k: int
    n: int
    lambda_max: float
    alpha: float
    planted_min: float
    planted_max: float
    mean_energy: float
    n_runs: int
    label_counts: tuple[tuple[str, int], ...]
    measure_counts: tuple[tuple[str, int], ...]
    hist: HistogramReport


def _eval_k(
    n: int,
    k: int,
    runs: int,
    base_seed: int,
    dw: float,
    w0: float,
    amplitude: float,
    max_steps: int,
    n_bins: int,
    fractions: tuple[float, ...],
) -> KSweepEntry:
    ps = generate_orthogonal_patterns(
        n, k, seed=derive_seed(base_seed, "instance", k), w0=w0, dw=dw
    )
    inst = build_couplings(ps, label=f"orthogonal-n{n}-k{k}")
    lam = oracle_mod.max_eigenvalue(inst)
    alpha = lam / 2.0
    # Forward Euler needs (alpha + |eigenvalue|)*dt < 2 for every coupling
    # eigenvalue; the orthogonal ladder's lower spectral edge is exactly
    # -sum(weights), so cap the step with a 4x margin against both edges.
    dt = min(0.1, 0.5 / (alpha + float(np.sum(ps.weights))))
    cfg = SolverConfig(kind="I", alpha=alpha, beta=1.0, dt=dt, max_steps=max_steps)
    seeds = np.array(
        [derive_seed(base_seed, k, r) for r in range(runs)], dtype=np.int64
    )
    x0 = np.vstack([random_initial(n, amplitude, int(s)) for s in seeds])
    classifier = energy_mod.OutcomeClassifier(ps, inst.spectrum)
    outcomes = run_batch(inst, cfg, x0, seeds=seeds, classifier=classifier)
    label_counts = dict.fromkeys(LABEL_CATEGORIES, 0)
    energies: list[float] = []
    for out in outcomes:
        if out.diverged:
            label_counts["diverged"] += 1
            continue
        label_counts[out.label.category if out.label is not None else "unlabelled"] += 1
        energies.append(out.final_energy)
    e = np.array(energies)
    measure = _measure_counts(inst.spectrum, e, fractions)
    hist = histogram(e, n_bins=n_bins, planted=inst.spectrum)
    return KSweepEntry(
        k=k,
        n=n,
        lambda_max=lam,
        alpha=alpha,
        planted_min=float(inst.spectrum.e_min),
        planted_max=float(inst.spectrum.e_max),
        mean_energy=float(e.mean()),
        n_runs=runs,
        label_counts=tuple(label_counts.items()),
        measure_counts=tuple(measure.items()),
        hist=hist,
    )


def sweep_k(
    n: int,
    k_values: Sequence[int],
    runs_per_k: int | None = None,
    base_seed: int = 0,
    dw: float = 0.001,
    w0: float = 1.0,
    amplitude: float = 0.5,
    max_steps: int | None = None,
    n_bins: int = HIST_BINS,
    fractions: tuple[float, ...] = energy_mod.DEFAULT_FRACTIONS,
    threads: int = 1,
) -> tuple[KSweepEntry, ...]:
    """Relaxation statistics per pattern count K at alpha = lambda/2.

    Each K regenerates an orthogonal instance with the given dw and a
    seed derived from (base_seed, "instance", K), then integrates
    runs_per_k first-order trajectories from uniform starts, with the
    step size capped by the spectral edges of the instance so forward
    Euler stays stable at any scale.  Defaults: 1000 runs below
    n = 1024, 100 runs and 2000 steps at n >= 1024.
    """
    ks = [int(k) for k in k_values]
    if not ks:
        raise ValidationError("k_values is empty")
    if runs_per_k is None:
        runs_per_k = 100 if n >= 1024 else 1000
    if max_steps is None:
        max_steps = 2000 if n >= 1024 else 1000
    args = [
        (n, k, runs_per_k, base_seed, dw, w0, amplitude, max_steps, n_bins, fractions)
        for k in ks
    ]
    if threads <= 1:
        return tuple(_eval_k(*a) for a in args)
    results: dict[int, KSweepEntry] = {}
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = {i: pool.submit(_eval_k, *a) for i, a in enumerate(args)}
        for i, fut in futures.items():
            results[i] = fut.result()
    return tuple(results[i] for i in range(len(args)))


# ---------------------------------------------------------------------------
# serialization


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _count_headers(measure_counts) -> list[str]:
    return [f"label:{c}" for c in LABEL_CATEGORIES] + [
        f"band:{key}" for key, _ in measure_counts
    ]


def _count_cells(label_counts, measure_counts) -> list[str]:
    labels = dict(label_counts)
    return [str(labels.get(c, 0)) for c in LABEL_CATEGORIES] + [
        str(v) for _, v in measure_counts
    ]


def write_sweep_csv(result: SweepResult, path) -> None:
    """One row per grid point; schema documented in the module docstring."""
    if not result.points:
        raise ValidationError("no grid points to write")
    header = (
        [name for name, _ in result.axes]
        + ["sr", "n_runs", "hits", "diverged"]
        + _count_headers(result.points[0].measure_counts)
    )
    lines = [",".join(header)]
    for point in result.points:
        row = [_fmt(v) for _, v in point.coords]
        row += [_fmt(point.sr), str(point.n_runs), str(point.hits), str(point.diverged)]
        row += _count_cells(point.label_counts, point.measure_counts)
        lines.append(",".join(row))
    _write_text(path, "\n".join(lines) + "\n")


def write_ksweep_csv(entries: Sequence[KSweepEntry], path) -> None:
    """Per-K aggregate table (measure-report input)."""
    if not entries:
        raise ValidationError("no K entries to write")
    header = [
        "k",
        "n",
        "lambda_max",
        "alpha",
        "planted_min",
        "planted_max",
        "mean_energy",
        "n_runs",
    ] + _count_headers(entries[0].measure_counts)
    lines = [",".join(header)]
    for entry in entries:
        row = [
            str(entry.k),
            str(entry.n),
            _fmt(entry.lambda_max),
            _fmt(entry.alpha),
            _fmt(entry.planted_min),
            _fmt(entry.planted_max),
            _fmt(entry.mean_energy),
            str(entry.n_runs),
        ]
        row += _count_cells(entry.label_counts, entry.measure_counts)
        lines.append(",".join(row))
    _write_text(path, "\n".join(lines) + "\n")


def write_hist_csv(entries: Sequence[KSweepEntry], path) -> None:
    """Long-format histogram table: one row per (K, bin)."""
    header = [
        "k",
        "bin",
        "left",
        "right",
        "count",
        "density",
        "log_density_shifted",
        "smoothed_density",
        "planted_min",
        "planted_max",
    ]
    lines = [",".join(header)]
    for entry in entries:
        h = entry.hist
        for b in range(len(h.counts)):
            lines.append(
                ",".join(
                    [
                        str(entry.k),
                        str(b),
                        _fmt(h.edges[b]),
                        _fmt(h.edges[b + 1]),
                        str(h.counts[b]),
                        _fmt(h.density[b]),
                        _fmt(h.log_density_shifted[b]),
                        _fmt(h.smoothed_density[b]),
                        _fmt(h.planted_min),
                        _fmt(h.planted_max),
                    ]
                )
            )
    _write_text(path, "\n".join(lines) + "\n")


def write_sidecar(result: SweepResult, path) -> None:
    """Structured text metadata next to a sweep CSV (no timestamps)."""
    from . import __version__

    lines = [
        "format: plantbench-sweep-meta 1",
        f"tool_version: {__version__}",
        f"spec_hash: {result.spec_hash}",
        f"instance: {result.instance_label}",
        f"solver: {result.solver_repr}",
        f"base_seed: {result.base_seed}",
        f"runs_per_point: {result.runs_per_point}",
        f"ground_truth: {result.ground_truth}",
    ]
    for name, values in result.axes:
        lines.append(f"axis {name}: " + " ".join(repr(v) for v in values))
    _write_text(path, "\n".join(lines) + "\n")


def _write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
