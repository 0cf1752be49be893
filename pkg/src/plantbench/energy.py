"""Energies, planted spectra, and outcome classification.

The QUBO objective throughout is

    E(x) = -1/2 sum_{i != j} J_ij x_i x_j = -1/2 x^T J x,   x in {-1, +1}^n,

so each unordered pair contributes -J_ij x_i x_j once.  For an
orthogonal unperturbed pattern set the planted energies have the closed
form

    E_m = -(w_m n^2 - n sum_k w_k) / 2,

because J = sum_k w_k xi^k (xi^k)^T - (sum_k w_k) I and xi^m hits its
own outer product with overlap n while every other term vanishes.
planted_spectrum evaluates both routes and insists they agree.

Solver outcomes are labelled structurally: exact match to a planted
pattern, to its mirror (global flip, an exact symmetry of E), or to a
low-order mixture sign(sum_r s_r xi^{mu_r}) with an odd number of
terms; everything else is spurious, or below/above when the energy
falls outside the planted range.  Relative positions inside the range
are summarised by nested fraction bands of the planted span, closed at
the range edges with a 1e-9 relative tolerance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from math import comb

import numpy as np

from .errors import DegenerateSpectrumError, ValidationError
from .instance import Instance, PatternSet, make_pattern_set

__all__ = [
    "PlantedSpectrum",
    "OutcomeLabel",
    "OutcomeClassifier",
    "DEFAULT_FRACTIONS",
    "DEFAULT_MIXED_CAP",
    "qubo_energy",
    "qubo_energy_many",
    "planted_spectrum",
    "classify_outcome",
    "measure_bins",
    "band_label",
    "gauge_transform",
    "mirror",
]

DEFAULT_FRACTIONS: tuple[float, ...] = (1 / 16, 1 / 8, 1 / 4, 1 / 2, 3 / 4, 1.0)

# Mixed-state matching enumerates every odd-order signed combination up
# to mixed_order; it is skipped (outcomes fall through to spurious) when
# the candidate count would exceed this cap.
DEFAULT_MIXED_CAP = 20000

_REL_TOL = 1e-9


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _coupling_of(inst: "Instance | np.ndarray") -> np.ndarray:
    if isinstance(inst, Instance):
        return inst.coupling
    return np.asarray(inst, dtype=np.float64)


def _check_state(x: np.ndarray, n: int) -> np.ndarray:
    x = np.asarray(x)
    if x.shape != (n,):
        raise ValidationError(f"state must have shape ({n},), got {x.shape}")
    if not np.isin(x, (-1, 1)).all():
        raise ValidationError("state entries must be +1 or -1")
    return x.astype(np.float64)


def qubo_energy(inst: "Instance | np.ndarray", x: np.ndarray) -> float:
    """E(x) = -1/2 x^T J x for a single +-1 state."""
    j = _coupling_of(inst)
    xf = _check_state(x, j.shape[0])
    return float(-0.5 * (xf @ (j @ xf)))


def qubo_energy_many(inst: "Instance | np.ndarray", states: np.ndarray) -> np.ndarray:
    """Energies of a (r, n) block of +-1 states."""
    j = _coupling_of(inst)
    xs = np.asarray(states, dtype=np.float64)
    if xs.ndim != 2 or xs.shape[1] != j.shape[0]:
        raise ValidationError(f"states must be (r, {j.shape[0]}), got {xs.shape}")
    return -0.5 * np.einsum("ri,ri->r", xs @ j, xs)


@dataclass(frozen=True, eq=False)
class PlantedSpectrum:
    """Energies of the planted patterns on a coupling matrix."""

    energies: np.ndarray            # (k,) float64, pattern order
    e_min: float
    e_max: float

    @property
    def ground_index(self) -> int:
        """0-based index of the lowest-energy planted pattern."""
        return int(np.argmin(self.energies))

    @property
    def span(self) -> float:
        return self.e_max - self.e_min


def _direct_energies(j: np.ndarray, patterns: np.ndarray) -> np.ndarray:
    p = patterns.astype(np.float64)
    return -0.5 * np.einsum("ri,ri->r", p @ j, p)


def planted_spectrum(ps: PatternSet, inst: Instance, method: str = "auto") -> PlantedSpectrum:
    """Planted energies of the binary patterns of ps on inst.coupling.

    method "direct" evaluates qubo_energy on each pattern.  method
    "closed" uses the orthogonal closed form (errors when the set is
    perturbed, non-orthogonal, or the matrix was coarse-grained).
    "auto" takes the closed form whenever it applies and cross-checks
    it against the direct route to 1e-9 relative; disagreement means
    the couplings do not belong to this pattern set and raises.
    """
    j = inst.coupling
    if j.shape[0] != ps.n:
        raise ValidationError("pattern set and instance dimensions differ")
    closed_ok = (
        ps.is_orthogonal() and not ps.is_perturbed() and inst.coarse_delta is None
    )
    if method == "closed" and not closed_ok:
        raise ValidationError(
            "closed form needs an orthogonal unperturbed set on uncoarsened couplings"
        )
    direct = _direct_energies(j, ps.patterns)
    if method == "direct" or not closed_ok:
        energies = direct
    else:
        total = float(np.sum(ps.weights))
        closed = -(ps.weights * ps.n ** 2 - ps.n * total) / 2.0
        scale = np.maximum(1.0, np.maximum(np.abs(closed), np.abs(direct)))
        if np.any(np.abs(closed - direct) > _REL_TOL * scale):
            worst = int(np.argmax(np.abs(closed - direct) / scale))
            raise ValidationError(
                "closed-form and direct planted energies disagree "
                f"(pattern {worst + 1}: {closed[worst]!r} vs {direct[worst]!r})"
            )
        energies = closed
    return PlantedSpectrum(
        energies=_readonly(energies.astype(np.float64)),
        e_min=float(energies.min()),
        e_max=float(energies.max()),
    )


@dataclass(frozen=True)
class OutcomeLabel:
    """Structural label of a solver outcome.

    category is one of planted, mirror, mixed, spurious, below, above;
    below/above apply only when no structural match exists and the
    energy leaves the planted range.  pattern is 1-based.  The
    out_of_range flag is independent of the structural match.
    """

    category: str
    pattern: int | None = None
    signature: tuple[tuple[int, int], ...] | None = None   # ((pattern, sign), ...)
    hamming_to_nearest_planted: int = 0
    out_of_range: bool = False

    def short(self) -> str:
        if self.category in ("planted", "mirror"):
            return f"{self.category}:{self.pattern}"
        if self.category == "mixed":
            parts = [str(self.signature[0][0])]
            for pat, sign in self.signature[1:]:
                parts.append(f"{'+' if sign > 0 else '-'}{pat}")
            return "mixed:" + "".join(parts)
        return self.category


class OutcomeClassifier:
    """Labels +-1 states against a pattern set.

    Planted patterns, their mirrors, and (when the candidate count
    stays under mixed_cap) all odd-order signed mixtures up to
    mixed_order are tabulated once; classification is then a hash
    lookup, so a classifier can be reused across many runs.  Earlier
    entries win ties, giving the precedence planted > mirror > mixed
    with the lowest order and lexicographically first signature.
    """

    def __init__(
        self,
        ps: PatternSet,
        spectrum: PlantedSpectrum,
        mixed_order: int = 3,
        mixed_cap: int = DEFAULT_MIXED_CAP,
    ):
        if mixed_order < 1:
            raise ValidationError("mixed_order must be >= 1")
        self.ps = ps
        self.spectrum = spectrum
        self.mixed_order = mixed_order
        self._table: dict[bytes, tuple[str, int | None, tuple | None]] = {}
        patterns = ps.patterns
        for m in range(ps.k):
            self._table.setdefault(patterns[m].tobytes(), ("planted", m + 1, None))
        for m in range(ps.k):
            self._table.setdefault((-patterns[m]).tobytes(), ("mirror", m + 1, None))
        orders = [r for r in range(3, mixed_order + 1, 2)]
        n_candidates = sum(comb(ps.k, r) * 2 ** (r - 1) for r in orders)
        self.mixed_skipped = n_candidates > mixed_cap
        if not self.mixed_skipped:
            for r in orders:
                for combo in itertools.combinations(range(ps.k), r):
                    rows = patterns[list(combo)].astype(np.int64)
                    for tail in itertools.product((1, -1), repeat=r - 1):
                        signs = np.array((1,) + tail)
                        mix = rows.T @ signs
                        state = np.where(mix > 0, 1, -1).astype(np.int8)
                        sig = tuple((c + 1, int(s)) for c, s in zip(combo, signs))
                        entry = ("mixed", None, sig)
                        self._table.setdefault(state.tobytes(), entry)
                        self._table.setdefault((-state).tobytes(), entry)

    def _nearest_planted(self, x: np.ndarray) -> int:
        overlap = self.ps.patterns.astype(np.int64) @ x.astype(np.int64)
        return int(np.min((self.ps.n - np.abs(overlap)) // 2))

    def classify(self, x: np.ndarray, energy: float) -> OutcomeLabel:
        x = np.asarray(x)
        if not np.isin(x, (-1, 1)).all():
            raise ValidationError("state entries must be +1 or -1")
        x = x.astype(np.int8)
        spec = self.spectrum
        tol = _REL_TOL * max(1.0, abs(spec.e_min), abs(spec.e_max))
        below = energy < spec.e_min - tol
        above = energy > spec.e_max + tol
        hit = self._table.get(x.tobytes())
        if hit is not None:
            category, pattern, sig = hit
            hamming = 0 if category in ("planted", "mirror") else self._nearest_planted(x)
            return OutcomeLabel(
                category=category,
                pattern=pattern,
                signature=sig,
                hamming_to_nearest_planted=hamming,
                out_of_range=below or above,
            )
        hamming = self._nearest_planted(x)
        if below or above:
            return OutcomeLabel(
                category="below" if below else "above",
                hamming_to_nearest_planted=hamming,
                out_of_range=True,
            )
        return OutcomeLabel(category="spurious", hamming_to_nearest_planted=hamming)


def classify_outcome(
    ps: PatternSet,
    spectrum: PlantedSpectrum,
    x: np.ndarray,
    energy: float,
    mixed_order: int = 3,
    mixed_cap: int = DEFAULT_MIXED_CAP,
) -> OutcomeLabel:
    """One-off outcome label; build an OutcomeClassifier for bulk use."""
    return OutcomeClassifier(ps, spectrum, mixed_order, mixed_cap).classify(x, energy)


def band_label(fraction: float) -> str:
    """Stable text key for a band fraction, e.g. 0.0625 -> "1/16"."""
    frac = Fraction(fraction).limit_denominator(64)
    return str(frac.numerator) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"


def measure_bins(
    spectrum: PlantedSpectrum,
    energies: np.ndarray,
    fractions: tuple[float, ...] = DEFAULT_FRACTIONS,
) -> dict[str, int]:
    """Count energies in nested bands of the planted range.

    An energy E is assigned to the smallest fraction f with
    E < e_min + f * (e_max - e_min); the final band is closed at e_max.
    Energies within a 1e-9 relative tolerance of either range edge
    count as inside (first or final band), so a planted hit whose
    recomputed energy drifts an ulp never leaks into below/above.
    Keys are band_label(f) plus "below" and "above".
    """
    fr = tuple(float(f) for f in fractions)
    if not fr or any(b <= a for a, b in zip(fr, fr[1:])):
        raise ValidationError("fractions must be strictly increasing")
    if fr[0] <= 0 or fr[-1] != 1.0:
        raise ValidationError("fractions must lie in (0, 1] and end at 1")
    span = spectrum.e_max - spectrum.e_min
    if span <= 0:
        raise DegenerateSpectrumError(
            "planted energies span zero range; relative bands are undefined"
        )
    e = np.asarray(energies, dtype=np.float64)
    tol = _REL_TOL * max(1.0, abs(spectrum.e_min), abs(spectrum.e_max))
    thresholds = spectrum.e_min + span * np.array(fr)
    thresholds[-1] = spectrum.e_max
    labels = [band_label(f) for f in fr]
    counts = dict.fromkeys(labels + ["below", "above"], 0)
    below = e < spectrum.e_min - tol
    above = e > spectrum.e_max + tol
    counts["below"] = int(below.sum())
    counts["above"] = int(above.sum())
    inside = e[~below & ~above]
    idx = np.minimum(np.searchsorted(thresholds, inside, side="right"), len(fr) - 1)
    for i, lab in enumerate(labels):
        counts[lab] = int((idx == i).sum())
    return counts


def mirror(x: np.ndarray) -> np.ndarray:
    """Global spin flip, an exact symmetry of the energy."""
    return -np.asarray(x)


def gauge_transform(inst: Instance, flips) -> Instance:
    """Flip the listed sites: J'_ij = s_i s_j J_ij with s_i = -1 on flips.

    Patterns and perturbations transform the same way, so planted
    energies are preserved exactly and the spectrum object is reused.
    """
    s = np.ones(inst.n, dtype=np.int8)
    flips = np.asarray(list(flips), dtype=np.int64)
    if flips.size:
        if flips.min() < 0 or flips.max() >= inst.n:
            raise ValidationError("flip index outside instance")
        s[flips] = -1
    sf = s.astype(np.float64)
    j = inst.coupling * np.outer(sf, sf)
    out = replace(inst, coupling=_readonly(j))
    ps = inst.pattern_set
    if ps is not None:
        new_ps = make_pattern_set(
            ps.patterns * s,
            w0=ps.w0,
            dw=ps.dw,
            weights=ps.weights,
            perturbations=None if ps.perturbations is None else ps.perturbations * sf,
            generator=None,
        )
        out = replace(out, source=new_ps)
    return out
