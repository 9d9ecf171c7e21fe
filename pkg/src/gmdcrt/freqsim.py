"""Multi-tone signal simulator for multidimensional undersampling.

A sum of complex exponentials with integer frequency vectors is sampled
on the lattice of each sampling matrix M. The MD-DFT of the samples has
one peak per tone, located at the tone's vector remainder modulo M, so
the peak positions form the residue sets fed to the reconstruction code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from . import kernels
from .errors import ConditionNotMet, DetectionMismatch, DimensionMismatch, MdcrtError, NoPeaks
from .exactint import Matrix, Vector, adjugate, as_square, as_vector, det, matvec, transpose, vsub
from .lattice import fpd, in_fpd
from .multivec import ModuliSet, ReconstructionOutcome, compute_range, make_system, reconstruct
from .pairvec import PairOutcome, PairSystem, check_condition, reconstruct_pair

ABS_FLOOR = 1e-9


@dataclass(frozen=True)
class SignalSpec:
    """Tones ``(amplitude, frequency)`` plus optional complex Gaussian noise."""

    dim: int
    tones: tuple[tuple[complex, Vector], ...]
    noise_sigma: float = 0.0

    def __post_init__(self):
        if not self.tones:
            raise ValueError("a signal needs at least one tone")
        tones = []
        for a, f in self.tones:
            f = as_vector(f)
            if len(f) != self.dim:
                raise DimensionMismatch(f"frequency {list(f)} does not have dimension {self.dim}")
            tones.append((complex(a), f))
        if self.noise_sigma < 0:
            raise ValueError("noise sigma must be non-negative")
        object.__setattr__(self, "tones", tuple(tones))

    @property
    def frequencies(self) -> list[Vector]:
        return list(dict.fromkeys(f for _, f in self.tones))


def tones_of(freqs: Sequence[Sequence[int]], amplitude: complex = 1.0, noise_sigma: float = 0.0) -> SignalSpec:
    """Equal-amplitude tones at the given frequencies."""
    freqs = [as_vector(f) for f in freqs]
    return SignalSpec(len(freqs[0]), tuple((amplitude, f) for f in freqs), noise_sigma)


@dataclass(frozen=True)
class SampledSignal:
    sampling_matrix: Matrix
    samples: Mapping[Vector, complex] = field(repr=False)


@dataclass(frozen=True)
class Spectrum:
    sampling_matrix: Matrix
    bins: Mapping[Vector, complex] = field(repr=False)


def _phase_data(m: Matrix):
    d = det(m)
    s = 1 if d > 0 else -1
    adj = adjugate(m)
    return adj, s, abs(d)


def sampling_rate(m) -> int:
    return abs(det(as_square(m)))


def sample(spec: SignalSpec, m, seed: Optional[int] = None) -> SampledSignal:
    """Evaluate the signal on the sample points ``n ∈ N(M^T)``.

    Phases are reduced modulo |det M| in exact integers, so every
    exponent is formed by a single float division.
    """
    m = as_square(m)
    if len(m) != spec.dim:
        raise DimensionMismatch("sampling matrix and signal dimension differ")
    adj, s, q = _phase_data(m)
    points = list(fpd(transpose(m)))
    # f^T M^-T n = (M^-1 f) . n = (s adj f) . n / q
    cols = [tuple(s * x for x in matvec(adj, f)) for _, f in spec.tones]
    weights = [a for a, _ in spec.tones]
    values = np.asarray(kernels.phase_sum(points, cols, weights, q, +1), dtype=complex)
    if spec.noise_sigma > 0:
        gen = np.random.default_rng(seed)
        scale = spec.noise_sigma / math.sqrt(2.0)
        values = values + scale * (gen.standard_normal(len(points)) + 1j * gen.standard_normal(len(points)))
    return SampledSignal(m, dict(zip(points, values.tolist())))


def mddft(sig: SampledSignal) -> Spectrum:
    """Direct MD-DFT ``X(k) = sum_n x[n] exp(-2πi k^T M^-T n)`` over ``k ∈ N(M)``."""
    m = sig.sampling_matrix
    adj, s, q = _phase_data(m)
    ns = list(sig.samples)
    ks = list(fpd(m))
    rows = [tuple(s * x for x in matvec(adj, k)) for k in ks]
    vals = kernels.phase_sum(rows, ns, [sig.samples[n] for n in ns], q, -1)
    return Spectrum(m, dict(zip(ks, vals)))


def detect_residues(spectrum: Spectrum, rho_max: int, threshold_ratio: float = 0.5) -> list[Vector]:
    """Peak bins above ``threshold_ratio`` times the largest magnitude.

    At most ``rho_max`` bins are kept, strongest first; equal magnitudes
    keep FPD order.
    """
    if not 0 < threshold_ratio <= 1:
        raise ValueError("threshold_ratio must be in (0, 1]")
    if rho_max < 1:
        raise ValueError("rho_max must be positive")
    mags = {k: abs(v) for k, v in spectrum.bins.items()}
    top = max(mags.values())
    if top < ABS_FLOOR * sampling_rate(spectrum.sampling_matrix):
        raise NoPeaks("spectrum has no bin above the noise floor")
    order = {k: i for i, k in enumerate(spectrum.bins)}
    peaks = [k for k, v in mags.items() if v > threshold_ratio * top]
    peaks.sort(key=lambda k: (-mags[k], order[k]))
    return peaks[:rho_max]


def _child_seed(seed: Optional[int], j: int) -> Optional[np.random.SeedSequence]:
    if seed is None:
        return None
    return np.random.SeedSequence([seed, j])


@dataclass(frozen=True)
class EndToEndResult:
    """Recovered frequencies plus the detected residue sets and solver output."""

    vectors: frozenset
    residue_sets: tuple[tuple[Vector, ...], ...]
    outcome: Union[ReconstructionOutcome, PairOutcome]

    def sorted_vectors(self) -> list[Vector]:
        return sorted(self.vectors)


def detect_all(spec: SignalSpec, ms: ModuliSet, seed: Optional[int], rho: int, threshold: float) -> list[list[Vector]]:
    sets = []
    for j, m in enumerate(ms.moduli):
        spectrum = mddft(sample(spec, m, _child_seed(seed, j)))
        sets.append(detect_residues(spectrum, rho, threshold))
    return sets


def end_to_end(
    spec: SignalSpec,
    ms: ModuliSet,
    seed: Optional[int] = 0,
    *,
    rho: Optional[int] = None,
    threshold: float = 0.5,
    prior: bool = False,
    overrides=None,
) -> EndToEndResult:
    """Sample, transform, detect and reconstruct.

    Args:
        rho: number of unknown frequencies; defaults to the distinct tones.
        prior: use the two-vector solver; the difference of the two true
            frequencies must pass :func:`check_condition`.
        overrides: lcrm overrides for the determinable range.

    Raises:
        ConditionNotMet: ``prior`` is set but the difference condition fails.
        DetectionMismatch: detected peaks do not form a valid residue system.
    """
    if spec.dim != ms.dim:
        raise DimensionMismatch("signal and moduli dimensions differ")
    freqs = spec.frequencies
    rho = rho or len(freqs)
    if prior:
        if rho != 2 or len(freqs) != 2:
            raise ValueError("the prior-information path handles exactly two frequencies")
        if not check_condition(ms, vsub(freqs[0], freqs[1])):
            raise ConditionNotMet(f"difference {list(vsub(freqs[0], freqs[1]))} violates the pair condition")
    sets = detect_all(spec, ms, seed, rho, threshold)
    for j, (m, s) in enumerate(zip(ms.moduli, sets)):
        if any(not in_fpd(v, m) for v in s):
            raise DetectionMismatch(f"detected residues of set {j} fall outside N(M_{j})")
    frozen = tuple(tuple(s) for s in sets)
    if prior:
        out = reconstruct_pair(PairSystem(ms, frozen))
        return EndToEndResult(frozenset(out.vectors), frozen, out)
    try:
        system = make_system(ms, sets, rho)
    except (ValueError, MdcrtError) as exc:
        raise DetectionMismatch(str(exc)) from exc
    res = reconstruct(ms, system, compute_range(ms, rho, overrides))
    return EndToEndResult(res.vectors, system.sets, res)
