"""Core domain types and baseline sequence generators.

Sequences are stored 0-indexed; formulas in docstrings use the conventional
1-indexed element numbering x_1..x_N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence as TypingSequence, Tuple

import numpy as np

from .errors import DegenerateInputError, InvalidInputError

ENERGY_RTOL = 1e-9


def _as_complex_vector(values) -> np.ndarray:
    v = np.asarray(values, dtype=np.complex128)
    if v.ndim != 1 or v.size < 1:
        raise InvalidInputError(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidInputError("sequence contains non-finite entries")
    return v


@dataclass(frozen=True)
class Sequence:
    """Length-N complex sequence with total energy N (``x^H x = N``)."""

    values: np.ndarray

    def __post_init__(self):
        v = _as_complex_vector(self.values).copy()
        n = v.size
        energy = float(np.sum(np.abs(v) ** 2))
        if abs(energy - n) > ENERGY_RTOL * n:
            raise InvalidInputError(
                f"sequence energy {energy!r} deviates from N={n} beyond "
                f"relative tolerance {ENERGY_RTOL:g}"
            )
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    @staticmethod
    def from_values(values, renormalize: bool = False) -> "Sequence":
        """Build a Sequence, optionally rescaling to energy N first."""
        v = _as_complex_vector(values)
        if renormalize:
            energy = float(np.sum(np.abs(v) ** 2))
            if energy <= 0.0:
                raise DegenerateInputError("cannot normalize an all-zero sequence")
            v = v * np.sqrt(v.size / energy)
        return Sequence(v)


@dataclass(frozen=True)
class ZoneOfOperation:
    """Delay-Doppler zone: delay bins |k| <= max_delay crossed with a uniform
    Doppler grid (cycles/sample), minus the origin bin (0, 0).

    ``weights`` maps each delay bin k in [-max_delay, max_delay] to a
    non-negative weight; missing constructor input defaults to weight 1.
    """

    max_delay: int
    doppler_values: np.ndarray
    weights: Dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        r = int(self.max_delay)
        if r < 0:
            raise InvalidInputError("max_delay must be >= 0")
        f = np.asarray(self.doppler_values, dtype=np.float64).copy()
        if f.ndim != 1 or f.size < 1:
            raise InvalidInputError("doppler_values must be a non-empty 1-D array")
        if f.size > 1:
            steps = np.diff(f)
            if np.any(steps <= 0):
                raise InvalidInputError("doppler grid must be strictly increasing")
            if np.max(steps) - np.min(steps) > 1e-12:
                raise InvalidInputError("doppler grid must be uniformly spaced")
            # snap near-zero grid points so the origin bin is recognized exactly
            f[np.abs(f) < 1e-9 * np.max(steps)] = 0.0
        w = {int(k): 1.0 for k in range(-r, r + 1)}
        for k, wk in dict(self.weights).items():
            k = int(k)
            if abs(k) > r:
                raise InvalidInputError(f"weight given for delay {k} outside [-{r}, {r}]")
            wk = float(wk)
            if wk < 0 or not np.isfinite(wk):
                raise InvalidInputError(f"weight for delay {k} must be finite and >= 0")
            w[k] = wk
        f.flags.writeable = False
        object.__setattr__(self, "max_delay", r)
        object.__setattr__(self, "doppler_values", f)
        object.__setattr__(self, "weights", w)
        if not self.pairs():
            raise InvalidInputError(
                "zone is empty after excluding the origin bin (0, 0)"
            )

    @property
    def num_doppler(self) -> int:
        return self.doppler_values.size

    def weight(self, k: int) -> float:
        return self.weights[int(k)]

    def pairs(self) -> Tuple[Tuple[int, float], ...]:
        """All (delay, doppler) bins of the zone, origin excluded, in
        deterministic order (delay-major, then doppler)."""
        out = []
        for k in range(-self.max_delay, self.max_delay + 1):
            for f in self.doppler_values:
                if k == 0 and f == 0.0:
                    continue
                out.append((k, float(f)))
        return tuple(out)

    @staticmethod
    def from_bins(
        max_delay: int,
        doppler_lower_bins: float,
        doppler_upper_bins: float,
        num_doppler: int,
        n_seq: int,
        weights: Optional[Dict[int, float]] = None,
    ) -> "ZoneOfOperation":
        """Build a zone whose Doppler axis is given in bins (nu = f * N)."""
        if num_doppler < 1:
            raise InvalidInputError("num_doppler must be >= 1")
        if n_seq < 1:
            raise InvalidInputError("n_seq must be >= 1")
        bins = np.linspace(float(doppler_lower_bins), float(doppler_upper_bins), num_doppler)
        return ZoneOfOperation(max_delay, bins / float(n_seq), weights or {})


@dataclass(frozen=True)
class SpectralMask:
    """Stopband frequency bins with a common energy cap.

    ``u_max = N * 10^(-A/10)`` where A is the attenuation in dB and N the
    sequence length the mask applies to. ``bands`` keeps the originating
    normalized-frequency interval(s), used by the band-stop filter design.
    """

    frequencies: np.ndarray
    attenuation_db: float
    n_seq: int
    bands: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=np.float64)
        if f.ndim != 1 or f.size < 1:
            raise InvalidInputError("mask needs at least one stopband frequency")
        if np.any(f < 0.0) or np.any(f >= 1.0):
            raise InvalidInputError("stopband frequencies must lie in [0, 1)")
        if np.unique(f).size != f.size:
            raise InvalidInputError("stopband frequencies must be distinct")
        if int(self.n_seq) < 1:
            raise InvalidInputError("n_seq must be >= 1")
        a = float(self.attenuation_db)
        if not np.isfinite(a):
            raise InvalidInputError("attenuation must be finite")
        bands = tuple((float(lo), float(hi)) for lo, hi in self.bands)
        if not bands:
            bands = ((float(np.min(f)), float(np.max(f))),)
        for lo, hi in bands:
            if not (0.0 <= lo <= hi < 1.0):
                raise InvalidInputError(f"stopband interval [{lo}, {hi}] not inside [0, 1)")
        f = f.copy()
        f.flags.writeable = False
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "attenuation_db", a)
        object.__setattr__(self, "n_seq", int(self.n_seq))
        object.__setattr__(self, "bands", bands)

    @property
    def num_bins(self) -> int:
        return self.frequencies.size

    @property
    def u_max(self) -> float:
        return self.n_seq * 10.0 ** (-0.1 * self.attenuation_db)

    @staticmethod
    def from_bands(
        bands: TypingSequence[Tuple[float, float]],
        attenuation_db: float,
        num_bins: int,
        n_seq: int,
    ) -> "SpectralMask":
        """Discretize interval(s) into ``num_bins`` total bins (endpoints
        included), distributed across bands proportionally to their width."""
        bands = [(float(lo), float(hi)) for lo, hi in bands]
        if not bands:
            raise InvalidInputError("at least one stopband interval required")
        if num_bins < len(bands):
            raise InvalidInputError("need at least one bin per stopband interval")
        widths = np.array([hi - lo for lo, hi in bands])
        if np.any(widths < 0):
            raise InvalidInputError("stopband interval must have lo <= hi")
        counts = np.maximum(1, np.round(num_bins * widths / max(widths.sum(), 1e-300)))
        # fix rounding so the counts total num_bins
        counts = counts.astype(int)
        while counts.sum() > num_bins:
            counts[np.argmax(counts)] -= 1
        while counts.sum() < num_bins:
            counts[np.argmax(widths / counts)] += 1
        freqs = np.concatenate(
            [np.linspace(lo, hi, c) for (lo, hi), c in zip(bands, counts)]
        )
        return SpectralMask(freqs, attenuation_db, n_seq, bands=tuple(bands))


@dataclass(frozen=True)
class DesignConfig:
    """Optimizer knobs common to both algorithms.

    ``papr`` is the PAPR bound gamma in [1, N); ``p`` the even sidelobe
    exponent; ``eta`` the subproblem coupling weight; ``rho`` the augmented
    Lagrangian step; ``eps_x``/``eps_r`` the rank-one convergence tests;
    ``t_max`` the total iteration budget; ``inner_max``/``outer_max`` the
    inner sweep / multiplier update caps with ``inner_tol``/``outer_tol``
    their relative-change stops.
    """

    papr: float = 1.0
    p: int = 22
    eta: float = 0.1
    rho: float = 1.0
    eps_x: float = 1e-3
    eps_r: float = 1e-2
    inner_tol: float = 1e-6
    outer_tol: float = 1e-5
    t_max: int = 20000
    inner_max: int = 100
    outer_max: int = 200
    seed: int = 0

    def __post_init__(self):
        if not (1.0 <= self.papr):
            raise InvalidInputError("papr bound must be >= 1")
        if self.p < 2 or self.p % 2 != 0:
            raise InvalidInputError("surrogate order p must be an even integer >= 2")
        if not (0.0 <= self.eta <= 1.0):
            raise InvalidInputError("eta must lie in [0, 1]")
        if self.rho <= 0:
            raise InvalidInputError("rho must be positive")
        for name in ("eps_x", "eps_r", "inner_tol", "outer_tol"):
            if getattr(self, name) < 0:
                raise InvalidInputError(f"{name} must be >= 0")
        for name in ("t_max", "inner_max", "outer_max"):
            if getattr(self, name) < 1:
                raise InvalidInputError(f"{name} must be >= 1")

    def validate_for_length(self, n: int) -> None:
        if not (1.0 <= self.papr < n):
            raise InvalidInputError(
                f"papr bound {self.papr} outside [1, N) for N={n}"
            )


def papr(x: Sequence) -> float:
    """Peak-to-average power ratio: max |x_n|^2 / (||x||^2 / N)."""
    v = x.values
    mean_power = float(np.sum(np.abs(v) ** 2)) / v.size
    if mean_power <= 0.0:
        raise DegenerateInputError("PAPR undefined for an all-zero sequence")
    return float(np.max(np.abs(v) ** 2) / mean_power)


def gen_chirp(n: int) -> Sequence:
    """Quadratic-phase (LFM) unimodular sequence x_n = exp(j*pi*(n-1)^2/N)."""
    if n < 2:
        raise InvalidInputError("chirp needs N >= 2")
    idx = np.arange(n, dtype=np.float64)
    return Sequence(np.exp(1j * np.pi * idx**2 / n))


def gen_random_polyphase(n: int, seed: int) -> Sequence:
    """Unimodular sequence with i.i.d. uniform random phases (seeded)."""
    if n < 1:
        raise InvalidInputError("need N >= 1")
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return Sequence(np.exp(1j * theta))


def bandstop_fir(bands: TypingSequence[Tuple[float, float]], taps: int) -> np.ndarray:
    """Window-method linear-phase FIR band-stop filter.

    The ideal response is 1 outside the given normalized-frequency bands and
    0 inside; the (complex) impulse response is truncated to ``taps``
    coefficients, centered, and Hamming-windowed.
    """
    if taps < 1 or taps % 2 == 0:
        raise InvalidInputError("taps must be a positive odd integer")
    mid = (taps - 1) // 2
    m = np.arange(taps) - mid
    h = np.zeros(taps, dtype=np.complex128)
    h[mid] = 1.0
    for lo, hi in bands:
        if not (0.0 <= lo <= hi < 1.0):
            raise InvalidInputError(f"stopband [{lo}, {hi}] not inside [0, 1)")
        # ideal complex bandpass over [lo, hi]: integral of e^{j2 pi f m}
        bp = np.empty(taps, dtype=np.complex128)
        nz = m != 0
        bp[nz] = (np.exp(2j * np.pi * hi * m[nz]) - np.exp(2j * np.pi * lo * m[nz])) / (
            2j * np.pi * m[nz]
        )
        bp[~nz] = hi - lo
        h -= bp
    window = np.hamming(taps)
    delta = np.zeros(taps)
    delta[mid] = 1.0
    return delta + (h - delta) * window


def gen_filtered_polyphase(
    n: int, seed: int, mask: SpectralMask, taps: int = 63
) -> Sequence:
    """Random polyphase sequence pushed through a circular band-stop filter.

    With a no-op mask (attenuation <= 0 dB, i.e. the cap allows full energy)
    the filter degenerates to the identity and the output equals the
    energy-normalized input.
    """
    if taps % 2 == 0 or taps < 1:
        raise InvalidInputError("taps must be a positive odd integer")
    if taps >= n:
        raise InvalidInputError("taps must be smaller than the sequence length")
    x = gen_random_polyphase(n, seed).values
    if mask.attenuation_db <= 0.0:
        return Sequence.from_values(x, renormalize=True)
    h = bandstop_fir(mask.bands, taps)
    y = np.fft.ifft(np.fft.fft(x) * np.fft.fft(h, n))
    energy = float(np.sum(np.abs(y) ** 2))
    if energy <= 0.0:
        raise DegenerateInputError("filter annihilated the sequence")
    return Sequence(y * np.sqrt(n / energy))
