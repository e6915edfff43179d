"""Discrete ambiguity-function evaluation, WPSL, ESD, and feasibility checks.

The ambiguity value at delay k and normalized Doppler f (cycles/sample) is
``x^H J_k Diag(p(f)) x`` with ``J_k(n, m) = [n - m == k]`` and
``p(f) = [e^{j2 pi f}, ..., e^{j2 pi N f}]``. Streamed evaluation avoids
materializing the matrix; the ``dense_*`` helpers build it explicitly and
serve as brute-force oracles in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .errors import InvalidInputError
from .waveform import Sequence, SpectralMask, ZoneOfOperation


def af_value(x: Sequence, k: int, f: float) -> complex:
    """Ambiguity value x^H U_{k,f} x for one delay/Doppler bin.

    For k >= 0 this is ``sum_{n=k+1}^{N} conj(x_n) x_{n-k} e^{j2 pi f (n-k)}``
    (1-indexed); negative delays follow from the shift-matrix definition.
    """
    v = x.values
    n = v.size
    k = int(k)
    if abs(k) >= n:
        raise InvalidInputError(f"delay {k} out of range for N={n}")
    if k >= 0:
        lag = np.conj(v[k:]) * v[: n - k]
        pos = np.arange(1, n - k + 1, dtype=np.float64)  # 1-indexed position of x_{n-k}
    else:
        kk = -k
        lag = np.conj(v[: n - kk]) * v[kk:]
        pos = np.arange(kk + 1, n + 1, dtype=np.float64)  # position of x_{n+|k|}
    return complex(np.sum(lag * np.exp(2j * np.pi * f * pos)))


def dense_shift_matrix(n: int, k: int) -> np.ndarray:
    """J_k with ones where (row - col) == k."""
    return np.eye(n, k=-k)


def dense_doppler_matrix(n: int, f: float) -> np.ndarray:
    """Diag(p(f)) with p(f) = [e^{j2 pi f}, ..., e^{j2 pi N f}]."""
    return np.diag(np.exp(2j * np.pi * f * np.arange(1, n + 1)))


def dense_af_matrix(n: int, k: int, f: float) -> np.ndarray:
    """U_{k,f} = J_k @ Diag(p(f)), materialized."""
    return dense_shift_matrix(n, k) @ dense_doppler_matrix(n, f)


def af_value_dense(x: Sequence, k: int, f: float) -> complex:
    """Brute-force oracle for :func:`af_value` via the materialized matrix."""
    v = x.values
    return complex(np.conj(v) @ dense_af_matrix(v.size, k, f) @ v)


def dense_dtft_vector(n: int, f: float) -> np.ndarray:
    """f_s = [1, e^{j2 pi f}, ..., e^{j2 pi f (N-1)}]."""
    return np.exp(2j * np.pi * f * np.arange(n))


def dense_dtft_matrix(n: int, f: float) -> np.ndarray:
    """F_s = f_s f_s^H, the rank-one spectral constraint matrix."""
    fs = dense_dtft_vector(n, f)
    return np.outer(fs, np.conj(fs))


def esd(x: Sequence, f: float) -> float:
    """Energy spectral density |sum_n x_{n+1} e^{-j2 pi f n}|^2 = x^H F_s x."""
    v = x.values
    acc = np.sum(v * np.exp(-2j * np.pi * f * np.arange(v.size)))
    return float(np.abs(acc) ** 2)


def esd_dense(x: Sequence, f: float) -> float:
    """Brute-force oracle for :func:`esd` via the dense F_s matrix."""
    v = x.values
    return float(np.real(np.conj(v) @ dense_dtft_matrix(v.size, f) @ v))


def esd_profile(x: Sequence, freqs: np.ndarray) -> np.ndarray:
    """Vectorized ESD over many normalized frequencies."""
    v = x.values
    phases = np.exp(-2j * np.pi * np.outer(np.asarray(freqs, float), np.arange(v.size)))
    return np.abs(phases @ v) ** 2


def u_max(n: int, attenuation_db: float) -> float:
    """Stopband energy cap N * 10^(-A/10) for attenuation A in dB."""
    if attenuation_db < 0:
        raise InvalidInputError("attenuation must be >= 0 dB")
    return float(n) * 10.0 ** (-0.1 * float(attenuation_db))


@dataclass(frozen=True)
class AFGrid:
    """Ambiguity values over a zone's full delay x Doppler rectangle.

    ``values[i, l]`` holds the bin at delay ``delays[i]`` and Doppler
    ``zone.doppler_values[l]``; ``mainlobe`` is the value at (0, 0), which
    equals N for any energy-N sequence.
    """

    zone: ZoneOfOperation
    delays: np.ndarray
    values: np.ndarray
    mainlobe: complex


def af_grid(x: Sequence, zone: ZoneOfOperation) -> AFGrid:
    """Evaluate the ambiguity function on every bin of the zone rectangle.

    Each bin is computed independently with the same kernel as
    :func:`af_value`, so grid entries equal pointwise calls exactly.
    """
    delays = np.arange(-zone.max_delay, zone.max_delay + 1)
    values = np.empty((delays.size, zone.num_doppler), dtype=np.complex128)
    for i, k in enumerate(delays):
        for l, f in enumerate(zone.doppler_values):
            values[i, l] = af_value(x, int(k), float(f))
    values.flags.writeable = False
    return AFGrid(zone=zone, delays=delays, values=values, mainlobe=af_value(x, 0, 0.0))


def zone_af_values(x: Sequence, zone: ZoneOfOperation) -> np.ndarray:
    """Ambiguity values on the zone rectangle, vectorized (solver hot path).

    Returns a (2r+1, L) array laid out like :class:`AFGrid`. Matches
    :func:`af_value` to floating-point roundoff but not necessarily bit-exactly
    (different summation path).
    """
    v = x.values
    n = v.size
    r = zone.max_delay
    if r >= n:
        raise InvalidInputError(f"max delay {r} out of range for N={n}")
    L = zone.num_doppler
    out = np.empty((2 * r + 1, L), dtype=np.complex128)
    # e^{j 2 pi f m} for every doppler and 1-indexed position m
    phase = np.exp(2j * np.pi * np.outer(zone.doppler_values, np.arange(1, n + 1)))
    for i, k in enumerate(range(-r, r + 1)):
        if k >= 0:
            lag = np.conj(v[k:]) * v[: n - k]
            out[i] = phase[:, : n - k] @ lag
        else:
            kk = -k
            lag = np.conj(v[: n - kk]) * v[kk:]
            out[i] = phase[:, kk:] @ lag
    return out


def zone_weight_matrix(zone: ZoneOfOperation) -> np.ndarray:
    """Per-bin weights on the zone rectangle with the origin bin zeroed."""
    r = zone.max_delay
    w = np.array([zone.weight(k) for k in range(-r, r + 1)], dtype=np.float64)
    mat = np.repeat(w[:, None], zone.num_doppler, axis=1)
    origin = np.flatnonzero(zone.doppler_values == 0.0)
    if origin.size:
        mat[r, origin[0]] = 0.0
    return mat


def wpsl(x: Sequence, zone: ZoneOfOperation) -> float:
    """Weighted peak sidelobe level: max of w_k |AF(k, f)| over the zone."""
    values = zone_af_values(x, zone)
    return float(np.max(zone_weight_matrix(zone) * np.abs(values)))


def wpsl_db(value: float, n: int) -> float:
    """WPSL normalized to the mainlobe: 20 log10(value / N)."""
    if value <= 0.0:
        return float("-inf")
    return 20.0 * np.log10(value / n)


@dataclass(frozen=True)
class FeasibilityReport:
    """Constraint audit of a sequence against a zone, mask, and PAPR bound."""

    energy_error: float
    papr_value: float
    stopband_violations: Tuple[Tuple[float, float, float], ...]
    max_stopband_esd: float
    wpsl: float
    wpsl_db: float


def feasibility_report(
    x: Sequence,
    zone: ZoneOfOperation,
    mask: Optional[SpectralMask],
    papr_bound: float,
) -> FeasibilityReport:
    """Aggregate energy error, PAPR, stopband overshoots, and WPSL.

    A stopband bin is listed as a violation only when its ESD strictly
    exceeds the cap (the constraint is an inequality, so equality passes).
    """
    from .waveform import papr as papr_of

    v = x.values
    n = v.size
    energy_error = abs(float(np.sum(np.abs(v) ** 2)) - n)
    level = wpsl(x, zone)
    violations: List[Tuple[float, float, float]] = []
    max_esd = 0.0
    if mask is not None and mask.num_bins:
        esds = esd_profile(x, mask.frequencies)
        max_esd = float(np.max(esds))
        for f, e in zip(mask.frequencies, esds):
            if e > mask.u_max:
                violations.append((float(f), float(e), mask.u_max))
    return FeasibilityReport(
        energy_error=energy_error,
        papr_value=papr_of(x),
        stopband_violations=tuple(violations),
        max_stopband_esd=max_esd,
        wpsl=level,
        wpsl_db=wpsl_db(level, n),
    )
