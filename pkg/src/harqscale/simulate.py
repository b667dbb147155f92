"""Link-level Monte-Carlo cross-check for the combined-receiver SINR forms.

Model: J unit-norm complex signatures of length m (one slot = m symbols).  In
slot t every active user transmits a common real amplitude a = sqrt(rho*sigma2)
times its signature; the receiver sees the sum plus circularly-symmetric
Gaussian noise (variance sigma2 per complex symbol, sigma2/2 per real
component).  The T slots are combined with maximum-ratio weights (conjugate
amplitudes) and matched-filtered with the desired user's signature; the
estimator splits that statistic into the deterministic desired component
T*rho*sigma2 and a residual (coherent cross-correlation interference plus
filtered noise) whose mean power defines the empirical SINR.

Two signature constructions are provided.  The equi-correlated one pins every
pairwise inner product to exactly eta and is the construction the closed forms
assume (cross-slot interference adds coherently, giving the squared-sum term).
I.i.d. Gaussian signatures are for exploratory runs only: their mean
interference power grows linearly, not quadratically, in the total number of
interfering transmissions, so they are not a validation target for the
chase-combining formula.

Determinism: every trial derives its own child seed from the root seed, and
the reduction is numpy's pairwise summation over the per-trial array, so
results are bitwise identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DesiredInactive, DimensionTooSmall, UnsupportedCombination
from .params import Scheme


@dataclass(frozen=True)
class SignatureSet:
    """J unit-norm signatures of length m, rows of ``signatures``."""

    m: int
    signatures: np.ndarray  # (J, m) complex
    construction: str

    @property
    def J(self) -> int:
        return self.signatures.shape[0]


def make_equicorrelated_signatures(m: int, J: int, eta: float) -> SignatureSet:
    """Signatures with every pairwise inner product exactly eta.

    S_j = sqrt(1-eta)*e_j + sqrt(eta)*u over the orthonormal set
    {e_1..e_J, u}, which needs m >= J+1 dimensions.
    """
    if not 0.0 <= eta < 1.0:
        raise ValueError(f"eta must be in [0, 1), got {eta!r}")
    if m < J + 1:
        raise DimensionTooSmall(f"m={m} < J+1={J + 1} cannot host {J} equi-correlated signatures")
    sigs = np.zeros((J, m), dtype=complex)
    spike, common = math.sqrt(1.0 - eta), math.sqrt(eta)
    for j in range(J):
        sigs[j, j] = spike
    sigs[:, J] = common
    return SignatureSet(m, sigs, f"equicorrelated(eta={eta!r})")


def make_random_signatures(m: int, J: int, seed: int) -> SignatureSet:
    """I.i.d. complex-Gaussian signatures, normalized to unit norm."""
    if m < 1 or J < 1:
        raise ValueError(f"need m >= 1 and J >= 1, got m={m!r}, J={J!r}")
    rng = np.random.default_rng(seed)
    sigs = rng.standard_normal((J, m)) + 1j * rng.standard_normal((J, m))
    sigs /= np.linalg.norm(sigs, axis=1, keepdims=True)
    return SignatureSet(m, sigs, f"gaussian(seed={seed!r})")


@dataclass(frozen=True)
class FrameRealization:
    """One Monte-Carlo draw: who transmitted what, the noise, the sum."""

    active_sets: tuple[tuple[int, ...], ...]
    amplitudes: tuple[np.ndarray, ...]  # per slot, aligned with active_sets
    noise: tuple[np.ndarray, ...]       # per slot, m complex samples
    received: tuple[np.ndarray, ...]    # signatures.T @ amplitudes + noise


def make_frame(
    sigs: SignatureSet,
    rho: float,
    sigma2: float,
    active_per_slot: Sequence[Sequence[int]],
    rng: np.random.Generator,
) -> FrameRealization:
    """Draw one frame: common real amplitude sqrt(rho*sigma2) per active user."""
    a = math.sqrt(rho * sigma2)
    scale = math.sqrt(sigma2 / 2.0)
    sets, amps, noise, received = [], [], [], []
    for slot in active_per_slot:
        act = tuple(int(j) for j in slot)
        if not all(0 <= j < sigs.J for j in act):
            raise ValueError(f"active set {act!r} has indices outside 0..{sigs.J - 1}")
        a_t = np.full(len(act), a, dtype=complex)
        z_t = (rng.standard_normal(sigs.m) + 1j * rng.standard_normal(sigs.m)) * scale
        y_t = sigs.signatures[list(act)].T @ a_t + z_t
        sets.append(act)
        amps.append(a_t)
        noise.append(z_t)
        received.append(y_t)
    return FrameRealization(tuple(sets), tuple(amps), tuple(noise), tuple(received))


@dataclass(frozen=True)
class SinrEstimate:
    mean: float            # empirical SINR, linear
    half_width_95: float   # normal-approximation 95% half-width on the mean
    trials: int
    seed: int


def simulate_cc_noma_sinr(
    sigs: SignatureSet,
    rho: float,
    sigma2: float,
    T: int,
    active_per_slot: Sequence[Sequence[int]],
    desired: int,
    trials: int,
    seed: int,
    workers: int = 1,
) -> SinrEstimate:
    """Estimate the post-combining matched-filter SINR of the desired user.

    Per trial: fresh noise, received slots, MRC across the T slots, matched
    filter with the desired signature.  The desired component of that output
    is the trial-independent T*rho*sigma2; everything else (coherent
    cross-correlations plus filtered noise) is the residual.  The estimate is
    (T*rho*sigma2)^2 over the mean residual power, with a delta-method
    confidence half-width.
    """
    if len(active_per_slot) != T:
        raise ValueError(f"active_per_slot has {len(active_per_slot)} slots, expected T={T}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers!r}")
    active = []
    for t, slot in enumerate(active_per_slot):
        act = [int(j) for j in slot]
        if desired not in act:
            raise DesiredInactive(f"desired user {desired} not active in slot {t + 1}")
        if not all(0 <= j < sigs.J for j in act):
            raise ValueError(f"slot {t + 1} active set has indices outside 0..{sigs.J - 1}")
        active.append(act)

    a2 = rho * sigma2
    a = math.sqrt(a2)
    scale = math.sqrt(sigma2 / 2.0)
    m = sigs.m
    desired_conj = np.conj(sigs.signatures[desired])
    # Noise-free received slot = a * (sum of active signatures).
    slot_sums = np.stack([sigs.signatures[act].sum(axis=0) for act in active])
    signal = T * a2  # desired part of the combined matched-filter output

    children = np.random.SeedSequence(seed).spawn(trials)
    res_power = np.empty(trials, dtype=float)

    def run_range(lo: int, hi: int) -> None:
        for i in range(lo, hi):
            rng = np.random.default_rng(children[i])
            z = (rng.standard_normal((T, m)) + 1j * rng.standard_normal((T, m))) * scale
            received = a * slot_sums + z
            combined = a * (received @ desired_conj).sum()
            residual = combined - signal
            res_power[i] = residual.real**2 + residual.imag**2

    if workers == 1:
        run_range(0, trials)
    else:
        bounds = [trials * w // workers for w in range(workers + 1)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(run_range, lo, hi)
                for lo, hi in zip(bounds[:-1], bounds[1:])
                if lo < hi
            ]
            for fut in futures:
                fut.result()

    mean_res = float(np.sum(res_power)) / trials
    mean_sinr = signal * signal / mean_res
    if trials > 1:
        var_res = float(np.sum((res_power - mean_res) ** 2)) / (trials - 1)
        half_width = 1.96 * signal * signal * math.sqrt(var_res / trials) / mean_res**2
    else:
        half_width = 0.0
    return SinrEstimate(mean_sinr, half_width, trials, seed)


def analytic_sinr(
    scheme: Scheme,
    rho: float,
    T: int,
    per_slot_counts: Sequence[int],
    eta: float = 0.0,
) -> float:
    """Closed-form post-combining SINR for chase combining.

    Non-orthogonal signatures: interference from the (sum_t J_t - T)
    non-desired transmissions adds coherently, hence the squared term scaled
    by eta^2.  Orthogonal resources leak only through the shared slot budget,
    hence the linear term.
    """
    counts = [int(c) for c in per_slot_counts]
    if len(counts) != T:
        raise ValueError(f"per_slot_counts has {len(counts)} slots, expected T={T}")
    if any(c < 1 for c in counts):
        raise ValueError(f"every slot needs >= 1 user, got {counts!r}")
    extra = float(sum(counts) - T)
    if scheme is Scheme.CC_NOMA:
        return rho * T**2 / (T + rho * eta**2 * extra**2)
    if scheme is Scheme.CC_OMA:
        return rho * T**2 / (T + rho * extra)
    raise UnsupportedCombination(f"no combined-receiver SINR form for {scheme.value}")


def verify_cc_oma_noise_expansion(
    amplitude_samples: float | Sequence[float],
    per_slot_counts: Sequence[int],
    sigma2: float,
    trials: int,
    seed: int,
) -> float:
    """Check the orthogonal-combining noise-power expansion on sampled phases.

    The effective noise power after combining expands into pairwise amplitude
    products plus the filtered-noise term:

        P_N = sum_t sum_{j' != j} |a_t|^2 |a_t|^2  +  sigma2 * sum_t |a_t|^2.

    This draws i.i.d. uniform phases for every (slot, user) amplitude -- which
    satisfies the zero-mean cross-user / cross-slot product assumptions the
    expansion relies on -- evaluates the interference-plus-noise power per
    trial, and returns the relative deviation of the sample mean from the
    closed form.  ``amplitude_samples`` is a common magnitude (scalar) or one
    magnitude per slot.
    """
    counts = [int(c) for c in per_slot_counts]
    if any(c < 1 for c in counts):
        raise ValueError(f"every slot needs >= 1 user, got {counts!r}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    T = len(counts)
    amps = np.broadcast_to(np.asarray(amplitude_samples, dtype=float), (T,))

    noise_term = sigma2 * float(np.sum(amps**2))
    expected = float(np.sum((np.array(counts) - 1) * amps**4)) + noise_term

    rng = np.random.default_rng(seed)
    cross = np.zeros(trials, dtype=complex)
    for t in range(T):
        n_int = counts[t] - 1
        if n_int == 0:
            continue
        own_phase = rng.uniform(0.0, 2.0 * math.pi, trials)
        other_phase = rng.uniform(0.0, 2.0 * math.pi, (trials, n_int))
        own = amps[t] * np.exp(1j * own_phase)
        others = (amps[t] * np.exp(-1j * other_phase)).sum(axis=1)
        cross += own * others
    sampled = cross.real**2 + cross.imag**2 + noise_term
    return abs(float(np.mean(sampled)) - expected) / expected
