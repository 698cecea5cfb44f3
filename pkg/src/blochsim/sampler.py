"""Weighted symmetry breaking by uniform sampling of hidden interaction points.

Every point lambda of the measurement simplex stands for one potential
measurement interaction. Sampling lambda uniformly (Lebesgue) and asking
which sub-region A_i contains it selects outcome i; because the region
measures are proportional to the Born probabilities, the outcome
frequencies converge to them at the binomial rate.

Classification rule. Writing lambda and the on-simplex state point r_par
in barycentric coordinates b and p, membership lambda in A_i (the
sub-simplex over {n_j : j != i} union {r_par}) is equivalent to

    b_i / p_i = min_j b_j / p_j,

with b_j / p_j = +inf when p_j = 0: expanding lambda = c0 r_par +
sum_{j != i} c_j n_j gives c0 = b_i / p_i and c_j = b_j - (b_i / p_i) p_j,
all nonnegative exactly at the argmin. This O(N) rule is the production
path; :func:`geometric_hit_count_oracle` re-derives membership by
brute-force convex-coefficient solves over the embedded vertices and is
kept as an independent cross-check, never replaced by the shortcut.

Ties (boundary lambdas, measure zero) break to the smallest index, and
outcomes with p_i = 0 can never be selected, so their frequency is
exactly zero.

Trial loops may be fanned out over workers holding distinct (seed,
stream) pairs; merge the per-worker reports with :func:`merge_reports`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import DensityMatrix
from .errors import ContractError, DimensionError, GeometryError, OracleInconsistencyError
from .generators import build_generators
from .simplex import (
    HULL_TOL,
    Barycentric,
    MeasurementBasis,
    MeasurementSimplex,
    basis_to_simplex,
    born_probabilities,
)

#: A sampled interaction point; structurally identical to barycentric weights.
HiddenInteraction = Barycentric

#: Coefficient tolerance for the brute-force membership solve.
MEMBER_TOL = 1e-10
#: Two classifications within this band of a region boundary count as a tie.
TIE_BAND = 1e-10

_CHUNK = 1 << 18


@dataclass(frozen=True)
class RngSeed:
    """A reproducible random stream: same (seed, stream) gives the same draws.

    Distinct stream ids on one seed yield statistically independent
    sub-streams for parallel workers.
    """

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise ContractError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if int(self.stream) < 0:
            raise ContractError(f"stream id must be nonnegative, got {self.stream!r}")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.default_rng(ss)


@dataclass(frozen=True)
class TrialReport:
    """Statistics of a repeated-measurement run.

    ``exact_probs`` are the Born probabilities (per outcome, or per
    partition class for degenerate runs), ``counts`` the observed tallies.
    ``chi_square`` is computed against the exact probabilities over the
    entries with positive probability; ``max_abs_deviation`` is the
    largest |frequency - probability| over all entries.
    """

    n_trials: int
    exact_probs: Barycentric
    counts: np.ndarray
    empirical_freqs: np.ndarray
    chi_square: float
    max_abs_deviation: float

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        freqs = np.asarray(self.empirical_freqs, dtype=np.float64)
        if counts.shape != (self.exact_probs.dim,) or freqs.shape != counts.shape:
            raise DimensionError("counts/frequencies do not match the probability vector")
        if int(counts.sum()) != self.n_trials:
            raise ContractError(
                f"counts sum to {int(counts.sum())}, expected n_trials = {self.n_trials}"
            )
        if not np.array_equal(freqs, counts / self.n_trials):
            raise ContractError("empirical_freqs must equal counts / n_trials")
        counts.setflags(write=False)
        freqs.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "empirical_freqs", freqs)


@dataclass(frozen=True)
class OracleReport:
    """Hit statistics of the brute-force membership oracle.

    ``counts``/``fractions`` are per sub-region; ``ties`` counts samples
    within the 1e-10 band of a region boundary (under either rule);
    ``disagreements`` counts non-tie samples where the membership solve
    and the ratio-argmin rule picked different regions (always 0 unless
    the geometry is buggy).
    """

    n_samples: int
    counts: np.ndarray
    fractions: np.ndarray
    ties: int
    disagreements: int

    @property
    def agreements(self) -> int:
        return self.n_samples - self.disagreements

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        if int(counts.sum()) != self.n_samples:
            raise ContractError("oracle counts must sum to the sample count")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)
        fr = np.asarray(self.fractions, dtype=np.float64)
        fr.setflags(write=False)
        object.__setattr__(self, "fractions", fr)


def sample_lambda(n: int, rng: np.random.Generator) -> HiddenInteraction:
    """One interaction point, Lebesgue-uniform on the (n-1)-simplex.

    Draws n unit-rate exponentials and normalizes by their sum (the
    Dirichlet(1, ..., 1) construction); rejection-free in any dimension.
    """
    if n < 2:
        raise DimensionError(f"simplex sampling needs n >= 2, got {n}")
    e = rng.exponential(size=n)
    return Barycentric(e / e.sum())


def _classify_batch(lam: np.ndarray, p: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(p > 0.0, lam / p, np.inf)
    return np.argmin(ratios, axis=-1)


def classify(lam: HiddenInteraction, p: Barycentric) -> int:
    """Index of the sub-region A_i containing lambda, given the state point p.

    Implements i = argmin_j b_j / p_j with the +inf convention for
    p_j = 0, ties to the smallest index. When p is a vertex (one weight
    equal to 1) the result is deterministically that outcome. The
    sum-to-one contract on p is enforced by the Barycentric type.
    """
    if lam.dim != p.dim:
        raise DimensionError(f"lambda has dim {lam.dim} but p has dim {p.dim}")
    return int(_classify_batch(lam.weights, p.weights))


def measure_once(
    d: DensityMatrix, b: MeasurementBasis, rng: np.random.Generator
) -> tuple[int, DensityMatrix]:
    """One collapse: sample lambda, classify, return (outcome, |a_i><a_i|)."""
    p = born_probabilities(d, b)
    lam = sample_lambda(d.dim, rng)
    i = classify(lam, p)
    return i, b.projector(i)


def validate_partition(partition, n: int) -> tuple[tuple[int, ...], ...]:
    """Check that partition is a set partition of range(n); returns it as tuples."""
    try:
        blocks = tuple(tuple(int(i) for i in blk) for blk in partition)
    except TypeError as exc:
        raise ContractError(f"partition must be an iterable of index blocks: {exc}") from exc
    if not blocks or any(not blk for blk in blocks):
        raise ContractError("partition must consist of nonempty blocks")
    seen: set[int] = set()
    for blk in blocks:
        for i in blk:
            if not 0 <= i < n:
                raise ContractError(f"partition index {i} out of range for {n} outcomes")
            if i in seen:
                raise ContractError(f"partition has duplicate index {i}")
            seen.add(i)
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        raise ContractError(f"partition does not cover outcomes {missing}")
    return blocks


def _block_map(blocks: tuple[tuple[int, ...], ...], n: int) -> np.ndarray:
    mapping = np.empty(n, dtype=np.int64)
    for k, blk in enumerate(blocks):
        for i in blk:
            mapping[i] = k
    return mapping


def measure_degenerate(
    d: DensityMatrix,
    b: MeasurementBasis,
    partition,
    rng: np.random.Generator,
) -> tuple[int, DensityMatrix]:
    """One degenerate collapse: fused sub-regions, Lueders post-state.

    The sub-regions of the outcomes in one partition block are fused, so
    class K occurs with probability sum_{i in K} p_i, and the post-state
    is P_K D P_K / Tr(P_K D P_K) with P_K the block projector. A pure
    input yields a pure post-state (back to the sphere surface). Classes
    of zero probability are never sampled, so the normalization trace is
    always positive.
    """
    blocks = validate_partition(partition, d.dim)
    p = born_probabilities(d, b)
    lam = sample_lambda(d.dim, rng)
    i = classify(lam, p)
    k = int(_block_map(blocks, d.dim)[i])

    members = np.asarray(blocks[k], dtype=np.intp)
    kets = b.kets[members]
    proj = kets.T @ kets.conj()
    m = proj @ d.entries @ proj
    weight = float(np.trace(m).real)
    return k, DensityMatrix(m / weight)


def _report_from_counts(n_trials: int, probs: Barycentric, counts: np.ndarray) -> TrialReport:
    p = probs.weights
    freqs = counts / n_trials
    positive = p > 0.0
    expected = n_trials * p[positive]
    chi_square = float(np.sum((counts[positive] - expected) ** 2 / expected))
    max_dev = float(np.max(np.abs(freqs - p)))
    return TrialReport(
        n_trials=n_trials,
        exact_probs=probs,
        counts=counts,
        empirical_freqs=freqs,
        chi_square=chi_square,
        max_abs_deviation=max_dev,
    )


def run_trials(
    d: DensityMatrix,
    b: MeasurementBasis,
    n_trials: int,
    seed: RngSeed,
    partition=None,
) -> TrialReport:
    """Repeat the measurement n_trials times; deterministic given the seed.

    With a partition the outcomes are tallied per fused class; a
    partition of singletons consumes the identical sample stream and
    therefore reproduces the non-degenerate tallies exactly.
    """
    if n_trials < 1:
        raise ContractError(f"n_trials must be >= 1, got {n_trials}")
    p = born_probabilities(d, b)
    pw = p.weights
    k = d.dim
    rng = seed.generator()

    counts = np.zeros(k, dtype=np.int64)
    remaining = n_trials
    while remaining > 0:
        m = min(remaining, _CHUNK)
        draws = rng.exponential(size=(m, k))
        lam = draws / draws.sum(axis=1, keepdims=True)
        counts += np.bincount(_classify_batch(lam, pw), minlength=k)
        remaining -= m

    if partition is None:
        return _report_from_counts(n_trials, p, counts)

    blocks = validate_partition(partition, k)
    class_counts = np.array([counts[np.asarray(blk, dtype=np.intp)].sum() for blk in blocks])
    class_probs = np.array([pw[np.asarray(blk, dtype=np.intp)].sum() for blk in blocks])
    return _report_from_counts(n_trials, Barycentric(class_probs), class_counts)


def merge_reports(reports) -> TrialReport:
    """Combine worker reports for one experiment by summing counts."""
    reports = list(reports)
    if not reports:
        raise ContractError("cannot merge an empty collection of reports")
    probs = reports[0].exact_probs
    for r in reports[1:]:
        if not np.array_equal(r.exact_probs.weights, probs.weights):
            raise ContractError("reports to merge must share identical exact probabilities")
    counts = np.sum([r.counts for r in reports], axis=0)
    total = int(sum(r.n_trials for r in reports))
    return _report_from_counts(total, probs, counts)


def geometric_hit_count_oracle(
    rpar: Barycentric,
    n_samples: int,
    rng: np.random.Generator,
    simplex: MeasurementSimplex | None = None,
) -> OracleReport:
    """Brute-force hit counts over the sub-regions, bypassing the argmin rule.

    Each uniform lambda is embedded in Bloch space and tested against
    every candidate region A_i by solving for the convex coefficients
    over that region's actual vertex set {n_j : j != i} union {r_par};
    a region accepts when all coefficients are >= -1e-10. Exactly one
    region must accept away from boundaries; zero acceptances, or two
    regions claiming the sample strictly (beyond the tie band), raise
    OracleInconsistencyError. The same lambda stream is also classified
    with the production argmin rule and disagreements outside the tie
    band are counted.

    ``simplex`` defaults to the canonical-basis simplex of the matching
    dimension; the statistics are affine-invariant, so any simplex of the
    right dimension gives the same law.
    """
    if n_samples < 1:
        raise ContractError(f"n_samples must be >= 1, got {n_samples}")
    pw = rpar.weights
    if float(pw.min()) <= 1e-12:
        raise GeometryError("oracle requires r_par strictly inside the simplex")
    n = rpar.dim
    if simplex is None:
        simplex = basis_to_simplex(MeasurementBasis.canonical(n), build_generators(n))
    if simplex.dim != n:
        raise DimensionError(f"simplex has dim {simplex.dim} but rpar has dim {n}")

    verts = simplex.vertices
    x_par = pw @ verts
    mats = []
    pinvs = []
    for i in range(n):
        cols = [verts[j] for j in range(n) if j != i] + [x_par]
        m_aug = np.vstack([np.column_stack(cols), np.ones((1, n))])
        mats.append(m_aug)
        pinvs.append(np.linalg.pinv(m_aug))

    counts = np.zeros(n, dtype=np.int64)
    ties = 0
    disagreements = 0
    remaining = n_samples
    while remaining > 0:
        m = min(remaining, _CHUNK)
        draws = rng.exponential(size=(m, n))
        lam = draws / draws.sum(axis=1, keepdims=True)
        x_aug = np.hstack([lam @ verts, np.ones((m, 1))])

        accept = np.empty((m, n), dtype=bool)
        min_coeff = np.empty((m, n))
        for i in range(n):
            coeffs = x_aug @ pinvs[i].T
            resid = np.max(np.abs(coeffs @ mats[i].T - x_aug), axis=1)
            min_coeff[:, i] = coeffs.min(axis=1)
            accept[:, i] = (min_coeff[:, i] >= -MEMBER_TOL) & (resid <= HULL_TOL)

        n_accept = accept.sum(axis=1)
        if np.any(n_accept == 0):
            raise OracleInconsistencyError(
                "a sample point was claimed by no region; geometry is inconsistent"
            )
        strict = accept & (min_coeff > TIE_BAND)
        if np.any(strict.sum(axis=1) > 1):
            raise OracleInconsistencyError(
                "a sample point was claimed strictly by several regions; geometry is inconsistent"
            )
        member = np.argmax(accept, axis=1)

        ratios = np.where(pw > 0.0, lam / pw, np.inf)
        argmin = np.argmin(ratios, axis=1)
        two_smallest = np.partition(ratios, 1, axis=1)
        tie_rows = (n_accept > 1) | (two_smallest[:, 1] - two_smallest[:, 0] <= TIE_BAND)

        counts += np.bincount(member, minlength=n)
        ties += int(tie_rows.sum())
        disagreements += int(np.sum(~tie_rows & (member != argmin)))
        remaining -= m

    return OracleReport(
        n_samples=n_samples,
        counts=counts,
        fractions=counts / n_samples,
        ties=ties,
        disagreements=disagreements,
    )
