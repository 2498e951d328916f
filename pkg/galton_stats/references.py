"""
references.py - Reference laws (binomial, discretised normal, block sums) and goodness-of-fit
"""
import logging
import math
from dataclasses import dataclass
from numbers import Integral
from typing import Dict, List, Mapping, Optional, Sequence, Union

import numpy as np
from scipy import stats

logger = logging.getLogger(__name__)

# chi-square flag level
SIGNIFICANCE = 0.001


@dataclass(frozen=True)
class ReferenceDistribution:
    """
    A law over integer values.

    Attributes:
        kind: "binomial", "normal", "block-sum" or "exact"
        mean: Expected value
        variance: Variance
        table: Value -> probability for finite laws; None for the normal
    """

    kind: str
    mean: float
    variance: float
    table: Optional[Dict[int, float]] = None

    def support(self) -> List[int]:
        if self.table is not None:
            return sorted(self.table)
        spread = 6 * math.sqrt(self.variance)
        return list(range(math.floor(self.mean - spread), math.ceil(self.mean + spread) + 1))

    def probabilities(self, support: Sequence[int]) -> np.ndarray:
        """
        Probabilities of each value in `support`.

        Finite laws read their table (0 outside it). The normal law integrates
        its density over [k - 1/2, k + 1/2] and renormalises over the support.
        """
        support = list(support)
        if self.table is not None:
            return np.array([self.table.get(k, 0.0) for k in support], dtype=float)

        sigma = math.sqrt(self.variance)
        edges = np.array(support, dtype=float)
        masses = stats.norm.cdf(edges + 0.5, self.mean, sigma) - stats.norm.cdf(edges - 0.5, self.mean, sigma)
        total = masses.sum()
        return masses / total if total > 0 else masses


def binomial_reference(levels: int, p: float) -> ReferenceDistribution:
    """Binomial(n, p) over 0..n."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Success probability must lie in [0, 1], got {p}")
    if levels < 0:
        raise ValueError(f"Trial count must be non-negative, got {levels}")
    pmf = stats.binom.pmf(np.arange(levels + 1), levels, p)
    table = {k: float(pmf[k]) for k in range(levels + 1)}
    return ReferenceDistribution("binomial", levels * p, levels * p * (1 - p), table)


def normal_reference(mean: float, variance: float) -> ReferenceDistribution:
    if variance <= 0:
        raise ValueError(f"Normal variance must be positive, got {variance}")
    return ReferenceDistribution("normal", float(mean), float(variance))


def distribution_reference(pmf: Mapping[int, float], kind: str = "exact") -> ReferenceDistribution:
    """Wrap a value -> probability map (renormalised) as a reference law."""
    total = sum(pmf.values())
    if total <= 0:
        raise ValueError("Distribution has no mass")
    table = {int(k): float(v) / total for k, v in sorted(pmf.items())}
    mean = sum(k * p for k, p in table.items())
    variance = sum((k - mean) ** 2 * p for k, p in table.items())
    return ReferenceDistribution(kind, mean, variance, table)


def block_sum_reference(pmf: Mapping[int, float], block_size: int) -> ReferenceDistribution:
    """
    Exact law of the sum of `block_size` independent draws from `pmf`.

    Args:
        pmf: Value -> probability over non-negative integers
        block_size: Number of summed draws (>= 1)
    """
    if block_size < 1:
        raise ValueError(f"Block size must be positive, got {block_size}")
    if any(k < 0 for k in pmf):
        raise ValueError("Block sums need non-negative values")
    base = np.zeros(max(pmf) + 1)
    for k, p in pmf.items():
        base[k] += p
    base /= base.sum()

    law = np.array([1.0])
    for _ in range(block_size):
        law = np.convolve(law, base)
    return distribution_reference({k: float(p) for k, p in enumerate(law)}, kind="block-sum")


@dataclass(frozen=True)
class ComparisonResult:
    """
    Outcome of comparing observed data to a reference law.

    Attributes:
        total_variation: Half the L1 distance between the two laws
        chi_square: Pearson statistic, or None when no counts were observed
        degrees_of_freedom: Pooled bins minus one
        critical_value: Chi-square quantile at 1 - SIGNIFICANCE
        p_value: Upper tail probability of the statistic
        flagged: Statistic above the critical value
    """

    total_variation: float
    chi_square: Optional[float] = None
    degrees_of_freedom: Optional[int] = None
    critical_value: Optional[float] = None
    p_value: Optional[float] = None
    flagged: bool = False


def _pool_empty_bins(expected: np.ndarray, observed: np.ndarray):
    """Merge each zero-expectation bin into its nearest non-empty neighbour (left on ties)."""
    live = np.flatnonzero(expected > 0)
    if live.size == 0:
        raise ValueError("Reference assigns no mass to the compared support")
    pooled_observed = observed[live].astype(float)
    for i in np.flatnonzero(expected <= 0):
        nearest = int(np.argmin(np.abs(live - i)))
        pooled_observed[nearest] += observed[i]
    return expected[live], pooled_observed


def compare(
    reference: ReferenceDistribution,
    observed: Union[ReferenceDistribution, Mapping[int, Union[int, float]]],
    support: Optional[Sequence[int]] = None,
) -> ComparisonResult:
    """
    Goodness of fit of observed data against a reference law.

    Args:
        reference: Expected law
        observed: Value -> count (enables chi-square), value -> probability,
            or another reference law
        support: Values to compare over; defaults to the union of both supports

    Returns:
        ComparisonResult; chi-square fields stay None unless counts were given
    """
    if isinstance(observed, ReferenceDistribution):
        other = observed
        keys = set(other.support())
        is_counts = False
    else:
        other = None
        keys = set(observed)
        is_counts = all(isinstance(v, Integral) for v in observed.values())

    if support is None:
        keys |= set(reference.support()) if reference.table is not None else set()
        if not keys:
            raise ValueError("Nothing to compare")
        support = list(range(min(keys), max(keys) + 1))
    support = list(support)

    expected_p = reference.probabilities(support)
    if other is not None:
        observed_raw = other.probabilities(support)
    else:
        observed_raw = np.array([observed.get(k, 0) for k in support], dtype=float)
    total = observed_raw.sum()
    if total <= 0:
        raise ValueError("Observed data has no mass on the compared support")
    observed_p = observed_raw / total

    tv = 0.5 * float(np.abs(expected_p - observed_p).sum())
    if not is_counts:
        return ComparisonResult(total_variation=tv)

    expected, pooled = _pool_empty_bins(expected_p / expected_p.sum() * total, observed_raw)
    chi_square = float(((pooled - expected) ** 2 / expected).sum())
    dof = max(len(expected) - 1, 1)
    critical = float(stats.chi2.ppf(1 - SIGNIFICANCE, dof))
    p_value = float(stats.chi2.sf(chi_square, dof))
    flagged = chi_square > critical
    if flagged:
        logger.warning(f"Chi-square {chi_square:.2f} exceeds critical value {critical:.2f} (dof={dof})")
    return ComparisonResult(tv, chi_square, dof, critical, p_value, flagged)
