"""Diagonal sequence construction that defeats a fixed estimation scheme.

Any scheme mapping finite prefixes to step densities can be driven level
by level: at level k the sequence is extended with a certified
low-discrepancy realization of the level-k even-block density until the
scheme's estimate comes within 1/4 of that target, the running empirical
measure is within 1/(k+1) of it over every interval, and the prefix is
long enough to dominate the next level's certified threshold.  Estimates
at consecutive checkpoints are then at least 1/2 apart in L1, while the
full sequence keeps a uniform limiting density.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .budget import VariationBudget
from .empirical import SampleBuffer, empirical_measure, histogram, sup_interval_discrepancy
from .estimator import EstimatorConfig, estimate
from .evaluation import l1_step
from .generators import certified_index, rademacher_density, stratified_rademacher_source
from .step import StepDensity

#: Required closeness of the scheme's estimate to the level target.
L1_THRESHOLD = 0.25


@dataclass(frozen=True)
class LevelCertificate:
    """Measured values closing one level of the construction."""

    level: int
    n: int
    l1_to_target: float
    discrepancy: float
    m_next: int

    @property
    def discrepancy_threshold(self) -> float:
        return 1.0 / (self.level + 1)

    @property
    def min_n(self) -> int:
        return self.level * self.m_next

    def satisfied(self) -> bool:
        return (
            self.l1_to_target <= L1_THRESHOLD
            and self.discrepancy <= self.discrepancy_threshold
            and self.n >= self.min_n
        )


@dataclass(frozen=True)
class AdversaryTranscript:
    """The constructed sequence plus per-level certificates."""

    scheme: str
    levels: int
    step_budget: int
    complete: bool
    failure: str | None
    checkpoints: tuple
    certificates: tuple
    sequence: np.ndarray | None

    def to_json(self, sequence_cap=None) -> str:
        seq = None
        length = None
        if self.sequence is not None:
            length = int(self.sequence.size)
            if sequence_cap is None or length <= sequence_cap:
                seq = list(map(float, self.sequence))
        return json.dumps(
            {
                "format_version": 1,
                "scheme": self.scheme,
                "levels": self.levels,
                "step_budget": self.step_budget,
                "complete": self.complete,
                "failure": self.failure,
                "checkpoints": [[int(k), int(n)] for k, n in self.checkpoints],
                "certificates": [
                    {
                        "level": c.level,
                        "n": c.n,
                        "l1_to_target": c.l1_to_target,
                        "l1_threshold": L1_THRESHOLD,
                        "discrepancy": c.discrepancy,
                        "discrepancy_threshold": c.discrepancy_threshold,
                        "m_next": c.m_next,
                        "min_n": c.min_n,
                    }
                    for c in self.certificates
                ],
                "sequence_length": length,
                "sequence": seq,
            }
        )

    @classmethod
    def from_json(cls, text) -> "AdversaryTranscript":
        obj = json.loads(text)
        certs = tuple(
            LevelCertificate(
                level=c["level"],
                n=c["n"],
                l1_to_target=c["l1_to_target"],
                discrepancy=c["discrepancy"],
                m_next=c["m_next"],
            )
            for c in obj["certificates"]
        )
        seq = obj.get("sequence")
        return cls(
            scheme=obj["scheme"],
            levels=obj["levels"],
            step_budget=obj["step_budget"],
            complete=obj["complete"],
            failure=obj.get("failure"),
            checkpoints=tuple((k, n) for k, n in obj["checkpoints"]),
            certificates=certs,
            sequence=None if seq is None else np.asarray(seq, dtype=np.float64),
        )


class AdversaryError(RuntimeError):
    """A level's conditions were not met within the step budget.  Carries
    the partial transcript for inspection."""

    def __init__(self, message, transcript):
        super().__init__(message)
        self.transcript = transcript


# -- schemes under attack -------------------------------------------------------


def phi_star_scheme(alpha, depth="auto", level_cap=None):
    """The adaptive estimator itself, as a prefix -> density callable."""
    from .estimator import default_depth
    from .dyadic import LEVEL_CAP

    budget = alpha if isinstance(alpha, VariationBudget) else VariationBudget.parse(str(alpha))
    if depth == "auto":
        schedule = default_depth
    else:
        fixed = int(depth)
        schedule = lambda n: fixed
    config = EstimatorConfig(
        budget=budget,
        depth_schedule=schedule,
        level_cap=LEVEL_CAP if level_cap is None else int(level_cap),
    )

    def scheme(prefix):
        return estimate(SampleBuffer(prefix), config).density

    scheme.descriptor = f"phi-star:{budget.descriptor}"
    return scheme


def fixed_level_scheme(k):
    """A histogram pinned at one partition level, as a scheme callable."""
    k = int(k)

    def scheme(prefix):
        return histogram(SampleBuffer(prefix), k)

    scheme.descriptor = f"fixed-k:{k}"
    return scheme


# -- the construction -----------------------------------------------------------


def adversarial_sequence(scheme, K, step_budget=10**6, growth=1.3) -> AdversaryTranscript:
    """Drive ``scheme`` through K target levels, certifying each one.

    ``scheme`` maps a float array (the prefix) to a StepDensity.  Raises
    AdversaryError with a partial transcript when a level's conditions are
    not met within ``step_budget`` appended terms; if the empirical
    conditions hold but the estimate never approaches the level target,
    the failure is reported as the scheme not being consistent for that
    target, which is itself informative.
    """
    K = int(K)
    if K < 2:
        raise ValueError("need at least 2 levels")
    step_budget = int(step_budget)
    if step_budget < 1:
        raise ValueError("step budget must be positive")
    name = getattr(scheme, "descriptor", getattr(scheme, "__name__", "scheme"))

    buffer = SampleBuffer()
    checkpoints = []
    certificates = []

    def transcript(complete, failure):
        return AdversaryTranscript(
            scheme=name,
            levels=K,
            step_budget=step_budget,
            complete=complete,
            failure=failure,
            checkpoints=tuple(checkpoints),
            certificates=tuple(certificates),
            sequence=buffer.arrival_view(),
        )

    for k in range(1, K + 1):
        target = rademacher_density(k)
        source = stratified_rademacher_source(k)
        m_next = certified_index(1.0 / (k + 2))
        level_start = buffer.n
        n_target = max(buffer.n + 1, k * m_next, 2 ** (k + 2))
        last = None
        while True:
            if n_target - level_start > step_budget:
                last_ok = last is not None and last[0] and not last[1]
                if last_ok:
                    msg = (
                        f"scheme-not-consistent-for-target-level-{k}: empirical conditions "
                        f"hold but the estimate stayed {last[2]:.3f} > {L1_THRESHOLD} from "
                        f"the level-{k} target within {step_budget} steps"
                    )
                else:
                    msg = f"step budget {step_budget} exhausted at level {k}"
                raise AdversaryError(msg, transcript(False, msg))
            buffer.extend(source.take(n_target - buffer.n))
            n = buffer.n
            disc = float(sup_interval_discrepancy(buffer, target))
            empirical_ok = disc <= 1.0 / (k + 1) and n >= k * m_next
            density = scheme(buffer.arrival_view())
            if not isinstance(density, StepDensity):
                raise TypeError("scheme must return a StepDensity")
            l1 = float(l1_step(density, target))
            last = (empirical_ok, l1 <= L1_THRESHOLD, l1)
            if empirical_ok and l1 <= L1_THRESHOLD:
                checkpoints.append((k, n))
                certificates.append(
                    LevelCertificate(level=k, n=n, l1_to_target=l1, discrepancy=disc, m_next=m_next)
                )
                break
            n_target = max(n + 16, math.ceil(n * growth))
    return transcript(True, None)


def oscillation_table(transcript: AdversaryTranscript, scheme) -> list:
    """L1 distances between the scheme's estimates at consecutive
    checkpoints, recomputed from the raw transcript sequence."""
    if transcript.sequence is None:
        raise ValueError("transcript carries no sequence (elided on serialization)")
    seq = transcript.sequence
    densities = [scheme(seq[:n]) for _, n in transcript.checkpoints]
    return [
        (transcript.checkpoints[i][0], transcript.checkpoints[i + 1][0], l1_step(a, b))
        for i, (a, b) in enumerate(zip(densities[:-1], densities[1:]))
    ]


def probe_intervals(max_level=6):
    """Dyadic cells of level <= max_level inside [0, 1], plus both
    half-lines: the finite oracle family for uniformity checks."""
    probes = [(-math.inf, 0.5), (0.5, math.inf)]
    for p in range(1, max_level + 1):
        cells = 2**p
        for j in range(cells):
            probes.append((j / cells, (j + 1) / cells))
    return probes


def uniformity_gap(buffer_or_values, max_level=6) -> float:
    """Largest |empirical - length| over the probe family, the lengths
    being taken within [0, 1]."""
    buffer = (
        buffer_or_values
        if isinstance(buffer_or_values, SampleBuffer)
        else SampleBuffer(buffer_or_values)
    )
    worst = 0.0
    for lo, hi in probe_intervals(max_level):
        length = max(0.0, min(hi, 1.0) - max(lo, 0.0))
        gap = abs(empirical_measure(buffer, lo, hi, closed="left") - length)
        worst = max(worst, gap)
    return worst
