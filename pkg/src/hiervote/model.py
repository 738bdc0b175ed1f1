"""Domain types and validation shared by every other module.

All types are immutable after construction and safe to share across
threads.  Out-of-range fields are rejected at construction, never
silently clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence


class VotingModelError(ValueError):
    """Base class for all validation errors raised by this package."""


class ProbabilityOutOfRange(VotingModelError):
    """A probability-valued field fell outside [0, 1]."""


class EvenGroupSize(VotingModelError):
    """A majority-voting group must have an odd size so a tie cannot occur."""


class GroupTooSmall(VotingModelError):
    """A multi-voter group must hold at least 3 voters."""


class EmptySpec(VotingModelError):
    """A hierarchy needs at least one layer."""


class NonFiniteInput(VotingModelError):
    """NaN or infinite value where a finite number is required."""


class AlphaOutOfRange(VotingModelError):
    """Abstention rate must satisfy 0 <= alpha <= 1 - success probability."""


class EffectiveSizeEven(VotingModelError):
    """Base size and abstention rate produce an even participating count."""


class EffectiveSizeTooSmall(VotingModelError):
    """Base size and abstention rate leave fewer than 3 participants."""


class NoValidFactorization(VotingModelError):
    """Electorate size admits no factorization into odd factors >= 3."""


class NonPositive(VotingModelError):
    """A strictly positive quantity was zero or negative."""


def check_probability(value: float, name: str = "probability") -> float:
    """Validate that ``value`` is a finite probability and return it as float."""
    value = float(value)
    if math.isnan(value) or math.isinf(value):
        raise NonFiniteInput(f"{name} must be finite, got {value!r}")
    if not 0.0 <= value <= 1.0:
        raise ProbabilityOutOfRange(f"{name} must lie in [0, 1], got {value!r}")
    return value


def check_odd_count(n: int, name: str = "group size") -> int:
    """Validate that ``n`` is a positive odd integer and return it."""
    n = int(n)
    if n < 1:
        raise GroupTooSmall(f"{name} must be positive, got {n}")
    if n % 2 == 0:
        raise EvenGroupSize(f"{name} must be odd so a tie cannot occur, got {n}")
    return n


@dataclass(frozen=True)
class HierarchySpec:
    """Ordered per-layer group sizes of a majority tree, bottom layer first.

    Every layer size must be odd; sizes below 3 are allowed only for the
    trivial single-voter direct case ``HierarchySpec((1,))``.  The product
    of all layer sizes is the size of the equivalent direct electorate.
    """

    layer_sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        sizes = tuple(int(k) for k in self.layer_sizes)
        object.__setattr__(self, "layer_sizes", sizes)
        if not sizes:
            raise EmptySpec("hierarchy needs at least one layer")
        if sizes == (1,):
            return
        for k in sizes:
            if k % 2 == 0:
                raise EvenGroupSize(f"layer size {k} is even")
            if k < 3:
                raise GroupTooSmall(f"layer size {k} is below 3")

    @property
    def n_layers(self) -> int:
        return len(self.layer_sizes)

    @property
    def total_voters(self) -> int:
        """Number of voters in the equivalent direct electorate."""
        return math.prod(self.layer_sizes)


def validate_hierarchy(layer_sizes: Sequence[int]) -> HierarchySpec:
    """Build a :class:`HierarchySpec` from a list of layer sizes."""
    return HierarchySpec(tuple(layer_sizes))


@dataclass(frozen=True)
class GroupProfile:
    """One bottom-layer voting group.

    ``effective_size`` is the odd number of participating (non-abstaining)
    voters and is what every formula consumes; ``abstention`` is recorded
    metadata only.
    """

    effective_size: int
    competence: float
    abstention: float = 0.0

    def __post_init__(self) -> None:
        size = int(self.effective_size)
        if size % 2 == 0:
            raise EvenGroupSize(f"effective group size {size} is even")
        if size < 3:
            raise GroupTooSmall(f"effective group size {size} is below 3")
        object.__setattr__(self, "effective_size", size)
        object.__setattr__(
            self, "competence", check_probability(self.competence, "competence")
        )
        object.__setattr__(
            self, "abstention", check_probability(self.abstention, "abstention")
        )


@dataclass(frozen=True)
class HeteroSystem:
    """A two-tier system of voting groups with per-group competence.

    The group count must be odd so the top-level majority is tie-free.
    """

    groups: tuple[GroupProfile, ...]

    def __post_init__(self) -> None:
        groups = tuple(self.groups)
        object.__setattr__(self, "groups", groups)
        if not groups:
            raise EmptySpec("a heterogeneous system needs at least one group")
        if len(groups) % 2 == 0:
            raise EvenGroupSize(f"group count {len(groups)} is even")

    @property
    def n_groups(self) -> int:
        return len(self.groups)

    @property
    def total_voters(self) -> int:
        """Size of the equivalent direct electorate (sum of effective sizes)."""
        return sum(g.effective_size for g in self.groups)

    def voter_probs(self) -> tuple[float, ...]:
        """Per-voter competence list of the equivalent direct electorate."""
        out: list[float] = []
        for g in self.groups:
            out.extend([g.competence] * g.effective_size)
        return tuple(out)


_PMF_NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PoissonBinomial:
    """Exact distribution of a sum of independent non-identical coin flips."""

    success_probs: tuple[float, ...]
    pmf: tuple[float, ...]

    def __post_init__(self) -> None:
        probs = tuple(check_probability(p, "success probability") for p in self.success_probs)
        pmf = tuple(float(v) for v in self.pmf)
        object.__setattr__(self, "success_probs", probs)
        object.__setattr__(self, "pmf", pmf)
        if len(pmf) != len(probs) + 1:
            raise VotingModelError(
                f"pmf needs {len(probs) + 1} entries, got {len(pmf)}"
            )
        if any(v < 0.0 for v in pmf):
            raise VotingModelError("pmf entries must be nonnegative")
        total = math.fsum(pmf)
        if abs(total - 1.0) > _PMF_NORMALIZATION_TOL:
            raise VotingModelError(f"pmf sums to {total!r}, not 1")

    @property
    def n(self) -> int:
        return len(self.success_probs)


@dataclass(frozen=True)
class SweepRow:
    """One grid point of a reliability sweep.

    Bounds and Monte Carlo fields stay ``None`` unless the producing
    operation fills them.
    """

    epsilon: float
    p_direct: float | None = None
    p_hier: float | None = None
    diff: float | None = None
    bound_direct: float | None = None
    bound_hier: float | None = None
    mc_estimate: float | None = None
    mc_stderr: float | None = None


@dataclass(frozen=True)
class SweepResult:
    """Table of sweep rows with strictly increasing epsilon."""

    rows: tuple[SweepRow, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        eps = [r.epsilon for r in rows]
        if any(b <= a for a, b in zip(eps, eps[1:])):
            raise VotingModelError("sweep epsilons must be strictly increasing")

    def epsilons(self) -> tuple[float, ...]:
        return tuple(r.epsilon for r in self.rows)
