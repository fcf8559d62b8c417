"""Domain types and objective mathematics for multistakeholder coverage re-ranking.

A :class:`Catalog` holds the item universe with per-item stakeholder
memberships and costs. A :class:`BuyerQuery` holds one buyer's candidate
items with precomputed utility scores. From those we derive a
:class:`FairnessProfile` (each stakeholder's fair share of the candidate
set), and evaluate:

* the coverage objective ``F(R) = sum_s min(|R ∩ inventory(s)| / k, threshold_s)``,
  a monotone submodular saturating function;
* a modular auxiliary objective ``G`` (total utility, cost per unit utility,
  or a beta-weighted composite of item attributes);
* the combined objective ``alpha * F + (1 - alpha) * G`` for maximization
  auxiliaries, or ``alpha * F - (1 - alpha) * G`` for minimization ones.

Share thresholds and the per-stakeholder over/under-representation integers
are computed in exact rational arithmetic; floats appear only in the three
objective values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable

StakeholderId = int
ItemId = int


class FaircoverError(Exception):
    """Base class for all package errors."""


class ValidationError(FaircoverError):
    """Input data violates a documented invariant or precondition."""


class ConfigurationError(FaircoverError):
    """The requested objective/solver combination cannot run as configured."""


class InstanceTooLargeError(FaircoverError):
    """Exhaustive enumeration refused to avoid combinatorial blowup."""


@dataclass(frozen=True)
class ItemRecord:
    """One catalog item: dense id, owning stakeholders, and a non-negative cost."""

    item: ItemId
    memberships: frozenset[StakeholderId]
    cost: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "memberships", frozenset(self.memberships))
        if self.item < 0:
            raise ValidationError(f"item id must be non-negative, got {self.item}")
        if not (math.isfinite(self.cost) and self.cost >= 0.0):
            raise ValidationError(
                f"item {self.item}: cost must be finite and >= 0, got {self.cost!r}"
            )


@dataclass(frozen=True)
class Catalog:
    """Immutable item universe plus the stakeholder table.

    Item ids are exactly ``0..n-1`` in list order. Memberships may be empty
    (such items simply contribute no coverage) and an item may belong to
    several stakeholders at once; each membership counts once.
    """

    items: tuple[ItemRecord, ...]
    stakeholder_names: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(self.items))
        object.__setattr__(self, "stakeholder_names", tuple(self.stakeholder_names))
        if not self.stakeholder_names:
            raise ValidationError("catalog must declare at least one stakeholder")
        if len(set(self.stakeholder_names)) != len(self.stakeholder_names):
            raise ValidationError("stakeholder names must be unique")
        if not self.items:
            raise ValidationError("catalog must contain at least one item")
        t = len(self.stakeholder_names)
        for position, record in enumerate(self.items):
            if record.item != position:
                raise ValidationError(
                    f"item ids must be dense 0..n-1 in order; "
                    f"position {position} holds id {record.item}"
                )
            for s in record.memberships:
                if not 0 <= s < t:
                    raise ValidationError(
                        f"item {record.item}: stakeholder id {s} outside 0..{t - 1}"
                    )

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def t(self) -> int:
        return len(self.stakeholder_names)

    def memberships_of(self, item: ItemId) -> frozenset[StakeholderId]:
        if not 0 <= item < self.n:
            raise ValidationError(f"unknown item id {item} (catalog has {self.n} items)")
        return self.items[item].memberships

    def cost_of(self, item: ItemId) -> float:
        if not 0 <= item < self.n:
            raise ValidationError(f"unknown item id {item} (catalog has {self.n} items)")
        return self.items[item].cost

    @cached_property
    def inventory_sizes(self) -> tuple[int, ...]:
        """Number of catalog items in each stakeholder's inventory."""
        sizes = [0] * self.t
        for record in self.items:
            for s in record.memberships:
                sizes[s] += 1
        return tuple(sizes)


@dataclass(frozen=True)
class BuyerQuery:
    """One buyer's candidate set: distinct item ids with finite utility scores."""

    buyer: str
    candidates: tuple[tuple[ItemId, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "candidates", tuple((int(i), float(u)) for i, u in self.candidates)
        )
        if not self.candidates:
            raise ValidationError(f"buyer {self.buyer!r}: candidate set must be non-empty")
        seen: set[int] = set()
        for item, utility in self.candidates:
            if item in seen:
                raise ValidationError(f"buyer {self.buyer!r}: duplicate candidate item {item}")
            seen.add(item)
            if not math.isfinite(utility):
                raise ValidationError(
                    f"buyer {self.buyer!r}: item {item} has non-finite utility {utility!r}"
                )

    @cached_property
    def item_ids(self) -> tuple[ItemId, ...]:
        return tuple(item for item, _ in self.candidates)

    @cached_property
    def utility_by_item(self) -> dict[ItemId, float]:
        return {item: utility for item, utility in self.candidates}

    def validate_against(self, catalog: Catalog) -> None:
        for item in self.item_ids:
            if not 0 <= item < catalog.n:
                raise ValidationError(
                    f"buyer {self.buyer!r}: candidate item id {item} not in catalog "
                    f"(catalog has {catalog.n} items)"
                )


@dataclass(frozen=True)
class FairnessProfile:
    """Fair-share thresholds of one buyer's candidate set.

    ``member_counts[s]`` is the number of candidates in stakeholder ``s``'s
    inventory; the threshold for ``s`` is the exact rational
    ``member_counts[s] / candidate_count``. Stakeholders with no candidate
    members are present with threshold 0. Thresholds may sum past 1 because
    one item can belong to several stakeholders.
    """

    member_counts: tuple[int, ...]
    candidate_count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "member_counts", tuple(int(c) for c in self.member_counts))
        if self.candidate_count < 1:
            raise ValidationError("candidate_count must be positive")
        for s, count in enumerate(self.member_counts):
            if not 0 <= count <= self.candidate_count:
                raise ValidationError(
                    f"stakeholder {s}: member count {count} outside 0..{self.candidate_count}"
                )

    @property
    def stakeholder_count(self) -> int:
        return len(self.member_counts)

    def threshold(self, s: StakeholderId) -> Fraction:
        return Fraction(self.member_counts[s], self.candidate_count)

    @cached_property
    def thresholds(self) -> tuple[Fraction, ...]:
        return tuple(self.threshold(s) for s in range(self.stakeholder_count))

    @cached_property
    def threshold_floats(self) -> tuple[float, ...]:
        return tuple(c / self.candidate_count for c in self.member_counts)

    @cached_property
    def coverage_ceiling(self) -> float:
        """Upper bound of the coverage objective: the sum of all thresholds."""
        return sum(self.threshold_floats)


class AuxMode(Enum):
    """Which modular auxiliary objective accompanies the coverage objective."""

    UTILITY_MAX = "utility-max"
    COST_PER_UTILITY_MIN = "cost-per-utility-min"
    COMPOSITE_MAX = "composite-max"
    COMPOSITE_MIN = "composite-min"
    NONE = "none"

    @property
    def is_maximization(self) -> bool:
        return self in (AuxMode.UTILITY_MAX, AuxMode.COMPOSITE_MAX)

    @property
    def is_minimization(self) -> bool:
        return self in (AuxMode.COST_PER_UTILITY_MIN, AuxMode.COMPOSITE_MIN)


#: Item attributes available to composite auxiliaries, as (cost, utility) -> value.
COMPOSITE_ATTRIBUTES = {
    "utility": lambda cost, utility: utility,
    "neg_utility": lambda cost, utility: -utility,
    "cost": lambda cost, utility: cost,
    "neg_cost": lambda cost, utility: -cost,
}


@dataclass(frozen=True)
class ObjectiveSpec:
    """Solve-time parameters: trade-off weight, cardinality, auxiliary mode.

    ``alpha`` weighs coverage against the auxiliary objective; ``k`` is the
    number of recommendations. ``epsilon`` and ``seed`` only matter for the
    sampled solver but are always carried so runs stay reproducible.
    """

    alpha: float
    k: int
    aux_mode: AuxMode = AuxMode.NONE
    composite_weights: tuple[tuple[str, float], ...] = ()
    epsilon: float = 0.1
    seed: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and 0.0 <= self.alpha <= 1.0):
            raise ValidationError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        if not (isinstance(self.k, int) and self.k >= 1):
            raise ValidationError(f"k must be a positive integer, got {self.k!r}")
        if not (math.isfinite(self.epsilon) and 0.0 < self.epsilon < 1.0):
            raise ValidationError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        object.__setattr__(
            self,
            "composite_weights",
            tuple((str(name), float(w)) for name, w in self.composite_weights),
        )
        if self.aux_mode in (AuxMode.COMPOSITE_MAX, AuxMode.COMPOSITE_MIN):
            if not self.composite_weights:
                raise ValidationError("composite aux mode requires composite_weights")
            for name, weight in self.composite_weights:
                if name not in COMPOSITE_ATTRIBUTES:
                    known = ", ".join(sorted(COMPOSITE_ATTRIBUTES))
                    raise ValidationError(
                        f"unknown composite attribute {name!r} (known: {known})"
                    )
                if not (math.isfinite(weight) and 0.0 <= weight <= 1.0):
                    raise ValidationError(
                        f"composite weight for {name!r} must lie in [0, 1], got {weight!r}"
                    )


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one per-buyer solve.

    ``chosen`` preserves selection order. ``deltas`` maps every stakeholder
    to its integer over/under-representation (see :func:`fairness_deltas`).
    ``oracle_calls`` counts marginal-gain evaluations. ``sample_sizes`` is
    populated by the sampled solver (distinct candidates scored per round).
    The ``relaxed_*`` fields are populated only by brute force under a
    minimization auxiliary: the optimum over subsets of size at most ``k``,
    alongside the exactly-``k`` optimum in the main fields.
    """

    chosen: tuple[ItemId, ...]
    coverage_value: float
    aux_value: float
    combined_value: float
    deltas: dict[StakeholderId, int]
    oracle_calls: int
    wall_time_s: float
    seed_used: int
    sample_sizes: tuple[int, ...] = ()
    relaxed_chosen: tuple[ItemId, ...] | None = None
    relaxed_value: float | None = None

    @property
    def n_chosen(self) -> int:
        return len(self.chosen)


@dataclass(frozen=True)
class ProviderCheck:
    """One stakeholder's row of the global provider-constraint table."""

    achieved: float
    required: float
    satisfied: bool


def compute_fairness_profile(catalog: Catalog, query: BuyerQuery) -> FairnessProfile:
    """Count candidate memberships per stakeholder and derive exact thresholds."""
    query.validate_against(catalog)
    counts = [0] * catalog.t
    for item in query.item_ids:
        for s in catalog.items[item].memberships:
            counts[s] += 1
    return FairnessProfile(member_counts=tuple(counts), candidate_count=len(query.item_ids))


def _chosen_counts(catalog: Catalog, chosen: Iterable[ItemId]) -> list[int]:
    counts = [0] * catalog.t
    for item in chosen:
        for s in catalog.memberships_of(item):
            counts[s] += 1
    return counts


def _check_chosen(chosen: Iterable[ItemId], k: int) -> set[ItemId]:
    chosen = list(chosen)
    chosen_set = set(chosen)
    if len(chosen_set) != len(chosen):
        raise ValidationError("chosen set contains duplicate items")
    if len(chosen_set) > k:
        raise ValidationError(f"chosen set has {len(chosen_set)} items but k={k}")
    return chosen_set


def coverage_value(
    profile: FairnessProfile, chosen: Iterable[ItemId], catalog: Catalog, k: int
) -> float:
    """Coverage objective: saturating per-stakeholder share sums.

    Each stakeholder contributes ``min(covering / k, threshold)`` where
    ``covering`` is how many chosen items belong to its inventory. The empty
    set scores 0; the value never exceeds the sum of thresholds.
    """
    chosen_set = _check_chosen(chosen, k)
    counts = _chosen_counts(catalog, chosen_set)
    deltas = profile.threshold_floats
    total = 0.0
    for s in range(profile.stakeholder_count):
        c = counts[s]
        if c:
            total += min(c / k, deltas[s])
    return total


def coverage_marginal(
    profile: FairnessProfile,
    chosen: Iterable[ItemId],
    candidate: ItemId,
    catalog: Catalog,
    k: int,
) -> float:
    """Coverage gain of adding ``candidate`` to ``chosen``.

    Equals ``coverage_value(chosen | {candidate}) - coverage_value(chosen)``
    and lies in ``[0, |memberships(candidate)| / k]``.
    """
    chosen_set = _check_chosen(chosen, k)
    if candidate in chosen_set:
        raise ValidationError(f"candidate item {candidate} is already chosen")
    counts = _chosen_counts(catalog, chosen_set)
    deltas = profile.threshold_floats
    gain = 0.0
    for s in sorted(catalog.memberships_of(candidate)):
        c = counts[s]
        d = deltas[s]
        gain += min((c + 1) / k, d) - min(c / k, d)
    return gain


def aux_item_values(spec: ObjectiveSpec, query: BuyerQuery, catalog: Catalog) -> list[float]:
    """Per-candidate auxiliary values, normalized to be non-negative.

    For minimization modes the returned values are the per-item amounts to be
    subtracted from the combined objective (cost per unit utility, or the
    negated composite). Raises if utilities violate the mode's sign
    requirements or a composite's per-item sign cannot be determined.
    """
    query.validate_against(catalog)
    mode = spec.aux_mode
    if mode is AuxMode.NONE:
        return [0.0] * len(query.candidates)
    if mode is AuxMode.UTILITY_MAX:
        for item, utility in query.candidates:
            if utility < 0.0:
                raise ValidationError(
                    f"buyer {query.buyer!r}: item {item} has negative utility "
                    f"{utility!r}; utility maximization requires non-negative scores"
                )
        return [utility for _, utility in query.candidates]
    if mode is AuxMode.COST_PER_UTILITY_MIN:
        values = []
        for item, utility in query.candidates:
            if utility <= 0.0:
                raise ValidationError(
                    f"buyer {query.buyer!r}: item {item} has utility {utility!r}; "
                    f"cost-per-utility minimization requires strictly positive scores"
                )
            values.append(catalog.items[item].cost / utility)
        return values
    # Composite: beta-weighted sum of item attributes, sign-checked up front.
    raw = []
    for item, utility in query.candidates:
        cost = catalog.items[item].cost
        raw.append(
            sum(w * COMPOSITE_ATTRIBUTES[name](cost, utility) for name, w in spec.composite_weights)
        )
    has_positive = any(v > 0.0 for v in raw)
    has_negative = any(v < 0.0 for v in raw)
    if has_positive and has_negative:
        raise ValidationError(
            "sign of composite auxiliary cannot be verified in advance: "
            "per-item values are mixed-sign"
        )
    if mode is AuxMode.COMPOSITE_MAX:
        if has_negative:
            raise ValidationError(
                "composite per-item values are uniformly non-positive; "
                "use AuxMode.COMPOSITE_MIN"
            )
        return raw
    if has_positive:
        raise ValidationError(
            "composite per-item values are uniformly non-negative; "
            "use AuxMode.COMPOSITE_MAX"
        )
    return [-v for v in raw]


def aux_value(
    spec: ObjectiveSpec, query: BuyerQuery, catalog: Catalog, chosen: Iterable[ItemId]
) -> float:
    """Auxiliary objective of a chosen set; modular, hence a plain sum.

    Minimization modes report the non-negative quantity being minimized
    (total cost per unit utility, or the negated composite).
    """
    chosen_set = _check_chosen(chosen, len(query.candidates))
    unknown = chosen_set - set(query.item_ids)
    if unknown:
        raise ValidationError(
            f"chosen items {sorted(unknown)} are not candidates of buyer {query.buyer!r}"
        )
    values = aux_item_values(spec, query, catalog)
    by_item = dict(zip(query.item_ids, values))
    return sum(by_item[item] for item in sorted(chosen_set))


def combined_value(
    spec: ObjectiveSpec,
    profile: FairnessProfile,
    query: BuyerQuery,
    catalog: Catalog,
    chosen: Iterable[ItemId],
) -> float:
    """Trade-off objective: coverage plus or minus the weighted auxiliary.

    ``alpha * F + (1 - alpha) * G`` for maximization auxiliaries,
    ``alpha * F - (1 - alpha) * G`` for minimization ones, and ``alpha * F``
    when no auxiliary is configured.
    """
    chosen = list(chosen)
    cov = coverage_value(profile, chosen, catalog, spec.k)
    if spec.aux_mode is AuxMode.NONE:
        return spec.alpha * cov
    aux = aux_value(spec, query, catalog, chosen)
    if spec.aux_mode.is_maximization:
        return spec.alpha * cov + (1.0 - spec.alpha) * aux
    return spec.alpha * cov - (1.0 - spec.alpha) * aux


def fairness_deltas(
    profile: FairnessProfile, chosen: Iterable[ItemId], catalog: Catalog, k: int
) -> dict[StakeholderId, int]:
    """Integer over/under-representation of each stakeholder in a chosen set.

    ``ceil(k * (achieved_share - threshold))`` with ``achieved_share``
    judged against ``k`` even when fewer than ``k`` items were chosen, all
    in exact rational arithmetic before the ceiling. Note the ceiling makes
    a non-negative delta necessary but not sufficient for the exact fair
    coverage inequality; use :func:`satisfies_fair_coverage` for the exact
    test.
    """
    chosen_set = _check_chosen(chosen, k)
    counts = _chosen_counts(catalog, chosen_set)
    den = profile.candidate_count
    return {
        s: math.ceil(Fraction(counts[s] * den - k * profile.member_counts[s], den))
        for s in range(profile.stakeholder_count)
    }


def satisfies_fair_coverage(
    profile: FairnessProfile, chosen: Iterable[ItemId], catalog: Catalog, k: int
) -> bool:
    """Exact fair-coverage test: every stakeholder's share of the chosen set
    reaches its threshold (integer cross-multiplication, no rounding)."""
    chosen_set = _check_chosen(chosen, k)
    counts = _chosen_counts(catalog, chosen_set)
    den = profile.candidate_count
    return all(
        counts[s] * den >= k * profile.member_counts[s]
        for s in range(profile.stakeholder_count)
    )


def provider_constraint_check(
    catalog: Catalog,
    queries: Iterable[BuyerQuery],
    chosen_sets: Iterable[Iterable[ItemId]],
    k: int,
) -> dict[StakeholderId, ProviderCheck]:
    """Global provider-side coverage table across all buyers.

    For each stakeholder, ``achieved`` is its total representation across all
    chosen sets divided by ``m * k``, and ``required`` is its share of the
    whole catalog. The comparison is exact (integer cross-multiplication);
    the reported values are float views. Per-buyer fair coverage for every
    buyer implies this constraint, which is why it is exposed as a post-hoc
    verification metric rather than enforced during solving.
    """
    queries = list(queries)
    chosen_sets = [list(c) for c in chosen_sets]
    if len(queries) != len(chosen_sets):
        raise ValidationError(
            f"{len(queries)} queries but {len(chosen_sets)} chosen sets"
        )
    if not queries:
        raise ValidationError("provider constraint needs at least one query")
    if k < 1:
        raise ValidationError(f"k must be positive, got {k}")
    totals = [0] * catalog.t
    for query, chosen in zip(queries, chosen_sets):
        query.validate_against(catalog)
        chosen_set = _check_chosen(chosen, k)
        for s, c in enumerate(_chosen_counts(catalog, chosen_set)):
            totals[s] += c
    m = len(queries)
    result: dict[StakeholderId, ProviderCheck] = {}
    for s in range(catalog.t):
        inventory = catalog.inventory_sizes[s]
        # Exact: totals[s] / (m*k) >= inventory / n  <=>  totals[s]*n >= inventory*m*k
        satisfied = totals[s] * catalog.n >= inventory * m * k
        result[s] = ProviderCheck(
            achieved=totals[s] / (m * k),
            required=inventory / catalog.n,
            satisfied=satisfied,
        )
    return result
