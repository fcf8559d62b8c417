"""Per-buyer selection algorithms for the coverage + auxiliary objective.

Greedy and lazy greedy handle maximization auxiliaries, where the combined
objective is monotone submodular. Distorted greedy and its sampled variant
handle minimization auxiliaries: each round up-weights the coverage part by
``(1 - 1/k) ** (k - (i + 1))`` relative to the per-item cost and only accepts
strictly positive distorted gains, so they may return fewer than ``k`` items.
A brute-force enumerator provides the exact optimum on small instances.

Every solver shares one tie-break rule: gains within ``TIE_TOLERANCE`` of the
round maximum count as tied and the smallest item id wins. That makes all
solvers deterministic and lets lazy greedy reproduce greedy's selection
sequence exactly while evaluating fewer marginal gains.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .core import (
    AuxMode,
    BuyerQuery,
    Catalog,
    ConfigurationError,
    FaircoverError,
    InstanceTooLargeError,
    ItemId,
    ObjectiveSpec,
    SolveReport,
    ValidationError,
    aux_item_values,
    aux_value,
    combined_value,
    compute_fairness_profile,
    coverage_value,
    fairness_deltas,
)

#: Gains closer than this to the round maximum are treated as tied.
TIE_TOLERANCE = 1e-9

#: Refusal threshold for brute-force enumeration.
BRUTE_FORCE_SUBSET_LIMIT = 10**7


class SolverKind(Enum):
    """Selection algorithm choices; values double as CLI tokens."""

    GREEDY = "greedy"
    LAZY_GREEDY = "lazy"
    DISTORTED_GREEDY = "distorted"
    STOCHASTIC_DISTORTED_GREEDY = "stochastic"
    BRUTE_FORCE = "brute"


@dataclass(frozen=True)
class HeapEntry:
    """Lazy-greedy heap entry: a cached gain and the round it was computed in."""

    item: ItemId
    cached_gain: float
    stale_round: int

    def __lt__(self, other: "HeapEntry") -> bool:
        # Max-heap by gain under heapq's min-heap, ties by ascending item id.
        if self.cached_gain != other.cached_gain:
            return self.cached_gain > other.cached_gain
        return self.item < other.item


@dataclass(frozen=True)
class BatchEntry:
    """Per-query slot of a batch solve: a report or an isolated error."""

    buyer: str
    report: SolveReport | None
    error: str | None


def check_solver_compatibility(solver: SolverKind, spec: ObjectiveSpec) -> None:
    """Reject solver/auxiliary pairings up front, before any work starts."""
    mode = spec.aux_mode
    if solver in (SolverKind.GREEDY, SolverKind.LAZY_GREEDY) and mode.is_minimization:
        raise ConfigurationError(
            f"{solver.value} maximizes a monotone objective and cannot take the "
            f"minimization auxiliary {mode.value!r}; use the distorted solvers"
        )
    if (
        solver in (SolverKind.DISTORTED_GREEDY, SolverKind.STOCHASTIC_DISTORTED_GREEDY)
        and mode.is_maximization
    ):
        raise ConfigurationError(
            f"{solver.value} subtracts a modular cost and cannot take the "
            f"maximization auxiliary {mode.value!r}; use greedy or lazy greedy"
        )


def stochastic_sample_size(n_candidates: int, k: int, epsilon: float) -> int:
    """Per-round sample count for the sampled distorted solver:
    ``ceil((n_candidates / k) * ln(1 / epsilon))``."""
    if n_candidates < 1 or k < 1:
        raise ValidationError("sample size needs positive candidate count and k")
    if not 0.0 < epsilon < 1.0:
        raise ValidationError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    return math.ceil((n_candidates / k) * math.log(1.0 / epsilon))


class _EvalState:
    """Shared evaluation context: candidate arrays, running stakeholder counts,
    and the oracle-call counter. Candidates are held in ascending item-id
    order so positional scans realize the id tie-break."""

    __slots__ = (
        "profile",
        "items",
        "memberships",
        "delta_f",
        "counts",
        "k",
        "alpha",
        "aux",
        "aux_weighted",
        "oracle_calls",
    )

    def __init__(self, catalog: Catalog, query: BuyerQuery, spec: ObjectiveSpec) -> None:
        self.profile = compute_fairness_profile(catalog, query)
        aux = aux_item_values(spec, query, catalog)
        order = sorted(range(len(query.candidates)), key=lambda i: query.candidates[i][0])
        self.items = [query.candidates[i][0] for i in order]
        self.memberships = [
            tuple(sorted(catalog.items[item].memberships)) for item in self.items
        ]
        self.aux = [aux[i] for i in order]
        weight = 1.0 - spec.alpha
        self.aux_weighted = [weight * g for g in self.aux]
        self.delta_f = list(self.profile.threshold_floats)
        self.counts = [0] * catalog.t
        self.k = spec.k
        self.alpha = spec.alpha
        self.oracle_calls = 0

    def coverage_gain(self, idx: int) -> float:
        counts = self.counts
        delta_f = self.delta_f
        k = self.k
        gain = 0.0
        for s in self.memberships[idx]:
            c = counts[s]
            d = delta_f[s]
            gain += min((c + 1) / k, d) - min(c / k, d)
        return gain

    def gain(self, idx: int) -> float:
        """Combined marginal gain for maximization modes (one oracle call)."""
        self.oracle_calls += 1
        return self.alpha * self.coverage_gain(idx) + self.aux_weighted[idx]

    def distorted_gain(self, idx: int, factor: float) -> float:
        """Distorted criterion for minimization modes (one oracle call)."""
        self.oracle_calls += 1
        return factor * self.alpha * self.coverage_gain(idx) - self.aux_weighted[idx]

    def add(self, idx: int) -> None:
        for s in self.memberships[idx]:
            self.counts[s] += 1


def _argmax_position(gains: Sequence[float]) -> int:
    """First position whose gain ties the maximum within TIE_TOLERANCE."""
    best = max(gains)
    cutoff = best - TIE_TOLERANCE
    for position, g in enumerate(gains):
        if g >= cutoff:
            return position
    raise AssertionError("unreachable: max not found")


def _finalize(
    catalog: Catalog,
    query: BuyerQuery,
    spec: ObjectiveSpec,
    state: _EvalState,
    chosen_idx: Sequence[int],
    started: float,
    sample_sizes: Sequence[int] = (),
    relaxed: tuple[tuple[ItemId, ...], float] | None = None,
) -> SolveReport:
    chosen = tuple(state.items[i] for i in chosen_idx)
    return SolveReport(
        chosen=chosen,
        coverage_value=coverage_value(state.profile, chosen, catalog, spec.k),
        aux_value=aux_value(spec, query, catalog, chosen),
        combined_value=combined_value(spec, state.profile, query, catalog, chosen),
        deltas=fairness_deltas(state.profile, chosen, catalog, spec.k),
        oracle_calls=state.oracle_calls,
        wall_time_s=time.perf_counter() - started,
        seed_used=spec.seed,
        sample_sizes=tuple(sample_sizes),
        relaxed_chosen=None if relaxed is None else relaxed[0],
        relaxed_value=None if relaxed is None else relaxed[1],
    )


def solve_greedy(catalog: Catalog, query: BuyerQuery, spec: ObjectiveSpec) -> SolveReport:
    """Plain greedy: each round scores every remaining candidate and takes the
    best, so it returns ``min(k, n_candidates)`` items."""
    check_solver_compatibility(SolverKind.GREEDY, spec)
    started = time.perf_counter()
    state = _EvalState(catalog, query, spec)
    remaining = list(range(len(state.items)))
    chosen_idx: list[int] = []
    while remaining and len(chosen_idx) < spec.k:
        gains = [state.gain(i) for i in remaining]
        position = _argmax_position(gains)
        pick = remaining.pop(position)
        state.add(pick)
        chosen_idx.append(pick)
    return _finalize(catalog, query, spec, state, chosen_idx, started)


def solve_lazy_greedy(catalog: Catalog, query: BuyerQuery, spec: ObjectiveSpec) -> SolveReport:
    """Greedy with a max-priority heap of cached gains.

    Submodularity means cached gains only overestimate current ones, so each
    round pops entries until the best freshly evaluated gain dominates the
    heap top's cached value (minus the tie tolerance, so every potential tie
    gets re-evaluated), then applies the shared tie-break. Selects the exact
    same sequence as :func:`solve_greedy` with no more oracle calls, and
    strictly fewer on all but degenerate instances.
    """
    check_solver_compatibility(SolverKind.LAZY_GREEDY, spec)
    started = time.perf_counter()
    state = _EvalState(catalog, query, spec)
    index_of = {item: i for i, item in enumerate(state.items)}
    heap = [
        HeapEntry(item=item, cached_gain=state.gain(i), stale_round=0)
        for i, item in enumerate(state.items)
    ]
    heapq.heapify(heap)
    chosen_idx: list[int] = []
    target = min(spec.k, len(state.items))
    for round_no in range(target):
        popped: list[tuple[int, float]] = []  # (item, fresh gain) in pop order
        best_gain = -math.inf
        while heap:
            if popped and heap[0].cached_gain < best_gain - TIE_TOLERANCE:
                break
            entry = heapq.heappop(heap)
            if entry.stale_round == round_no:
                fresh = entry.cached_gain
            else:
                fresh = state.gain(index_of[entry.item])
            popped.append((entry.item, fresh))
            if fresh > best_gain:
                best_gain = fresh
        cutoff = best_gain - TIE_TOLERANCE
        pick_item = min(item for item, fresh in popped if fresh >= cutoff)
        pick = index_of[pick_item]
        state.add(pick)
        chosen_idx.append(pick)
        for item, fresh in popped:
            if item != pick_item:
                heapq.heappush(heap, HeapEntry(item=item, cached_gain=fresh, stale_round=round_no))
    return _finalize(catalog, query, spec, state, chosen_idx, started)


def _distorted_rounds(
    state: _EvalState,
    spec: ObjectiveSpec,
    pool_for_round: Callable[[int, list[int]], list[int]],
) -> tuple[list[int], list[int]]:
    """Run ``k`` distorted rounds over pools produced by ``pool_for_round``.

    Returns the chosen positional indices and the per-round pool sizes.
    Rejected rounds leave the remaining set untouched; the distortion factor
    keeps growing, so a later round may still accept.
    """
    remaining = list(range(len(state.items)))
    chosen_idx: list[int] = []
    pool_sizes: list[int] = []
    k = spec.k
    for round_no in range(k):
        if not remaining:
            break
        factor = (1.0 - 1.0 / k) ** (k - (round_no + 1))  # 0.0 ** 0 == 1.0 covers k == 1
        pool = pool_for_round(round_no, remaining)
        pool_sizes.append(len(pool))
        gains = [state.distorted_gain(i, factor) for i in pool]
        position = _argmax_position(gains)
        if gains[position] > 0.0:
            pick = pool[position]
            state.add(pick)
            chosen_idx.append(pick)
            remaining.remove(pick)
    return chosen_idx, pool_sizes


def solve_distorted_greedy(
    catalog: Catalog, query: BuyerQuery, spec: ObjectiveSpec
) -> SolveReport:
    """Distorted greedy for coverage minus a non-negative modular cost.

    Runs exactly ``k`` rounds; round ``i`` maximizes
    ``(1 - 1/k) ** (k - (i + 1)) * alpha * coverage_gain(u) - (1 - alpha) * cost(u)``
    and adds the winner only when that distorted gain is strictly positive,
    so the result may have fewer than ``k`` items.
    """
    check_solver_compatibility(SolverKind.DISTORTED_GREEDY, spec)
    started = time.perf_counter()
    state = _EvalState(catalog, query, spec)
    chosen_idx, _ = _distorted_rounds(state, spec, lambda _round, remaining: remaining)
    return _finalize(catalog, query, spec, state, chosen_idx, started)


def solve_stochastic_distorted_greedy(
    catalog: Catalog, query: BuyerQuery, spec: ObjectiveSpec
) -> SolveReport:
    """Distorted greedy over a per-round uniform sample of the remaining pool.

    Each round draws ``stochastic_sample_size(n_candidates, k, epsilon)``
    candidates uniformly with replacement (deduplicated before the argmax);
    when the nominal sample covers the whole remaining pool the round is
    evaluated exhaustively and the output matches the deterministic solver.
    Fully deterministic given ``spec.seed`` (PCG64).
    """
    check_solver_compatibility(SolverKind.STOCHASTIC_DISTORTED_GREEDY, spec)
    started = time.perf_counter()
    state = _EvalState(catalog, query, spec)
    rng = np.random.default_rng(spec.seed)
    nominal = stochastic_sample_size(len(state.items), spec.k, spec.epsilon)

    def sample_pool(_round: int, remaining: list[int]) -> list[int]:
        if nominal >= len(remaining):
            return remaining
        draws = rng.integers(0, len(remaining), size=nominal)
        return sorted({remaining[d] for d in draws})

    chosen_idx, pool_sizes = _distorted_rounds(state, spec, sample_pool)
    return _finalize(catalog, query, spec, state, chosen_idx, started, sample_sizes=pool_sizes)


def solve_brute_force(catalog: Catalog, query: BuyerQuery, spec: ObjectiveSpec) -> SolveReport:
    """Exhaustive optimum over all ``min(k, n)``-subsets of the candidates.

    Ties go to the lexicographically smallest item-id sequence. Under a
    minimization auxiliary the objective is not monotone and dropping items
    can help, so the report additionally carries the optimum over subsets of
    size at most ``k`` in the ``relaxed_*`` fields. Refuses instances whose
    subset count exceeds ``BRUTE_FORCE_SUBSET_LIMIT``.
    """
    started = time.perf_counter()
    state = _EvalState(catalog, query, spec)
    n = len(state.items)
    kk = min(spec.k, n)
    minimization = spec.aux_mode.is_minimization
    total = sum(math.comb(n, j) for j in range(kk + 1)) if minimization else math.comb(n, kk)
    if total > BRUTE_FORCE_SUBSET_LIMIT:
        raise InstanceTooLargeError(
            f"brute force would enumerate {total} subsets "
            f"(limit {BRUTE_FORCE_SUBSET_LIMIT}); shrink the instance"
        )

    memberships = state.memberships
    delta_f = state.delta_f
    aux = state.aux
    alpha = spec.alpha
    weight = 1.0 - alpha
    sign = -1.0 if minimization else (1.0 if spec.aux_mode.is_maximization else 0.0)
    k = spec.k
    t = catalog.t

    def value_of(subset: tuple[int, ...]) -> float:
        state.oracle_calls += 1
        counts = [0] * t
        for idx in subset:
            for s in memberships[idx]:
                counts[s] += 1
        cov = 0.0
        for s in range(t):
            c = counts[s]
            if c:
                cov += min(c / k, delta_f[s])
        return alpha * cov + sign * weight * sum(aux[idx] for idx in subset)

    def best_of_size(size: int) -> tuple[tuple[int, ...], float]:
        best_subset: tuple[int, ...] = ()
        best_value = -math.inf
        for subset in combinations(range(n), size):
            v = value_of(subset)
            if v > best_value:
                best_value = v
                best_subset = subset
        return best_subset, best_value

    exact_subset, exact_value = best_of_size(kk)
    relaxed: tuple[tuple[ItemId, ...], float] | None = None
    if minimization:
        relaxed_subset: tuple[int, ...] = ()
        relaxed_value = 0.0  # the empty set always scores exactly 0
        for size in range(1, kk + 1):
            subset, v = (exact_subset, exact_value) if size == kk else best_of_size(size)
            if v > relaxed_value:
                relaxed_subset, relaxed_value = subset, v
        relaxed = (tuple(state.items[i] for i in relaxed_subset), relaxed_value)
    return _finalize(
        catalog, query, spec, state, exact_subset, started, relaxed=relaxed
    )


_SOLVER_FUNCTIONS: dict[SolverKind, Callable[[Catalog, BuyerQuery, ObjectiveSpec], SolveReport]] = {
    SolverKind.GREEDY: solve_greedy,
    SolverKind.LAZY_GREEDY: solve_lazy_greedy,
    SolverKind.DISTORTED_GREEDY: solve_distorted_greedy,
    SolverKind.STOCHASTIC_DISTORTED_GREEDY: solve_stochastic_distorted_greedy,
    SolverKind.BRUTE_FORCE: solve_brute_force,
}


def solve_one(
    catalog: Catalog, query: BuyerQuery, spec: ObjectiveSpec, solver: SolverKind
) -> SolveReport:
    """Dispatch a single per-buyer solve to the requested algorithm."""
    return _SOLVER_FUNCTIONS[solver](catalog, query, spec)


# Worker context for process pools: set once per worker, read by _solve_entry.
_WORKER_CONTEXT: tuple[Catalog, ObjectiveSpec, SolverKind] | None = None


def _init_worker(catalog: Catalog, spec: ObjectiveSpec, solver: SolverKind) -> None:
    global _WORKER_CONTEXT
    _WORKER_CONTEXT = (catalog, spec, solver)


def _solve_entry(query: BuyerQuery) -> BatchEntry:
    assert _WORKER_CONTEXT is not None
    catalog, spec, solver = _WORKER_CONTEXT
    try:
        return BatchEntry(buyer=query.buyer, report=solve_one(catalog, query, spec, solver), error=None)
    except FaircoverError as exc:
        return BatchEntry(buyer=query.buyer, report=None, error=f"{type(exc).__name__}: {exc}")
    except Exception as exc:  # keep one bad query from sinking the batch
        return BatchEntry(buyer=query.buyer, report=None, error=f"{type(exc).__name__}: {exc}")


def solve_batch(
    catalog: Catalog,
    queries: Sequence[BuyerQuery],
    spec: ObjectiveSpec,
    solver: SolverKind,
    parallelism: int = 1,
) -> list[BatchEntry]:
    """Solve every query independently, in input order.

    Per-query failures become error entries instead of aborting the batch.
    Results are identical whatever the parallelism (solves are pure functions
    of their inputs); only wall times differ.
    """
    if parallelism < 1:
        raise ValidationError(f"parallelism must be positive, got {parallelism}")
    check_solver_compatibility(solver, spec)
    queries = list(queries)
    if not queries:
        return []
    if parallelism == 1 or len(queries) == 1:
        _init_worker(catalog, spec, solver)
        return [_solve_entry(q) for q in queries]
    from concurrent.futures import ProcessPoolExecutor

    chunksize = max(1, len(queries) // (parallelism * 4))
    with ProcessPoolExecutor(
        max_workers=parallelism,
        initializer=_init_worker,
        initargs=(catalog, spec, solver),
    ) as pool:
        return list(pool.map(_solve_entry, queries, chunksize=chunksize))
