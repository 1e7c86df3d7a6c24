"""Successive omniscience: pick a subset that can reach omniscience first.

A nonsingleton proper subset C is *complimentary* when letting its members
reach local omniscience first does not increase the eventual global sum
rate, which happens exactly when H(V) - H(C) + R(C) <= R(V) (R denotes the
minimum sum-rate of a carrier).  Equivalently, f_alpha(C) equals the
Dilworth truncation of C at any alpha <= R(V).

The search rides the parametric sweep: evaluate the segmented partition at
a lower bound alpha_bar <= R(V) and any nonsingleton block found there is
complimentary.  The block's own solution comes for free: the alpha where
its sub-blocks finish merging in the segmented partition equals
H(V) - H(C) + R(C), and the stored rate vector evaluated there, restricted
to C, attains local omniscience in C at sum rate R(C).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dilworth import AlphaFunction, dilworth_truncation
from .errors import DecompositionError, DomainError, InternalError
from .model import SourceModel, as_rational
from .par import ParState, iter_parametric
from .sfm import SfmCounter


@dataclass(frozen=True)
class SOPlan:
    """A complimentary subset plus the rate vector for its local omniscience.

    `local_users` lists C ascending and `local_rates` is the parallel rate
    vector summing to `local_min_sum_rate` (= R(C)); `local_alpha` is the
    merge point H(V) - H(C) + R(C).
    """

    subset: frozenset[int]
    local_alpha: Fraction
    local_users: tuple[int, ...]
    local_rates: tuple[Fraction, ...]
    local_min_sum_rate: Fraction
    found_at_iteration: int
    ground_size: int


def lower_bound_alpha(model: SourceModel) -> Fraction:
    """sum_i (H(V) - H({i})) / (|V| - 1): a guaranteed lower bound on R(V).

    This is the all-singletons evaluation of the partition form of the
    minimum sum-rate problem, hence never exceeds the maximum; it is tight
    for |V| = 2 where no other multi-block partition exists.
    """
    total = model.total_entropy
    gaps = sum((total - model.entropy({u}) for u in model.users), Fraction(0))
    return gaps / (model.size - 1)


def _plan_from_state(state: ParState, alpha_bar: Fraction) -> SOPlan | None:
    partition = state.partition_at(alpha_bar)
    block = next((b for b in partition.blocks if len(b) > 1), None)
    if block is None:
        return None
    merge_alpha = None
    for interval, slice_ in state.table:
        if block in slice_.partition.blocks:
            merge_alpha = interval.lower
            break
    if merge_alpha is None:
        raise InternalError("block found at alpha_bar but absent from the table")
    users = tuple(sorted(block))
    rates = tuple(
        slice_rate.at(merge_alpha)
        for u, slice_rate in zip(state.users, state.table.value_at(merge_alpha).rates)
        if u in block
    )
    local_sum = sum(rates, Fraction(0))
    expected = state.model.total_entropy - state.model.entropy(block) + local_sum
    if merge_alpha != expected:
        raise InternalError(
            f"merge point {merge_alpha} disagrees with H(V) - H(C) + R(C) = {expected}"
        )
    return SOPlan(block, merge_alpha, users, rates, local_sum,
                  state.carrier_size, state.model.size)


def find_complimentary(model: SourceModel, alpha_bar=None, *,
                       solver: str = "auto",
                       counter: SfmCounter | None = None) -> SOPlan | None:
    """Search the sweep for a complimentary subset; None if none shows up.

    With the default bound the sweep stops at the first iteration whose
    segmented partition has a nonsingleton block at alpha_bar (earliest
    possible plan).  With a caller-supplied bound the fully swept ground
    set is inspected instead, exposing the most-merged structure available
    under that bound.  Callers overriding alpha_bar are responsible for
    keeping it at most the minimum sum-rate; `verify_complimentary` or the
    sweep itself can confirm that after the fact.
    """
    sweep_all = alpha_bar is not None
    if alpha_bar is None:
        alpha_bar = lower_bound_alpha(model)
    else:
        alpha_bar = as_rational(alpha_bar)
    if not Fraction(0) <= alpha_bar <= model.total_entropy:
        raise DomainError(f"alpha_bar {alpha_bar} outside [0, {model.total_entropy}]")

    plan = None
    for state in iter_parametric(model, solver=solver, counter=counter):
        if state.carrier_size == 1:
            continue
        if sweep_all and state.carrier_size < model.size:
            continue
        plan = _plan_from_state(state, alpha_bar)
        if plan is not None:
            return plan
    return None


def verify_complimentary(model: SourceModel, subset, alpha) -> bool:
    """True iff f_alpha(C) equals the Dilworth truncation of C at alpha.

    For alpha at most the minimum sum-rate this certifies that C is
    complimentary.  C must be a nonsingleton proper subset of the ground
    set.
    """
    subset = frozenset(subset)
    if len(subset) < 2:
        raise DomainError("a complimentary subset must have at least 2 users")
    if subset == model.ground_set:
        raise DomainError("a complimentary subset must be a proper subset")
    alpha = as_rational(alpha)
    direct = AlphaFunction(model, alpha)(subset)
    return direct == dilworth_truncation(model, alpha, subset)


def decompose_rates(global_rates, plan: SOPlan):
    """Split a global omniscience rate vector into local-first + remainder.

    Returns (local, residual) where `local` is the plan's rate vector
    zero-extended to the ground set and residual = global - local.  The
    residual is not guaranteed nonnegative for an arbitrary optimal global
    vector; a negative coordinate means this particular global vector
    cannot follow the plan, reported as DecompositionError.
    """
    global_rates = tuple(as_rational(r) for r in global_rates)
    if len(global_rates) != plan.ground_size:
        raise DomainError(
            f"global rate vector of length {len(global_rates)} does not cover "
            f"the ground set of size {plan.ground_size}"
        )
    local = [Fraction(0)] * plan.ground_size
    for u, r in zip(plan.local_users, plan.local_rates):
        local[u - 1] = r
    residual = tuple(g - l for g, l in zip(global_rates, local))
    if any(r < 0 for r in residual):
        raise DecompositionError(
            "global rate vector is incompatible with the plan: residual has a "
            "negative coordinate"
        )
    return tuple(local), residual
