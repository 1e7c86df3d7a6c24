"""Fixed-alpha Dilworth truncation via coordinate saturation.

For a sum-rate estimate alpha in [0, H(V)] define

    f_alpha(X) = alpha - H(V) + H(X)   for nonempty X,   f_alpha(empty) = 0.

The Dilworth truncation of f_alpha at a carrier is the minimum of
sum_{C in P} f_alpha(C) over all partitions P of the carrier.  The
coordinate-saturation procedure computes it exactly along with the finest
minimizing partition and a rate vector in the base polyhedron: starting
from r = (alpha - H(V)) * 1, it processes users in ascending order and
raises each user's coordinate by the saturation capacity, the minimum of
the fusion function f~ over anchored block unions (module `sfm`); the
minimal minimizer is then fused into the running partition.

Carriers may be arbitrary nonempty subsets of the ground set; users are
simply processed in ascending label order, which is the reduction of the
entropy function onto the carrier.  Note f_alpha always references the
*global* H(V), also for strict sub-carriers; that convention is what the
successive-omniscience criterion needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError
from .model import SourceModel, as_rational
from .partition import Partition
from .sfm import FusionOracle, SfmCounter, minimize


@dataclass(frozen=True)
class AlphaFunction:
    """f_alpha(X) = alpha - H(V) + H(X) with f_alpha(empty) = 0; submodular."""

    model: SourceModel
    alpha: Fraction

    def __call__(self, subset: Iterable[int]) -> Fraction:
        subset = frozenset(subset)
        if not subset:
            return Fraction(0)
        return self.alpha - self.model.total_entropy + self.model.entropy(subset)


@dataclass(frozen=True)
class DilworthResult:
    """Output of one saturation run over a carrier.

    `users` lists the carrier in ascending order and `rates` is the parallel
    rate vector; `value` equals sum(rates) and is the truncation value.
    """

    users: tuple[int, ...]
    rates: tuple[Fraction, ...]
    partition: Partition
    value: Fraction

    def rate_of(self, user: int) -> Fraction:
        return self.rates[self.users.index(user)]


def _check_alpha(model: SourceModel, alpha) -> Fraction:
    alpha = as_rational(alpha)
    if not Fraction(0) <= alpha <= model.total_entropy:
        raise DomainError(f"alpha {alpha} outside [0, {model.total_entropy}]")
    return alpha


def _check_carrier(model: SourceModel, carrier) -> tuple[int, ...]:
    if carrier is None:
        return model.users
    users = tuple(sorted(set(carrier)))
    if not users:
        raise DomainError("carrier must be nonempty")
    if not set(users) <= set(model.users):
        raise DomainError(f"carrier {users} is not a subset of the ground set")
    return users


def coordinate_saturation(model: SourceModel, alpha, carrier=None, *,
                          solver: str = "auto",
                          counter: SfmCounter | None = None) -> DilworthResult:
    """Saturate rate coordinates one user at a time at a fixed alpha.

    Returns the finest partition minimizing f_alpha[.] over the carrier and
    a rate vector with r(X) <= f_alpha(X) for every nonempty X and
    r(carrier) equal to the truncation value.
    """
    alpha = _check_alpha(model, alpha)
    users = _check_carrier(model, carrier)
    f_alpha = AlphaFunction(model, alpha)
    base = alpha - model.total_entropy

    first = users[0]
    rates: dict[int, Fraction] = {first: f_alpha({first})}
    partition = Partition.singletons([first])
    for user in users[1:]:
        blocks = partition.blocks + (frozenset({user}),)
        rates[user] = base
        oracle = FusionOracle(model, alpha, blocks, frozenset({user}), dict(rates))
        result = minimize(oracle, solver=solver, counter=counter)
        rates[user] = base + result.min_value
        partition = Partition(blocks).merge_blocks(result.minimal)

    vector = tuple(rates[u] for u in users)
    return DilworthResult(users, vector, partition, sum(vector, Fraction(0)))


def dilworth_truncation(model: SourceModel, alpha, carrier=None, *,
                        solver: str = "auto",
                        counter: SfmCounter | None = None) -> Fraction:
    """min over partitions P of the carrier of sum_{C in P} f_alpha(C)."""
    return coordinate_saturation(
        model, alpha, carrier, solver=solver, counter=counter
    ).value


def partition_value(model: SourceModel, alpha, partition: Partition) -> Fraction:
    """f_alpha[P] = sum of f_alpha(C) over the blocks of P."""
    f_alpha = AlphaFunction(model, as_rational(alpha))
    return sum((f_alpha(block) for block in partition), Fraction(0))
