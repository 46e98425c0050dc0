"""Height functions into partially ordered sets.

A height is represented by a finite :class:`HeightSample`: identifiers paired
with values in a poset described by a :class:`PartialOrderSpec`. Finite samples
cannot carry the order topology of an infinite value set, so the successive
infima extractor works on real values and takes a clustering radius ``tau``:
consecutive sorted values whose gap is at most ``tau`` belong to the same
connected component. ``tau = 0`` is the literal finite-set reading, where every
distinct value is its own component.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

from zetalab.errors import ContractViolation, DomainError

DEFAULT_ISOLATION = 1e-6


class Cmp(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def compare_reals(a: float, b: float) -> Cmp:
    if a < b:
        return Cmp.LESS
    if a > b:
        return Cmp.GREATER
    if a == b:
        return Cmp.EQUAL
    return Cmp.INCOMPARABLE  # NaN


@dataclass(frozen=True)
class PartialOrderSpec:
    compare: Callable[[Any, Any], Cmp]
    name: str = "poset"
    arity: int | None = None  # set for product orders

    def le(self, a, b) -> bool:
        return self.compare(a, b) in (Cmp.LESS, Cmp.EQUAL)


REALS = PartialOrderSpec(compare_reals, "R")


def compare_product(a: Sequence, b: Sequence, orders: Sequence[PartialOrderSpec]) -> Cmp:
    """Compare two tuples in the product order: ``a <= b`` iff every coordinate is ``<=``."""
    if len(a) != len(orders) or len(b) != len(orders):
        raise ContractViolation(
            f"arity mismatch: {len(a)} and {len(b)} values for {len(orders)} orders"
        )
    seen_less = seen_greater = False
    for x, y, order in zip(a, b, orders):
        c = order.compare(x, y)
        if c is Cmp.INCOMPARABLE:
            return Cmp.INCOMPARABLE
        seen_less |= c is Cmp.LESS
        seen_greater |= c is Cmp.GREATER
    if seen_less and seen_greater:
        return Cmp.INCOMPARABLE
    if seen_less:
        return Cmp.LESS
    if seen_greater:
        return Cmp.GREATER
    return Cmp.EQUAL


def product_order(orders: Sequence[PartialOrderSpec]) -> PartialOrderSpec:
    orders = tuple(orders)
    name = " x ".join(o.name for o in orders)
    return PartialOrderSpec(lambda a, b: compare_product(a, b, orders), name, len(orders))


def check_order_axioms(order: PartialOrderSpec, values: Iterable) -> list[str]:
    """Exhaustive scan of reflexivity, antisymmetry and transitivity on ``values``.

    Returns the list of violations found (empty when the order is consistent).
    """
    vals = list(values)
    problems = []
    for x in vals:
        if order.compare(x, x) is not Cmp.EQUAL:
            problems.append(f"not reflexive at {x!r}")
    for x, y in itertools.product(vals, repeat=2):
        cxy, cyx = order.compare(x, y), order.compare(y, x)
        flipped = {Cmp.LESS: Cmp.GREATER, Cmp.GREATER: Cmp.LESS}.get(cxy, cxy)
        if cyx is not flipped:
            problems.append(f"asymmetric answers for {x!r}, {y!r}")
    for x, y, z in itertools.product(vals, repeat=3):
        if order.le(x, y) and order.le(y, z) and not order.le(x, z):
            problems.append(f"not transitive on {x!r} <= {y!r} <= {z!r}")
    return problems


@dataclass(frozen=True)
class HeightSample:
    elements: tuple[tuple[Hashable, Any], ...]
    order: PartialOrderSpec = REALS

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple((i, v) for i, v in self.elements))
        ids = [i for i, _ in self.elements]
        if len(set(ids)) != len(ids):
            raise ContractViolation("identifiers of a height sample must be distinct")
        if self.order.arity is not None:
            for i, v in self.elements:
                if len(v) != self.order.arity:
                    raise ContractViolation(
                        f"value of {i!r} has arity {len(v)}, order expects {self.order.arity}"
                    )

    @classmethod
    def from_mapping(cls, mapping: dict, order: PartialOrderSpec = REALS) -> "HeightSample":
        return cls(tuple(mapping.items()), order)

    @property
    def ids(self) -> list:
        return [i for i, _ in self.elements]

    def as_dict(self) -> dict:
        return dict(self.elements)


def _sort_ids(ids):
    try:
        return sorted(ids)
    except TypeError:
        return sorted(ids, key=repr)


def sublevel_set(sample: HeightSample, gamma) -> list:
    """Identifiers whose value is ``<= gamma``, sorted by identifier."""
    return _sort_ids(i for i, v in sample.elements if sample.order.le(v, gamma))


def northcott_growth(sample: HeightSample, grid: Sequence) -> list[tuple[Any, int]]:
    """Size of the sublevel set at each point of an ascending grid."""
    for lo, hi in zip(grid, grid[1:]):
        if sample.order.compare(lo, hi) is not Cmp.LESS:
            raise ContractViolation(f"grid is not strictly ascending at {lo!r}, {hi!r}")
    return [(g, len(sublevel_set(sample, g))) for g in grid]


@dataclass(frozen=True)
class InfimaReport:
    """Successive sets of infima of a finite real sample.

    ``levels[j]`` is the value-set of the (j+1)-th infimum, ``components[j]`` the
    sorted values of the component that level removes. ``stop_reason`` is
    ``"exhausted"`` when no values remain (the sample has exactly
    ``len(levels)`` successive infima) and ``"k_max"`` when extraction was cut off.
    """

    kind: str
    levels: tuple[frozenset, ...]
    resolution: float
    components: tuple[tuple[float, ...], ...] = field(repr=False, default=())
    stop_reason: str = "exhausted"

    @property
    def minima(self) -> list[float]:
        return [min(level) for level in self.levels]

    @property
    def stabilized(self) -> bool:
        return self.stop_reason == "exhausted"


def _components(values: Sequence[float], tau: float) -> list[list[float]]:
    distinct = sorted(set(values))
    comps = [[distinct[0]]]
    for prev, cur in zip(distinct, distinct[1:]):
        if tau > 0 and cur - prev <= tau:
            comps[-1].append(cur)
        else:
            comps.append([cur])
    return comps


def successive_infima_reals(values: Iterable[float], tau: float = 0.0, k_max: int = 10) -> InfimaReport:
    """Extract up to ``k_max`` successive infima from a finite multiset of reals."""
    vals = [float(v) for v in values]
    if not vals:
        raise DomainError("successive infima of an empty sample are undefined")
    if tau < 0 or math.isnan(tau):
        raise DomainError("clustering radius must be non-negative")
    if k_max < 1:
        raise DomainError("k_max must be positive")
    if any(math.isnan(v) for v in vals):
        raise DomainError("NaN in sample")
    comps = _components(vals, tau)
    taken = comps[:k_max]
    return InfimaReport(
        kind="minima" if tau == 0 else "infima",
        levels=tuple(frozenset([c[0]]) for c in taken),
        resolution=tau,
        components=tuple(tuple(c) for c in taken),
        stop_reason="exhausted" if len(comps) <= k_max else "k_max",
    )


@dataclass(frozen=True)
class BogomolovReport:
    count: int
    levels: tuple[frozenset, ...]
    attained: bool
    isolated: bool
    gap: float  # distance from the first minimum to the next sample value (inf if none)
    report: InfimaReport = field(repr=False, default=None)

    @property
    def weak_bogomolov(self) -> bool:
        return self.count >= 1 and self.attained

    @property
    def bogomolov(self) -> bool:
        return self.attained and self.isolated


def bogomolov_number_empirical(
    values: Iterable[float],
    tau: float = 0.0,
    k_max: int = 10,
    isolation: float = DEFAULT_ISOLATION,
) -> BogomolovReport:
    """Empirical Bogomolov number of a finite real sample.

    The first minimum is isolated when the sample is a single value or when the
    next distinct value sits further than both ``isolation`` and ``tau`` away.
    """
    vals = [float(v) for v in values]
    rep = successive_infima_reals(vals, tau, k_max)
    distinct = sorted(set(vals))
    gap = distinct[1] - distinct[0] if len(distinct) > 1 else math.inf
    isolated = len(distinct) == 1 or gap > max(isolation, tau)
    # a finite sample always contains its smallest element
    return BogomolovReport(len(rep.levels), rep.levels, True, isolated, gap, rep)


def lehmer_transform(
    samples: Sequence[HeightSample], combiner: Callable[..., float]
) -> HeightSample:
    """Combine several heights on the same identifiers into one real height.

    ``combiner`` receives one positional argument per input sample.
    """
    if not samples:
        raise ContractViolation("need at least one height sample")
    ids = samples[0].ids
    maps = [s.as_dict() for s in samples]
    for s in samples[1:]:
        if set(s.ids) != set(ids):
            raise ContractViolation("height samples are defined on different identifiers")
    return HeightSample(tuple((i, combiner(*(m[i] for m in maps))) for i in ids), REALS)


def lehmer_analysis(samples, combiner, tau=0.0, k_max=10, isolation=DEFAULT_ISOLATION):
    values = [v for _, v in lehmer_transform(samples, combiner).elements]
    return bogomolov_number_empirical(values, tau, k_max, isolation)


def pi_combiner(x: float, d: int) -> float:
    return x * d


def dobrowolski_combiner(x: float, d: int) -> float:
    t = math.log(3 * d)
    return x * d * (t / math.log(t)) ** 3
