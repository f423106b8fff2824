"""Tiered event standards, strength-test conversion, cohort pass rates, and impact metrics."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

from .distributions import Direction
from .errors import DegenerateError, InputError

GROUP_PREFIX = "group:"
FOUR_FIFTHS_THRESHOLD = 0.8


@dataclass(frozen=True)
class EventStandard:
    """One event's anchor rows: (points, threshold) from best to worst."""

    name: str
    units: str
    direction: Direction
    anchors: tuple[tuple[int, float], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "direction", Direction(self.direction))
        anchors = tuple((int(p), float(t)) for p, t in self.anchors)
        object.__setattr__(self, "anchors", anchors)
        if len(anchors) < 2:
            raise InputError(f"event {self.name!r} needs at least two anchors")
        points = [p for p, _ in anchors]
        thresholds = [t for _, t in anchors]
        if any(b >= a for a, b in zip(points, points[1:])):
            raise InputError(f"event {self.name!r} anchors must have strictly descending points")
        if self.direction is Direction.HIGHER_IS_BETTER:
            ordered = all(b < a for a, b in zip(thresholds, thresholds[1:]))
        else:
            ordered = all(b > a for a, b in zip(thresholds, thresholds[1:]))
        if not ordered:
            raise InputError(
                f"event {self.name!r} thresholds must be monotone toward improvement"
            )

    @property
    def best_points(self) -> int:
        return self.anchors[0][0]

    @property
    def worst_points(self) -> int:
        return self.anchors[-1][0]


@dataclass(frozen=True)
class ScoringStandard:
    """A full test standard: events plus tier minimum points."""

    events: tuple[EventStandard, ...]
    tiers: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))
        items = self.tiers.items() if isinstance(self.tiers, Mapping) else self.tiers
        tiers = tuple((str(name), int(minimum)) for name, minimum in items)
        object.__setattr__(self, "tiers", tiers)
        if not self.events:
            raise InputError("standard needs at least one event")
        names = [e.name for e in self.events]
        if len(set(names)) != len(names):
            raise InputError("duplicate event names in standard")
        if not tiers:
            raise InputError("standard needs at least one tier")
        if len({name for name, _ in tiers}) != len(tiers):
            raise InputError("duplicate tier names")
        floor = max(e.worst_points for e in self.events)
        ceiling = min(e.best_points for e in self.events)
        for name, minimum in tiers:
            if not floor <= minimum <= ceiling:
                raise InputError(
                    f"tier {name!r} minimum {minimum} is not achievable on every event"
                )

    @property
    def event_names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.events)

    def event(self, name: str) -> EventStandard:
        for e in self.events:
            if e.name == name:
                return e
        raise InputError(f"unknown event {name!r}")

    def tier_minimum(self, tier: str) -> int:
        for name, minimum in self.tiers:
            if name == tier:
                return minimum
        known = [name for name, _ in self.tiers]
        raise InputError(f"unknown tier {tier!r}; known tiers: {known}")


@dataclass(frozen=True)
class Cohort:
    """Subject rows: numeric event columns plus group-label columns prefixed group:."""

    columns: tuple[str, ...]
    rows: tuple[tuple, ...]

    def __post_init__(self) -> None:
        columns = tuple(str(c) for c in self.columns)
        object.__setattr__(self, "columns", columns)
        if len(set(columns)) != len(columns):
            raise InputError("duplicate cohort columns")
        group_idx = {i for i, c in enumerate(columns) if c.startswith(GROUP_PREFIX)}
        coerced = []
        for i, row in enumerate(self.rows):
            if len(row) != len(columns):
                raise InputError(f"cohort row {i} has {len(row)} values, expected {len(columns)}")
            cells = []
            for j, cell in enumerate(row):
                if j in group_idx:
                    cells.append(str(cell))
                else:
                    try:
                        cells.append(float(cell))
                    except (TypeError, ValueError) as exc:
                        raise InputError(
                            f"cohort row {i}, column {columns[j]!r}: not a number: {cell!r}"
                        ) from exc
            coerced.append(tuple(cells))
        object.__setattr__(self, "rows", tuple(coerced))

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def group_columns(self) -> tuple[str, ...]:
        return tuple(c for c in self.columns if c.startswith(GROUP_PREFIX))

    @property
    def event_columns(self) -> tuple[str, ...]:
        return tuple(c for c in self.columns if not c.startswith(GROUP_PREFIX))


@dataclass(frozen=True)
class GroupRates:
    group: str
    size: int
    per_event: tuple[tuple[str, float], ...]
    overall: float


@dataclass(frozen=True)
class PassRateReport:
    tier: str
    group_column: str
    groups: tuple[GroupRates, ...]


@dataclass(frozen=True)
class ImpactReport:
    """Four-fifths screen over group selection rates."""

    rates: tuple[tuple[str, float], ...]
    ratio: float
    flagged: bool


def wathen_1rm(weight: float, reps: int) -> float:
    """One-repetition-maximum estimate from a weight lifted for several reps.

    100 w / (48.8 + 53.8 exp(-0.075 r)); linear in weight, increasing in
    reps. Note the r = 1 value is 1.0131 w, not exactly w.
    """
    if weight < 0:
        raise InputError("weight must be nonnegative")
    if reps < 1:
        raise InputError("reps must be >= 1")
    return 100.0 * weight / (48.8 + 53.8 * math.exp(-0.075 * reps))


def score_event(standard: ScoringStandard, event: str, value: float) -> int:
    """Points for a raw event value: linear between anchors, floored, clamped to [0, 100]."""
    spec = standard.event(event)
    value = float(value)
    points = [p for p, _ in spec.anchors]
    thresholds = [t for _, t in spec.anchors]
    if spec.direction is Direction.HIGHER_IS_BETTER:
        beyond_best = value >= thresholds[0]
        beyond_worst = value <= thresholds[-1]
    else:
        beyond_best = value <= thresholds[0]
        beyond_worst = value >= thresholds[-1]
    if beyond_best:
        raw = float(points[0])
    elif beyond_worst:
        raw = float(points[-1])
    else:
        raw = 0.0
        for i in range(len(spec.anchors) - 1):
            t_hi, t_lo = thresholds[i], thresholds[i + 1]
            between = (
                t_lo <= value <= t_hi
                if spec.direction is Direction.HIGHER_IS_BETTER
                else t_hi <= value <= t_lo
            )
            if between:
                fraction = (value - t_lo) / (t_hi - t_lo)
                raw = points[i + 1] + fraction * (points[i] - points[i + 1])
                break
    return int(min(100, max(0, math.floor(raw))))


def evaluate(
    standard: ScoringStandard, tier: str, scores: Mapping[str, float]
) -> tuple[bool, dict[str, int]]:
    """Score every event and apply the tier's conjunctive minimum.

    A subject passes only if every single event reaches the tier minimum;
    there is no compensation between events.
    """
    minimum = standard.tier_minimum(tier)
    missing = [name for name in standard.event_names if name not in scores]
    if missing:
        raise InputError(f"missing events: {missing}")
    points = {
        name: score_event(standard, name, float(scores[name]))
        for name in standard.event_names
    }
    return all(v >= minimum for v in points.values()), points


def pass_rates(
    cohort: Cohort, standard: ScoringStandard, tier: str, group_by: str
) -> PassRateReport:
    """Per-group pass fractions for each event and for the full test."""
    if group_by not in cohort.columns:
        raise InputError(f"unknown group column {group_by!r}")
    if not group_by.startswith(GROUP_PREFIX):
        raise InputError(f"group column {group_by!r} must carry the {GROUP_PREFIX!r} prefix")
    missing = [name for name in standard.event_names if name not in cohort.columns]
    if missing:
        raise InputError(f"cohort is missing event columns: {missing}")
    minimum = standard.tier_minimum(tier)
    group_j = cohort.columns.index(group_by)
    event_j = {name: cohort.columns.index(name) for name in standard.event_names}

    order: list[str] = []
    buckets: dict[str, list[tuple]] = {}
    skipped = 0
    for row in cohort.rows:
        label = str(row[group_j]).strip()
        if not label:
            skipped += 1
            continue
        if label not in buckets:
            order.append(label)
            buckets[label] = []
        buckets[label].append(row)
    if skipped:
        warnings.warn(
            f"{skipped} rows with an empty {group_by!r} label were excluded", stacklevel=2
        )
    if not order:
        raise InputError(f"no rows carry a {group_by!r} label")

    groups = []
    for label in order:
        rows = buckets[label]
        passed_events = {name: 0 for name in standard.event_names}
        passed_all = 0
        for row in rows:
            ok_all = True
            for name in standard.event_names:
                pts = score_event(standard, name, row[event_j[name]])
                if pts >= minimum:
                    passed_events[name] += 1
                else:
                    ok_all = False
            if ok_all:
                passed_all += 1
        size = len(rows)
        groups.append(
            GroupRates(
                group=label,
                size=size,
                per_event=tuple(
                    (name, passed_events[name] / size) for name in standard.event_names
                ),
                overall=passed_all / size,
            )
        )
    return PassRateReport(tier=tier, group_column=group_by, groups=tuple(groups))


def impact_ratio(rates: Mapping[str, float]) -> ImpactReport:
    """Four-fifths screen: lowest group rate over highest, flagged when under 0.8."""
    if len(rates) < 2:
        raise InputError("impact ratio needs at least two groups")
    for group, rate in rates.items():
        if not 0.0 <= rate <= 1.0:
            raise InputError(f"rate for {group!r} must lie in [0, 1], got {rate}")
    highest = max(rates.values())
    if highest == 0.0:
        raise DegenerateError("all selection rates are zero")
    ratio = min(rates.values()) / highest
    return ImpactReport(
        rates=tuple((str(g), float(r)) for g, r in rates.items()),
        ratio=ratio,
        flagged=ratio < FOUR_FIFTHS_THRESHOLD,
    )


def difficulty_ratio(fail_a: tuple[int, int], fail_b: tuple[int, int]) -> float:
    """How many times higher the failure rate of test a is than test b.

    Both arguments are (failures, total) raw counts; working from counts
    avoids compounding published rounding.
    """
    fails_a, total_a = fail_a
    fails_b, total_b = fail_b
    if total_a <= 0 or total_b <= 0:
        raise InputError("totals must be positive")
    if not (0 <= fails_a <= total_a and 0 <= fails_b <= total_b):
        raise InputError("failure counts must lie between 0 and the total")
    if fails_b == 0:
        raise DegenerateError("second test has zero failures; the ratio is infinite")
    return (fails_a / total_a) / (fails_b / total_b)
