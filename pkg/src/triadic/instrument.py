"""Instrument-quality statistics for clustering coefficients.

Measurements arrive as a panel of ``(subject, statistic, period, value)``
records.  Undefined values (``None`` or NaN) are dropped pairwise: a pair
of observations is used only when both members are defined, and the
number of discarded pairs is reported alongside each result.
"""

from __future__ import annotations

import csv
import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import DataError, UndefinedStatistic


def _finite(values, what):
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{what}: values must be finite")
    return arr


def stability(pairs) -> float:
    """Share of variance explained by subject in a one-way ANOVA.

    ``pairs`` is a sequence of ``(first, second)`` measurements, one per
    subject, or ``(subject, first, second)`` triples.
    """
    rows = [p[-2:] for p in pairs]
    if len(rows) < 2:
        raise DataError("stability needs at least two subjects")
    # exact sums so that perfectly repeated data gives exactly 1
    rows = [(Fraction(a), Fraction(b)) for a, b in _finite(rows, "stability").tolist()]
    grand = sum(a + b for a, b in rows) / (2 * len(rows))
    sst = sum((a - grand) ** 2 + (b - grand) ** 2 for a, b in rows)
    if sst == 0:
        raise UndefinedStatistic("stability: all values equal")
    ssm = sum(2 * ((a + b) / 2 - grand) ** 2 for a, b in rows)
    return float(ssm / sst)


def r_squared(x, y) -> float:
    """Squared Pearson correlation of ``x`` and ``y``."""
    if len(x) != len(y):
        raise DataError("r_squared: sequences differ in length")
    if len(x) < 2:
        raise DataError("r_squared needs at least two observations")
    xs = _finite(x, "r_squared")
    ys = _finite(y, "r_squared")
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0 or syy == 0:
        raise UndefinedStatistic("r_squared: zero variance")
    sxy = float(dx @ dy)
    return min(1.0, sxy * sxy / (sxx * syy))


def distinguishability(x, y) -> float:
    return 1.0 - r_squared(x, y)


def discriminability(values) -> float:
    """Four times the population variance; 1 for an even 0/1 split.

    The variance is taken in exact rational arithmetic, so constant data
    gives exactly 0.
    """
    if len(values) == 0:
        raise DataError("discriminability needs at least one value")
    arr = _finite(values, "discriminability")
    return 4.0 * statistics.pvariance(arr.tolist())


# -- panels -------------------------------------------------------------------


def _defined(v):
    return v is not None and not (isinstance(v, float) and math.isnan(v))


def _period_key(p):
    try:
        return (0, float(p), p)
    except (TypeError, ValueError):
        return (1, 0.0, str(p))


@dataclass
class Panel:
    """Values indexed by ``(statistic, subject, period)``."""

    values: dict = field(default_factory=dict)
    statistics: list = field(default_factory=list)
    subjects: list = field(default_factory=list)
    periods: list = field(default_factory=list)

    def add(self, subject, statistic, period, value):
        key = (statistic, subject, period)
        if key in self.values:
            raise DataError(f"duplicate panel entry {key!r}")
        self.values[key] = value
        for seq, item in ((self.statistics, statistic), (self.subjects, subject)):
            if item not in seq:
                seq.append(item)
        if period not in self.periods:
            self.periods.append(period)
            self.periods.sort(key=_period_key)

    def series(self, statistic):
        """All defined values of ``statistic`` and the number left out."""
        out, dropped = [], 0
        for s in self.subjects:
            for p in self.periods:
                if (statistic, s, p) in self.values:
                    v = self.values[(statistic, s, p)]
                    if _defined(v):
                        out.append(v)
                    else:
                        dropped += 1
        return out, dropped

    def adjacent_pairs(self, statistic):
        """Values of one subject at consecutive periods, pooled."""
        out, dropped = [], 0
        for s in self.subjects:
            for p, q in zip(self.periods, self.periods[1:]):
                a = self.values.get((statistic, s, p), _MISSING)
                b = self.values.get((statistic, s, q), _MISSING)
                if a is _MISSING or b is _MISSING:
                    continue
                if _defined(a) and _defined(b):
                    out.append((s, a, b))
                else:
                    dropped += 1
        return out, dropped

    def matched(self, first, second):
        """Paired values of two statistics on the same subject and period."""
        xs, ys, dropped = [], [], 0
        for s in self.subjects:
            for p in self.periods:
                a = self.values.get((first, s, p), _MISSING)
                b = self.values.get((second, s, p), _MISSING)
                if a is _MISSING or b is _MISSING:
                    continue
                if _defined(a) and _defined(b):
                    xs.append(a)
                    ys.append(b)
                else:
                    dropped += 1
        return xs, ys, dropped


_MISSING = object()


def read_panel(lines) -> Panel:
    """Parse CSV ``subject,statistic,period,value``; empty or ``nan`` is undefined."""
    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None or [h.strip().lower() for h in header] != ["subject", "statistic", "period", "value"]:
        raise DataError("panel header must be subject,statistic,period,value")
    panel = Panel()
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 4:
            raise DataError(f"line {lineno}: expected 4 fields, got {len(row)}")
        subject, statistic, period, raw = (c.strip() for c in row)
        if raw == "" or raw.lower() in ("nan", "na", "undefined"):
            value = None
        else:
            try:
                value = float(raw)
            except ValueError:
                raise DataError(f"line {lineno}: bad value {raw!r}") from None
            if math.isinf(value):
                raise DataError(f"line {lineno}: value must be finite")
        panel.add(subject, statistic, period, value)
    if not panel.values:
        raise DataError("panel is empty")
    return panel


@dataclass(frozen=True)
class Assessment:
    """One cell of the assessment matrix; ``value`` is None when undefined."""

    measure: str
    statistic: str
    other: str
    value: float | None
    n: int
    dropped: int


def _attempt(fn, *args):
    try:
        return fn(*args)
    except (UndefinedStatistic, DataError):
        return None


def assess(panel: Panel, validity=()) -> list:
    """Stability, discriminability, distinguishability and validity cells.

    Distinguishability is reported for every unordered pair of statistics
    in first-appearance order; ``validity`` lists ``(a, b)`` pairs whose
    R^2 is also reported.
    """
    out = []
    for stat in panel.statistics:
        pairs, dropped = panel.adjacent_pairs(stat)
        out.append(Assessment("stability", stat, "", _attempt(stability, pairs), len(pairs), dropped))
        values, dropped = panel.series(stat)
        out.append(Assessment("discriminability", stat, "",
                              _attempt(discriminability, values), len(values), dropped))
    for a, b in combinations(panel.statistics, 2):
        xs, ys, dropped = panel.matched(a, b)
        out.append(Assessment("distinguishability", a, b,
                              _attempt(distinguishability, xs, ys), len(xs), dropped))
    for a, b in validity:
        for name in (a, b):
            if name not in panel.statistics:
                raise DataError(f"unknown statistic {name!r} in validity pair")
        xs, ys, dropped = panel.matched(a, b)
        out.append(Assessment("validity", a, b, _attempt(r_squared, xs, ys), len(xs), dropped))
    return out
