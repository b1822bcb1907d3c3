"""Game objects: intervals with bandwidth, colors, transcripts, load queries.

Interval semantics are half-open: a point p lies in [lo, hi) iff lo <= p < hi,
so touching intervals never conflict. The paper-style constructions rely on
this (new intervals start exactly where older ones end).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import Dyadic, parse_rational, render_rational


@dataclass(frozen=True)
class Interval:
    lo: Dyadic
    hi: Dyadic

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("interval requires lo < hi")

    def contains(self, p: Dyadic) -> bool:
        return self.lo <= p < self.hi

    def length(self) -> Dyadic:
        return self.hi - self.lo


def intersects(a: Interval, b: Interval) -> bool:
    """True iff the half-open intervals share a point."""
    return max(a.lo, b.lo) < min(a.hi, b.hi)


@dataclass(frozen=True)
class PresentedInterval:
    id: int
    interval: Interval
    bandwidth: Fraction
    tag: str

    def __post_init__(self):
        if not (0 < self.bandwidth <= 1):
            raise ValueError("bandwidth must lie in (0, 1]")


class TranscriptEntry:
    """One presented interval together with the color the algorithm chose."""

    __slots__ = ("pi", "color")

    def __init__(self, pi: PresentedInterval, color: int):
        self.pi = pi
        self.color = color

    @property
    def id(self):
        return self.pi.id

    @property
    def interval(self):
        return self.pi.interval

    @property
    def bandwidth(self):
        return self.pi.bandwidth

    @property
    def tag(self):
        return self.pi.tag

    def retag(self, tag: str):
        self.pi = PresentedInterval(self.pi.id, self.pi.interval, self.pi.bandwidth, tag)


class Transcript:
    """Append-only ordered record of (presented interval, color) pairs."""

    def __init__(self, entries=None):
        self.entries = list(entries) if entries else []

    def append(self, pi: PresentedInterval, color: int) -> TranscriptEntry:
        if self.entries and pi.id <= self.entries[-1].id:
            raise ValueError("ids must be strictly increasing")
        e = TranscriptEntry(pi, color)
        self.entries.append(e)
        return e

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def colors(self):
        return sorted({e.color for e in self.entries})

    def to_json(self) -> list:
        return [
            {
                "id": e.id,
                "lo": e.interval.lo.to_json(),
                "hi": e.interval.hi.to_json(),
                "bandwidth": render_rational(e.bandwidth),
                "tag": e.tag,
                "color": e.color,
            }
            for e in self.entries
        ]

    @classmethod
    def from_json(cls, obj) -> "Transcript":
        t = cls()
        for row in obj:
            pi = PresentedInterval(
                int(row["id"]),
                Interval(Dyadic.from_json(row["lo"]), Dyadic.from_json(row["hi"])),
                parse_rational(row["bandwidth"]),
                row.get("tag", ""),
            )
            t.append(pi, int(row["color"]))
        return t


def load_at(t: Transcript, p: Dyadic, color: int) -> Fraction:
    """Sum of bandwidths of color-`color` entries whose interval contains p."""
    total = Fraction(0)
    for e in t:
        if e.color == color and e.interval.contains(p):
            total += e.bandwidth
    return total


def max_color_load(t: Transcript, color: int):
    """Exact max over all points of load_at(t, ., color), with a witness point.

    The load is piecewise constant and can only step up at a left endpoint,
    so sweeping the endpoint events suffices. Returns (load, point); the
    point is None for colors with no entries.
    """
    events = []
    for e in t:
        if e.color == color:
            events.append((e.interval.lo, 0, e.bandwidth))
            events.append((e.interval.hi, 1, -e.bandwidth))
    if not events:
        return Fraction(0), None
    # closings sort before openings at the same point: half-open semantics
    events.sort(key=lambda ev: (ev[0], ev[1] == 0))
    best = Fraction(0)
    at = None
    cur = Fraction(0)
    for point, _, delta in events:
        cur += delta
        if cur > best:
            best = cur
            at = point
    return best, at


def distinct_colors(t: Transcript) -> int:
    return len({e.color for e in t})


@dataclass(frozen=True)
class Violation:
    color: int
    point: Dyadic
    load: Fraction

    def describe(self) -> str:
        return "color %d has load %s at %s" % (self.color, self.load, self.point)


class Coloring:
    """A total color assignment over interval ids (an offline certificate)."""

    def __init__(self, colors=None):
        self.colors = dict(colors) if colors else {}

    def __getitem__(self, iid):
        return self.colors[iid]

    def __setitem__(self, iid, c):
        self.colors[iid] = c

    def __contains__(self, iid):
        return iid in self.colors

    def __len__(self):
        return len(self.colors)

    def distinct(self) -> int:
        return len(set(self.colors.values()))

    def to_json(self) -> dict:
        return {"colors": {str(i): c for i, c in self.colors.items()}}

    @classmethod
    def from_json(cls, obj) -> "Coloring":
        return cls({int(i): int(c) for i, c in obj["colors"].items()})


def coloring_violations(items, coloring: Coloring):
    """Check a coloring of (id, Interval, bandwidth) items against load <= 1.

    Returns a list of Violation, one per offending color class.
    """
    by_color = {}
    missing = [iid for iid, _, _ in items if iid not in coloring]
    if missing:
        raise KeyError("coloring does not cover ids %s" % missing[:5])
    for iid, iv, bw in items:
        by_color.setdefault(coloring[iid], []).append((iv, bw))
    out = []
    for c, members in sorted(by_color.items()):
        t = Transcript()
        for n, (iv, bw) in enumerate(members):
            t.append(PresentedInterval(n, iv, bw, ""), 0)
        load, point = max_color_load(t, 0)
        if load > 1:
            out.append(Violation(c, point, load))
    return out
