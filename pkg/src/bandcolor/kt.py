"""A presenter that forces 3*omega - 2 colors on an omega-colorable set.

All intervals have bandwidth 1 and stay inside a fixed region, so two
intervals may share a color only if they are disjoint and a point covered by
m intervals needs m colors; keeping the set omega-colorable is exactly
keeping every point covered by at most omega intervals.

The construction is recursive. To force 3w-2 colors with cover depth w:

  * play copies of the (w-1)-game in disjoint slots separated by empty
    buffers, cutting each copy off as soon as it has used 3(w-1)-2 distinct
    colors (its "palette");
  * while the game runs, the global palette stays below 3w-2 (otherwise we
    are done and stop), so by pigeonhole a bounded number of copies yields
    four copies P1 < P2 < P3 < P4 with the same palette S;
  * staple P1 and P4: intervals X1, X4 covering one copy each plus small
    tips poking into the empty buffers. Each staple conflicts with all of S.
    If the staples got different colors, one more interval running from
    inside X1's right tip to inside X4's left tip covers P2 and P3 and
    conflicts with S and both staple colors: |S| + 3 = 3w - 2 colors.
    Otherwise both staples wear color v; an interval from X1's right tip
    over P2 into the next buffer is forced off S + {v} (color u), and a last
    interval from that buffer over P3 into X4's left tip conflicts with
    S + {v, u}, again reaching 3w - 2 distinct colors.

Cover depth stays within w: every slot is covered by at most one of the
stapling/connector intervals, their pairwise overlaps happen in otherwise
empty buffers, and copies have depth at most w-1 by induction.

A clique filler (omega nested intervals in a reserved strip) is presented
first so the final set's maximum cover depth is exactly omega even when the
algorithm burns through 3w-2 colors early.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .exactnum import Dyadic, dyadic_mid
from .model import Coloring, Interval
from .engine import Move, PresenterContract, Stop

_BW1 = Fraction(1)


def _subdivide(lo: Dyadic, hi: Dyadic, parts_pow2: int) -> Dyadic:
    """Width of one part after halving [lo, hi) parts_pow2 times."""
    span = hi - lo
    return Dyadic(span.num, span.exp2 + parts_pow2)


def _slots(lo: Dyadic, hi: Dyadic, n: int):
    """n disjoint slots inside [lo, hi), each separated by an equal empty
    buffer, with margins at both ends. Returns (slot list, buffer width)."""
    parts = 2 * n + 2
    s = 1
    while (1 << s) < parts:
        s += 1
    w = _subdivide(lo, hi, s)
    slots = []
    for t in range(n):
        a = lo + w * (2 * t + 1)
        slots.append((a, a + w))
    return slots, w


class KTGame:
    """Generator-based script of the forcing game inside one region."""

    def __init__(self, omega: int, region: Interval, tag: str = "final"):
        if omega < 1:
            raise ValueError("omega must be >= 1")
        self.omega = omega
        self.region = region
        self.tag = tag
        self.seen = set()
        self.target = 3 * omega - 2

    def done(self) -> bool:
        return len(self.seen) >= self.target

    def _present(self, iv: Interval):
        color = yield Move(iv, _BW1, self.tag)
        self.seen.add(color)
        return color

    def script(self):
        lo, hi = self.region.lo, self.region.hi
        m1 = dyadic_mid(lo, hi)
        m0 = dyadic_mid(lo, m1)
        # clique filler: omega nested intervals pin the cover depth at omega
        q = m0
        for _ in range(self.omega):
            yield from self._present(Interval(lo, q))
            if self.done():
                return
            q = dyadic_mid(lo, q)
        yield from self._force(m1, hi, self.omega)
        if not self.done():
            raise RuntimeError("forcing ended below target; presenter bug")

    def _copy(self, lo: Dyadic, hi: Dyadic, omega: int):
        """Run a nested copy, cut off once it shows 3*omega - 2 colors."""
        cutoff = 3 * omega - 2
        palette = set()
        gen = self._force(lo, hi, omega)
        try:
            mv = next(gen)
            while True:
                color = yield mv
                self.seen.add(color)  # gen may never resume to record it
                palette.add(color)
                if len(palette) >= cutoff or self.done():
                    gen.close()
                    break
                mv = gen.send(color)
        except StopIteration:
            pass
        return frozenset(palette)

    def _force(self, lo: Dyadic, hi: Dyadic, omega: int):
        if self.done():
            return
        if omega == 1:
            yield from self._present(Interval(lo, hi))
            return
        palette_size = 3 * (omega - 1) - 2
        universe = 3 * self.omega - 3  # global palette bound while we keep playing
        max_copies = 3 * comb(universe, palette_size) + 4
        slots, w = _slots(lo, hi, max_copies)
        tip = Dyadic(w.num, w.exp2 + 2)  # w/4
        copies = []
        counts = {}
        quad = None
        for t in range(max_copies):
            a, b = slots[t]
            pal = yield from self._copy(a, b, omega - 1)
            if self.done():
                return
            copies.append((a, b, pal))
            counts[pal] = counts.get(pal, 0) + 1
            if counts[pal] == 4:
                quad = [c for c in copies if c[2] == pal]
                break
        if quad is None:
            raise RuntimeError("palette pigeonhole failed; presenter bug")
        (a1, b1, _), (a2, b2, _), (a3, b3, _), (a4, b4, _) = quad
        c1 = yield from self._present(Interval(a1 - tip, b1 + tip))
        if self.done():
            return
        c4 = yield from self._present(Interval(a4 - tip, b4 + tip))
        if self.done():
            return
        left_entry = dyadic_mid(b1, b1 + tip)    # inside X1's right tip
        right_entry = dyadic_mid(a4 - tip, a4)   # inside X4's left tip
        if c1 != c4:
            yield from self._present(Interval(left_entry, right_entry))
            return
        elbow = dyadic_mid(b2, b2 + w)           # empty buffer right of P2
        yield from self._present(Interval(left_entry, elbow))
        if self.done():
            return
        yield from self._present(Interval(dyadic_mid(b2, elbow), right_entry))


def kt_budget(omega: int, top_omega: int | None = None) -> int:
    """Upper bound on the rounds a KT game can take (filler included)."""
    top = top_omega if top_omega is not None else omega
    if omega <= 1:
        return 1
    universe = 3 * top - 3
    max_copies = 3 * comb(universe, 3 * (omega - 1) - 2) + 4
    inner = kt_budget(omega - 1, top)
    total = max_copies * inner + 5
    if top == omega:
        total += omega + 1  # clique filler
    return total


def kt_certificate(entries) -> Coloring:
    """Offline greedy coloring by left endpoint; optimal for intervals.

    entries: iterable with .id and .interval, all of bandwidth 1. Uses
    exactly as many colors as the maximum cover depth.
    """
    order = sorted(entries, key=lambda e: (e.interval.lo, e.interval.hi))
    cert = Coloring()
    color_until = []  # per color, the hi of its rightmost interval
    for e in order:
        for c, until in enumerate(color_until):
            if until <= e.interval.lo:
                color_until[c] = e.interval.hi
                cert[e.id] = c
                break
        else:
            cert[e.id] = len(color_until)
            color_until.append(e.interval.hi)
    return cert


class KTPresenter(PresenterContract):
    """Standalone contract wrapper for a KT game in a fixed region."""

    def __init__(self, omega: int, region: Interval | None = None):
        if region is None:
            region = Interval(Dyadic(0), Dyadic(2))
        self.params = (omega, region)
        self.game = KTGame(omega, region)
        self._gen = None
        self._view = None

    def next_move(self, transcript):
        self._view = transcript
        try:
            if self._gen is None:
                self._gen = self.game.script()
                return next(self._gen)
            return self._gen.send(transcript[-1].color)
        except StopIteration:
            return Stop()

    def certificate(self) -> Coloring:
        return kt_certificate(list(self._view)) if self._view else Coloring()

    def suggested_budget(self) -> int:
        return kt_budget(self.game.omega) + 4
