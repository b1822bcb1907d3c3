"""The referee: plays the two-person game, enforcing legality of every move.

The referee validates incrementally (only points inside the incoming interval
can change), while verify_transcript is an independent from-scratch check used
to cross-validate it. Algorithms see the public transcript through a GameView
that exposes intervals, bandwidths and colors but not presenter tags.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exactnum import Dyadic
from .model import (Coloring, Interval, PresentedInterval, Transcript,
                    Violation, coloring_violations, distinct_colors,
                    max_color_load)


class GameError(Exception):
    pass


class IllegalColor(GameError):
    def __init__(self, round_no: int, point: Dyadic, color: int, load: Fraction):
        self.round_no = round_no
        self.point = point
        self.color = color
        self.load = load
        super().__init__(
            "round %d: color %d reaches load %s at point %s" % (round_no, color, load, point)
        )


class BudgetExhausted(GameError):
    def __init__(self, budget: int):
        self.budget = budget
        super().__init__("presenter did not stop within %d rounds" % budget)


class InvalidCertificate(GameError):
    def __init__(self, violations):
        self.violations = violations
        super().__init__(
            "presenter certificate is not a legal coloring: %s"
            % "; ".join(v.describe() for v in violations[:3])
        )


@dataclass(frozen=True)
class Move:
    interval: Interval
    bandwidth: Fraction
    tag: str = ""
    retag_last: str | None = None


@dataclass(frozen=True)
class Stop:
    retag_last: str | None = None


class PresenterContract:
    """Deterministic move source plus an offline colorability certificate."""

    def next_move(self, transcript: Transcript):
        raise NotImplementedError

    def certificate(self) -> Coloring:
        raise NotImplementedError

    def suggested_budget(self):
        return None


class AlgorithmContract:
    """Chooses a color for each incoming interval; legality is not trusted."""

    def choose_color(self, view: "GameView", interval: Interval, bandwidth: Fraction):
        raise NotImplementedError


class ColorLoadProfile:
    """Piecewise-constant load of one color class, exact and incremental.

    Breakpoints are integers at a common power-of-two scale; loads are
    numerators over a common denominator. Feasibility checks first try two
    O(1) bounds (total bandwidth, and the running peak plateau as an
    infeasibility witness) before an exact segment scan.
    """

    __slots__ = ("scale", "keys", "loads", "den", "total_num",
                 "peak_num", "peak_lo", "peak_hi")

    def __init__(self):
        self.scale = 0
        self.keys = []
        self.loads = []  # loads[i] on [keys[i], keys[i+1]); 0 after the last key
        self.den = 1
        self.total_num = 0
        self.peak_num = 0
        self.peak_lo = None  # plateau of the current global peak
        self.peak_hi = None

    def _key(self, d: Dyadic) -> int:
        if d.exp2 > self.scale:
            shift = d.exp2 - self.scale
            self.keys = [k << shift for k in self.keys]
            if self.peak_lo is not None:
                self.peak_lo <<= shift
                self.peak_hi <<= shift
            self.scale = d.exp2
            return d.num
        return d.num << (self.scale - d.exp2)

    def _weight(self, bw: Fraction):
        q = bw.denominator
        if self.den % q:
            factor = q // gcd(self.den, q)
            self.loads = [v * factor for v in self.loads]
            self.total_num *= factor
            self.peak_num *= factor
            self.den *= factor
        return bw.numerator * (self.den // q)

    def _ensure_point(self, key: int):
        pos = bisect_left(self.keys, key)
        if pos < len(self.keys) and self.keys[pos] == key:
            return
        inherited = self.loads[pos - 1] if pos > 0 else 0
        self.keys.insert(pos, key)
        self.loads.insert(pos, inherited)

    def add(self, lo: Dyadic, hi: Dyadic, bw: Fraction):
        w = self._weight(bw)
        a = self._key(lo)
        b = self._key(hi)
        self._ensure_point(a)
        self._ensure_point(b)
        ia = bisect_left(self.keys, a)
        ib = bisect_left(self.keys, b)
        for i in range(ia, ib):
            v = self.loads[i] + w
            self.loads[i] = v
            if v > self.peak_num:
                self.peak_num = v
                self.peak_lo = self.keys[i]
                self.peak_hi = self.keys[i + 1]
        self.total_num += w

    def peak_in(self, lo: Dyadic, hi: Dyadic):
        """Exact max load over [lo, hi): (Fraction, witness Dyadic)."""
        a = self._key(lo)
        b = self._key(hi)
        if not self.keys:
            return Fraction(0), lo
        ia = bisect_right(self.keys, a) - 1
        best = self.loads[ia] if ia >= 0 else 0
        at = a
        ib = bisect_left(self.keys, b)
        for i in range(ia + 1, ib):
            if self.loads[i] > best:
                best = self.loads[i]
                at = self.keys[i]
        return Fraction(best, self.den), Dyadic(at, self.scale)

    def feasible(self, lo: Dyadic, hi: Dyadic, bw: Fraction) -> bool:
        """Would adding [lo, hi) at bandwidth bw keep this color's load <= 1?"""
        q = bw.denominator
        if self.den % q == 0:
            w = bw.numerator * (self.den // q)
            if self.total_num + w <= self.den:
                return True
            if self.peak_num + w > self.den and self.peak_lo is not None:
                a = self._key(lo)
                b = self._key(hi)
                if self.peak_lo < b and a < self.peak_hi:
                    return False
            a = self._key(lo)
            b = self._key(hi)
            ia = bisect_right(self.keys, a) - 1
            limit = self.den - w
            if ia >= 0 and self.loads[ia] > limit:
                return False
            ib = bisect_left(self.keys, b)
            for i in range(ia + 1, ib):
                if self.loads[i] > limit:
                    return False
            return True
        peak, _ = self.peak_in(lo, hi)
        return peak + bw <= 1


class LoadBook:
    """Per-color load profiles for the whole game."""

    def __init__(self):
        self.profiles = []

    def profile(self, color: int) -> ColorLoadProfile:
        while len(self.profiles) <= color:
            self.profiles.append(ColorLoadProfile())
        return self.profiles[color]

    def add(self, color: int, iv: Interval, bw: Fraction):
        self.profile(color).add(iv.lo, iv.hi, bw)

    def feasible(self, color: int, iv: Interval, bw: Fraction) -> bool:
        if color >= len(self.profiles):
            return bw <= 1
        return self.profiles[color].feasible(iv.lo, iv.hi, bw)

    def peak_in(self, color: int, iv: Interval):
        if color >= len(self.profiles):
            return Fraction(0), iv.lo
        return self.profiles[color].peak_in(iv.lo, iv.hi)


class GameView:
    """What an Algorithm is allowed to see: the public transcript, no tags."""

    def __init__(self, transcript: Transcript, book: LoadBook):
        self._t = transcript
        self._book = book

    def __len__(self):
        return len(self._t)

    def entries(self):
        for e in self._t:
            yield e.id, e.interval, e.bandwidth, e.color

    @property
    def num_colors(self) -> int:
        return len(self._book.profiles)

    def feasible(self, color: int, iv: Interval, bw: Fraction) -> bool:
        return self._book.feasible(color, iv, bw)

    def peak_in(self, color: int, iv: Interval) -> Fraction:
        return self._book.peak_in(color, iv)[0]


@dataclass
class GameReport:
    transcript: Transcript
    colors_used: int
    certificate: Coloring
    certificate_colors: int
    violations: list
    per_phase_stats: dict

    def to_json(self) -> dict:
        return {
            "transcript": self.transcript.to_json(),
            "colors_used": self.colors_used,
            "certificate": self.certificate.to_json(),
            "certificate_colors": self.certificate_colors,
            "violations": [v.describe() for v in self.violations],
            "per_phase_stats": self.per_phase_stats,
        }


def _phase_of(tag: str) -> str:
    return tag[:-7] if tag.endswith(":marked") else tag


def per_phase_stats(t: Transcript) -> dict:
    stats = {}
    seen = set()
    for e in t:
        phase = _phase_of(e.tag)
        st = stats.setdefault(phase, {"intervals": 0, "new_colors": 0})
        st["intervals"] += 1
        if e.color not in seen:
            seen.add(e.color)
            st["new_colors"] += 1
    return stats


def play(presenter: PresenterContract, algorithm: AlgorithmContract,
         budget: int | None = None) -> GameReport:
    """Run a full game; raises on an illegal response, blown budget, or a bad
    certificate, and otherwise returns the validated report."""
    if budget is None:
        budget = presenter.suggested_budget()
    if budget is None or budget <= 0:
        raise ValueError("a positive round budget is required")
    transcript = Transcript()
    book = LoadBook()
    view = GameView(transcript, book)
    tokens = {}
    while True:
        mv = presenter.next_move(transcript)
        if isinstance(mv, Stop) or mv is None:
            if mv is not None and mv.retag_last and transcript.entries:
                transcript.entries[-1].retag(mv.retag_last)
            break
        if mv.retag_last and transcript.entries:
            transcript.entries[-1].retag(mv.retag_last)
        if len(transcript) >= budget:
            raise BudgetExhausted(budget)
        if not (0 < mv.bandwidth <= 1):
            raise ValueError("presenter bandwidth %s outside (0, 1]" % mv.bandwidth)
        token = algorithm.choose_color(view, mv.interval, mv.bandwidth)
        color = tokens.setdefault(token, len(tokens))
        peak, witness = book.peak_in(color, mv.interval)
        if peak + mv.bandwidth > 1:
            raise IllegalColor(len(transcript) + 1, witness, color, peak + mv.bandwidth)
        pi = PresentedInterval(len(transcript), mv.interval, mv.bandwidth, mv.tag)
        transcript.append(pi, color)
        book.add(color, mv.interval, mv.bandwidth)
    cert = presenter.certificate()
    items = [(e.id, e.interval, e.bandwidth) for e in transcript]
    viols = coloring_violations(items, cert)
    if viols:
        raise InvalidCertificate(viols)
    return GameReport(
        transcript=transcript,
        colors_used=distinct_colors(transcript),
        certificate=cert,
        certificate_colors=cert.distinct(),
        violations=[],
        per_phase_stats=per_phase_stats(transcript),
    )


def verify_transcript(t: Transcript):
    """From-scratch legality check; violations are data, not errors."""
    out = []
    for color in t.colors():
        load, point = max_color_load(t, color)
        if load > 1:
            out.append(Violation(color, point, load))
    return out
