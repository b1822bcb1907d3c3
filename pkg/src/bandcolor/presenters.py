"""Presenter strategies: the schema-driven two-phase strategy and the unit
strategy, both built on a shared separation-phase script.

The separation phase repeatedly bisects a window [l, r): each new interval is
[p - s, p) with p = (l + r)/2. A reused color moves l up to p; a fresh color
marks the interval and moves r down to p. A subphase ends after exactly x_i
fresh colors, and the next subphase inherits [l, r) as its window.
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

from .exactnum import Dyadic, dyadic_mid
from .model import Coloring, Interval
from .engine import Move, PresenterContract, Stop
from .schema import KSchema, NotAStrategy, gamma_seq, is_k_strategy
from .kt import KTGame, kt_budget


class SubphaseBudgetExceeded(RuntimeError):
    """A subphase needed more intervals than (k/j_i)(k - Gamma_{i-1}); cannot
    happen against a legal algorithm when x_i <= Delta_i, so it signals a
    referee or opponent bug."""


class GeneratorPresenter(PresenterContract):
    """Drives a generator that yields Moves and receives canonical colors."""

    def __init__(self):
        self._gen = None
        self._view = None

    def _script(self):
        raise NotImplementedError

    def next_move(self, transcript):
        self._view = transcript
        try:
            if self._gen is None:
                self._gen = self._script()
                return next(self._gen)
            return self._gen.send(transcript[-1].color)
        except StopIteration as stop:
            return Stop(retag_last=stop.value)


def separation_script(schema: KSchema, gammas, seen):
    """Play all subphases of `schema`; yields Moves, receives colors.

    Returns (l, r, pending_retag): the surviving window for the final phase
    and the marked-retag owed to the last interval presented.
    """
    k = schema.k
    left, right = Dyadic(0), Dyadic(2)
    retag = None
    for idx, (j, x) in enumerate(schema.rows, 1):
        step = (right - left).half()
        l, r = left + step, right
        budget = (k // j) * (k - gammas[idx - 1])
        presented = 0
        fresh = 0
        bw = Fraction(j, k)
        while fresh < x:
            if presented >= budget:
                raise SubphaseBudgetExceeded(
                    "subphase %d exceeded its %d-interval budget" % (idx, budget))
            p = dyadic_mid(l, r)
            color = yield Move(Interval(p - step, p), bw, "sep:%d" % idx, retag)
            presented += 1
            if color in seen:
                l = p
                retag = None
            else:
                seen.add(color)
                r = p
                fresh += 1
                retag = "sep:%d:marked" % idx
        left, right = l, r
    return left, right, retag


class SchemaPresenter(GeneratorPresenter):
    """Separation phase driven by a k-strategy, then a bandwidth-1 final
    phase with omega = k - Gamma_n inside the surviving window."""

    def __init__(self, schema: KSchema, sep_only: bool = False):
        super().__init__()
        ok, viol = is_k_strategy(schema)
        if not ok:
            raise NotAStrategy("x_%d = %d exceeds delta_%d = %d"
                               % (viol[0], viol[1], viol[0], viol[2]))
        self.schema = schema
        self.sep_only = sep_only
        self.gammas = gamma_seq(schema)
        self.seen = set()
        self.final_region = None

    def _script(self):
        left, right, retag = yield from separation_script(
            self.schema, self.gammas, self.seen)
        self.final_region = Interval(left, right)
        omega = self.schema.k - self.gammas[-1]
        if self.sep_only or omega < 1:
            return retag
        game = KTGame(omega, self.final_region, tag="final")
        gen = game.script()
        mv = replace(next(gen), retag_last=retag)
        try:
            while True:
                color = yield mv
                mv = gen.send(color)
        except StopIteration:
            return None

    def certificate(self) -> Coloring:
        from .oracle import constructive_coloring

        return constructive_coloring(self._view, self.schema)

    def suggested_budget(self) -> int:
        k = self.schema.k
        total = sum((k // j) * (k - self.gammas[i])
                    for i, (j, _) in enumerate(self.schema.rows))
        omega = k - self.gammas[-1]
        if not self.sep_only and omega >= 1:
            total += kt_budget(omega)
        return total + 8


class UnitPresenter(GeneratorPresenter):
    """The unit-interval strategy: the separation phase of ([1],[k]) inside
    [0, 2) (so every interval has length exactly 1), then k - 1 copies of
    [p1, p1 + 1) at bandwidth 1."""

    def __init__(self, k: int):
        super().__init__()
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k
        self.schema = KSchema(k, [(1, k)])
        self.seen = set()
        self.p1 = None

    def _script(self):
        left, right, retag = yield from separation_script(
            self.schema, [0, 1], self.seen)
        self.p1 = dyadic_mid(left, right)
        one = Dyadic(1)
        for _ in range(self.k - 1):
            yield Move(Interval(self.p1, self.p1 + one), Fraction(1), "unit-final", retag)
            retag = None
        return retag

    def certificate(self) -> Coloring:
        from .oracle import constructive_coloring

        return constructive_coloring(self._view, self.schema)

    def suggested_budget(self) -> int:
        return self.k * self.k + self.k + 8


def make_presenter(spec: str, schema_loader=None) -> PresenterContract:
    """Build a presenter from its CLI string form.

    schema:<name-or-path> needs `schema_loader` to resolve the schema;
    kt:<omega> and unit:<k> are self-contained.
    """
    from .kt import KTPresenter

    kind, _, arg = spec.partition(":")
    if kind == "kt":
        return KTPresenter(int(arg))
    if kind == "unit":
        return UnitPresenter(int(arg))
    if kind == "schema":
        if schema_loader is None:
            raise ValueError("schema presenter needs a schema loader")
        return SchemaPresenter(schema_loader(arg))
    raise ValueError("unknown presenter spec %r" % spec)
