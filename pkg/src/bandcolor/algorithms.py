"""Opponent zoo: legal Algorithm implementations to play against Presenters.

Every algorithm only ever returns a color whose load stays within 1, so the
referee should never flag them. random-fit draws from the Mersenne Twister
(random.Random) so that a (kind, seed) pair replays identically.
"""

from __future__ import annotations

import random

from .engine import AlgorithmContract


class FirstFit(AlgorithmContract):
    """Smallest feasible existing color, else a fresh one."""

    def choose_color(self, view, interval, bandwidth):
        for c in range(view.num_colors):
            if view.feasible(c, interval, bandwidth):
                return c
        return view.num_colors


class _FitByPeak(AlgorithmContract):
    """Shared scan: pick a feasible color by the peak load it would create
    inside the incoming interval; ties break toward the smallest index."""

    prefer_max = True

    def choose_color(self, view, interval, bandwidth):
        best = None
        best_peak = None
        for c in range(view.num_colors):
            if not view.feasible(c, interval, bandwidth):
                continue
            peak = view.peak_in(c, interval) + bandwidth
            if best is None:
                best, best_peak = c, peak
            elif self.prefer_max and peak > best_peak:
                best, best_peak = c, peak
            elif not self.prefer_max and peak < best_peak:
                best, best_peak = c, peak
        if best is None:
            return view.num_colors
        return best


class BestFit(_FitByPeak):
    prefer_max = True


class WorstFit(_FitByPeak):
    prefer_max = False


class RandomFit(AlgorithmContract):
    """Uniform choice among feasible existing colors plus a fresh color."""

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    def choose_color(self, view, interval, bandwidth):
        options = [c for c in range(view.num_colors)
                   if view.feasible(c, interval, bandwidth)]
        options.append(view.num_colors)  # the fresh-color option, always last
        return options[self._rng.randrange(len(options))]


class AlwaysColorZero(AlgorithmContract):
    """Deliberately illegal opponent for referee tests: always answers 0."""

    def choose_color(self, view, interval, bandwidth):
        return 0


def make_algorithm(spec: str) -> AlgorithmContract:
    """Build a zoo algorithm from its string form, e.g. "random-fit:7"."""
    if spec == "first-fit":
        return FirstFit()
    if spec == "best-fit":
        return BestFit()
    if spec == "worst-fit":
        return WorstFit()
    if spec.startswith("random-fit:"):
        return RandomFit(int(spec.split(":", 1)[1]))
    raise ValueError("unknown algorithm spec %r" % spec)


ZOO_KINDS = ("first-fit", "best-fit", "worst-fit")


def zoo(random_seeds=()) -> list:
    """The deterministic zoo plus random-fit instances for the given seeds."""
    algs = [make_algorithm(kind) for kind in ZOO_KINDS]
    algs.extend(RandomFit(s) for s in random_seeds)
    return algs
