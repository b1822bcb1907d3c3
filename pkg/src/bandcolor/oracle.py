"""Offline verification: constructive certificates and tiny exact optima.

The constructive coloring follows the strategy's own argument: marked
intervals are first-fit packed (which is what defines Gamma), non-marked
intervals fill residual capacity color by color, and final-phase intervals
take the colors no marked interval uses. Certificates, not exhaustive
search, are the colorability evidence for large games; exact search is
capped at 25 intervals.
"""

from __future__ import annotations

from fractions import Fraction

from .model import Coloring, Transcript, coloring_violations, intersects
from .schema import KSchema
from .kt import kt_certificate


class CertificateInfeasible(RuntimeError):
    """The constructive coloring could not be built or failed validation;
    signals a presenter or schema bug, not a user error."""


class TooLarge(ValueError):
    pass


def _subphase_of(tag: str):
    parts = tag.split(":")
    return int(parts[1])


def constructive_coloring(t: Transcript, s: KSchema) -> Coloring:
    """Build the k-coloring certificate for a schema (or unit) game."""
    k = s.k
    sep = []
    finals = []
    unit_finals = []
    for e in t:
        if e.tag.startswith("sep:"):
            sep.append(e)
        elif e.tag == "final":
            finals.append(e)
        elif e.tag == "unit-final":
            unit_finals.append(e)
        else:
            raise CertificateInfeasible("unknown tag %r in transcript" % e.tag)

    # Marked intervals are each color's first appearance in the separation
    # phase; cross-check against the presenter's tags.
    seen = set()
    marked = []
    nonmarked = []
    for e in sep:
        first_of_color = e.color not in seen
        if first_of_color:
            seen.add(e.color)
            marked.append(e)
        else:
            nonmarked.append(e)
        if e.tag.endswith(":marked") != first_of_color:
            raise CertificateInfeasible("marked tag disagrees with transcript at id %d" % e.id)

    # First-fit pack the marked intervals; bin index = certificate color.
    cert = Coloring()
    bins = []  # unit loads
    members = {}  # bin -> list of (subphase, size)
    for e in marked:
        size = k * e.bandwidth  # j_i, exact
        if size.denominator != 1:
            raise CertificateInfeasible("bandwidth %s is not a j/k multiple" % e.bandwidth)
        size = size.numerator
        i = _subphase_of(e.tag)
        for b in range(len(bins)):
            if bins[b] + size <= k:
                bins[b] += size
                members.setdefault(b, []).append((i, size))
                cert[e.id] = b
                break
        else:
            bins.append(size)
            members.setdefault(len(bins) - 1, []).append((i, size))
            cert[e.id] = len(bins) - 1
    gamma_n = len(bins)
    if gamma_n > k:
        raise CertificateInfeasible("marked intervals need more than k colors")

    # Non-marked intervals of subphase i conflict with everything in their
    # region: all marked intervals from subphases <= i and each other. Fill
    # colors in index order within each region's residual capacity.
    by_sub = {}
    for e in nonmarked:
        by_sub.setdefault(_subphase_of(e.tag), []).append(e)
    for i in sorted(by_sub):
        usage = [0] * k
        for b, lst in members.items():
            usage[b] = sum(size for q, size in lst if q <= i)
        for e in by_sub[i]:
            size = (k * e.bandwidth).numerator
            for c in range(k):
                if usage[c] + size <= k:
                    usage[c] += size
                    cert[e.id] = c
                    break
            else:
                raise CertificateInfeasible(
                    "no residual capacity for a non-marked interval of subphase %d" % i)

    # Final-phase intervals take the colors unused by marked intervals.
    free = list(range(gamma_n, k))
    if finals:
        local = kt_certificate(finals)
        width = local.distinct()
        if width > len(free):
            raise CertificateInfeasible(
                "final phase needs %d colors, only %d are free" % (width, len(free)))
        for e in finals:
            cert[e.id] = free[local[e.id]]
    if unit_finals:
        if len(unit_finals) > len(free):
            raise CertificateInfeasible(
                "unit final phase needs %d colors, only %d are free" % (len(unit_finals), len(free)))
        for pos, e in enumerate(unit_finals):
            cert[e.id] = free[pos]

    viols = coloring_violations([(e.id, e.interval, e.bandwidth) for e in t], cert)
    if viols:
        raise CertificateInfeasible(
            "constructive coloring fails validation: %s" % viols[0].describe())
    return cert


def load_lower_bound(items) -> int:
    """Ceiling of the peak total bandwidth; a lower bound on the optimum.

    items: iterable of (Interval, bandwidth). The load is piecewise constant
    and only steps up at left endpoints, so those are the only test points.
    """
    items = list(items)
    best = Fraction(0)
    for iv, _ in items:
        p = iv.lo
        here = sum((bw for jv, bw in items if jv.contains(p)), Fraction(0))
        if here > best:
            best = here
    return -(-best.numerator // best.denominator)


def exact_chromatic(items, cap: int = 25) -> int:
    """Minimum colors for (Interval, bandwidth) items, by exhaustive search.

    Depth-first over color assignments with symmetry breaking (color c+1 may
    only be opened after color c) and branch-and-bound against the best
    complete coloring found so far.
    """
    items = sorted(items, key=lambda p: (p[0].lo, p[0].hi))
    n = len(items)
    if n == 0:
        return 0
    if n > cap:
        raise TooLarge("exact search capped at %d intervals, got %d" % (cap, n))

    # conflict-feasibility: adding item idx to a color class keeps loads <= 1
    def fits(idx, cls):
        iv, bw = items[idx]
        # peak inside iv among class members: evaluate at left endpoints
        points = [iv.lo] + [items[m][0].lo for m in cls if iv.contains(items[m][0].lo)]
        for p in points:
            load = bw if iv.contains(p) else Fraction(0)
            for m in cls:
                jv, mbw = items[m]
                if jv.contains(p):
                    load += mbw
            if load > 1:
                return False
        return True

    # greedy first fit gives the initial upper bound
    classes = []
    for idx in range(n):
        for cls in classes:
            if fits(idx, cls):
                cls.append(idx)
                break
        else:
            classes.append([idx])
    best = len(classes)
    lower = load_lower_bound(items)
    if best == lower:
        return best

    def dfs(idx, classes):
        nonlocal best
        if len(classes) >= best:
            return
        if idx == n:
            best = len(classes)
            return
        for cls in classes:
            if fits(idx, cls):
                cls.append(idx)
                dfs(idx + 1, classes)
                cls.pop()
                if best == lower:
                    return
        if len(classes) + 1 < best:
            classes.append([idx])
            dfs(idx + 1, classes)
            classes.pop()

    dfs(0, [])
    return best
