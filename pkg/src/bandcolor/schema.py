"""k-schema arithmetic: chi/gamma/delta rows, strategy validation, scaling.

A k-schema is a pair of sequences (j_i), (x_i) with every j_i dividing k,
strictly increasing, and j_i <= k/3. Gamma is defined operationally as the
bin count of first-fit packing the marked-interval batches (j_i units, x_i
items) into bins of capacity k, in arrival order; that reproduces the
published Gamma rows exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import render_rational


class SizeExceedsCapacity(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class NotAStrategy(ValueError):
    pass


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


class BinState:
    """Run-length-compressed ordered first-fit bins.

    runs is a list of [load, count] with adjacent loads distinct and creation
    order preserved; identical items arriving consecutively fill the earliest
    fitting bins completely before moving on, so each batch touches O(1) runs.
    Counts may be astronomically large; everything is exact int arithmetic.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self.runs = []

    def clone(self) -> "BinState":
        b = BinState(self.capacity)
        b.runs = [r[:] for r in self.runs]
        return b

    @property
    def bins(self) -> int:
        return sum(m for _, m in self.runs)

    def loads(self):
        out = []
        for load, m in self.runs:
            out.extend([load] * m)
        return out

    def add_batch(self, size: int, count: int):
        cap = self.capacity
        if size > cap:
            raise SizeExceedsCapacity("item size %d exceeds capacity %d" % (size, cap))
        if count < 0:
            raise ValueError("count must be >= 0")
        r = count
        out = []
        for load, m in self.runs:
            if r > 0 and load + size <= cap:
                t = (cap - load) // size  # items each bin of this run absorbs
                q, rem = divmod(r, t)
                if q >= m:
                    out.append([load + t * size, m])
                    r -= m * t
                else:
                    if q:
                        out.append([load + t * size, q])
                    if rem:
                        out.append([load + rem * size, 1])
                    left = m - q - (1 if rem else 0)
                    if left:
                        out.append([load, left])
                    r = 0
            else:
                out.append([load, m])
        if r > 0:
            per = cap // size
            q, rem = divmod(r, per)
            if q:
                out.append([per * size, q])
            if rem:
                out.append([rem * size, 1])
        merged = []
        for load, m in out:
            if merged and merged[-1][0] == load:
                merged[-1][1] += m
            else:
                merged.append([load, m])
        self.runs = merged


def first_fit_pack(capacity: int, batches) -> BinState:
    """Pack batches of (size, count) identical items by first fit, in order."""
    state = BinState(capacity)
    for size, count in batches:
        state.add_batch(size, count)
    return state


class _MonotonePacker:
    """First-fit bin counter for batches of strictly increasing item size.

    Once the next size exceeds a bin's residual space the bin can never take
    another item, so it is retired to a counter. Used by the synthesizer,
    where k can be ~2e17 and thousands of batches arrive.
    """

    def __init__(self, capacity: int):
        self.capacity = capacity
        self.active = []
        self.retired = 0

    @property
    def bins(self) -> int:
        return self.retired + sum(m for _, m in self.active)

    def add_batch(self, size: int, count: int):
        cap = self.capacity
        r = count
        out = []
        for load, m in self.active:
            if load + size > cap:
                self.retired += m
                continue
            if r > 0:
                t = (cap - load) // size
                q, rem = divmod(r, t)
                if q >= m:
                    out.append([load + t * size, m])
                    r -= m * t
                else:
                    if q:
                        out.append([load + t * size, q])
                    if rem:
                        out.append([load + rem * size, 1])
                    left = m - q - (1 if rem else 0)
                    if left:
                        out.append([load, left])
                    r = 0
            else:
                out.append([load, m])
        if r > 0:
            per = cap // size
            q, rem = divmod(r, per)
            if q:
                out.append([per * size, q])
            if rem:
                out.append([rem * size, 1])
        keep = []
        for load, m in out:
            if load + size > cap:  # next batch is strictly larger, it will not fit either
                self.retired += m
            else:
                keep.append([load, m])
        self.active = keep


@dataclass(frozen=True)
class KSchema:
    k: int
    rows: tuple  # tuple of (j, x) pairs

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple((int(j), int(x)) for j, x in self.rows))
        if self.k < 1:
            raise ValueError("k must be >= 1")
        prev = 0
        for j, x in self.rows:
            if x < 1:
                raise ValueError("x values must be >= 1")
            if j <= prev:
                raise ValueError("j values must be strictly increasing")
            if self.k % j != 0:
                raise ValueError("j=%d does not divide k=%d" % (j, self.k))
            # j <= k/3 per the schema definition; j=1 is additionally allowed so
            # the ([1],[k]) strategies exist for k < 3 as the unit construction needs
            if 3 * j > self.k and j != 1:
                raise ValueError("j=%d exceeds k/3 for k=%d" % (j, self.k))
            prev = j
        object.__setattr__(self, "n", len(self.rows))

    def __len__(self):
        return len(self.rows)

    def to_json(self) -> dict:
        return {"k": str(self.k), "rows": [[str(j), str(x)] for j, x in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "KSchema":
        return cls(int(obj["k"]), [(int(j), int(x)) for j, x in obj["rows"]])


def _check_index(s: KSchema, i: int, lo: int):
    if not lo <= i <= len(s.rows):
        raise IndexOutOfRange("subphase index %d out of range [%d, %d]" % (i, lo, len(s.rows)))


def chi(s: KSchema, i: int) -> int:
    """Number of marked intervals after subphase i: sum of x_1..x_i."""
    _check_index(s, i, 0)
    return sum(x for _, x in s.rows[:i])


def gamma(s: KSchema, i: int) -> int:
    """First-fit bin count over the first i marked batches; gamma(s, 0) = 0."""
    _check_index(s, i, 0)
    return first_fit_pack(s.k, s.rows[:i]).bins


def gamma_seq(s: KSchema):
    """All of gamma(s, 0..n) in one incremental pass."""
    state = BinState(s.k)
    out = [0]
    for j, x in s.rows:
        state.add_batch(j, x)
        out.append(state.bins)
    return out


def delta(s: KSchema, i: int) -> int:
    """New colors forceable in subphase i: k - G - chi + ceil(j_i * chi / k)."""
    _check_index(s, i, 1)
    j = s.rows[i - 1][0]
    g = gamma(s, i - 1)
    c = chi(s, i - 1)
    return s.k - g - c + ceil_div(j * c, s.k)


def delta_product_form(s: KSchema, i: int) -> int:
    """The un-simplified ceil((j/k)((k/j)(k-G) - chi((k/j)-1))) form of delta."""
    _check_index(s, i, 1)
    j = s.rows[i - 1][0]
    g = gamma(s, i - 1)
    c = chi(s, i - 1)
    kj = s.k // j
    return ceil_div(j * (kj * (s.k - g) - c * (kj - 1)), s.k)


def is_k_strategy(s: KSchema):
    """(ok, first_violation): ok iff x_i <= delta_i for every subphase.

    On failure first_violation is (i, x_i, delta_i) for the smallest bad i.
    """
    state = BinState(s.k)
    c = 0
    for i, (j, x) in enumerate(s.rows, 1):
        d = s.k - state.bins - c + ceil_div(j * c, s.k)
        if x > d:
            return False, (i, x, d)
        state.add_batch(j, x)
        c += x
    return True, None


def scalable_cap(s: KSchema, i: int) -> int:
    """Floor of the scalability bound k + (1/k) * sum_{q<i} (j_i - j_q - k) x_q.

    The sum is typically negative; floor division toward minus infinity is
    what makes the integer cap correct.
    """
    _check_index(s, i, 1)
    j = s.rows[i - 1][0]
    acc = 0
    for q in range(i - 1):
        jq, xq = s.rows[q]
        acc += (j - jq - s.k) * xq
    return (s.k * s.k + acc) // s.k


def is_scalable(s: KSchema) -> bool:
    """A k-strategy whose rows also satisfy the scalability bound."""
    ok, _ = is_k_strategy(s)
    if not ok:
        return False
    chi_prev = 0
    jx_prev = 0
    for i, (j, x) in enumerate(s.rows, 1):
        cap = (s.k * s.k + j * chi_prev - jx_prev - s.k * chi_prev) // s.k
        if x > cap:
            return False
        chi_prev += x
        jx_prev += j * x
    return True


def scale(s: KSchema, a: int) -> KSchema:
    """The a-scaled schema: k' = a*k, rows (a*j_i, a*x_i)."""
    if a < 1:
        raise ValueError("scale factor must be >= 1")
    return KSchema(a * s.k, [(a * j, a * x) for j, x in s.rows])


@dataclass(frozen=True)
class StrategyReport:
    k: int
    forced_colors: int          # X = sum(x) + 3(k - Gamma_n) - 2
    gamma_n: int
    optimum_bound: int          # the presented set is k-colorable
    absolute_ratio: Fraction
    asymptotic_ratio: Fraction  # (sum(x) + 3(k - Gamma_n)) / k
    scalable: bool

    @property
    def claimable(self):
        return {"absolute": True, "asymptotic": self.scalable}

    def to_json(self) -> dict:
        return {
            "k": str(self.k),
            "forced_colors": str(self.forced_colors),
            "gamma_n": str(self.gamma_n),
            "optimum_bound": str(self.k),
            "absolute_ratio": render_rational(self.absolute_ratio),
            "asymptotic_ratio": render_rational(self.asymptotic_ratio),
            "claimable": self.claimable,
        }


def strategy_report(s: KSchema) -> StrategyReport:
    """Forced-color total and competitive ratios for a k-strategy."""
    ok, viol = is_k_strategy(s)
    if not ok:
        raise NotAStrategy("x_%d = %d exceeds delta_%d = %d" % (viol[0], viol[1], viol[0], viol[2]))
    sx = chi(s, len(s.rows))
    g = gamma(s, len(s.rows))
    forced = sx + 3 * (s.k - g) - 2
    return StrategyReport(
        k=s.k,
        forced_colors=forced,
        gamma_n=g,
        optimum_bound=s.k,
        absolute_ratio=Fraction(forced, s.k),
        asymptotic_ratio=Fraction(sx + 3 * (s.k - g), s.k),
        scalable=is_scalable(s),
    )


# Bundled example strategies for k = 120: the maximal per-row strategy and its
# scalable variant (they differ in rows 10 and 11), both with Gamma row
# (1,2,2,2,2,2,2,2,2,3,4,4,6).
_S120_ROWS = ((1, 120), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (8, 2),
              (10, 2), (12, 2), (15, 4), (20, 5), (24, 4), (30, 8))
_S120_SCALABLE_ROWS = ((1, 120), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (8, 2),
                       (10, 2), (12, 2), (15, 3), (20, 6), (24, 4), (30, 8))

BUILTIN_SCHEMAS = {
    "s120": lambda: KSchema(120, _S120_ROWS),
    "s120-scalable": lambda: KSchema(120, _S120_SCALABLE_ROWS),
}


def builtin_schema(name: str) -> KSchema:
    try:
        return BUILTIN_SCHEMAS[name]()
    except KeyError:
        raise KeyError("unknown builtin schema %r (have: %s)"
                       % (name, ", ".join(sorted(BUILTIN_SCHEMAS)))) from None


def derived_table(s: KSchema):
    """Rows of (i, j, x, chi_i, gamma_i, delta_i, scalable_cap_i) for display."""
    gs = gamma_seq(s)
    out = []
    c = 0
    for i, (j, x) in enumerate(s.rows, 1):
        d = s.k - gs[i - 1] - c + ceil_div(j * c, s.k)
        cap = scalable_cap(s, i)
        c += x
        out.append((i, j, x, c, gs[i], d, cap))
    return out
