"""On-line coloring of intervals with bandwidth: adversary strategies, an
exact-arithmetic referee, and synthesis of the lower-bound ratio tables."""

from .exactnum import Dyadic, dyadic_mid, truncate_decimal
from .model import Interval, PresentedInterval, Transcript, Coloring, intersects
from .engine import play, verify_transcript, GameReport
from .schema import (KSchema, BinState, first_fit_pack, chi, gamma, delta,
                     scalable_cap, is_k_strategy, is_scalable, scale,
                     strategy_report, builtin_schema)
from .presenters import SchemaPresenter, UnitPresenter
from .kt import KTPresenter
from .algorithms import make_algorithm, zoo
from .oracle import constructive_coloring, exact_chromatic, load_lower_bound
from .search import divisors_upto_third, synthesize, ratio_table, headline_bound

__all__ = [
    "Dyadic", "dyadic_mid", "truncate_decimal",
    "Interval", "PresentedInterval", "Transcript", "Coloring", "intersects",
    "play", "verify_transcript", "GameReport",
    "KSchema", "BinState", "first_fit_pack", "chi", "gamma", "delta",
    "scalable_cap", "is_k_strategy", "is_scalable", "scale",
    "strategy_report", "builtin_schema",
    "SchemaPresenter", "UnitPresenter", "KTPresenter",
    "make_algorithm", "zoo",
    "constructive_coloring", "exact_chromatic", "load_lower_bound",
    "divisors_upto_third", "synthesize", "ratio_table", "headline_bound",
]
