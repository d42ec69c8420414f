"""Tangle decomposition and exact enumeration of (3+1)-free posets."""

from .bigraph import BicolouredGraph
from .counting import p_lbl, p_lbl_series, p_unl, p_unl_series
from .generator import assemble, generate_all, oracle_count_labelled, oracle_count_unlabelled
from .poset import Poset, co_connected_components, format_poset, parse_poset
from .series import TruncatedSeries, solve_skeleton_series
from .skeleton import lex_max, parse_word, format_word, skeleton_of
from .tangles import aut_order, decompose

__version__ = "0.1.0"
