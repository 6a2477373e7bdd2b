"""Online sequence predictors with mistake and state-size bounds, plus the string toolkit they need."""

from .core import AB, BINARY, Alphabet, Predictor, RunRecord, Word, run_predictor
from .hdp import HdpPredictor, run_hdp
from .lz77 import greedy_k_lz77, greedy_lz77, lzc
from .lzp import LzpPredictor, run_lzp

__all__ = [
    "AB",
    "BINARY",
    "Alphabet",
    "HdpPredictor",
    "LzpPredictor",
    "Predictor",
    "RunRecord",
    "Word",
    "greedy_k_lz77",
    "greedy_lz77",
    "lzc",
    "run_hdp",
    "run_lzp",
    "run_predictor",
]
