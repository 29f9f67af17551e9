"""Thue-Morse gap sequences, decorated matchings and discrepancy transducers."""

from .errors import (AlphabetMismatch, BudgetExceeded, InvalidMatching, NotAFactor,
                     NotProlongable, ParseError, TmGapsError, TransducerError,
                     UnsupportedLength)
from .words import Alphabet, Morphism, MorphicStream, Word, apply, gaps_by_scan, occurrences

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "Morphism", "MorphicStream", "Word", "apply", "gaps_by_scan", "occurrences",
    "AlphabetMismatch", "BudgetExceeded", "InvalidMatching", "NotAFactor", "NotProlongable",
    "ParseError", "TmGapsError", "TransducerError", "UnsupportedLength",
]
