"""Heuristic prime counting: adjustment constants, predicted counts and exact censuses."""
from .census import CensusResult, count, goldbach_reps
from .constants import (
    PrecisionConfig, ap_constant, cunningham_constant, euler_gamma, grosswald_constant,
    hl_ck, pair_constant, quadratic_constant, twin_constant,
)
from .families import parse_family
from .predictor import PredictionResult, goldbach_prediction, predict
from .sieve import CapacityError, is_prime64, is_probable_prime, prime_count, primes_up_to
from .tuples import PolyTuple, is_admissible, parse_tuple
from .values import ConstantValue

__all__ = [
    "CapacityError", "CensusResult", "ConstantValue", "PolyTuple", "PrecisionConfig",
    "PredictionResult", "ap_constant", "count", "cunningham_constant", "euler_gamma",
    "goldbach_prediction", "goldbach_reps", "grosswald_constant", "hl_ck", "is_admissible",
    "is_prime64", "is_probable_prime", "pair_constant", "parse_family", "parse_tuple",
    "predict", "prime_count", "primes_up_to", "quadratic_constant", "twin_constant",
]
