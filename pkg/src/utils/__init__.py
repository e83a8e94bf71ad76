"""
Модуль вспомогательных функций.
"""

from src.utils.helpers import (
    derive_seed,
    format_mean_table,
    pairs_accuracy,
    parse_float_list,
    parse_int_list,
    parse_variants,
    read_pairs_csv,
    write_alignment_csv,
    write_truth_csv
)

__all__ = [
    "derive_seed",
    "format_mean_table",
    "pairs_accuracy",
    "parse_float_list",
    "parse_int_list",
    "parse_variants",
    "read_pairs_csv",
    "write_alignment_csv",
    "write_truth_csv"
]
