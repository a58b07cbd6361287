"""Gender-imbalance auditing of alphabetically ordered first-name lists."""

from ._core import (
    Error,
    FormatError,
    MissingFileError,
    NameDataset,
    ValueError,
    collation_key,
    draw_sample,
    load_dataset,
    perc_f_curve,
    rnd,
    rnd_theoretical_normalizer,
    run_experiment,
    sort_alphabetical,
    statistical_parity,
)

__all__ = [
    "Error",
    "FormatError",
    "MissingFileError",
    "NameDataset",
    "ValueError",
    "collation_key",
    "draw_sample",
    "load_dataset",
    "perc_f_curve",
    "rnd",
    "rnd_theoretical_normalizer",
    "run_experiment",
    "sort_alphabetical",
    "statistical_parity",
]
