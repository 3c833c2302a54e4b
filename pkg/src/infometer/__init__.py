"""Multi-scale Shannon information content of discrete patterns."""

from ._backend import NAME as KERNEL
from .measures import (
    MAXIMAL,
    NORMALIZED,
    RAW,
    InvalidScale,
    MeasureReport,
    ScaleTiming,
    Spectrum,
    SpectrumSet,
    blocks,
    max_information,
    max_spectrum,
    measure,
    normalized_spectrum,
    partition,
    profile_spectrum,
    relative_information,
    round_bits,
    shannon_information,
    spectra,
    spectrum,
    ssm_information,
)
from .pattern import Alphabet, Block, FrequencyTable, Pattern, frequencies

__version__ = "0.1.0"

__all__ = [
    "KERNEL", "MAXIMAL", "NORMALIZED", "RAW", "Alphabet", "Block", "FrequencyTable",
    "InvalidScale", "MeasureReport", "Pattern", "ScaleTiming", "Spectrum", "SpectrumSet",
    "blocks", "frequencies", "max_information", "max_spectrum", "measure",
    "normalized_spectrum", "partition", "profile_spectrum", "relative_information",
    "round_bits", "shannon_information", "spectra", "spectrum", "ssm_information",
]
