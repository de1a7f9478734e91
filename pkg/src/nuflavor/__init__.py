"""Multipartite flavor entanglement of oscillating neutrinos."""
from .multiqubit import (
    Bipartition,
    DensityMatrix,
    NumberObservable,
    PureState,
    average_linear_entropy,
    basis_index,
    linear_entropy,
    observable_moments,
    occupations,
    partial_trace,
    purity,
)

__version__ = "0.1.0"
