"""Computational checks for one-relator relative presentations over groups."""
from .groups import Element, FiniteTable, Free, FreeAbelian, FormalSymbols, backend_from_json
from .words import FreeProduct, FreeSyllable, SubproductSpec, Word, cyclic_reduce, is_proper_power
from .presentations import GeneralizedPresentation, RelativePresentation, SetSystem
from .small_cancellation import check_cprime
from .howie import HowieDiagram, simulate, validate

__all__ = [
    "Element", "FiniteTable", "Free", "FreeAbelian", "FormalSymbols", "backend_from_json",
    "FreeProduct", "FreeSyllable", "SubproductSpec", "Word", "cyclic_reduce", "is_proper_power",
    "GeneralizedPresentation", "RelativePresentation", "SetSystem", "check_cprime",
    "HowieDiagram", "simulate", "validate",
]
