"""Second-order jets: exact first and second derivatives of scalar fields."""

from parasol.jets.jet2 import (
    FUNCTION_NAMES,
    Carrier,
    Jet2,
    JetDomainError,
    elementary,
    integer_power,
    jet_arith,
    jet_elementary,
    power,
    seed_jet,
)

__all__ = [
    "FUNCTION_NAMES",
    "Carrier",
    "Jet2",
    "JetDomainError",
    "elementary",
    "integer_power",
    "jet_arith",
    "jet_elementary",
    "power",
    "seed_jet",
]
