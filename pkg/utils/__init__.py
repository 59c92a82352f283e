from .types import (
    INFINITY,
    AlphaVector,
    BoundaryData,
    BoundState,
    C2Matrix,
    JunctionGeometry,
    PhaseForm,
    QuaternionDecomposition,
    RhoPair,
    ScatteringResult,
    Side,
    UnitaryU2,
)

__all__ = [
    "INFINITY",
    "AlphaVector",
    "BoundaryData",
    "BoundState",
    "C2Matrix",
    "JunctionGeometry",
    "PhaseForm",
    "QuaternionDecomposition",
    "RhoPair",
    "ScatteringResult",
    "Side",
    "UnitaryU2",
]
