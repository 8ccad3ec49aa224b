"""Exact engine for tri-linear rational maps (P1)^3 -> P3.

Decides birationality from the graded first-syzygy pattern, computes
inverse components with composition certificates, and classifies base
loci against the 19 stored orbit representatives.
"""

from .ring import (MultiDegree, MultiPoly, PolyParseError, format_poly,
                   parse_poly)
from .maps import MapValidationError, TriLinearMap
from .syzygy import BettiFingerprint, betti_fingerprint, new_syzygy_count, syzygy_space
from .birational import BirReport, decide
from .inverse import CompositionCertificate, InverseError, InverseMap, invert
from .atlas import (AmbiguousMatch, ClassifyError, ContactData, OrbitId,
                    OrbitRecord, audit_fingerprints, classify,
                    classify_detail, contact_point, degenerations,
                    line_census, random_in_orbit, representatives)

__version__ = "1.0.0"

__all__ = [
    "MultiDegree", "MultiPoly", "PolyParseError", "format_poly", "parse_poly",
    "MapValidationError", "TriLinearMap",
    "BettiFingerprint", "betti_fingerprint", "new_syzygy_count", "syzygy_space",
    "BirReport", "decide",
    "CompositionCertificate", "InverseError", "InverseMap", "invert",
    "AmbiguousMatch", "ClassifyError", "ContactData", "OrbitId", "OrbitRecord",
    "audit_fingerprints", "classify", "classify_detail", "contact_point",
    "degenerations", "line_census", "random_in_orbit", "representatives",
]
