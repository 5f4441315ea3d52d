"""Linking-number certificates for Birkhoff sections of geodesic flows on
hyperbolic orbisurfaces."""

__version__ = "0.1.0"

from .birkhoff import GAMMA8, H, BaseOrbit, base_linking, certify, section_data
from .surgery import homology, q_form, surgered_linking, surgered_self_linking
from .template import load_model, s3_linking, s3_self_linking
from .words import S237, S334, SurfaceSpec, enumerate_orbits

__all__ = [
    "BaseOrbit", "GAMMA8", "H", "S237", "S334", "SurfaceSpec", "base_linking", "certify",
    "enumerate_orbits", "homology", "load_model", "q_form", "s3_linking", "s3_self_linking",
    "section_data", "surgered_linking", "surgered_self_linking",
]
