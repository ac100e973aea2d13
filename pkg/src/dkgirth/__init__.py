"""Girth of the bipartite graphs Lambda(k, q) over GF(q).

Modules: ``field`` (GF(p^m)), ``rho`` (pair-deletion polynomials),
``graph`` (vertices, adjacency, circuit types), ``girth`` (search),
``lift`` (circuit lifting rules), ``bounds`` (girth brackets), ``cli``.
"""

from .exceptions import DkGirthError, LiftPreconditionError, PaperFalsified
from .field import Elem, FieldSpec, mk_field, parse_q
from .girth import GirthResult, find_circuit_type, girth_bfs, girth_full_bfs
from .graph import CircuitCertificate, GraphParams, Vertex, WalkType, check_circuit, is_circuit_type
from .rho import rho

__all__ = [
    "DkGirthError",
    "LiftPreconditionError",
    "PaperFalsified",
    "Elem",
    "FieldSpec",
    "mk_field",
    "parse_q",
    "GirthResult",
    "find_circuit_type",
    "girth_bfs",
    "girth_full_bfs",
    "CircuitCertificate",
    "GraphParams",
    "Vertex",
    "WalkType",
    "check_circuit",
    "is_circuit_type",
    "rho",
]

__version__ = "0.1.0"
