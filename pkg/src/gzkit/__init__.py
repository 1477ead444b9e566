"""Gelfand-Zeitlin systems on u(n) and so(n) coadjoint orbits and on polygon spaces."""
from .errors import GZError
from .flows import FlowSpec, gz_flow, verify_commutation
from .inverse import PhaseVector, border_once, inverse_gz, sample_fibre
from .orbits import (Group, MatrixPoint, OrbitSpec, sample_orbit, spectral_decomposition,
                     sweep)
from .patterns import (ChainSpec, GZPattern, branching_inequalities, check_interlacing, gz_map,
                       is_regular)
from .polygon import (PolygonConfig, TriangulationSpec, bend, diagonal_lengths,
                      polygon_polytope, sample_polygon)
from .polytope import (InequalitySystem, SimplexCertificate, certify_simplex, cut,
                       image_polytope, membership, vertices, width_lower_bound)

__version__ = "0.1.0"
