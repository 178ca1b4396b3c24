"""Nested separations in matroids: connectivity, dissections, schemes over GF(q), branch-width."""

from .connectivity import kappa, lam, local_conn, tutte_link
from .corpus import named
from .dissection import Dissection, extract_linked, find_longest_dissection, validate
from .fileformat import parse_matroid, serialize
from .geometry import Tower, tower
from .matroid import BasisMatroid, GraphicMatroid, LinearMatroid, Matroid, UniformMatroid

__version__ = "0.1.0"
