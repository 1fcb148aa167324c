"""Fake linear cycles on Fermat hypersurfaces: exact periods, Hodge loci and their tangent data."""

__version__ = "0.1.0"
