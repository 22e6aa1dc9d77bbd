"""Coverage, rate and idle-mode analysis of multi-tier heterogeneous cellular networks."""

__version__ = "0.1.0"
