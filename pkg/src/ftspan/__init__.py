"""Light edge-fault-tolerant graph spanners: construction, verification, measurement."""

__version__ = "0.1.0"
