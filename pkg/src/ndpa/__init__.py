"""Non-degenerate parametric amplifier via the SU(1,1) tilting transformation."""

__version__ = "0.1.0"
