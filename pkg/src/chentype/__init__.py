"""Exact symbolic engine for finite Chen-type analysis of surfaces under the third fundamental form."""

__version__ = "0.1.0"
