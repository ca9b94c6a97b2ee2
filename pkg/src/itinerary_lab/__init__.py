"""Itinerary spaces of overlapping two-branch expanding interval maps."""

__version__ = "0.1.0"
