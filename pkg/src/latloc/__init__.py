"""latloc: failure-lattice and N-gram fault localization over execution traces."""

__version__ = "0.1.0"
