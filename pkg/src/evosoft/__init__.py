"""evosoft: simulation and analysis toolkit for software-evolution models.

Subpackages cover network growth by copying, small-subgraph censuses,
distribution fitting (power-law, exponential, rank laws, waiting times),
competition dynamics among languages, frequency-dependent cultural
selection, algorithmic-complexity metrics for token streams, dependency
extraction from source trees, and change-log timing analysis. The
``evosoft`` command line drives all of it and ships pinned reproduction
recipes.
"""

__version__ = "0.1.0"
