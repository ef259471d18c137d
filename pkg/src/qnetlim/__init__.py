"""Feasibility analysis and simulation toolkit for noisy quantum networks.

Subpackages:

- ``qstate``   : two-qubit states, noise channels, swap and nonlocality measures
- ``repeater`` : closed-form feasibility of linear repeater chains
- ``netgraph`` : weighted-graph robustness metrics and topology generators
- ``scenario`` : satellite / atmospheric / airport-network calculators
- ``buffersim``: deterministic entanglement-buffer simulation
- ``cli``      : command-line front end (``python -m qnetlim``)
"""

__version__ = "0.1.0"
