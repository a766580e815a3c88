"""
SHG hyperpolarizability toolkit.

Sum-over-states beta(-2w; w, w) for few-level molecular models in the
standard and fluctuation-dipole representations, with the equivalence
audit, single-centre SHG amplitude and static environment shifts.
"""

__version__ = '1.0.0'
