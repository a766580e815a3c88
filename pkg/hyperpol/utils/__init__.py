"""
Utility modules for the toolkit.
"""

from .logger import HyperpolLogger, get_logger, init_logger
from .validators import RotationValidator, VectorValidator

__all__ = [
    'HyperpolLogger',
    'get_logger',
    'init_logger',
    'RotationValidator',
    'VectorValidator',
]
