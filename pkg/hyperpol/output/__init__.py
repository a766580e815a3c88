"""
Report rendering and writing.
"""

from .template import ReportTemplateBuilder
from .writer import ReportWriter

__all__ = [
    'ReportTemplateBuilder',
    'ReportWriter',
]
