"""User interface components"""

from .workbench import RingWorkbench

__all__ = ['RingWorkbench']
