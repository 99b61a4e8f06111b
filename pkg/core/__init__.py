# core/__init__.py

"""
Core module shared by every stage: configuration constants, the error
hierarchy, run settings, table exporters and file helpers.
"""

__version__ = '1.0.0'
