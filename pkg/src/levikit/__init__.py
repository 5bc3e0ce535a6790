"""
levikit: exact root data, Weyl group normalizers of Levi subgroups and
Clifford theory checks for finite groups.
"""

from .config import APP_VERSION as __version__

__all__ = ["__version__"]
