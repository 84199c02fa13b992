"""Canonical families, deformation paths and reduction algorithms."""

from .families import *  # noqa: F401,F403
from .families import __all__ as _fam
from .paths import *  # noqa: F401,F403
from .paths import __all__ as _paths

__all__ = _fam + _paths
from .reduction import *  # noqa: F401,F403
from .reduction import __all__ as _red

__all__ = __all__ + _red
