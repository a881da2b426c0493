"""Bent functions, their designs and EA-classification."""

from ._bentkit import *  # noqa: F401,F403
from ._bentkit import __doc__  # noqa: F401
