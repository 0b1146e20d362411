"""Python interface to the absim weak-measurement simulator core."""

from ._absim import *  # noqa: F401,F403
