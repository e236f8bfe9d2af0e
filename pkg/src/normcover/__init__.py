"""Normal covering numbers and independent class sets for SL_n(q) <= G <= GL_n(q)."""

from __future__ import annotations

__version__ = "0.1.0"
