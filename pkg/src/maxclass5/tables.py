"""Flat table bundle consumed by the collection kernels.

Packed element ids are e_x + 5*e_y + 25*g where g indexes the abelian part.
Both kernel backends (C extension and numpy fallback) read exactly this
structure, so results are bit-identical across them.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np


class KernelTables(NamedTuple):
    n: int           # order exponent, |G| = 5^n
    d: int           # number of gamma generators, n - 2
    m: int           # gamma size, 5^d
    W: np.ndarray    # (d, d) int64 carry words, W[j] = digits of s_{j+2}^5
    DIG: np.ndarray  # (m, d) int64 digit expansion of every gamma index
    PHI: np.ndarray  # (5, m) int32, conj of gamma by x^e
    PSI: np.ndarray  # (5, m) int32, conj of gamma by y^e
    TW: np.ndarray   # (5, 5) int32 gamma indices: y^b x^d = x^d y^b TW[b,d]
    X5: int          # gamma index of x^5
    Y5: int          # gamma index of y^5
    GNEG: np.ndarray            # (m,) int32 gamma negation
    GADD: Optional[np.ndarray]  # (m, m) int32 gamma addition, or None

    @property
    def order(self) -> int:
        return 25 * self.m
