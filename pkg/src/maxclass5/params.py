"""Presentation parameters (n, w, z, a) and their validation.

A group in the family is named by the exponent n of its order 5^n, two
exponents w, z in Z/5 and a tuple a = (a_{n-1}, ..., a_{n-k}) of Z/5
exponents, k = len(a).  Only p = 5 is supported; the prime is kept as an
explicit field so the constant is isolated in one place.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ParamError

PRIME = 5

#: Hard cap on the order exponent; packed element ids must stay machine-sized.
MAX_N = 12


@dataclass(frozen=True)
class PresentationParams:
    """Canonical, validated tuple naming one family member."""

    n: int
    w: int
    z: int
    a: tuple = field(default=())
    p: int = PRIME

    @property
    def k(self) -> int:
        """Length of the exponent tuple a (upper bound for the defect)."""
        return len(self.a)

    def descriptor(self) -> dict:
        """JSON-ready group descriptor with keys exactly p, n, w, z, a."""
        return {"p": self.p, "n": self.n, "w": self.w, "z": self.z,
                "a": list(self.a)}

    def to_json(self) -> str:
        return json.dumps(self.descriptor())

    @classmethod
    def from_descriptor(cls, d: dict) -> "PresentationParams":
        missing = {"p", "n", "w", "z", "a"} - set(d)
        if missing:
            raise ParamError(sorted(missing)[0], "missing descriptor key")
        if d["p"] != PRIME:
            raise ParamError("p", f"only p = {PRIME} is supported")
        return validate_params(d["n"], d["w"], d["z"], tuple(d["a"]))

    @classmethod
    def from_json(cls, s: str) -> "PresentationParams":
        return cls.from_descriptor(json.loads(s))

    def __str__(self):
        return f"(n={self.n}, w={self.w}, z={self.z}, a={self.a})"


def validate_params(n, w, z, a=()) -> PresentationParams:
    """Validate and canonicalize raw integers into PresentationParams.

    w, z and the entries of a are reduced mod 5.  Rejected: n < 4,
    k > min(n-4, 3), and a leading zero in a nonempty a (the zero tuple
    entry would name the same relation word as the shorter tuple).
    """
    for name, val in (("n", n), ("w", w), ("z", z)):
        if not isinstance(val, int) or isinstance(val, bool):
            raise ParamError(name, f"expected an integer, got {val!r}")
    if n < 4:
        raise ParamError("n", f"n must be at least 4, got {n}")
    if n > MAX_N:
        raise ParamError("n", f"n must be at most {MAX_N}, got {n}")
    try:
        a = tuple(int(x) for x in a)
    except (TypeError, ValueError):
        raise ParamError("a", f"expected a tuple of integers, got {a!r}")
    k = len(a)
    kmax = min(n - 4, PRIME - 2)
    if k > kmax:
        raise ParamError("a", f"k={k} exceeds min(n-4, {PRIME - 2})={kmax}")
    a = tuple(x % PRIME for x in a)
    if a and a[0] == 0:
        raise ParamError("a", "leading entry a_{n-1} must be nonzero; "
                              "drop it or use a shorter tuple")
    return PresentationParams(n=n, w=w % PRIME, z=z % PRIME, a=a)


def iter_valid_params(n, kmax=None):
    """Yield every valid (w, z, a) combination for order exponent n.

    Tuples come out in a fixed deterministic order: by k, then lexicographic
    a, then w, then z.  ``kmax`` optionally restricts the a-tuple length
    (the n = 8 sweep uses kmax=0).
    """
    import itertools

    lim = min(n - 4, PRIME - 2)
    if kmax is not None:
        lim = min(lim, kmax)
    a_tuples = [()]
    for k in range(1, lim + 1):
        for lead in range(1, PRIME):
            for rest in itertools.product(range(PRIME), repeat=k - 1):
                a_tuples.append((lead,) + tuple(rest))
    for a in a_tuples:
        for w in range(PRIME):
            for z in range(PRIME):
                yield validate_params(n, w, z, a)


def count_valid_params(n, kmax=None) -> int:
    """Closed-form count of valid (w, z, a) tuples for a given n."""
    lim = min(n - 4, PRIME - 2)
    if kmax is not None:
        lim = min(lim, kmax)
    total = 1  # empty tuple
    for k in range(1, lim + 1):
        total += (PRIME - 1) * PRIME ** (k - 1)
    return total * PRIME * PRIME
