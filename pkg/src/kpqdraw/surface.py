"""Closed surfaces, genus formulas for K_{m,n}, and face-attachment reachability.

A surface is stored as ``(orientable, genus)`` where ``genus`` counts handles
for orientable surfaces and crosscaps otherwise. The textual form is ``S<g>``
or ``N<k>`` (``S0`` is the sphere, ``N1`` the projective plane).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

_SURFACE_RE = re.compile(r"^([SN])(\d+)$")


@dataclass(frozen=True, order=True)
class Surface:
    orientable: bool
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError(f"genus must be non-negative, got {self.genus}")
        if not self.orientable and self.genus < 1:
            raise ValueError("a non-orientable surface needs at least one crosscap")

    @classmethod
    def parse(cls, text: str) -> "Surface":
        m = _SURFACE_RE.match(text.strip())
        if m is None:
            raise ValueError(f"cannot parse surface {text!r}; expected S<g> or N<k>")
        return cls(m.group(1) == "S", int(m.group(2)))

    @classmethod
    def from_euler(cls, chi: int, orientable: bool) -> "Surface":
        eg = 2 - chi
        if orientable:
            if eg % 2:
                raise ValueError(f"orientable surface with odd Euler genus {eg}")
            return cls(True, eg // 2)
        return cls(False, eg)

    @property
    def euler_characteristic(self) -> int:
        return euler_characteristic(self)

    @property
    def euler_genus(self) -> int:
        return 2 - euler_characteristic(self)

    def __str__(self):
        return f"{'S' if self.orientable else 'N'}{self.genus}"


SPHERE = Surface(True, 0)
TORUS = Surface(True, 1)
PROJECTIVE_PLANE = Surface(False, 1)
KLEIN_BOTTLE = Surface(False, 2)


def euler_characteristic(s: Surface) -> int:
    return 2 - 2 * s.genus if s.orientable else 2 - s.genus


def kmn_genus(m: int, n: int) -> int:
    """Orientable genus of K_{m,n}: ceil((m-2)(n-2)/4)."""
    if m < 2 or n < 2:
        raise ValueError(f"genus formula needs m, n >= 2, got ({m}, {n})")
    return -(-(m - 2) * (n - 2) // 4)


def kmn_demigenus(m: int, n: int) -> int:
    """Non-orientable genus of K_{m,n}: ceil((m-2)(n-2)/2)."""
    if m < 3 or n < 3:
        raise ValueError(f"demigenus formula needs m, n >= 3, got ({m}, {n})")
    return -(-(m - 2) * (n - 2) // 2)


def bipartite_euler_bound(v: int, e: int) -> int:
    """Lower bound on the Euler genus of a bipartite graph with v vertices, e edges.

    Every face of a cellular embedding has length at least 4, so F <= E/2 and
    V - E + E/2 >= 2 - eg.
    """
    return max(0, math.ceil(e / 2 - v + 2))


def attachable(gamma: Surface, sigma: Surface) -> bool:
    """True iff ``sigma`` is reachable from ``gamma`` by adding handles or crosscaps.

    Going from an orientable surface to a non-orientable one costs one crosscap
    beyond the Euler genus already present; the reverse direction is impossible.
    """
    if sigma.orientable:
        return gamma.orientable and sigma.genus >= gamma.genus
    extra = 1 if gamma.orientable else 0
    return sigma.euler_genus >= gamma.euler_genus + extra
