"""Toric valuations ``v_u`` for ``u`` in the interior of sigma."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._rational import dot, fvec
from .errors import IrrationalMode, Unbounded
from .geometry.lattice import count_lattice_points_below, points_in_slab
from .geometry.polytope import truncate, volume as polytope_volume
from .germ import ToricGerm
from .ideals import MonomialIdeal


@dataclass(frozen=True)
class ToricValuation:
    """``v_u(sum c_m chi^m) = min{<u, m> : c_m != 0}``.

    ``u`` is exact (Fractions) unless built with :meth:`from_floats`, which
    only the optimizer uses.
    """

    germ: ToricGerm
    u: tuple

    def __post_init__(self):
        if len(self.u) != self.germ.rank:
            raise ValueError("u has wrong length")
        if not self.germ.contains_interior(self.u):
            raise Unbounded(f"u = {self.u} is not in the interior of sigma")

    @classmethod
    def of(cls, germ: ToricGerm, u: Sequence) -> "ToricValuation":
        return cls(germ, fvec(u))

    @classmethod
    def from_floats(cls, germ: ToricGerm, u: Sequence[float]) -> "ToricValuation":
        return cls(germ, tuple(float(x) for x in u))

    @property
    def exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.u)

    def _require_exact(self):
        if not self.exact:
            raise IrrationalMode("operation needs an exact rational u")

    def scaled(self, lam) -> "ToricValuation":
        if self.exact:
            lam = Fraction(lam)
        return ToricValuation(self.germ, tuple(lam * x for x in self.u))

    def __call__(self, m: Sequence[int]):
        return dot(self.u, m)


def log_discrepancy(v: ToricValuation):
    """``A(v_u) = <u, w>``."""
    w = v.germ.w if v.exact else tuple(float(x) for x in v.germ.w)
    return dot(v.u, w)


def volume(v: ToricValuation):
    """``vol(v_u) = n! * Vol(sigma_dual ∩ {<u, x> <= 1})``.

    Summed over the simplicial cells of ``sigma_dual``: a cell spanned by
    rays ``r_1..r_n`` contributes ``|det| / prod <u, r_i>``.
    """
    rays = v.germ.sigma_dual.rays
    vals = [dot(v.u, r) for r in rays]
    total = Fraction(0) if v.exact else 0.0
    for ids, d in v.germ.dual_cells:
        denom = 1
        for i in ids:
            denom *= vals[i]
        total += d / denom
    return total


def volume_by_polytope(v: ToricValuation) -> Fraction:
    """Same quantity through the generic truncation + triangulation route."""
    v._require_exact()
    n = v.germ.rank
    return math.factorial(n) * polytope_volume(truncate(v.germ.sigma_dual, v.u, 1))


def normalized_volume(v: ToricValuation):
    """``A(v)^n * vol(v)``."""
    return log_discrepancy(v) ** v.germ.rank * volume(v)


def valuation_ideal(v: ToricValuation, m) -> MonomialIdeal:
    """``a_m(v_u)``, generated by lattice points of sigma_dual with ``<u, x> >= m``.

    Minimal generators lie in the slab ``m <= <u, x> < m + max <u, h>`` over
    the Hilbert basis ``h``: a point above it is a Hilbert basis element plus
    a point still in the ideal.
    """
    v._require_exact()
    m = Fraction(m)
    if m <= 0:
        raise ValueError("valuation ideals need m > 0")
    germ = v.germ
    basis = germ.hilbert_basis
    width = max(dot(v.u, h) for h in basis)
    facets = germ.sigma.rays
    gens = []
    for x in points_in_slab(germ.sigma_dual, v.u, m, m + width):
        reducible = False
        for h in basis:
            y = tuple(a - b for a, b in zip(x, h))
            if dot(v.u, y) >= m and all(dot(f, y) >= 0 for f in facets):
                reducible = True
                break
        if not reducible:
            gens.append(x)
    return MonomialIdeal._from_minimal(germ, gens)


def colength(v: ToricValuation, m) -> int:
    """``length(O / a_m(v_u)) = #{x in sigma_dual ∩ M : <u, x> < m}``."""
    v._require_exact()
    m = Fraction(m)
    if m <= 0:
        return 0
    return count_lattice_points_below(v.germ.sigma_dual, v.u, m)
