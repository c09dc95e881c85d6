"""Monomial ideals of the semigroup ring ``k[sigma_dual ∩ M]``.

An ideal is stored by its minimal exponent vectors.  Invariants come from
the Newton polyhedron ``Newt(a) = conv(generators) + sigma_dual``:

* ``lct(a)`` is the largest ``t`` with ``w`` in ``t * Newt(a)``,
* ``multiplicity(a)`` is ``n!`` times the covolume of ``Newt(a)`` in
  ``sigma_dual``,
* the integral closure is generated by the lattice points of ``Newt(a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ._rational import dot, fvec, ivec
from .errors import EmptyIdeal, GermMismatch, NotPrimary
from .geometry.lattice import points_in_slab
from .geometry.lp import simplex_standard
from .geometry.polytope import Polytope, h_to_v, polyhedron_halfspaces, truncate, volume
from .germ import ToricGerm

INFINITY = math.inf


def _minimal(gens: Iterable[tuple[int, ...]], germ: ToricGerm) -> tuple[tuple[int, ...], ...]:
    # g is redundant iff g - h lies in sigma_dual for a kept h, i.e. its
    # pairings with the rays of sigma dominate those of h
    facets = germ.sigma.rays
    keyed = [(tuple(dot(f, g) for f in facets), g) for g in set(gens)]
    keyed.sort(key=lambda t: (sum(t[0]), t[1]))
    keep: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for pair, g in keyed:
        if not any(all(a >= b for a, b in zip(pair, q)) for q, _ in keep):
            keep.append((pair, g))
    return tuple(sorted(g for _, g in keep))


@dataclass(frozen=True, eq=False)
class MonomialIdeal:
    germ: ToricGerm
    generators: tuple[tuple[int, ...], ...]

    def __init__(self, germ: ToricGerm, generators: Iterable[Sequence[int]]):
        gens = [ivec(g) for g in generators]
        if not gens:
            raise EmptyIdeal("the zero ideal has no monomial generators")
        for g in gens:
            if len(g) != germ.rank:
                raise ValueError(f"generator {g} has wrong length for rank {germ.rank}")
            if not germ.sigma_dual.contains(g):
                raise ValueError(f"generator {g} is not in sigma_dual ∩ M")
        object.__setattr__(self, "germ", germ)
        object.__setattr__(self, "generators", _minimal(gens, germ))

    @classmethod
    def _from_minimal(cls, germ: ToricGerm, gens: Iterable[tuple[int, ...]]) -> "MonomialIdeal":
        # caller guarantees validity and minimality
        obj = object.__new__(cls)
        object.__setattr__(obj, "germ", germ)
        object.__setattr__(obj, "generators", tuple(sorted(gens)))
        return obj

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.germ == other.germ
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"MonomialIdeal({list(self.generators)})"

    @property
    def is_unit(self) -> bool:
        return any(not any(g) for g in self.generators)

    def contains_monomial(self, m: Sequence[int]) -> bool:
        facets = self.germ.sigma.rays
        return any(all(dot(f, m) >= dot(f, g) for f in facets) for g in self.generators)

    @cached_property
    def newton(self) -> "NewtonPolyhedron":
        return NewtonPolyhedron.of(self)

    def is_primary(self) -> bool:
        """True iff ``sigma_dual \\ Newt(a)`` is bounded.

        Equivalent to: every ray of ``sigma_dual`` carries a generator (a
        multiple of that ray).  The unit ideal counts as primary.
        """
        if self.is_unit:
            return True
        for rho in self.germ.sigma_dual.rays:
            if not any(_is_multiple(g, rho) for g in self.generators):
                return False
        return True


def _is_multiple(g: Sequence[int], rho: Sequence[int]) -> bool:
    # g = k * rho with k > 0 (rho primitive)
    k = next((a // b for a, b in zip(g, rho) if b != 0), 0)
    return k > 0 and all(a == k * b for a, b in zip(g, rho))


@dataclass(frozen=True)
class NewtonPolyhedron:
    """``conv(generators) + sigma_dual`` by vertices and facet inequalities."""

    base_vertices: tuple[tuple[Fraction, ...], ...]
    halfspaces: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    generators: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, a: MonomialIdeal) -> "NewtonPolyhedron":
        rec = a.germ.sigma_dual
        hs = polyhedron_halfspaces(a.generators, rec)
        verts, _ = h_to_v(hs, rec.rank)
        return cls(tuple(sorted(verts)), tuple(hs), a.generators)

    def support(self, u: Sequence):
        """``min <u, x>`` over the polyhedron, for ``u`` in sigma."""
        return min(dot(u, g) for g in self.generators)

    def contains(self, p: Sequence) -> bool:
        return all(dot(a, p) >= b for a, b in self.halfspaces)


def _same_germ(a: MonomialIdeal, b: MonomialIdeal) -> None:
    if a.germ != b.germ:
        raise GermMismatch("ideals live on different germs")


def value_along(a: MonomialIdeal, u: Sequence):
    """``v_u(a) = min <u, m>`` over the generators."""
    return min(dot(u, g) for g in a.generators)


@dataclass(frozen=True)
class LctResult:
    value: Fraction
    witness: tuple[Fraction, ...]  # u in sigma with A(v_u) / v_u(a) = lct
    vertices: tuple[tuple[int, ...], ...]  # Newton vertices m_i used by the LP
    weights: tuple[Fraction, ...]  # mu_i with w - sum mu_i m_i in sigma_dual


def lct_with_witness(a: MonomialIdeal) -> LctResult:
    """Log canonical threshold together with a toric valuation computing it.

    Substituting ``mu_i = t * lambda_i`` turns ``max{t : w in t * Newt(a)}``
    into the linear program

        max sum(mu)  s.t.  mu >= 0,  w - sum(mu_i m_i) in sigma_dual,

    whose constraints read ``sum_i mu_i <u_j, m_i> <= <u_j, w> = 1`` over the
    rays ``u_j`` of sigma.  The optimal dual ``y`` gives ``u* = sum y_j u_j``
    with ``<u*, w> = lct`` and ``v_{u*}(a) >= 1``.
    """
    if a.is_unit:
        raise ValueError("the unit ideal has infinite lct")
    # only vertices of Newt(a) matter; they are generators
    verts = [tuple(int(x) for x in v) for v in a.newton.base_vertices]
    rays = a.germ.sigma.rays
    A = [[dot(r, g) for g in verts] for r in rays]
    b = [dot(r, a.germ.w) for r in rays]
    sol = simplex_standard([1] * len(verts), A, b)
    u = tuple(sum((y * r[k] for y, r in zip(sol.dual, rays)), Fraction(0)) for k in range(a.germ.rank))
    return LctResult(sol.value, u, tuple(verts), sol.x)


def lct(a: MonomialIdeal):
    """Exact lct; ``math.inf`` for the unit ideal."""
    if a.is_unit:
        return INFINITY
    return lct_with_witness(a).value


def _truncation_level(a: MonomialIdeal) -> tuple[tuple[int, ...], Fraction]:
    u0 = a.germ.sigma.interior_point()
    top = max(dot(u0, g) for g in a.generators)
    return u0, Fraction(1 + a.germ.rank * top)


def covolume(a: MonomialIdeal, level=None) -> Fraction:
    """Euclidean volume of ``sigma_dual \\ Newt(a)``.

    Computed as ``vol(sigma_dual ∩ H) - vol(Newt(a) ∩ H)`` with
    ``H = {<u0, x> <= T}``, where ``u0`` is the sum of the rays of sigma and
    ``T = 1 + n * max <u0, m>`` unless ``level`` overrides it.
    """
    if not a.is_primary():
        raise NotPrimary("sigma_dual minus the Newton polyhedron is unbounded")
    if a.is_unit:
        return Fraction(0)
    u0, T = _truncation_level(a)
    if level is not None:
        T = Fraction(level)
    outer = volume(truncate(a.germ.sigma_dual, u0, T))
    hs = list(a.newton.halfspaces) + [(tuple(Fraction(-x) for x in u0), -T)]
    inner = volume(Polytope.from_halfspaces(hs, a.germ.rank))
    return outer - inner


def multiplicity(a: MonomialIdeal) -> Fraction:
    """Hilbert–Samuel multiplicity ``n! * covolume``."""
    return math.factorial(a.germ.rank) * covolume(a)


def normalized_multiplicity(a: MonomialIdeal) -> Fraction:
    return lct(a) ** a.germ.rank * multiplicity(a)


def product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    _same_germ(a, b)
    return MonomialIdeal(
        a.germ, {tuple(x + y for x, y in zip(g, h)) for g in a.generators for h in b.generators}
    )


def power(a: MonomialIdeal, m: int) -> MonomialIdeal:
    if m < 0:
        raise ValueError("negative power")
    if m == 0:
        return MonomialIdeal(a.germ, [(0,) * a.germ.rank])
    result, base = None, a
    while m:
        if m & 1:
            result = base if result is None else product(result, base)
        m >>= 1
        if m:
            base = product(base, base)
    return result


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    _same_germ(a, b)
    return MonomialIdeal(a.germ, a.generators + b.generators)


def contains(a: MonomialIdeal, b: MonomialIdeal) -> bool:
    """``b ⊆ a``."""
    _same_germ(a, b)
    return all(a.contains_monomial(g) for g in b.generators)


def integral_closure(a: MonomialIdeal) -> MonomialIdeal:
    """Ideal generated by the lattice points of ``Newt(a)``.

    A minimal lattice point ``x = p + s`` (``p`` in the hull, ``s`` in
    sigma_dual) has ``s`` in a half-open parallelepiped of rays, otherwise
    subtracting a ray keeps it in ``Newt(a)``; that bounds the search.
    """
    germ = a.germ
    if a.is_unit:
        return a
    u0 = germ.sigma.interior_point()
    bound = max(dot(u0, g) for g in a.generators) + sum(dot(u0, r) for r in germ.sigma_dual.rays)
    newt = a.newton
    pts = [p for p in points_in_slab(germ.sigma_dual, u0, 0, bound + 1) if newt.contains(p)]
    return MonomialIdeal(germ, pts)


def maximal_ideal(germ: ToricGerm) -> MonomialIdeal:
    """The ideal of the torus-fixed point: all nonzero Hilbert basis elements."""
    return MonomialIdeal(germ, germ.hilbert_basis)


def random_primary_ideal(germ: ToricGerm, rng, max_power: int = 5, extra: int = 3, spread: int = 4):
    """A random primary ideal: a multiple of each dual ray plus random monomials.

    ``rng`` is a :class:`random.Random`.  Used by the test and acceptance suites.
    """
    gens = []
    for rho in germ.sigma_dual.rays:
        k = rng.randint(1, max_power)
        gens.append(tuple(k * x for x in rho))
    basis = germ.hilbert_basis
    for _ in range(rng.randint(0, extra)):
        m = [0] * germ.rank
        for _ in range(rng.randint(1, spread)):
            h = rng.choice(basis)
            m = [x + y for x, y in zip(m, h)]
        gens.append(tuple(m))
    return MonomialIdeal(germ, gens)
