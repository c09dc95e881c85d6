"""Minimization of the normalized volume over toric valuations.

``nvol`` is invariant under scaling ``u``, so the search runs on the slice
``{<u, w> = 1}`` of the interior of sigma, parameterized by dropping the
coordinate where ``w`` has the largest absolute entry.  Nelder–Mead runs
from the ray barycenter and from random interior points; objective values
are compared exactly (``u`` is rationalized, the volume is exact), so the
search is not limited by floating-point noise in the objective.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ._rational import dot
from .errors import NoInteriorStart
from .germ import ToricGerm
from .valuations import ToricValuation, normalized_volume

DEFAULT_SEED = 0x5EED
RATIONALIZE_DENOMINATOR = 10**12


@dataclass(frozen=True)
class MinimizerConfig:
    tol: float = 1e-10
    max_evals: int = 20000
    starts: int = 8  # barycenter plus starts - 1 random interior points
    seed: int = DEFAULT_SEED
    initial_step: float = 0.05


@dataclass(frozen=True)
class ObjectiveSample:
    u: tuple[float, ...]
    value: float
    in_interior: bool


@dataclass(frozen=True)
class RunResult:
    start: tuple[float, ...]
    start_value: float
    u: tuple[float, ...]
    value: float
    evaluations: int
    diameter: float
    converged: bool


@dataclass(frozen=True)
class MinimizationReport:
    u_star: tuple[float, ...]
    nvol_star: float
    starts: int
    spread: float
    evaluations: int
    slice_residual: float
    runs: tuple[RunResult, ...] = field(repr=False)
    symmetry_order: int = 1
    symmetry_defect: float = 0.0

    def to_dict(self) -> dict:
        return {
            "u_star": list(self.u_star),
            "nvol_star": self.nvol_star,
            "starts": self.starts,
            "spread": self.spread,
            "evaluations": self.evaluations,
            "slice_residual": self.slice_residual,
            "symmetry_order": self.symmetry_order,
            "symmetry_defect": self.symmetry_defect,
            "runs": [
                {
                    "start": list(r.start),
                    "start_value": r.start_value,
                    "u": list(r.u),
                    "value": r.value,
                    "evaluations": r.evaluations,
                    "diameter": r.diameter,
                    "converged": r.converged,
                }
                for r in self.runs
            ],
        }


def rationalize(u: Sequence[float]) -> tuple[Fraction, ...]:
    return tuple(Fraction(x).limit_denominator(RATIONALIZE_DENOMINATOR) for x in u)


def exact_objective(germ: ToricGerm, u: Sequence[float]):
    """nvol at the rationalized point as a Fraction; ``math.inf`` outside Int(sigma)."""
    if not all(math.isfinite(x) for x in u):
        return math.inf
    q = rationalize(u)
    if not germ.contains_interior(q):
        return math.inf
    return normalized_volume(ToricValuation(germ, q))


def objective(germ: ToricGerm, u: Sequence[float]) -> float:
    """Float nvol with a ``+inf`` barrier outside the interior of sigma."""
    return float(exact_objective(germ, u))


def sample(germ: ToricGerm, u: Sequence[float]) -> ObjectiveSample:
    val = objective(germ, u)
    return ObjectiveSample(tuple(float(x) for x in u), val, math.isfinite(val))


class SliceChart:
    """Affine chart of ``{<u, w> = 1}`` dropping coordinate ``k``."""

    def __init__(self, germ: ToricGerm):
        w = [float(x) for x in germ.w]
        self.w = w
        # largest |w_k|, lowest index on ties
        self.k = max(range(len(w)), key=lambda i: (abs(w[i]), -i))
        self.n = len(w)

    def lift(self, x: Sequence[float]) -> tuple[float, ...]:
        u = list(x[: self.k]) + [0.0] + list(x[self.k :])
        rest = sum(wi * ui for i, (wi, ui) in enumerate(zip(self.w, u)) if i != self.k)
        u[self.k] = (1.0 - rest) / self.w[self.k]
        return tuple(u)

    def project(self, u: Sequence[float]) -> list[float]:
        s = sum(a * b for a, b in zip(self.w, u))
        u = [x / s for x in u]
        return u[: self.k] + u[self.k + 1 :]


def nelder_mead(
    f: Callable[[Sequence[float]], object],
    x0: Sequence[float],
    step: float,
    tol: float,
    max_evals: int,
):
    """Standard Nelder–Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2).

    ``f`` may return any totally ordered values (Fractions, ``math.inf``).
    Stops when the simplex diameter drops below ``tol``.  Returns
    ``(x, fx, evaluations, diameter, converged)``.
    """
    d = len(x0)
    evals = 0

    def F(x):
        nonlocal evals
        evals += 1
        return f(x)

    simplex = [list(map(float, x0))]
    for i in range(d):
        x = list(map(float, x0))
        x[i] += step
        simplex.append(x)
    values = [F(x) for x in simplex]

    def diameter():
        return max(math.dist(a, b) for a, b in itertools.combinations(simplex, 2)) if d else 0.0

    while True:
        order = sorted(range(d + 1), key=lambda i: values[i])
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        diam = diameter()
        if diam < tol:
            return simplex[0], values[0], evals, diam, True
        if evals >= max_evals:
            return simplex[0], values[0], evals, diam, False
        centroid = [sum(p[j] for p in simplex[:-1]) / d for j in range(d)]
        worst = simplex[-1]
        xr = [c + (c - w) for c, w in zip(centroid, worst)]
        fr = F(xr)
        if values[0] <= fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[0]:
            xe = [c + 2 * (c - w) for c, w in zip(centroid, worst)]
            fe = F(xe)
            if fe < fr:
                simplex[-1], values[-1] = xe, fe
            else:
                simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[-1]:
            xc = [c + 0.5 * (r - c) for c, r in zip(centroid, xr)]
            fc = F(xc)
            if fc <= fr:
                simplex[-1], values[-1] = xc, fc
                continue
        else:
            xc = [c + 0.5 * (w - c) for c, w in zip(centroid, worst)]
            fc = F(xc)
            if fc < values[-1]:
                simplex[-1], values[-1] = xc, fc
                continue
        best = simplex[0]
        for i in range(1, d + 1):
            simplex[i] = [b + 0.5 * (x - b) for b, x in zip(best, simplex[i])]
            values[i] = F(simplex[i])


def _starts(germ: ToricGerm, count: int, seed: int) -> list[tuple[float, ...]]:
    rays = germ.sigma.rays
    n = germ.rank
    bary = tuple(sum(r[k] for r in rays) / len(rays) for k in range(n))
    if not germ.contains_interior(rationalize(bary)):
        raise NoInteriorStart("ray barycenter is not interior")
    rng = random.Random(seed)
    pts = [bary]
    while len(pts) < count:
        # Dirichlet weights on the rays (each ray has <r, w> = 1)
        wts = [rng.expovariate(1.0) for _ in rays]
        s = sum(wts)
        p = tuple(sum(wt * r[k] for wt, r in zip(wts, rays)) / s for k in range(n))
        if germ.contains_interior(rationalize(p)):
            pts.append(p)
    return pts


def _run(germ: ToricGerm, chart: SliceChart, start, cfg: MinimizerConfig) -> RunResult:
    def f(x):
        return exact_objective(germ, chart.lift(x))

    x0 = chart.project(start)
    start_value = float(f(x0))
    budget = cfg.max_evals
    step = cfg.initial_step
    total = 0
    x, fx = x0, None
    # restart from the converged point until it stops moving
    for _ in range(5):
        x_new, fx_new, used, diam, ok = nelder_mead(f, x, step, cfg.tol, budget - total)
        total += used
        moved = math.dist(x_new, x)
        x, fx = x_new, fx_new
        if not ok or moved < cfg.tol or total >= budget:
            break
        step = max(10 * cfg.tol, min(step, 10 * moved))
    return RunResult(tuple(start), start_value, chart.lift(x), float(fx), total, diam, ok)


def minimize(germ: ToricGerm, config: MinimizerConfig | None = None) -> MinimizationReport:
    """Multistart Nelder–Mead for ``min nvol(v_u)`` over ``u`` in Int(sigma)."""
    cfg = config or MinimizerConfig()
    chart = SliceChart(germ)
    runs = [_run(germ, chart, s, cfg) for s in _starts(germ, max(1, cfg.starts), cfg.seed)]
    best = min(runs, key=lambda r: (r.value, r.u))
    converged = [r.u for r in runs if r.converged] or [best.u]
    spread = max((math.dist(a, b) for a, b in itertools.combinations(converged, 2)), default=0.0)
    u = best.u
    residual = abs(sum(float(a) * b for a, b in zip(germ.w, u)) - 1.0)
    autos = germ.automorphisms()
    defect = max((math.dist([dot(row, u) for row in T], u) for T in autos), default=0.0)
    return MinimizationReport(
        u_star=u,
        nvol_star=best.value,
        starts=len(runs),
        spread=spread,
        evaluations=sum(r.evaluations for r in runs),
        slice_residual=residual,
        runs=tuple(runs),
        symmetry_order=max(1, len(autos)),
        symmetry_defect=defect,
    )


@dataclass(frozen=True)
class RationalityDiagnosis:
    label: str
    divisorial_candidate: bool
    direction: tuple[int, ...] | None
    approximations: tuple[tuple[str, float], ...]  # per coordinate: p/q and its error


DIVISORIAL = "divisorial-candidate (rational direction found)"
NON_DIVISORIAL = "non-divisorial-candidate (no small rational direction)"


def _best_convergent(x: float, bound: int) -> Fraction:
    """Last continued-fraction convergent of ``x`` with denominator <= bound."""
    h0, h1, k0, k1 = 0, 1, 1, 0
    y = x
    best = Fraction(math.floor(x))
    for _ in range(64):
        a = math.floor(y)
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > bound:
            break
        best = Fraction(h1, k1)
        frac = y - a
        if frac < 1e-15:
            break
        y = 1.0 / frac
    return best


def rationality_probe(
    report: MinimizationReport, germ: ToricGerm, denominator_bound: int = 10**4, atol: float = 1e-9
) -> RationalityDiagnosis:
    """Heuristic: does ``u*`` point along a rational direction with small denominators?

    Each slice coordinate is replaced by its continued-fraction convergent
    with denominator at most ``denominator_bound``; the direction counts as
    rational when every coordinate is matched within ``atol``.
    """
    approx = []
    ok = True
    for x in report.u_star:
        q = _best_convergent(x, denominator_bound)
        err = abs(float(q) - x)
        approx.append((str(q), err))
        ok = ok and err <= atol
    direction = None
    if ok:
        from ._rational import integer_direction

        direction = integer_direction([Fraction(p) for p, _ in approx])
    return RationalityDiagnosis(DIVISORIAL if ok else NON_DIVISORIAL, ok, direction, tuple(approx))
