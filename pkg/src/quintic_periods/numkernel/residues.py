"""Residue extraction for rational 1-forms f(t) dt on the projective line.

Two independent backends are kept side by side on purpose:

* analytic  -- Taylor shift of numerator and denominator at the pole followed
  by a truncated power-series division (for a simple pole this collapses to
  num(t0)/den'(t0));
* quadrature -- a uniform trapezoid rule on a circle around the pole, which
  converges exponentially for the analytic integrands handled here.

The point at infinity is handled through u = 1/t with dt = -du/u^2, at the
level of the rational function itself, so both backends apply there too.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import BaseLocusCollisionError, PoleMismatchError, RadiusCollisionError
from .roots import poly_roots
from .unipoly import BinaryForm, UniPoly

DEFAULT_QUAD_NODES = 256
MAX_QUAD_RADIUS = 0.5


@dataclass(frozen=True)
class PoleSite:
    """One pole location with its order and residue.

    ``at_infinity`` marks the point [1:0]; ``location`` is then ignored.
    """

    location: complex
    order: int
    residue: complex
    at_infinity: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("pole order must be >= 1")


@dataclass(frozen=True)
class RationalFunction:
    """Quotient num/den of two UniPoly; den is never the zero polynomial."""

    num: UniPoly
    den: UniPoly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")

    def __call__(self, t):
        return self.num(t) / self.den(t)

    def scale(self) -> float:
        ds = self.den.scale()
        return self.num.scale() / ds if ds else float("inf")

    def at_infinity_chart(self) -> RationalFunction:
        """g(u) with g(u) du = f(1/t-substituted) dt, i.e. g(u) = -f(1/u)/u^2."""
        n, m = self.num.degree, self.den.degree
        num_rev = self.num.reversed_coeffs()
        den_rev = self.den.reversed_coeffs()
        shift = m - n - 2
        if shift >= 0:
            num_u = num_rev * UniPoly([0.0] * shift + [1.0])
            den_u = den_rev
        else:
            num_u = num_rev
            den_u = den_rev * UniPoly([0.0] * (-shift) + [1.0])
        return RationalFunction(-1.0 * num_u, den_u)

    def pole_sites(self, residues: bool = True) -> list[PoleSite]:
        """Finite poles (den roots surviving numerator cancellation)."""
        if self.num.is_zero():
            return []
        sites = []
        for loc, mult in poly_roots(self.den):
            if self.num.vanishing_order(loc) >= mult:
                continue
            res = residue_analytic(self, loc, mult) if residues else 0j
            sites.append(PoleSite(loc, mult, res))
        return sites


def residue_analytic(f: RationalFunction, location: complex, order: int) -> complex:
    """Residue of f dt at a finite pole of declared order.

    Parameters
    ----------
    f : RationalFunction
    location : complex
        Pole position t0.
    order : int
        Local multiplicity of the denominator at t0; checked, and a
        PoleMismatchError is raised on disagreement.

    Returns
    -------
    complex
        Coefficient of (t - t0)^(-1) in the local Laurent expansion.  The
        numerator may also vanish at t0; the series division absorbs that.
    """
    if order < 1:
        raise PoleMismatchError("declared pole order must be >= 1")
    den_sh = f.den.shifted(location)
    ds = den_sh.scale()
    local = 0
    while local < len(den_sh.coeffs) and abs(den_sh.coeffs[local]) <= 1e-8 * ds:
        local += 1
    if local != order:
        raise PoleMismatchError(
            f"denominator has local multiplicity {local} at {location:.6g}, "
            f"declared order {order}"
        )
    num_sh = f.num.shifted(location)
    dred = list(den_sh.coeffs[order:])
    # power-series quotient num_sh / dred up to index order-1
    nc = list(num_sh.coeffs) + [0.0] * order
    qs: list[complex] = []
    for k in range(order):
        acc = nc[k]
        for i in range(1, min(k, len(dred) - 1) + 1):
            acc -= dred[i] * qs[k - i]
        qs.append(acc / dred[0])
    return qs[order - 1]


def residue_at_infinity_analytic(f: RationalFunction) -> complex:
    """Residue of f dt at [1:0] via the u = 1/t chart."""
    if f.num.is_zero():
        return 0j
    g = f.at_infinity_chart()
    order = g.den.vanishing_order(0j, rel_tol=1e-8)
    if order <= 0 or g.num.vanishing_order(0j) >= order:
        return 0j
    return residue_analytic(g, 0j, order)


def residue_quadrature(
    f: Callable[[np.ndarray], np.ndarray],
    center: complex,
    radius: float,
    nodes: int = DEFAULT_QUAD_NODES,
    other_poles: tuple[complex, ...] = (),
) -> complex:
    """(1/2 pi i) * contour integral of f on |t - center| = radius.

    Uniform trapezoid sampling; exponentially accurate when f is holomorphic
    on the circle.  When ``other_poles`` is supplied, a RadiusCollisionError
    flags clustered poles (any other pole within twice the radius).
    """
    for p in other_poles:
        d = abs(p - center)
        if d > 0 and d < 2.0 * radius * (1.0 - 1e-12):
            raise RadiusCollisionError(
                f"pole at {p:.6g} within 2x radius {radius:.3g} of center {center:.6g}"
            )
    return _quadrature(f, center, radius, nodes)[0]


def _quadrature(f, center: complex, radius: float, nodes: int) -> tuple[complex, float]:
    """Trapezoid contour value plus the contour magnitude max |f(z)(z-c)|,
    the resolution scale of the rule (its absolute noise floor is roughly
    machine epsilon times this)."""
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    offs = radius * np.exp(1j * theta)
    vals = f(center + offs) * offs
    return complex(np.mean(vals)), float(np.max(np.abs(vals)))


def residue_at_infinity_quadrature(
    f: RationalFunction, nodes: int = DEFAULT_QUAD_NODES
) -> complex:
    g = f.at_infinity_chart()
    finite = [loc for loc, _ in poly_roots(g.den)] if not g.den.is_zero() else []
    others = [u for u in finite if abs(u) > 1e-12]
    radius = quadrature_radius(0j, others)
    return residue_quadrature(lambda u: g(u), 0j, radius, nodes)


def quadrature_radius(center: complex, other_points: list[complex]) -> float:
    """Half the distance to the nearest other singular point, capped at 0.5."""
    dists = [abs(p - center) for p in other_points if abs(p - center) > 0]
    if not dists:
        return MAX_QUAD_RADIUS
    return min(MAX_QUAD_RADIUS, 0.5 * min(dists))


@dataclass
class ZeroSiteReport:
    """Diagnostics for one zero of the residue coordinate.

    ``backend_disagreement`` is |analytic - quadrature| relative to the
    larger residue magnitude, floored at 1e-6 of the quadrature contour
    magnitude: below that the trapezoid rule cannot resolve a difference
    (its noise floor is machine epsilon times the contour magnitude), so a
    near-zero residue pair counts as agreement rather than as 100% error.
    """

    location: complex
    at_infinity: bool
    zero_multiplicity: int
    pole_order: int
    residue: complex
    residue_quadrature: complex | None = None
    quadrature_scale: float = 0.0

    @property
    def backend_disagreement(self) -> float:
        if self.residue_quadrature is None:
            return 0.0
        a, q = self.residue, self.residue_quadrature
        floor = 1e-6 * self.quadrature_scale
        return abs(a - q) / max(abs(a), abs(q), floor, 1e-300)


@dataclass
class ZeroResidueSum:
    total: complex
    sites: list[ZeroSiteReport] = field(default_factory=list)

    @property
    def max_backend_disagreement(self) -> float:
        return max((s.backend_disagreement for s in self.sites), default=0.0)


def residues_at_zeros(
    f: RationalFunction,
    z: BinaryForm,
    guard: BinaryForm | None = None,
    quadrature: bool = True,
    nodes: int = DEFAULT_QUAD_NODES,
    den_sites: list[tuple[complex, int]] | None = None,
) -> ZeroResidueSum:
    """Sum of residues of f dt over the distinct zeros of the binary form z.

    Every zero of z on the projective line contributes the residue of f dt at
    that point once (multiplicity of the zero does not repeat it); the point
    at infinity participates when the chart polynomial of z drops degree.  A
    z with no zeros at all (nonzero constant form) contributes 0.

    ``guard`` is the companion coordinate of a cocycle pair: if a finite zero
    of z is also a zero of guard *and* f genuinely has a pole there, the local
    pole order mixes both denominator factors and a BaseLocusCollisionError is
    raised instead of silently splitting it.

    ``den_sites`` may carry precomputed clustered denominator roots (the
    caller often knows the factored denominator, whose roots are better
    conditioned than the product's).
    """
    if z.is_zero():
        raise ValueError("zero form has no isolated zero locus")
    if f.num.is_zero():
        return ZeroResidueSum(0j, [])

    zeros: list[tuple[complex | None, int]] = []
    chart = z.dehomogenized().trimmed()
    if chart.degree >= 1:
        for loc, mult in poly_roots(chart):
            zeros.append((loc, mult))
    inf_mult = z.infinity_order()
    if inf_mult > 0:
        zeros.append((None, inf_mult))

    if den_sites is None:
        den_sites = poly_roots(f.den)
    den_locs = [loc for loc, _ in den_sites]
    total = 0j
    site_reports: list[ZeroSiteReport] = []
    for loc, zmult in zeros:
        if loc is None:
            report = _infinity_site(f, inf_mult, guard, quadrature, nodes, den_locs)
        else:
            report = _finite_site(f, loc, zmult, guard, quadrature, nodes, den_sites)
        total += report.residue
        site_reports.append(report)
    return ZeroResidueSum(total, site_reports)


def _finite_site(f, loc, zmult, guard, quadrature, nodes, den_sites) -> ZeroSiteReport:
    order = 0
    for dloc, dmult in den_sites:
        if abs(dloc - loc) <= 1e-7 * (1.0 + abs(dloc)):
            order += dmult
    has_pole = order > 0 and f.num.vanishing_order(loc) < order
    if not has_pole:
        return ZeroSiteReport(loc, False, zmult, 0, 0j)
    if guard is not None:
        gchart = guard.dehomogenized()
        gs = guard.scale()
        if gs > 0 and abs(gchart(loc)) <= 1e-8 * gs * max(1.0, abs(loc)) ** max(gchart.degree, 0):
            raise BaseLocusCollisionError(
                f"zero of the residue coordinate at {loc:.6g} is also a zero of the "
                "companion coordinate and the integrand has a pole there"
            )
    res = residue_analytic(f, loc, order)
    resq = None
    qscale = 0.0
    if quadrature:
        others = [p for p, _ in den_sites if abs(p - loc) > 1e-7 * (1.0 + abs(p))]
        radius = quadrature_radius(loc, others)
        resq, qscale = _quadrature(lambda t: f(t), loc, radius, nodes)
    return ZeroSiteReport(loc, False, zmult, order, res, resq, qscale)


def _infinity_site(f, zmult, guard, quadrature, nodes, den_locs) -> ZeroSiteReport:
    # No collision guard here: at [1:0] the measure dt itself carries a double
    # pole, so a pole of f dt does not imply a denominator-factor overlap, and
    # the residue of a rational 1-form at infinity is always well defined.
    g = f.at_infinity_chart()
    order = g.den.vanishing_order(0j, rel_tol=1e-8)
    has_pole = order > 0 and g.num.vanishing_order(0j) < order
    if not has_pole:
        return ZeroSiteReport(0j, True, zmult, 0, 0j)
    res = residue_analytic(g, 0j, order)
    resq = None
    qscale = 0.0
    if quadrature:
        others = [1.0 / t for t in den_locs if abs(t) > 1e-12]
        radius = quadrature_radius(0j, others)
        resq, qscale = _quadrature(lambda u: g(u), 0j, radius, nodes)
    return ZeroSiteReport(0j, True, zmult, order, res, resq, qscale)


def residue_sum_check(f: RationalFunction) -> float:
    """|sum of all residues, including the one at infinity|.

    The residue theorem makes this 0 for every rational 1-form; the returned
    magnitude is a global consistency diagnostic for the engine.
    """
    total = sum((s.residue for s in f.pole_sites()), 0j)
    total += residue_at_infinity_analytic(f)
    return abs(total)
