"""Assembly of per-pair residues into period values, sweeps, and scans.

For each covering pair (j0 < j1) the pair integrand is summed over the
distinct zeros of the coordinate x_{j0} on the line, including the point at
infinity when the form drops degree; the total over all pairs is the reported
period value.  It is unnormalized: no 2*pi*i, no global cocycle constant --
every downstream comparison is projective.

Diagnostics carried per pair: both residue backends at every site, a
residue-theorem check (all finite residues of the integrand plus its residue
at infinity), and, where its preconditions hold, the dual sum combining the
zeros of x_{j1} with the residue at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import (
    BaseLocusCollisionError,
    DegreeError,
    DimensionMismatchError,
    ReferenceZeroError,
    UnsupportedShapeError,
)
from .geometry import CurveFamily, CurveJet, Hypersurface
from .griffiths import pair_numerator, pair_wedges, required_degree
from .multipoly import MultiPoly, monomial_text, monomials_of_degree
from .numkernel.residues import (
    RationalFunction,
    ZeroResidueSum,
    ZeroSiteReport,
    residue_at_infinity_analytic,
    residue_sum_check,
    residues_at_zeros,
)
from .numkernel.roots import poly_roots
from .numkernel.unipoly import BinaryForm, UniPoly

VANISH_REL_TOL = 1e-9


@dataclass
class PairContribution:
    j0: int
    j1: int
    residue_sum: complex
    sites: list[ZeroSiteReport] = field(default_factory=list)
    numerator_zero: bool = False
    residue_theorem_check: float = 0.0
    dual_sum_check: float | None = None

    @property
    def max_backend_disagreement(self) -> float:
        return max((s.backend_disagreement for s in self.sites), default=0.0)


@dataclass
class PeriodReport:
    s: complex
    total: complex
    per_pair: dict[tuple[int, int], PairContribution]
    min_pole_separation: float
    max_backend_disagreement: float
    vanish_scale: float

    def pair(self, j0: int, j1: int) -> PairContribution:
        return self.per_pair[(j0, j1)]

    @property
    def vanishes(self) -> bool:
        if self.vanish_scale == 0.0:
            return self.total == 0
        return abs(self.total) < VANISH_REL_TOL * self.vanish_scale


@dataclass
class SweepResult:
    samples: list[PeriodReport]
    family_name: str
    p_text: str
    vanishes_identically: bool


@dataclass
class ComparisonReport:
    ratios: list[complex]
    constant: complex
    max_relative_deviation: float
    verdict: str  # "PROPORTIONAL" or "MISMATCH"
    tolerance: float


def _pair_order(n: int):
    for j0 in range(n):
        for j1 in range(j0 + 1, n):
            yield (j0, j1)


class _SampleContext:
    """Per-(jet, hypersurface) data shared by all classes P at one sample."""

    def __init__(self, X: Hypersurface, jet: CurveJet):
        self.X = X
        self.jet = jet
        self.wedges = pair_wedges(jet)
        self.xs = jet.x_chart()
        self.partial_charts = [Fi.compose_unipoly(self.xs) for Fi in X.partials]
        self._roots: dict[int, list[tuple[complex, int]]] = {}
        self._xpowers: dict[tuple[int, int], UniPoly] = {}

    def chart_roots(self, j: int) -> list[tuple[complex, int]]:
        if j not in self._roots:
            pj = self.partial_charts[j]
            self._roots[j] = poly_roots(pj) if pj.degree >= 1 else []
        return self._roots[j]

    def xpow(self, i: int, e: int) -> UniPoly:
        key = (i, e)
        if key not in self._xpowers:
            self._xpowers[key] = self.xs[i] ** e
        return self._xpowers[key]

    def compose(self, P: MultiPoly) -> UniPoly:
        acc = UniPoly.zero()
        for exps, c in P.terms.items():
            term = UniPoly.constant(c)
            for i, e in enumerate(exps):
                if e:
                    term = term * self.xpow(i, e)
            acc = acc + term
        return acc

    def min_pole_separation(self) -> float:
        locs: list[complex] = []
        for sites in self._roots.values():
            locs.extend(loc for loc, _ in sites)
        best = float("inf")
        for i in range(len(locs)):
            for j in range(i + 1, len(locs)):
                d = abs(locs[i] - locs[j])
                if 1e-12 < d < best:
                    best = d
        return best


def _assemble(
    ctx: _SampleContext,
    P: MultiPoly,
    p_chart: UniPoly,
    quadrature: bool,
    nodes: int,
    deep_diagnostics: bool,
) -> PeriodReport:
    jet = ctx.jet
    per_pair: dict[tuple[int, int], PairContribution] = {}
    total = 0j
    for j0, j1 in _pair_order(jet.ncoords):
        num, num_scale = pair_numerator(P, jet, j0, j1, ctx.wedges, p_chart)
        if num.is_zero() or num.scale() <= 1e-12 * max(num_scale, 1e-300):
            per_pair[(j0, j1)] = PairContribution(j0, j1, 0j, [], numerator_zero=True)
            continue
        d0, d1 = ctx.partial_charts[j0], ctx.partial_charts[j1]
        if d0.is_zero() or d1.is_zero():
            which = j0 if d0.is_zero() else j1
            raise BaseLocusCollisionError(
                f"pair ({j0},{j1}): covering chart {which} misses the curve at "
                f"s = {jet.s} (F_{which}(x(t)) vanishes identically)"
            )
        rf = RationalFunction(num, d0 * d1)
        den_sites = _merge_sites(ctx.chart_roots(j0), ctx.chart_roots(j1))
        try:
            zr = residues_at_zeros(
                rf,
                jet.x[j0],
                guard=jet.x[j1],
                quadrature=quadrature,
                nodes=nodes,
                den_sites=den_sites,
            )
        except BaseLocusCollisionError as exc:
            raise BaseLocusCollisionError(f"pair ({j0},{j1}): {exc}") from None
        contrib = PairContribution(j0, j1, zr.total, zr.sites)
        if deep_diagnostics:
            contrib.residue_theorem_check = residue_sum_check(rf)
            contrib.dual_sum_check = _dual_sum(rf, zr, jet.x[j1], den_sites)
        per_pair[(j0, j1)] = contrib
        total += zr.total

    vanish_scale = max((abs(c.residue_sum) for c in per_pair.values()), default=0.0)
    return PeriodReport(
        s=jet.s,
        total=total,
        per_pair=per_pair,
        min_pole_separation=ctx.min_pole_separation() if deep_diagnostics else float("inf"),
        max_backend_disagreement=max(
            (c.max_backend_disagreement for c in per_pair.values()), default=0.0
        ),
        vanish_scale=vanish_scale,
    )


def period_of_jet(
    X: Hypersurface,
    P: MultiPoly,
    jet: CurveJet,
    quadrature: bool = True,
    nodes: int = 256,
) -> PeriodReport:
    if X.nvars != 5:
        raise UnsupportedShapeError(
            f"period assembly is implemented for 5 coordinates, got {X.nvars}"
        )
    if jet.ncoords != X.nvars:
        raise DimensionMismatchError("jet does not match the hypersurface dimensions")
    want = required_degree(X.degree, X.m, 1)
    if P.is_zero() or not P.is_homogeneous() or P.total_degree() != want:
        raise DegreeError(f"P must be homogeneous of degree {want}")
    ctx = _SampleContext(X, jet)
    return _assemble(ctx, P, ctx.compose(P), quadrature, nodes, deep_diagnostics=True)


def period_at(
    X: Hypersurface,
    P: MultiPoly,
    fam: CurveFamily,
    s: complex,
    quadrature: bool = True,
    nodes: int = 256,
) -> PeriodReport:
    """Period value of the class of P at one parameter sample.

    The analytic backend supplies the reported residues; the
    contour-quadrature backend runs alongside and feeds the disagreement
    diagnostic.

    Raises
    ------
    BaseLocusCollisionError
        If a zero of x_{j0} is a genuine pole shared with the x_{j1} factor,
        or a covering chart misses the curve entirely.
    DegreeError
        If deg(P) != d(q+1) - m - 2 for q = 1.
    """
    return period_of_jet(X, P, fam.jet_at(s), quadrature=quadrature, nodes=nodes)


def _merge_sites(a, b):
    sites = list(a) + list(b)
    merged: list[tuple[complex, int]] = []
    for loc, mult in sorted(sites, key=lambda s: (s[0].real, s[0].imag)):
        if merged and abs(merged[-1][0] - loc) <= 1e-9 * (1.0 + abs(loc)):
            merged[-1] = (merged[-1][0], merged[-1][1] + mult)
        else:
            merged.append((loc, mult))
    return merged


def _dual_sum(rf, zr: ZeroResidueSum, other: BinaryForm, den_sites) -> float | None:
    """|residues at zeros of x_{j0} + residues at zeros of x_{j1} + residue
    of the integrand at infinity|; None when the preconditions fail (a site
    at infinity, or a pole off both zero loci)."""
    if any(site.at_infinity for site in zr.sites):
        return None
    other_chart = other.dehomogenized().trimmed()
    if other.infinity_order() > 0 or other_chart.degree < 1:
        return None
    zero_locs = [site.location for site in zr.sites]
    other_locs = [loc for loc, _ in poly_roots(other_chart)]
    for loc, mult in den_sites:
        if rf.num.vanishing_order(loc) >= mult:
            continue
        near = any(abs(loc - z) <= 1e-7 * (1 + abs(loc)) for z in zero_locs + other_locs)
        if not near:
            return None
    try:
        dual = residues_at_zeros(rf, other, guard=None, quadrature=False, den_sites=den_sites)
    except BaseLocusCollisionError:
        return None
    inf_res = residue_at_infinity_analytic(rf)
    return abs(zr.total + dual.total + inf_res)


def sweep(
    X: Hypersurface,
    P: MultiPoly,
    fam: CurveFamily,
    s_list: Sequence[complex],
    quadrature: bool = True,
    nodes: int = 256,
) -> SweepResult:
    """Period reports over an ordered sample list.

    Flags VANISHES_IDENTICALLY when every |total| < 1e-9 * scale, with scale
    the largest per-pair contribution magnitude at that sample (an all-zero
    report vanishes trivially).
    """
    if not s_list:
        raise ValueError("sample list must be nonempty")
    samples = [period_at(X, P, fam, s, quadrature=quadrature, nodes=nodes) for s in s_list]
    return SweepResult(
        samples=samples,
        family_name=fam.name,
        p_text=P.to_text(),
        vanishes_identically=all(r.vanishes for r in samples),
    )


def geometric_median(points: Sequence[complex], iters: int = 200) -> complex:
    """Weiszfeld iteration; robust central ratio estimate."""
    pts = [complex(p) for p in points]
    if not pts:
        raise ValueError("no points")
    if len(pts) <= 2:
        return sum(pts) / len(pts)
    z = sum(pts) / len(pts)
    for _ in range(iters):
        num, den = 0j, 0.0
        hit = None
        for p in pts:
            d = abs(z - p)
            if d < 1e-300:
                hit = p
                break
            w = 1.0 / d
            num += w * p
            den += w
        if hit is not None:
            return hit
        znew = num / den
        if abs(znew - z) <= 1e-15 * (1.0 + abs(znew)):
            return znew
        z = znew
    return z


def compare_closed_form(
    sw: SweepResult,
    ref: Callable[[complex], complex],
    tolerance: float = 1e-6,
) -> ComparisonReport:
    """Constancy-of-ratio comparison of a sweep against a reference g(s).

    verdict PROPORTIONAL iff max |ratio - c| / |c| < tolerance with c the
    geometric median of the ratios and c != 0.
    """
    ratios = []
    for rep in sw.samples:
        g = complex(ref(rep.s))
        if abs(g) < 1e-300:
            raise ReferenceZeroError(f"reference vanishes at s = {rep.s}")
        ratios.append(rep.total / g)
    constant = geometric_median(ratios)
    ratio_scale = max(abs(r) for r in ratios)
    if ratio_scale == 0.0 or abs(constant) <= 1e-12 * ratio_scale:
        deviation = ratio_scale
        verdict = "MISMATCH"
    else:
        deviation = max(abs(r - constant) for r in ratios) / abs(constant)
        verdict = "PROPORTIONAL" if deviation < tolerance else "MISMATCH"
    return ComparisonReport(
        ratios=ratios,
        constant=constant,
        max_relative_deviation=deviation,
        verdict=verdict,
        tolerance=tolerance,
    )


@dataclass
class ScanRow:
    exponents: tuple[int, ...]
    monomial: str
    totals: list[complex]
    vanish_scales: list[float]

    @property
    def vanishes(self) -> bool:
        return all(
            t == 0 if sc == 0.0 else abs(t) < VANISH_REL_TOL * sc
            for t, sc in zip(self.totals, self.vanish_scales)
        )


@dataclass
class ScanTable:
    rows: list[ScanRow]
    s_list: list[complex]
    family_name: str
    degree: int


def monomial_scan(
    X: Hypersurface,
    fam: CurveFamily,
    s_list: Sequence[complex],
    degree: int,
    quadrature: bool = True,
    nodes: int = 256,
) -> ScanTable:
    """Period of every degree-``degree`` monomial class at every sample.

    One row per exponent vector in graded-lex (descending) order; 126 rows
    for degree 5 in five variables.  Pair sites and denominators are shared
    across monomials at a fixed sample.
    """
    if not s_list:
        raise ValueError("sample list must be nonempty")
    want = required_degree(X.degree, X.m, 1)
    if degree != want:
        raise DegreeError(f"scan degree must be {want} for this hypersurface, got {degree}")
    monos = monomials_of_degree(X.nvars, degree)
    rows = [ScanRow(exps, monomial_text(exps), [], []) for exps in monos]
    for s in s_list:
        ctx = _SampleContext(X, fam.jet_at(s))
        for row in rows:
            P = MultiPoly.monomial(X.nvars, 1.0, row.exponents)
            rep = _assemble(
                ctx, P, ctx.compose(P), quadrature, nodes, deep_diagnostics=False
            )
            row.totals.append(rep.total)
            row.vanish_scales.append(rep.vanish_scale)
    return ScanTable(
        rows=rows,
        s_list=[complex(s) for s in s_list],
        family_name=fam.name,
        degree=degree,
    )
