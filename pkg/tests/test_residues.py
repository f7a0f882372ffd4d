import numpy as np
import pytest

from quintic_periods.errors import (
    BaseLocusCollisionError,
    PoleMismatchError,
    RadiusCollisionError,
)
from quintic_periods.numkernel.residues import (
    RationalFunction,
    quadrature_radius,
    residue_analytic,
    residue_at_infinity_analytic,
    residue_at_infinity_quadrature,
    residue_quadrature,
    residue_sum_check,
    residues_at_zeros,
)
from quintic_periods.numkernel.unipoly import BinaryForm, UniPoly


def rf(num, den):
    return RationalFunction(UniPoly(num), UniPoly(den))


class TestAnalytic:
    def test_simple_pole_at_origin(self):
        assert abs(residue_analytic(rf([1], [0, 1]), 0j, 1) - 1.0) < 1e-15

    def test_double_pole_even_tail(self):
        assert abs(residue_analytic(rf([1], [0, 0, 1]), 0j, 2)) < 1e-15

    def test_partial_fractions_value(self):
        # (3t+2)/((t-1)(t+2)) at t=1: (3+2)/(1+2) = 5/3
        f = RationalFunction(UniPoly([2, 3]), UniPoly([-1, 1]) * UniPoly([2, 1]))
        assert abs(residue_analytic(f, 1.0 + 0j, 1) - 5.0 / 3.0) < 1e-14

    def test_numerator_vanishing_at_pole(self):
        # t/(t^2): reduces to 1/t
        f = rf([0, 1], [0, 0, 1])
        assert abs(residue_analytic(f, 0j, 2) - 1.0) < 1e-15

    def test_order_mismatch_raises(self):
        with pytest.raises(PoleMismatchError):
            residue_analytic(rf([1], [0, 1]), 0j, 2)
        with pytest.raises(PoleMismatchError):
            residue_analytic(rf([1], [0, 1]), 1.0 + 0j, 1)


class TestQuadrature:
    def test_unit_residue(self):
        f = rf([1], [0, 1])
        val = residue_quadrature(lambda t: f(t), 0j, 0.5)
        assert abs(val - 1.0) < 1e-12

    def test_partial_fraction_value(self):
        f = RationalFunction(UniPoly([2, 3]), UniPoly([-1, 1]) * UniPoly([2, 1]))
        val = residue_quadrature(lambda t: f(t), 1.0 + 0j, 0.5)
        assert abs(val - 5.0 / 3.0) < 1e-10

    def test_radius_collision(self):
        f = rf([1], [0, 1])
        with pytest.raises(RadiusCollisionError):
            residue_quadrature(lambda t: f(t), 0j, 0.5, other_poles=(0.6 + 0j,))

    def test_radius_rule(self):
        assert quadrature_radius(0j, [2.0 + 0j]) == 0.5
        assert abs(quadrature_radius(0j, [0.2 + 0j]) - 0.1) < 1e-15


class TestBackendAgreement:
    def test_seeded_cross_check(self):
        rng = np.random.default_rng(515151)
        for _ in range(60):
            poles = []
            while len(poles) < 5:
                z = complex(*rng.uniform(-2, 2, 2))
                if all(abs(z - p) >= 5e-2 for p in poles):
                    poles.append(z)
            den = UniPoly.from_roots(poles)
            num = UniPoly([complex(*rng.uniform(-1, 1, 2)) for _ in range(5)])
            f = RationalFunction(num, den)
            for p in poles:
                ra = residue_analytic(f, p, 1)
                radius = quadrature_radius(p, [q for q in poles if q != p])
                rq = residue_quadrature(lambda t: f(t), p, radius)
                assert abs(ra - rq) <= 1e-8 * max(abs(ra), abs(rq), 1e-12)


class TestResidueTheorem:
    def test_one_over_t(self):
        f = rf([1], [0, 1])
        assert abs(residue_at_infinity_analytic(f) + 1.0) < 1e-15
        assert residue_sum_check(f) < 1e-12

    def test_polynomial_has_no_residue(self):
        f = rf([0, 1], [1])
        assert residue_sum_check(f) < 1e-15

    def test_agreement_at_millimeter_separation(self):
        # poles 1e-3 apart: the radius rule shrinks the contour, agreement
        # must still reach 1e-8 relative
        poles = [0.2 + 0j, 0.2 + 1e-3j, -1.0 + 0.5j]
        den = UniPoly.from_roots(poles)
        num = UniPoly([0.3, -1.0, 0.7j])
        f = RationalFunction(num, den)
        for p in poles:
            ra = residue_analytic(f, p, 1)
            radius = quadrature_radius(p, [q for q in poles if q != p])
            rq = residue_quadrature(lambda t: f(t), p, radius)
            assert abs(ra - rq) <= 1e-8 * max(abs(ra), abs(rq))

    def test_infinity_backends_agree(self):
        rng = np.random.default_rng(818)
        for _ in range(20):
            den = UniPoly.from_roots(
                [complex(*rng.uniform(-2, 2, 2)) for _ in range(4)]
            )
            num = UniPoly([complex(*rng.uniform(-1, 1, 2)) for _ in range(4)])
            if num.is_zero():
                num = UniPoly.one()
            f = RationalFunction(num, den)
            ra = residue_at_infinity_analytic(f)
            rq = residue_at_infinity_quadrature(f)
            assert abs(ra - rq) <= 1e-8 * max(abs(ra), abs(rq), 1e-10)

    def test_seeded_global_sums(self):
        rng = np.random.default_rng(909)
        for _ in range(60):
            poles = []
            while len(poles) < int(rng.integers(3, 8)):
                z = complex(*rng.uniform(-2, 2, 2))
                if all(abs(z - p) >= 1e-2 for p in poles):
                    poles.append(z)
            den = UniPoly.from_roots(poles, lead=complex(*rng.uniform(0.5, 1.5, 2)))
            num = UniPoly([complex(*rng.uniform(-1, 1, 2)) for _ in range(int(rng.integers(1, 9)))])
            if num.is_zero():
                num = UniPoly.one()
            f = RationalFunction(num, den)
            assert residue_sum_check(f) < 1e-8


class TestResiduesAtZeros:
    def test_zero_at_origin(self):
        f = rf([1], [0, 1])
        z = BinaryForm(1, (0.0, 1.0))  # the form x
        out = residues_at_zeros(f, z)
        assert abs(out.total - 1.0) < 1e-14

    def test_constant_form_contributes_nothing(self):
        f = rf([1], [0, 1])
        out = residues_at_zeros(f, BinaryForm.constant(1.0))
        assert out.total == 0
        assert out.sites == []

    def test_cancelling_pair(self):
        # 1/(t(t-1)) summed over zeros of x(x - y): residues -1 and +1
        f = RationalFunction(UniPoly([1]), UniPoly([0, 1]) * UniPoly([-1, 1]))
        z = BinaryForm(2, (0.0, -1.0, 1.0))  # x(x - y)
        out = residues_at_zeros(f, z)
        assert abs(out.total) < 1e-12
        assert len(out.sites) == 2

    def test_infinity_zero_collects_residue_at_infinity(self):
        f = rf([1], [0, 1])
        z = BinaryForm(1, (1.0, 0.0))  # the form y, zero at [1:0]
        out = residues_at_zeros(f, z)
        assert len(out.sites) == 1 and out.sites[0].at_infinity
        assert abs(out.total + 1.0) < 1e-14

    def test_zero_numerator_short_circuits(self):
        f = rf([], [0, 1])
        out = residues_at_zeros(f, BinaryForm(1, (0.0, 1.0)))
        assert out.total == 0

    def test_guard_collision_on_shared_pole(self):
        # pole at the shared zero t=0, guard also vanishing there
        f = rf([1], [0, 0, 1])
        z = BinaryForm(1, (0.0, 1.0))
        guard = BinaryForm(1, (0.0, 2.0))
        with pytest.raises(BaseLocusCollisionError):
            residues_at_zeros(f, z, guard=guard)

    def test_guard_without_pole_is_fine(self):
        # numerator kills the pole: residue contribution is 0, no error
        f = rf([0, 0, 1], [0, 0, 1])
        z = BinaryForm(1, (0.0, 1.0))
        guard = BinaryForm(1, (0.0, 2.0))
        out = residues_at_zeros(f, z, guard=guard)
        assert out.total == 0

    def test_backend_reports_on_sites(self):
        f = RationalFunction(UniPoly([2, 3]), UniPoly([-1, 1]) * UniPoly([2, 1]))
        z = BinaryForm(1, (-1.0, 1.0))  # x - y: zero at t=1
        out = residues_at_zeros(f, z)
        (site,) = out.sites
        assert site.pole_order == 1
        assert site.residue_quadrature is not None
        assert site.backend_disagreement < 1e-10
