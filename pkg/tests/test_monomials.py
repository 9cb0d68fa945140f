from math import gcd

import numpy as np
import pytest

from cyclic_fsignature.errors import HomWeightError, LabelError
from cyclic_fsignature.group import validate_group
from cyclic_fsignature.monomials import (
    format_monomial,
    hom_monomials,
    induced_matrix,
    minimal_generators,
    num_generators,
    weight,
)
from cyclic_fsignature.series import series_for


def coprime_groups(limit):
    for n in range(2, limit + 1):
        for a in range(1, n):
            if gcd(a, n) == 1:
                yield validate_group(n, a)


class TestMinimalGenerators:
    """Test cases for the monomial generators of M_t."""

    def setup_method(self):
        """Set up test fixtures."""
        self.g = validate_group(7, 3)

    def test_special_modules(self):
        """Test the two-generator special modules of 1/7(1,3)."""
        assert minimal_generators(1, self.g).mingens == [(1, 0), (0, 5)]
        assert minimal_generators(2, self.g).mingens == [(2, 0), (0, 3)]
        assert minimal_generators(3, self.g).mingens == [(3, 0), (0, 1)]

    def test_non_special_modules(self):
        """Test that non-special modules need three generators here."""
        assert minimal_generators(4, self.g).mingens == [(4, 0), (1, 1), (0, 6)]
        assert minimal_generators(5, self.g).mingens == [(5, 0), (2, 1), (0, 4)]
        assert minimal_generators(6, self.g).mingens == [(6, 0), (3, 1), (0, 2)]

    def test_ring_itself(self):
        """Test that R = M_0 is generated by 1."""
        module = minimal_generators(0, self.g)

        assert module.mingens == [(0, 0)]
        assert module.mu == 1
        assert module.rank == 1

    def test_label_out_of_range(self):
        """Test that labels outside [0, n) are rejected."""
        with pytest.raises(LabelError):
            minimal_generators(7, self.g)

    def test_generators_have_the_right_weight(self):
        """Test weight, staircase shape and y-axis closure for all n <= 25."""
        for n in range(2, 26):
            for a in range(1, n):
                if gcd(a, n) != 1:
                    continue
                g = validate_group(n, a)
                for label in range(n):
                    gens = minimal_generators(label, g).mingens
                    assert all(weight(gen, g) == label for gen in gens)
                    assert gens[0] == (label, 0)
                    assert gens[-1][0] == 0
                    i_values = [i for i, _ in gens]
                    assert i_values == sorted(i_values, reverse=True)

    def test_num_generators(self):
        """Test μ(M_t) for 1/7(1,3)."""
        assert [num_generators(t, self.g) for t in range(7)] == [1, 2, 2, 2, 3, 3, 3]


class TestFormatting:
    """Test cases for monomial rendering."""

    @pytest.mark.parametrize(
        "exponent, text",
        [((0, 0), "1"), ((1, 0), "x"), ((2, 1), "x^2y"), ((0, 5), "y^5"), ((3, 2), "x^3y^2")],
    )
    def test_format_monomial(self, exponent, text):
        """Test x^i y^j rendering."""
        assert format_monomial(exponent) == text


class TestHoms:
    """Test cases for monomial homs and their mod-m matrices."""

    def setup_method(self):
        """Set up test fixtures."""
        self.g = validate_group(7, 3)

    def test_hom_space(self):
        """Test Hom(M_1, M_2) ≅ M_1."""
        assert hom_monomials(1, 2, self.g).mingens == [(1, 0), (0, 5)]
        assert hom_monomials(3, 3, self.g).mingens == [(0, 0)]

    def test_induced_matrix_x(self):
        """Test that x: M_1 -> M_2 hits only x^2."""
        matrix = induced_matrix((1, 0), 1, 2, self.g)

        assert matrix.rows == [[1, 0], [0, 0]]
        assert matrix.to_array().dtype == np.int64

    def test_induced_matrix_y(self):
        """Test that y^2: M_3 -> M_2 sends y onto y^3."""
        assert induced_matrix((0, 2), 3, 2, self.g).rows == [[0, 0], [0, 1]]

    def test_identity(self):
        """Test that 1: M_4 -> M_4 is the identity mod m."""
        matrix = induced_matrix((0, 0), 4, 4, self.g).to_array()

        assert (matrix == np.eye(3, dtype=np.int64)).all()

    def test_wrong_weight(self):
        """Test that a hom of the wrong weight is rejected."""
        with pytest.raises(HomWeightError):
            induced_matrix((0, 1), 1, 2, self.g)


class TestGeneratorStructure:
    """Test cases comparing generators with direct enumeration."""

    def test_matches_brute_force_minimal_elements(self):
        """Test against the componentwise-minimal weight-t points of [0,n)^2."""
        for g in coprime_groups(30):
            for label in range(g.n):
                points = [
                    (i, j)
                    for i in range(g.n)
                    for j in range(g.n)
                    if weight((i, j), g) == label
                ]
                minimal = [
                    p
                    for p in points
                    if not any(o != p and o[0] <= p[0] and o[1] <= p[1] for o in points)
                ]
                expected = sorted(minimal, key=lambda p: p[1])

                assert minimal_generators(label, g).mingens == expected, (g.n, g.a, label)

    def test_generators_form_an_antichain(self):
        """Test that no generator divides another."""
        for g in coprime_groups(30):
            for label in range(g.n):
                gens = minimal_generators(label, g).mingens
                for p in gens:
                    for o in gens:
                        if o != p:
                            assert not (o[0] <= p[0] and o[1] <= p[1])

    def test_special_modules_have_two_generators(self):
        """Test M_{i_t} = (x^{i_t}, y^{j_t}) for t = 1..r and R = (1)."""
        for g in coprime_groups(60):
            s = series_for(g)
            for t in range(1, s.r + 1):
                module = minimal_generators(s.i_series[t] % g.n, g)

                assert module.mingens == [(s.i_series[t], 0), (0, s.j_series[t])]
                assert module.mu == 2
            assert minimal_generators(0, g).mu == 1


class TestHomStructure:
    """Test cases for hom weights and composition of induced matrices."""

    @pytest.mark.parametrize("n, a", [(7, 3), (8, 5), (11, 4)])
    def test_hom_generators_have_the_difference_weight(self, n, a):
        """Test that each hom has weight t - s and sends M_s into M_t."""
        g = validate_group(n, a)
        for source in range(n):
            for target in range(n):
                source_gens = minimal_generators(source, g).mingens
                for f in hom_monomials(source, target, g).mingens:
                    assert weight(f, g) == (target - source) % n
                    for i, j in source_gens:
                        assert weight((i + f[0], j + f[1]), g) == target

    @pytest.mark.parametrize("n, a", [(7, 3), (8, 5)])
    def test_composition_multiplies_matrices(self, n, a):
        """Test induced(h f) = induced(h) @ induced(f)."""
        g = validate_group(n, a)
        for s in range(n):
            for t in range(n):
                for u in range(n):
                    for f in hom_monomials(s, t, g).mingens:
                        for h in hom_monomials(t, u, g).mingens:
                            composite = induced_matrix((f[0] + h[0], f[1] + h[1]), s, u, g)
                            product = (
                                induced_matrix(h, t, u, g).to_array()
                                @ induced_matrix(f, s, t, g).to_array()
                            )

                            assert (composite.to_array() == product).all(), (s, t, u, f, h)
