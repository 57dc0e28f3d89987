import json
import random
from fractions import Fraction

import pytest

from sympencil.catalog import (
    E8_GRAM,
    HYPERBOLIC,
    block_diag,
    elliptic_like,
    lattice_from_dict,
    lattice_to_dict,
    load_catalog,
    load_catalog_entry,
    negated,
    parse_rational,
    spin_model,
)
from sympencil.lattice import (
    BlownUpLattice,
    FourManifoldLattice,
    blow_up,
    classify_b_plus_one,
    is_even_form,
    minimality_inequality,
    signature_of_symmetric,
    twist,
)


class TestSignature:
    def test_diagonal(self):
        assert signature_of_symmetric([[1, 0], [0, -1]]) == (1, 1, 0)

    def test_hyperbolic_block(self):
        # Needs the zero-diagonal repair path.
        assert signature_of_symmetric(HYPERBOLIC) == (1, 1, 0)

    def test_e8_is_definite(self):
        assert signature_of_symmetric(E8_GRAM) == (8, 0, 0)
        assert signature_of_symmetric(negated(E8_GRAM)) == (0, 8, 0)

    def test_degenerate_counted(self):
        assert signature_of_symmetric([[0, 0], [0, 0]]) == (0, 0, 2)
        assert signature_of_symmetric([[1, 1], [1, 1]]) == (1, 0, 1)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            signature_of_symmetric([[0, 1], [2, 0]])

    def test_sum_of_hyperbolics(self):
        q = block_diag(HYPERBOLIC, HYPERBOLIC, HYPERBOLIC)
        assert signature_of_symmetric(q) == (3, 3, 0)


class TestCatalogEntries:
    def test_names(self):
        cat = load_catalog()
        assert sorted(cat) == ["cp2", "e1", "e3", "e4", "k3", "k3_sum3", "s2xs2"]

    def test_projective_plane_numbers(self):
        cp2 = load_catalog_entry("cp2")
        cn = cp2.char_numbers()
        assert (cn.euler, cn.signature, cn.two_e_plus_3sigma, cn.chi_h) == (3, 1, 9, 1)

    def test_k3_numbers(self):
        k3 = load_catalog_entry("k3")
        cn = k3.char_numbers()
        assert (cn.euler, cn.signature, cn.two_e_plus_3sigma, cn.chi_h) == (
            24,
            -16,
            0,
            2,
        )
        assert (k3.b_plus, k3.b_minus) == (3, 19)
        assert is_even_form(k3)

    def test_triple_sum_numbers(self):
        x = load_catalog_entry("k3_sum3")
        assert x.two_e_plus_3sigma == -8
        assert x.k_squared == -8
        assert x.chi_h == 5
        assert x.minimal

    def test_rational_elliptic_numbers(self):
        e1 = load_catalog_entry("e1")
        assert (e1.b_plus, e1.b_minus) == (1, 9)
        assert e1.k_squared == 0
        assert not e1.minimal

    def test_round_trip(self):
        for name, x in load_catalog().items():
            d = lattice_to_dict(x)
            y = lattice_from_dict(json.loads(json.dumps(d)))
            assert y.form == x.form
            assert y.canonical == x.canonical
            assert y.omega == x.omega
            assert y.b1 == x.b1
            assert y.minimal == x.minimal

    def test_characteristic_vector_random_classes(self):
        # K.x + x.x must be even for arbitrary integer classes.
        rng = random.Random(20260822)
        for x in load_catalog().values():
            for _ in range(2 * x.b2):
                v = [rng.randint(-9, 9) for _ in range(x.b2)]
                assert (x.k_dot(v) + x.square(v)) % 2 == 0


class TestGeneratorFamilies:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_elliptic_like(self, n):
        x = elliptic_like(n)
        assert x.chi_h == n
        assert x.k_squared == 0
        assert x.b_plus == 2 * n - 1
        assert x.omega_dot(x.canonical) == 3

    @pytest.mark.parametrize("n", range(1, 5))
    def test_spin_model(self, n):
        x = spin_model(n)
        assert x.chi_h == 2 * n
        assert x.k_squared == 0
        assert x.b_plus == 4 * n - 1
        assert is_even_form(x)
        # K is twice an integral vector, so K/2 is itself a lattice class.
        assert all(c % 2 == 0 for c in x.canonical)


class TestValidation:
    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError, match="symmetric"):
            FourManifoldLattice("bad", 0, [[0, 1], [2, 0]], [0, 0], [1, 1], True)

    def test_non_characteristic_rejected(self):
        with pytest.raises(ValueError, match="characteristic"):
            FourManifoldLattice("bad", 0, [[1]], [-2], [1], True)

    def test_wrong_k_square_rejected(self):
        with pytest.raises(ValueError, match="2e \\+ 3sigma"):
            FourManifoldLattice("bad", 0, [[1]], [-1], [1], True)

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            FourManifoldLattice("bad", 0, [[1, 1], [1, 1]], [1, 1], [1, 0], True)

    def test_nonpositive_omega_rejected(self):
        with pytest.raises(ValueError, match="omega"):
            FourManifoldLattice("bad", 0, [[1]], [-3], [0], True)

    def test_half_integral_chi_h_rejected_for_even_b1(self):
        # diag(1,5) with K=(3,1): characteristic, K.K = 14 = 2e+3sigma,
        # but (e + sigma)/4 = 3/2.
        with pytest.raises(ValueError, match="chi_h"):
            FourManifoldLattice("bad", 0, [[1, 0], [0, 5]], [3, 1], [1, 0], True)

    def test_half_integral_chi_h_allowed_for_odd_b1(self):
        x = FourManifoldLattice("ok", 1, [[5]], [1], [1], True)
        assert x.chi_h == Fraction(1, 2)

    def test_negative_b1_rejected(self):
        with pytest.raises(ValueError, match="b1"):
            FourManifoldLattice("bad", -1, [[1]], [-3], [1], True)


class TestAdjunction:
    def test_plane_cubic(self):
        cp2 = load_catalog_entry("cp2")
        assert cp2.adjunction_genus([3]) == 1

    def test_plane_line_and_conic(self):
        cp2 = load_catalog_entry("cp2")
        assert cp2.adjunction_genus([1]) == 0
        assert cp2.adjunction_genus([2]) == 0

    def test_k3_square_zero_class(self):
        k3 = load_catalog_entry("k3")
        v = [0] * k3.b2
        v[0] = 1  # isotropic basis vector of the first hyperbolic block
        assert k3.square(v) == 0
        assert k3.adjunction_genus(v) == 1

    def test_exceptional_sphere(self):
        xp = blow_up(load_catalog_entry("cp2"), 1)
        e = xp.exceptional_class(0)
        assert xp.square(e) == -1
        assert xp.k_dot(e) == -1
        assert xp.adjunction_genus(e) == 0


class TestBlowUp:
    def test_basic_shape(self):
        cp2 = load_catalog_entry("cp2")
        xp = blow_up(cp2, 9)
        assert isinstance(xp, BlownUpLattice)
        assert xp.b2 == 10
        assert xp.canonical == (-3,) + (1,) * 9
        assert not xp.minimal
        assert xp.two_e_plus_3sigma == 0

    def test_signature_fast_path_matches_diagonalization(self):
        for name in ("cp2", "s2xs2", "k3"):
            xp = blow_up(load_catalog_entry(name), 4)
            assert signature_of_symmetric(xp.form) == (xp.b_plus, xp.b_minus, 0)

    def test_twist_identity_plane(self):
        cp2 = load_catalog_entry("cp2")
        xp = blow_up(cp2, 9)
        a = [1]
        ta = twist(xp, a)
        lhs = cp2.square(a) - cp2.k_dot(a)
        rhs = xp.square(ta) - xp.k_dot(ta)
        assert lhs == rhs == 4

    def test_twist_identity_zero_class(self):
        k3 = load_catalog_entry("k3")
        xp = blow_up(k3, 5)
        zero = [0] * k3.b2
        tz = twist(xp, zero)
        assert xp.square(tz) - xp.k_dot(tz) == 0

    def test_twisted_genus_drops_by_n(self):
        # 2g'-2 = 2g-2 - 2N for the twisted class, since the identity
        # preserves a.a - K.a while each exceptional class eats two.
        cp2 = load_catalog_entry("cp2")
        for n in (1, 2, 3):
            xp = blow_up(cp2, n)
            assert xp.adjunction_genus(twist(xp, [3])) == cp2.adjunction_genus([3]) - n

    def test_rejects_zero_points(self):
        with pytest.raises(ValueError):
            blow_up(load_catalog_entry("cp2"), 0)

    def test_twist_needs_blowup(self):
        with pytest.raises(TypeError):
            twist(load_catalog_entry("cp2"), [1])


class TestClassification:
    def test_plane(self):
        v = classify_b_plus_one(load_catalog_entry("cp2"))
        assert v.verdict == "classified"
        assert v.homeo_type == "cp2"

    def test_quadric(self):
        v = classify_b_plus_one(load_catalog_entry("s2xs2"))
        assert v.verdict == "classified"
        assert v.homeo_type == "s2xs2"
        assert v.even

    def test_nine_blowups_rejected(self):
        v = classify_b_plus_one(load_catalog_entry("e1"))
        assert v.verdict == "rejected"
        assert v.b_minus == 9
        assert v.two_e_plus_3sigma == 0

    def test_blown_up_plane_types(self):
        xp = blow_up(load_catalog_entry("cp2"), 3)
        v = classify_b_plus_one(xp)
        assert v.homeo_type == "cp2#3cp2bar"

    def test_preconditions(self):
        with pytest.raises(ValueError, match="b\\+"):
            classify_b_plus_one(load_catalog_entry("k3"))
        flipped = FourManifoldLattice("flip", 0, [[1]], [3], [1], True)
        with pytest.raises(ValueError, match="omega"):
            classify_b_plus_one(flipped)


class TestMinimality:
    def test_k3_holds(self):
        assert minimality_inequality(load_catalog_entry("k3")) is True

    def test_triple_sum_fails(self):
        assert minimality_inequality(load_catalog_entry("k3_sum3")) is False

    def test_needs_b_plus_above_one(self):
        with pytest.raises(ValueError):
            minimality_inequality(load_catalog_entry("cp2"))

    def test_needs_minimal_flag(self):
        with pytest.raises(ValueError):
            minimality_inequality(load_catalog_entry("e1"))


class TestManifoldFiles:
    def test_parse_rational(self):
        assert parse_rational(3) == 3
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational("-2/5") == Fraction(-2, 5)
        assert parse_rational("7") == 7

    def test_parse_rational_rejects_junk(self):
        with pytest.raises(ValueError):
            parse_rational("1.5")
        with pytest.raises(ValueError):
            parse_rational(True)

    def test_missing_fields(self):
        with pytest.raises(ValueError, match="missing"):
            lattice_from_dict({"label": "x"})

    def test_non_integer_entries_rejected(self):
        good = lattice_to_dict(load_catalog_entry("cp2"))
        bad = dict(good)
        bad["K"] = [True]
        with pytest.raises(ValueError):
            lattice_from_dict(bad)
