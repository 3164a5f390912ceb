"""Jones state sum, chain complex, and rational homology."""

from fractions import Fraction as F
import random

import pytest
from hypothesis import given, strategies as st

from polykh.khovanov import (KhovanovError, LaurentPoly, jones_state_sum,
                             normalized_jones, build_complex, homology,
                             khovanov_homology, euler_characteristic,
                             homology_tsv, _check_d_squared, _sparse_rank)
from polykh import build_good_diagram, build_cube, load_fixture

from conftest import DIR_Z, random_diagram

small_poly = st.dictionaries(st.integers(-6, 6), st.integers(-9, 9),
                             max_size=5).map(LaurentPoly)


class TestLaurentPoly:
    def test_text_form(self):
        p = LaurentPoly({1: 1, 3: 1, 5: 1, 9: -1})
        assert p.to_text() == "1*q^1 + 1*q^3 + 1*q^5 - 1*q^9"
        assert LaurentPoly().to_text() == "0"
        assert LaurentPoly({-2: 3}).to_text() == "3*q^-2"

    def test_zero_coefficients_dropped(self):
        assert LaurentPoly({4: 0}) == LaurentPoly()

    @given(small_poly, small_poly, small_poly)
    def test_ring_axioms(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)


class TestJones:
    def test_unknot(self):
        cube = build_cube(build_good_diagram(load_fixture("square"), DIR_Z))
        assert jones_state_sum(cube) == LaurentPoly({-1: 1, 1: 1})
        assert normalized_jones(jones_state_sum(cube)) == LaurentPoly({0: 1})

    def test_two_component_unlink(self):
        cube = build_cube(build_good_diagram(load_fixture("two_squares"), DIR_Z))
        # (q + q^-1)^2
        assert jones_state_sum(cube) == LaurentPoly({-2: 1, 0: 2, 2: 1})

    def test_trefoil(self, trefoil_cube):
        j = jones_state_sum(trefoil_cube)
        assert j == LaurentPoly({1: 1, 3: 1, 5: 1, 9: -1})
        assert normalized_jones(j) == LaurentPoly({2: 1, 6: 1, 8: -1})

    def test_kinked_unknot_is_unknot(self):
        # one positive kink: the unnormalized polynomial is that of the unknot
        cube = build_cube(build_good_diagram(load_fixture("kink5"), DIR_Z))
        assert jones_state_sum(cube) == LaurentPoly({-1: 1, 1: 1})


class TestComplex:
    def test_trefoil_gradings(self, trefoil_cube):
        cx = build_complex(trefoil_cube)
        assert cx.degrees == [0, 1, 2, 3]
        dims = {i: len(b) for i, b in cx.basis.items()}
        assert dims == {0: 4, 1: 2 + 2 + 2, 2: 4 + 4 + 4, 3: 8}

    def test_chain_euler_equals_state_sum(self):
        rng = random.Random(31)
        for _ in range(8):
            diagram, _link, _dir = random_diagram(rng)
            cube = build_cube(diagram)
            cx = build_complex(cube)
            assert cx.chain_euler() == jones_state_sum(cube)

    def test_d_squared_rejects_tampering(self, trefoil_cube):
        cx = build_complex(trefoil_cube)
        diffs = {i: dict(d) for i, d in cx.differentials.items()}
        key = next(iter(diffs[0]))
        diffs[0][key] = -diffs[0][key]
        with pytest.raises(KhovanovError, match="d\\^2"):
            _check_d_squared(cx.basis, diffs)


class TestRank:
    def test_known_ranks(self):
        rows = [{0: F(1), 1: F(2)}, {0: F(2), 1: F(4)}]
        assert _sparse_rank(rows) == 1
        rows = [{0: F(1)}, {1: F(1)}, {0: F(1), 1: F(1)}]
        assert _sparse_rank(rows) == 2
        assert _sparse_rank([]) == 0

    @given(st.lists(st.dictionaries(st.integers(0, 4),
                                    st.fractions(min_value=-3, max_value=3,
                                                 max_denominator=4),
                                    max_size=5), max_size=5))
    def test_rank_bounds(self, rows):
        rows = [{c: v for c, v in r.items() if v} for r in rows]
        rows = [r for r in rows if r]
        r = _sparse_rank([dict(r) for r in rows])
        cols = {c for row in rows for c in row}
        assert 0 <= r <= min(len(rows), len(cols)) if rows else r == 0


class TestHomology:
    def test_unknot(self):
        cube = build_cube(build_good_diagram(load_fixture("square"), DIR_Z))
        assert khovanov_homology(cube) == {(0, -1): 1, (0, 1): 1}

    def test_unlink(self):
        cube = build_cube(build_good_diagram(load_fixture("two_squares"), DIR_Z))
        assert khovanov_homology(cube) == {(0, -2): 1, (0, 0): 2, (0, 2): 1}

    def test_trefoil(self, trefoil_cube):
        assert khovanov_homology(trefoil_cube) == {
            (0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1}

    def test_euler_identity(self):
        rng = random.Random(77)
        for _ in range(8):
            diagram, _link, _dir = random_diagram(rng)
            cube = build_cube(diagram)
            assert (euler_characteristic(khovanov_homology(cube))
                    == jones_state_sum(cube))

    def test_whitehead_euler(self, whitehead_diagram):
        cube = build_cube(whitehead_diagram)
        table = khovanov_homology(cube)
        assert euler_characteristic(table) == jones_state_sum(cube)
        # alternating link: homology is thin (two adjacent diagonals)
        diagonals = sorted({j - 2 * i for (i, j) in table})
        assert len(diagonals) == 2 and diagonals[1] - diagonals[0] == 2
        assert sum(table.values()) == 10

    def test_tsv_format(self):
        assert homology_tsv({(0, 1): 1, (0, -1): 1}) == "0\t-1\t1\n0\t1\t1\n"
        assert homology_tsv({}) == ""
