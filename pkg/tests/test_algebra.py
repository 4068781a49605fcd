import itertools

import numpy as np
import pytest

from ahg.algebra import (
    ORDER5_TABLE,
    MoufangElement,
    associates,
    builtin_order5_loop,
    check_moufang_identities,
    dihedral_group,
    is_associative,
    loop_from_group,
    moufang_extension,
    nonassociative_witness,
    validate_loop,
)
from ahg.errors import DomainError, LoopValidationError

from oracles import moufang_table_oracle


def _is_latin(t):
    m = len(t)
    return all(sorted(row) == list(range(m)) for row in t.tolist()) and all(
        sorted(col) == list(range(m)) for col in t.T.tolist()
    )


class TestDihedral:
    def test_order_and_names(self):
        g, _ = dihedral_group(3)
        assert g.order == 6
        assert g.names == ("e", "x", "x^2", "y", "xy", "x^2y")

    def test_relations(self):
        for n in range(3, 8):
            g, _ = dihedral_group(n)
            x, y = 1, n
            xn = 0
            for _ in range(n):
                xn = g.mul(xn, x)
            assert xn == g.identity
            assert g.mul(y, y) == g.identity
            # xy = y x^-1
            assert g.mul(x, y) == g.mul(y, g.inverse(x))

    def test_center_n3(self):
        _, p = dihedral_group(3)
        assert p.center == {0}

    def test_center_n4_brute_force(self):
        g, p = dihedral_group(4)
        t = g.table
        center = {a for a in range(8) if all(t[a, b] == t[b, a] for b in range(8))}
        assert center == {0, 2}
        assert p.center == center

    def test_partition_n3(self):
        g, p = dihedral_group(3)
        assert {g.names[k] for k in p.R} == {"x", "x^2"}
        assert {g.names[k] for k in p.S} == {"y", "xy", "x^2y"}

    @pytest.mark.parametrize("n", range(3, 11))
    def test_partition_sizes(self, n):
        _, p = dihedral_group(n)
        assert p.center | p.R | p.S == set(range(2 * n))
        assert not (p.center & p.R or p.center & p.S or p.R & p.S)
        if n % 2:
            assert p.sizes() == (1, n - 1, n)
        else:
            assert p.sizes() == (2, n - 2, n)

    @pytest.mark.parametrize("n", [2, 1, 0, -3])
    def test_rejects_small_n(self, n):
        with pytest.raises(DomainError, match="n >= 3"):
            dihedral_group(n)


class TestLoops:
    def test_builtin_order5(self):
        loop = builtin_order5_loop()
        assert loop.table.tolist() == [list(r) for r in ORDER5_TABLE]
        assert loop.identity == 0
        assert loop.mul(1, 2) == 3
        assert loop.mul(3, 2) == 4
        assert loop.mul(0, 4) == 4
        assert loop.provenance == "builtin_order5"

    def test_order5_row_violation(self):
        bad = [list(r) for r in ORDER5_TABLE]
        bad[1][1] = 1
        with pytest.raises(LoopValidationError) as info:
            validate_loop(bad, 0)
        assert (info.value.row, info.value.column) == (1, 1)
        assert "row 1, column 1" in str(info.value)

    def test_column_violation(self):
        # rows are permutations but columns are not
        bad = [[0, 1, 2], [1, 2, 0], [1, 2, 0]]
        with pytest.raises(LoopValidationError) as info:
            validate_loop(bad)
        assert (info.value.row, info.value.column) == (2, 0)

    def test_missing_identity(self):
        # a*b = -a-b (mod 3) is Latin but has no identity
        t = [[(-a - b) % 3 for b in range(3)] for a in range(3)]
        with pytest.raises(LoopValidationError, match="identity"):
            validate_loop(t)
        with pytest.raises(LoopValidationError, match="identity"):
            validate_loop(t, identity=0)

    @pytest.mark.parametrize("n", [3, 4])
    def test_group_tables_are_loops(self, n):
        g, _ = dihedral_group(n)
        loop = validate_loop(g.table, g.identity)
        assert loop.identity == 0

    def test_finds_identity(self):
        t = np.array(ORDER5_TABLE)
        perm = [3, 0, 1, 2, 4]  # relabel so identity becomes 3
        inv = np.argsort(perm)
        relabelled = np.array([[perm[t[inv[a], inv[b]]] for b in range(5)] for a in range(5)])
        assert validate_loop(relabelled).identity == 3


class TestMoufangExtension:
    @pytest.mark.parametrize("n", range(3, 8))
    def test_matches_independent_construction(self, n):
        g, _ = dihedral_group(n)
        np.testing.assert_array_equal(moufang_extension(g).table, moufang_table_oracle(n))

    def test_hand_products_n3(self):
        g, _ = dihedral_group(3)
        loop = moufang_extension(g)
        x, x2, y, xy = 1, 2, 3, 4
        m = 6
        assert loop.mul(MoufangElement(x, 0).index(m), MoufangElement(x2, 0).index(m)) == MoufangElement(0, 0).index(m)
        assert loop.mul(MoufangElement(y, 1).index(m), MoufangElement(x, 0).index(m)) == MoufangElement(xy, 1).index(m)

    @pytest.mark.parametrize("n", range(3, 7))
    def test_loop_axioms(self, n):
        g, _ = dihedral_group(n)
        loop = moufang_extension(g)
        assert loop.order == 2 * g.order == 4 * n
        assert _is_latin(loop.table)
        ar = np.arange(loop.order)
        assert (loop.table[loop.identity] == ar).all() and (loop.table[:, loop.identity] == ar).all()
        validate_loop(loop.table, loop.identity)

    @pytest.mark.parametrize("n", range(3, 7))
    def test_moufang_not_associative(self, n):
        g, _ = dihedral_group(n)
        loop = moufang_extension(g)
        assert check_moufang_identities(loop).holds
        assert not is_associative(loop)
        x, y, z = nonassociative_witness(loop)
        assert not associates(loop, x, y, z)

    def test_element_index_roundtrip(self):
        for k in range(12):
            assert MoufangElement.from_index(k, 6).index(6) == k
        with pytest.raises(DomainError):
            MoufangElement.from_index(12, 6)

    def test_provenance(self):
        g, _ = dihedral_group(5)
        assert moufang_extension(g).provenance == "moufang_extension(D_5)"


class TestAssociativity:
    def test_paper_example(self):
        loop = builtin_order5_loop()
        assert associates(loop, 1, 2, 3)
        assert not associates(loop, 1, 3, 2)

    def test_identity_any_slot(self, moufang):
        for loop in (builtin_order5_loop(), moufang(3)[2]):
            e = loop.identity
            for a, b in itertools.product(range(loop.order), repeat=2):
                assert associates(loop, e, a, b)
                assert associates(loop, a, e, b)
                assert associates(loop, a, b, e)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            associates(builtin_order5_loop(), 0, 1, 5)

    def test_order5_not_moufang(self):
        res = check_moufang_identities(builtin_order5_loop())
        assert not res.holds
        ident, x, y, z = res.counterexample
        assert ident in (1, 2, 3)

    def test_order5_witness_is_paper_pair(self):
        assert nonassociative_witness(builtin_order5_loop()) == (1, 3, 2)

    def test_group_is_associative_and_moufang(self):
        g, _ = dihedral_group(3)
        loop = loop_from_group(g)
        assert is_associative(loop)
        assert check_moufang_identities(loop).holds
        assert nonassociative_witness(loop) is None
