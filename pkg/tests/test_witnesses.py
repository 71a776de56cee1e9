"""Tests for homology tables and lower-bound witnesses."""

import pytest
from sympy import primerange

from exponent_toolkit.bounds import CertificateKind, main_lower, main_upper
from exponent_toolkit.witnesses import (
    AbelianGroup,
    bsigma_homology,
    bsigma_homology_table,
    consistency_sweep,
    lower_bound_witness,
    rp_homology,
    rp_homology_table,
    witness_table,
    yk_cell_window,
    yk_cohomology,
)


class TestHomology:
    """Tests for the homology of the witness spaces."""

    def test_rp_homology(self) -> None:
        """Test that reduced H_*(RP^6) is Z/2 in degrees 1, 3, 5."""
        table = rp_homology_table(3)
        assert table.space == "RP^6"
        assert table.nonzero_degrees() == [1, 3, 5]
        assert all(table.group(i) == AbelianGroup((2,)) for i in (1, 3, 5))
        assert table.group(6).is_zero
        assert table.group(40).is_zero

    def test_rp_bad_parameter(self) -> None:
        """Test that r < 1 raises ValueError."""
        with pytest.raises(ValueError, match="at least 1"):
            rp_homology(0, 1)

    def test_bsigma_homology(self) -> None:
        """Test the p-local homology of B Sigma_3."""
        table = bsigma_homology_table(3, 12)
        assert table.nonzero_degrees() == [0, 3, 7, 11]
        assert table.group(0).rank == 1
        assert table.group(7).torsion_orders == (3,)
        assert str(table.group(11)) == "Z/3"
        assert str(table.group(0)) == "Z_(3)"

    def test_bsigma_period_p5(self) -> None:
        """Test that torsion at p=5 sits in degrees 8k - 1."""
        assert [i for i in range(1, 30) if not bsigma_homology(5, i).is_zero] == [
            7,
            15,
            23,
        ]

    @pytest.mark.parametrize(("p", "i"), [(2, 3), (3, -1), (4, 3)])
    def test_bsigma_bad_input(self, p: int, i: int) -> None:
        """Test that p=2, composite p and negative degrees raise ValueError."""
        with pytest.raises(ValueError):
            bsigma_homology(p, i)

    def test_yk_cohomology(self) -> None:
        """Test that H*(Y_2) at p=3 is Z/3 in degrees 4 and 8."""
        assert [i for i in range(20) if not yk_cohomology(3, 2, i).is_zero] == [4, 8]
        assert yk_cell_window(3, 2) == (3, 8)
        with pytest.raises(ValueError):
            yk_cell_window(3, 0)

    def test_group_display(self) -> None:
        """Test the text form of abelian groups."""
        assert str(AbelianGroup()) == "0"
        assert str(AbelianGroup((0, 4))) == "Z + Z/4"


class TestWitnesses:
    """Tests for witness records and the consistency sweep."""

    def test_rp_witness(self) -> None:
        """Test the RP^{2r} witness for r = 4."""
        record = lower_bound_witness(2, 4)
        assert record.space == "RP^8"
        assert record.n == 7
        assert record.lower == 3
        assert record.k_theory_exponent == 4
        assert record.certificate.kind is CertificateKind.LOWER
        assert record.certificate.subject == "tau[1,7] S^0"
        assert "cited" in record.citation

    def test_yk_witness(self) -> None:
        """Test the Y_k witness at p=3 for k = 3."""
        record = lower_bound_witness(3, 3)
        assert record.space == "Y_3"
        assert record.n == 9
        assert record.lower == 2
        assert record.cell_window == (3, 12)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_witness_matches_floor_formula(self, p: int) -> None:
        """Test that each witness equals the lower bound at its degree."""
        for record in witness_table(p, 200):
            assert record.lower == main_lower(p, record.n)
            assert record.lower <= main_upper(p, record.n)

    def test_witness_table_extent(self) -> None:
        """Test which parameters fit below n_max."""
        assert [r.parameter for r in witness_table(2, 10)] == [1, 2, 3, 4, 5]
        assert [r.n for r in witness_table(3, 20)] == [1, 5, 9, 13, 17]

    def test_bad_parameter(self) -> None:
        """Test that parameter < 1 raises ValueError."""
        with pytest.raises(ValueError, match="at least 1"):
            lower_bound_witness(2, 0)

    @pytest.mark.parametrize(("p", "n_max", "count"), [(2, 100, 50), (3, 20, 5)])
    def test_sweep_consistent(self, p: int, n_max: int, count: int) -> None:
        """Test that the sweep finds no violations."""
        report = consistency_sweep(p, n_max)
        assert report.consistent
        assert report.checked == count

    def test_sweep_bad_range(self) -> None:
        """Test that n_max < 1 raises ValueError."""
        with pytest.raises(ValueError, match="n_max"):
            consistency_sweep(2, 0)

    def test_witnesses_below_upper_for_all_small_primes(self) -> None:
        """Test that no witness with parameter <= 100 exceeds the upper bound."""
        for p in primerange(2, 101):
            for parameter in range(1, 101):
                record = lower_bound_witness(p, parameter)
                assert record.lower <= main_upper(p, record.n)
