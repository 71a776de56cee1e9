"""Tests for the Steenrod algebra."""

import random

import pytest

from exponent_toolkit.algebra import (
    Prime,
    SteenrodElement,
    adem_normalize,
    algebra_dimension,
    basis_in_degree,
    milnor_dimension,
    parse_word,
)
from exponent_toolkit.algebra.steenrod import (
    binomial_mod_p,
    degree,
    format_monomial,
    indecomposables,
    is_admissible,
)


def _random_element(rng: random.Random, p: int, max_degree: int) -> SteenrodElement:
    while True:
        d = rng.randint(0, max_degree)
        basis = basis_in_degree(p, d)
        if basis:
            return SteenrodElement.monomial(p, rng.choice(basis), rng.randint(1, p - 1))


def _random_sum(
    rng: random.Random, p: int, max_degree: int, d: int | None = None
) -> SteenrodElement:
    basis = basis_in_degree(p, d) if d is not None else []
    while not basis:
        d = rng.randint(0, max_degree)
        basis = basis_in_degree(p, d)
    assert d is not None
    total = SteenrodElement(p, d)
    for _ in range(rng.randint(1, 3)):
        total = total + SteenrodElement.monomial(
            p, rng.choice(basis), rng.randint(1, p - 1)
        )
    return total


class TestPrimes:
    """Tests for prime validation and binomials."""

    def test_prime_accepts_primes(self) -> None:
        """Test that primes construct."""
        assert Prime(7) == 7

    @pytest.mark.parametrize("value", [0, 1, 4, 9])
    def test_prime_rejects_composites(self, value: int) -> None:
        """Test that non-primes raise ValueError."""
        with pytest.raises(ValueError, match="not a prime"):
            Prime(value)

    def test_lucas(self) -> None:
        """Test binomials mod p against direct computation."""
        assert binomial_mod_p(4, 2, 2) == 0
        assert binomial_mod_p(5, 2, 3) == 1
        assert binomial_mod_p(3, 5, 2) == 0
        assert binomial_mod_p(-1, 0, 2) == 0


class TestAdemRelations:
    """Tests for rewriting words into the admissible basis."""

    def test_sq1_squared_is_zero(self) -> None:
        """Test Sq1 Sq1 = 0."""
        assert adem_normalize(2, (1, 1)).is_zero()

    def test_sq1_sq2(self) -> None:
        """Test Sq1 Sq2 = Sq3."""
        assert adem_normalize(2, (1, 2)).as_dict() == {(3,): 1}

    def test_sq2_sq2(self) -> None:
        """Test Sq2 Sq2 = Sq3 Sq1."""
        assert adem_normalize(2, parse_word(2, "Sq2 Sq2")).as_dict() == {(3, 1): 1}

    def test_sq2_sq3(self) -> None:
        """Test Sq2 Sq3 = Sq5 + Sq4 Sq1."""
        assert adem_normalize(2, (2, 3)).as_dict() == {(5,): 1, (4, 1): 1}

    def test_sq3_sq2_is_zero(self) -> None:
        """Test Sq3 Sq2 = 0."""
        assert adem_normalize(2, (3, 2)).is_zero()

    def test_bockstein_squared_is_zero(self) -> None:
        """Test b b = 0 at p = 3."""
        assert adem_normalize(3, parse_word(3, "b b")).is_zero()

    def test_p1_p1_at_three(self) -> None:
        """Test P1 P1 = 2 P2 at p = 3."""
        assert adem_normalize(3, parse_word(3, "P1 P1")).as_dict() == {(0, 2, 0): 2}

    def test_admissible_words_are_fixed(self) -> None:
        """Test that admissible monomials normalize to themselves."""
        for p, top in ((2, 20), (3, 40)):
            for d in range(top + 1):
                for mono in basis_in_degree(p, d):
                    assert is_admissible(p, mono)
                    assert adem_normalize(p, mono).as_dict() == {mono: 1}

    @pytest.mark.parametrize("seed", range(5))
    def test_normalization_is_idempotent(self, seed: int) -> None:
        """Test that normalizing a random word twice changes nothing."""
        rng = random.Random(seed)
        generator_sets = {
            2: [(i,) for i in range(1, 9)],
            3: [(1,), (0, 1, 0), (0, 2, 0), (0, 3, 0)],
        }
        for p, generators in generator_sets.items():
            word: tuple[int, ...] = () if p == 2 else (0,)
            for _ in range(rng.randint(1, 5)):
                g = rng.choice(generators)
                word = word + g if p == 2 else word[:-1] + (word[-1] + g[0],) + g[1:]
            once = adem_normalize(p, word)
            again = SteenrodElement(p, once.degree)
            for mono, c in once.terms:
                again = again + adem_normalize(p, mono).scaled(c)
            assert again == once
            assert once.degree == degree(p, word)

    @pytest.mark.parametrize("seed", range(8))
    def test_multiplication_is_associative(self, seed: int) -> None:
        """Test (ab)c = a(bc) up to degree 50 at p=2 and 60 at p=3."""
        rng = random.Random(seed)
        for p, top in ((2, 50), (3, 60)):
            a = _random_element(rng, p, top // 2)
            b = _random_element(rng, p, (top - a.degree) // 2)
            c = _random_element(rng, p, top - a.degree - b.degree)
            assert (a * b) * c == a * (b * c)

    @pytest.mark.parametrize("seed", range(8))
    def test_multiplication_is_bilinear(self, seed: int) -> None:
        """Test a(x + y) = ax + ay and (x + y)a = xa + ya on random sums."""
        rng = random.Random(seed)
        for p, top in ((2, 24), (3, 30)):
            a = _random_sum(rng, p, top)
            x = _random_sum(rng, p, top)
            y = _random_sum(rng, p, top, x.degree)
            assert a * (x + y) == a * x + a * y
            assert (x + y) * a == x * a + y * a


class TestBasis:
    """Tests for the admissible basis."""

    def test_low_dimensions(self) -> None:
        """Test the dimensions of A_2 in degrees 0 to 7."""
        assert [algebra_dimension(2, d) for d in range(8)] == [1, 1, 1, 2, 2, 2, 3, 4]

    @pytest.mark.parametrize("p,top", [(2, 50), (3, 60), (5, 80)])
    def test_matches_milnor_count(self, p: int, top: int) -> None:
        """Test that the admissible basis has the Milnor basis dimension."""
        for d in range(top + 1):
            assert algebra_dimension(p, d) == milnor_dimension(p, d)

    def test_indecomposables(self) -> None:
        """Test the algebra generators in low degrees."""
        assert indecomposables(2, 8) == [(1,), (2,), (4,), (8,)]
        assert indecomposables(3, 12) == [(1,), (0, 1, 0), (0, 3, 0)]


class TestParsing:
    """Tests for word parsing and formatting."""

    def test_parse_even(self) -> None:
        """Test parsing a word at p = 2."""
        assert parse_word(2, "Sq4 Sq2 Sq1") == (4, 2, 1)

    def test_parse_odd(self) -> None:
        """Test parsing Bocksteins and reduced powers."""
        assert parse_word(3, "b P1 b") == (1, 1, 1)
        assert parse_word(3, "β P3 P1") == (1, 3, 0, 1, 0)

    def test_parse_rejects_wrong_generator(self) -> None:
        """Test that P tokens are rejected at p = 2."""
        with pytest.raises(ValueError, match="not a generator"):
            parse_word(2, "P1")

    def test_format(self) -> None:
        """Test rendering monomials."""
        assert format_monomial(2, (4, 2)) == "Sq4 Sq2"
        assert format_monomial(3, (1, 3, 0, 1, 0)) == "b P3 P1"
        assert format_monomial(2, ()) == "1"
        assert str(adem_normalize(2, (2, 3))) == "Sq4 Sq1 + Sq5"
