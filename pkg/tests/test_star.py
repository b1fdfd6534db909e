"""Star products: vector algebra, code products, the predicted-case table,
and the constructive identities behind it."""

import pytest

from bermanpir.berman import (
    BermanParams,
    CodeKind,
    all_tuples,
    build,
    c_vector,
    d_vector,
    reed_muller_code,
    tuple_to_index,
    tuple_weight,
)
from bermanpir.codes import LinearCode
from bermanpir.gf2 import BitMatrix, BitVector, LengthMismatch
from bermanpir.pir import philox_generator
from bermanpir.star import (
    FULL_SPACE,
    UNDEFINED,
    OverlappingSupport,
    ParamMismatch,
    PreconditionViolated,
    UndefinedCase,
    berman_basis_identity,
    disjoint_support_product,
    predict_star,
    star_case_sweep,
    star_codes,
    star_vectors,
    verify_star_case,
)
from oracles import staged_mixed_products, staged_parity_products


class TestStarVectors:
    def test_ones_is_identity(self):
        a = BitVector.from01("101101000")
        assert star_vectors(a, BitVector.ones(9)) == a

    def test_zero_annihilates(self):
        a = BitVector.from01("101101000")
        assert star_vectors(a, BitVector.zeros(9)) == BitVector.zeros(9)

    def test_worked_example(self):
        a = BitVector.from01("101101000")
        b = BitVector.from01("000111000")
        assert star_vectors(a, b).to01() == "000101000"

    def test_length_check(self):
        with pytest.raises(LengthMismatch):
            star_vectors(BitVector.zeros(3), BitVector.zeros(4))

    def test_distributes_over_addition_exhaustive(self):
        for length in (1, 2, 3, 4):
            top = 1 << length
            for aw in range(top):
                a = BitVector(length, aw)
                for bw in range(top):
                    b = BitVector(length, bw)
                    for cw in range(top):
                        c = BitVector(length, cw)
                        assert star_vectors(a, b ^ c) == star_vectors(a, b) ^ star_vectors(a, c)

    def test_distributes_over_addition_sampled(self):
        rng = philox_generator(5)
        draws = rng.integers(0, 1 << 9, size=(100_000, 3))
        for aw, bw, cw in draws:
            a, b, c = BitVector(9, int(aw)), BitVector(9, int(bw)), BitVector(9, int(cw))
            assert star_vectors(a, b ^ c) == star_vectors(a, b) ^ star_vectors(a, c)


class TestStarCodes:
    def test_repetition_is_identity(self):
        code = build(BermanParams.parse("Ber(3,1,2)"))
        rep = build(BermanParams.parse("DBer(3,0,2)"))
        assert star_codes(code, rep) == code

    def test_zero_annihilates(self):
        code = build(BermanParams.parse("Ber(3,1,2)"))
        assert star_codes(code, LinearCode.zero(9)) == LinearCode.zero(9)

    def test_worked_example(self):
        assert star_codes(
            build(BermanParams.parse("DBer(3,0,2)")), build(BermanParams.parse("DBer(3,1,2)"))
        ) == build(BermanParams.parse("DBer(3,1,2)"))

    def test_commutative_and_associative(self):
        rng = philox_generator(9)
        for _ in range(10):
            codes = [
                LinearCode.from_generator(
                    BitMatrix(3, 8, tuple(int(w) for w in rng.integers(0, 1 << 8, size=3)))
                )
                for _ in range(3)
            ]
            a, b, c = codes
            assert star_codes(a, b) == star_codes(b, a)
            assert star_codes(star_codes(a, b), c) == star_codes(a, star_codes(b, c))


class TestPredictStar:
    def test_worked_examples(self):
        p = BermanParams.parse
        assert predict_star(p("DBer(3,0,2)"), p("DBer(3,1,2)")) == p("DBer(3,1,2)")
        assert predict_star(p("Ber(3,1,2)"), p("DBer(3,1,2)")) == p("Ber(3,0,2)")
        assert predict_star(p("Ber(3,0,2)"), p("Ber(3,0,2)")) is FULL_SPACE

    def test_degenerate_screens(self):
        p = BermanParams.parse
        # A zero-code factor annihilates regardless of the case table.
        assert predict_star(p("Ber(3,2,2)"), p("DBer(3,1,2)")) == p("Ber(3,2,2)")
        assert predict_star(p("Ber(3,2,2)"), p("Ber(3,1,2)")) == p("Ber(3,2,2)")
        # A full-space factor absorbs any nonzero factor.
        assert predict_star(p("DBer(3,2,2)"), p("DBer(3,1,2)")) is FULL_SPACE

    def test_undefined_regime(self):
        p = BermanParams.parse
        assert predict_star(p("DBer(3,2,3)"), p("DBer(3,2,3)")) is UNDEFINED

    def test_n2_reduces_to_rm_arithmetic(self):
        p = BermanParams.parse
        # Ber(2,r,m) = RM(m-r-1,m): degree sum 1+1 <= 3 stays a proper member;
        # degree sum m lands on the member that is the whole space.
        assert predict_star(p("Ber(2,1,3)"), p("Ber(2,1,3)")) == p("DBer(2,2,3)")
        assert predict_star(p("Ber(2,0,3)"), p("Ber(2,1,3)")) == p("DBer(2,3,3)")
        # Degree sum beyond m needs the explicit full-space answer.
        assert predict_star(p("Ber(2,0,4)"), p("Ber(2,0,4)")) is FULL_SPACE

    def test_param_mismatch(self):
        with pytest.raises(ParamMismatch):
            predict_star(BermanParams.parse("Ber(3,1,2)"), BermanParams.parse("Ber(2,1,2)"))


class TestVerifyStarCase:
    def test_rm_remark_case(self):
        res = verify_star_case(BermanParams.parse("Ber(2,1,3)"), BermanParams.parse("DBer(2,2,3)"))
        assert res.predicted is FULL_SPACE and res.verified

    def test_rm_product_case(self):
        p = BermanParams.parse("DBer(2,1,3)")
        res = verify_star_case(p, p)
        assert res.predicted == BermanParams.parse("DBer(2,2,3)")
        assert res.verified
        # Independent check through the monomial-evaluation construction.
        assert star_codes(reed_muller_code(1, 3), reed_muller_code(1, 3)) == reed_muller_code(2, 3)

    def test_undefined_raises(self):
        p = BermanParams.parse("DBer(3,2,3)")
        with pytest.raises(UndefinedCase):
            verify_star_case(p, p)

    def test_dual_dual_regime_sweep(self):
        for n in (2, 3, 4):
            for m in (1, 2, 3):
                for r1 in range(m + 1):
                    for r2 in range(m - r1 + 1):
                        res = verify_star_case(
                            BermanParams(CodeKind.DUAL_BERMAN, n, m, r1),
                            BermanParams(CodeKind.DUAL_BERMAN, n, m, r2),
                        )
                        assert res.verified, res.label()

    def test_full_sweep(self):
        results = list(star_case_sweep(4, 3))
        assert len(results) == 345
        assert all(res.verified for res in results)


class TestConstructiveIdentities:
    def test_disjoint_trivial_factor(self):
        assert disjoint_support_product(3, 2, (1, 0), (0, 0)) == d_vector(3, 2, (1, 0))

    def test_disjoint_worked_example(self):
        got = disjoint_support_product(3, 2, (1, 0), (0, 2))
        assert got == BitVector.unit(9, tuple_to_index(3, (1, 2)))

    def test_disjoint_exhaustive(self):
        for n, m in ((2, 2), (3, 2), (2, 3), (3, 3)):
            for j1 in all_tuples(n, m):
                for j2 in all_tuples(n, m):
                    if any(a and b for a, b in zip(j1, j2)):
                        with pytest.raises(OverlappingSupport):
                            disjoint_support_product(n, m, j1, j2)
                    else:
                        disjoint_support_product(n, m, j1, j2)

    def test_basis_identity_worked_examples(self):
        assert berman_basis_identity(3, 2, (1, 2), (1, 0)) == c_vector(3, 2, (0, 2))
        assert berman_basis_identity(2, 2, (1, 1), (0, 1)) == c_vector(2, 2, (1, 0))

    def test_basis_identity_exhaustive(self):
        for n in (2, 3):
            for m in (1, 2, 3):
                for j in all_tuples(n, m):
                    for k in all_tuples(n, m):
                        if tuple_weight(k) == 1 and all(a == 0 or a == b for a, b in zip(k, j)):
                            berman_basis_identity(n, m, j, k)

    def test_basis_identity_preconditions(self):
        with pytest.raises(PreconditionViolated):
            berman_basis_identity(3, 2, (1, 2), (1, 1))
        with pytest.raises(PreconditionViolated):
            berman_basis_identity(3, 2, (1, 2), (2, 0))


class TestStagedConstructions:
    def test_parity_products_cover_standard_basis(self):
        built = staged_parity_products(3, 2)
        assert len(built) == 9

    def test_mixed_products_cover_standard_basis(self):
        built = staged_mixed_products(3, 2, 1)
        assert len(built) == 9

    def test_staged_constructions_elsewhere(self):
        staged_parity_products(3, 3)
        staged_parity_products(4, 2)
        staged_mixed_products(3, 3, 2)
        staged_mixed_products(2, 3, 2)
