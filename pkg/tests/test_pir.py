"""Protocol machinery: scheme derivation, scheduling, encoding, queries,
responses, decoding, reconstruction, privacy checks, end-to-end runs."""

from fractions import Fraction

import pytest

from bermanpir.berman import BermanParams, build
from bermanpir.codes import TooLarge
from bermanpir.gf2 import BitMatrix, BitVector, LengthMismatch, invert_columns
from bermanpir.pir import (
    Incomplete,
    ScheduleNotFound,
    SchemeConfig,
    ShapeMismatch,
    UnsupportedPair,
    ZeroRate,
    build_schedule,
    closed_form_triple,
    decode_iteration,
    derive_scheme,
    encode_storage,
    gen_queries,
    philox_generator,
    reconstruct_file,
    respond_all,
    run_retrieval,
    scheme_row,
    server_respond,
    verify_privacy_empirical,
    verify_privacy_rank,
)


P = BermanParams.parse

ACCEPTANCE_PAIRS = (
    ("DBer(3,0,2)", "DBer(3,1,2)"),
    ("DBer(2,1,3)", "DBer(2,1,3)"),
    ("Ber(3,1,2)", "DBer(3,0,2)"),
    ("DBer(3,0,3)", "Ber(3,1,3)"),
)


def cfg(storage, retrieval, files=1, seed=0):
    return SchemeConfig(P(storage), P(retrieval), files=files, seed=seed)


class TestClosedForms:
    def test_published_triples(self):
        t, r_st, r_pir = closed_form_triple(P("DBer(3,0,3)"), P("DBer(3,1,3)"))
        assert (t, r_st, r_pir) == (3, Fraction(1, 27), Fraction(20, 27))
        t, r_st, r_pir = closed_form_triple(P("Ber(3,1,3)"), P("DBer(3,0,3)"))
        assert (t, r_st, r_pir) == (1, Fraction(20, 27), Fraction(7, 27))
        t, r_st, r_pir = closed_form_triple(P("DBer(3,0,3)"), P("Ber(3,1,3)"))
        assert (t, r_st, r_pir) == (8, Fraction(1, 27), Fraction(7, 27))

    def test_row_classification(self):
        assert scheme_row(P("DBer(3,0,2)"), P("DBer(3,1,2)")) == "dber-dber"
        assert scheme_row(P("DBer(3,0,2)"), P("Ber(3,1,2)")) == "dber-ber"
        assert scheme_row(P("Ber(3,1,2)"), P("DBer(3,0,2)")) == "ber-dber"

    def test_unsupported_pairs(self):
        with pytest.raises(UnsupportedPair):
            scheme_row(P("Ber(3,0,2)"), P("Ber(3,0,2)"))
        with pytest.raises(UnsupportedPair):
            scheme_row(P("DBer(3,1,2)"), P("Ber(3,0,2)"))  # needs r_D >= r_C
        with pytest.raises(UnsupportedPair):
            scheme_row(P("Ber(3,0,2)"), P("DBer(3,1,2)"))  # needs r_C >= r_D
        with pytest.raises(UnsupportedPair):
            scheme_row(P("DBer(3,2,2)"), P("DBer(3,1,2)"))  # full-space storage
        with pytest.raises(UnsupportedPair):
            scheme_row(P("DBer(3,0,2)"), P("Ber(3,2,2)"))  # zero retrieval
        with pytest.raises(UnsupportedPair):
            scheme_row(P("DBer(3,0,2)"), P("DBer(2,0,2)"))  # mismatched (n, m)

    def test_zero_rate(self):
        with pytest.raises(ZeroRate):
            closed_form_triple(P("DBer(3,1,2)"), P("DBer(3,1,2)"))


class TestDeriveScheme:
    def test_worked_example(self):
        d = derive_scheme(cfg("DBer(3,0,3)", "DBer(3,1,3)"))
        assert (d.t, d.r_st, d.r_pir) == (3, Fraction(1, 27), Fraction(20, 27))

    def test_counts_are_consistent(self):
        for storage, retrieval in ACCEPTANCE_PAIRS:
            d = derive_scheme(cfg(storage, retrieval))
            assert d.b * d.k_c == d.s_iterations * d.d_perp
            assert d.r_pir == Fraction(d.d_perp, d.n_s)
            assert d.r_st == Fraction(d.k_c, d.n_s)
            # Parity annihilates the product code.
            product = d.parity @ d.product_code.generator.transpose()
            assert all(w == 0 for w in product.row_words)

    def test_zero_rate_propagates(self):
        with pytest.raises(ZeroRate):
            derive_scheme(cfg("DBer(3,1,2)", "DBer(3,1,2)"))


class TestSchedule:
    def test_single_iteration_example(self):
        d = derive_scheme(cfg("DBer(3,0,2)", "DBer(3,1,2)"))
        assert (d.k_c, d.d_perp, d.b, d.s_iterations) == (1, 4, 4, 1)
        (plan,) = d.schedule.iterations
        assert len(plan.coords) == 4
        assert sorted(plan.stripes) == [0, 1, 2, 3]
        invert_columns(d.parity, plan.coords)  # invertible by construction

    def test_invariants_all_pairs(self):
        for storage, retrieval in ACCEPTANCE_PAIRS:
            d = derive_scheme(cfg(storage, retrieval))
            assert len(d.schedule.iterations) == d.s_iterations
            for plan in d.schedule.iterations:
                assert len(set(plan.coords)) == len(plan.coords) == d.d_perp
                assert plan.coords == tuple(sorted(plan.coords))
                invert_columns(d.parity, plan.coords)
            for stripe in range(d.b):
                coords = d.schedule.stripe_coords(stripe)
                assert len(coords) == d.k_c
                invert_columns(d.storage_code.generator, coords)

    def test_deterministic_rebuild(self):
        d = derive_scheme(cfg("Ber(3,1,2)", "DBer(3,0,2)"))
        assert build_schedule(d) == d.schedule

    def test_slack_iterations(self):
        d = derive_scheme(cfg("DBer(2,1,3)", "DBer(2,1,3)"))
        slack = build_schedule(d, d.s_iterations + 1)
        assert len(slack.iterations) == d.s_iterations + 1
        total = sum(len(p.coords) for p in slack.iterations)
        assert total == d.b * d.k_c
        with pytest.raises(ValueError):
            build_schedule(d, d.s_iterations - 1)

    def test_infeasible_search_is_reported(self):
        from bermanpir.pir import _solve_schedule

        d = derive_scheme(cfg("DBer(3,0,2)", "DBer(3,1,2)"))
        # Too few slots for the stripe demand: reported, never silently dropped.
        with pytest.raises(ScheduleNotFound):
            _solve_schedule(d.storage_code.generator, d.parity, d.b, d.k_c, d.d_perp, 0)
        # Enough slots but impossible independence: a one-row parity map can
        # never supply two independent columns in one iteration.
        from bermanpir.gf2 import BitMatrix

        flat_parity = BitMatrix(1, d.n_s, (d.parity.row_words[0],))
        with pytest.raises(ScheduleNotFound):
            _solve_schedule(d.storage_code.generator, flat_parity, 2, 1, 2, 1)


class TestEncodeStorage:
    def test_zero_files(self):
        d = derive_scheme(cfg("DBer(3,0,2)", "DBer(3,1,2)", files=2))
        files = [BitMatrix.zeros(d.b, d.k_c) for _ in range(2)]
        for col in encode_storage(d, files):
            assert col.is_zero()

    def test_repetition_broadcast(self):
        d = derive_scheme(cfg("DBer(2,1,3)", "DBer(2,1,3)"))
        # k_C = 4, b = 1: a single stripe; every server stores one codeword bit.
        file0 = BitMatrix.from_bits([[1, 0, 1, 1]])
        cols = encode_storage(d, [file0])
        codeword = d.storage_code.generator.left_mul(BitVector.from_bits([1, 0, 1, 1]))
        assert [c.word for c in cols] == list(codeword.bits())

    def test_rows_are_codewords(self):
        d = derive_scheme(cfg("Ber(3,1,2)", "DBer(3,0,2)", files=2))
        rng = philox_generator(3)
        files = [
            BitMatrix(d.b, d.k_c, tuple(int(w) for w in rng.integers(0, 1 << d.k_c, size=d.b)))
            for _ in range(2)
        ]
        cols = encode_storage(d, files)
        rows = BitMatrix.from_rows([BitVector.from_bits(c.bit(i) for c in cols) for i in range(2 * d.b)])
        for i in range(rows.rows):
            assert d.storage_code.contains(rows.row(i))

    def test_shape_check(self):
        d = derive_scheme(cfg("DBer(3,0,2)", "DBer(3,1,2)"))
        with pytest.raises(ShapeMismatch):
            encode_storage(d, [BitMatrix.zeros(1, 1)])


class TestQueries:
    def test_deterministic(self):
        d = derive_scheme(cfg("DBer(3,0,2)", "DBer(3,1,2)", files=2))
        q1 = gen_queries(d, 1, 0, philox_generator(42))
        q2 = gen_queries(d, 1, 0, philox_generator(42))
        assert q1.q == q2.q

    def test_embedding_structure(self):
        d = derive_scheme(cfg("DBer(3,0,2)", "DBer(3,1,2)", files=2))
        demand = 1
        q = gen_queries(d, demand, 0, philox_generator(7))
        # At most one planted bit per coordinate, all on the demanded rows.
        for j in range(d.n_s):
            assert q.embed_part.column(j).weight() <= 1
        for row in range(q.embed_part.rows):
            stripe_rows = range(demand * d.b, (demand + 1) * d.b)
            if row not in stripe_rows:
                assert q.embed_part.row(row).is_zero()
        planted = sum(q.embed_part.row(i).weight() for i in range(q.embed_part.rows))
        assert planted == d.d_perp

    def test_random_rows_are_retrieval_codewords(self):
        d = derive_scheme(cfg("Ber(3,1,2)", "DBer(3,0,2)", files=2))
        q = gen_queries(d, 0, 0, philox_generator(13))
        for i in range(q.random_part.rows):
            assert d.retrieval_code.contains(q.random_part.row(i))


class TestRespond:
    def test_zero_query(self):
        assert server_respond(BitVector.from01("1011"), BitVector.zeros(4)) == 0

    def test_unit_query_reads_a_bit(self):
        stored = BitVector.from01("1011")
        for i in range(4):
            assert server_respond(stored, BitVector.unit(4, i)) == stored.bit(i)

    def test_length_check(self):
        with pytest.raises(LengthMismatch):
            server_respond(BitVector.zeros(3), BitVector.zeros(4))


class TestDecode:
    def test_zero_storage_recovers_zeros(self):
        d = derive_scheme(cfg("DBer(3,0,2)", "DBer(3,1,2)", files=2))
        files = [BitMatrix.zeros(d.b, d.k_c) for _ in range(2)]
        cols = encode_storage(d, files)
        q = gen_queries(d, 0, 0, philox_generator(3))
        r = respond_all(cols, q)
        for _, _, bit in decode_iteration(d, 0, r):
            assert bit == 0

    def test_recovers_ground_truth(self):
        d = derive_scheme(cfg("DBer(3,0,2)", "DBer(3,1,2)", files=2, seed=5))
        rng = philox_generator(5)
        files = [
            BitMatrix(d.b, d.k_c, tuple(int(w) for w in rng.integers(0, 1 << d.k_c, size=d.b)))
            for _ in range(2)
        ]
        cols = encode_storage(d, files)
        encoded = BitMatrix.stack(files) @ d.storage_code.generator
        demand = 1
        q = gen_queries(d, demand, 0, rng)
        r = respond_all(cols, q)
        for stripe, coord, bit in decode_iteration(d, 0, r):
            assert bit == encoded.entry(d.file_row(demand, stripe), coord)

    def test_invariant_under_rerandomization(self):
        d = derive_scheme(cfg("Ber(3,1,2)", "DBer(3,0,2)", files=2))
        rng = philox_generator(6)
        files = [
            BitMatrix(d.b, d.k_c, tuple(int(w) for w in rng.integers(0, 1 << d.k_c, size=d.b)))
            for _ in range(2)
        ]
        cols = encode_storage(d, files)
        recovered = []
        for seed in (100, 200):
            got = []
            for it in range(d.s_iterations):
                q = gen_queries(d, 0, it, philox_generator(seed + it))
                got.extend(decode_iteration(d, it, respond_all(cols, q)))
            recovered.append(sorted(got))
        assert recovered[0] == recovered[1]


class TestReconstruct:
    def test_zero_bits_zero_file(self):
        d = derive_scheme(cfg("DBer(3,0,2)", "DBer(3,1,2)"))
        triples = tuple(
            (stripe, coord, 0)
            for stripe in range(d.b)
            for coord in d.schedule.stripe_coords(stripe)
        )
        assert reconstruct_file(d, triples) == BitMatrix.zeros(d.b, d.k_c)

    def test_pivot_coordinates_copy_through(self):
        d = derive_scheme(cfg("DBer(2,1,3)", "DBer(2,1,3)"))
        rng = philox_generator(8)
        file0 = BitMatrix(d.b, d.k_c, tuple(int(w) for w in rng.integers(0, 1 << d.k_c, size=d.b)))
        encoded = file0 @ d.storage_code.generator
        pivots = d.storage_code.information_set()
        triples = tuple(
            (stripe, coord, encoded.entry(stripe, coord))
            for stripe in range(d.b)
            for coord in pivots
        )
        assert reconstruct_file(d, triples) == file0

    def test_incomplete(self):
        d = derive_scheme(cfg("DBer(3,0,2)", "DBer(3,1,2)"))
        with pytest.raises(Incomplete):
            reconstruct_file(d, ((0, 0, 0),))


class TestPrivacyRank:
    def test_repetition_t1(self):
        rep = build(P("DBer(3,0,2)"))
        assert verify_privacy_rank(rep, 1)

    def test_worked_examples(self):
        code = build(P("DBer(3,1,2)"))
        assert verify_privacy_rank(code, 3)
        assert not verify_privacy_rank(code, 4)
        assert verify_privacy_rank(build(P("DBer(2,1,2)")), 3)

    def test_sampled_mode(self):
        code = build(P("Ber(3,1,3)"))
        assert verify_privacy_rank(code, 8, sample=2_000, seed=17)

    def test_every_supported_pair_up_to_36_servers(self):
        from math import comb

        from bermanpir.berman import CodeKind

        checked = 0
        for n, m in ((2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2), (3, 3),
                     (4, 1), (4, 2), (5, 1), (5, 2), (6, 1), (6, 2)):
            members = [
                BermanParams(kind, n, m, r)
                for kind in (CodeKind.BERMAN, CodeKind.DUAL_BERMAN)
                for r in range(m + 1)
            ]
            for storage in members:
                for retrieval in members:
                    try:
                        t, _, _ = closed_form_triple(storage, retrieval)
                    except (UnsupportedPair, ZeroRate):
                        continue
                    code = build(retrieval)
                    sample = None if comb(n**m, t) <= 100_000 else 1_000
                    assert verify_privacy_rank(code, t, sample=sample, seed=23), (
                        storage.name,
                        retrieval.name,
                        t,
                    )
                    checked += 1
        assert checked > 100


class TestPrivacyEmpirical:
    def test_exhaustive_single_demand(self):
        assert verify_privacy_empirical(cfg("DBer(3,0,2)", "DBer(3,1,2)", files=1, seed=3), 3) == 0.0

    def test_exhaustive_two_demands(self):
        assert verify_privacy_empirical(cfg("DBer(3,0,2)", "DBer(3,1,2)", files=2, seed=3), 3) == 0.0

    def test_weak_retrieval_code_leaks(self):
        distance = verify_privacy_empirical(cfg("DBer(3,0,2)", "DBer(3,1,2)", files=2, seed=3), 4)
        assert distance > 0.1

    def test_sampled_mode_close_to_zero(self):
        distance = verify_privacy_empirical(
            cfg("DBer(3,0,2)", "DBer(3,1,2)", files=2, seed=3), 3, trials=100_000
        )
        assert distance < 0.02

    def test_guard(self):
        with pytest.raises(TooLarge):
            verify_privacy_empirical(cfg("DBer(3,0,2)", "DBer(3,1,2)", files=5), 3)


class TestRunRetrieval:
    def test_worked_example(self):
        transcript = run_retrieval(cfg("DBer(3,0,2)", "DBer(3,1,2)", files=2, seed=1), 0)
        assert transcript.reconstructed_ok
        assert transcript.achieved_rate == Fraction(4, 9)
        assert transcript.downloaded_bits == 9

    def test_single_file_is_legal(self):
        transcript = run_retrieval(cfg("DBer(3,0,2)", "DBer(3,1,2)", files=1, seed=2), 0)
        assert transcript.reconstructed_ok
        retrieval = build(P("DBer(3,1,2)"))
        for rec in transcript.iterations:
            # Queries still carry the random retrieval-code part.
            assert rec.queries.q.row_words == tuple(
                r ^ e
                for r, e in zip(rec.queries.random_part.row_words, rec.queries.embed_part.row_words)
            )
            for i in range(rec.queries.random_part.rows):
                assert retrieval.contains(rec.queries.random_part.row(i))

    def test_parity_storage_scheme(self):
        transcript = run_retrieval(cfg("Ber(3,0,3)", "DBer(3,0,3)", files=1, seed=4), 0)
        assert transcript.reconstructed_ok
        assert transcript.t == 1
        assert transcript.achieved_rate == Fraction(1, 27)
        assert transcript.s_iterations == 26

    def test_transcript_determinism(self):
        a = run_retrieval(cfg("DBer(2,1,3)", "DBer(2,1,3)", files=2, seed=9), 1)
        b = run_retrieval(cfg("DBer(2,1,3)", "DBer(2,1,3)", files=2, seed=9), 1)
        assert a.to_json() == b.to_json()

    def test_response_residue_checked(self):
        # debug_checks exercises the in-simulator response-algebra assertion.
        run_retrieval(cfg("DBer(3,0,3)", "Ber(3,1,3)", files=2, seed=11), 1, debug_checks=True)

    def test_zero_rate_propagates(self):
        with pytest.raises(ZeroRate):
            run_retrieval(cfg("DBer(3,1,2)", "DBer(3,1,2)"), 0)

    def test_demand_range(self):
        with pytest.raises(ValueError):
            run_retrieval(cfg("DBer(3,0,2)", "DBer(3,1,2)", files=2), 2)
