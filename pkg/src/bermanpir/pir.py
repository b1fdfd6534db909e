"""Star-product private information retrieval with Berman-family code pairs.

A scheme stores M files of b x k_C bits across ``n_s = n^m`` servers by
encoding each stripe with the storage code C (one codeword coordinate per
server).  Retrieval runs S iterations; in each, the client sends every
server one column of a query matrix ``Q = D_rand + E`` whose random part has
rows drawn uniformly from the retrieval code D and whose deliberate part
plants single bits of the demanded file's stripes.  Responses are
dot-products; multiplying the response vector by a parity-check matrix H of
``C * D`` annihilates the random part and exposes the planted codeword bits,
which an invertible column selection of H then recovers.  After all
iterations each stripe holds an information set of C and the file follows
by inverting the corresponding generator columns.

Collusion resistance: any t servers see t columns of Q, and those are
exactly uniform as long as every t-column projection of D is the full
space, which holds up to ``t = d_min(D^perp) - 1``.

All randomness flows from a single 64-bit seed through NumPy's Philox
counter-based generator (Philox 4x64 with 10 rounds); draw order is
documented in :func:`run_retrieval`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd

import numpy as np

from .berman import BermanParams, CodeKind, build, min_distance_formula
from .codes import LinearCode, TooLarge
from .gf2 import BitMatrix, BitVector, LengthMismatch, invert_columns, solve
from .star import star_codes


class UnsupportedPair(ValueError):
    """The storage/retrieval pair matches no supported scheme row."""


class ZeroRate(ValueError):
    """The product code fills the whole space, leaving nothing to retrieve."""


class ScheduleNotFound(RuntimeError):
    """The assignment search exhausted its options."""


class Incomplete(ValueError):
    """A stripe is missing recovered coordinates."""


class ShapeMismatch(ValueError):
    """File matrices do not have the scheme's b x k_C shape."""


def philox_generator(seed: int) -> np.random.Generator:
    """The project PRNG: Philox 4x64-10, keyed by one 64-bit seed."""
    return np.random.Generator(np.random.Philox(key=seed))


def _random_bits(rng: np.random.Generator, rows: int, cols: int) -> list[int]:
    """Row-major draw of ``rows`` words of ``cols`` fresh bits each."""
    flat = rng.integers(0, 2, size=(rows, cols), dtype=np.uint8) if cols else None
    out = []
    for i in range(rows):
        w = 0
        if cols:
            for j in range(cols):
                if flat[i, j]:
                    w |= 1 << j
        out.append(w)
    return out


# ---------------------------------------------------------------------------
# Scheme configuration and derivation.


@dataclass(frozen=True)
class SchemeConfig:
    """Storage/retrieval pair, library size, and the master RNG seed."""

    storage: BermanParams
    retrieval: BermanParams
    files: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.files < 1:
            raise ValueError("need at least one file")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


def scheme_row(storage: BermanParams, retrieval: BermanParams) -> str:
    """Classify the pair into one of the three supported scheme rows.

    Rows: dual/dual storage-retrieval; dual storage with Berman retrieval
    (needs r_D >= r_C); Berman storage with dual retrieval (needs
    r_C >= r_D).  Degenerate codes (zero-dimensional storage or retrieval,
    full-space storage) are rejected outright.
    """
    if (storage.n, storage.m) != (retrieval.n, retrieval.m):
        raise UnsupportedPair("storage and retrieval codes must share (n, m)")
    if storage.is_zero_code or storage.is_full_space:
        raise UnsupportedPair("storage code must be a nonzero proper subspace")
    if retrieval.is_zero_code:
        raise UnsupportedPair("retrieval code must be nonzero")
    sk, rk = storage.kind, retrieval.kind
    if sk is CodeKind.DUAL_BERMAN and rk is CodeKind.DUAL_BERMAN:
        return "dber-dber"
    if sk is CodeKind.DUAL_BERMAN and rk is CodeKind.BERMAN:
        if retrieval.r < storage.r:
            raise UnsupportedPair("dual-storage/Berman-retrieval row requires r_D >= r_C")
        return "dber-ber"
    if sk is CodeKind.BERMAN and rk is CodeKind.DUAL_BERMAN:
        if storage.r < retrieval.r:
            raise UnsupportedPair("Berman-storage/dual-retrieval row requires r_C >= r_D")
        return "ber-dber"
    raise UnsupportedPair("no scheme row pairs a Berman storage code with a Berman retrieval code")


def closed_form_triple(storage: BermanParams, retrieval: BermanParams) -> tuple[int, Fraction, Fraction]:
    """(t, R_st, R_pir) for a supported pair, from the closed forms alone."""
    row = scheme_row(storage, retrieval)
    n, m = storage.n, storage.m
    n_s = n**m
    rc, rd = storage.r, retrieval.r

    def dim_sum(lo: int, hi: int) -> int:
        return sum(comb(m, i) * (n - 1) ** i for i in range(lo, hi + 1))

    r_st = Fraction(dim_sum(0, rc) if storage.kind is CodeKind.DUAL_BERMAN else dim_sum(rc + 1, m), n_s)
    if row == "dber-dber":
        r_pir = Fraction(dim_sum(rc + rd + 1, m), n_s)
        t = 2 ** (rd + 1) - 1
    elif row == "dber-ber":
        r_pir = Fraction(dim_sum(0, rd - rc), n_s)
        t = n ** (m - rd) - 1
    else:
        r_pir = Fraction(dim_sum(0, rc - rd), n_s)
        t = 2 ** (rd + 1) - 1
    if r_pir == 0:
        raise ZeroRate(f"{storage.name} * {retrieval.name} fills the whole space")
    return t, r_st, r_pir


@dataclass(frozen=True)
class IterationPlan:
    """One iteration's recovered coordinates (ascending) and their stripes."""

    coords: tuple[int, ...]
    stripes: tuple[int, ...]

    def assignments(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.stripes, self.coords))


@dataclass(frozen=True)
class Schedule:
    iterations: tuple[IterationPlan, ...]

    def stripe_coords(self, stripe: int) -> tuple[int, ...]:
        coords = [
            c
            for plan in self.iterations
            for s, c in zip(plan.stripes, plan.coords)
            if s == stripe
        ]
        return tuple(sorted(coords))


@dataclass(frozen=True)
class SchemeDerived:
    """Everything the protocol needs, fixed once per configuration."""

    config: SchemeConfig
    n_s: int
    storage_code: LinearCode
    retrieval_code: LinearCode
    product_code: LinearCode
    parity: BitMatrix  # generator of (C*D)^perp, the syndrome map H
    k_c: int
    d_perp: int
    t: int
    r_st: Fraction
    r_pir: Fraction
    b: int
    s_iterations: int
    schedule: Schedule

    def file_row(self, demand: int, stripe: int) -> int:
        return demand * self.b + stripe


def derive_scheme(config: SchemeConfig) -> SchemeDerived:
    """Derive codes, rates, the syndrome map, and a feasible schedule.

    The product code is constructed outright (not assumed from the case
    table) and its dual dimension is required to match the closed-form
    rate; stripes and iterations are the smallest integers making
    ``b * k_C = S * d_perp`` exact.
    """
    t, r_st, r_pir = closed_form_triple(config.storage, config.retrieval)
    c = build(config.storage)
    d = build(config.retrieval)
    n_s = c.length
    e = star_codes(c, d)
    e_dual = e.dual()
    d_perp = e_dual.dimension
    if d_perp == 0:
        raise ZeroRate("the product code fills the whole space")
    if Fraction(d_perp, n_s) != r_pir:
        raise AssertionError("constructed product dimension disagrees with the closed form")
    if Fraction(c.dimension, n_s) != r_st:
        raise AssertionError("constructed storage dimension disagrees with the closed form")
    assert t == min_distance_formula(config.retrieval.dual) - 1
    k_c = c.dimension
    g = gcd(d_perp, k_c)
    b = d_perp // g
    s_iterations = b * k_c // d_perp
    schedule = _solve_schedule(c.generator, e_dual.generator, b, k_c, d_perp, s_iterations)
    return SchemeDerived(
        config=config,
        n_s=n_s,
        storage_code=c,
        retrieval_code=d,
        product_code=e,
        parity=e_dual.generator,
        k_c=k_c,
        d_perp=d_perp,
        t=t,
        r_st=r_st,
        r_pir=r_pir,
        b=b,
        s_iterations=s_iterations,
        schedule=schedule,
    )


def build_schedule(derived: SchemeDerived, s_iterations: int | None = None) -> Schedule:
    """Recompute the deterministic schedule (optionally with extra iterations).

    Passing ``s_iterations`` above the minimum trades rate for slack; the
    achieved rate then falls below the derived one and callers must treat
    that as a logged deviation.
    """
    s = derived.s_iterations if s_iterations is None else s_iterations
    if s < derived.s_iterations:
        raise ValueError("cannot schedule with fewer than the minimal iterations")
    return _solve_schedule(
        derived.storage_code.generator, derived.parity, derived.b, derived.k_c, derived.d_perp, s
    )


def _reduce_word(word: int, basis: list[int]) -> int:
    for v in basis:
        if word & (v & -v):
            word ^= v
    return word


def _solve_schedule(
    g_c: BitMatrix, h: BitMatrix, b: int, k_c: int, d_perp: int, s_iterations: int
) -> Schedule:
    """Greedy slot assignment with backtracking.

    Stripes are served round-robin.  A coordinate may be assigned to a slot
    only if it keeps the iteration's columns independent in H and the
    stripe's accumulated columns independent in the storage generator; both
    column sets therefore finish as invertible selections.  Candidates are
    scanned from a rotating start so assignments spread over the servers.
    """
    n_s = g_c.cols
    g_cols = [g_c.column_word(j) for j in range(n_s)]
    h_cols = [h.column_word(j) for j in range(n_s)]

    # Which stripe fills each slot, iteration by iteration.
    need = [k_c] * b
    plan: list[list[int]] = []
    cursor = 0
    for _ in range(s_iterations):
        slots = []
        for _ in range(d_perp):
            probe = next(
                (
                    (cursor + off) % b
                    for off in range(b)
                    if need[(cursor + off) % b] > 0
                ),
                None,
            )
            if probe is None:
                break
            slots.append(probe)
            need[probe] -= 1
            cursor = (probe + 1) % b
        plan.append(slots)
    if any(need):
        raise ScheduleNotFound(
            f"{sum(need)} stripe coordinates cannot fit into {s_iterations} iterations"
        )

    flat = [(it, stripe) for it, slots in enumerate(plan) for stripe in slots]
    chosen: list[int] = []
    it_used: list[set[int]] = [set() for _ in plan]
    it_basis: list[list[int]] = [[] for _ in plan]
    st_used: list[set[int]] = [set() for _ in range(b)]
    st_basis: list[list[int]] = [[] for _ in range(b)]

    def dfs(pos: int) -> bool:
        if pos == len(flat):
            return True
        it, stripe = flat[pos]
        start = pos % n_s
        for off in range(n_s):
            j = (start + off) % n_s
            if j in it_used[it] or j in st_used[stripe]:
                continue
            h_red = _reduce_word(h_cols[j], it_basis[it])
            if h_red == 0:
                continue
            g_red = _reduce_word(g_cols[j], st_basis[stripe])
            if g_red == 0:
                continue
            chosen.append(j)
            it_used[it].add(j)
            it_basis[it].append(h_red)
            st_used[stripe].add(j)
            st_basis[stripe].append(g_red)
            if dfs(pos + 1):
                return True
            chosen.pop()
            it_used[it].remove(j)
            it_basis[it].pop()
            st_used[stripe].remove(j)
            st_basis[stripe].pop()
        return False

    if not dfs(0):
        raise ScheduleNotFound(
            f"no assignment of {len(flat)} slots over {n_s} servers satisfies both "
            "independence constraints"
        )

    iterations = []
    pos = 0
    for slots in plan:
        pairs = sorted(zip(chosen[pos : pos + len(slots)], slots))
        pos += len(slots)
        iterations.append(
            IterationPlan(tuple(c for c, _ in pairs), tuple(s for _, s in pairs))
        )
    return Schedule(tuple(iterations))


# ---------------------------------------------------------------------------
# Protocol steps.


def encode_storage(derived: SchemeDerived, files: list[BitMatrix]) -> tuple[BitVector, ...]:
    """Stack the files, multiply by the storage generator, and split into
    the per-server columns."""
    if len(files) != derived.config.files:
        raise ShapeMismatch(f"expected {derived.config.files} files")
    for f in files:
        if (f.rows, f.cols) != (derived.b, derived.k_c):
            raise ShapeMismatch(f"files must be {derived.b} x {derived.k_c} bit matrices")
    stacked = BitMatrix.stack(files)
    encoded = stacked @ derived.storage_code.generator
    return tuple(encoded.column(i) for i in range(derived.n_s))


@dataclass(frozen=True)
class QueryMatrix:
    """Q = random part + embedding part; column i goes to server i."""

    q: BitMatrix
    random_part: BitMatrix
    embed_part: BitMatrix

    def column(self, i: int) -> BitVector:
        return self.q.column(i)


def gen_queries(
    derived: SchemeDerived, demand: int, iteration: int, rng: np.random.Generator
) -> QueryMatrix:
    """Fresh uniform retrieval-code rows plus the iteration's embeddings.

    Every row of the random part is an independent uniform codeword of the
    retrieval code (drawn as a uniform message times its generator, one
    row-major batch per call).  The embedding part sets, for each assigned
    (stripe, coordinate) pair of this iteration, bit ``coordinate`` on the
    demanded file's stripe row.
    """
    if not 0 <= demand < derived.config.files:
        raise ValueError("demand index out of range")
    plan = derived.schedule.iterations[iteration]
    rows = derived.config.files * derived.b
    g_d = derived.retrieval_code.generator
    msgs = _random_bits(rng, rows, g_d.rows)
    rand_words = [BitVector(g_d.rows, w) for w in msgs]
    rand = BitMatrix.from_rows([g_d.left_mul(v) for v in rand_words], derived.n_s)
    embed_words = [0] * rows
    for stripe, coord in zip(plan.stripes, plan.coords):
        embed_words[derived.file_row(demand, stripe)] |= 1 << coord
    embed = BitMatrix(rows, derived.n_s, tuple(embed_words))
    q = BitMatrix(rows, derived.n_s, tuple(r ^ e for r, e in zip(rand.row_words, embed.row_words)))
    return QueryMatrix(q, rand, embed)


def server_respond(stored_column: BitVector, query_column: BitVector) -> int:
    """A server's one-bit answer: the dot product of query and storage."""
    if stored_column.length != query_column.length:
        raise LengthMismatch(f"{stored_column.length} != {query_column.length}")
    return stored_column.dot(query_column)


def respond_all(columns: tuple[BitVector, ...], queries: QueryMatrix) -> BitVector:
    word = 0
    for i, col in enumerate(columns):
        if server_respond(col, queries.column(i)):
            word |= 1 << i
    return BitVector(len(columns), word)


def decode_iteration(
    derived: SchemeDerived, iteration: int, response: BitVector
) -> tuple[tuple[int, int, int], ...]:
    """Syndrome-decode one response vector into (stripe, coordinate, bit).

    The parity map annihilates the random query contribution, so the
    syndrome equals ``H[:, J] x`` where x lists the planted codeword bits in
    ascending coordinate order; inverting (or solving, when an iteration
    carries fewer coordinates than d_perp) recovers x exactly.
    """
    if response.length != derived.n_s:
        raise LengthMismatch(f"{response.length} != {derived.n_s}")
    plan = derived.schedule.iterations[iteration]
    syndrome = derived.parity.mul_vector(response)
    if len(plan.coords) == derived.d_perp:
        bits = invert_columns(derived.parity, plan.coords).mul_vector(syndrome)
    else:
        bits = solve(derived.parity.take_columns(plan.coords), syndrome)
    return tuple(
        (stripe, coord, bits.bit(pos))
        for pos, (stripe, coord) in enumerate(zip(plan.stripes, plan.coords))
    )


def reconstruct_file(
    derived: SchemeDerived, recovered: tuple[tuple[int, int, int], ...]
) -> BitMatrix:
    """Invert each stripe's generator columns to rebuild the b x k_C file."""
    per_stripe: dict[int, dict[int, int]] = {}
    for stripe, coord, bit in recovered:
        per_stripe.setdefault(stripe, {})[coord] = bit
    rows = []
    for stripe in range(derived.b):
        got = per_stripe.get(stripe, {})
        if len(got) != derived.k_c:
            raise Incomplete(f"stripe {stripe} has {len(got)} of {derived.k_c} coordinates")
        coords = sorted(got)
        y = BitVector.from_bits(got[c] for c in coords)
        inv = invert_columns(derived.storage_code.generator, coords)
        rows.append(inv.left_mul(y))
    return BitMatrix.from_rows(rows, derived.k_c)


# ---------------------------------------------------------------------------
# Privacy checks.


def verify_privacy_rank(
    retrieval_code: LinearCode, t: int, *, sample: int | None = None, seed: int = 0
) -> bool:
    """True iff every checked t-column projection of the code is onto.

    Exhaustive over all coordinate subsets when there are at most 10^5 of
    them (and no explicit sample size is given), otherwise over ``sample``
    random subsets.  Onto projections make the random query part uniform on
    the colluding coordinates, which is exactly the privacy condition.
    """
    n_s = retrieval_code.length
    if t > n_s:
        raise ValueError("t cannot exceed the code length")
    if t == 0:
        return True
    cols = [retrieval_code.generator.column_word(j) for j in range(n_s)]

    def full_rank(subset: tuple[int, ...]) -> bool:
        basis: list[int] = []
        for j in subset:
            w = _reduce_word(cols[j], basis)
            if w == 0:
                return False
            basis.append(w)
        return True

    if sample is None and comb(n_s, t) <= 100_000:
        return all(full_rank(subset) for subset in combinations(range(n_s), t))
    rng = philox_generator(seed)
    k = sample if sample is not None else 10_000
    for _ in range(k):
        subset = tuple(sorted(rng.choice(n_s, size=t, replace=False).tolist()))
        if not full_rank(subset):
            return False
    return True


def _worst_case_columns(retrieval_code: LinearCode, t: int, prefer: int, seed: int) -> tuple[int, ...]:
    """A size-t coordinate set minimizing the projection rank (worst case
    for privacy), preferring sets that contain the ``prefer`` coordinate."""
    n_s = retrieval_code.length
    cols = [retrieval_code.generator.column_word(j) for j in range(n_s)]

    def rank_of(subset: tuple[int, ...]) -> int:
        basis: list[int] = []
        for j in subset:
            w = _reduce_word(cols[j], basis)
            if w:
                basis.append(w)
        return len(basis)

    if comb(n_s, t) <= 100_000:
        candidates = combinations(range(n_s), t)
    else:
        rng = philox_generator(seed)
        candidates = (
            tuple(sorted(rng.choice(n_s, size=t, replace=False).tolist())) for _ in range(10_000)
        )
    best = None
    best_key = None
    for subset in candidates:
        key = (rank_of(subset), 0 if prefer in subset else 1, subset)
        if best_key is None or key < best_key:
            best_key = key
            best = subset
    assert best is not None
    return best


def verify_privacy_empirical(
    config: SchemeConfig,
    t: int,
    *,
    trials: int = 0,
    stripes: int = 1,
    include_uniform: bool = True,
) -> float:
    """Max total-variation distance between restricted query distributions.

    Uses a cut-down instance with ``stripes`` stripes per file (the privacy
    argument is per-iteration and does not depend on the stripe count), a
    worst-case colluding set T of size t, and one embedded coordinate per
    stripe.  With ``trials = 0`` the query randomness is enumerated
    exhaustively (allowed while ``dim(D) * M * stripes <= 20``); otherwise
    ``trials`` Monte Carlo samples are drawn per demand.  The uniform
    distribution is included as a reference point unless disabled, so a
    single-demand instance still measures deviation from uniformity.
    """
    c = build(config.storage)
    d = build(config.retrieval)
    n_s = c.length
    rows = config.files * stripes
    if rows * t > 12:
        raise TooLarge("joint query alphabet exceeds the enumeration guard")
    e_dual = star_codes(c, d).dual()
    info = e_dual.information_set()
    if stripes > len(info):
        raise ValueError("stripe count exceeds the per-iteration recovery budget")
    embed_coords = info[:stripes]
    subset = _worst_case_columns(d, t, prefer=embed_coords[0], seed=config.seed)

    g_d = d.generator
    restricted = g_d.take_columns(subset)
    k_d = d.dimension

    def embed_key(demand: int) -> tuple[int, ...]:
        words = [0] * rows
        for a, coord in enumerate(embed_coords):
            if coord in subset:
                words[demand * stripes + a] |= 1 << subset.index(coord)
        return tuple(words)

    def exhaustive_distribution(demand: int) -> dict[tuple[int, ...], float]:
        shift = embed_key(demand)
        counts: dict[tuple[int, ...], int] = {}
        total = 1 << (k_d * rows)
        for packed in range(total):
            key = []
            rest = packed
            for i in range(rows):
                msg = rest & ((1 << k_d) - 1)
                rest >>= k_d
                key.append(restricted.left_mul(BitVector(k_d, msg)).word ^ shift[i])
            key_t = tuple(key)
            counts[key_t] = counts.get(key_t, 0) + 1
        return {k: v / total for k, v in counts.items()}

    def sampled_distribution(demand: int, rng: np.random.Generator) -> dict[tuple[int, ...], float]:
        shift = embed_key(demand)
        counts: dict[tuple[int, ...], int] = {}
        for _ in range(trials):
            msgs = _random_bits(rng, rows, k_d)
            key_t = tuple(
                restricted.left_mul(BitVector(k_d, msgs[i])).word ^ shift[i] for i in range(rows)
            )
            counts[key_t] = counts.get(key_t, 0) + 1
        return {k: v / trials for k, v in counts.items()}

    dists: list[dict[tuple[int, ...], float]] = []
    if trials == 0:
        if k_d * rows > 20:
            raise TooLarge("query randomness exceeds the exhaustive enumeration guard")
        for demand in range(config.files):
            dists.append(exhaustive_distribution(demand))
    else:
        rng = philox_generator(config.seed)
        for demand in range(config.files):
            dists.append(sampled_distribution(demand, rng))
    if include_uniform:
        outcomes = 1 << (rows * t)
        uniform = 1.0 / outcomes
        dists.append({tuple((w >> (i * t)) & ((1 << t) - 1) for i in range(rows)): uniform for w in range(outcomes)})

    def tv(p: dict, q: dict) -> float:
        keys = set(p) | set(q)
        return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)

    worst = 0.0
    for i in range(len(dists)):
        for j in range(i + 1, len(dists)):
            worst = max(worst, tv(dists[i], dists[j]))
    return worst


# ---------------------------------------------------------------------------
# End-to-end retrieval.


@dataclass(frozen=True)
class IterationRecord:
    coords: tuple[int, ...]
    assignments: tuple[tuple[int, int], ...]
    queries: QueryMatrix
    response: BitVector
    syndrome: BitVector
    recovered: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class Transcript:
    """Complete record of one simulated retrieval."""

    config: SchemeConfig
    demand: int
    t: int
    r_st: Fraction
    r_pir: Fraction
    b: int
    s_iterations: int
    iterations: tuple[IterationRecord, ...]
    recovered_file: BitMatrix
    stored_file: BitMatrix
    reconstructed_ok: bool
    downloaded_bits: int
    achieved_rate: Fraction

    def to_json(self) -> str:
        payload = {
            "config": {
                "storage": self.config.storage.name,
                "retrieval": self.config.retrieval.name,
                "files": self.config.files,
                "seed": self.config.seed,
            },
            "demand": self.demand,
            "derived": {
                "t": self.t,
                "R_st": float(self.r_st),
                "R_pir": float(self.r_pir),
                "b": self.b,
                "S": self.s_iterations,
            },
            "iterations": [
                {
                    "J": list(rec.coords),
                    "assignments": [list(pair) for pair in rec.assignments],
                    "responses_hex": rec.response.to_hex(),
                }
                for rec in self.iterations
            ],
            "reconstructed_ok": self.reconstructed_ok,
            "achieved_rate": float(self.achieved_rate),
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def run_retrieval(config: SchemeConfig, demand: int, *, debug_checks: bool = True) -> Transcript:
    """Simulate a full retrieval of file ``demand``.

    Draw order from the seeded Philox stream: first the M file matrices
    (row-major bits, file by file), then one query batch per iteration.
    With ``debug_checks`` the response vector minus the embedded
    contribution is asserted to lie in the product code every iteration.
    """
    derived = derive_scheme(config)
    if not 0 <= demand < config.files:
        raise ValueError("demand index out of range")
    rng = philox_generator(config.seed)
    files = [
        BitMatrix(derived.b, derived.k_c, tuple(_random_bits(rng, derived.b, derived.k_c)))
        for _ in range(config.files)
    ]
    columns = encode_storage(derived, files)
    encoded = BitMatrix.stack(files) @ derived.storage_code.generator

    records = []
    recovered: list[tuple[int, int, int]] = []
    for it in range(len(derived.schedule.iterations)):
        queries = gen_queries(derived, demand, it, rng)
        response = respond_all(columns, queries)
        syndrome = derived.parity.mul_vector(response)
        got = decode_iteration(derived, it, response)
        recovered.extend(got)
        if debug_checks:
            plan = derived.schedule.iterations[it]
            embed_word = 0
            for stripe, coord in zip(plan.stripes, plan.coords):
                if encoded.entry(derived.file_row(demand, stripe), coord):
                    embed_word |= 1 << coord
            residue = BitVector(derived.n_s, response.word ^ embed_word)
            assert derived.product_code.contains(residue), "response residue left the product code"
            for stripe, coord, bit in got:
                assert bit == encoded.entry(derived.file_row(demand, stripe), coord)
        records.append(
            IterationRecord(
                coords=derived.schedule.iterations[it].coords,
                assignments=derived.schedule.iterations[it].assignments(),
                queries=queries,
                response=response,
                syndrome=syndrome,
                recovered=got,
            )
        )

    rebuilt = reconstruct_file(derived, tuple(recovered))
    s_actual = len(derived.schedule.iterations)
    achieved = Fraction(derived.b * derived.k_c, s_actual * derived.n_s)
    if s_actual == derived.s_iterations:
        assert achieved == derived.r_pir, "achieved rate strayed from the derived rate"
    return Transcript(
        config=config,
        demand=demand,
        t=derived.t,
        r_st=derived.r_st,
        r_pir=derived.r_pir,
        b=derived.b,
        s_iterations=s_actual,
        iterations=tuple(records),
        recovered_file=rebuilt,
        stored_file=files[demand],
        reconstructed_ok=rebuilt == files[demand],
        downloaded_bits=s_actual * derived.n_s,
        achieved_rate=achieved,
    )
