"""Independent oracles shared by the test modules.

The staged constructions rebuild every standard basis vector of the full
space out of star products of family basis vectors, step by step, checking
each intermediate against its direct definition.  They deliberately avoid
the library's span machinery so that a passing run certifies the products
themselves, not just span bookkeeping.
"""

from itertools import combinations

from bermanpir import BitVector
from bermanpir.berman import (
    all_tuples,
    c_vector,
    d_vector,
    precedes,
    tuple_to_index,
    tuple_weight,
)
from bermanpir.star import star_vectors


def exhaustive_span(length, vectors):
    """Every GF(2) combination of the vectors, as a set of packed words."""
    words = {0}
    for v in vectors:
        assert v.length == length
        words |= {w ^ v.word for w in words}
    return words


def staged_parity_products(n, m):
    """Standard basis from products of weight-m downward indicators (n >= 3).

    Step 0 produces the basis vector at the all-zero tuple from two
    componentwise-disagreeing full-weight indicators; step k produces every
    weight-k basis vector by subtracting the already-built strict
    predecessors from a product equal to c(v).
    """
    assert n >= 3
    built = {}
    size = n**m
    e0 = star_vectors(c_vector(n, m, (1,) * m), c_vector(n, m, (2,) * m))
    assert e0 == BitVector.unit(size, 0)
    built[(0,) * m] = e0
    for k in range(1, m + 1):
        for v in all_tuples(n, m):
            if tuple_weight(v) != k:
                continue
            j = tuple(v[p] if v[p] else 1 for p in range(m))
            l = tuple(v[p] if v[p] else 2 for p in range(m))
            x = star_vectors(c_vector(n, m, j), c_vector(n, m, l))
            assert x == c_vector(n, m, v)
            acc = x
            supp = [p for p in range(m) if v[p]]
            for count in range(len(supp)):
                for subset in combinations(supp, count):
                    acc = acc ^ built[tuple(v[p] if p in subset else 0 for p in range(m))]
            assert acc == BitVector.unit(size, tuple_to_index(n, v)), v
            built[v] = acc
    assert len(built) == size
    return built


def _between(lo, hi, m):
    """All tuples v with lo below v below hi (inclusive)."""
    free = [p for p in range(m) if hi[p] and not lo[p]]
    for count in range(len(free) + 1):
        for subset in combinations(free, count):
            yield tuple(hi[p] if (lo[p] or p in subset) else 0 for p in range(m))


def staged_mixed_products(n, m, r2):
    """Standard basis from c(weight >= r2) star d(weight <= r2) products.

    Step 0 covers weight r2 directly; the next steps walk the weights down
    to 0 and then up to m, each time cancelling previously built vectors
    out of a product that covers the order interval between the two index
    tuples.
    """
    assert 1 <= r2 <= m
    built = {}
    size = n**m
    for j in all_tuples(n, m):
        if tuple_weight(j) != r2:
            continue
        e = star_vectors(c_vector(n, m, j), d_vector(n, m, j))
        assert e == BitVector.unit(size, tuple_to_index(n, j))
        built[j] = e
    for k in range(1, r2 + 1):
        for jp in all_tuples(n, m):
            if tuple_weight(jp) != r2 - k:
                continue
            j = list(jp)
            for p in range(m):
                if sum(1 for q in j if q) == r2:
                    break
                if j[p] == 0:
                    j[p] = 1
            j = tuple(j)
            assert tuple_weight(j) == r2 and precedes(jp, j)
            acc = star_vectors(c_vector(n, m, j), d_vector(n, m, jp))
            for v in _between(jp, j, m):
                if v != jp:
                    acc = acc ^ built[v]
            assert acc == BitVector.unit(size, tuple_to_index(n, jp)), jp
            built[jp] = acc
    for l in range(1, m - r2 + 1):
        for j in all_tuples(n, m):
            if tuple_weight(j) != r2 + l:
                continue
            supp = [p for p in range(m) if j[p]]
            jp = tuple(j[p] if p in supp[:r2] else 0 for p in range(m))
            acc = star_vectors(c_vector(n, m, j), d_vector(n, m, jp))
            for v in _between(jp, j, m):
                if v != j:
                    acc = acc ^ built[v]
            assert acc == BitVector.unit(size, tuple_to_index(n, j)), j
            built[j] = acc
    assert len(built) == size
    return built
