"""Berman and Dual Berman code construction over GF(2).

Both families live on length ``n^m`` with coordinates indexed by m-tuples
over ``{0,...,n-1}``; the first tuple component is the most significant
digit, so block ``l`` of the concatenation ``(v_0|...|v_{n-1})`` is exactly
the coordinate set ``{i : i_0 = l}``.

Each family member can be produced three independent ways, and the test
suite cross-checks them against each other:

* an explicit basis of downward/upward indicator vectors on the partial
  order ``j <= i  iff  j agrees with i on j's nonzero positions``,
* a recursive membership test that splits a vector into its n blocks,
* closed-form dimension and minimum-distance formulas.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb

from .codes import LinearCode
from .gf2 import BitVector, LengthMismatch

IndexTuple = tuple[int, ...]


class CodeKind(str, Enum):
    BERMAN = "Ber"
    DUAL_BERMAN = "DBer"


_NAME_RE = re.compile(r"^(Ber|DBer)\((\d+),(\d+),(\d+)\)$")


@dataclass(frozen=True)
class BermanParams:
    """One family member: kind, alphabet size n >= 2, depth m >= 1, order r."""

    kind: CodeKind
    n: int
    m: int
    r: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if not 0 <= self.r <= self.m:
            raise ValueError("r must satisfy 0 <= r <= m")

    @property
    def length(self) -> int:
        return self.n**self.m

    @property
    def is_zero_code(self) -> bool:
        return self.kind is CodeKind.BERMAN and self.r == self.m

    @property
    def is_full_space(self) -> bool:
        return self.kind is CodeKind.DUAL_BERMAN and self.r == self.m

    @property
    def dual(self) -> BermanParams:
        other = CodeKind.DUAL_BERMAN if self.kind is CodeKind.BERMAN else CodeKind.BERMAN
        return BermanParams(other, self.n, self.m, self.r)

    @property
    def name(self) -> str:
        return f"{self.kind.value}({self.n},{self.r},{self.m})"

    @classmethod
    def parse(cls, text: str) -> BermanParams:
        m = _NAME_RE.match(text.strip())
        if m is None:
            raise ValueError(f"cannot parse code name {text!r}; expected Ber(n,r,m) or DBer(n,r,m)")
        kind = CodeKind.BERMAN if m.group(1) == "Ber" else CodeKind.DUAL_BERMAN
        return cls(kind, int(m.group(2)), int(m.group(4)), int(m.group(3)))

    def __str__(self) -> str:
        return self.name


# ---------------------------------------------------------------------------
# Coordinate tuples and the partial order.


def all_tuples(n: int, m: int):
    """All m-tuples over {0,...,n-1} in coordinate-index order."""
    return product(range(n), repeat=m)


def tuple_to_index(n: int, t: IndexTuple) -> int:
    """Coordinate index of a tuple; the first component is most significant."""
    idx = 0
    for x in t:
        if not 0 <= x < n:
            raise ValueError("tuple component out of range")
        idx = idx * n + x
    return idx


def index_to_tuple(n: int, m: int, index: int) -> IndexTuple:
    if not 0 <= index < n**m:
        raise ValueError("index out of range")
    digits = []
    for _ in range(m):
        index, d = divmod(index, n)
        digits.append(d)
    return tuple(reversed(digits))


def tuple_weight(t: IndexTuple) -> int:
    return sum(1 for x in t if x)


def precedes(j: IndexTuple, i: IndexTuple) -> bool:
    """True iff supp(j) is contained in supp(i) and j matches i there."""
    if len(j) != len(i):
        raise LengthMismatch("tuples of differing arity")
    return all(a == 0 or a == b for a, b in zip(j, i))


def c_vector(n: int, m: int, t: IndexTuple) -> BitVector:
    """Indicator of all tuples preceding ``t``; weight is 2^weight(t)."""
    _check_tuple(n, m, t)
    supp = [l for l in range(m) if t[l]]
    word = 0
    for size in range(len(supp) + 1):
        for subset in combinations(supp, size):
            idx = 0
            for l in range(m):
                idx = idx * n + (t[l] if l in subset else 0)
            word |= 1 << idx
    return BitVector(n**m, word)


def d_vector(n: int, m: int, t: IndexTuple) -> BitVector:
    """Indicator of all tuples succeeding ``t``; weight is n^(m-weight(t))."""
    _check_tuple(n, m, t)
    free = [l for l in range(m) if t[l] == 0]
    word = 0
    for values in product(range(n), repeat=len(free)):
        fill = dict(zip(free, values))
        idx = 0
        for l in range(m):
            idx = idx * n + fill.get(l, t[l])
        word |= 1 << idx
    return BitVector(n**m, word)


def _check_tuple(n: int, m: int, t: IndexTuple) -> None:
    if len(t) != m:
        raise LengthMismatch(f"expected an {m}-tuple")
    if any(not 0 <= x < n for x in t):
        raise ValueError("tuple component out of range")


# ---------------------------------------------------------------------------
# Construction paths.


def basis_vectors(params: BermanParams) -> tuple[BitVector, ...]:
    """The family's basis, in coordinate-index order of the defining tuples."""
    n, m, r = params.n, params.m, params.r
    if params.kind is CodeKind.BERMAN:
        return tuple(
            c_vector(n, m, t) for t in all_tuples(n, m) if r + 1 <= tuple_weight(t) <= m
        )
    return tuple(d_vector(n, m, t) for t in all_tuples(n, m) if tuple_weight(t) <= r)


@lru_cache(maxsize=None)
def build(params: BermanParams) -> LinearCode:
    """The code spanned by the family basis, canonicalized."""
    code = LinearCode.from_spanning_set(params.length, basis_vectors(params))
    assert code.dimension == dimension_formula(params), "basis rank disagrees with the closed form"
    return code


def dimension_formula(params: BermanParams) -> int:
    n, m, r = params.n, params.m, params.r
    if params.kind is CodeKind.BERMAN:
        return sum(comb(m, w) * (n - 1) ** w for w in range(r + 1, m + 1))
    return sum(comb(m, w) * (n - 1) ** w for w in range(0, r + 1))


def min_distance_formula(params: BermanParams) -> int:
    if params.kind is CodeKind.BERMAN:
        if params.r == params.m:
            raise ValueError("the zero code has no minimum distance")
        return 2 ** (params.r + 1)
    return params.n ** (params.m - params.r)


def recursive_membership(params: BermanParams, v: BitVector) -> bool:
    """Membership decided directly from the block recursion.

    Base cases: the Berman family bottoms out at the zero code (r = m) and
    the even-parity code (r = 0); the dual family at the full space (r = m)
    and the repetition code (r = 0).  Otherwise a vector is split into its
    n blocks of length ``n^(m-1)`` and the defining conditions are checked
    recursively.
    """
    if v.length != params.length:
        raise LengthMismatch(f"{v.length} != {params.length}")
    return _member(params.kind, params.n, params.r, params.m, v.word)


def _member(kind: CodeKind, n: int, r: int, m: int, word: int) -> bool:
    if kind is CodeKind.BERMAN:
        if r == m:
            return word == 0
        if r == 0:
            return word.bit_count() % 2 == 0
        size = n ** (m - 1)
        mask = (1 << size) - 1
        total = 0
        for l in range(n):
            blk = (word >> (l * size)) & mask
            if not _member(kind, n, r - 1, m - 1, blk):
                return False
            total ^= blk
        return _member(kind, n, r, m - 1, total)
    if r == m:
        return True
    size_full = n**m
    if r == 0:
        return word == 0 or word == (1 << size_full) - 1
    size = n ** (m - 1)
    mask = (1 << size) - 1
    u = (word >> ((n - 1) * size)) & mask
    if not _member(kind, n, r, m - 1, u):
        return False
    return all(
        _member(kind, n, r - 1, m - 1, ((word >> (l * size)) & mask) ^ u) for l in range(n - 1)
    )


def reed_muller_code(r: int, m: int) -> LinearCode:
    """RM(r, m) built from scratch by evaluating multilinear monomials.

    Evaluation points are the length-2^m coordinate tuples, so this is an
    independent construction to compare the n = 2 dual family against.
    ``r = -1`` yields the zero code.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if r > m:
        raise ValueError("r must be at most m")
    n_pts = 1 << m
    rows = []
    for deg in range(max(r, -1) + 1):
        for positions in combinations(range(m), deg):
            word = 0
            for idx in range(n_pts):
                point = index_to_tuple(2, m, idx)
                if all(point[p] == 1 for p in positions):
                    word |= 1 << idx
            rows.append(BitVector(n_pts, word))
    return LinearCode.from_spanning_set(n_pts, rows)


# ---------------------------------------------------------------------------
# Coordinate symmetries (used to witness transitivity at tiny lengths).


def permute_vector(v: BitVector, perm: tuple[int, ...]) -> BitVector:
    """Move the bit at coordinate ``i`` to coordinate ``perm[i]``."""
    if len(perm) != v.length:
        raise LengthMismatch("permutation arity does not match the vector")
    word = 0
    rest = v.word
    while rest:
        i = (rest & -rest).bit_length() - 1
        word |= 1 << perm[i]
        rest &= rest - 1
    return BitVector(v.length, word)


def structured_permutation(
    n: int, m: int, pos_perm: tuple[int, ...], alphabet_perms: tuple[tuple[int, ...], ...]
) -> tuple[int, ...]:
    """Coordinate permutation from a tuple-position permutation plus one
    alphabet permutation per position: tuple t maps to
    ``(alphabet_perms[p][t[pos_perm[p]]] for p in range(m))``."""
    out = []
    for t in all_tuples(n, m):
        image = tuple(alphabet_perms[p][t[pos_perm[p]]] for p in range(m))
        out.append(tuple_to_index(n, image))
    return tuple(out)


def translation_permutation(n: int, m: int, shift: IndexTuple) -> tuple[int, ...]:
    """Componentwise modular shift of the coordinate tuples."""
    cyc = tuple(tuple((x + s) % n for x in range(n)) for s in shift)
    return structured_permutation(n, m, tuple(range(m)), cyc)


def structured_permutations(n: int, m: int):
    """Every permutation in the structured family (m! * (n!)^m of them)."""
    for pos_perm in permutations(range(m)):
        for alphabet in product(permutations(range(n)), repeat=m):
            yield structured_permutation(n, m, pos_perm, alphabet)


def is_automorphism(code: LinearCode, perm: tuple[int, ...]) -> bool:
    """True iff permuting coordinates maps the code onto itself."""
    return all(
        code.contains(permute_vector(code.generator.row(i), perm))
        for i in range(code.dimension)
    )


def transitivity_witness(params: BermanParams, a: int, b: int) -> str | None:
    """Find a code-preserving coordinate permutation mapping a to b.

    Tries, in order: the componentwise translation taking a to b, the whole
    structured family, and (for lengths up to 8) arbitrary permutations.
    Returns the label of the family that sufficed, or None.
    """
    n, m = params.n, params.m
    code = build(params)
    ta, tb = index_to_tuple(n, m, a), index_to_tuple(n, m, b)
    shift = tuple((y - x) % n for x, y in zip(ta, tb))
    if is_automorphism(code, translation_permutation(n, m, shift)):
        return "translation"
    for perm in structured_permutations(n, m):
        if perm[a] == b and is_automorphism(code, perm):
            return "structured"
    if params.length <= 8:
        rest = [i for i in range(params.length) if i != a]
        targets = [i for i in range(params.length) if i != b]
        for images in permutations(targets):
            perm = [0] * params.length
            perm[a] = b
            for src, dst in zip(rest, images):
                perm[src] = dst
            if is_automorphism(code, tuple(perm)):
                return "full"
    return None
