"""Star (Schur) products of vectors and codes, with a predicted-case table
for every pairing inside the Berman family and span-equality verification.

The product of two codes is the span of the coordinatewise products of
their generator rows; bilinearity makes that equal to the span over all
codeword pairs without enumerating them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .berman import BermanParams, CodeKind, IndexTuple, build, c_vector, d_vector, precedes, tuple_weight
from .codes import LinearCode
from .gf2 import BitVector, LengthMismatch


class ParamMismatch(ValueError):
    """The two family members do not share (n, m)."""


class UndefinedCase(ValueError):
    """The product is not covered by a known case."""


class OverlappingSupport(ValueError):
    """The two index tuples share a nonzero position."""


class PreconditionViolated(ValueError):
    """The basis-identity preconditions do not hold."""


class StarSpecial(Enum):
    FULL_SPACE = "full-space"
    UNDEFINED = "undefined"


FULL_SPACE = StarSpecial.FULL_SPACE
UNDEFINED = StarSpecial.UNDEFINED

Predicted = BermanParams | StarSpecial


def star_vectors(a: BitVector, b: BitVector) -> BitVector:
    """Coordinatewise product, i.e. AND over GF(2)."""
    if a.length != b.length:
        raise LengthMismatch(f"{a.length} != {b.length}")
    return a & b


def star_codes(c: LinearCode, d: LinearCode) -> LinearCode:
    """Span of all pairwise products of generator rows."""
    if c.length != d.length:
        raise LengthMismatch(f"{c.length} != {d.length}")
    products = [
        BitVector(c.length, gw & hw)
        for gw in c.generator.row_words
        for hw in d.generator.row_words
    ]
    return LinearCode.from_spanning_set(c.length, products)


def predict_star(p: BermanParams, q: BermanParams) -> Predicted:
    """The product's identity, by case analysis on the two family members.

    Degenerate operands are screened first: a zero-code factor annihilates
    the product, and the full space absorbs any nonzero factor (every
    nonzero family member has full support).  The remaining cases:

    * DBer(r1) * DBer(r2) = DBer(r1+r2) when r1+r2 <= m, else UNDEFINED;
    * Ber(r1) * DBer(r2) = Ber(r1-r2) when r2 <= r1, else the full space;
    * Ber * Ber is the full space for n >= 3; for n = 2 it reduces to the
      DBer case through Ber(2,r,m) = RM(m-r-1,m).
    """
    if (p.n, p.m) != (q.n, q.m):
        raise ParamMismatch(f"{p.name} and {q.name} do not share (n, m)")
    n, m = p.n, p.m
    if p.is_zero_code or q.is_zero_code:
        return BermanParams(CodeKind.BERMAN, n, m, m)
    if p.is_full_space or q.is_full_space:
        return FULL_SPACE
    kinds = {p.kind, q.kind}
    if kinds == {CodeKind.DUAL_BERMAN}:
        s = p.r + q.r
        return BermanParams(CodeKind.DUAL_BERMAN, n, m, s) if s <= m else UNDEFINED
    if kinds == {CodeKind.BERMAN}:
        if n >= 3:
            return FULL_SPACE
        s = 2 * m - p.r - q.r - 2
        return BermanParams(CodeKind.DUAL_BERMAN, n, m, s) if s <= m else FULL_SPACE
    ber, dber = (p, q) if p.kind is CodeKind.BERMAN else (q, p)
    if dber.r <= ber.r:
        return BermanParams(CodeKind.BERMAN, n, m, ber.r - dber.r)
    return FULL_SPACE


def predicted_code(n: int, m: int, predicted: Predicted) -> LinearCode:
    if predicted is UNDEFINED:
        raise UndefinedCase("no predicted code for an undefined case")
    if predicted is FULL_SPACE:
        return LinearCode.full(n**m)
    return build(predicted)


@dataclass(frozen=True)
class StarCaseResult:
    left: BermanParams
    right: BermanParams
    predicted: Predicted
    verified: bool
    product_dimension: int

    def label(self) -> str:
        pred = self.predicted.name if isinstance(self.predicted, BermanParams) else self.predicted.value
        return f"{self.left.name} * {self.right.name} = {pred}"


def verify_star_case(p: BermanParams, q: BermanParams) -> StarCaseResult:
    """Construct both sides and compare spans; raises on UNDEFINED cases."""
    predicted = predict_star(p, q)
    if predicted is UNDEFINED:
        raise UndefinedCase(f"{p.name} * {q.name} is not covered by the case table")
    actual = star_codes(build(p), build(q))
    expected = predicted_code(p.n, p.m, predicted)
    return StarCaseResult(p, q, predicted, actual == expected, actual.dimension)


def star_case_sweep(n_max: int, m_max: int):
    """Every ordered pair of family members with a predicted product,
    for 2 <= n <= n_max and 1 <= m <= m_max, verified by span equality."""
    for n in range(2, n_max + 1):
        for m in range(1, m_max + 1):
            members = [
                BermanParams(kind, n, m, r)
                for kind in (CodeKind.BERMAN, CodeKind.DUAL_BERMAN)
                for r in range(m + 1)
            ]
            for p in members:
                for q in members:
                    if predict_star(p, q) is UNDEFINED:
                        continue
                    yield verify_star_case(p, q)


def disjoint_support_product(n: int, m: int, j1: IndexTuple, j2: IndexTuple) -> BitVector:
    """d(j1) * d(j2) for disjoint supports equals d(j1 + j2); returns it."""
    if any(a and b for a, b in zip(j1, j2)):
        raise OverlappingSupport("index tuples share a nonzero position")
    merged = tuple(a or b for a, b in zip(j1, j2))
    result = d_vector(n, m, merged)
    assert result == star_vectors(d_vector(n, m, j1), d_vector(n, m, j2))
    return result


def berman_basis_identity(n: int, m: int, j: IndexTuple, k: IndexTuple) -> BitVector:
    """c(j - k) computed as c(j)*d(k) + c(j)*d(0), for a weight-1 k below j.

    The returned vector is checked against the direct construction of
    c(j') where j' is j with the k-supported component zeroed.
    """
    if tuple_weight(k) != 1 or not precedes(k, j):
        raise PreconditionViolated("need weight(k) = 1 and k below j")
    cj = c_vector(n, m, j)
    rhs = star_vectors(cj, d_vector(n, m, k)) ^ star_vectors(cj, d_vector(n, m, (0,) * m))
    j_prime = tuple(0 if k[l] else j[l] for l in range(m))
    assert rhs == c_vector(n, m, j_prime)
    return rhs
