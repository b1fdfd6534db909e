"""Dense GF(2) linear algebra on word-packed bit vectors and matrices.

A vector stores all of its bits in a single Python integer (bit ``i`` of the
word is coordinate ``i``), so vector addition is one XOR and Hamming weight
is ``int.bit_count()``.  Matrices hold one word per row.  Everything is
immutable; operations are pure functions and safe to share across threads.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass


class LengthMismatch(ValueError):
    """Operands have incompatible lengths or shapes."""


class NoSolution(ValueError):
    """The linear system is inconsistent."""


class Singular(ValueError):
    """The selected square submatrix is not invertible."""


@dataclass(frozen=True)
class BitVector:
    """A length-``length`` vector over GF(2), packed into one integer."""

    length: int
    word: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("negative length")
        if self.word < 0 or self.word >> self.length:
            raise ValueError("word has bits beyond the vector length")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVector:
        bits = list(bits)
        word = 0
        for i, b in enumerate(bits):
            if b & 1:
                word |= 1 << i
        return cls(len(bits), word)

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> BitVector:
        return cls(length, (1 << length) - 1)

    @classmethod
    def unit(cls, length: int, index: int) -> BitVector:
        if not 0 <= index < length:
            raise ValueError("unit index out of range")
        return cls(length, 1 << index)

    @classmethod
    def from01(cls, text: str) -> BitVector:
        if set(text) - {"0", "1"}:
            raise ValueError("expected a string of '0'/'1' characters")
        return cls.from_bits(int(c) for c in text)

    @classmethod
    def from_hex(cls, text: str, length: int) -> BitVector:
        """Inverse of :meth:`to_hex` (most-significant bit = coordinate 0)."""
        width = 4 * ((length + 3) // 4)
        if len(text) * 4 != width:
            raise ValueError("hex string does not match the stated length")
        value = int(text, 16) if text else 0
        word = 0
        for i in range(length):
            if (value >> (width - 1 - i)) & 1:
                word |= 1 << i
        return cls(length, word)

    def bit(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError("coordinate out of range")
        return (self.word >> i) & 1

    def bits(self) -> tuple[int, ...]:
        return tuple((self.word >> i) & 1 for i in range(self.length))

    def weight(self) -> int:
        return self.word.bit_count()

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if (self.word >> i) & 1)

    def block(self, index: int, size: int) -> BitVector:
        """Bits ``[index*size, (index+1)*size)`` as a new vector."""
        if size < 0 or (index + 1) * size > self.length:
            raise IndexError("block out of range")
        return BitVector(size, (self.word >> (index * size)) & ((1 << size) - 1))

    def __xor__(self, other: BitVector) -> BitVector:
        if self.length != other.length:
            raise LengthMismatch(f"{self.length} != {other.length}")
        return BitVector(self.length, self.word ^ other.word)

    def __and__(self, other: BitVector) -> BitVector:
        if self.length != other.length:
            raise LengthMismatch(f"{self.length} != {other.length}")
        return BitVector(self.length, self.word & other.word)

    def dot(self, other: BitVector) -> int:
        if self.length != other.length:
            raise LengthMismatch(f"{self.length} != {other.length}")
        return (self.word & other.word).bit_count() & 1

    def is_zero(self) -> bool:
        return self.word == 0

    def to01(self) -> str:
        return "".join("1" if (self.word >> i) & 1 else "0" for i in range(self.length))

    def to_hex(self) -> str:
        """Hex string, most-significant bit of the first digit = coordinate 0."""
        width = 4 * ((self.length + 3) // 4)
        value = 0
        for i in range(self.length):
            if (self.word >> i) & 1:
                value |= 1 << (width - 1 - i)
        return format(value, f"0{width // 4}x") if width else ""

    def __str__(self) -> str:
        return self.to01()


@dataclass(frozen=True)
class BitMatrix:
    """A rows x cols matrix over GF(2), one packed word per row."""

    rows: int
    cols: int
    row_words: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative shape")
        if len(self.row_words) != self.rows:
            raise ValueError("row count does not match the stored words")
        for w in self.row_words:
            if w < 0 or w >> self.cols:
                raise ValueError("row word has bits beyond the column count")

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], cols: int | None = None) -> BitMatrix:
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count from an empty row list")
            cols = rows[0].length
        for v in rows:
            if v.length != cols:
                raise LengthMismatch("rows of differing lengths")
        return cls(len(rows), cols, tuple(v.word for v in rows))

    @classmethod
    def from_bits(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> BitMatrix:
        rows = [BitVector.from_bits(r) for r in entries]
        if cols is None and not rows:
            cols = 0
        return cls.from_rows(rows, cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def stack(cls, mats: Sequence[BitMatrix]) -> BitMatrix:
        if not mats:
            raise ValueError("nothing to stack")
        cols = mats[0].cols
        words: list[int] = []
        for m in mats:
            if m.cols != cols:
                raise LengthMismatch("column counts differ")
            words.extend(m.row_words)
        return cls(len(words), cols, tuple(words))

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.row_words[i])

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError("entry out of range")
        return (self.row_words[i] >> j) & 1

    def column_word(self, j: int) -> int:
        """Column ``j`` packed into an integer over the row index."""
        if not 0 <= j < self.cols:
            raise IndexError("column out of range")
        word = 0
        for i, rw in enumerate(self.row_words):
            if (rw >> j) & 1:
                word |= 1 << i
        return word

    def column(self, j: int) -> BitVector:
        return BitVector(self.rows, self.column_word(j))

    def take_columns(self, cols: Sequence[int]) -> BitMatrix:
        """Submatrix of the listed columns, in the order given."""
        for j in cols:
            if not 0 <= j < self.cols:
                raise IndexError("column out of range")
        words = []
        for rw in self.row_words:
            w = 0
            for t, j in enumerate(cols):
                if (rw >> j) & 1:
                    w |= 1 << t
            words.append(w)
        return BitMatrix(self.rows, len(cols), tuple(words))

    def transpose(self) -> BitMatrix:
        return BitMatrix(self.cols, self.rows, tuple(self.column_word(j) for j in range(self.cols)))

    def left_mul(self, v: BitVector) -> BitVector:
        """Row vector times matrix: ``v @ self`` (length = cols)."""
        if v.length != self.rows:
            raise LengthMismatch(f"{v.length} != {self.rows}")
        word = 0
        rest = v.word
        while rest:
            i = (rest & -rest).bit_length() - 1
            word ^= self.row_words[i]
            rest &= rest - 1
        return BitVector(self.cols, word)

    def mul_vector(self, v: BitVector) -> BitVector:
        """Matrix times column vector: ``self @ v^T`` (length = rows)."""
        if v.length != self.cols:
            raise LengthMismatch(f"{v.length} != {self.cols}")
        word = 0
        for i, rw in enumerate(self.row_words):
            if (rw & v.word).bit_count() & 1:
                word |= 1 << i
        return BitVector(self.rows, word)

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.rows:
            raise LengthMismatch(f"{self.cols} != {other.rows}")
        words = []
        for rw in self.row_words:
            w = 0
            rest = rw
            while rest:
                k = (rest & -rest).bit_length() - 1
                w ^= other.row_words[k]
                rest &= rest - 1
            words.append(w)
        return BitMatrix(self.rows, other.cols, tuple(words))

    def to_bits(self) -> list[list[int]]:
        return [[(rw >> j) & 1 for j in range(self.cols)] for rw in self.row_words]

    def to_text(self) -> str:
        """Serialize: a "rows cols" header line, then one '0'/'1' row per line."""
        lines = [f"{self.rows} {self.cols}"]
        lines.extend(self.row(i).to01() for i in range(self.rows))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> BitMatrix:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        try:
            rows, cols = (int(tok) for tok in lines[0].split())
        except Exception as exc:
            raise ValueError("bad matrix header, expected 'rows cols'") from exc
        if len(lines) - 1 != rows:
            raise ValueError("row count does not match the header")
        vecs = []
        for ln in lines[1:]:
            v = BitVector.from01(ln.strip())
            if v.length != cols:
                raise ValueError("row length does not match the header")
            vecs.append(v)
        return cls.from_rows(vecs, cols)

    def __str__(self) -> str:
        return self.to_text().rstrip("\n")


def row_reduce(m: BitMatrix) -> tuple[BitMatrix, tuple[int, ...]]:
    """Reduced row-echelon form over GF(2) plus the pivot column indices.

    The row space is preserved and pivot columns are strictly increasing.
    Rows of zeros sink to the bottom.
    """
    words = list(m.row_words)
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        bit = 1 << c
        p = next((i for i in range(r, m.rows) if words[i] & bit), None)
        if p is None:
            continue
        words[r], words[p] = words[p], words[r]
        for i in range(m.rows):
            if i != r and words[i] & bit:
                words[i] ^= words[r]
        pivots.append(c)
        r += 1
    return BitMatrix(m.rows, m.cols, tuple(words)), tuple(pivots)


def rank(m: BitMatrix) -> int:
    return len(row_reduce(m)[1])


def nullspace_basis(m: BitMatrix) -> BitMatrix:
    """A basis of ``{x : m @ x^T = 0}``, one basis vector per row.

    Row count is always ``cols - rank(m)``; for a zero-row matrix this is the
    identity (the whole space).
    """
    rref, pivots = row_reduce(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    words = []
    for f in free:
        w = 1 << f
        for i, p in enumerate(pivots):
            if (rref.row_words[i] >> f) & 1:
                w |= 1 << p
        words.append(w)
    return BitMatrix(len(free), m.cols, tuple(words))


def solve(a: BitMatrix, b: BitVector) -> BitVector:
    """One solution ``x`` of ``a @ x^T = b^T``; raises NoSolution if none exists."""
    if b.length != a.rows:
        raise LengthMismatch(f"{b.length} != {a.rows}")
    # Augment each row word with its right-hand-side bit at position `cols`.
    aug = [a.row_words[i] | (((b.word >> i) & 1) << a.cols) for i in range(a.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(a.cols):
        if r == a.rows:
            break
        bit = 1 << c
        p = next((i for i in range(r, a.rows) if aug[i] & bit), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        for i in range(a.rows):
            if i != r and aug[i] & bit:
                aug[i] ^= aug[r]
        pivots.append(c)
        r += 1
    rhs_bit = 1 << a.cols
    for i in range(r, a.rows):
        if aug[i] & rhs_bit:
            raise NoSolution("inconsistent system")
    word = 0
    for i, p in enumerate(pivots):
        if aug[i] & rhs_bit:
            word |= 1 << p
    return BitVector(a.cols, word)


def invert_columns(m: BitMatrix, cols: Sequence[int]) -> BitMatrix:
    """Inverse of the square submatrix ``m[:, cols]``.

    ``cols`` must list exactly ``m.rows`` column indices (in the caller's
    order); raises Singular when the submatrix has no inverse.
    """
    k = m.rows
    if len(cols) != k:
        raise LengthMismatch(f"need {k} column indices, got {len(cols)}")
    sub = m.take_columns(cols)
    # Gauss-Jordan on [sub | I].
    aug = [sub.row_words[i] | (1 << (k + i)) for i in range(k)]
    r = 0
    for c in range(k):
        bit = 1 << c
        p = next((i for i in range(r, k) if aug[i] & bit), None)
        if p is None:
            raise Singular("selected columns are linearly dependent")
        aug[r], aug[p] = aug[p], aug[r]
        for i in range(k):
            if i != r and aug[i] & bit:
                aug[i] ^= aug[r]
        r += 1
    return BitMatrix(k, k, tuple(w >> k for w in aug))
