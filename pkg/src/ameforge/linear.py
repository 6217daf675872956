"""Linear codes over GF(q): generator matrices, the all-k-columns test for
MDS, and generalized / extended Reed-Solomon constructions.

Desk scale throughout: k, n <= 64.  Enumeration helpers materialize all q^k
codewords, so they are meant for the q^k <= ~10^6 regime; the column-subset
MDS test needs no enumeration at all.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .codes import Code
from .errors import (
    DimensionOutOfRange,
    DuplicateEvaluationPoint,
    InvalidParams,
    LengthMismatch,
    MalformedFile,
    RankDeficient,
    ZeroMultiplier,
)
from .fields import FiniteField, make_field

MAX_SIDE = 64


class LinearCode:
    """A linear [n, k] code given by a k x n generator matrix over GF(q).

    Entries are canonical integer encodings.  The matrix is stored as given;
    rank is computed lazily, and operations that need full row rank raise
    RankDeficient when it is missing.
    """

    __slots__ = ("field", "gen", "k", "n", "_rank")

    def __init__(self, field: FiniteField, rows: Iterable[Iterable[int]]):
        gen = tuple(tuple(int(x) for x in row) for row in rows)
        if not gen or not gen[0]:
            raise InvalidParams("generator matrix must be nonempty")
        n = len(gen[0])
        if any(len(row) != n for row in gen):
            raise LengthMismatch("generator rows have unequal length")
        if len(gen) > MAX_SIDE or n > MAX_SIDE:
            raise InvalidParams(f"generator matrices are limited to {MAX_SIDE}x{MAX_SIDE}")
        for row in gen:
            for x in row:
                if not 0 <= x < field.q:
                    raise InvalidParams(f"entry {x} is not an element of {field}")
        self.field = field
        self.gen = gen
        self.k = len(gen)
        self.n = n
        self._rank: int | None = None

    def rank(self) -> int:
        if self._rank is None:
            self._rank = _row_reduce([list(r) for r in self.gen], self.field)[1]
        return self._rank

    def require_full_rank(self) -> None:
        if self.rank() != self.k:
            raise RankDeficient(f"generator has rank {self.rank()} < k = {self.k}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCode)
            and other.field == self.field
            and other.gen == self.gen
        )

    def __hash__(self) -> int:
        return hash((self.field, self.gen))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}] over {self.field})"


def _row_reduce(mat: list[list[int]], field: FiniteField) -> tuple[list[list[int]], int, list[int]]:
    """Gauss-Jordan elimination in place; returns (matrix, rank, pivot columns)."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, x) for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return mat, r, pivots


def _det_nonzero(rows: Sequence[Sequence[int]], field: FiniteField) -> bool:
    """Whether a square matrix is nonsingular (elimination, no determinant value)."""
    mat = [list(r) for r in rows]
    size = len(mat)
    for c in range(size):
        pivot = next((i for i in range(c, size) if mat[i][c] != 0), None)
        if pivot is None:
            return False
        mat[c], mat[pivot] = mat[pivot], mat[c]
        inv = field.inv(mat[c][c])
        for i in range(c + 1, size):
            if mat[i][c] != 0:
                f = field.mul(inv, mat[i][c])
                mat[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(mat[i], mat[c])]
    return True


@lru_cache(maxsize=None)
def _np_tables(field: FiniteField) -> tuple[np.ndarray, np.ndarray]:
    """Dense q x q add / mul tables for vectorized codeword enumeration."""
    q = field.q
    if q > 1024:
        raise InvalidParams(f"codeword enumeration tables capped at q <= 1024, got {q}")
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = field.add(a, b)
            mul[a, b] = field.mul(a, b)
    return add, mul


def codewords(lc: LinearCode) -> Code:
    """All q^k codewords as a Code (message digits run most-significant-first
    through the generator rows, but the Code stores words sorted anyway)."""
    lc.require_full_rank()
    add, mul = _np_tables(lc.field)
    q = lc.field.q
    words = np.zeros((1, lc.n), dtype=np.int64)
    for row in lc.gen:
        scaled = mul[np.arange(q)[:, None], np.array(row, dtype=np.int64)[None, :]]
        words = add[words[:, None, :], scaled[None, :, :]].reshape(-1, lc.n)
    code = Code(map(tuple, words.tolist()), q)
    assert code.size == q**lc.k
    return code


def mds_codewords(lc: LinearCode) -> Code:
    """Codewords of a code that passes the all-k-columns MDS test, with the
    minimum distance cached from the Singleton identity delta = n - k + 1.

    The minor test is a complete MDS criterion for linear codes, so the
    cached distance is exact without enumerating word pairs; use plain
    ``codewords`` + ``min_distance`` when an enumeration oracle is wanted.
    """
    if not is_mds_linear(lc):
        raise InvalidParams(f"{lc!r} fails the k-column-minors MDS test")
    code = codewords(lc)
    code._min_distance = lc.n - lc.k + 1
    return code


def min_weight(lc: LinearCode) -> int:
    """Minimum Hamming weight over nonzero codewords; equals the minimum
    distance for a linear code (shortcut when full pair enumeration is too
    expensive)."""
    arr = codewords(lc).as_array()
    weights = (arr != 0).sum(axis=1)
    nz = weights[weights > 0]
    if nz.size == 0:
        raise RankDeficient("code has no nonzero words")
    return int(nz.min())


def is_mds_linear(lc: LinearCode) -> bool:
    """True iff every k-subset of generator columns is nonsingular.

    Agrees with mds_verdict(codewords(lc)).is_mds, without enumeration.
    """
    lc.require_full_rank()
    cols = list(zip(*lc.gen))
    for subset in combinations(range(lc.n), lc.k):
        square = [[cols[c][r] for c in subset] for r in range(lc.k)]
        if not _det_nonzero(square, lc.field):
            return False
    return True


def grs_code(
    field: FiniteField,
    alphas: Sequence[int],
    multipliers: Sequence[int],
    k: int,
) -> LinearCode:
    """Generalized Reed-Solomon code: row r is (v_i * alpha_i^r), r = 0..k-1.

    Evaluation points must be pairwise distinct field elements and every
    column multiplier nonzero; the result always passes is_mds_linear.
    """
    alphas = [int(a) for a in alphas]
    multipliers = [int(v) for v in multipliers]
    if len(alphas) != len(multipliers):
        raise LengthMismatch("need one multiplier per evaluation point")
    n = len(alphas)
    if len(set(alphas)) != n:
        raise DuplicateEvaluationPoint("evaluation points must be pairwise distinct")
    for a in alphas:
        if not 0 <= a < field.q:
            raise InvalidParams(f"evaluation point {a} is not in {field}")
    if any(v == 0 for v in multipliers):
        raise ZeroMultiplier("column multipliers must be nonzero")
    for v in multipliers:
        if not 0 <= v < field.q:
            raise InvalidParams(f"multiplier {v} is not in {field}")
    if not 1 <= k <= n:
        raise DimensionOutOfRange(f"dimension {k} outside 1..{n}")
    rows = [
        tuple(field.mul(v, field.pow(a, r)) for a, v in zip(alphas, multipliers))
        for r in range(k)
    ]
    return LinearCode(field, rows)


def extended_grs(field: FiniteField, k: int, length: int | None = None) -> LinearCode:
    """Singly extended Reed-Solomon code of dimension k.

    The full code has length q+1: evaluations of each degree-<k message
    polynomial at all q field points (canonical order), plus one extra
    coordinate carrying the coefficient of x^(k-1).  Passing ``length``
    n < q+1 deletes trailing evaluation points while keeping the extra
    coordinate; every such prefix stays MDS with distance n - k + 1.
    """
    q = field.q
    if not 1 <= k <= q:
        raise DimensionOutOfRange(f"dimension {k} outside 1..{q}")
    n = q + 1 if length is None else int(length)
    if not k + 1 <= n <= q + 1:
        raise DimensionOutOfRange(f"length {n} outside {k + 1}..{q + 1}")
    points = range(n - 1)
    rows = [
        tuple(field.pow(a, r) for a in points) + ((1,) if r == k - 1 else (0,))
        for r in range(k)
    ]
    return LinearCode(field, rows)


def systematize(lc: LinearCode) -> LinearCode:
    """Row-reduced generator with an identity block on the pivot columns
    (the first k linearly independent columns); same codeword set."""
    lc.require_full_rank()
    reduced, rank, _ = _row_reduce([list(r) for r in lc.gen], lc.field)
    assert rank == lc.k
    return LinearCode(lc.field, reduced[: lc.k])


def parity_block(lc: LinearCode) -> tuple[tuple[int, ...], ...]:
    """The right-hand k x (n-k) block of a generator in strict [I | P] form."""
    k = lc.k
    for i in range(k):
        for j in range(k):
            if lc.gen[i][j] != (1 if i == j else 0):
                raise InvalidParams("generator is not in systematic [I | P] form")
    return tuple(row[k:] for row in lc.gen)


def from_parity_block(field: FiniteField, block: Sequence[Sequence[int]]) -> LinearCode:
    """Assemble the systematic generator [I_k | P] from a parity block P."""
    rows = [tuple(block[i]) for i in range(len(block))]
    k = len(rows)
    gen = [
        tuple(1 if i == j else 0 for j in range(k)) + rows[i]
        for i in range(k)
    ]
    return LinearCode(field, gen)


# ---------------------------------------------------------------------------
# Text format: header "q=<q> k=<k> n=<n>", then k rows of n space-separated
# canonical element encodings.


def generator_to_text(lc: LinearCode) -> str:
    lines = [f"q={lc.field.q} k={lc.k} n={lc.n}"]
    lines.extend(" ".join(str(x) for x in row) for row in lc.gen)
    return "\n".join(lines) + "\n"


def generator_from_text(text: str) -> LinearCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedFile("empty generator file")
    head = lines[0].split()
    if len(head) != 3 or [h[:2] for h in head] != ["q=", "k=", "n="]:
        raise MalformedFile(f"bad generator header: {lines[0]!r}")
    try:
        q, k, n = (int(h[2:]) for h in head)
        rows = [tuple(int(tok) for tok in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise MalformedFile(f"unparseable generator file: {exc}") from exc
    if len(rows) != k or any(len(r) != n for r in rows):
        raise MalformedFile("matrix shape disagrees with header")
    try:
        return LinearCode(make_field(q), rows)
    except InvalidParams as exc:
        raise MalformedFile(str(exc)) from exc


def write_generator(lc: LinearCode, path: str | Path) -> None:
    Path(path).write_text(generator_to_text(lc), encoding="utf-8")


def read_generator(path: str | Path) -> LinearCode:
    return generator_from_text(Path(path).read_text(encoding="utf-8"))
