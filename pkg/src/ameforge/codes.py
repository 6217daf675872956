"""General block codes over the alphabet {0..d-1}.

A Code is a finite set of equal-length words; it may be nonlinear.  This
module covers Hamming distance, minimum distance, Singleton/MDS verdicts,
orthogonal-array strength, and the puncture / shorten coordinate
reductions.  Codes are immutable, with words kept in sorted order so that
equality, hashing and file output are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    EmptyResult,
    IndexOutOfRange,
    InvalidParams,
    InvalidStrength,
    LengthMismatch,
    MalformedFile,
    TooFewWords,
)

Word = tuple[int, ...]


def hamming_distance(w: Word, v: Word) -> int:
    """Number of coordinates where the two words differ."""
    if len(w) != len(v):
        raise LengthMismatch(f"word lengths differ: {len(w)} vs {len(v)}")
    return sum(a != b for a, b in zip(w, v))


class Code:
    """A set of distinct words of common length n over {0..d-1}.

    The minimum distance is computed lazily and cached; the Singleton bound
    |C| <= d^(n - delta + 1) is asserted whenever it is computed.
    """

    __slots__ = ("words", "n", "d", "_min_distance", "_array")

    def __init__(self, words: Iterable[Iterable[int]], d: int):
        if d < 2:
            raise InvalidParams(f"alphabet size must be >= 2, got {d}")
        ws = sorted({tuple(int(s) for s in w) for w in words})
        if not ws:
            raise InvalidParams("a code must contain at least one word")
        n = len(ws[0])
        for w in ws:
            if len(w) != n:
                raise LengthMismatch("all words must have equal length")
            for s in w:
                if not 0 <= s < d:
                    raise InvalidParams(f"symbol {s} outside alphabet 0..{d - 1}")
        self.words: tuple[Word, ...] = tuple(ws)
        self.n = n
        self.d = d
        self._min_distance: int | None = None
        self._array: np.ndarray | None = None

    @property
    def size(self) -> int:
        return len(self.words)

    def as_array(self) -> np.ndarray:
        """Words as a (size, n) int64 array, row order matching self.words."""
        if self._array is None:
            self._array = np.array(self.words, dtype=np.int64)
        return self._array

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __contains__(self, w) -> bool:
        return tuple(w) in set(self.words)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Code)
            and other.d == self.d
            and other.words == self.words
        )

    def __hash__(self) -> int:
        return hash((self.d, self.words))

    def __repr__(self) -> str:
        return f"Code(n={self.n}, d={self.d}, size={self.size})"


def min_distance(code: Code) -> int:
    """Exact minimum Hamming distance over all pairs of distinct words."""
    if code._min_distance is not None:
        return code._min_distance
    if code.size < 2:
        raise TooFewWords("minimum distance needs at least two words")
    arr = code.as_array()
    best = code.n
    for i in range(code.size - 1):
        dmin = int((arr[i + 1 :] != arr[i]).sum(axis=1).min())
        if dmin < best:
            best = dmin
            if best == 1:
                break
    # Singleton bound, asserted on every (code, delta) pair we produce.
    assert code.size <= code.d ** (code.n - best + 1)
    code._min_distance = best
    return best


@dataclass(frozen=True)
class MdsVerdict:
    """Outcome of the Singleton-bound test for one code."""

    is_mds: bool
    n: int
    d: int
    size: int
    delta: int
    k: float  # log_d(size); an exact integer iff size is a power of d
    ame_relevant: bool  # delta == ceil(n/2) + 1, the distance that yields states


def ame_distance(n: int) -> int:
    """Minimum distance an MDS code needs to support a minimal AME state."""
    return (n + 1) // 2 + 1


def mds_verdict(code: Code) -> MdsVerdict:
    """Test the Singleton bound with equality; reports the AME-relevant flag."""
    delta = min_distance(code)
    size = code.size
    is_mds = size == code.d ** (code.n - delta + 1)
    k = math.log(size, code.d)
    k_round = round(k)
    if code.d**k_round == size:
        k = float(k_round)
    return MdsVerdict(
        is_mds=is_mds,
        n=code.n,
        d=code.d,
        size=size,
        delta=delta,
        k=k,
        ame_relevant=delta == ame_distance(code.n),
    )


def oa_strength_check(code: Code, t: int) -> bool:
    """True iff every projection onto t coordinates hits each t-tuple equally often.

    A necessary condition is d^t dividing |C|; when it fails the answer is
    False without further work.
    """
    if t < 0 or t > code.n:
        raise InvalidStrength(f"strength {t} outside 0..{code.n}")
    if t == 0:
        return True
    cells = code.d**t
    if code.size % cells:
        return False
    lam = code.size // cells
    arr = code.as_array()
    radix = code.d ** np.arange(t - 1, -1, -1, dtype=np.int64)
    for subset in combinations(range(code.n), t):
        idx = arr[:, subset] @ radix
        counts = np.bincount(idx, minlength=cells)
        if not (counts == lam).all():
            return False
    return True


def puncture(code: Code, i: int) -> Code:
    """Delete coordinate i from every word (duplicates merge).

    Whether the size was preserved can be read off by comparing sizes; for
    MDS codes with delta >= 2 it always is.
    """
    if code.n < 2:
        raise InvalidParams("cannot puncture a length-1 code")
    if not 0 <= i < code.n:
        raise IndexOutOfRange(f"coordinate {i} outside 0..{code.n - 1}")
    return Code((w[:i] + w[i + 1 :] for w in code.words), code.d)


def shorten(code: Code, i: int, symbol: int) -> Code:
    """Keep words with the given symbol at coordinate i, then delete it."""
    if code.n < 2:
        raise InvalidParams("cannot shorten a length-1 code")
    if not 0 <= i < code.n:
        raise IndexOutOfRange(f"coordinate {i} outside 0..{code.n - 1}")
    if not 0 <= symbol < code.d:
        raise InvalidParams(f"symbol {symbol} outside alphabet 0..{code.d - 1}")
    kept = [w[:i] + w[i + 1 :] for w in code.words if w[i] == symbol]
    if not kept:
        raise EmptyResult(f"no word carries symbol {symbol} at coordinate {i}")
    return Code(kept, code.d)


def diagonal_code(n: int, d: int) -> Code:
    """The d constant words (i, i, ..., i): an MDS code with delta = n."""
    if n < 1 or d < 2:
        raise InvalidParams("need n >= 1 and d >= 2")
    return Code(((i,) * n for i in range(d)), d)


# ---------------------------------------------------------------------------
# Text format: header "n=<n> d=<d>", then one word per line with symbols as
# space-separated decimal integers.  Round trips are bit-exact because words
# are stored sorted.


def code_to_text(code: Code) -> str:
    lines = [f"n={code.n} d={code.d}"]
    lines.extend(" ".join(str(s) for s in w) for w in code.words)
    return "\n".join(lines) + "\n"


def code_from_text(text: str) -> Code:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedFile("empty code file")
    header = lines[0].split()
    if len(header) != 2 or not header[0].startswith("n=") or not header[1].startswith("d="):
        raise MalformedFile(f"bad code header: {lines[0]!r}")
    try:
        n = int(header[0][2:])
        d = int(header[1][2:])
        words = [tuple(int(tok) for tok in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise MalformedFile(f"unparseable code file: {exc}") from exc
    if any(len(w) != n for w in words):
        raise MalformedFile("word length disagrees with header")
    try:
        return Code(words, d)
    except (InvalidParams, LengthMismatch) as exc:
        raise MalformedFile(str(exc)) from exc


def write_code(code: Code, path: str | Path) -> None:
    Path(path).write_text(code_to_text(code), encoding="utf-8")


def read_code(path: str | Path) -> Code:
    return code_from_text(Path(path).read_text(encoding="utf-8"))
