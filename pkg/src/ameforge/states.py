"""Minimal-support AME states and their verification.

A pure state of n qudits with local dimension d is absolutely maximally
entangled when every reduction to m <= floor(n/2) sites is the maximally
mixed state.  States here are sparse: a map from basis words to complex
amplitudes.  Two verifiers are provided and must agree on every
uniform-amplitude state:

* combinatorial — exact integer counting on the support: the projection
  onto each small subset must be uniform and the projection onto each large
  complement must be injective;
* dense — floating-point marginals: for each subset the reduced density
  matrix is compared entrywise against identity/d^m.  Marginals are
  assembled from the sparse ket map (pairing words that agree outside the
  subset), so no d^n-sized object is ever built.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Mapping

import numpy as np

from .bounds import known_max_sites, necessary_condition
from .codes import Code, Word, ame_distance, diagonal_code, mds_verdict, puncture, shorten
from .errors import (
    BadSubset,
    BudgetExceeded,
    InvalidParams,
    MalformedFile,
    NonUniformSupport,
    NotAmeRelevantMds,
    NotConstructible,
    VerificationFailed,
    WrongSupportSize,
)
from .fields import is_prime_power, make_field
from .linear import codewords, extended_grs

NORM_TOL = 1e-12
DENSE_TOL = 1e-12
#: Ceiling on sum of squared group sizes when pairing words outside a subset.
PAIR_WORK_LIMIT = 50_000_000


class AmeState:
    """Sparse pure state: basis words of length n over {0..d-1} -> amplitude.

    Amplitudes must be normalized (sum of squared magnitudes 1 within 1e-12);
    exact zeros are dropped from the support.  Kets are kept sorted by word.
    """

    __slots__ = ("n", "d", "words", "amplitudes", "_array")

    def __init__(self, n: int, d: int, kets: Mapping[Word, complex]):
        if n < 1 or d < 2:
            raise InvalidParams("need n >= 1 and d >= 2")
        items = sorted((tuple(int(s) for s in w), complex(a)) for w, a in kets.items() if a != 0)
        if not items:
            raise InvalidParams("state has empty support")
        for w, _ in items:
            if len(w) != n:
                raise InvalidParams(f"ket {w} does not have length {n}")
            if any(not 0 <= s < d for s in w):
                raise InvalidParams(f"ket {w} has symbols outside 0..{d - 1}")
        total = sum(abs(a) ** 2 for _, a in items)
        if abs(total - 1.0) > NORM_TOL:
            raise InvalidParams(f"state is not normalized: sum |a|^2 = {total!r}")
        self.n = n
        self.d = d
        self.words: tuple[Word, ...] = tuple(w for w, _ in items)
        self.amplitudes: tuple[complex, ...] = tuple(a for _, a in items)
        self._array: np.ndarray | None = None

    @property
    def support_size(self) -> int:
        return len(self.words)

    def kets(self) -> Iterator[tuple[Word, complex]]:
        return zip(self.words, self.amplitudes)

    def support_array(self) -> np.ndarray:
        if self._array is None:
            self._array = np.array(self.words, dtype=np.int64)
        return self._array

    def uniform_magnitude(self) -> float | None:
        """Common |amplitude| when magnitudes are uniform (within 1e-12), else None."""
        mags = [abs(a) for a in self.amplitudes]
        m0 = mags[0]
        return m0 if all(abs(m - m0) <= NORM_TOL for m in mags) else None

    def __repr__(self) -> str:
        return f"AmeState(n={self.n}, d={self.d}, support={self.support_size})"


@dataclass(frozen=True)
class BipartitionReport:
    """Deviation of one marginal from the maximally mixed state."""

    sites: tuple[int, ...]  # the traced-onto subset B, sorted
    m: int
    deviation: float  # max absolute entrywise deviation from identity/d^m
    passed: bool


def minimal_support_size(n: int, d: int) -> int:
    return d ** (n // 2)


def bipartitions(n: int) -> Iterator[tuple[int, ...]]:
    """All site subsets B with 1 <= |B| <= floor(n/2), lexicographic."""
    for m in range(1, n // 2 + 1):
        yield from combinations(range(n), m)


def _check_subset(n: int, sites: Iterable[int]) -> tuple[int, ...]:
    b = tuple(int(i) for i in sites)
    if len(set(b)) != len(b) or any(not 0 <= i < n for i in b):
        raise BadSubset(f"subset {b} is not a set of sites in 0..{n - 1}")
    return tuple(sorted(b))


def _pack(arr: np.ndarray, subset: tuple[int, ...], d: int) -> np.ndarray:
    """Mixed-radix packing of the chosen columns into a single int64 index."""
    if d ** len(subset) >= 2**62:
        raise BudgetExceeded("subset too large to index")
    if not subset:
        return np.zeros(len(arr), dtype=np.int64)
    radix = d ** np.arange(len(subset) - 1, -1, -1, dtype=np.int64)
    return arr[:, subset] @ radix


def _collision_groups(group_ids: np.ndarray) -> list[np.ndarray]:
    """Indices grouped by equal id, returning only groups of size >= 2.

    Most marginals of a healthy state have no collisions at all, so the
    common path is a single vectorized comparison.
    """
    order = np.argsort(group_ids, kind="stable")
    sorted_ids = group_ids[order]
    dup = sorted_ids[1:] == sorted_ids[:-1]
    if not dup.any():
        return []
    starts = np.concatenate(([0], np.flatnonzero(~dup) + 1))
    ends = np.concatenate((starts[1:], [len(sorted_ids)]))
    return [order[s:e] for s, e in zip(starts, ends) if e - s > 1]


# ---------------------------------------------------------------------------
# Code <-> state correspondence


def state_from_code(code: Code) -> AmeState:
    """Uniform-amplitude state on the codewords of an AME-relevant MDS code.

    The code must be MDS with minimum distance ceil(n/2) + 1, which forces
    exactly d^floor(n/2) words; each ket gets the real positive amplitude
    d^(-floor(n/2)/2).
    """
    verdict = mds_verdict(code)
    need = ame_distance(code.n)
    if not verdict.is_mds:
        raise NotAmeRelevantMds(
            f"code is not MDS: size {verdict.size} != {code.d}^({code.n}-{verdict.delta}+1)"
        )
    if verdict.delta != need:
        raise NotAmeRelevantMds(
            f"minimum distance {verdict.delta} != ceil(n/2)+1 = {need}"
        )
    want = minimal_support_size(code.n, code.d)
    if verdict.size != want:
        raise NotAmeRelevantMds(f"support {verdict.size} != d^floor(n/2) = {want}")
    amp = 1.0 / math.sqrt(want)
    return AmeState(code.n, code.d, {w: amp for w in code.words})


def code_from_state(state: AmeState) -> Code:
    """The support of a uniform-magnitude minimal-support state, as a Code."""
    if state.uniform_magnitude() is None:
        raise NonUniformSupport("amplitude magnitudes are not uniform")
    want = minimal_support_size(state.n, state.d)
    if state.support_size != want:
        raise WrongSupportSize(f"support {state.support_size} != d^floor(n/2) = {want}")
    return Code(state.words, state.d)


# ---------------------------------------------------------------------------
# Verifiers


def verify_uniform_combinatorial(state: AmeState) -> list[BipartitionReport]:
    """Exact verification for uniform-magnitude states, one report per subset.

    For a subset B of size m with complement A, the marginal is identity/d^m
    exactly when (a) the support projects onto B uniformly (each of the d^m
    tuples hit support/d^m times) and (b) the projection onto A is injective
    (no off-diagonal pairs).  Deviations are exact rationals reported as
    floats: 0.0 means a perfect marginal, anything else counts a defect.

    With nonuniform phases a non-injective projection could in principle
    still cancel to a clean marginal; this verifier deliberately reports the
    combinatorial defect (the dense verifier is the arbiter in that exotic
    regime, which minimal-support analysis never enters).
    """
    if state.uniform_magnitude() is None:
        raise NonUniformSupport("combinatorial verification needs uniform magnitudes")
    arr = state.support_array()
    size = state.support_size
    d = state.d
    reports = []
    for b in bipartitions(state.n):
        m = len(b)
        a = tuple(i for i in range(state.n) if i not in b)
        cells = d**m
        b_idx = _pack(arr, b, d)
        counts = np.bincount(b_idx, minlength=cells)
        diag_num = int(np.abs(counts * cells - size).max())
        if size % cells:
            diag_num = max(diag_num, 1)  # cannot be uniform at all
        deviation = Fraction(diag_num, size * cells)
        groups = _collision_groups(_pack(arr, a, d))
        work = sum(len(g) * (len(g) - 1) for g in groups)
        if work > PAIR_WORK_LIMIT:
            raise BudgetExceeded(f"off-diagonal pair work {work} exceeds limit")
        pair_cells: Counter = Counter()
        for g in groups:
            for i in g:
                for j in g:
                    if i != j:
                        pair_cells[(int(b_idx[i]), int(b_idx[j]))] += 1
        if pair_cells:
            deviation = max(deviation, Fraction(max(pair_cells.values()), size))
        reports.append(
            BipartitionReport(sites=b, m=m, deviation=float(deviation), passed=deviation == 0)
        )
    return reports


def _marginal_cells(
    state: AmeState, b: tuple[int, ...]
) -> tuple[np.ndarray, dict[tuple[int, int], complex]]:
    """Diagonal of the marginal over B (length d^m) plus nonzero off-diagonal cells.

    Words are grouped by their projection onto the complement of B; only
    pairs inside a group contribute, which is what keeps the computation
    sparse.
    """
    arr = state.support_array()
    d = state.d
    a = tuple(i for i in range(state.n) if i not in b)
    cells = d ** len(b)
    if cells > 100_000_000:
        raise BudgetExceeded(f"marginal diagonal of size {cells} exceeds limit")
    amps = np.array(state.amplitudes, dtype=np.complex128)
    b_idx = _pack(arr, b, d)
    diag = np.bincount(b_idx, weights=np.abs(amps) ** 2, minlength=cells)
    groups = _collision_groups(_pack(arr, a, d))
    work = sum(len(g) * (len(g) - 1) for g in groups)
    if work > PAIR_WORK_LIMIT:
        raise BudgetExceeded(f"off-diagonal pair work {work} exceeds limit")
    off: dict[tuple[int, int], complex] = {}
    for g in groups:
        for i in g:
            for j in g:
                if i != j:
                    cell = (int(b_idx[i]), int(b_idx[j]))
                    off[cell] = off.get(cell, 0j) + amps[i] * np.conj(amps[j])
    return diag, off


def verify_uniform_dense(
    state: AmeState, tolerance: float = DENSE_TOL
) -> list[BipartitionReport]:
    """Floating-point verification: entrywise deviation of each marginal from
    identity/d^m, one report per subset B with |B| <= floor(n/2)."""
    reports = []
    d = state.d
    for b in bipartitions(state.n):
        m = len(b)
        diag, off = _marginal_cells(state, b)
        deviation = float(np.abs(diag - 1.0 / d**m).max())
        if off:
            deviation = max(deviation, max(abs(v) for v in off.values()))
        reports.append(
            BipartitionReport(sites=b, m=m, deviation=deviation, passed=deviation <= tolerance)
        )
    return reports


def reduced_density(
    state: AmeState, sites: Iterable[int], max_entries: int = 10_000_000
) -> np.ndarray:
    """Materialized marginal over the given sites (d^|B| square, Hermitian,
    trace 1 within 1e-12), assembled from the sparse ket map."""
    b = _check_subset(state.n, sites)
    d = state.d
    dim = d ** len(b)
    if dim * dim > max_entries:
        raise BudgetExceeded(f"marginal would hold {dim * dim} entries (limit {max_entries})")
    arr = state.support_array()
    amps = np.array(state.amplitudes, dtype=np.complex128)
    a = tuple(i for i in range(state.n) if i not in b)
    b_idx = _pack(arr, b, d)
    rho = np.zeros((dim, dim), dtype=np.complex128)
    np.add.at(rho, (b_idx, b_idx), np.abs(amps) ** 2)
    for g in _collision_groups(_pack(arr, a, d)):
        idx = b_idx[g]
        vec = amps[g]
        outer = vec[:, None] * np.conj(vec)[None, :]
        np.fill_diagonal(outer, 0)
        np.add.at(rho, (idx[:, None], idx[None, :]), outer)
    return rho


# ---------------------------------------------------------------------------
# Reduction n -> n-1 and construction


def reduce_ame(state: AmeState) -> AmeState:
    """From a verified minimal-support AME(n, d) make a verified AME(n-1, d).

    Realized on the associated code: puncture the last coordinate when n is
    odd (support size unchanged), shorten it at symbol 0 when n is even
    (support shrinks by a factor d).  Both input and output must pass the
    combinatorial verifier.
    """
    if state.n < 3:
        raise InvalidParams("reduction needs n >= 3")
    if state.uniform_magnitude() is None:
        raise VerificationFailed("input state does not have uniform magnitudes")
    if state.support_size != minimal_support_size(state.n, state.d):
        raise VerificationFailed("input state does not have minimal support")
    if not all(r.passed for r in verify_uniform_combinatorial(state)):
        raise VerificationFailed("input state fails AME verification")
    code = code_from_state(state)
    if state.n % 2:
        smaller = puncture(code, state.n - 1)
    else:
        smaller = shorten(code, state.n - 1, 0)
    try:
        reduced = state_from_code(smaller)
    except NotAmeRelevantMds as exc:
        raise VerificationFailed(f"reduced code lost the AME property: {exc}") from exc
    if not all(r.passed for r in verify_uniform_combinatorial(reduced)):
        raise VerificationFailed("reduced state fails AME verification")
    return reduced


def construct_minimal_ame(n: int, d: int) -> AmeState:
    """Build and verify a minimal-support AME(n, d) state, or refuse.

    n = 2, 3 use the diagonal (pair / GHZ-type) code for any d; n >= 4 uses
    an extended Reed-Solomon code of dimension floor(n/2) and needs d to be
    a prime power with d >= n - 1.  Refusals carry the governing reason:
    the necessary condition, a known nonexistence value N(d), or simply no
    construction in scope.
    """
    if n < 2 or d < 2:
        raise InvalidParams("need n >= 2 and d >= 2")
    cond = necessary_condition(n, d)
    if not cond.allowed:
        raise NotConstructible("necessary-condition", cond.explanation)
    if n <= 3:
        code = diagonal_code(n, d)
    else:
        top = known_max_sites(d)
        if top is not None and n > top:
            raise NotConstructible(
                "nonexistence",
                f"known nonexistence result: no minimal-support AME({n},{d}) state "
                f"exists because N({d}) = {top} (the necessary condition alone does "
                f"not forbid it, which shows that condition is not sufficient)",
            )
        if not is_prime_power(d):
            raise NotConstructible(
                "no-construction",
                f"no construction available: d = {d} is not a prime power, so the "
                f"Reed-Solomon route does not apply",
            )
        if d < n - 1:
            raise NotConstructible(
                "no-construction",
                f"outside constructive scope: the extended Reed-Solomon construction "
                f"needs d >= n - 1 (here d = {d}, n - 1 = {n - 1}); existence is "
                f"unsettled for this pair",
            )
        code = codewords(extended_grs(make_field(d), n // 2, length=n))
    state = state_from_code(code)
    if not all(r.passed for r in verify_uniform_combinatorial(state)):
        raise VerificationFailed(f"constructed AME({n},{d}) candidate failed verification")
    return state


# ---------------------------------------------------------------------------
# Text format: header "n=<n> d=<d>", then one ket per line: the n symbols,
# then real and imaginary amplitude parts (repr round-trip exact).


def state_to_text(state: AmeState) -> str:
    lines = [f"n={state.n} d={state.d}"]
    for w, amp in state.kets():
        lines.append(" ".join(str(s) for s in w) + f" {amp.real!r} {amp.imag!r}")
    return "\n".join(lines) + "\n"


def state_from_text(text: str) -> AmeState:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedFile("empty state file")
    head = lines[0].split()
    if len(head) != 2 or not head[0].startswith("n=") or not head[1].startswith("d="):
        raise MalformedFile(f"bad state header: {lines[0]!r}")
    try:
        n = int(head[0][2:])
        d = int(head[1][2:])
    except ValueError as exc:
        raise MalformedFile(f"unparseable state header: {exc}") from exc
    kets: dict[Word, complex] = {}
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != n + 2:
            raise MalformedFile(f"expected {n} symbols + re + im, got {ln!r}")
        try:
            word = tuple(int(t) for t in toks[:n])
            amp = complex(float(toks[n]), float(toks[n + 1]))
        except ValueError as exc:
            raise MalformedFile(f"unparseable ket line {ln!r}") from exc
        if word in kets:
            raise MalformedFile(f"duplicate ket {word}")
        kets[word] = amp
    try:
        return AmeState(n, d, kets)
    except InvalidParams as exc:
        raise MalformedFile(str(exc)) from exc


def write_state(state: AmeState, path: str | Path) -> None:
    Path(path).write_text(state_to_text(state), encoding="utf-8")


def read_state(path: str | Path) -> AmeState:
    return state_from_text(Path(path).read_text(encoding="utf-8"))


def reports_to_jsonable(reports: Iterable[BipartitionReport]) -> list[dict]:
    return [
        {"subset": list(r.sites), "m": r.m, "deviation": r.deviation, "pass": r.passed}
        for r in reports
    ]
