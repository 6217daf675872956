"""Linear codes, GRS constructions, and their enumeration oracles."""

from itertools import combinations, product

import pytest

from ameforge import (
    Code,
    LinearCode,
    ame_distance,
    codewords,
    extended_grs,
    generator_from_text,
    generator_to_text,
    grs_code,
    is_mds_linear,
    make_field,
    mds_verdict,
    min_distance,
    min_weight,
    parity_block,
    read_generator,
    systematize,
    write_generator,
)
from ameforge.errors import (
    DimensionOutOfRange,
    DuplicateEvaluationPoint,
    InvalidParams,
    MalformedFile,
    RankDeficient,
    ZeroMultiplier,
)

GF = make_field


def test_codewords_repetition():
    lc = LinearCode(GF(2), [(1, 1, 1)])
    assert codewords(lc) == Code([(0, 0, 0), (1, 1, 1)], 2)


def test_codewords_identity():
    lc = LinearCode(GF(3), [(1, 0), (0, 1)])
    assert codewords(lc) == Code(product(range(3), repeat=2), 3)


def test_codewords_extended_grs_63_over_gf5():
    lc = extended_grs(GF(5), 3)
    code = codewords(lc)
    assert code.size == 125
    assert min_distance(code) == 4  # full enumeration oracle


def test_codewords_rank_deficient():
    lc = LinearCode(GF(3), [(1, 1), (2, 2)])
    with pytest.raises(RankDeficient):
        codewords(lc)


def test_is_mds_linear_examples():
    assert is_mds_linear(LinearCode(GF(7), [(1, 0), (0, 1)]))
    assert not is_mds_linear(LinearCode(GF(7), [(1, 0, 0), (0, 1, 0)]))  # zero column
    lc = grs_code(GF(5), range(5), [1] * 5, 2)
    assert is_mds_linear(lc)
    assert min_distance(codewords(lc)) == 4  # n - k + 1


def test_is_mds_linear_matches_enumeration_verdict():
    instances = [
        LinearCode(GF(2), [(1, 1, 1)]),
        grs_code(GF(3), (0, 1, 2), (1, 1, 1), 2),
        grs_code(GF(5), range(5), (1, 2, 3, 4, 1), 2),
        extended_grs(GF(3), 2),
        extended_grs(GF(5), 3),
        extended_grs(GF(5), 2),
        LinearCode(GF(3), [(1, 1, 0), (0, 1, 1)]),  # not MDS: weight-2 words
    ]
    for lc in instances:
        assert is_mds_linear(lc) == mds_verdict(codewords(lc)).is_mds


def test_grs_examples():
    lc = grs_code(GF(3), (0, 1, 2), (1, 1, 1), 2)
    v = mds_verdict(codewords(lc))
    assert v.is_mds and v.delta == 2

    lc = grs_code(GF(5), range(5), (1, 1, 1, 1, 1), 2)
    v = mds_verdict(codewords(lc))
    assert v.is_mds and v.delta == 4 and v.ame_relevant  # feeds AME(5,5)

    full = grs_code(GF(3), (0, 1, 2), (1, 1, 1), 3)  # k = n: whole space
    v = mds_verdict(codewords(full))
    assert v.delta == 1 and v.size == 27


def test_grs_k1_is_repetition_like():
    for q, n in [(5, 4), (7, 6)]:
        lc = grs_code(GF(q), range(n), [1] * n, 1)
        assert min_distance(codewords(lc)) == n


def test_grs_validation():
    f = GF(5)
    with pytest.raises(DuplicateEvaluationPoint):
        grs_code(f, (0, 0, 1), (1, 1, 1), 2)
    with pytest.raises(ZeroMultiplier):
        grs_code(f, (0, 1, 2), (1, 0, 1), 2)
    with pytest.raises(DimensionOutOfRange):
        grs_code(f, (0, 1, 2), (1, 1, 1), 4)
    with pytest.raises(DimensionOutOfRange):
        grs_code(f, (0, 1, 2), (1, 1, 1), 0)
    with pytest.raises(InvalidParams):
        grs_code(f, (0, 1, 7), (1, 1, 1), 2)


def test_extended_grs_examples():
    v = mds_verdict(codewords(extended_grs(GF(3), 2)))
    assert v.is_mds and v.n == 4 and v.delta == 3 and v.ame_relevant  # feeds AME(4,3)

    v = mds_verdict(codewords(extended_grs(GF(5), 3)))
    assert v.is_mds and v.n == 6 and v.delta == 4  # witnesses max dim-3 length 6

    v = mds_verdict(codewords(extended_grs(GF(5), 2)))
    assert v.is_mds and v.n == 6 and v.delta == 5


def test_extended_grs_prefix_lengths():
    # Deleting trailing evaluation points keeps the code MDS.
    for n in range(4, 7):
        lc = extended_grs(GF(5), 2, length=n)
        assert lc.n == n and is_mds_linear(lc)
        assert min_distance(codewords(lc)) == n - 1
    with pytest.raises(DimensionOutOfRange):
        extended_grs(GF(5), 6)
    with pytest.raises(DimensionOutOfRange):
        extended_grs(GF(5), 2, length=7)
    with pytest.raises(DimensionOutOfRange):
        extended_grs(GF(5), 2, length=2)


def test_systematize_examples():
    ident = LinearCode(GF(5), [(1, 0), (0, 1)])
    assert systematize(ident).gen == ident.gen

    lc = LinearCode(GF(3), [(1, 1), (1, 2)])
    assert systematize(lc).gen == ((1, 0), (0, 1))


def test_systematize_preserves_codewords():
    for lc in [extended_grs(GF(5), 3), grs_code(GF(7), range(6), [1] * 6, 3)]:
        assert codewords(systematize(lc)) == codewords(lc)


def test_systematic_parity_block_minors_all_nonsingular():
    # For an MDS [6,3] the 3x3 parity block must have every square
    # submatrix nonsingular; check all 1x1, 2x2, 3x3 minors by brute force.
    f = GF(5)
    block = parity_block(systematize(extended_grs(f, 3)))
    k, m = 3, 3
    for s in (1, 2, 3):
        for rows in combinations(range(k), s):
            for cols in combinations(range(m), s):
                sub = [[block[r][c] for c in cols] for r in rows]
                if s == 1:
                    assert sub[0][0] != 0
                elif s == 2:
                    assert f.mul(sub[0][0], sub[1][1]) != f.mul(sub[0][1], sub[1][0])
                else:
                    # 3x3: expand along the first row
                    acc = 0
                    for j in range(3):
                        c0, c1 = [c for c in range(3) if c != j]
                        minor = f.sub(
                            f.mul(sub[1][c0], sub[2][c1]), f.mul(sub[1][c1], sub[2][c0])
                        )
                        term = f.mul(sub[0][j], minor)
                        acc = f.add(acc, term if j % 2 == 0 else f.neg(term))
                    assert acc != 0


def test_systematize_rank_deficient():
    with pytest.raises(RankDeficient):
        systematize(LinearCode(GF(3), [(1, 2), (2, 1)]))  # rank 1: row2 = 2*row1


def test_parity_block_requires_systematic_form():
    with pytest.raises(InvalidParams):
        parity_block(LinearCode(GF(3), [(1, 1, 0), (0, 1, 1)]))


def test_constructive_sweep_all_prime_powers():
    # For every prime power d in {3,4,5,7,8,9} and every 4 <= n <= d+1 the
    # extended-GRS code at k = floor(n/2) is MDS with the AME distance.
    for d in (3, 4, 5, 7, 8, 9):
        f = GF(d)
        for n in range(4, d + 2):
            k = n // 2
            lc = extended_grs(f, k, length=n)
            assert is_mds_linear(lc)
            assert min_weight(lc) == ame_distance(n)  # = n - k + 1
            if d**k <= 10_000:
                assert min_distance(codewords(lc)) == ame_distance(n)


def test_min_weight_matches_min_distance():
    for lc in [extended_grs(GF(5), 3), grs_code(GF(3), (0, 1, 2), (1, 2, 1), 2)]:
        assert min_weight(lc) == min_distance(codewords(lc))


def test_generator_file_round_trip(tmp_path):
    lc = extended_grs(GF(5), 3)
    path = tmp_path / "egrs.gen"
    write_generator(lc, path)
    text = path.read_text()
    assert text.splitlines()[0] == "q=5 k=3 n=6"
    back = read_generator(path)
    assert back == lc
    assert generator_to_text(back) == text


def test_generator_file_malformed():
    with pytest.raises(MalformedFile):
        generator_from_text("")
    with pytest.raises(MalformedFile):
        generator_from_text("q=5 k=2 n=3\n1 0 0\n")  # one row missing
    with pytest.raises(MalformedFile):
        generator_from_text("q=5 k=1 n=3\n1 0 9\n")  # entry outside field


def test_linear_code_validation():
    with pytest.raises(InvalidParams):
        LinearCode(GF(3), [(0, 3)])
    with pytest.raises(InvalidParams):
        LinearCode(GF(3), [])
