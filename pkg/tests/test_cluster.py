import math
import random
from fractions import Fraction

import pytest

from ydilog.cluster import (
    SignCoherenceError,
    initial_seed,
    mutate,
    parse_matrix,
    run_mutation_cycle,
    tropical_sign,
)

PENTAGON_B = ((0, 1), (-1, 0))


def _random_seed(rng, max_rank=4, max_entry=3):
    n = rng.randint(1, max_rank)
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-max_entry, max_entry)
            b[i][j], b[j][i] = v, -v
    y = [math.exp(rng.uniform(-1.0, 1.0)) for _ in range(n)]
    return initial_seed(b, y)


def _reference_mutation(seed, k):
    # Straight re-statement of the exchange rule, kept naive on purpose.
    n = seed.n
    kk = k - 1
    column = [seed.c[i][kk] for i in range(n)]
    eps = 1 if any(v > 0 for v in column) else -1
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == kk or j == kk:
                b[i][j] = -seed.b[i][j]
            else:
                bik, bkj = seed.b[i][kk], seed.b[kk][j]
                correction = (abs(bik) * bkj + bik * abs(bkj)) // 2
                b[i][j] = seed.b[i][j] + correction
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if j == kk:
                c[i][j] = -seed.c[i][j]
            else:
                c[i][j] = seed.c[i][j] + max(eps * seed.b[kk][j], 0) * seed.c[i][kk]
    yk = Fraction(seed.y[kk])
    y = [Fraction(v) for v in seed.y]
    y[kk] = 1 / yk
    for j in range(n):
        if j != kk:
            bkj = seed.b[kk][j]
            y[j] = y[j] * yk ** max(bkj, 0) * (1 + yk) ** (-bkj)
    return b, y, c


def test_rank1_mutation():
    seed = initial_seed([[0]], [1.7])
    assert tropical_sign(seed, 1) == 1
    out = mutate(seed, 1)
    assert abs(out.y[0] - 1 / 1.7) <= 1e-15
    assert out.c == ((-1,),)
    assert tropical_sign(out, 1) == -1


def test_mutation_matches_reference_rule():
    rng = random.Random(99)
    for _ in range(300):
        seed = _random_seed(rng, max_rank=3)
        for _ in range(rng.randint(1, 6)):
            k = rng.randint(1, seed.n)
            ref_b, ref_y, ref_c = _reference_mutation(seed, k)
            seed = mutate(seed, k)
            assert [list(r) for r in seed.b] == ref_b
            assert [list(r) for r in seed.c] == ref_c
            for got, want in zip(seed.y, ref_y):
                assert abs(got - float(want)) <= 1e-9 * max(1.0, float(want))


def test_involution_on_random_seeds():
    rng = random.Random(1)
    for _ in range(500):
        seed = _random_seed(rng)
        k = rng.randint(1, seed.n)
        twice = mutate(mutate(seed, k), k)
        assert twice.b == seed.b
        assert twice.c == seed.c
        for got, want in zip(twice.y, seed.y):
            assert abs(got - want) <= 1e-12 * abs(want)


def test_sign_coherence_along_random_sequences():
    rng = random.Random(2)
    for _ in range(500):
        seed = _random_seed(rng)
        for _ in range(rng.randint(1, 20)):
            seed = mutate(seed, rng.randint(1, seed.n))
            for k in range(1, seed.n + 1):
                assert tropical_sign(seed, k) in (-1, 1)


def test_pentagon_trace():
    # Hand-derived pre-mutation coefficients for y0 = (2, 3):
    # 2, 2, 1/3, 1/8, 1/3 with tropical signs +, +, +, -, -.
    seed = initial_seed(PENTAGON_B, (2.0, 3.0))
    values, signs = [], []
    for k in (1, 2, 1, 2, 1):
        values.append(seed.y[k - 1])
        signs.append(tropical_sign(seed, k))
        seed = mutate(seed, k)
    expect = [2.0, 2.0, 1.0 / 3.0, 1.0 / 8.0, 1.0 / 3.0]
    assert all(abs(g - w) <= 1e-12 for g, w in zip(values, expect))
    assert signs == [1, 1, 1, -1, -1]
    # Final seed is the initial one with the two nodes swapped.
    assert all(abs(g - w) <= 1e-12 * w for g, w in zip(seed.y, (3.0, 2.0)))
    assert seed.b == ((0, -1), (1, 0))
    assert seed.c == ((0, 1), (1, 0))


def test_pentagon_cycle_report():
    report = run_mutation_cycle(PENTAGON_B, (1, 2, 1, 2, 1), (2.0, 3.0))
    assert report.is_periodic
    assert report.period == 5
    assert report.n_minus == 2
    assert report.permutation == (2, 1)
    assert abs(report.normalized_sum - report.n_minus) <= 1e-10


def test_pentagon_tropical_data_independent_of_y0():
    rng = random.Random(8)
    for _ in range(100):
        y0 = (math.exp(rng.uniform(-1, 1)), math.exp(rng.uniform(-1, 1)))
        report = run_mutation_cycle(PENTAGON_B, (1, 2, 1, 2, 1), y0)
        assert report.is_periodic and report.period == 5 and report.n_minus == 2
        assert report.signs == (1, 1, 1, -1, -1)
        assert abs(report.normalized_sum - 2.0) <= 1e-10


def test_rank1_cycle():
    report = run_mutation_cycle(((0,),), (1, 1), (1.9,))
    assert report.is_periodic and report.period == 2
    assert report.signs == (1, -1)
    assert report.n_minus == 1
    assert abs(report.normalized_sum - 1.0) <= 1e-12


def test_decoupled_product_cycle():
    report = run_mutation_cycle(((0, 0), (0, 0)), (1, 2, 1, 2), (0.6, 2.5))
    assert report.is_periodic and report.period == 4
    assert report.n_minus == 2
    assert abs(report.normalized_sum - 2.0) <= 1e-12


def test_non_periodic_sequence():
    report = run_mutation_cycle(PENTAGON_B, (1,), (2.0, 3.0))
    assert not report.is_periodic
    assert report.permutation is None


def test_mutate_rejections():
    seed = initial_seed(PENTAGON_B, (1.0, 1.0))
    with pytest.raises(ValueError):
        mutate(seed, 0)
    with pytest.raises(ValueError):
        mutate(seed, 3)
    with pytest.raises(ValueError):
        initial_seed(((0, 1), (1, 0)), (1.0, 1.0))
    with pytest.raises(ValueError):
        initial_seed(PENTAGON_B, (1.0, -1.0))
    with pytest.raises(ValueError):
        run_mutation_cycle(PENTAGON_B, (), (1.0, 1.0))


def test_tropical_sign_rejects_incoherent_column():
    seed = initial_seed(PENTAGON_B, (1.0, 1.0))
    broken = type(seed)(b=seed.b, y=seed.y, c=((1, 0), (-1, 1)))
    with pytest.raises(SignCoherenceError):
        tropical_sign(broken, 1)


def test_parse_matrix():
    assert parse_matrix("0 1\n-1 0\n") == ((0, 1), (-1, 0))
    assert parse_matrix("\n 0 2 \n\n -2 0 \n") == ((0, 2), (-2, 0))
    with pytest.raises(ValueError):
        parse_matrix("0 1\n-1")
    with pytest.raises(ValueError):
        parse_matrix("a b\nc d")
    with pytest.raises(ValueError):
        parse_matrix("   \n  ")
