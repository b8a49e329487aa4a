import itertools
import random

import pytest

from lingrowth.exactfield import QQ, FieldDescriptor, FieldError
from lingrowth.linalg import Matrix
from lingrowth.recurrence import (
    LinearRecurrence,
    SMLSet,
    berlekamp_massey,
    companion_matrix,
    from_orbit,
    minimal_recurrence,
    recurrence_with_zero_set,
    sml_detect,
    terms,
    zero_set,
)

F11 = FieldDescriptor.prime_field(11)
F7x = FieldDescriptor.rational_functions(7)
FIB = LinearRecurrence.make(QQ, [1, 1], [1, 1])
D3 = LinearRecurrence.make(QQ, [2, 1, -2], [1, 0, 4])


def ints(seq):
    return [int(str(a)) for a in seq]


def test_terms_examples():
    assert ints(terms(FIB, 6)) == [1, 1, 2, 3, 5, 8, 13]
    assert ints(terms(D3, 5)) == [1, 0, 4, 6, 16, 30]
    assert ints(terms(D3, 30)) == [2 ** n + (-1) ** n - 1 for n in range(31)]
    zero = LinearRecurrence.make(QQ, [3, 1], [0, 0])
    assert all(a.is_zero() for a in terms(zero, 10))


def test_recurrence_validation():
    with pytest.raises(ValueError):
        LinearRecurrence.make(QQ, [1, 1], [1])
    with pytest.raises(ValueError):
        LinearRecurrence.make(QQ, [], [])
    with pytest.raises(FieldError):
        LinearRecurrence(QQ, (F11.one(),), (QQ.one(),))
    assert LinearRecurrence.from_json(D3.to_json()) == D3


def test_companion():
    assert companion_matrix(FIB) == Matrix.from_rows(QQ, [[0, 1], [1, 1]])
    assert companion_matrix(LinearRecurrence.make(QQ, [5], [1])) == Matrix.from_rows(QQ, [[5]])
    M = companion_matrix(D3)
    seq = terms(D3, 13)
    for n in range(11):
        assert M.apply(seq[n : n + 3]) == tuple(seq[n + 1 : n + 4])


def test_zero_sets():
    assert zero_set(FIB, 40) == set()
    assert zero_set(D3, 40) == {1}
    x = F7x.gen()
    lech = LinearRecurrence(
        F7x,
        (2 * x + 2, -(x * x + 3 * x + 1), x * x + x),  # roots x+1, x, 1
        ((x + 1) ** 0 - 1 - 1, x + 1 - x - 1, (x + 1) ** 2 - x * x - 1),
    )
    seq = terms(lech, 12)
    assert seq == [(x + 1) ** n - x ** n - 1 for n in range(13)]
    assert zero_set(lech, 60) == {1, 7, 49}


def _brute_min_order(seq):
    """Smallest d admitting coefficients that regenerate ``seq`` (tiny F_p brute force)."""
    fd = seq[0].field
    for d in range(0, len(seq) // 2 + 1):
        if d == 0:
            if all(a.is_zero() for a in seq):
                return 0
            continue
        for coeffs in itertools.product(range(fd.p), repeat=d):
            cs = [fd.from_int(c) for c in coeffs]
            if all(seq[n] == sum((cs[i] * seq[n - 1 - i] for i in range(d)), fd.zero()) for n in range(d, len(seq))):
                return d
    return None


def test_berlekamp_massey_against_brute_force():
    F5 = FieldDescriptor.prime_field(5)
    rng = random.Random(2)
    for _ in range(150):
        d = rng.randint(1, 3)
        rec = LinearRecurrence.make(F5, [rng.randrange(5) for _ in range(d)], [rng.randrange(5) for _ in range(d)])
        seq = terms(rec, 9)
        L, C = berlekamp_massey(seq)
        want = _brute_min_order(seq)
        assert L == want
        fit = minimal_recurrence(seq)
        assert terms(fit, 9) == seq
        assert fit.order == max(L, 1)


def test_minimal_recurrence_examples():
    fib = minimal_recurrence([QQ.from_int(v) for v in (1, 1, 2, 3, 5, 8, 13, 21)])
    assert fib.order == 2 and ints(fib.coeffs) == [1, 1]
    const = minimal_recurrence([QQ.from_int(5)] * 4)
    assert const.order == 1 and ints(const.coeffs) == [1]
    d3 = minimal_recurrence(terms(D3, 11))
    assert d3.order == 3 and ints(d3.coeffs) == [2, 1, -2]
    zeros = minimal_recurrence([QQ.zero()] * 6)
    assert zeros.order == 1 and all(a.is_zero() for a in terms(zeros, 8))
    assert minimal_recurrence([QQ.from_int(v) for v in (0, 0, 0, 1)]) is None


def test_from_orbit():
    seq, rec = from_orbit([1, 0], Matrix.from_rows(QQ, [[0, 1], [1, 1]]), [0, 1], 10)
    assert ints(seq) == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    seq, rec = from_orbit([1, 2, 3], Matrix.identity(QQ, 3), [1, 1, 1], 5)
    assert ints(seq) == [6] * 6 and rec.order == 1
    seq, rec = from_orbit([1, 0], Matrix.identity(QQ, 2), [1, 1], 1)
    assert rec.order == 1


def test_sml_set_normalization():
    s = SMLSet((1, 12, 3), ((2, 10),))
    assert s.finite == (1, 3) and 12 in s and 22 in s and 13 not in s
    assert s.preperiod == 4 and s.period == 10
    assert SMLSet.from_json(s.to_json()) == s
    with pytest.raises(ValueError):
        SMLSet((), ((1, 0),))


def test_sml_detect_examples():
    assert sml_detect([False] * 20, 3) == SMLSet()
    assert sml_detect([True] * 20, 3) == SMLSet((), ((0, 1),))
    bits = [n == 1 or n % 10 == 2 for n in range(60)]
    assert sml_detect(bits, 3) == SMLSet((1,), ((2, 10),))
    assert sml_detect([n in (1, 7, 49) for n in range(60)], 3) is None
    assert sml_detect([n in (1, 7) for n in range(28)], 3) is None
    assert sml_detect([n == 1 for n in range(28)], 3) == SMLSet((1,))
    with pytest.raises(ValueError):
        sml_detect([True], 0)


def test_sml_detect_post_condition():
    rng = random.Random(4)
    for _ in range(300):
        bits = [rng.random() < 0.3 for _ in range(rng.randint(1, 40))]
        guard = rng.randint(1, 4)
        s = sml_detect(bits, guard)
        if s is not None:
            assert s.indicator(len(bits)) == bits


def test_recurrence_with_zero_set_examples():
    rec = recurrence_with_zero_set([3], [], QQ, theta=QQ.from_int(2))
    assert ints(terms(rec, 8)) == [2 ** n - 8 for n in range(9)]
    assert zero_set(rec, 60) == {3}
    rec = recurrence_with_zero_set([], [(0, 5)], F11)
    assert zero_set(rec, 60) == set(range(0, 61, 5))
    F11x = FieldDescriptor.rational_functions(11)
    rec = recurrence_with_zero_set([3], [(0, 5)], F11x)
    assert rec.order <= 4
    assert zero_set(rec, 60) == {3} | set(range(0, 61, 5))


def test_recurrence_with_zero_set_random():
    rng = random.Random(6)
    F31 = FieldDescriptor.prime_field(31)  # 31 - 1 = 30 has many divisors
    for _ in range(25):
        singles = sorted(rng.sample(range(12), rng.randint(0, 2)))
        progs = [(rng.randrange(8), rng.choice([1, 2, 3, 5, 6]))] if rng.random() < 0.7 else []
        fd = QQ if all(d <= 2 for _, d in progs) and rng.random() < 0.5 else F31
        if fd is F31 and singles:
            fd = FieldDescriptor.rational_functions(31)
        rec = recurrence_with_zero_set(singles, progs, fd)
        want = set(singles) | {n for n in range(50) for s, d in progs if n >= s and (n - s) % d == 0}
        assert zero_set(rec, 49) == want
