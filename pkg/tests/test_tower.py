"""Canonical power-form arithmetic against big-integer ground truth."""

import random

import pytest

from exporamsey import (
    CapacityError,
    Caps,
    DomainError,
    EQ,
    GT,
    LT,
    PowerForm,
    compare,
    evaluate,
    normalize,
    power,
    try_evaluate,
)
from exporamsey.tower import (
    ikth_root,
    is_perfect_power,
    perfect_power,
    powerform_from_record,
    powerform_record,
    sorted_forms,
    vertex_label,
)

from oracles import perfect_power_oracle


def test_normalize_examples():
    assert normalize(2) == PowerForm(2, 1)
    assert normalize(256) == PowerForm(2, 8)
    # 36 = 6**2, caught by the brute-force oracle
    assert perfect_power_oracle(36) == (6, 2)
    assert normalize(36) == PowerForm(6, 2)
    assert perfect_power_oracle(72) is None
    assert normalize(72) == PowerForm(72, 1)


def test_normalize_domain_and_capacity():
    with pytest.raises(DomainError):
        normalize(1)
    with pytest.raises(DomainError):
        normalize(0)
    with pytest.raises(CapacityError):
        normalize(1 << 5000)
    assert normalize(1 << 5000, Caps(value_bit_cap=6000)) == PowerForm(2, 5000)


def test_powerform_rejects_non_canonical():
    with pytest.raises(DomainError):
        PowerForm(4, 3)
    with pytest.raises(DomainError):
        PowerForm(2, 0)
    with pytest.raises(DomainError):
        PowerForm(1, 5)


def test_ikth_root_exact():
    rng = random.Random(7)
    for _ in range(2000):
        n = rng.randrange(0, 10 ** 12)
        k = rng.randrange(1, 40)
        r = ikth_root(n, k)
        assert r ** k <= n
        assert (r + 1) ** k > n


def test_perfect_power_against_oracle():
    # full-oracle comparison where the O(sqrt n) oracle is feasible
    for n in range(2, 3000):
        assert perfect_power(n) == perfect_power_oracle(n)


def test_canonicalization_of_large_powers():
    # for huge m**k only the root needs the brute-force check: the root being
    # power-free plus root**exp == n pins the unique canonical form
    rng = random.Random(11)
    for _ in range(300):
        m = rng.randrange(2, 10 ** 4)
        k = rng.randrange(1, 21)
        n = m ** k
        pf = normalize(n, Caps(value_bit_cap=1 << 20))
        assert pf.root ** pf.exponent == n
        assert perfect_power_oracle(pf.root) is None
        assert pf.exponent % k == 0  # m**k structure must be refined, not lost


def test_power_examples():
    assert power(PowerForm(2, 3), PowerForm(2, 2)) == PowerForm(2, 12)
    assert evaluate(PowerForm(2, 12)) == 4096
    assert power(PowerForm(2, 1), PowerForm(2, 1)) == PowerForm(2, 2)
    assert power(PowerForm(3, 1), PowerForm(2, 2)) == PowerForm(3, 4)
    assert evaluate(PowerForm(3, 4)) == 81


def test_power_capacity_errors():
    sym = PowerForm(2, 5000)  # value above the default 4096-bit cap
    with pytest.raises(CapacityError, match="symbolic exponent"):
        power(PowerForm(2, 1), sym)
    tight = Caps(exp_bit_cap=8)
    with pytest.raises(CapacityError):
        power(PowerForm(2, 100), PowerForm(7, 1), tight)


def test_evaluate_examples():
    assert evaluate(PowerForm(2, 8)) == 256
    assert evaluate(PowerForm(3, 4)) == 81
    with pytest.raises(CapacityError):
        evaluate(PowerForm(2, 2 ** 20))
    assert try_evaluate(PowerForm(2, 2 ** 20)) is None


def test_compare_examples():
    assert compare(PowerForm(2, 10), PowerForm(3, 6)) == GT  # 1024 vs 729
    assert compare(PowerForm(2, 8), PowerForm(2, 8)) == EQ
    assert compare(PowerForm(2, 10 ** 6), PowerForm(3, 600000)) == GT
    assert compare(PowerForm(3, 600000), PowerForm(2, 10 ** 6)) == LT


def test_compare_explicit_agreement():
    rng = random.Random(3)
    for _ in range(3000):
        a = normalize(rng.randrange(2, 10 ** 12))
        b = normalize(rng.randrange(2, 10 ** 12))
        va, vb = evaluate(a), evaluate(b)
        want = EQ if va == vb else (LT if va < vb else GT)
        assert compare(a, b) == want


def _random_symbolic(rng):
    roots = [2, 3, 5, 6, 7, 10, 11, 12, 13]
    return PowerForm(rng.choice(roots), rng.randrange(5000, 200000))


def test_compare_symbolic_properties():
    rng = random.Random(5)
    for _ in range(500):
        a, b, c = (_random_symbolic(rng) for _ in range(3))
        assert compare(a, b) == -compare(b, a)
        # transitivity via sorting consistency
        forms = sorted_forms([a, b, c])
        assert compare(forms[0], forms[1]) in (LT, EQ)
        assert compare(forms[1], forms[2]) in (LT, EQ)
        assert compare(forms[0], forms[2]) in (LT, EQ)


def test_compare_close_symbolic_pair():
    # 15601*log2(3) = 24726.99997..., within 3e-5 of an integer, so the
    # interval path has to refine before these separate
    a = PowerForm(2, 24727)
    b = PowerForm(3, 15601)
    assert 2 ** 24727 > 3 ** 15601  # materialized ground truth
    assert compare(a, b) == GT
    assert compare(b, a) == LT


def test_roundtrip_random():
    rng = random.Random(13)
    for _ in range(100000):
        n = rng.randrange(2, 10 ** 9)
        assert evaluate(normalize(n)) == n


def test_canonical_soundness_random():
    rng = random.Random(17)
    for _ in range(300):
        m = rng.randrange(2, 10 ** 4)
        k = rng.randrange(1, 21)
        pf = normalize(m ** k)
        assert perfect_power_oracle(pf.root) is None
        assert pf.root ** pf.exponent == m ** k


def test_pow_soundness_random():
    rng = random.Random(19)
    for _ in range(2000):
        a = rng.randrange(2, 50)
        b = rng.randrange(2, 12)
        if a ** b > 10 ** 18:
            continue
        got = power(normalize(a), normalize(b))
        assert evaluate(got) == a ** b


def test_distinct_canonical_forms_never_equal():
    seen = {}
    for n in range(2, 4000):
        pf = normalize(n)
        assert pf not in seen
        seen[pf] = n


def test_serialization_roundtrip():
    pf = normalize(256)
    rec = powerform_record(pf)
    assert rec == {"root": "2", "exp": "8", "value": "256"}
    assert powerform_from_record(rec) == pf
    sym = PowerForm(2, 5000)
    rec2 = powerform_record(sym)
    assert rec2["value"] is None
    assert powerform_from_record(rec2) == sym
    assert vertex_label(pf) == "256"
    assert vertex_label(sym) == "2^5000"


def test_ordering_dunders():
    forms = [normalize(n) for n in (81, 2, 256, 7, 36)]
    assert [evaluate(f) for f in sorted(forms)] == [2, 7, 36, 81, 256]
    assert normalize(4) < PowerForm(2, 5000)
