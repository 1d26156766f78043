import pytest

from nestkit import auto_nest, check_conditions, enumerate_open, f_value, verify_nesting
from nestkit.conditions import ceil_div, thm8_witness
from nestkit.errors import IndexOutOfRange, InvalidTuple
from nestkit.generators import GenSpec, random_nm_poset

LEGACY_OPEN = [(6, 8, 12), (6, 9, 12), (4, 6, 13), (5, 8, 13), (6, 8, 13), (6, 9, 13)]
THM8_TUPLES = [(4, 9, 14), (3, 7, 15), (4, 9, 15), (5, 11, 15)]


def test_ceil_div():
    assert [ceil_div(a, 4) for a in (0, 1, 4, 5, 8)] == [0, 1, 1, 2, 2]


def test_f_value_examples():
    assert f_value(6, 8, 12, 1) == -1
    assert f_value(3, 7, 15, 3) == -1


def test_f_value_range():
    with pytest.raises(IndexOutOfRange):
        f_value(6, 8, 12, 0)
    with pytest.raises(IndexOutOfRange):
        f_value(6, 8, 12, 2)
    with pytest.raises(IndexOutOfRange):
        f_value(3, 4, 9, 1)


def test_empty_f_list_is_vacuous():
    report = check_conditions(3, 4, 9)
    assert report.f_values == [] and report.thm5["c"]


@pytest.mark.parametrize("r0, r1, r2", [(0, 1, 2), (3, 3, 5), (2, 5, 4), (4, 6, 6)])
def test_invalid_tuple(r0, r1, r2):
    with pytest.raises(InvalidTuple):
        check_conditions(r0, r1, r2)


def test_4_6_13_only_thm7():
    report = check_conditions(4, 6, 13)
    assert report.satisfied() == ["thm7"]
    assert report.thm7_quotients == (3, 2)


def test_6_8_12_open():
    report = check_conditions(6, 8, 12)
    assert not report.any_satisfied
    assert report.f_values == [-1]


@pytest.mark.parametrize("t", THM8_TUPLES)
def test_thm8_only(t):
    report = check_conditions(*t)
    assert report.satisfied() == ["thm8"]
    assert report.thm8_k == 2
    assert report.thm8_t == t[1] - 2 * t[0]


def test_thm8_endpoints_flagged():
    # r1 = 2 r0 coincides with thm5a but thm8 still reports it
    report = check_conditions(3, 6, 10)
    assert report.flags["thm5a"] and report.flags["thm8"]
    assert thm8_witness(3, 6) == 2
    assert thm8_witness(3, 6, strict=True) is None


def test_thm8_smallest_witness():
    # 4 <= 5 <= 6 (k=2) and 6 > 5 so k=2 is the only one for (2,5); (1, r1) always has k=ceil(r1/2)
    assert thm8_witness(2, 5) == 2
    assert thm8_witness(1, 7) == 4
    assert thm8_witness(6, 8) is None


def test_any_satisfied_is_or_of_flags():
    for r2 in range(3, 16):
        for r0 in range(1, r2 - 1):
            for r1 in range(r0 + 1, r2):
                report = check_conditions(r0, r1, r2)
                assert report.any_satisfied == any(report.flags.values())
                assert len(report.f_values) == max(0, r1 - r0 - 1)
                assert report.thm5["c"] == all(v >= 0 for v in report.f_values)


def test_thm4c_monotone_in_r2():
    for r0 in range(1, 7):
        for r1 in range(r0 + 1, 10):
            flags = [check_conditions(r0, r1, r2).flags["thm4c"] for r2 in range(r1 + 1, 60)]
            assert flags == sorted(flags)


def test_thm5d_threshold():
    # the gcd term makes thm5d non-monotone: 12 > 16 - 8 but 13 > 16 - 2 fails
    assert check_conditions(2, 8, 12).flags["thm5d"]
    assert not check_conditions(2, 8, 13).flags["thm5d"]
    # past r0 r1 - r0 the flag holds for every r2, whatever the gcd
    for r0 in range(1, 7):
        for r1 in range(r0 + 1, 10):
            for r2 in range(max(r1 + 1, r0 * r1 - r0 + 1), 60):
                assert check_conditions(r0, r1, r2).flags["thm5d"]


def test_enumerate_open_legacy():
    assert enumerate_open(13, "legacy") == LEGACY_OPEN
    assert enumerate_open(11, "legacy") == []


def test_enumerate_open_all():
    assert enumerate_open(13) == [t for t in LEGACY_OPEN if t != (4, 6, 13)]
    assert enumerate_open(3) == []
    assert not set(THM8_TUPLES) & set(enumerate_open(15))


def test_enumerate_open_sorted():
    out = enumerate_open(20)
    assert out == sorted(out, key=lambda t: (t[2], t[0], t[1]))


def test_enumerate_open_bad_flag():
    with pytest.raises(ValueError):
        enumerate_open(13, "new")


def test_satisfied_tuples_nest():
    for r2 in range(3, 7):
        for r0 in range(1, r2 - 1):
            for r1 in range(r0 + 1, r2):
                if not check_conditions(r0, r1, r2).any_satisfied:
                    continue
                for seed in range(2):
                    P = random_nm_poset(GenSpec((r0, r1, r2, r0), seed, 0.5))
                    assert verify_nesting(P, auto_nest(P)).ok
