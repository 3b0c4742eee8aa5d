from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from costaslab.costas import golomb, golomb_enumerate_bruteforce, golomb_generate, welch
from costaslab.ff import PrimeField, binary_field, is_sophie_germain, primes_up_to, primitive_roots
from costaslab.xcorr import (
    APERIODIC,
    CorrelationMode,
    PairScanReport,
    complexity_ratio,
    correlation_surface,
    cross_correlation,
    g2_max_at_origin_shared_b,
    g2_pair_count,
    golomb_pair_scan,
    golomb_pair_scan_aperiodic,
    golomb_pair_scan_bruteforce,
    verify_conjectures,
    verify_thm_gw,
    verify_w1_u_axis_theorem,
    vertical_profile,
    w1_max_at_origin,
    welch_pair_scan,
    welch_pair_scan_bruteforce,
    welch_pair_scan_shift_closed,
)


def psi_oracle(f1, f2, u, v, h=None, w=None):
    """Count i with a dot of f2 at (i+u, f1(i)+v), positions wrapped by h / w."""
    n = len(f1)
    count = 0
    for i in range(1, n + 1):
        j = i + u
        if h is not None:
            j = (j - 1) % h + 1
        if not 1 <= j <= n:
            continue
        y = f1[i - 1] + v
        if w is not None:
            y = (y - 1) % w + 1
        count += f2[j - 1] == y
    return count


# --- single correlations


def test_cross_correlation_examples():
    f1, f2 = [1, 2, 4, 3], [2, 4, 3, 1]
    assert cross_correlation(f1, f1, 0, 0) == 4
    assert cross_correlation(f1, f2, 0, 1) == 1
    assert cross_correlation(f1, f2, 1, 0, CorrelationMode(h_period=4)) == 0


def test_vertical_profile_examples():
    f1, f2 = [1, 2, 4, 3], [2, 4, 3, 1]
    assert vertical_profile(f1, f1, 0) == {0: 4}
    assert vertical_profile(f1, f2, 0) == {1: 1, 2: 1, -1: 1, -2: 1}


@st.composite
def perm_pair(draw, lo=2, hi=9):
    n = draw(st.integers(lo, hi))
    f1 = draw(st.permutations(list(range(1, n + 1))))
    f2 = draw(st.permutations(list(range(1, n + 1))))
    return n, list(f1), list(f2)


@settings(max_examples=200)
@given(perm_pair(), st.integers(-10, 10), st.integers(-10, 10), st.sampled_from(["a", "h", "hv", "h+1", "hv+1"]))
def test_cross_correlation_matches_oracle(pair, u, v, kind):
    n, f1, f2 = pair
    h = w = None
    if kind.startswith("h"):
        h = n + kind.endswith("+1")
    if "v" in kind:
        w = h
    mode = CorrelationMode(h, w)
    assert cross_correlation(f1, f2, u, v, mode) == psi_oracle(f1, f2, u, v, h, w)


@settings(max_examples=200)
@given(perm_pair(), st.integers(-10, 10), st.integers(-10, 10), st.booleans())
def test_symmetry(pair, u, v, periodic):
    n, f1, f2 = pair
    mode = CorrelationMode(n, n) if periodic else APERIODIC
    assert cross_correlation(f1, f2, u, v, mode) == cross_correlation(f2, f1, -u, -v, mode)


def test_symmetry_on_generated_families():
    rng = np.random.default_rng(7)
    for p in primes_up_to(50):
        if p < 5:
            continue
        roots = primitive_roots(p).roots
        for _ in range(20):
            f1 = welch(p, int(rng.choice(roots)), int(rng.integers(p - 1)))
            f2 = welch(p, int(rng.choice(roots)), int(rng.integers(p - 1)))
            u, v = (int(x) for x in rng.integers(-p, p, 2))
            for mode in (APERIODIC, CorrelationMode.welch(p), CorrelationMode(p - 1, p - 1)):
                assert cross_correlation(f1, f2, u, v, mode) == cross_correlation(f2, f1, -u, -v, mode)
        fam = sorted(golomb_enumerate_bruteforce(PrimeField(p)), key=lambda f: f.values)
        mode = CorrelationMode.golomb(p)
        for _ in range(10):
            a, b = rng.integers(len(fam), size=2)
            u, v = (int(x) for x in rng.integers(-p, p, 2))
            assert cross_correlation(fam[a], fam[b], u, v, mode) == cross_correlation(fam[b], fam[a], -u, -v, mode)


def test_conservation_fully_periodic():
    for p in primes_up_to(30):
        if p < 5:
            continue
        n = p - 1
        mode = CorrelationMode(n, n)
        roots = primitive_roots(p).roots
        for g1 in roots:
            for g2 in roots:
                surf = correlation_surface(welch(p, g1), welch(p, g2, 1), mode)
                assert sum(surf.values()) == n * n
        fam = sorted(golomb_enumerate_bruteforce(PrimeField(p)), key=lambda f: f.values)
        gm = CorrelationMode.golomb(p)
        # n-2 dots, each pair of dots meets at one (u, v) in the (p-1) x (p-1) block
        for f1 in fam[:4]:
            for f2 in fam[:4]:
                assert sum(correlation_surface(f1, f2, gm).values()) == (p - 2) ** 2


def test_vertical_profile_agrees_with_cross_correlation():
    for p in primes_up_to(20):
        if p < 5:
            continue
        n = p - 1
        fams = [[welch(p, g, c) for g in primitive_roots(p) for c in range(n)]]
        fams.append(sorted(golomb_enumerate_bruteforce(PrimeField(p)), key=lambda f: f.values))
        for fam, mode in zip(fams, (CorrelationMode.welch(p), CorrelationMode.golomb(p))):
            for f1 in fam[:6]:
                for f2 in fam[:6]:
                    for m in (mode, APERIODIC):
                        us = range(-(len(f1) - 1), len(f1))
                        vs = range(0, n) if m.v_period else range(-(len(f1) - 1), len(f1))
                        for u in us:
                            prof = vertical_profile(f1, f2, u, m)
                            full = {v: cross_correlation(f1, f2, u, v, m) for v in vs}
                            assert prof == {v: c for v, c in full.items() if c}


@settings(max_examples=100)
@given(perm_pair())
def test_horizontal_periodic_profile_sums_to_n(pair):
    n, f1, f2 = pair
    mode = CorrelationMode(h_period=n)
    assert sum(vertical_profile(f1, f2, 0, mode).values()) == n


# --- W1 pair scans


@pytest.mark.parametrize("p,vzero,expected", [(13, True, 6), (11, False, 3), (23, False, 4)])
def test_welch_pair_scan_examples(p, vzero, expected):
    assert welch_pair_scan(p, v_zero_only=vzero).max_value == expected


def test_welch_pair_scan_rejects_tiny():
    with pytest.raises(ValueError):
        welch_pair_scan(3)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
@pytest.mark.parametrize("vzero", [False, True])
def test_welch_fast_scan_matches_bruteforce(p, vzero):
    fast = welch_pair_scan(p, v_zero_only=vzero)
    brute = welch_pair_scan_bruteforce(p, v_zero_only=vzero)
    assert fast.max_value == brute.max_value
    # every reported fast witness is genuine
    for s1, s2, u, v in fast.argmax:
        assert s1.g != s2.g
        got = cross_correlation(welch(s1.p, s1.g, s1.c), welch(s2.p, s2.g, s2.c), u, v, CorrelationMode.welch(p))
        assert got == fast.max_value


@pytest.mark.parametrize("p", [p for p in primes_up_to(31) if p >= 5])
def test_shift_reduction_equivalence(p):
    full = welch_pair_scan_bruteforce(p)
    assert welch_pair_scan_shift_closed(p).max_value == full.max_value
    assert welch_pair_scan(p).max_value == full.max_value


def test_germain_u_axis_max_is_two():
    for p in primes_up_to(100):
        if p >= 5 and is_sophie_germain(p):
            assert welch_pair_scan(p, v_zero_only=True).max_value == 2


# --- G2 pair scans


@pytest.mark.parametrize("p,expected", [(5, 2), (11, 4), (59, 12)])
def test_golomb_pair_scan_examples(p, expected):
    assert golomb_pair_scan(PrimeField(p)).max_value == expected


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_golomb_fast_scan_matches_bruteforce(p):
    fld = PrimeField(p)
    fast = golomb_pair_scan(fld)
    brute = golomb_pair_scan_bruteforce(fld)
    assert fast.max_value == brute.max_value
    mode = CorrelationMode.golomb(p)
    for s1, s2, u, v in fast.argmax:
        f1, f2 = golomb_generate(s1), golomb_generate(s2)
        assert f1 != f2
        assert cross_correlation(f1, f2, u, v, mode) == fast.max_value


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_golomb_aperiodic_scan_matches_bruteforce(p):
    fld = PrimeField(p)
    assert golomb_pair_scan_aperiodic(fld).max_value == golomb_pair_scan_bruteforce(fld, APERIODIC).max_value


def test_golomb_scan_binary_field():
    fld = binary_field(4)
    assert golomb_pair_scan(fld).max_value == golomb_pair_scan_bruteforce(fld).max_value


def test_periodic_convention_against_reference_column():
    # startup self-check: period q-1 on both axes reproduces the reference G2 maxima
    reference = {5: 2, 7: 2, 11: 4, 23: 6}
    for p, want in reference.items():
        assert golomb_pair_scan(PrimeField(p)).max_value == want


def test_report_merge_is_associative_and_sorted():
    a = PairScanReport("W1", 7, pairs_examined=3)
    a.offer(2, ((7, 3, 1), (7, 5, 0), 0, 1))
    b = PairScanReport("W1", 7, pairs_examined=4)
    b.offer(2, ((7, 3, 0), (7, 5, 0), 0, 1))
    c = PairScanReport("W1", 7, pairs_examined=1)
    c.offer(1, ((7, 5, 0), (7, 3, 0), 0, 0))
    left, right = a.merge(b).merge(c), a.merge(b.merge(c))
    assert left == right
    assert left.max_value == 2 and left.pairs_examined == 8
    assert left.argmax == sorted(left.argmax)


# --- theorem verifiers


@pytest.mark.parametrize("p,side", [(13, 6), (11, 2), (23, 2)])
def test_u_axis_examples(p, side):
    v = verify_w1_u_axis_theorem(p)
    assert v.holds and v.lhs == v.rhs == side


def test_u_axis_against_bruteforce():
    for p in primes_up_to(23):
        if p >= 7:
            assert welch_pair_scan_bruteforce(p, v_zero_only=True).max_value == verify_w1_u_axis_theorem(p).rhs


@pytest.mark.parametrize("p", [7, 11, 13])
def test_thm_gw_examples(p):
    assert verify_thm_gw(p).holds


def test_origin_maxima_by_brute_force():
    for p in (7, 11, 13):
        n = p - 1
        roots = primitive_roots(p).roots
        best = max(
            int(np.count_nonzero(welch(p, g1).as_array() == welch(p, g2, c).as_array()))
            for g1 in roots for g2 in roots if g1 != g2 for c in range(n)
        )
        assert w1_max_at_origin(p)[0] == best
        fld = PrimeField(p)
        best = max(
            int(np.count_nonzero(golomb(fld, a, b).as_array() == golomb(fld, a2, b).as_array()))
            for a in roots for a2 in roots if a2 != a for b in roots
        )
        assert g2_max_at_origin_shared_b(fld)[0] == best


def test_thm_gw_rejects_small():
    with pytest.raises(ValueError):
        verify_thm_gw(5)


def test_conjectures_p13():
    rep = verify_conjectures(13)
    assert all(v.holds for v in rep)


def test_conjectures_skips():
    rep = verify_conjectures(11)
    assert [v.status for v in rep] == ["skipped"] * 3
    rep = verify_conjectures(19)
    assert rep.w1_full.status != "skipped"
    assert rep.g2_shared_root.status == rep.w1_vs_g2.status == "skipped"


def test_conjectures_periodic_reading_exceeds_by_one():
    rep = verify_conjectures(13, g2_periodic=True)
    assert rep.g2_shared_root.lhs == rep.g2_shared_root.rhs + 1


# --- cost estimates


@pytest.mark.parametrize("p,expected", [(5, Fraction(8, 5)), (11, Fraction(32, 11)), (227, Fraction(25088, 227))])
def test_complexity_ratio(p, expected):
    assert complexity_ratio(p) == expected


def test_g2_pair_count():
    assert g2_pair_count(5) == 4 * 3
    assert g2_pair_count(227) == 112**4 - 112**2
