import math

import numpy as np
import pytest

from lozilab import (GeometryError, Params, SOLVED_C0, attractor_orbit, compare_sequences, fixed_points, itinerary,
                     kneading_sequence, period2_point, precision, reliable_length)
from lozilab.core import max_expansion
from lozilab.geometry import d_orbit
from lozilab.symbolic import AMBIGUOUS, SymbolSequence, agreement_radius, orbit_symbols, point_kneading, symbol

from conftest import sample_admissible

S_C0 = "+--+++-+-+-+++-++"
S_C01 = "+--+++-+-+-+++++-"


def test_symbol_band():
    assert symbol(1e-3) == "+" and symbol(-1e-3) == "-"
    assert symbol(5e-13) == AMBIGUOUS and symbol(0.0) == AMBIGUOUS


def test_fixed_and_periodic_itineraries(ref):
    fp = fixed_points(ref)
    assert itinerary(ref, fp.X.point, 20).symbols == "+" * 20
    assert itinerary(ref, fp.Y.point, 20).symbols == "-" * 20
    assert itinerary(ref, period2_point(ref), 20).symbols == "+-" * 10


def test_itinerary_backward(ref):
    X = fixed_points(ref).X.point
    seq = itinerary(ref, X, 5, n_back=4)
    assert seq.symbols == "+" * 9 and seq.zero_index == 4
    assert seq.forward == "+" * 5 and seq.backward == "+" * 4


def test_itinerary_backward_divergence(ref):
    with pytest.raises(GeometryError, match="index -"):
        itinerary(ref, (0.3, 0.05), 1, n_back=200)


def test_kneading_examples(solved_c0, solved_c01):
    s0 = kneading_sequence(solved_c0, 1, 17)
    s1 = kneading_sequence(solved_c01, 1, 17)
    assert s0.symbols == S_C0 and s1.symbols == S_C01
    assert s0.reliable_length == 17
    assert compare_sequences(s0, s1) == 14
    assert kneading_sequence(solved_c0, 0, 8).symbols == "+--+++++"


def test_compare_sequences_rules():
    assert compare_sequences("+-+", "+-+") is None
    assert compare_sequences("+-+", "+?+") is None
    assert compare_sequences("+-+-", "+-") is None
    assert compare_sequences("++", "+-") == 1


def test_largest_kneading_prefix_random(solved_c0, solved_c01):
    # F(D) right, F^2(D) left; the third symbol is the side of F^3(D)
    for p in sample_admissible(100, seed=41):
        seq = kneading_sequence(p, 0, 3).symbols
        x3 = d_orbit(p, 3)[3][0]
        assert seq[:2] == "+-"
        assert seq[2] == ("-" if x3 < 0 else "+")
    for p in (solved_c0, solved_c01):
        assert kneading_sequence(p, 0, 3).symbols == "+--"


def test_orientation_coding(solved_c0):
    orbit = attractor_orbit(solved_c0, 2000, 100)
    codes = orbit_symbols(orbit)
    y_signs = np.sign(orbit[1:, 1]).astype(int)
    keep = codes[:-1] != 0
    assert (codes[:-1][keep] == y_signs[keep]).all()


def test_reliable_length_formula(solved_c0):
    lam = float(max_expansion(solved_c0))
    expected = math.floor(53 * math.log10(2) / math.log10(lam))
    assert reliable_length(solved_c0) == expected
    assert 58 <= expected <= 64
    with precision("extended"):
        ext = reliable_length(solved_c0)
    assert ext > expected and ext >= 68


def test_tie_rule_on_divider(solved_c0):
    D, FD = d_orbit(solved_c0, 1)[:2]
    ahead = (FD - D) / np.hypot(*(FD - D))
    plain = point_kneading(solved_c0, D, 4)
    assert plain.symbols[0] == AMBIGUOUS and plain.reliable_length == 0
    resolved = point_kneading(solved_c0, D, 4, tangents=(tuple(ahead),))
    assert resolved.symbols[0] == "+"
    # both sides in different half-planes: the tie stays unresolved
    split = point_kneading(solved_c0, D, 1, tangents=(tuple(ahead), tuple(-ahead)))
    assert split.symbols == AMBIGUOUS


def test_agreement_radius():
    codes = np.array([1, -1, 1, 1, -1, 1, 1, -1, 1], dtype=np.int8)
    assert agreement_radius(codes, 2, 5, 10) == 2
    assert agreement_radius(codes, 1, 2, 10) == -1
    assert agreement_radius(codes, 3, 3, 2) == 2
    zero = np.array([1, 0, 1, 1, 0, 1], dtype=np.int8)
    assert agreement_radius(zero, 2, 5, 3) == 0


def test_sequence_type():
    seq = SymbolSequence("+-?", 2)
    assert str(seq) == "+-?" and len(seq) == 3 and seq[1] == "-"


def test_extended_matches_double_on_reliable_part(solved_c0, solved_c01):
    for p in (solved_c0, solved_c01):
        dbl = kneading_sequence(p, 1, 60)
        with precision("extended"):
            ext = kneading_sequence(p, 1, 60)
        n = dbl.reliable_length
        assert n >= 55
        assert ext.symbols[:n] == dbl.symbols[:n]
        assert ext.reliable_length == 60


def test_kneading_rejects_bad_index(solved_c0):
    with pytest.raises(ValueError):
        kneading_sequence(solved_c0, -1, 5)
