"""Tests for the built-in filtration languages and their closed forms."""

import pytest

from equihilb.automata import Nfa, determinize_trim_minimize, dp_count, minimize
from equihilb.exactalg import (
    VarSet,
    parse_ratfun,
    rat_equal,
    series_expand,
    table_mismatches,
)
from equihilb.langlib import (
    FiltrationLanguage,
    lang_poly_ring,
    lang_window_squares,
    lang_gap,
    lang_segre,
    lang_concat,
    builtin_single,
    builtin_pair,
    ideal_gap_series,
)
from equihilb.monoracle import segre_counts, tensor_counts

TS = VarSet(["t", "s"])


def ws_closed_text(c):
    ramp = " + ".join("%d*s^%d" % (c - e, e) for e in range(c)) or "0"
    geom = " + ".join("s^%d" % i for i in range(1, c + 1)) or "0"
    return "(1 + t*(%s))/(1 - t - s - t*(%s))" % (ramp, geom)


def test_poly_ring_closed_forms():
    for c in (1, 2, 3):
        lang = lang_poly_ring(c)
        want = parse_ratfun(TS, "1/((1 - t)^%d - s)" % c)
        assert rat_equal(lang.transfer(), want)
        refs = dict(lang.reference_series)
        assert rat_equal(lang.transfer(), refs["closed form"])
    with pytest.raises(ValueError):
        lang_poly_ring(0)


def test_window_squares_closed_forms():
    for c in range(4):
        lang = lang_window_squares(c)
        want = parse_ratfun(TS, ws_closed_text(c))
        assert rat_equal(lang.transfer(), want)
        refs = dict(lang.reference_series)
        assert rat_equal(lang.transfer(), refs["closed form"])
    with pytest.raises(ValueError):
        lang_window_squares(-1)


def test_window_squares_alt_forms_diverge():
    # the short alt closed form matches neither the automaton nor its
    # narrowed variant, for any window width
    for c in range(4):
        lang = lang_window_squares(c)
        alt_ref = dict(lang.reference_series)["alt closed form"]
        assert not rat_equal(lang.transfer(), alt_ref)
        assert not rat_equal(lang.alt_series(), alt_ref)
        assert lang.notes
    # the narrowed automaton only agrees with the full one for c <= 1
    for c, same in ((0, True), (1, True), (2, False), (3, False)):
        lang = lang_window_squares(c)
        assert rat_equal(lang.alt_series(), lang.transfer()) == same


def test_gap_closed_form():
    lang = lang_gap()
    want = parse_ratfun(
        TS, "(t*s + 1)/(1 - 2*t - s + t^2 + t*s - t^2*s - t*s^2)")
    assert rat_equal(lang.transfer(), want)
    assert rat_equal(lang.transfer(), dict(lang.reference_series)["closed form"])
    assert lang.alt_dfa is None and lang.alt_series() is None


def test_series_is_offset_times_transfer():
    for lang in (lang_poly_ring(2), lang_window_squares(1), lang_gap()):
        assert lang.offset_exp == (0, 1)
        assert rat_equal(lang.series(), lang.offset() * lang.transfer())
        tab = series_expand(lang.series(), (4, 4))
        for d in range(5):
            assert tab.get((d, 0)) == 0  # no constant slice in n


def test_gap_series_cells():
    tab = series_expand(lang_gap().series(), (6, 6))
    for d in range(7):
        assert tab.get((d, 1)) == d + 1
    assert tab.get((2, 2)) == 9


def test_window_squares_regex_matches_dfa():
    for c in range(4):
        lang = lang_window_squares(c)
        from_rx = determinize_trim_minimize(
            Nfa.from_regex(lang.regex, lang.alphabet)).renumbered()
        hand = minimize(lang.dfa).renumbered()
        assert from_rx.r == hand.r == c + 1
        assert from_rx.start == hand.start
        assert from_rx.accepts == hand.accepts
        assert from_rx.trans == hand.trans
    assert lang_gap().regex is None
    assert lang_poly_ring(2).regex is None


def test_predicates_agree_with_automata():
    for lang in (lang_poly_ring(1), lang_poly_ring(3), lang_window_squares(0),
                 lang_window_squares(3), lang_gap()):
        ok, bad, checked = lang.check(7)
        assert ok, (lang.name, bad)
        assert checked > 100


def test_segre_identity():
    a = lang_poly_ring(1)
    b = lang_poly_ring(1, tau="tau2", alpha="b")
    seg = lang_segre(a, b)
    assert seg.offset_exp == (0, 1, 1)
    pair_tab = dp_count(seg.dfa, 4, (4, 4))
    want = segre_counts(dp_count(a.dfa, 4, (4,)), dp_count(b.dfa, 4, (4,)))
    assert not table_mismatches(pair_tab, want)
    # raw word counts index taus; the offset series indexes algebra slices
    assert pair_tab.get((2, 1, 1)) == 9
    assert series_expand(seg.series(), (2, 2, 2)).get((2, 2, 2)) == 9
    ok, bad, _ = seg.check(5)
    assert ok, bad


def test_segre_mixed_factors():
    a = lang_window_squares(1)
    b = lang_poly_ring(2, tau="tau2", alpha="b")
    seg = lang_segre(a, b)
    pair_tab = dp_count(seg.dfa, 4, (4, 4))
    want = segre_counts(dp_count(a.dfa, 4, (4,)), dp_count(b.dfa, 4, (4,)))
    assert not table_mismatches(pair_tab, want)
    ok, bad, _ = seg.check(5)
    assert ok, bad


def test_concat_identity():
    a = lang_window_squares(1)
    b = lang_poly_ring(1, tau="tau2", alpha="b")
    cat = lang_concat(a, b)
    pair_tab = dp_count(cat.dfa, 4, (4, 4))
    want = tensor_counts(dp_count(a.dfa, 4, (4,)), dp_count(b.dfa, 4, (4,)))
    for d in range(5):
        for m in range(5):
            for n in range(5):
                assert pair_tab.get((d, m, n)) == want.get((d, m, n))
    ok, bad, _ = cat.check(5)
    assert ok, bad


def test_pair_alphabets_must_be_disjoint():
    a = lang_poly_ring(1)
    b = lang_poly_ring(1)
    with pytest.raises(ValueError):
        lang_segre(a, b)
    with pytest.raises(ValueError):
        lang_concat(a, b)


def test_builtin_single():
    assert builtin_single("gap").name == "gap"
    assert builtin_single("poly-ring").name == "poly-ring(2)"
    assert builtin_single("window-squares").name == "window-squares(2)"
    assert builtin_single("poly-ring", 3).name == "poly-ring(3)"
    with pytest.raises(ValueError):
        builtin_single("nope")


def test_builtin_pair():
    seg = builtin_pair("segre", "poly-ring", 1, "poly-ring", 1)
    assert isinstance(seg, FiltrationLanguage)
    assert seg.offset_exp == (0, 1, 1)
    # second factor letters are renamed, so the union alphabet is disjoint
    assert "tau2" in seg.alphabet.names
    cat = builtin_pair("concat", "window-squares", 1, "poly-ring", 1)
    assert "b1" in cat.alphabet.names
    with pytest.raises(ValueError):
        builtin_pair("twist", "poly-ring", 1, "poly-ring", 1)


def test_ideal_gap_series():
    computed, stated = ideal_gap_series()
    # the two published forms of the complement series disagree
    assert not rat_equal(computed, stated)
    tab = series_expand(computed, (4, 4))
    cells = {k: tab[k] for k in tab.keys_sorted()}
    assert cells == {(2, 2): 1, (2, 3): 2, (2, 4): 3,
                     (3, 2): 3, (3, 3): 9, (3, 4): 19,
                     (4, 2): 6, (4, 3): 26, (4, 4): 72}
    # the stated form even has a nonzero t^0 slice, which no ideal has
    stab = series_expand(stated, (4, 4))
    assert [stab.get((0, n)) for n in range(1, 5)] == [1, 3, 5, 7]
