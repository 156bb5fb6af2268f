import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetamult import errors
from zetamult.geodesic_spectrum import (SurfaceGroupPresentation,
                                        canonical_cyclic_word,
                                        counting_function, cyclic_reduce,
                                        cyclic_root, dedup_crosscheck,
                                        entropy_fit, enumerate_classes,
                                        free_reduce, invert_word,
                                        length_from_trace,
                                        load_spectrum_csv, string_to_word,
                                        word_to_string)

from conftest import SYSTOLE

letters = st.integers(min_value=0, max_value=7)
words = st.lists(letters, max_size=12).map(bytes)


# --- free-group word operations ---------------------------------------------

@given(words)
def test_free_reduce_idempotent(w):
    assert free_reduce(free_reduce(w)) == free_reduce(w)


@given(words)
def test_inverse_reduces_to_identity(w):
    assert free_reduce(w + invert_word(w)) == b""


@given(words)
def test_cyclic_reduce_conjugation_invariant(w):
    r = cyclic_reduce(w)
    if r:
        rotated = r[1:] + r[:1]
        assert cyclic_reduce(rotated) == rotated


@given(words)
def test_round_trip_string(w):
    w = free_reduce(w)
    assert string_to_word(word_to_string(w)) == w


def test_cyclic_root_of_power():
    w = string_to_word("abab")
    root, k = cyclic_root(w)
    assert (word_to_string(root), k) == ("ab", 2)


# --- presentation -----------------------------------------------------------

def test_bolza_relation_holds(bolza):
    gens = bolza.float_generators()
    prod = np.eye(2)
    for x in bolza.relation:
        prod = prod @ gens[x]
    assert np.max(np.abs(np.abs(prod) - np.eye(2))) < 1e-9


def test_presentation_json_round_trip(bolza):
    again = SurfaceGroupPresentation.from_json(bolza.to_json())
    assert again.relation == bolza.relation
    g0 = bolza.float_generators()
    g1 = again.float_generators()
    assert np.allclose(g0, g1)


def test_length_from_trace():
    t = 2.0 * math.cosh(SYSTOLE / 2.0)
    assert abs(length_from_trace(t) - SYSTOLE) < 1e-12
    with pytest.raises(errors.NotHyperbolic):
        length_from_trace(2.0)


def test_canonical_word_conjugation_invariant(bolza):
    variants = bolza.relator_variants()
    w = string_to_word("abcD")
    conj = string_to_word("c") + w + string_to_word("C")
    assert canonical_cyclic_word(w, variants) == \
        canonical_cyclic_word(free_reduce(conj), variants)


# --- enumeration ------------------------------------------------------------

def test_generators_give_eight_systolic_classes(bolza):
    spec = enumerate_classes(bolza, 1)
    assert len(spec.records) == 8
    for rec in spec.records:
        assert abs(rec.length - SYSTOLE) < 1e-12
        assert rec.primitive


def test_orientation_pairing(shallow_spectrum):
    by_word = {r.canonical_word: r for r in shallow_spectrum.records}
    for rec in shallow_spectrum.records:
        partner = by_word[rec.orientation_partner]
        assert partner.orientation_partner == rec.canonical_word
        assert abs(partner.length - rec.length) < 1e-9


def test_powers_marked_imprimitive(shallow_spectrum):
    by_word = {r.canonical_word: r for r in shallow_spectrum.records}
    powers = [r for r in shallow_spectrum.records if not r.primitive]
    assert powers
    for rec in powers:
        root = by_word[rec.power_of]
        assert root.primitive
        k = len(rec.canonical_word) // len(root.canonical_word)
        assert k >= 2
        assert abs(rec.length - k * root.length) < 1e-9


def test_shells_are_even(shallow_spectrum):
    for _, count in shallow_spectrum.shells():
        assert count % 2 == 0


def test_counting_function(shallow_spectrum):
    assert counting_function(shallow_spectrum, SYSTOLE + 1e-9) == 24
    with pytest.raises(errors.BeyondHorizon):
        counting_function(shallow_spectrum, 1e6)


def test_csv_round_trip(shallow_spectrum):
    again = load_spectrum_csv(shallow_spectrum.to_csv())
    assert len(again.records) == len(shallow_spectrum.records)
    assert again.records[0].canonical_word == \
        shallow_spectrum.records[0].canonical_word
    assert abs(again.records[-1].length -
               shallow_spectrum.records[-1].length) < 1e-10


def test_entropy_requires_depth(bolza):
    tiny = enumerate_classes(bolza, 1)
    with pytest.raises(errors.InsufficientData):
        entropy_fit(tiny)


def test_deep_spectrum_frozen_counts(deep_spectrum):
    """Regression pins for the word-length-10 / horizon-11.5 enumeration."""
    assert len(deep_spectrum.records) == 9788
    assert counting_function(deep_spectrum, 6.0) == 96
    assert counting_function(deep_spectrum, 8.0) == 416
    assert counting_function(deep_spectrum, 10.0) == 2588
    fit = entropy_fit(deep_spectrum)
    assert abs(fit.h_hat - 0.8238250923468857) < 1e-9


def test_dedup_crosscheck_small(bolza):
    pipeline, exhaustive = dedup_crosscheck(bolza, max_word_length=4,
                                            max_geodesic_length=7.0)
    assert pipeline == exhaustive > 0
