from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from solonet import ConcatPolicy, MelodyTrack, NoteEvent, Pitch, concatenate_tracks, node_key, track_length, transpose
from solonet.errors import EmptyInput, RangeExceeded

from conftest import events, tracks


def test_pitch_midi_and_name():
    assert Pitch("C", 0, 4).midi == 60
    assert Pitch("A", 0, 4).midi == 69
    assert Pitch("B", 1, 3).midi == 60
    assert Pitch.parse("Bbb2") == Pitch("B", -2, 2)
    assert Pitch.parse("F#3").name == "F#3"


@pytest.mark.parametrize("bad", [dict(step="H"), dict(step="C", alter=3), dict(step="C", octave=10)])
def test_pitch_rejects_out_of_range(bad):
    with pytest.raises(ValueError):
        Pitch(**bad)


def test_duration_must_be_positive():
    with pytest.raises(ValueError):
        NoteEvent.rest(0)


def test_durations_are_exact_rationals():
    assert NoteEvent.note("C4", Fraction(2, 8)) == NoteEvent.note("C4", "1/4")
    assert node_key(NoteEvent.note("C4", Fraction(4, 16))) == node_key(NoteEvent.note("C4", "1/4"))


def test_same_pitch_different_duration_gives_different_nodes():
    assert node_key(NoteEvent.note("C4", "1/4")) != node_key(NoteEvent.note("C4", "1/8"))
    assert node_key(NoteEvent.note("G4", "1/8")) != node_key(NoteEvent.note("G4", "1/2"))


def test_rest_labels():
    assert node_key(NoteEvent.rest("1/8")) == node_key(NoteEvent.rest(Fraction(1, 8)))
    assert node_key(NoteEvent.rest("1/8")) != node_key(NoteEvent.rest("1/4"))


def test_chord_order_does_not_matter():
    a = NoteEvent.chord(["E4", "C4"], "1/4")
    b = NoteEvent.chord(["C4", "E4"], "1/4")
    assert node_key(a) == node_key(b) == "C4+E4:1/4"
    assert a.kind == "chord"


def test_chord_needs_two_distinct_pitches():
    with pytest.raises(ValueError):
        NoteEvent.chord(["C4", "C4"], "1/4")


def test_enharmonic_spellings_distinct_unless_midi():
    cs, db = NoteEvent.note("C#4", "1/4"), NoteEvent.note("Db4", "1/4")
    assert node_key(cs) != node_key(db)
    assert node_key(cs, "midi") == node_key(db, "midi")


@given(events, events)
def test_node_key_injective(a, b):
    assert (node_key(a) == node_key(b)) == (a == b)


def test_track_length(demo_track):
    assert track_length(demo_track) == 8
    assert track_length(MelodyTrack(())) == 0


def test_concat_lengths_add():
    a = MelodyTrack(tuple(NoteEvent.note("C4", "1/4") for _ in range(5)), "X")
    b = MelodyTrack(tuple(NoteEvent.note("D4", "1/4") for _ in range(7)), "X")
    joined = concatenate_tracks([a, b])
    assert track_length(joined) == 12
    assert joined.boundaries == (5,)
    assert concatenate_tracks([a, b], ConcatPolicy.FUSED).boundaries == ()


def test_concat_empty_input():
    with pytest.raises(EmptyInput):
        concatenate_tracks([])


def test_concat_keeps_inner_seams_and_skips_empty_tracks():
    ev = NoteEvent.rest("1/4")
    a = MelodyTrack((ev, ev, ev), "X", boundaries=(1,))
    empty = MelodyTrack((), "X")
    joined = concatenate_tracks([a, empty, a])
    assert joined.boundaries == (1, 3, 4)


def test_concat_warns_on_mixed_artists(caplog):
    ev = NoteEvent.rest("1/4")
    concatenate_tracks([MelodyTrack((ev,), "X"), MelodyTrack((ev,), "Y")])
    assert "different artists" in caplog.text


@given(st.lists(tracks, min_size=1, max_size=4), st.sampled_from(list(ConcatPolicy)))
def test_concat_length_additive(ts, policy):
    assert track_length(concatenate_tracks(ts, policy)) == sum(track_length(t) for t in ts)


def test_transpose_identity_and_octave(demo_track):
    assert transpose(demo_track, 0) == demo_track
    up = transpose(demo_track, 12)
    for a, b in zip(demo_track.events, up.events):
        assert a.duration == b.duration
        assert [p.step for p in a.pitches] == [p.step for p in b.pitches]
        assert [p.octave + 1 for p in a.pitches] == [p.octave for p in b.pitches]


def test_transpose_spells_by_interval():
    assert Pitch("C", 0, 4).transposed(1) == Pitch("D", -1, 4)
    assert Pitch("B", 0, 4).transposed(1) == Pitch("C", 0, 5)
    assert Pitch("E", 0, 4).transposed(-13) == Pitch("D", 1, 3)


def test_transpose_range_exceeded():
    track = MelodyTrack((NoteEvent.note("C9", "1/4"),))
    with pytest.raises(RangeExceeded):
        transpose(track, 12)


@given(st.lists(st.builds(Pitch, st.sampled_from("CDEFGAB"), st.integers(-1, 1), st.integers(2, 6)), unique=True),
       st.integers(-14, 14))
def test_transposition_is_injective(ps, k):
    moved = [p.transposed(k) for p in ps]
    assert len(set(moved)) == len(ps)
    assert all(m.midi == p.midi + k for p, m in zip(ps, moved))


def test_seam_boundaries_validated():
    ev = NoteEvent.rest("1/4")
    with pytest.raises(ValueError):
        MelodyTrack((ev, ev), boundaries=(0,))
    with pytest.raises(ValueError):
        MelodyTrack((ev, ev, ev), boundaries=(2, 1))
