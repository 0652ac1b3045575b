import json
from pathlib import Path

import pytest
from hypothesis import strategies as st

from solonet import MelodyTrack, NoteEvent, Pitch, TrackSelector, extract_track, read_musicxml

FIXTURES = Path(__file__).parent / "fixtures"
DEMO = FIXTURES / "demo.musicxml"


def demo_events():
    q, e, h = "1/4", "1/8", "1/2"
    return (
        NoteEvent.note("C4", q),
        NoteEvent.note("D4", q),
        NoteEvent.note("D4", q),
        NoteEvent.note("C4", q),
        NoteEvent.note("D4", q),
        NoteEvent.note("G4", e),
        NoteEvent.rest(e),
        NoteEvent.note("G4", h),
    )


@pytest.fixture
def demo_track():
    return MelodyTrack(demo_events(), "Example", "Demo")


@pytest.fixture
def demo_xml_track():
    return extract_track(read_musicxml(DEMO), TrackSelector("P1"), "Example", "Demo")


def musicxml(measures, divisions=1, part_id="P1", extra_parts=()):
    """Small partwise document; ``measures`` is a list of lists of <note> bodies."""
    out = ['<?xml version="1.0"?>', "<score-partwise>", "<part-list>"]
    for pid in (part_id, *extra_parts):
        out.append(f'<score-part id="{pid}"><part-name>{pid}</part-name></score-part>')
    out.append("</part-list>")
    for pid in (part_id, *extra_parts):
        out.append(f'<part id="{pid}">')
        for i, notes in enumerate(measures, 1):
            out.append(f'<measure number="{i}">')
            if i == 1:
                out.append(f"<attributes><divisions>{divisions}</divisions></attributes>")
            out += [f"<note>{body}</note>" for body in notes]
            out.append("</measure>")
        out.append("</part>")
    out.append("</score-partwise>")
    return "\n".join(out).encode()


def pitched(step, octave, duration, extra=""):
    return f"<pitch><step>{step}</step><octave>{octave}</octave></pitch><duration>{duration}</duration>{extra}"


pitches = st.builds(
    Pitch,
    step=st.sampled_from("CDEFGAB"),
    alter=st.integers(-1, 1),
    octave=st.integers(2, 6),
)
durations = st.sampled_from(["1/16", "1/8", "3/16", "1/4", "1/2", "1/12"])
events = st.one_of(
    st.builds(NoteEvent.note, pitches, durations),
    st.builds(NoteEvent.rest, durations),
    st.builds(lambda ps, d: NoteEvent(tuple(ps), d), st.lists(pitches, min_size=2, max_size=3, unique=True), durations),
)
tracks = st.builds(lambda evs: MelodyTrack(tuple(evs), "A", "s"), st.lists(events, min_size=0, max_size=40))


@st.composite
def small_alphabet_tracks(draw, max_len=60):
    """Tracks drawn from a few distinct events so that links repeat and cycles form."""
    alphabet = draw(st.lists(events, min_size=1, max_size=6, unique=True))
    seq = draw(st.lists(st.sampled_from(alphabet), min_size=1, max_size=max_len))
    return MelodyTrack(tuple(seq), "A", "s")


def write_corpus(root, solos):
    """Write ``(artist, song, xml_bytes)`` solos under ``root`` and return the manifest path."""
    entries = []
    for i, (artist, song, xml) in enumerate(solos):
        name = f"solo{i}.musicxml"
        (root / name).write_bytes(xml)
        entries.append({"artist": artist, "song": song, "file": name})
    manifest = root / "manifest.json"
    manifest.write_text(json.dumps({"entries": entries}))
    return manifest
