"""Read the melodic line of a part out of an uncompressed partwise MusicXML score.

Only a small subset of MusicXML matters here: divisions, and for each note
its pitch (step/alter/octave) or rest, duration, chord flag and ties.
Anything else met inside a measure is counted in ``ScoreDocument.skipped``
rather than silently dropped.
"""

from __future__ import annotations

import os
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import (
    EmptySelection,
    MalformedXml,
    MissingDivisions,
    SpanOutOfRange,
    UnknownPart,
    UnsupportedRoot,
    ZeroDuration,
)
from .model import MelodyTrack, NoteEvent, Pitch

# note-level markings that change the sound but are outside the model
ORNAMENTS = frozenset(
    {"bend", "harmonic", "slide", "glissando", "vibrato", "trill-mark", "tremolo", "hammer-on", "pull-off", "tap"}
)


@dataclass(frozen=True)
class RawEvent:
    """A note, rest or chord as written, before tie merging."""

    pitches: tuple[Pitch, ...]
    duration: Fraction
    tie_start: bool = False
    tie_stop: bool = False
    elements: int = 1

    @property
    def is_rest(self):
        return not self.pitches


@dataclass(frozen=True)
class PartData:
    part_id: str
    name: str
    divisions: int
    measures: tuple[tuple[RawEvent, ...], ...]


@dataclass(frozen=True)
class ScoreDocument:
    parts: Mapping[str, PartData]
    source: str = ""
    skipped: Mapping[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class TrackSelector:
    part_id: str
    # inclusive, 1-based measure positions
    span: tuple[int, int] | None = None

    def __post_init__(self):
        if self.span is not None:
            start, end = self.span
            if start > end:
                raise SpanOutOfRange(f"span start {start} after end {end}")
            object.__setattr__(self, "span", (int(start), int(end)))


def _bool_ties(note):
    types = [t.get("type") for t in note.findall("tie")]
    types += [t.get("type") for t in note.findall("notations/tied")]
    return "start" in types, "stop" in types


def _parse_pitch(el) -> Pitch:
    step = (el.findtext("step") or "").strip()
    alter_text = (el.findtext("alter") or "0").strip()
    alter = Fraction(alter_text)
    if alter.denominator != 1:
        raise ValueError(f"microtonal alter {alter_text}")
    octave = int((el.findtext("octave") or "").strip())
    return Pitch(step, int(alter), octave)


def _parse_part(part, name: str, skipped: Counter) -> PartData:
    part_id = part.get("id", "")
    divisions = None
    first_divisions = None
    voice = None
    measures = []
    for measure in part.findall("measure"):
        events: list[RawEvent] = []
        for child in measure:
            if child.tag == "attributes":
                div = child.findtext("divisions")
                if div is not None:
                    divisions = int(div.strip())
                    if divisions <= 0:
                        raise MissingDivisions(f"part {part_id}: non-positive divisions {divisions}")
                    first_divisions = first_divisions or divisions
                continue
            if child.tag != "note":
                skipped[child.tag] += 1
                continue

            note = child
            for el in note.iter():
                if el.tag in ORNAMENTS:
                    skipped[el.tag] += 1
            if note.find("grace") is not None:
                skipped["grace"] += 1
                continue
            if note.find("cue") is not None:
                skipped["cue"] += 1
                continue
            if note.find("unpitched") is not None:
                skipped["unpitched"] += 1
                continue
            this_voice = (note.findtext("voice") or "1").strip()
            if voice is None:
                voice = this_voice
            elif this_voice != voice:
                # only the first voice of the part is the melodic line
                skipped["secondary-voice"] += 1
                continue
            if divisions is None:
                raise MissingDivisions(f"part {part_id}: note before any divisions declaration")
            dur_text = note.findtext("duration")
            try:
                raw_dur = Fraction(dur_text.strip()) if dur_text is not None else Fraction(0)
            except ValueError as exc:
                raise MalformedXml(f"part {part_id}: bad duration {dur_text!r}") from exc
            if raw_dur <= 0:
                raise ZeroDuration(f"part {part_id}: note with duration {raw_dur}")
            duration = raw_dur / (4 * divisions)

            pitch_el = note.find("pitch")
            if pitch_el is not None:
                try:
                    pitches = (_parse_pitch(pitch_el),)
                except ValueError:
                    skipped["unsupported-pitch"] += 1
                    continue
            elif note.find("rest") is not None:
                pitches = ()
            else:
                skipped["unpitched"] += 1
                continue
            tie_start, tie_stop = _bool_ties(note)

            if note.find("chord") is not None and events and not events[-1].is_rest and pitches:
                prev = events[-1]
                # a chord keeps the timing of its first note; ties hold only if every member is tied
                events[-1] = RawEvent(
                    prev.pitches + pitches,
                    prev.duration,
                    prev.tie_start and tie_start,
                    prev.tie_stop and tie_stop,
                    prev.elements + 1,
                )
                continue
            events.append(RawEvent(pitches, duration, tie_start, tie_stop))
        measures.append(tuple(events))
    # a part with no notes may never declare divisions
    return PartData(part_id, name, first_divisions or 1, tuple(measures))


def parse_musicxml(data: bytes | str, source: str = "") -> ScoreDocument:
    """Parse a partwise MusicXML document held in memory."""
    if isinstance(data, bytes) and data[:2] == b"PK":
        raise MalformedXml(f"{source or 'input'} looks like a compressed .mxl container, which is not supported")
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXml(f"{source or 'input'}: {exc}") from exc
    if root.tag != "score-partwise":
        raise UnsupportedRoot(f"root element is <{root.tag}>, expected <score-partwise>")

    names = {}
    for sp in root.findall("part-list/score-part"):
        names[sp.get("id", "")] = (sp.findtext("part-name") or "").strip()
    skipped: Counter = Counter()
    parts: dict[str, PartData] = {}
    for part in root.findall("part"):
        pid = part.get("id", "")
        if pid in parts:
            raise MalformedXml(f"duplicate part id {pid!r}")
        parts[pid] = _parse_part(part, names.get(pid, ""), skipped)
    return ScoreDocument(parts, source, dict(sorted(skipped.items())))


def read_musicxml(path: str | os.PathLike) -> ScoreDocument:
    with open(path, "rb") as fh:
        return parse_musicxml(fh.read(), source=os.fspath(path))


def _same_sound(a: RawEvent, b: RawEvent) -> bool:
    return set(a.pitches) == set(b.pitches)


def extract_track(doc: ScoreDocument, sel: TrackSelector, artist: str = "", song: str = "") -> MelodyTrack:
    """Cut the selected part (and measure span) into a ``MelodyTrack``.

    Tied notes are merged into one event carrying the summed duration.
    """
    try:
        part = doc.parts[sel.part_id]
    except KeyError:
        raise UnknownPart(f"no part {sel.part_id!r} in {doc.source or 'document'}; have {list(doc.parts)}") from None
    measures = part.measures
    if sel.span is not None:
        start, end = sel.span
        if start < 1 or end > len(measures):
            raise SpanOutOfRange(f"span {sel.span} outside measures 1..{len(measures)}")
        measures = measures[start - 1 : end]

    merged: list[RawEvent] = []
    for ev in (e for m in measures for e in m):
        if merged and ev.tie_stop and not ev.is_rest:
            prev = merged[-1]
            if prev.tie_start and _same_sound(prev, ev):
                merged[-1] = RawEvent(prev.pitches, prev.duration + ev.duration, ev.tie_start, prev.tie_stop)
                continue
        merged.append(ev)
    if not merged:
        raise EmptySelection(f"part {sel.part_id!r} span {sel.span} holds no notes")
    events = tuple(NoteEvent(ev.pitches, ev.duration) for ev in merged)
    return MelodyTrack(events, artist, song)
