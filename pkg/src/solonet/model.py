"""Melodic data model: pitches, note events, tracks and node labels.

Durations are kept as exact ``Fraction`` values in whole-note units so that
a quarter note read with ``divisions=2`` and one read with ``divisions=4``
produce the same node label.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EmptyInput, RangeExceeded

log = logging.getLogger(__name__)

STEPS = "CDEFGAB"
STEP_SEMITONES = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}
ALTER_SYMBOLS = {-2: "bb", -1: "b", 0: "", 1: "#", 2: "##"}
# diatonic step offset for each chromatic interval (m2, M2, m3, ... M7)
_INTERVAL_STEPS = (0, 1, 1, 2, 2, 3, 3, 4, 5, 5, 6, 6)


@dataclass(frozen=True, order=True)
class Pitch:
    step: str
    alter: int = 0
    octave: int = 4

    def __post_init__(self):
        if self.step not in STEP_SEMITONES:
            raise ValueError(f"invalid step {self.step!r}")
        if self.alter not in ALTER_SYMBOLS:
            raise RangeExceeded(f"alter {self.alter} outside [-2, 2]")
        if not 0 <= self.octave <= 9:
            raise RangeExceeded(f"octave {self.octave} outside [0, 9]")

    @property
    def midi(self) -> int:
        return 12 * (self.octave + 1) + STEP_SEMITONES[self.step] + self.alter

    @property
    def name(self) -> str:
        return f"{self.step}{ALTER_SYMBOLS[self.alter]}{self.octave}"

    def sort_key(self):
        return (self.midi, STEPS.index(self.step), self.alter)

    def transposed(self, semitones: int) -> "Pitch":
        """Shift by ``semitones`` keeping interval spelling (C +1 -> Db, not C#).

        Spelling by interval keeps the map injective, so distinct labels stay
        distinct after transposition.
        """
        octaves, rem = divmod(semitones, 12)
        steps = 7 * octaves + _INTERVAL_STEPS[rem]
        idx = STEPS.index(self.step) + steps
        octave = self.octave + idx // 7
        step = STEPS[idx % 7]
        alter = self.midi + semitones - (12 * (octave + 1) + STEP_SEMITONES[step])
        if alter not in ALTER_SYMBOLS or not 0 <= octave <= 9:
            raise RangeExceeded(f"{self.name} transposed by {semitones} leaves the supported range")
        return Pitch(step, alter, octave)

    @classmethod
    def parse(cls, text: str) -> "Pitch":
        """Parse names such as ``C4``, ``F#3`` or ``Bbb2``."""
        step, rest = text[0].upper(), text[1:]
        alter = 0
        while rest and rest[0] in "#b":
            alter += 1 if rest[0] == "#" else -1
            rest = rest[1:]
        return cls(step, alter, int(rest))


def _as_duration(value) -> Fraction:
    dur = Fraction(value)
    if dur <= 0:
        raise ValueError(f"duration must be positive, got {dur}")
    return dur


@dataclass(frozen=True)
class NoteEvent:
    """One melodic unit.

    ``pitches`` is empty for a rest, holds one pitch for a note and two or
    more (deduplicated, ascending by MIDI number) for a chord.
    """

    pitches: tuple[Pitch, ...]
    duration: Fraction

    def __post_init__(self):
        object.__setattr__(self, "duration", _as_duration(self.duration))
        pitches = tuple(sorted(set(self.pitches), key=Pitch.sort_key))
        object.__setattr__(self, "pitches", pitches)

    @classmethod
    def note(cls, pitch: Pitch | str, duration) -> "NoteEvent":
        if isinstance(pitch, str):
            pitch = Pitch.parse(pitch)
        return cls((pitch,), duration)

    @classmethod
    def rest(cls, duration) -> "NoteEvent":
        return cls((), duration)

    @classmethod
    def chord(cls, pitches: Iterable[Pitch | str], duration) -> "NoteEvent":
        ps = tuple(Pitch.parse(p) if isinstance(p, str) else p for p in pitches)
        if len(set(ps)) < 2:
            raise ValueError("a chord needs at least two distinct pitches")
        return cls(ps, duration)

    @property
    def kind(self) -> str:
        if not self.pitches:
            return "rest"
        return "note" if len(self.pitches) == 1 else "chord"

    @property
    def is_rest(self) -> bool:
        return not self.pitches

    def transposed(self, semitones: int) -> "NoteEvent":
        return NoteEvent(tuple(p.transposed(semitones) for p in self.pitches), self.duration)


def node_key(event: NoteEvent, spelling: str = "written") -> str:
    """Canonical node label of an event.

    ``spelling="written"`` keeps enharmonic spellings apart (C#4 != Db4);
    ``spelling="midi"`` labels pitches by MIDI number instead.
    """
    if spelling == "written":
        names = [p.name for p in event.pitches]
    elif spelling == "midi":
        names = [f"m{m}" for m in sorted({p.midi for p in event.pitches})]
    else:
        raise ValueError(f"unknown spelling {spelling!r}")
    head = "+".join(names) if names else "rest"
    return f"{head}:{event.duration}"


class ConcatPolicy(str, enum.Enum):
    SEAMED = "seamed"
    FUSED = "fused"


@dataclass(frozen=True)
class MelodyTrack:
    events: tuple[NoteEvent, ...]
    artist: str = ""
    song: str = ""
    # indices i where a seam sits between events[i-1] and events[i]
    boundaries: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        prev = 0
        for b in self.boundaries:
            if not prev < b < len(self.events):
                raise ValueError(f"invalid seam boundaries {self.boundaries} for {len(self.events)} events")
            prev = b

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)


def track_length(track: MelodyTrack) -> int:
    return len(track.events)


def concatenate_tracks(tracks: Sequence[MelodyTrack], policy: ConcatPolicy | str = ConcatPolicy.SEAMED) -> MelodyTrack:
    """Join tracks in order.

    Seamed joins record the junctions so no link is created across solos;
    fused joins link the last event of one solo to the first of the next.
    Seams already present inside the input tracks are kept either way.
    """
    policy = ConcatPolicy(policy)
    if not tracks:
        raise EmptyInput("no tracks to concatenate")
    artists = {t.artist for t in tracks}
    if len(artists) > 1:
        log.warning("concatenating tracks of different artists: %s", sorted(artists))

    events: list[NoteEvent] = []
    boundaries: list[int] = []
    for t in tracks:
        offset = len(events)
        if policy is ConcatPolicy.SEAMED and 0 < offset and t.events:
            boundaries.append(offset)
        boundaries.extend(offset + b for b in t.boundaries)
        events.extend(t.events)
    songs = " + ".join(t.song for t in tracks if t.song)
    return MelodyTrack(tuple(events), tracks[0].artist, songs, tuple(boundaries))


def transpose(track: MelodyTrack, semitones: int) -> MelodyTrack:
    events = tuple(e.transposed(semitones) for e in track.events)
    return MelodyTrack(events, track.artist, track.song, track.boundaries)
