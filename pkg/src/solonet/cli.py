"""Batch front-end.

    solonet analyze --manifest corpus.json --out runs/a
    solonet compare --out runs/a --metric clustering
    solonet smallworld --manifest corpus.json --out runs/a --replicates 100
    solonet concat --manifest corpus.json --artist "Eric Clapton" --policy seamed --out runs/a
    solonet export-network --manifest corpus.json --out runs/a --format csv

Exit codes: 0 success, 1 some entries failed, 2 configuration or manifest error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import math
import os
import re
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .baselines import Thresholds, format_table, small_world_assessment
from .errors import InsufficientGroups, ManifestError, SoloNetError, UnknownArtist
from .metrics import SCALAR_METRICS, MetricsConfig, MetricsReport, analyze_track
from .model import ConcatPolicy, MelodyTrack, concatenate_tracks
from .musicxml import TrackSelector, extract_track, parse_musicxml
from .network import SoloNetwork, build_network
from .stats import ArtistSample, acronyms, pairwise_matrix, summarize

log = logging.getLogger("solonet")

EXIT_OK, EXIT_PARTIAL, EXIT_CONFIG = 0, 1, 2


@dataclass(frozen=True)
class ManifestEntry:
    artist: str
    song: str
    file: str  # as written in the manifest
    path: Path  # resolved against the manifest directory
    part_id: str
    spans: tuple[tuple[int, int], ...] = ()
    tags: tuple[str, ...] = ()


@dataclass(frozen=True)
class Job:
    """One (entry, span) unit of work."""

    id: str
    entry: ManifestEntry
    span: tuple[int, int] | None


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    replicates: int = 100
    eigen_tol: float = 1e-10
    eigen_max_iter: int = 10_000
    alpha: float = 0.05
    policy: str = ConcatPolicy.SEAMED.value
    spelling: str = "written"
    out: Path = field(default=Path("out"), compare=False)
    workers: int = 1

    def __post_init__(self):
        if self.replicates < 1 or self.eigen_tol <= 0 or self.eigen_max_iter < 1 or self.workers < 1:
            raise ManifestError("numeric options must be positive")
        if not 0 < self.alpha < 1:
            raise ManifestError("--alpha must lie in (0, 1)")
        ConcatPolicy(self.policy)

    @property
    def metrics(self) -> MetricsConfig:
        return MetricsConfig(self.eigen_tol, self.eigen_max_iter, self.spelling)


def slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-") or "x"


def load_manifest(path: str | os.PathLike) -> list[ManifestEntry]:
    """Read a JSON manifest: ``{"entries": [...]}`` or a bare list of entries."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    raw = data.get("entries") if isinstance(data, dict) else data
    if not isinstance(raw, list):
        raise ManifestError("manifest must be a list of entries or an object with an 'entries' list")
    entries = []
    for i, e in enumerate(raw):
        try:
            spans = tuple((int(s), int(t)) for s, t in e.get("spans", []))
            for s, t in spans:
                if s < 1 or s > t:
                    raise ValueError(f"bad span {(s, t)}")
            entries.append(
                ManifestEntry(
                    artist=str(e["artist"]),
                    song=str(e.get("song", "")),
                    file=str(e["file"]),
                    path=(path.parent / e["file"]),
                    part_id=str(e.get("part_id", e.get("part-id", "P1"))),
                    spans=spans,
                    tags=tuple(str(t) for t in e.get("tags", [])),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ManifestError(f"manifest entry {i}: {exc}") from exc
    return entries


def expand_jobs(entries: list[ManifestEntry]) -> list[Job]:
    jobs = []
    for i, e in enumerate(entries):
        for span in e.spans or (None,):
            tail = f"-m{span[0]}-{span[1]}" if span else ""
            jobs.append(Job(f"{len(jobs):04d}-{slug(e.artist)}-{slug(e.song)}{tail}", e, span))
    return jobs


def job_track(job: Job) -> tuple[MelodyTrack, bytes]:
    data = job.entry.path.read_bytes()
    doc = parse_musicxml(data, source=job.entry.file)
    track = extract_track(doc, TrackSelector(job.entry.part_id, job.span), job.entry.artist, job.entry.song)
    return track, data


def job_key(job: Job, data: bytes, cfg: RunConfig) -> str:
    h = hashlib.sha256(data)
    h.update(json.dumps([job.entry.part_id, job.span, asdict(cfg.metrics)]).encode())
    return h.hexdigest()


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _analyze_job(job: Job, cfg: RunConfig) -> dict:
    row = {
        "id": job.id,
        "artist": job.entry.artist,
        "song": job.entry.song,
        "file": job.entry.file,
        "part_id": job.entry.part_id,
        "span": list(job.span) if job.span else None,
        "tags": list(job.entry.tags),
    }
    try:
        track, data = job_track(job)
        key = job_key(job, data, cfg)
        target = cfg.out / "reports" / f"{job.id}.json"
        if target.exists():
            try:
                old = json.loads(target.read_text())
                if old.get("provenance", {}).get("key") == key:
                    return {**row, "status": "ok", "report": f"reports/{job.id}.json", "key": key}
            except json.JSONDecodeError:
                pass
        report = analyze_track(track, cfg.metrics)
        report.provenance["key"] = key
        write_atomic(target, report.dumps() + "\n")
        return {**row, "status": "ok", "report": f"reports/{job.id}.json", "key": key}
    except (OSError, SoloNetError, ValueError) as exc:
        return {**row, "status": "error", "error": f"{type(exc).__name__}: {exc}"}


def _run_log(cfg: RunConfig, message: str) -> None:
    cfg.out.mkdir(parents=True, exist_ok=True)
    with open(cfg.out / "run.log", "a") as fh:
        fh.write(f"{time.strftime('%Y-%m-%dT%H:%M:%S')} {message}\n")


def cmd_analyze(entries: list[ManifestEntry], cfg: RunConfig) -> int:
    jobs = expand_jobs(entries)
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            rows = list(pool.map(_analyze_job, jobs, [cfg] * len(jobs)))
    else:
        rows = [_analyze_job(j, cfg) for j in jobs]
    index = {"config": {**asdict(cfg.metrics)}, "entries": rows}
    write_atomic(cfg.out / "index.json", _dump(index))
    failed = [r for r in rows if r["status"] != "ok"]
    for r in failed:
        log.error("%s: %s", r["id"], r["error"])
    _run_log(cfg, f"analyze: {len(rows) - len(failed)} ok, {len(failed)} failed")
    print(f"analyzed {len(rows) - len(failed)}/{len(rows)} solos -> {cfg.out / 'index.json'}")
    return EXIT_PARTIAL if failed else EXIT_OK


def load_reports(out: Path) -> list[tuple[dict, MetricsReport]]:
    try:
        index = json.loads((out / "index.json").read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot read run index in {out}: {exc}") from exc
    rows = []
    for row in index["entries"]:
        if row["status"] == "ok":
            rows.append((row, MetricsReport.from_json(json.loads((out / row["report"]).read_text()))))
    return rows


def cmd_compare(out: Path, metric: str, cfg: RunConfig) -> int:
    if metric not in SCALAR_METRICS:
        raise ManifestError(f"unknown metric {metric!r}; choose from {', '.join(SCALAR_METRICS)}")
    by_artist: dict[str, list[float]] = {}
    for row, rep in load_reports(out):
        value = getattr(rep, metric)
        by_artist.setdefault(row["artist"], [])
        if value is not None:
            by_artist[row["artist"]].append(float(value))
    samples = [ArtistSample(a, metric, tuple(v)) for a, v in by_artist.items()]
    matrix = pairwise_matrix(samples, cfg.alpha)
    summary = {}
    for s in samples:
        if s.values:
            sm = summarize(s.values)
            summary[s.artist] = {"mean": sm.mean, "std": sm.std, "count": sm.count}
    result = {**matrix.to_json(), "summary": summary}
    write_atomic(cfg.out / f"compare-{metric}.json", _dump(result))
    write_atomic(cfg.out / f"compare-{metric}.csv", matrix.to_csv())
    print(matrix.to_csv(), end="")
    print()
    for acr, (artist, sm) in zip(acronyms(list(summary)), summary.items()):
        std = "n/a" if sm["std"] is None else f"{sm['std']:.4f}"
        print(f"{acr:>5}  {artist:<24} mean {sm['mean']:.4f}  std {std}  n {sm['count']}")
    return EXIT_OK


def cmd_smallworld(nets: list[tuple[str, SoloNetwork | Exception]], cfg: RunConfig) -> int:
    reports, rows, failed = [], [], 0
    for ident, net in nets:
        if isinstance(net, Exception):
            rows.append({"id": ident, "status": "error", "error": f"{type(net).__name__}: {net}"})
            failed += 1
            continue
        try:
            rep = small_world_assessment(net, cfg.replicates, cfg.seed)
        except SoloNetError as exc:
            rows.append({"id": ident, "status": "error", "error": f"{type(exc).__name__}: {exc}"})
            failed += 1
            continue
        reports.append(rep)
        rows.append({"id": ident, "status": "ok", **rep.to_json()})
    write_atomic(cfg.out / "smallworld.json", _dump({"thresholds": asdict(Thresholds()), "networks": rows}))
    if reports:
        print(format_table(reports))
    for r in rows:
        if r["status"] != "ok":
            log.error("%s: %s", r["id"], r["error"])
    return EXIT_PARTIAL if failed else EXIT_OK


def _defined_mean(values) -> float | None:
    vals = [v for v in values if v is not None]
    return math.fsum(vals) / len(vals) if vals else None


def cmd_concat(entries: list[ManifestEntry], artist: str, cfg: RunConfig) -> int:
    jobs = [j for j in expand_jobs(entries) if j.entry.artist == artist]
    if not jobs:
        raise UnknownArtist(f"no solos for artist {artist!r}")
    tracks, solo_reports, failed = [], [], 0
    for job in jobs:
        try:
            track, _ = job_track(job)
        except (OSError, SoloNetError) as exc:
            log.error("%s: %s: %s", job.id, type(exc).__name__, exc)
            failed += 1
            continue
        tracks.append(track)
        solo_reports.append(analyze_track(track, cfg.metrics))
    if not tracks:
        log.error("no solo of %s could be read", artist)
        return EXIT_PARTIAL
    joined = concatenate_tracks(tracks, cfg.policy)
    net = build_network(joined, cfg.spelling)
    report = analyze_track(joined, cfg.metrics)
    comparison = {
        "clustering": (report.clustering, _defined_mean(r.clustering for r in solo_reports)),
        "mean_degree": (report.mean_degree, _defined_mean(r.mean_degree for r in solo_reports)),
        "avg_distance": (report.avg_distance, _defined_mean(r.avg_distance for r in solo_reports)),
    }
    try:
        sw = small_world_assessment(net, cfg.replicates, cfg.seed).to_json()
    except SoloNetError as exc:
        sw = {"error": f"{type(exc).__name__}: {exc}"}
    result = {
        "artist": artist,
        "policy": ConcatPolicy(cfg.policy).value,
        "solos": len(tracks),
        "concatenated": report.to_json(),
        "comparison": {k: {"concatenated": a, "solo_average": b} for k, (a, b) in comparison.items()},
        "smallworld": sw,
    }
    write_atomic(cfg.out / f"concat-{slug(artist)}.json", _dump(result))
    print(f"{artist}: {len(tracks)} solos, {report.length} events, {report.nodes} nodes ({result['policy']})")
    print(f"{'metric':<14} {'concatenated net':>17} {'solo average':>13}")
    for k, (a, b) in comparison.items():
        fa = "n/a" if a is None else f"{a:.2f}"
        fb = "n/a" if b is None else f"{b:.2f}"
        print(f"{k:<14} {fa:>17} {fb:>13}")
    return EXIT_PARTIAL if failed else EXIT_OK


def cmd_export(nets: list[tuple[str, SoloNetwork | Exception]], fmt: str, cfg: RunConfig) -> int:
    failed = 0
    for ident, net in nets:
        if isinstance(net, Exception):
            log.error("%s: %s: %s", ident, type(net).__name__, net)
            failed += 1
            continue
        text = net.dumps() + "\n" if fmt == "json" else net.to_csv()
        write_atomic(cfg.out / "networks" / f"{ident}.{fmt}", text)
    print(f"exported {len(nets) - failed}/{len(nets)} networks -> {cfg.out / 'networks'}")
    return EXIT_PARTIAL if failed else EXIT_OK


def _manifest_networks(entries: list[ManifestEntry], cfg: RunConfig):
    out = []
    for job in expand_jobs(entries):
        try:
            track, _ = job_track(job)
            out.append((job.id, build_network(track, cfg.spelling)))
        except (OSError, SoloNetError) as exc:
            out.append((job.id, exc))
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--replicates", type=int, default=100, help="random graphs per small-world test")
    common.add_argument("--alpha", type=float, default=0.05, help="significance level")
    common.add_argument("--policy", choices=[p.value for p in ConcatPolicy], default="seamed")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--eigen-tol", type=float, default=1e-10)
    common.add_argument("--eigen-max-iter", type=int, default=10_000)
    common.add_argument("--spelling", choices=["written", "midi"], default="written")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="solonet", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="metrics report per solo")
    p.add_argument("--manifest", required=True)
    p = sub.add_parser("compare", parents=[common], help="pairwise t-tests across artists")
    p.add_argument("--metric", required=True, choices=SCALAR_METRICS)
    p = sub.add_parser("smallworld", parents=[common], help="compare against random graphs")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--manifest")
    g.add_argument("--network", help="network JSON written by export-network")
    p = sub.add_parser("concat", parents=[common], help="metrics of an artist's concatenated solos")
    p.add_argument("--manifest", required=True)
    p.add_argument("--artist", required=True)
    p = sub.add_parser("export-network", parents=[common], help="write solo networks as JSON or CSV")
    p.add_argument("--manifest", required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = RunConfig(
            seed=args.seed,
            replicates=args.replicates,
            eigen_tol=args.eigen_tol,
            eigen_max_iter=args.eigen_max_iter,
            alpha=args.alpha,
            policy=args.policy,
            spelling=args.spelling,
            out=args.out,
            workers=args.workers,
        )
        if args.command == "analyze":
            return cmd_analyze(load_manifest(args.manifest), cfg)
        if args.command == "compare":
            return cmd_compare(args.out, args.metric, cfg)
        if args.command == "smallworld":
            if args.network:
                try:
                    net = SoloNetwork.from_json(json.loads(Path(args.network).read_text()))
                except (OSError, KeyError, ValueError) as exc:
                    raise ManifestError(f"cannot read network {args.network}: {exc}") from exc
                nets = [(Path(args.network).stem, net)]
            else:
                nets = _manifest_networks(load_manifest(args.manifest), cfg)
            return cmd_smallworld(nets, cfg)
        if args.command == "concat":
            return cmd_concat(load_manifest(args.manifest), args.artist, cfg)
        if args.command == "export-network":
            return cmd_export(_manifest_networks(load_manifest(args.manifest), cfg), args.format, cfg)
    except (ManifestError, UnknownArtist, InsufficientGroups) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_CONFIG


def entry_point() -> None:
    sys.exit(main())
