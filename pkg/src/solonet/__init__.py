"""Musical solos as complex networks: MusicXML ingestion, note networks,
network metrics, random-graph baselines and per-artist statistics."""

from .model import ConcatPolicy, MelodyTrack, NoteEvent, Pitch, concatenate_tracks, node_key, track_length, transpose
from .musicxml import ScoreDocument, TrackSelector, extract_track, parse_musicxml, read_musicxml
from .network import (
    SoloNetwork,
    UndirectedView,
    adjacency_matrix,
    build_network,
    undirected_projection,
    weakly_connected_components,
)
from .metrics import (
    MetricsConfig,
    MetricsReport,
    analyze_track,
    average_distance,
    betweenness,
    clustering_coefficient,
    degree_distribution,
    degree_profile,
    eigenvector_centrality,
    metrics_report,
    weighted_betweenness,
)
from .baselines import SmallWorldReport, Verdict, random_graph, small_world_assessment
from .stats import ArtistSample, TTestMatrix, pairwise_matrix, pooled_distribution, summarize, welch_t_test

__version__ = "0.1.0"
