"""Build the four-bar demo melody's network and print its metrics."""

from pathlib import Path

from solonet import TrackSelector, analyze_track, build_network, degree_profile, extract_track, read_musicxml

DEMO = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "demo.musicxml"


def main():
    track = extract_track(read_musicxml(DEMO), TrackSelector("P1"), "Example", "Demo")
    net = build_network(track)
    prof = degree_profile(net)
    print(f"{len(track)} events, {net.n} nodes, {len(net.edges)} links, total weight {net.total_weight}")
    print(f"{'node':<10} {'in':>3} {'out':>3} {'w-in':>5} {'w-out':>5}")
    for i, label in enumerate(net.nodes):
        print(f"{label:<10} {prof.in_degree[i]:>3} {prof.out_degree[i]:>3} {prof.weighted_in[i]:>5} {prof.weighted_out[i]:>5}")
    print(analyze_track(track).dumps())


if __name__ == "__main__":
    main()
