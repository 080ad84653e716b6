#!/usr/bin/env python3
"""Writes the small synthetic season used by the demo, the tests and the sample config.

Three player archetypes (defender, midfielder, forward) with noisy per-season
counts. Output is deterministic for a given --seed.
"""
import argparse
import csv
import random
from pathlib import Path

ARCHETYPES = {
    "def": dict(positions=["DC", "DL;DC", "DR", "DC;DMC"], shots=4, passes=900, tackles=70, goals=0.3, height=186),
    "mid": dict(positions=["MC", "DMC;MC", "AMC;MC", "ML", "MR"], shots=18, passes=1300, tackles=45, goals=2, height=178),
    "fwd": dict(positions=["FW", "AML;FW", "AMR", "FW;AMC"], shots=60, passes=450, tackles=12, goals=11, height=181),
}


def player(rng, pid, kind, minutes):
    a = ARCHETYPES[kind]
    scale = minutes / 2700.0
    shots = max(0, round(rng.gauss(a["shots"], a["shots"] * 0.3) * scale))
    in_box = rng.randint(0, shots)
    out_box = shots - in_box
    passes = max(1, round(rng.gauss(a["passes"], a["passes"] * 0.2) * scale))
    accurate = round(passes * min(0.95, max(0.5, rng.gauss(0.8, 0.06))))
    tackles = max(0, round(rng.gauss(a["tackles"], a["tackles"] * 0.3) * scale))
    goals = max(0, round(rng.gauss(a["goals"], a["goals"] * 0.4 + 0.3) * scale))
    return {
        "id": pid,
        "minutes": minutes,
        "positions": rng.choice(a["positions"]),
        "league_score": round(rng.uniform(60, 90), 1),
        "team_points": rng.randint(25, 90),
        "shots": shots,
        "shots_in_box": in_box,
        "shots_out_box": out_box,
        "passes": passes,
        "passes_accurate": accurate,
        "tackles": tackles,
        "goals": goals,
        "height": round(rng.gauss(a["height"], 5)),
        "appearances": rng.randint(10, 38),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    ap.add_argument("--players", type=int, default=60)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    kinds = list(ARCHETYPES)
    rows = [player(rng, f"p{i + 1:03d}", kinds[i % 3], rng.randint(900, 3300)) for i in range(args.players)]
    with open(out / "toy_players.csv", "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)

    meta = [
        ("shots", "top_count", "", "", "", 1, "fit"),
        ("shots_in_box", "composition", "", "shots", "shot_zone", 1, ""),
        ("shots_out_box", "composition", "", "shots", "shot_zone", 1, ""),
        ("passes", "top_count", "", "", "", 1, "fit"),
        ("pass_accuracy", "success_rate", "passes_accurate", "passes", "", 1, ""),
        ("tackles", "top_count", "", "", "", 1, "fit"),
        ("goals", "top_count", "", "", "", 1, "1"),
        ("height", "characteristic", "", "", "", 1, ""),
        ("appearances", "appearance", "", "", "", 0.5, ""),
        ("positions", "position", "", "", "", 1, ""),
        ("league_team", "league_team", "", "", "", 1, ""),
    ]
    with open(out / "toy_metadata.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["name", "kind", "source", "parent", "composition_id", "weight", "transform"])
        w.writerows(meta)

    prev = [player(rng, r["id"], kinds[i % 3], rng.randint(900, 3300)) for i, r in enumerate(rows) if i % 5]
    with open(out / "toy_previous.csv", "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=list(prev[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(prev)


if __name__ == "__main__":
    main()
