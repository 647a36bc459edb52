#!/usr/bin/env python3
"""Generate the bundled synthetic assembly corpus under data/synthetic/.

The corpus mimics a toy-vehicle assembly: a canonical procedure with
per-video perturbations (swapped neighbours, repeated checks, skipped
optional steps). Output is committed; rerun only to change the corpus.
"""
import argparse
import json
import random
from pathlib import Path

PROCEDURE = [
    ("take", "chassis"),
    ("align", "chassis"),
    ("take", "wheel"),
    ("insert", "axle"),
    ("screw", "wheel"),
    ("take", "wheel"),
    ("screw", "wheel"),
    ("take", "handle_bar"),
    ("align", "handle_bar"),
    ("screw", "handle_bar"),
    ("take", "screwdriver"),
    ("tighten", "bolt"),
    ("put", "screwdriver"),
    ("check", "chassis"),
    ("plug", "battery"),
    ("check", "battery"),
]
OPTIONAL = {("check", "chassis"), ("check", "battery")}
# Median seconds per verb; nouns scale them.
VERB_TIME = {"take": 1.6, "align": 3.2, "insert": 4.0, "screw": 6.5, "tighten": 5.0,
             "put": 1.2, "check": 2.5, "plug": 3.0}
NOUN_SCALE = {"chassis": 1.3, "wheel": 1.0, "axle": 1.1, "handle_bar": 1.2,
              "screwdriver": 0.8, "bolt": 1.0, "battery": 0.9}


def perturb(rng, steps):
    steps = list(steps)
    if rng.random() < 0.5:
        i = rng.randrange(1, len(steps) - 1)
        steps[i], steps[i + 1] = steps[i + 1], steps[i]
    steps = [s for s in steps if s not in OPTIONAL or rng.random() < 0.8]
    if rng.random() < 0.3:
        i = rng.randrange(2, len(steps))
        steps.insert(i, ("check", "chassis"))
    return steps


def duration(rng, verb, noun):
    base = VERB_TIME[verb] * NOUN_SCALE[noun]
    return round(base * rng.lognormvariate(0.0, 0.25), 2)


def video_rows(rng, video_id, steps):
    t = round(rng.uniform(0.5, 3.0), 2)
    rows = []
    for verb, noun in steps:
        d = duration(rng, verb, noun)
        rows.append((video_id, verb, noun, t, round(t + d, 2)))
        t = round(t + d + rng.uniform(0.0, 0.8), 2)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "synthetic"))
    ap.add_argument("--videos", type=int, default=12)
    ap.add_argument("--seed", type=int, default=20240611)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    with open(out / "annotations.csv", "w", newline="\n") as f:
        f.write("video_id,verb,noun,start_s,end_s\n")
        for v in range(args.videos):
            for row in video_rows(rng, f"train_{v:02d}", perturb(rng, PROCEDURE)):
                f.write("{},{},{},{},{}\n".format(*row))

    # Held-out episode with a mistake: the battery is plugged before the bolt is tightened.
    test = [s for s in PROCEDURE if s != ("check", "chassis")]
    i = test.index(("plug", "battery"))
    test.insert(test.index(("tighten", "bolt")), test.pop(i))
    labels = [f"{v}_{n}" for v, n in test]
    (out / "test_sequence.txt").write_text("".join(l + "\n" for l in labels))

    # Session: observed steps with durations and a noisy Top-5 recommended set.
    vocab = sorted({f"{v}_{n}" for v, n in PROCEDURE})
    with open(out / "session.jsonl", "w", newline="\n") as f:
        for k, (verb, noun) in enumerate(test):
            label = labels[k]
            others = [x for x in vocab if x != label]
            rng.shuffle(others)
            rec = others[:4]
            if rng.random() < 0.85:
                rec.insert(rng.randrange(0, 5), label)
            else:
                rec.append(others[4])
            row = {"label": label, "duration_s": duration(rng, verb, noun), "recommended": rec}
            f.write(json.dumps(row, separators=(",", ":")) + "\n")

    (out / "expected_sequence.txt").write_text("".join(f"{v}_{n}\n" for v, n in PROCEDURE))
    with open(out / "dictionary.txt", "w") as f:
        f.write("# actions the operator may be guided towards\n")
        for x in vocab:
            if not x.startswith("check_"):
                f.write(x + "\n")


if __name__ == "__main__":
    main()
