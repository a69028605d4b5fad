"""Distribution of K(x) + log2 m(x) over every output of one table."""
import argparse
import json
from collections import Counter
from pathlib import Path

from aitlab.enumeration import EnumParams, cached_table
from aitlab.infotheory import Estimator, coding_gap


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--L", type=int, default=21)
    ap.add_argument("--T", type=int, default=256)
    ap.add_argument("--out", default="reports/coding_gap.json")
    args = ap.parse_args()

    params = EnumParams(args.L, args.T)
    est = Estimator(params, base=cached_table(params))
    rows = []
    for rec in est.table().sorted_records():
        rows.append({"output": rec.output, "khat": rec.min_len, "mass": str(rec.mass),
                     "programs": rec.program_count, "coding_gap": coding_gap(rec.output, est)})
    gaps = [r["coding_gap"] for r in rows]
    hist = Counter(int(g) for g in gaps)
    report = {"params": params.as_dict(), "min": min(gaps), "max": max(gaps),
              "histogram_floor_bits": dict(sorted(hist.items())), "outputs": rows}
    print(f"{len(rows)} outputs; gap min={min(gaps):.4f} max={max(gaps):.4f}")
    print("histogram (floor of gap in bits):", dict(sorted(hist.items())))
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(json.dumps(report, indent=1))


if __name__ == "__main__":
    main()
