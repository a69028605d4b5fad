"""Normalized LZ information asymmetry over the built-in corpus."""
import argparse
import itertools
import json
from pathlib import Path

from aitlab.lzestimator import builtin_corpus, lz_cost, lz_info, ncd


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=float, default=0.25)
    ap.add_argument("--out", default="reports/lz_symmetry.json")
    args = ap.parse_args()

    corpus = builtin_corpus()
    rows = []
    for a, b in itertools.combinations(corpus, 2):
        x, y = corpus[a], corpus[b]
        iyx, ixy = lz_info(x, y), lz_info(y, x)
        rows.append({"x": a, "y": b, "cost_x": lz_cost(x), "cost_y": lz_cost(y),
                     "info_y_to_x": iyx, "info_x_to_y": ixy,
                     "asymmetry": abs(iyx - ixy) / max(1, abs(iyx), abs(ixy)),
                     "ncd_xy": ncd(x, y), "ncd_yx": ncd(y, x)})
    within = sum(r["asymmetry"] <= args.bound for r in rows)
    print(f"asymmetry <= {args.bound} for {within}/{len(rows)} pairs")
    for r in sorted(rows, key=lambda r: -r["asymmetry"])[:10]:
        print(f"  {r['x']:>24} {r['y']:>24} {r['info_y_to_x']:>6} {r['info_x_to_y']:>6} "
              f"{r['asymmetry']:.3f}")
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(json.dumps({"bound": args.bound, "within": within,
                                          "pairs": len(rows), "rows": rows}, indent=1))


if __name__ == "__main__":
    main()
