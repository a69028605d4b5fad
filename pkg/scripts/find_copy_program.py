"""Search for the shortest program that copies its condition to the output.

A program qualifies if, for every probe string x, running it with condition x
halts and prints x.  The probe set is all strings of length <= 4, which is
enough to rule out every non-copier found at these lengths.
"""
import argparse
import itertools

from aitlab.enumeration import EnumParams, enumerate_programs
from aitlab.machine import disassemble


def copiers(L: int, T: int, probes: list[str]) -> set[str]:
    found = None
    for x in probes:
        table = enumerate_programs(EnumParams(L, T, x))
        hits = {p for p, out in table.halting_programs() if out == x}
        found = hits if found is None else found & hits
        if not found:
            break
    return found or set()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-L", type=int, default=24)
    ap.add_argument("--T", type=int, default=256)
    args = ap.parse_args()
    probes = ["".join(b) for n in range(5) for b in itertools.product("01", repeat=n)]
    for L in range(3, args.max_L + 1, 3):
        hits = copiers(L, args.T, probes)
        print(f"L={L}: {len(hits)} copy programs")
        for p in sorted(hits):
            print("  ", p, " ".join(op.name for op in disassemble(p)))
        if hits:
            break


if __name__ == "__main__":
    main()
