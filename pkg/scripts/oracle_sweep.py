"""Compare the two ebit oracles (Gram rank vs coset decomposition) over every
run index of every family member with q and n below a bound, and tabulate the
|T_ss| profile.  Exits non-zero if any run index disagrees.

    python3 scripts/oracle_sweep.py --max-q 32
"""

import argparse
import sys

from eaqmds.families import FamilyParams, SkipInstance, scan_c_profile


def members(max_q, max_n):
    for tag in ("F1", "F2"):
        for l in range(3, 40, 2):
            for m in range(1, max_q):
                try:
                    p = FamilyParams(tag, l, m)
                except SkipInstance:
                    continue
                if p.q > max_q:
                    break
                if p.n <= max_n:
                    yield p


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-q", type=int, default=32)
    ap.add_argument("--max-n", type=int, default=100, help="skip longer codes (Gram ranks get slow)")
    args = ap.parse_args()

    bad = 0
    for p in members(args.max_q, args.max_n):
        prof = scan_c_profile(p, p.s - 2)
        mism = [pt.k for pt in prof if pt.tss != pt.gram]
        bad += len(mism)
        four = [pt.k for pt in prof if pt.tss == 4]
        profile = "".join(str(pt.tss // 4) if pt.tss % 4 == 0 and pt.tss < 40 else "*" for pt in prof)
        span = f"{four[0]}..{four[-1]}" if four else "-"
        print(f"{str(p):<42} c/4 by k': {profile}  c=4 at k'={span}"
              + (f"  MISMATCH at {mism}" if mism else ""), flush=True)
    print(f"{bad} disagreement(s)")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
