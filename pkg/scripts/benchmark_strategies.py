"""HLT against Felsch: index, peak rows and time on the finite catalog
entries (F1 and F3 over the subgroup <a,b,p,q,t,u>), checking that the
standardized tables agree.

    python scripts/benchmark_strategies.py
"""

import time

from amalgam_cgt.catalog import presentation
from amalgam_cgt.coset_enum import EnumerationLimits, enumerate_cosets
from amalgam_cgt.images import X_GENERATORS

CASES = [("Zstar", ()), ("Xstar", ()), ("Ystar", ()), ("AGL23", ()), ("C3test", ()),
         ("F2", ()), ("F4", ()), ("F1", X_GENERATORS), ("F3", X_GENERATORS)]


def main():
    print(f"{'case':12} {'index':>6} {'hlt rows':>9} {'hlt s':>7} {'felsch rows':>11} {'felsch s':>8} same")
    for name, gens in CASES:
        P = presentation(name)
        sub = [P.word(x) for x in gens]
        out = {}
        for s in ("hlt", "felsch"):
            t0 = time.perf_counter()
            t = enumerate_cosets(P, sub, EnumerationLimits(strategy=s))
            out[s] = (t, time.perf_counter() - t0)
        (a, ta), (b, tb) = out["hlt"], out["felsch"]
        label = name + (" / X" if gens else "")
        print(f"{label:12} {a.live_count:>6} {a.stats['max_active']:>9} {ta:7.2f} "
              f"{b.stats['max_active']:>11} {tb:8.2f} {a == b}")


if __name__ == "__main__":
    main()
