#!/usr/bin/env python3
"""Seeded fuzz harness for the integer reduction and normalization stack.

Each round builds a random unimodular window from elementary operations,
reduces it back to the identity, and checks the replay; in parallel it
scrambles a trivial-by-construction presentation with random Nielsen moves
and verifies the normalization certificate end to end.

Usage: python scripts/fuzz_reduction.py [--seed S] [--rounds N]
"""

import argparse
import random
import sys
import time

sys.path.insert(0, "tests")  # reuse the suite's generators

from asphere import (
    Presentation,
    apply_base_change,
    apply_row_ops,
    exponent_matrix,
    normalize,
    reduce_to_identity,
)
from support import random_trivialish_presentation, random_unimodular


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--rounds", type=int, default=1000)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    start = time.monotonic()
    op_total = 0
    for round_no in range(1, args.rounds + 1):
        n = rng.randint(1, 10)
        m = random_unimodular(rng, n, 50)
        log = reduce_to_identity(m)
        op_total += len(log)
        if not apply_row_ops(log, m).is_identity():
            print(f"FAIL round {round_no}: replay mismatch for {m.to_rows()}")
            return 1

        p = random_trivialish_presentation(rng, rng.randint(1, 4))
        cert = normalize(p)
        rewritten = Presentation(p.n_generators, cert.new_relators)
        ok = (
            cert.exponent_check
            and exponent_matrix(rewritten).is_identity()
            and all(
                apply_base_change(cert.base_change.inverse(), new) == old
                for old, new in zip(p.relators, cert.new_relators)
            )
        )
        if not ok:
            print(f"FAIL round {round_no}: bad certificate for seed {args.seed}")
            return 1
    elapsed = time.monotonic() - start
    print(
        f"OK: {args.rounds} rounds, {op_total} reduction ops total, "
        f"{elapsed:.2f}s (seed {args.seed})"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
