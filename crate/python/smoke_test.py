#!/usr/bin/env python3
"""Smoke test for the tspga extension module.

Builds nothing itself: it looks for a compiled libtspga.so under target/
(release preferred, then debug), stages it into a temp directory under the
importable name tspga.so, and exercises the bound surface end to end.

Run after either of:
    cargo build -p tspga-py --release --features extension-module
    cargo build -p tspga-py --features extension-module
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def stage_module(tmp: Path) -> None:
    candidates = [
        ROOT / "target" / profile / "libtspga.so" for profile in ("release", "debug")
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit(
            "libtspga.so not found; build it first:\n"
            "  cargo build -p tspga-py --release --features extension-module"
        )
    newest = max(built, key=lambda p: p.stat().st_mtime)
    shutil.copy2(newest, tmp / "tspga.so")
    sys.path.insert(0, str(tmp))


def check(label: str, ok: bool, detail: str = "") -> None:
    if not ok:
        sys.exit(f"FAIL: {label}" + (f" ({detail})" if detail else ""))
    print(f"PASS: {label}")


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        stage_module(Path(tmp))
        import tspga

        check("module import", hasattr(tspga, "run_ga"))
        check("rng algorithm exposed", tspga.RNG_ALGORITHM == "chacha8")

        # Worked-example replays.
        parent = tspga.Tour.from_cities([5, 3, 10, 2, 1, 8, 9, 7, 4, 6])
        slid = tspga.slide(parent, 3, 8)
        check("slide replay", slid.order == [5, 3, 10, 1, 8, 9, 7, 2, 4, 6], str(slid.order))
        inverted = tspga.inversion(parent, 3, 8)
        check(
            "inversion replay",
            inverted.order == [5, 3, 10, 7, 9, 8, 1, 2, 4, 6],
            str(inverted.order),
        )

        coords = [
            (0.0, 0.0) if i == 7 else (1.0, 0.0) if i == 3 else (100.0 * i, 0.0)
            for i in range(1, 11)
        ]
        geom = tspga.Instance("replay", coords)
        oracle = tspga.Oracle(geom)
        check("nearest neighbour", oracle.nearest(7) == 3, str(oracle.nearest(7)))
        a = tspga.Tour.from_cities([5, 3, 10, 2, 1, 8, 9, 7, 4])
        swapped = tspga.rgibnnm_at(a, 8, 5, oracle)
        check(
            "rgibnnm stage replay",
            swapped.order == [5, 3, 10, 2, 1, 8, 7, 9, 4],
            str(swapped.order),
        )

        # Random operators keep the permutation.
        rng = tspga.Rng(11)
        t = tspga.Tour.random(12, rng)
        sq = tspga.Instance("square12", [(float(i), float(i * i % 7)) for i in range(12)])
        sq_oracle = tspga.Oracle(sq)
        for name, child in [
            ("exchange", tspga.exchange(t, 2, 9)),
            ("rgibnnm", tspga.rgibnnm(t, rng, sq_oracle)),
            ("irgibnnm", tspga.irgibnnm(t, rng, sq_oracle)),
        ]:
            check(f"{name} closure", sorted(child.order) == list(range(1, 13)))

        got = tspga.sbm(t, rng, sq_oracle, [t])
        check("sbm returns a fresh candidate", got is not None)
        cand, cost, origin = got
        check("sbm candidate is fresh", cand != t and sorted(cand.order) == list(range(1, 13)))
        check(
            "sbm cost matches oracle",
            abs(cost - sq_oracle.tour_cost(cand)) < 1e-9,
            f"{cost} vs {sq_oracle.tour_cost(cand)}",
        )
        check("sbm origin named", origin in ("slide", "inversion", "irgibnnm"), origin)

        # Errors surface as ValueError.
        for label, thunk in [
            ("duplicate city rejected", lambda: tspga.Tour([1, 1, 3])),
            ("bad operator rejected", lambda: tspga.run_ga(sq, operator="mystery")),
            ("bad bounds rejected", lambda: tspga.slide(t, 9, 2)),
        ]:
            try:
                thunk()
            except ValueError:
                check(label, True)
            else:
                check(label, False, "no ValueError raised")

        # A short seeded run on the bundled eil51.
        inst = tspga.Instance.from_file(str(ROOT / "instances" / "eil51.tsp"))
        check("eil51 loads", inst.dimension == 51 and inst.known_optimal == 426.0)
        result = tspga.run_ga(inst, operator="sbm", population_size=40, generations=150, seed=42)
        orc = tspga.Oracle(inst)
        check(
            "run_ga fitness consistent",
            abs(result.best_fitness - orc.tour_cost(result.best_tour)) < 1e-9,
        )
        conv = result.convergence
        check("convergence length", len(conv) == 151, str(len(conv)))
        check(
            "convergence monotone",
            all(b[1] <= a[1] for a, b in zip(conv, conv[1:])),
        )
        check(
            "run beats random init",
            result.best_fitness < conv[0][1],
            f"{result.best_fitness} vs {conv[0][1]}",
        )

        again = tspga.run_ga(inst, operator="sbm", population_size=40, generations=150, seed=42)
        check(
            "runs are seed deterministic",
            again.best_fitness == result.best_fitness
            and again.best_tour == result.best_tour
            and again.convergence == result.convergence,
        )

        print("smoke test OK")


if __name__ == "__main__":
    main()
