"""Push seeded random group presentations through the complex-to-graph pipeline.

For each presentation: build its 2-complex, encode it as a graph, check that
the independence complex of that graph is the barycentric subdivision, compare
abelianizations, and report pi_1 and (when small enough) psi.

    python scripts/presentation_experiment.py --count 10 --seed 2
"""

import argparse
import random
import sys
import time
from dataclasses import dataclass

from indcomplex.complex import Presentation
from indcomplex.verify import DEFAULT_PSI_CEILING, PipelineTooLarge, pipeline_presentation


@dataclass
class ExperimentConfig:
    count: int = 10
    seed: int = 2
    n_gens: int = 2
    max_relators: int = 2
    max_relator_length: int = 4
    psi_ceiling: int = DEFAULT_PSI_CEILING


def random_presentation(rng: random.Random, cfg: ExperimentConfig) -> Presentation:
    rels = tuple(
        tuple(rng.choice([1, -1]) * rng.randint(1, cfg.n_gens)
              for _ in range(rng.randint(1, cfg.max_relator_length)))
        for _ in range(rng.randint(1, cfg.max_relators))
    )
    return Presentation(cfg.n_gens, rels)


def main(cfg: ExperimentConfig) -> int:
    rng = random.Random(cfg.seed)
    named = [Presentation(1, ((1,),)), Presentation(1), Presentation(1, ((1, 1),))]
    presentations = named + [random_presentation(rng, cfg) for _ in range(cfg.count)]
    failures = 0
    for p in presentations:
        t = time.perf_counter()
        try:
            r = pipeline_presentation(p, psi_ceiling=cfg.psi_ceiling)
        except PipelineTooLarge as exc:
            print(f"{p}\n  skipped: {exc}")
            continue
        ok = r.abelian_match and r.isomorphic is True and r.consistent
        failures += not ok
        print(p)
        for line in r.lines():
            print("  " + line)
        print(f"  [{'ok' if ok else 'FAIL'}] {time.perf_counter() - t:.2f}s")
    print(f"{len(presentations) - failures}/{len(presentations)} presentations consistent")
    return 1 if failures else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--count", type=int, default=ExperimentConfig.count)
    ap.add_argument("--seed", type=int, default=ExperimentConfig.seed)
    ap.add_argument("--gens", type=int, default=ExperimentConfig.n_gens)
    ap.add_argument("--psi-ceiling", type=int, default=ExperimentConfig.psi_ceiling)
    a = ap.parse_args()
    sys.exit(main(ExperimentConfig(count=a.count, seed=a.seed, n_gens=a.gens, psi_ceiling=a.psi_ceiling)))
