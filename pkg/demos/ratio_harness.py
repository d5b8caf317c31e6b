"""Compare the solver with the exhaustive optimum on random instances."""

from collections import Counter
from fractions import Fraction

from treeaug import SolveOptions, exact_opt, generate, tree_cover, verify_cover
from treeaug.instance import MODELS

ratios = Counter()
kinds = Counter()
for seed in range(400):
    inst = generate(4 + seed % 9, seed % 8, MODELS[seed % 4], seed=seed)
    sol = tree_cover(inst, SolveOptions(audit=True))
    assert verify_cover(inst, sol.links)
    k, _ = exact_opt(inst)
    ratios[Fraction(sol.size, k)] += 1
    kinds.update(r.kind for r in sol.stats.trace)

for r in sorted(ratios):
    print(f"ratio {str(r):>5}: {ratios[r]:4d} instances")
print("worst", max(ratios), "- guarantee 3/2")
print("contractions by kind:", dict(kinds))
