"""Walk through the LOCK fixture: structures, matching, contractions, audit."""

from treeaug import SolveOptions, exact_opt, tree_cover
from treeaug.fixtures import LOCK, load
from treeaug.oracle import canonical_F
from treeaug.structures import analyze, leaf_matching
from treeaug.treeops import LinkSet, shadow_complete

names = "r v u s a b b'".split()   # node i+1 plays names[i]
inst = load("LOCK")
print(LOCK)

# root at r (node 1); the default root would be v, the lowest node of degree >= 2
t = inst.rooted(0)
links = shadow_complete(t, LinkSet.from_pairs(inst.links))
print(len(inst.links), "input links,", len(links), "after shadow completion")

rep = analyze(t, links)
pair = lambda p: f"{names[p[0]]}{names[p[1]]}"
print("twin links:", [pair(p) for p in sorted(rep.twin_links)])
for leaf, info in rep.locked.items():
    print(f"{names[leaf]} is locked by {names[info.twin]}{names[info.third]}, locking tree at {names[info.root]}")
print("W:", [pair(p) for p in sorted(rep.W)])
print("M:", [pair(p) for p in leaf_matching(t, links, rep.W)])   # empty: every leaf link is in W

sol = tree_cover(inst, SolveOptions(root=0, audit=True))
for rec, audit in zip(sol.stats.trace, sol.stats.audit):
    print(f"{rec.kind:12} leaves={rec.leaves} cover={rec.cover} coupons(x2)={rec.coupons_x2}  {audit.line()}")
print("final budget:", sol.stats.audit[-1].line())

print("solution:", [pair(inst.links[i]) for i in sol.links], "size", sol.size)
print("optimum:", exact_opt(inst)[0])
F = canonical_F(inst, root=0)
print("canonical F:", [pair(p) for p in F.links], "twin links in F:", F.twin_count)
