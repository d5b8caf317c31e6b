"""The dangerous-tree detour on DTREE and DTREE4.

In DTREE the only minimally semi-closed tree is the subtree at u, and it is
3-leaf dangerous: contracting it with M' + up(U') would spend more credit
than it holds. The solver switches bb' to ab' and contracts a larger tree.
"""

from treeaug import SolveOptions, exact_opt, tree_cover
from treeaug.contraction import init_state
from treeaug.fixtures import load
from treeaug.semiclosed import classify_dangerous, find_tree, minimal_semi_closed
from treeaug.structures import analyze, leaf_matching

for name, names in (("DTREE", "r v u b b' a".split()), ("DTREE4", "r v u s x b' a y".split())):
    inst = load(name)
    st = init_state(inst, 0)
    rep = analyze(st.orig_tree, st.base)
    st.install_matching(leaf_matching(st.orig_tree, st.base, rep.W).pairs)
    mate = st.mate()
    print(f"== {name}: M =", [f"{names[u]}{names[v]}" for u, v in sorted(st.pairs)])

    family = [(v, classify_dangerous(st, mate, v)) for v in minimal_semi_closed(st, mate)]
    # a 4-leaf ordering is taken after the twin link xy is contracted, so
    # 's' there names the merged node {s, x, y}
    for view, verdict in family:
        print(f"minimally semi-closed at {names[view.root]}: {verdict.kind}",
              "ordering", [names[x] for x in verdict.ordering] if verdict.ordering else "-")

    view, cover = find_tree(st, mate, family)
    print(f"find_tree picks the subtree at {names[view.root]} with",
          [f"{names[l.u]}{names[l.v]}" for l in cover])

    sol = tree_cover(inst, SolveOptions(root=0, audit=True))
    print("trace:", [r.kind for r in sol.stats.trace], "audit:", [a.line() for a in sol.stats.audit])
    print("size", sol.size, "optimum", exact_opt(inst)[0])
    print()
