from treeaug.fixtures import load
from treeaug.instance import Instance, generate
from treeaug.structures import analyze, find_locking, find_twins, forbidden_set, leaf_matching
from treeaug.treeops import LinkSet, build, shadow_complete

from helpers import leafy

R, V, U, S, A, B, B2 = range(7)


def report_for(inst, root):
    t = build(inst, root)
    links = shadow_complete(t, LinkSet.from_pairs(inst.links))
    return t, links, analyze(t, links)


def test_lock_twins_and_locking():
    t, links, rep = report_for(load("LOCK"), R)
    assert rep.twin_links == {(A, B)}
    assert set(rep.stems) == {S}
    assert set(rep.locked) == {A}
    info = rep.locked[A]
    assert (info.twin, info.third, info.root) == (B, B2, U)
    assert info.locking_links == {(B, B2)}
    assert forbidden_set(rep) == {(A, B), (B, B2)}


def test_lock_without_au_stays_locked():
    inst = load("LOCK")
    reduced = Instance(7, inst.tree_edges, tuple(p for p in inst.links if set(p) != {A, U}))
    _, _, rep = report_for(reduced, R)
    assert rep.locked[A].root == U


def test_dtree_and_star_have_no_structures():
    for name, root in (("DTREE", 0), ("STAR4", 0)):
        _, _, rep = report_for(load(name), root)
        assert rep.twin_links == set() and rep.locked == {} and rep.W == set()


def test_p3_root_lca_is_not_twin():
    t, links, rep = report_for(load("P3"), 1)
    assert rep.twin_links == set()


def test_lock_matching_is_empty():
    t, links, rep = report_for(load("LOCK"), R)
    assert len(leaf_matching(t, links, rep.W)) == 0


def test_report_invariants_on_random_instances():
    for seed in range(300):
        n = 5 + seed % 8
        inst = leafy(seed, n, n) if seed % 2 else generate(n, n // 2, seed=seed)
        t, links, rep = report_for(inst, seed % n)
        leaves = set(t.leaves())
        for s, (a, b) in rep.stems.items():
            assert s != t.root and s not in leaves
            assert t.lca(a, b) == s
            assert set(t.subtree(s)) == set(t.path_nodes(a, b))
        for a, info in rep.locked.items():
            assert (min(a, info.twin), max(a, info.twin)) in rep.twin_links
            sub = set(t.subtree(info.root))
            assert info.root != t.root
            assert set(t.subtree_leaves(info.root)) == {a, info.twin, info.third}
            up = max((l.other(a) for l in links.incident(a)), key=lambda x: -t.depth[x])
            assert up in sub
        assert rep.W == forbidden_set(rep)
        assert all(u in leaves and v in leaves for u, v in rep.W)
        twins, _ = find_twins(t, links)
        assert find_locking(t, links, twins) == rep.locked
