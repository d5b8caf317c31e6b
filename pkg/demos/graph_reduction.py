"""Reduce a general graph to a tree of 2-edge-connected components and solve it."""

from treeaug import parse_instance, reduce_graph, tree_cover
from treeaug.instance import reduced_link_origin

# two triangles and a pendant path, joined by bridges
text = """\
p graph 8 9 4
e 1 2
e 2 3
e 3 1
e 3 4
e 4 5
e 5 6
e 6 4
e 6 7
e 7 8
l 1 8
l 2 5
l 7 5
l 8 3
"""
g = parse_instance(text)
tree, comp = reduce_graph(g)
print("component of each node:", [c + 1 for c in comp])
print("tree edges:", [(u + 1, v + 1) for u, v in tree.tree_edges])
print("tree links:", [(u + 1, v + 1) for u, v in tree.links])

sol = tree_cover(tree)
origin = reduced_link_origin(g, comp)
print("links to add:", [tuple(x + 1 for x in g.links[origin[i]]) for i in sol.links])
