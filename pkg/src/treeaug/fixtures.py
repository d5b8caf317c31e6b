"""Small hand-built instances used by the tests and demos.

Node names in comments refer to the roles the nodes play; ids are 1-based
as in the text format.
"""

from .instance import instance_from_text

# path 1-2-3 with the single link 1-3
P3 = """\
p tap 3 1
e 1 2
e 2 3
l 1 3
"""

# center 1, leaves a=2 b=3 c=4 d=5; links ab, bc, cd
STAR4 = """\
p tap 5 3
e 1 2
e 1 3
e 1 4
e 1 5
l 2 3
l 3 4
l 4 5
"""

# r=1 v=2 u=3 s=4 a=5 b=6 b'=7: twins a,b under stem s, a locked by bb'
LOCK = """\
p tap 7 4
e 1 2
e 2 3
e 3 4
e 4 5
e 4 6
e 3 7
l 5 6
l 6 7
l 5 3
l 7 1
"""

# r=1 v=2 u=3 b=4 b'=5 a=6: the subtree at u is 3-leaf dangerous
DTREE = """\
p tap 6 3
e 1 2
e 2 3
e 3 4
e 3 5
e 3 6
l 4 5
l 6 5
l 4 1
"""

# DTREE with leaf b replaced by a stem s=4 over twins x=5, y=8
# (r=1 v=2 u=3 b'=6 a=7); x is matched to b'
DTREE4 = """\
p tap 8 4
e 1 2
e 2 3
e 3 4
e 4 5
e 4 8
e 3 6
e 3 7
l 5 8
l 5 6
l 7 6
l 5 1
"""

TEXTS = {"P3": P3, "STAR4": STAR4, "LOCK": LOCK, "DTREE": DTREE, "DTREE4": DTREE4}


def load(name: str):
    return instance_from_text(TEXTS[name])
