"""Small fixed posets used in tests and the ``verify`` command."""

from .poset import Poset, parse_poset

TEN_VERTEX = """poset v1
n=10
names=a,b,c,d,e,f,g,h,i,j
a<d
a<e
a<f
b<f
a<g
c<g
b<h
c<h
d<h
e<h
d<i
e<i
f<i
g<i
f<j
g<j
h<j
"""


def ten_vertex() -> Poset:
    """Ten-vertex (3+1)-free poset with one tangle ({f, g}, {b, c})."""
    return parse_poset(TEN_VERTEX)
