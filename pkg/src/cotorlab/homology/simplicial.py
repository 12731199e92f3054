"""Rational simplicial cohomology."""

from ..linalg import RationalMatrix
from .complex import CochainComplex, cohomology_dims


def _vertex_key(v):
    return (type(v).__name__, repr(v))


def simplicial_cochain_complex(K, top, reduced=False):
    """Cochains on ordered simplices of K in degrees 0..top (with the empty
    face in degree -1 when reduced, shifted so that list index 0 is degree -1)."""
    verts = sorted({v for f in K.faces for v in f}, key=_vertex_key)
    pos = {v: i for i, v in enumerate(verts)}
    lo = -1 if reduced else 0
    simplices = []
    for d in range(lo, top + 1):
        fs = [tuple(sorted(f, key=pos.__getitem__)) for f in K.faces if len(f) == d + 1]
        fs.sort(key=lambda s: [pos[v] for v in s])
        simplices.append(fs)
    index = [{s: i for i, s in enumerate(fs)} for fs in simplices]
    diffs = []
    for k in range(len(simplices) - 1):
        cols = []
        for s in simplices[k]:
            col = {}
            # coboundary: sigma -> sum over cofaces tau of sign(tau, sigma) tau
            for v in verts:
                if v in s:
                    continue
                t = tuple(sorted(s + (v,), key=pos.__getitem__))
                j = index[k + 1].get(t)
                if j is not None:
                    col[j] = (-1) ** t.index(v)
            cols.append(col)
        diffs.append(RationalMatrix(len(simplices[k + 1]), len(simplices[k]), cols))
    return CochainComplex([len(s) for s in simplices], diffs, bases=simplices, name="simplicial")


def simplicial_cohomology(K, n_max, reduced=False):
    """dims H^0..H^n_max (reduced cohomology when `reduced`)."""
    X = simplicial_cochain_complex(K, n_max + 1, reduced=reduced)
    dims = cohomology_dims(X, len(X.d) - 1)
    return dims[1 : n_max + 2] if reduced else dims[: n_max + 1]
