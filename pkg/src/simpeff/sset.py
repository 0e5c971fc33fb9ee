"""Finite truncated simplicial sets and the geometric condition checkers.

Simplices at each level 0..K are dense integer ids; face and degeneracy
tables are plain lists.  Degenerate simplices are stored explicitly, so all
checkers reduce to table lookups.  Universally quantified conditions are
checked up to the truncation bound and reports state that bound.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .util import InputError, StructureError

SPINE = "spine"
BOUNDARY = "boundary"


class TruncatedSSet:
    """Level-by-level simplicial set, truncated at level K >= 2.

    face[(n, i)] : X_n -> X_{n-1} for 1 <= n <= K, 0 <= i <= n
    deg[(n, i)]  : X_n -> X_{n+1} for 0 <= n < K, 0 <= i <= n
    labels is optional per-level metadata for readable witnesses; it is
    ignored by equality and serialization.
    """

    def __init__(self, K, counts, face, deg, labels=None):
        self.K = K
        self.counts = list(counts)
        self.face = {k: list(v) for k, v in face.items()}
        self.deg = {k: list(v) for k, v in deg.items()}
        self.labels = labels or {}
        self._face_idx = {}

    def simplices(self, n):
        return range(self.counts[n])

    def d(self, n, i, s):
        return self.face[(n, i)][s]

    def s(self, n, i, s):
        return self.deg[(n, i)][s]

    def label(self, n, s):
        lab = self.labels.get(n)
        return lab[s] if lab is not None else s

    def face_index(self, n, i):
        """value -> list of level-n simplices whose d_i is that value."""
        key = (n, i)
        if key not in self._face_idx:
            idx = {}
            for s, v in enumerate(self.face[key]):
                idx.setdefault(v, []).append(s)
            self._face_idx[key] = idx
        return self._face_idx[key]

    # -- structural shape ---------------------------------------------------

    def check_shape(self):
        if self.K < 2 or len(self.counts) != self.K + 1:
            raise InputError("counts must list levels 0..K with K >= 2")
        for n in range(1, self.K + 1):
            for i in range(n + 1):
                tab = self.face.get((n, i))
                if tab is None or len(tab) != self.counts[n]:
                    raise InputError(f"missing or missized face table {(n, i)}")
                if any(not (0 <= v < self.counts[n - 1]) for v in tab):
                    raise InputError(f"face table {(n, i)} value out of range")
        for n in range(self.K):
            for i in range(n + 1):
                tab = self.deg.get((n, i))
                if tab is None or len(tab) != self.counts[n]:
                    raise InputError(f"missing or missized degeneracy table {(n, i)}")
                if any(not (0 <= v < self.counts[n + 1]) for v in tab):
                    raise InputError(f"degeneracy table {(n, i)} value out of range")

    def to_json_dict(self):
        return {
            "truncation": self.K,
            "counts": list(self.counts),
            "faces": {f"{n},{i}": list(v) for (n, i), v in sorted(self.face.items())},
            "degeneracies": {f"{n},{i}": list(v) for (n, i), v in sorted(self.deg.items())},
        }

    @staticmethod
    def from_json_dict(d) -> "TruncatedSSet":
        try:
            K = int(d["truncation"])
            counts = [int(c) for c in d["counts"]]
            face = {}
            for key, tab in d["faces"].items():
                n, i = (int(t) for t in key.split(","))
                face[(n, i)] = [int(v) for v in tab]
            deg = {}
            for key, tab in d["degeneracies"].items():
                n, i = (int(t) for t in key.split(","))
                deg[(n, i)] = [int(v) for v in tab]
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise InputError(f"bad sset json: {exc}") from exc
        x = TruncatedSSet(K, counts, face, deg)
        x.check_shape()
        return x


def sset_from_json(text: str) -> TruncatedSSet:
    return TruncatedSSet.from_json_dict(json.loads(text))


def sset_equal(x: TruncatedSSet, y: TruncatedSSet) -> bool:
    return (x.K == y.K and x.counts == y.counts
            and x.face == y.face and x.deg == y.deg)


def validate(x: TruncatedSSet):
    """All simplicial identity instances within the truncation.

    Violations are (identity, level, indices, simplex) tuples; empty list
    means the structure is a genuine K-truncated simplicial set.
    """
    x.check_shape()
    bad = []
    for n in range(2, x.K + 1):
        for j in range(n + 1):
            for i in range(j):
                fi, fj = x.face[(n, i)], x.face[(n, j)]
                gi, gj1 = x.face[(n - 1, i)], x.face[(n - 1, j - 1)]
                for s in x.simplices(n):
                    if gj1[fi[s]] != gi[fj[s]]:
                        bad.append(("d_i d_j = d_{j-1} d_i", n, (i, j), s))
    for n in range(x.K):
        for j in range(n + 1):
            sj = x.deg[(n, j)]
            for i in range(n + 2):
                di = x.face[(n + 1, i)]
                if i == j or i == j + 1:
                    for s in x.simplices(n):
                        if di[sj[s]] != s:
                            bad.append(("d_i s_j = id", n, (i, j), s))
                elif i < j:
                    for s in x.simplices(n):
                        if di[sj[s]] != x.deg[(n - 1, j - 1)][x.face[(n, i)][s]]:
                            bad.append(("d_i s_j = s_{j-1} d_i", n, (i, j), s))
                else:
                    for s in x.simplices(n):
                        if di[sj[s]] != x.deg[(n - 1, j)][x.face[(n, i - 1)][s]]:
                            bad.append(("d_i s_j = s_j d_{i-1}", n, (i, j), s))
    for n in range(x.K - 1):
        for i in range(n + 1):
            for j in range(i, n + 1):
                si, sj = x.deg[(n, i)], x.deg[(n, j)]
                for s in x.simplices(n):
                    if x.deg[(n + 1, j + 1)][si[s]] != x.deg[(n + 1, i)][sj[s]]:
                        bad.append(("s_i s_j = s_{j+1} s_i", n, (i, j), s))
    return bad


# ---------------------------------------------------------------------------
# simplex surgery


def subface(x: TruncatedSSet, n: int, s: int, vertices):
    """The face of s spanned by the given vertex subset of [n].

    Removing vertices in descending order leaves the lower indices intact.
    """
    keep = set(vertices)
    cur, level = s, n
    for v in range(n, -1, -1):
        if v not in keep:
            cur = x.face[(level, v)][cur]
            level -= 1
    return cur


def spine(x: TruncatedSSet, n: int, s: int):
    """The edge readout (s restricted to (i, i+1) for each i)."""
    if n == 0:
        return ()
    if n == 1:
        return (s,)
    return tuple(subface(x, n, s, (i, i + 1)) for i in range(n))


def degenerate_edges(x: TruncatedSSet):
    """edge -> vertex map for edges of the form s_0(v)."""
    return {x.deg[(0, 0)][v]: v for v in x.simplices(0)}


def is_reduced(x: TruncatedSSet) -> bool:
    return x.counts[0] == 1


def is_spiny(x: TruncatedSSet):
    """Injectivity of every 1-Segal map; witness is a colliding pair."""
    for n in range(2, x.K + 1):
        seen = {}
        for s in x.simplices(n):
            key = spine(x, n, s)
            if key in seen:
                return False, (n, seen[key], s)
            seen[key] = s
    return True, None


def is_inverseless_sset(x: TruncatedSSet):
    """The degenerate-long-edge square is a pullback; witness otherwise."""
    dedges = degenerate_edges(x)
    for sig in x.simplices(2):
        v = dedges.get(x.face[(2, 1)][sig])
        if v is not None and sig != x.deg[(1, 0)][x.deg[(0, 0)][v]]:
            return False, sig
    return True, None


# ---------------------------------------------------------------------------
# polygon triangulations


@dataclass(frozen=True)
class Triangulation:
    """A triangulation of the (n+1)-gon on vertices 0..n, as vertex triples."""

    n: int
    triangles: tuple

    def __post_init__(self):
        if self.n >= 3 and len(self.triangles) != self.n - 1:
            raise InputError("a triangulation of P_{n+1} has n-1 triangles")


def triangulations(n: int):
    """All Catalan(n-1) triangulations of the polygon on vertices 0..n.

    n = 2 returns the single full triangle (degenerate base case, not a
    polygon with diagonals).
    """
    if n < 2:
        raise InputError("triangulations need n >= 2")
    if n == 2:
        return [Triangulation(2, ((0, 1, 2),))]

    def rec(vs):
        if len(vs) == 2:
            yield ()
            return
        if len(vs) == 3:
            yield (tuple(vs),)
            return
        for k in range(1, len(vs) - 1):
            for left in rec(vs[: k + 1]):
                for right in rec(vs[k:]):
                    yield tuple(sorted(left + ((vs[0], vs[k], vs[-1]),) + right))

    out = [Triangulation(n, tri) for tri in rec(list(range(n + 1)))]
    out.sort(key=lambda t: t.triangles)
    return out


# ---------------------------------------------------------------------------
# membranes


def _closure(cells):
    out = set()
    for c in cells:
        for r in range(1, len(c) + 1):
            out.update(itertools.combinations(c, r))
    return out


def _top_cells(n, subset):
    if subset == SPINE:
        return [tuple(range(n + 1))] if n == 0 else [(i, i + 1) for i in range(n)]
    if subset == BOUNDARY:
        return [tuple(v for v in range(n + 1) if v != i) for i in range(n + 1)]
    if isinstance(subset, Triangulation):
        if subset.n != n:
            raise InputError("triangulation size does not match level")
        return sorted(subset.triangles, key=lambda t: (t[0], t))
    raise InputError(f"unknown subset {subset!r}")


class MembraneAssignment(dict):
    """A simplicial map from a subcomplex of the n-simplex into x, stored as
    cell (vertex tuple) -> simplex id over every cell of the subcomplex."""

    def __init__(self, subset, data):
        super().__init__(data)
        self.subset = subset

    @property
    def data(self):
        return dict(self)


def membrane_set(x: TruncatedSSet, n: int, subset):
    """All simplicial maps from the given subcomplex of the n-simplex into x.

    Backtracking over the maximal cells ordered by smallest vertex; a cell's
    candidates are filtered through a face-table index on its first already
    forced codimension-one subcell, then every forced subcell is checked.
    """
    if n > x.K + (1 if subset == BOUNDARY else 0) or n < 1:
        raise InputError(f"membrane level {n} exceeds truncation {x.K}")
    tops = _top_cells(n, subset)
    if any(len(c) - 1 > x.K for c in tops):
        raise InputError("subset has cells above the truncation")
    tops = sorted(tops, key=lambda c: (c[0], c))
    out = []

    def forced_cells(cell, value, assign):
        """Values on all subcells of cell, from its assigned value."""
        d = len(cell) - 1
        new = {}
        for r in range(1, len(cell)):
            for sub in itertools.combinations(range(len(cell)), r):
                subcell = tuple(cell[i] for i in sub)
                v = subface(x, d, value, sub)
                old = assign.get(subcell, new.get(subcell))
                if old is not None and old != v:
                    return None
                new[subcell] = v
        return new

    # backtracking mutates one shared dict; forced_cells reports conflicts
    def rec_safe(k, assign):
        if k == len(tops):
            out.append(MembraneAssignment(subset, assign))
            return
        cell = tops[k]
        d = len(cell) - 1
        cand = None
        for i in range(len(cell)):
            subcell = cell[:i] + cell[i + 1:]
            if d >= 1 and subcell in assign:
                cand = x.face_index(d, i).get(assign[subcell], [])
                break
        if cand is None:
            cand = x.simplices(d)
        for value in cand:
            new = forced_cells(cell, value, assign)
            if new is None:
                continue
            added = [c for c in new if c not in assign]
            assign.update({c: new[c] for c in added})
            assign[cell] = value
            rec_safe(k + 1, assign)
            del assign[cell]
            for c in added:
                del assign[c]

    rec_safe(0, {})
    out.sort(key=lambda m: tuple(sorted(m.items())))
    return out


def membrane_key(m):
    return tuple(sorted(m.items()))


def restrict(x: TruncatedSSet, n: int, s: int, subset):
    """The membrane obtained by restricting the n-simplex s to the subcomplex."""
    cells = _closure(_top_cells(n, subset))
    return MembraneAssignment(subset, {c: subface(x, n, s, c) for c in cells})


def _spine_key(mem, n):
    cells = _closure(_top_cells(n, SPINE))
    return tuple(sorted((c, mem[c]) for c in cells))


def is_two_segal(x: TruncatedSSet):
    """Every triangulation membrane map X_n -> MS(T, x) bijective, 3 <= n <= K.

    Witness: ("unfilled", n, T, spine-of-membrane) for a membrane with no
    simplex, ("collision", n, T, s1, s2) for a doubly hit one.
    """
    for n in range(3, x.K + 1):
        for tri in triangulations(n):
            mems = {membrane_key(m): None for m in membrane_set(x, n, tri)}
            for s in x.simplices(n):
                key = membrane_key(restrict(x, n, s, tri))
                if key not in mems:
                    raise StructureError("restriction not a membrane; corrupt tables")
                if mems[key] is not None:
                    return False, ("collision", n, tri, mems[key], s)
                mems[key] = s
            for key, s in mems.items():
                if s is None:
                    sp = tuple(v for c, v in key if len(c) == 2 and c[1] == c[0] + 1)
                    return False, ("unfilled", n, tri, sp)
    return True, None


def is_weakly_two_segal(x: TruncatedSSet):
    """X_n must biject onto spine-compatible families of triangulation membranes.

    The limit is over the poset containing the spine and every triangulation
    subcomplex, so a family is one membrane per triangulation, all agreeing
    on the spine.  Witness mirrors is_two_segal with the family's spine.
    """
    if x.K < 3:
        raise InputError("weak 2-Segal check needs K >= 3")
    for n in range(3, x.K + 1):
        tris = triangulations(n)
        groups = []
        for tri in tris:
            g = {}
            for m in membrane_set(x, n, tri):
                g.setdefault(_spine_key(m, n), []).append(membrane_key(m))
            groups.append(g)
        common = set(groups[0])
        for g in groups[1:]:
            common &= set(g)
        families = {}
        for sp in common:
            for combo in itertools.product(*(g[sp] for g in groups)):
                families[(sp, combo)] = None
        for s in x.simplices(n):
            sp = _spine_key(restrict(x, n, s, SPINE), n)
            combo = tuple(membrane_key(restrict(x, n, s, tri)) for tri in tris)
            key = (sp, combo)
            if key not in families:
                raise StructureError("simplex restriction missing from limit; corrupt tables")
            if families[key] is not None:
                return False, ("collision", n, families[key], s)
            families[key] = s
        for (sp, _combo), s in sorted(families.items()):
            if s is None:
                edge_vals = tuple(v for c, v in sp if len(c) == 2)
                return False, ("unfilled", n, edge_vals)
    return True, None


def boundary_membranes(x: TruncatedSSet, n: int):
    """Compatible (n+1)-tuples (y_0..y_n) of (n-1)-simplices, d_i y_j = d_{j-1} y_i."""
    if n - 1 > x.K or n < 2:
        raise InputError(f"boundary level {n} out of range for truncation {x.K}")
    out = []
    m = n - 1

    def rec(j, ys):
        if j == n + 1:
            out.append(tuple(ys))
            return
        if j == 0:
            cand = x.simplices(m)
        else:
            want = x.face[(m, j - 1)][ys[0]]
            cand = x.face_index(m, 0).get(want, [])
        for y in cand:
            ok = True
            for i in range(j):
                if x.face[(m, i)][y] != x.face[(m, j - 1)][ys[i]]:
                    ok = False
                    break
            if ok:
                ys.append(y)
                rec(j + 1, ys)
                ys.pop()

    rec(0, [])
    out.sort()
    return out


def is_coskeletal_2(x: TruncatedSSet):
    """Unique boundary fillers at every level 3..K; witness the bad boundary."""
    if x.K < 3:
        raise InputError("coskeletality check needs K >= 3")
    for n in range(3, x.K + 1):
        fillers = {b: [] for b in boundary_membranes(x, n)}
        for s in x.simplices(n):
            b = tuple(x.face[(n, i)][s] for i in range(n + 1))
            fillers[b].append(s)
        for b, ss in sorted(fillers.items()):
            if len(ss) != 1:
                kind = "unfilled" if not ss else "multiple"
                return False, (kind, n, b)
    return True, None


def cosk2_extend(x2: TruncatedSSet, target: int) -> TruncatedSSet:
    """Coskeletal extension of a 2-truncation: level n > 2 is the set of
    boundary-compatible tuples, faces are projections, degeneracies follow
    the simplicial identities."""
    if x2.K != 2:
        raise InputError("cosk2_extend expects a 2-truncation")
    if target < 3:
        raise InputError("target must exceed 2")
    counts = list(x2.counts)
    face = dict(x2.face)
    deg = dict(x2.deg)
    cur = x2
    for n in range(3, target + 1):
        tuples = boundary_membranes(cur, n)
        ids = {t: k for k, t in enumerate(tuples)}
        counts.append(len(tuples))
        for i in range(n + 1):
            face[(n, i)] = [t[i] for t in tuples]
        for i in range(n):
            tab = []
            for y in cur.simplices(n - 1):
                zs = []
                for j in range(n + 1):
                    if j == i or j == i + 1:
                        zs.append(y)
                    elif j < i:
                        zs.append(cur.deg[(n - 2, i - 1)][cur.face[(n - 1, j)][y]])
                    else:
                        zs.append(cur.deg[(n - 2, i)][cur.face[(n - 1, j - 1)][y]])
                tab.append(ids[tuple(zs)])
            deg[(n - 1, i)] = tab
        cur = TruncatedSSet(n, counts, face, deg)
    return cur


def truncate(x: TruncatedSSet, K: int) -> TruncatedSSet:
    if K > x.K or K < 2:
        raise InputError("bad truncation level")
    face = {(n, i): v for (n, i), v in x.face.items() if n <= K}
    deg = {(n, i): v for (n, i), v in x.deg.items() if n < K}
    labels = {n: v for n, v in x.labels.items() if n <= K}
    return TruncatedSSet(K, x.counts[: K + 1], face, deg, labels)


# ---------------------------------------------------------------------------
# canonical form and isomorphism


def canonicalize_spiny(x: TruncatedSSet) -> TruncatedSSet:
    """Relabel levels >= 2 by lexicographic spine order (levels 0, 1 fixed).

    Two spiny sets with the same 1-truncation are isomorphic over it iff
    their canonical forms are equal tables.
    """
    ok, wit = is_spiny(x)
    if not ok:
        raise InputError(f"canonicalize_spiny needs a spiny set, collision {wit}")
    old2new = {0: list(range(x.counts[0])), 1: list(range(x.counts[1]))}
    order = {}
    for n in range(2, x.K + 1):
        perm = sorted(x.simplices(n), key=lambda s: spine(x, n, s))
        order[n] = perm
        o2n = [0] * x.counts[n]
        for new, old in enumerate(perm):
            o2n[old] = new
        old2new[n] = o2n
    face = {}
    deg = {}
    for (n, i), tab in x.face.items():
        src = order.get(n, list(range(x.counts[n])))
        face[(n, i)] = [old2new[n - 1][tab[s]] for s in src]
    for (n, i), tab in x.deg.items():
        src = order.get(n, list(range(x.counts[n])))
        deg[(n, i)] = [old2new[n + 1][tab[s]] for s in src]
    labels = {}
    for n, lab in x.labels.items():
        src = order.get(n, list(range(x.counts[n])))
        labels[n] = [lab[s] for s in src]
    return TruncatedSSet(x.K, x.counts, face, deg, labels)


def sset_isomorphic(x: TruncatedSSet, y: TruncatedSSet):
    """Search for a levelwise isomorphism; returns the level maps or None.

    Seeded at level 1 by backtracking; levels >= 2 are forced through spines,
    so y must be spiny (all uses here are).
    """
    if x.counts != y.counts or x.K != y.K:
        return None
    ok, _ = is_spiny(y)
    if not ok:
        raise InputError("isomorphism search requires a spiny target")
    yspine = {}
    for n in range(2, y.K + 1):
        yspine[n] = {spine(y, n, s): s for s in y.simplices(n)}

    def complete(phi0, phi1):
        phi = {0: phi0, 1: phi1}
        for n in range(2, x.K + 1):
            tab = []
            for s in x.simplices(n):
                sp = tuple(phi1[e] for e in spine(x, n, s))
                t = yspine[n].get(sp)
                if t is None:
                    return None
                tab.append(t)
            if len(set(tab)) != len(tab):
                return None
            phi[n] = tab
        for (n, i), ftab in x.face.items():
            for s in x.simplices(n):
                if y.face[(n, i)][phi[n][s]] != phi[n - 1][ftab[s]]:
                    return None
        for (n, i), stab in x.deg.items():
            for s in x.simplices(n):
                if y.deg[(n, i)][phi[n][s]] != phi[n + 1][stab[s]]:
                    return None
        return phi

    for phi0 in itertools.permutations(range(x.counts[0])):
        xdeg = {x.deg[(0, 0)][v]: v for v in x.simplices(0)}
        ydeg = {y.deg[(0, 0)][v]: v for v in y.simplices(0)}

        def ends(z, e):
            return (z.face[(1, 1)][e], z.face[(1, 0)][e])

        slots = list(x.simplices(1))

        def bt(k, phi1, used):
            if k == len(slots):
                return complete(list(phi0), phi1)
            e = slots[k]
            tgt_ends = tuple(phi0[v] for v in ends(x, e))
            for f in y.simplices(1):
                if f in used or ends(y, f) != tgt_ends:
                    continue
                if (e in xdeg) != (f in ydeg):
                    continue
                if e in xdeg and phi0[xdeg[e]] != ydeg[f]:
                    continue
                phi1[e] = f
                used.add(f)
                res = bt(k + 1, phi1, used)
                if res is not None:
                    return res
                used.remove(f)
            return None

        res = bt(0, [None] * x.counts[1], set())
        if res is not None:
            return res
    return None


# ---------------------------------------------------------------------------
# construction helpers


def standard_simplex(n: int, K: int) -> TruncatedSSet:
    """The standard n-simplex truncated at K: level k is the monotone maps
    [k] -> [n] in lexicographic order."""
    levels = []
    for k in range(K + 1):
        levels.append(sorted(itertools.combinations_with_replacement(range(n + 1), k + 1)))
    ids = [{t: i for i, t in enumerate(lev)} for lev in levels]
    face = {}
    deg = {}
    for k in range(1, K + 1):
        for i in range(k + 1):
            face[(k, i)] = [ids[k - 1][t[:i] + t[i + 1:]] for t in levels[k]]
    for k in range(K):
        for i in range(k + 1):
            deg[(k, i)] = [ids[k + 1][t[: i + 1] + t[i:]] for t in levels[k]]
    return TruncatedSSet(K, [len(l) for l in levels], face, deg,
                         {k: levels[k] for k in range(K + 1)})


def _surjections(k, d):
    """Nondecreasing surjective value tuples [k] ->> [d]."""
    out = []

    def rec(pos, val, acc):
        if pos == k + 1:
            if val == d:
                out.append(tuple(acc))
            return
        # stay on val or advance by one; must still be able to reach d
        if d - val <= k - pos:
            acc.append(val)
            rec(pos + 1, val, acc)
            acc.pop()
        if val < d:
            acc.append(val + 1)
            rec(pos + 1, val + 1, acc)
            acc.pop()

    if d > k:
        return out
    rec(1, 0, [0])
    return out


def from_nondegenerate(K: int, generators) -> TruncatedSSet:
    """Free degenerate completion of a finite set of nondegenerate cells.

    generators: ordered list of (name, dim, faces) where faces lists, for
    each 0 <= i <= dim, the i-th face as (other_name, alpha) with alpha a
    monotone surjection value tuple (identity tuple for a nondegenerate
    face).  Level-k simplices are the pairs (name, alpha: [k] ->> [dim]);
    faces are computed by epi-mono factorization through the generator's
    face table.
    """
    dims = {}
    gen_faces = {}
    order = []
    for name, dim, faces in generators:
        if name in dims:
            raise InputError(f"duplicate generator {name}")
        if dim > K:
            raise InputError(f"generator {name} above truncation")
        if len(faces) != (dim + 1 if dim > 0 else 0):
            raise InputError(f"generator {name} needs {dim + 1} faces")
        dims[name] = dim
        gen_faces[name] = list(faces)
        order.append(name)
    rank = {name: i for i, name in enumerate(order)}

    levels = []
    ids = []
    for k in range(K + 1):
        lev = []
        for name in order:
            for alpha in _surjections(k, dims[name]):
                lev.append((name, alpha))
        lev.sort(key=lambda p: (rank[p[0]], p[1]))
        levels.append(lev)
        ids.append({p: i for i, p in enumerate(lev)})

    def compose(gamma, beta):
        return tuple(gamma[b] for b in beta)

    def face_of(name, alpha, i):
        beta = alpha[:i] + alpha[i + 1:]
        d = dims[name]
        if len(set(beta)) == d + 1:
            return (name, beta)
        j = alpha[i]
        beta1 = tuple(v if v < j else v - 1 for v in beta)
        g2, gamma = gen_faces[name][j]
        return (g2, compose(gamma, beta1))

    face = {}
    deg = {}
    for k in range(1, K + 1):
        for i in range(k + 1):
            face[(k, i)] = [ids[k - 1][face_of(name, alpha, i)] for name, alpha in levels[k]]
    for k in range(K):
        for i in range(k + 1):
            deg[(k, i)] = [ids[k + 1][(name, alpha[: i + 1] + alpha[i:])]
                           for name, alpha in levels[k]]
    return TruncatedSSet(K, [len(l) for l in levels], face, deg,
                         {k: levels[k] for k in range(K + 1)})


def point(K: int) -> TruncatedSSet:
    return from_nondegenerate(K, [("*", 0, [])])


_ID1 = (0, 1)


def two_triangles_shared_spine(K: int = 2) -> TruncatedSSet:
    """Two 2-simplices glued along spine edges 01 and 12 but with distinct
    long edges: the standard non-spiny example."""
    gens = [
        ("v0", 0, []), ("v1", 0, []), ("v2", 0, []),
        ("e01", 1, [("v1", (0,)), ("v0", (0,))]),
        ("e12", 1, [("v2", (0,)), ("v1", (0,))]),
        ("e02a", 1, [("v2", (0,)), ("v0", (0,))]),
        ("e02b", 1, [("v2", (0,)), ("v0", (0,))]),
        ("ta", 2, [("e12", _ID1), ("e02a", _ID1), ("e01", _ID1)]),
        ("tb", 2, [("e12", _ID1), ("e02b", _ID1), ("e01", _ID1)]),
    ]
    return from_nondegenerate(K, gens)


def delta_w3(K: int = 3) -> TruncatedSSet:
    """Pushout of the two triangulations of the square over the spine: both
    triangulation membranes exist on the spine (e01, e12, e23) but carry
    distinct copies of the long edge, and no 3-simplex fills them."""
    gens = [
        ("v0", 0, []), ("v1", 0, []), ("v2", 0, []), ("v3", 0, []),
        ("e01", 1, [("v1", (0,)), ("v0", (0,))]),
        ("e12", 1, [("v2", (0,)), ("v1", (0,))]),
        ("e23", 1, [("v3", (0,)), ("v2", (0,))]),
        ("e02", 1, [("v2", (0,)), ("v0", (0,))]),
        ("e13", 1, [("v3", (0,)), ("v1", (0,))]),
        ("e03a", 1, [("v3", (0,)), ("v0", (0,))]),
        ("e03b", 1, [("v3", (0,)), ("v0", (0,))]),
        ("t012", 2, [("e12", _ID1), ("e02", _ID1), ("e01", _ID1)]),
        ("t023", 2, [("e23", _ID1), ("e03a", _ID1), ("e02", _ID1)]),
        ("t013", 2, [("e13", _ID1), ("e03b", _ID1), ("e01", _ID1)]),
        ("t123", 2, [("e23", _ID1), ("e13", _ID1), ("e12", _ID1)]),
    ]
    return from_nondegenerate(K, gens)
