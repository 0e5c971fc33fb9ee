"""Constructions between algebra and geometry.

Nerve of a magma with associativity data, reconstruction of the magma from a
spiny reduced simplicial set, commutative (d-torsion) nerves of groups,
action partial groups, the effect-algebra functor applied to a simplicial
set, and the simplicial circle.

Nerve levels carry the underlying tuples as labels: level 1 ids equal the
carrier ids and level n >= 2 is sorted lexicographically, which makes nerves
spine-canonical on the nose.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from . import palg
from .palg import (AssociativityDatum, FiniteEffectAlgebra, PartialUnitalMagma,
                   ea_sum, max_associativity_datum, multiset_multiplicable)
from .sset import TruncatedSSet, is_reduced, is_spiny, spine
from .util import InputError, StructureError


# ---------------------------------------------------------------------------
# finite groups


@dataclass(frozen=True)
class FiniteGroup:
    """Total multiplication table on 0..order-1 with unit 0."""

    order: int
    mul: tuple  # mul[a][b]

    def validate(self):
        n = self.order
        if len(self.mul) != n or any(len(r) != n for r in self.mul):
            raise InputError("multiplication table must be order x order")
        for a in range(n):
            if self.mul[0][a] != a or self.mul[a][0] != a:
                raise InputError("element 0 must be the unit")
            if sorted(self.mul[a]) != list(range(n)):
                raise InputError(f"row {a} is not a permutation")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]]:
                        raise InputError(f"associativity fails at {(a, b, c)}")

    def inv(self, a: int) -> int:
        return self.mul[a].index(0)

    def commute(self, a: int, b: int) -> bool:
        return self.mul[a][b] == self.mul[b][a]

    def power(self, a: int, k: int) -> int:
        acc = 0
        for _ in range(k):
            acc = self.mul[acc][a]
        return acc

    def centralizer(self, a: int):
        return [b for b in range(self.order) if self.commute(a, b)]

    def center(self):
        return [z for z in range(self.order)
                if all(self.commute(z, g) for g in range(self.order))]

    def to_json_dict(self):
        return {"order": self.order, "mul": [list(r) for r in self.mul]}

    @staticmethod
    def from_json_dict(d) -> "FiniteGroup":
        try:
            g = FiniteGroup(int(d["order"]), tuple(tuple(int(v) for v in r) for r in d["mul"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad group json: {exc}") from exc
        g.validate()
        return g


def group_from_json(text: str) -> FiniteGroup:
    return FiniteGroup.from_json_dict(json.loads(text))


def group_from_table(elements, mul):
    """Build a FiniteGroup from abstract elements and a multiplication map,
    relabeling so the identity is 0."""
    elems = list(elements)
    unit = next(e for e in elems if all(mul(e, x) == x == mul(x, e) for x in elems))
    elems.remove(unit)
    elems.insert(0, unit)
    idx = {e: i for i, e in enumerate(elems)}
    table = tuple(tuple(idx[mul(a, b)] for b in elems) for a in elems)
    g = FiniteGroup(len(elems), table)
    g.validate()
    return g, elems


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(n, tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def quaternion_group() -> FiniteGroup:
    """Q8 with element order 1, -1, i, -i, j, -j, k, -k."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

    def mul(x, y):
        sx, sy = x.startswith("-"), y.startswith("-")
        bx, by = x.lstrip("-"), y.lstrip("-")
        table = {
            ("1", "1"): "1", ("1", "i"): "i", ("1", "j"): "j", ("1", "k"): "k",
            ("i", "1"): "i", ("j", "1"): "j", ("k", "1"): "k",
            ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
            ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
        }
        res = table[(bx, by)]
        neg = sx ^ sy ^ res.startswith("-")
        base = res.lstrip("-")
        if base == "1":
            return "-1" if neg else "1"
        return ("-" + base) if neg else base

    g, elems = group_from_table(names, mul)
    assert elems == names
    return g


def dihedral_group(n: int) -> FiniteGroup:
    """D_n of order 2n: (rotation r, flip f) with f*r*f = r^-1."""
    elems = [(r, f) for f in (0, 1) for r in range(n)]

    def mul(x, y):
        r1, f1 = x
        r2, f2 = y
        return ((r1 + (r2 if f1 == 0 else -r2)) % n, f1 ^ f2)

    g, _ = group_from_table(elems, mul)
    return g


def symmetric_group(n: int) -> FiniteGroup:
    elems = sorted(itertools.permutations(range(n)))

    def mul(p, q):  # (p*q)(x) = p(q(x))
        return tuple(p[q[x]] for x in range(n))

    g, _ = group_from_table(elems, mul)
    return g


def magma_of_group(g: FiniteGroup) -> PartialUnitalMagma:
    product = {(a, b): g.mul[a][b] for a in range(g.order) for b in range(g.order)}
    return PartialUnitalMagma(g.order, product)


def commuting_magma(g: FiniteGroup, torsion=None) -> PartialUnitalMagma:
    """Carrier = (d-torsion) elements, product defined exactly on commuting pairs.

    The carrier keeps the group's ids when no torsion filter is applied;
    otherwise it is relabeled densely with 0 first.
    """
    if torsion is None:
        carrier = list(range(g.order))
    else:
        if torsion < 2:
            raise InputError("torsion must be >= 2")
        carrier = [a for a in range(g.order) if g.power(a, torsion) == 0]
    idx = {a: i for i, a in enumerate(carrier)}
    product = {}
    for a in carrier:
        for b in carrier:
            if g.commute(a, b):
                c = g.mul[a][b]
                if c in idx:
                    product[(idx[a], idx[b])] = idx[c]
                else:
                    raise StructureError("torsion carrier not closed under commuting products")
    return PartialUnitalMagma(len(carrier), product)


# ---------------------------------------------------------------------------
# nerve and reconstruction


def _sset_from_level_tuples(K, carrier_size, levels):
    """Common builder: levels[n] (n >= 2) is a sorted list of id tuples over
    the carrier; level 1 is the carrier, level 0 a point.  Faces multiply
    adjacent entries through `levels`' membership, degeneracies insert 0."""
    lev = {0: [()], 1: [(x,) for x in range(carrier_size)]}
    for n in range(2, K + 1):
        lev[n] = sorted(levels[n])
    ids = {n: {t: i for i, t in enumerate(lev[n])} for n in lev}
    return lev, ids


def nerve(m: PartialUnitalMagma, a: AssociativityDatum, K: int) -> TruncatedSSet:
    """Nerve of a magma with associativity data: X_n = A_n for n >= 2.

    Inner faces multiply an adjacent pair, outer faces drop an end,
    degeneracies insert the unit.  The datum must be stored to arity K and
    closed under the face formulas (automatic for maximal data).
    """
    if K < 2:
        raise InputError("nerve needs K >= 2")
    if a.max_arity < K:
        raise InputError(f"datum only reaches arity {a.max_arity} < K = {K}")
    bad = [c for c in palg.validate_datum(m, a, require_face_closure=True) if not c.ok]
    if bad:
        raise InputError(f"invalid datum: {bad[0].name} witness {bad[0].witness}")
    lev, ids = _sset_from_level_tuples(K, m.size, {n: a.level(n) for n in range(2, K + 1)})

    def face_tuple(t, i):
        n = len(t)
        if i == 0:
            return t[1:]
        if i == n:
            return t[:-1]
        return t[:i - 1] + (m.product[(t[i - 1], t[i])],) + t[i + 1:]

    face = {}
    deg = {}
    for n in range(1, K + 1):
        for i in range(n + 1):
            face[(n, i)] = [ids[n - 1][face_tuple(t, i)] for t in lev[n]]
    for n in range(K):
        for i in range(n + 1):
            deg[(n, i)] = [ids[n + 1][t[:i] + (0,) + t[i:]] for t in lev[n]]
    labels = {n: list(lev[n]) for n in lev}
    labels[0] = ["*"]
    labels[1] = list(range(m.size))
    return TruncatedSSet(K, [len(lev[n]) for n in range(K + 1)], face, deg, labels)


def magma_from_sset(x: TruncatedSSet):
    """Recover (magma, datum) from a spiny reduced simplicial set.

    Carrier = X_1 relabeled so the degenerate edge is 0; the product of
    (a, b) is d_1 of the unique 2-simplex with spine (a, b); the datum level
    n is the image of the 1-Segal embedding.
    """
    ok, wit = is_spiny(x)
    if not ok:
        raise InputError(f"input is not spiny: collision {wit}")
    if not is_reduced(x):
        raise InputError("input is not reduced")
    unit_edge = x.deg[(0, 0)][0]
    relabel = list(range(x.counts[1]))
    if unit_edge != 0:
        relabel[0], relabel[unit_edge] = unit_edge, 0
    edge2id = {e: relabel.index(e) for e in x.simplices(1)}
    product = {}
    for sig in x.simplices(2):
        a = edge2id[x.face[(2, 2)][sig]]
        b = edge2id[x.face[(2, 0)][sig]]
        product[(a, b)] = edge2id[x.face[(2, 1)][sig]]
    magma = PartialUnitalMagma(x.counts[1], product)
    magma.validate()
    levels = {}
    for n in range(2, x.K + 1):
        levels[n] = frozenset(tuple(edge2id[e] for e in spine(x, n, s))
                              for s in x.simplices(n))
    return magma, AssociativityDatum(levels)


# ---------------------------------------------------------------------------
# commutative nerves and action partial groups


def comm_nerve(g: FiniteGroup, torsion=None, K: int = 4) -> TruncatedSSet:
    """Commutative nerve: level n is the pairwise commuting n-tuples (with
    g_i^d = 1 when a torsion d is given), inside the group nerve.

    Labels keep the original group element ids, so cyclic structures can be
    put on the result directly.
    """
    if torsion is None:
        carrier = list(range(g.order))
    else:
        if torsion < 2:
            raise InputError("torsion must be >= 2")
        carrier = [a for a in range(g.order) if g.power(a, torsion) == 0]
    lev = {0: [()], 1: [(a,) for a in carrier]}
    prev = lev[1]
    for n in range(2, K + 1):
        cur = []
        for t in prev:
            for b in carrier:
                if all(g.commute(a, b) for a in t):
                    cur.append(t + (b,))
        lev[n] = sorted(cur)
        prev = lev[n]
    ids = {n: {t: i for i, t in enumerate(lev[n])} for n in lev}

    def face_tuple(t, i):
        n = len(t)
        if i == 0:
            return t[1:]
        if i == n:
            return t[:-1]
        return t[:i - 1] + (g.mul[t[i - 1]][t[i]],) + t[i + 1:]

    face = {}
    deg = {}
    for n in range(1, K + 1):
        for i in range(n + 1):
            face[(n, i)] = [ids[n - 1][face_tuple(t, i)] for t in lev[n]]
    for n in range(K):
        for i in range(n + 1):
            deg[(n, i)] = [ids[n + 1][t[:i] + (0,) + t[i:]] for t in lev[n]]
    labels = {n: list(lev[n]) for n in lev}
    labels[0] = ["*"]
    labels[1] = [t[0] for t in lev[1]]
    return TruncatedSSet(K, [len(lev[n]) for n in range(K + 1)], face, deg, labels)


def _validate_action(g: FiniteGroup, z_size: int, action):
    """action[a][y] composing left-to-right: y.(ab) = (y.a).b."""
    if len(action) != g.order or any(len(r) != z_size for r in action):
        raise InputError("action table must be order x z_size")
    for y in range(z_size):
        if action[0][y] != y:
            raise InputError("unit must act trivially")
    for a in range(g.order):
        for b in range(g.order):
            ab = g.mul[a][b]
            for y in range(z_size):
                if action[b][action[a][y]] != action[ab][y]:
                    raise InputError(f"action law fails at {(a, b, y)}")


def translation_action(g: FiniteGroup):
    """g acting on itself by right translation."""
    return [[g.mul[y][a] for y in range(g.order)] for a in range(g.order)]


def action_partial_group(g: FiniteGroup, z_size: int, action, y_subset, K: int = 4) -> TruncatedSSet:
    """Tuples admitting a chain y_0 -> ... -> y_n inside the chosen subset.

    Level n is {(g_1..g_n) | exists y_i in Y, y_i = y_{i-1}.g_i}; faces and
    degeneracies are those of the group nerve.
    """
    _validate_action(g, z_size, action)
    yset = sorted(set(y_subset))
    if any(not 0 <= y < z_size for y in yset):
        raise InputError("Y must be a subset of the acted-on set")

    def has_chain(t):
        live = set(yset)
        for a in t:
            live = {action[a][y] for y in live} & set(yset)
            if not live:
                return False
        return True

    levels = {}
    prev = [(a,) for a in range(g.order) if has_chain((a,))]
    for n in range(2, K + 1):
        cur = [t + (b,) for t in prev for b in range(g.order) if has_chain(t + (b,))]
        levels[n] = cur
        prev = cur
    lev, ids = _sset_from_level_tuples(K, g.order, levels)
    # level 1 of this space is only the chain-admitting elements
    lev[1] = [(a,) for a in range(g.order) if has_chain((a,))]
    ids[1] = {t: i for i, t in enumerate(lev[1])}

    def face_tuple(t, i):
        n = len(t)
        if i == 0:
            return t[1:]
        if i == n:
            return t[:-1]
        return t[:i - 1] + (g.mul[t[i - 1]][t[i]],) + t[i + 1:]

    face = {}
    deg = {}
    for n in range(1, K + 1):
        for i in range(n + 1):
            face[(n, i)] = [ids[n - 1][face_tuple(t, i)] for t in lev[n]]
    for n in range(K):
        for i in range(n + 1):
            deg[(n, i)] = [ids[n + 1][t[:i] + (0,) + t[i:]] for t in lev[n]]
    labels = {n: list(lev[n]) for n in lev}
    labels[0] = ["*"]
    labels[1] = [t[0] for t in lev[1]]
    return TruncatedSSet(K, [len(lev[n]) for n in range(K + 1)], face, deg, labels)


# ---------------------------------------------------------------------------
# the effect functor and the simplicial circle


def effect_functor(e: FiniteEffectAlgebra, x: TruncatedSSet) -> TruncatedSSet:
    """E(X): level n is the E-valued functions on X_n with multiplicable
    values summing to the top element; structure maps sum over fibres."""
    top = e.top
    levels = []
    for n in range(x.K + 1):
        cnt = x.counts[n]
        found = []

        def rec(pos, acc, vals):
            if acc is None:
                return
            if pos == cnt:
                if acc == top:
                    if not multiset_multiplicable(e, vals):
                        raise StructureError("prefix-summable but not multiplicable")
                    found.append(tuple(vals))
                return
            for v in range(e.size):
                vals.append(v)
                rec(pos + 1, e.magma.mul(acc, v), vals)
                vals.pop()

        rec(0, 0, [])
        levels.append(sorted(found))
    ids = [{t: i for i, t in enumerate(lev)} for lev in levels]

    def push(n_from, n_to, mapping, t):
        out = [[] for _ in range(x.counts[n_to])]
        for src, v in enumerate(t):
            out[mapping[src]].append(v)
        summed = tuple(ea_sum(e, vs) for vs in out)
        if any(v is None for v in summed):
            raise StructureError("fibre sum undefined; input is not an effect algebra")
        return summed

    face = {}
    deg = {}
    for n in range(1, x.K + 1):
        for i in range(n + 1):
            mapping = x.face[(n, i)]
            face[(n, i)] = [ids[n - 1][push(n, n - 1, mapping, t)] for t in levels[n]]
    for n in range(x.K):
        for i in range(n + 1):
            mapping = x.deg[(n, i)]
            deg[(n, i)] = [ids[n + 1][push(n, n + 1, mapping, t)] for t in levels[n]]
    return TruncatedSSet(x.K, [len(l) for l in levels], face, deg,
                         {n: levels[n] for n in range(x.K + 1)})


def simplicial_circle(K: int) -> TruncatedSSet:
    """S^1 with level n = {star, theta^1..theta^n}; id 0 is the basepoint."""
    if K < 1:
        raise InputError("simplicial circle needs K >= 1")

    def d(n, j, i):
        # face d_j of theta^i at level n
        if j < i and 1 < i:
            return i - 1
        if i <= j and i < n:
            return i
        return 0

    def s(j, i):
        return i + 1 if j < i else i

    face = {}
    deg = {}
    for n in range(1, K + 1):
        for j in range(n + 1):
            face[(n, j)] = [0] + [d(n, j, i) for i in range(1, n + 1)]
    for n in range(K):
        for j in range(n + 1):
            deg[(n, j)] = [0] + [s(j, i) for i in range(1, n + 1)]
    labels = {n: ["*"] + [f"theta^{i}" for i in range(1, n + 1)] for n in range(K + 1)}
    return TruncatedSSet(K, [n + 1 for n in range(K + 1)], face, deg, labels)


def chain_magma(n: int) -> PartialUnitalMagma:
    """The interval partial monoid: elements m_ij (i < j) plus the unit,
    m_ij * m_jk = m_ik.  A noncommutative partial monoid test case."""
    pairs = [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)]
    idx = {p: k + 1 for k, p in enumerate(pairs)}
    size = len(pairs) + 1
    product = {(0, a): a for a in range(size)}
    product.update({(a, 0): a for a in range(size)})
    for (i, j) in pairs:
        for (j2, k) in pairs:
            if j2 == j:
                product[(idx[(i, j)], idx[(j2, k)])] = idx[(i, k)]
    return PartialUnitalMagma(size, product)


def effect_circle_iso(e: FiniteEffectAlgebra, K: int):
    """The explicit levelwise bijection E(S^1) -> N(e) sending a function to
    its (theta^1..theta^n) readout.  Returns (E(S^1), N(e), maps)."""
    circle = simplicial_circle(K)
    ex = effect_functor(e, circle)
    ne = nerve(e.magma, max_associativity_datum(e.magma, K), K)
    maps = {0: [0]}
    for n in range(1, K + 1):
        tab = []
        for t in ex.labels[n]:
            tup = t[1: n + 1]  # values on theta^1..theta^n; t[0] is the star
            tab.append(ne.labels[n].index(tup) if n >= 2 else tup[0])
        maps[n] = tab
    return ex, ne, maps
