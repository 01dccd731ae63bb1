"""Irreducible gl4/sl4 modules, weights, characters, and FinModule containers.

F_t(a,b,c) is realized as the span of the highest weight vector
x1^a (x1^x2)^b (x4*)^c inside S^a(C^4) (x) S^b(L2 C^4) (x) S^c(L3 C^4) under
repeated lowering, echelonized to a basis; the central element C acts as
multiplication by t.  Weights are written in fundamental coordinates
(l12, l23, l34).
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache

from gmpy2 import mpq

from .scalars import Q0, Q1, sadd, sdiv, sis_zero, smul, sneg, seq
from .algebra import P4_NAMES, P4_PARITY, p4_structure

GL4_NAMES = tuple(
    [("e", i, j) for i in range(1, 5) for j in range(1, 5) if i != j]
    + [("h", i, i + 1) for i in range(1, 4)]
    + [("C",)]
)

LOWERING = (("e", 2, 1), ("e", 3, 2), ("e", 4, 3))
RAISING_SL4 = (("e", 1, 2), ("e", 2, 3), ("e", 3, 4))


class ModuleIntegrityError(ValueError):
    pass


def weyl_dim(a, b, c):
    """Dimension of the irreducible gl4-module of highest weight (a,b,c)."""
    if a < 0 or b < 0 or c < 0:
        raise ValueError("weyl_dim needs nonnegative labels")
    n = (a + 1) * (b + 1) * (c + 1) * (a + b + 2) * (b + c + 2) * (a + b + c + 3)
    assert n % 12 == 0
    return n // 12


def is_dominant(w):
    return w[0] >= 0 and w[1] >= 0 and w[2] >= 0


def w_add(u, v):
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def w_sub(u, v):
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def height2(w):
    """Twice the height of a weight in the simple-root basis: 3a+4b+3c."""
    return 3 * w[0] + 4 * w[1] + 3 * w[2]


def eps_to_fund(m):
    return (m[0] - m[1], m[1] - m[2], m[2] - m[3])


# -- ambient tensor realization ----------------------------------------------

def _pair_norm(i, k):
    """Normalize x_i ^ x_k; returns (sign, pair) or (0, None)."""
    if i == k:
        return 0, None
    return (1, (i, k)) if i < k else (-1, (k, i))


def _amb_weight(key):
    m = [0, 0, 0, 0]
    tupA, tupB, tupC = key
    for i in tupA:
        m[i - 1] += 1
    for (h, k) in tupB:
        m[h - 1] += 1
        m[k - 1] += 1
    for l in tupC:
        for i in range(4):
            m[i] += 1
        m[l - 1] -= 1
    return eps_to_fund(m)


def _amb_apply_E(i, j, key):
    """Matrix unit E_ij acting on an ambient basis key; [(key, int coeff)]."""
    tupA, tupB, tupC = key
    out = []
    if i == j:
        n = sum(1 for z in tupA if z == i)
        n += sum(1 for (h, k) in tupB if h == i or k == i)
        n += sum(1 for l in tupC if l != i)
        if n:
            out.append((key, n))
        return out
    for pos in sorted(set(tupA)):
        if pos != j:
            continue
        cnt = tupA.count(j)
        new = tuple(sorted(tupA[:tupA.index(j)] + tupA[tupA.index(j) + 1:] + (i,)))
        out.append(((new, tupB, tupC), cnt))
    seenB = {}
    for idx, (h, k) in enumerate(tupB):
        res = None
        if h == j:
            sign, pair = _pair_norm(i, k)
            if sign:
                res = (sign, pair)
        elif k == j:
            sign, pair = _pair_norm(h, i)
            if sign:
                res = (sign, pair)
        if res is None:
            continue
        sign, pair = res
        new = tuple(sorted(tupB[:idx] + tupB[idx + 1:] + (pair,)))
        kk = (tupA, new, tupC)
        seenB[(kk, sign)] = seenB.get((kk, sign), 0) + 1
    for (kk, sign), cnt in seenB.items():
        out.append((kk, sign * cnt))
    for idx in range(len(tupC)):
        l = tupC[idx]
        if l != i:
            continue
        new = tuple(sorted(tupC[:idx] + tupC[idx + 1:] + (j,)))
        out.append(((tupA, tupB, new), -1))
    # collapse duplicates
    acc = {}
    for k2, c in out:
        acc[k2] = acc.get(k2, 0) + c
    return [(k2, c) for k2, c in acc.items() if c]


def _amb_apply(name, vec, t):
    """Apply a gl4 generator to an ambient vector {key: Scalar}."""
    if name == ("C",):
        return {k: smul(v, t) for k, v in vec.items()}
    if name[0] == "h":
        i, j = name[1], name[2]
        out = {}
        for key, c in vec.items():
            w = _amb_weight(key)
            eig = (w[0], w[1], w[2])[i - 1] if j == i + 1 else None
            if eig:
                out[key] = smul(c, mpq(eig))
        return out
    i, j = name[1], name[2]
    out = {}
    for key, c in vec.items():
        for k2, n in _amb_apply_E(i, j, key):
            acc = sadd(out.get(k2, Q0), smul(c, mpq(n)))
            if sis_zero(acc):
                out.pop(k2, None)
            else:
                out[k2] = acc
    return out


class _Echelon:
    """Incremental echelon over ambient keys with basis-coordinate tracking."""

    def __init__(self):
        self.pivots = {}  # pivot key -> (vector, coords {basis_idx: Scalar})

    def reduce(self, vec, coords=None):
        vec = dict(vec)
        coords = dict(coords or {})
        while vec:
            pk = min(vec)
            hit = self.pivots.get(pk)
            if hit is None:
                return vec, coords, pk
            pvec, pcoords = hit
            f = sdiv(vec[pk], pvec[pk])
            for k, v in pvec.items():
                acc = sadd(vec.get(k, Q0), sneg(smul(f, v)))
                if sis_zero(acc):
                    vec.pop(k, None)
                else:
                    vec[k] = acc
            for k, v in pcoords.items():
                acc = sadd(coords.get(k, Q0), sneg(smul(f, v)))
                if sis_zero(acc):
                    coords.pop(k, None)
                else:
                    coords[k] = acc
        return vec, coords, None

    def insert(self, vec, coords):
        red, rc, pk = self.reduce(vec, coords)
        if pk is None:
            return None
        self.pivots[pk] = (red, rc)
        return pk


class HighestWeightModule:
    """F_t(a,b,c) with its lowering derivation tree and coordinate maps."""

    def __init__(self, a, b, c, t):
        self.label = (a, b, c)
        self.t = t
        hw = ((1,) * a, ((1, 2),) * b, (4,) * c)
        self.basis = [{hw: Q1}]
        self.tree = [(None, None)]
        ech = _Echelon()
        ech.insert({hw: Q1}, {0: Q1})
        frontier = [0]
        while frontier:
            nxt = []
            for idx in frontier:
                for op in LOWERING:
                    img = _amb_apply(op, self.basis[idx], t)
                    if not img:
                        continue
                    red, rc, pk = ech.reduce(img, {})
                    if pk is None:
                        continue
                    j = len(self.basis)
                    self.basis.append(img)
                    self.tree.append((idx, op))
                    ech.pivots[pk] = (red, {**{k: sneg(v) for k, v in rc.items()}, j: Q1})
                    nxt.append(j)
            frontier = nxt
        self.ech = ech
        self.dim = len(self.basis)
        if self.dim != weyl_dim(a, b, c):
            raise ModuleIntegrityError(
                f"F{self.label}: got dim {self.dim}, expected {weyl_dim(a, b, c)}")
        self.weights = tuple(_amb_weight(next(iter(v))) for v in self.basis)

    def to_coords(self, ambient_vec):
        red, coords, pk = self.ech.reduce(dict(ambient_vec), {})
        if pk is not None:
            raise ModuleIntegrityError("vector outside the irreducible span")
        return {k: sneg(v) for k, v in coords.items()}

    def act_coords(self, name, j):
        img = _amb_apply(name, self.basis[j], self.t)
        return self.to_coords(img)


class FinModule:
    """Finite-dimensional module with exact action columns per generator.

    `cols[name][j]` is the sparse column {i: Scalar} of generator `name`
    acting on basis vector j; a lazy provider may fill columns on demand.
    """

    def __init__(self, dim, t, parity, weights, gens, cols=None, provider=None,
                 label=None, degrees=None):
        self.dim = dim
        self.t = t
        self.parity = tuple(parity)
        self.weights = tuple(weights)
        self.gens = tuple(gens)
        self.cols = cols if cols is not None else {}
        self.provider = provider
        self.label = label
        self.degrees = tuple(degrees) if degrees is not None else None
        self._weight_index = None

    def weight_index(self):
        if self._weight_index is None:
            wi = {}
            for i, w in enumerate(self.weights):
                wi.setdefault(w, []).append(i)
            self._weight_index = {w: tuple(v) for w, v in wi.items()}
        return self._weight_index

    def act_col(self, name, j):
        bucket = self.cols.setdefault(name, {})
        col = bucket.get(j)
        if col is None:
            if self.provider is None:
                return {}
            col = self.provider(name, j)
            bucket[j] = col
        return col

    def act_vec(self, name, vec):
        out = {}
        for j, c in vec.items():
            for i, v in self.act_col(name, j).items():
                acc = sadd(out.get(i, Q0), smul(c, v))
                if sis_zero(acc):
                    out.pop(i, None)
                else:
                    out[i] = acc
        return out

    def act_word(self, names, vec):
        for name in reversed(names):
            vec = self.act_vec(name, vec)
        return vec

    def weight_block(self, w):
        return self.weight_index().get(w, ())


def build_F(a, b, c, t) -> FinModule:
    """The irreducible gl4-module F_t(a,b,c) as a FinModule."""
    hwm = HighestWeightModule(a, b, c, t)
    cols = {}
    for name in GL4_NAMES:
        cols[name] = {j: hwm.act_coords(name, j) for j in range(hwm.dim)}
    m = FinModule(hwm.dim, t, (0,) * hwm.dim, hwm.weights, GL4_NAMES, cols,
                  label=("F", a, b, c))
    m.hwm = hwm
    return m


def module_axiom_check(m: FinModule, pairs=None):
    """action([g,h]) == action(g)action(h) - (-1)^{|g||h|} action(h)action(g)."""
    gens = m.gens
    pairs = pairs if pairs is not None else list(itertools.combinations_with_replacement(gens, 2))
    for g, h in pairs:
        sign = -1 if (P4_PARITY.get(g, 0) and P4_PARITY.get(h, 0)) else 1
        want_parts = dict(p4_structure(g, h))
        for j in range(m.dim):
            lhs = m.act_vec(g, m.act_col(h, j))
            rhs = m.act_vec(h, m.act_col(g, j))
            acc = {}
            for k, v in lhs.items():
                acc[k] = v
            for k, v in rhs.items():
                acc[k] = sadd(acc.get(k, Q0), smul(mpq(-sign), v))
            for name, coef in want_parts.items():
                if name not in m.gens:
                    raise ModuleIntegrityError(f"bracket [{g},{h}] leaves generator set")
                for k, v in m.act_col(name, j).items():
                    acc[k] = sadd(acc.get(k, Q0), sneg(smul(coef, v)))
            bad = {k: v for k, v in acc.items() if not sis_zero(v)}
            if bad:
                raise ModuleIntegrityError(f"axiom fails for [{g},{h}] on basis {j}: {bad}")
    return True


def weight_consistency_check(m: FinModule):
    for hname, comp in ((("h", 1, 2), 0), (("h", 2, 3), 1), (("h", 3, 4), 2)):
        for j in range(m.dim):
            col = m.act_col(hname, j)
            want = mpq(m.weights[j][comp])
            got = col.get(j, Q0)
            if not seq(got, want) or any(k != j for k in col):
                raise ModuleIntegrityError(f"weight label mismatch at {j} for {hname}")
    return True


# -- characters ---------------------------------------------------------------

def character(m: FinModule, graded=None):
    """Multiset of (degree, weight) or of weights when the module is ungraded."""
    if graded is None:
        graded = m.degrees is not None
    ch = Counter()
    if graded:
        if m.degrees is None:
            raise ModuleIntegrityError("character(graded=True) on ungraded module")
        for d, w in zip(m.degrees, m.weights):
            ch[(d, w)] += 1
    else:
        for w in m.weights:
            ch[w] += 1
    return ch


@lru_cache(maxsize=None)
def f_character(a, b, c):
    """sl4 character of F(a,b,c) as a Counter of weights."""
    return Counter(build_F(a, b, c, Q0).weights)


def peel_characters(ch: Counter, char_of, top_of_max=None):
    """Greedy decomposition of ch as a sum of characters.

    char_of(w) returns the character Counter of the irreducible with label w;
    top_of_max maps the maximal-height weight present to the candidate label
    (identity for plain sl4 peeling).  Raises ModuleIntegrityError when the
    greedy step goes negative.
    """
    ch = Counter({w: n for w, n in ch.items() if n})
    out = Counter()
    while ch:
        cand = max(ch, key=lambda w: (height2(w), w))
        lab = top_of_max(cand) if top_of_max else cand
        if lab is None or not is_dominant(lab):
            raise ModuleIntegrityError(f"maximal weight {cand} admits no dominant label")
        piece = char_of(lab)
        for w, n in piece.items():
            if ch.get(w, 0) < n:
                raise ModuleIntegrityError(f"negative multiplicity at {w} peeling {lab}")
            ch[w] -= n
            if ch[w] == 0:
                del ch[w]
        out[lab] += 1
    return out


def decompose_semisimple(ch: Counter):
    """Decompose a (possibly degree-graded) character into irreducible sl4 tops."""
    graded = ch and isinstance(next(iter(ch)), tuple) and len(next(iter(ch))) == 2 \
        and isinstance(next(iter(ch))[1], tuple)
    if graded:
        out = Counter()
        by_deg = {}
        for (d, w), n in ch.items():
            by_deg.setdefault(d, Counter())[w] += n
        for d in sorted(by_deg):
            for w, n in peel_characters(by_deg[d], lambda lab: f_character(*lab)).items():
                out[(w, d)] += n
        return out
    return Counter({(w, 0): n for w, n in
                    peel_characters(ch, lambda lab: f_character(*lab)).items()})


def characters_to_json(ch: Counter):
    out = []
    for key, n in sorted(ch.items(), key=lambda kv: str(kv[0])):
        if isinstance(key[0], int) and isinstance(key, tuple) and len(key) == 3:
            out.append({"weight": list(key), "degree": 0, "multiplicity": n})
        else:
            d, w = key
            out.append({"weight": list(w), "degree": d, "multiplicity": n})
    return out
