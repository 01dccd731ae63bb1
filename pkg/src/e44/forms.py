"""Polynomial differential geometry in x1..x4 over the scalar tower.

Vector fields are 4-tuples of polynomials (coefficients of d/dx_i), k-forms
map strictly increasing index tuples to polynomial coefficients.  Everything
is a plain immutable value; all operations are pure.

The identification of 3-forms with vector fields is contraction with the
standard volume form dx1^dx2^dx3^dx4: f dx_i^dx_j^dx_k -> (-1)^(l-1) f d/dx_l
for {i,j,k,l} = {1,2,3,4}.  This is the orientation that makes the assembled
superalgebra bracket reproduce [b44, a12] = 4 x4 d/dx3.
"""

from __future__ import annotations

import itertools

from .scalars import Q0, Q1, sadd, sis_zero, smul, sneg, srender, sscale_int

ZERO4 = (0, 0, 0, 0)


class DegreeError(ValueError):
    pass


# -- polynomials: dict {(e1,e2,e3,e4): Scalar} -------------------------------

def p_zero():
    return {}

def p_const(c):
    return {} if sis_zero(c) else {ZERO4: c}

def p_x(i, power=1):
    e = [0, 0, 0, 0]
    e[i - 1] = power
    return {tuple(e): Q1}

def p_add(p, q):
    out = dict(p)
    for e, c in q.items():
        acc = sadd(out.get(e, Q0), c)
        if sis_zero(acc):
            out.pop(e, None)
        else:
            out[e] = acc
    return out

def p_scale(p, c):
    if sis_zero(c):
        return {}
    return {e: smul(v, c) for e, v in p.items()}

def p_neg(p):
    return {e: sneg(v) for e, v in p.items()}

def p_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
            acc = sadd(out.get(e, Q0), smul(c1, c2))
            if sis_zero(acc):
                out.pop(e, None)
            else:
                out[e] = acc
    return out

def p_diff(p, i):
    """d/dx_i."""
    out = {}
    for e, c in p.items():
        k = e[i - 1]
        if k == 0:
            continue
        e2 = list(e)
        e2[i - 1] -= 1
        out[tuple(e2)] = sscale_int(c, k)
    return out

def p_is_zero(p):
    return not p

def p_eq(p, q):
    return p_is_zero(p_add(p, p_neg(q)))

def p_degrees(p):
    return {sum(e) for e in p}

def p_render(p):
    if not p:
        return "0"
    parts = []
    for e in sorted(p):
        c = p[e]
        mono = "*".join(f"x{i+1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
        cs = srender(c)
        parts.append(f"({cs})" + (f"*{mono}" if mono else ""))
    return " + ".join(parts)


# -- vector fields: 4-tuples of polynomials ----------------------------------

def vf_zero():
    return ({}, {}, {}, {})

def vf_basis(i, coeff_poly=None):
    out = [{}, {}, {}, {}]
    out[i - 1] = dict(coeff_poly) if coeff_poly is not None else {ZERO4: Q1}
    return tuple(out)

def vf_add(X, Y):
    return tuple(p_add(X[i], Y[i]) for i in range(4))

def vf_scale(X, c):
    return tuple(p_scale(X[i], c) for i in range(4))

def vf_neg(X):
    return tuple(p_neg(X[i]) for i in range(4))

def vf_is_zero(X):
    return all(not comp for comp in X)

def vf_apply(X, f):
    """X(f) for a polynomial f."""
    out = {}
    for i in range(4):
        if X[i]:
            out = p_add(out, p_mul(X[i], p_diff(f, i + 1)))
    return out

def vf_bracket(X, Y):
    """[X, Y] of vector fields."""
    comps = []
    for i in range(4):
        comps.append(p_add(vf_apply(X, Y[i]), p_neg(vf_apply(Y, X[i]))))
    return tuple(comps)

def divergence(X):
    out = {}
    for i in range(4):
        out = p_add(out, p_diff(X[i], i + 1))
    return out

def vf_render(X):
    parts = [f"({p_render(X[i])})*del{i+1}" for i in range(4) if X[i]]
    return " + ".join(parts) if parts else "0"


# -- k-forms ------------------------------------------------------------------

class KForm:
    """Differential form of fixed degree k with polynomial coefficients."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k, coeffs=None):
        if not 0 <= k <= 4:
            raise DegreeError(f"form degree {k} out of range")
        self.k = k
        self.coeffs = {}
        if coeffs:
            for idx, poly in coeffs.items():
                if len(idx) != k or list(idx) != sorted(set(idx)):
                    raise DegreeError(f"bad index tuple {idx} for a {k}-form")
                if poly:
                    self.coeffs[tuple(idx)] = poly

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, KForm) and self.k == other.k
                and form_add(self, form_neg(other)).is_zero())

    def render(self):
        if not self.coeffs:
            return "0"
        parts = []
        for idx in sorted(self.coeffs):
            mono = "^".join(f"dx{i}" for i in idx)
            body = p_render(self.coeffs[idx])
            parts.append(f"({body})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"KForm({self.k}, {self.render()})"


def form_zero(k):
    return KForm(k)

def form_from_poly(f):
    return KForm(0, {(): f})

def dx(i):
    return KForm(1, {(i,): {ZERO4: Q1}})

def one_form(coeff_polys):
    """One-form sum_i P_i dx_i from {i: poly}."""
    return KForm(1, {(i,): p for i, p in coeff_polys.items() if p})

def form_add(w, h):
    if w.k != h.k:
        raise DegreeError("adding forms of different degree")
    out = dict(w.coeffs)
    for idx, poly in h.coeffs.items():
        s = p_add(out.get(idx, {}), poly)
        if s:
            out[idx] = s
        else:
            out.pop(idx, None)
    return KForm(w.k, out)

def form_scale(w, c):
    return KForm(w.k, {idx: p_scale(poly, c) for idx, poly in w.coeffs.items()})

def form_neg(w):
    return KForm(w.k, {idx: p_neg(poly) for idx, poly in w.coeffs.items()})

def form_pmul(w, f):
    """Multiply by a polynomial (0-form)."""
    return KForm(w.k, {idx: p_mul(poly, f) for idx, poly in w.coeffs.items()})


def _merge_indices(a, b):
    """Sign and sorted tuple of concatenated strictly-increasing tuples."""
    if set(a) & set(b):
        return 0, ()
    merged = list(a)
    sign = 1
    for x in b:
        pos = len(merged)
        while pos > 0 and merged[pos - 1] > x:
            pos -= 1
        sign *= (-1) ** (len(merged) - pos)
        merged.insert(pos, x)
    return sign, tuple(merged)


def wedge(w, h):
    if w.k + h.k > 4:
        return KForm(4)  # zero: no 5-forms on 4 variables
    out = {}
    for ia, pa in w.coeffs.items():
        for ib, pb in h.coeffs.items():
            sign, idx = _merge_indices(ia, ib)
            if sign == 0:
                continue
            term = p_mul(pa, pb)
            if sign < 0:
                term = p_neg(term)
            s = p_add(out.get(idx, {}), term)
            if s:
                out[idx] = s
            else:
                out.pop(idx, None)
    return KForm(w.k + h.k, out)


def de_rham_d(w):
    """Exterior differential; on 4-forms returns the (empty) zero form."""
    if w.k == 4:
        return KForm(4)
    out = KForm(w.k + 1)
    for idx, poly in w.coeffs.items():
        for i in range(1, 5):
            df = p_diff(poly, i)
            if not df:
                continue
            sign, midx = _merge_indices((i,), idx)
            if sign == 0:
                continue
            term = df if sign > 0 else p_neg(df)
            out = form_add(out, KForm(w.k + 1, {midx: term}))
    return out


def contract(X, w):
    """Interior product iota_X; contraction of a 0-form is zero."""
    if w.k == 0:
        return KForm(0)
    out = {}
    for idx, poly in w.coeffs.items():
        for pos, i in enumerate(idx):
            if not X[i - 1]:
                continue
            rest = idx[:pos] + idx[pos + 1:]
            term = p_mul(X[i - 1], poly)
            if pos % 2 == 1:
                term = p_neg(term)
            s = p_add(out.get(rest, {}), term)
            if s:
                out[rest] = s
            else:
                out.pop(rest, None)
    return KForm(w.k - 1, out)


def lie_derivative(X, w):
    """Cartan formula L_X = iota_X d + d iota_X."""
    return form_add(contract(X, de_rham_d(w)), de_rham_d(contract(X, w)))


def lie_derivative_coordinate(X, w):
    """Coordinate-rule Lie derivative, used as an independent cross-check:
    L_X(f dx_I) = X(f) dx_I + f * sum_pos dx_i1^..^d(X(x_ipos))^..^dx_ik.
    """
    out = KForm(w.k)
    for idx, poly in w.coeffs.items():
        out = form_add(out, KForm(w.k, {idx: vf_apply(X, poly)}))
        for pos, i in enumerate(idx):
            dXi = de_rham_d(form_from_poly(X[i - 1]))
            pre = KForm(len(idx[:pos]), {idx[:pos]: p_const(Q1)}) if pos else form_from_poly(p_const(Q1))
            post = KForm(len(idx[pos + 1:]), {idx[pos + 1:]: p_const(Q1)})
            term = wedge(wedge(pre, dXi), post)
            out = form_add(out, KForm(w.k, {j: p_mul(c, poly) for j, c in term.coeffs.items()}))
    return out


_COMPLEMENT = {}
for _l in range(1, 5):
    _idx = tuple(sorted(set(range(1, 5)) - {_l}))
    _COMPLEMENT[_idx] = (_l, (-1) ** (_l - 1))


def three_form_to_vf(w):
    """Identify a 3-form with a vector field via the standard volume form."""
    if w.k != 3:
        raise DegreeError("three_form_to_vf needs a 3-form")
    comps = [{}, {}, {}, {}]
    for idx, poly in w.coeffs.items():
        l, sign = _COMPLEMENT[idx]
        comps[l - 1] = p_add(comps[l - 1], poly if sign > 0 else p_neg(poly))
    return tuple(comps)


def vf_to_three_form(X):
    """Inverse of three_form_to_vf."""
    out = {}
    for idx, (l, sign) in _COMPLEMENT.items():
        poly = X[l - 1]
        if poly:
            out[idx] = poly if sign > 0 else p_neg(poly)
    return KForm(3, out)


EULER = (p_x(1), p_x(2), p_x(3), p_x(4))  # the Euler field C = sum x_i d/dx_i


def integral_form(w):
    """The integral operator on forms with homogeneous polynomial coefficients:
    int(w) = iota_C(w) / (d + k) with d the coefficient degree and k the form
    degree.  Undefined for d + k = 0.
    """
    degs = set()
    for poly in w.coeffs.values():
        degs |= p_degrees(poly)
    if not degs:
        return KForm(max(w.k - 1, 0))
    if len(degs) != 1:
        raise DegreeError("integral_form needs homogeneous coefficients")
    d = degs.pop()
    if d + w.k == 0:
        raise DegreeError("integral undefined for degree 0 scalar")
    from gmpy2 import mpq
    return form_scale(contract(EULER, w), mpq(1, d + w.k))


def integral_form_graded(w):
    """integral_form extended linearly over coefficient degrees."""
    if w.is_zero():
        return KForm(max(w.k - 1, 0))
    pieces = {}
    for idx, poly in w.coeffs.items():
        for e, c in poly.items():
            pieces.setdefault(sum(e), KForm(w.k))
            pieces[sum(e)] = form_add(pieces[sum(e)], KForm(w.k, {idx: {e: c}}))
    out = KForm(max(w.k - 1, 0))
    for piece in pieces.values():
        out = form_add(out, integral_form(piece))
    return out
