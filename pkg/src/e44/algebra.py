"""The Lie superalgebra E(4,4) as a graded bracket engine.

Even part: polynomial vector fields in x1..x4.  Odd part: polynomial
one-forms.  Brackets:

    [X, Y]     = vector field commutator
    [X, w]     = L_X(w) - (1/2) div(X) w
    [w1, w2]   = d(w1)^w2 + w1^d(w2), the 3-form read as a vector field

Principal grading: a monomial coefficient of x-degree n sits in degree n-1
for both d/dx and dx terms.  Degree 0 is the central extension phat(4) of
p(4), with distinguished basis {x_i d/dx_j (i != j), h_12, h_23, h_34, C,
a_ij (i<j), b_ij (i<=j)}.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from gmpy2 import mpq

from .scalars import Q0, Q1, sadd, sdiv, sis_zero, smul, sneg
from . import forms as F


class SuperElement:
    """even: vector field (4 polys); odd: one-form (KForm of degree 1)."""

    __slots__ = ("even", "odd")

    def __init__(self, even=None, odd=None):
        self.even = even if even is not None else F.vf_zero()
        self.odd = odd if odd is not None else F.KForm(1)

    def is_zero(self):
        return F.vf_is_zero(self.even) and self.odd.is_zero()

    def __add__(self, other):
        return SuperElement(F.vf_add(self.even, other.even),
                            F.form_add(self.odd, other.odd))

    def scale(self, c):
        return SuperElement(F.vf_scale(self.even, c), F.form_scale(self.odd, c))

    def __neg__(self):
        return self.scale(mpq(-1))

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, SuperElement) and (self - other).is_zero()

    def render(self):
        parts = []
        if not F.vf_is_zero(self.even):
            parts.append(F.vf_render(self.even))
        if not self.odd.is_zero():
            parts.append(self.odd.render().replace("dx", "d"))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"SuperElement({self.render()})"


def vf(i, poly=None):
    return SuperElement(even=F.vf_basis(i, poly))

def form(i, poly=None):
    p = dict(poly) if poly is not None else F.p_const(Q1)
    return SuperElement(odd=F.KForm(1, {(i,): p}))

def partial(i):
    return vf(i)

def d(i):
    return form(i)


def bracket(u: SuperElement, v: SuperElement) -> SuperElement:
    """Superbracket, bilinear over parity components."""
    out = SuperElement()
    X, Y = u.even, v.even
    w1, w2 = u.odd, v.odd
    if not F.vf_is_zero(X) and not F.vf_is_zero(Y):
        out = out + SuperElement(even=F.vf_bracket(X, Y))
    if not F.vf_is_zero(X) and not w2.is_zero():
        lx = F.form_add(F.lie_derivative(X, w2),
                        F.form_scale(F.form_pmul(w2, F.divergence(X)), mpq(-1, 2)))
        out = out + SuperElement(odd=lx)
    if not w1.is_zero() and not F.vf_is_zero(Y):
        ly = F.form_add(F.lie_derivative(Y, w1),
                        F.form_scale(F.form_pmul(w1, F.divergence(Y)), mpq(-1, 2)))
        out = out + SuperElement(odd=F.form_neg(ly))
    if not w1.is_zero() and not w2.is_zero():
        three = F.form_add(F.wedge(F.de_rham_d(w1), w2), F.wedge(w1, F.de_rham_d(w2)))
        out = out + SuperElement(even=F.three_form_to_vf(three))
    return out


# -- principal grading --------------------------------------------------------

def monomials_of_degree(n):
    """Exponent tuples of total degree n in 4 variables, lexicographic."""
    out = []
    for e1 in range(n, -1, -1):
        for e2 in range(n - e1, -1, -1):
            for e3 in range(n - e1 - e2, -1, -1):
                out.append((e1, e2, e3, n - e1 - e2 - e3))
    return out


def basis_of_degree(j):
    """Monomial basis of E(4,4)_j: x^a d/dx_i and x^a dx_i with |a| = j+1."""
    if j < -1:
        raise ValueError(f"principal degree {j} out of range (>= -1)")
    out = []
    for e in monomials_of_degree(j + 1):
        poly = {e: Q1}
        for i in range(1, 5):
            out.append(vf(i, poly))
    for e in monomials_of_degree(j + 1):
        poly = {e: Q1}
        for i in range(1, 5):
            out.append(form(i, poly))
    return out


def monomial_weight(exponents, direction, parity):
    """sl4 weight (fundamental coordinates) of x^a d/dx_i or x^a dx_i."""
    m = list(exponents)
    if parity == 0:
        m[direction - 1] -= 1
    else:
        m[direction - 1] += 1
    return (m[0] - m[1], m[1] - m[2], m[2] - m[3])


def eps4(i, j, l, m):
    """Sign of the permutation (i,j,l,m) of (1,2,3,4); 0 on repeats."""
    idx = (i, j, l, m)
    if len(set(idx)) != 4:
        return 0
    inv = sum(1 for a in range(4) for b in range(a + 1, 4) if idx[a] > idx[b])
    return -1 if inv % 2 else 1


# -- the phat(4) basis --------------------------------------------------------

def a_elem(i, j):
    """a_ij = x_i dx_j - x_j dx_i."""
    return SuperElement(odd=F.KForm(1, {(j,): F.p_x(i), (i,): F.p_neg(F.p_x(j))}))

def b_elem(i, j):
    """b_ij = x_i dx_j + x_j dx_i."""
    if i == j:
        return SuperElement(odd=F.KForm(1, {(i,): F.p_scale(F.p_x(i), mpq(2))}))
    return SuperElement(odd=F.KForm(1, {(j,): F.p_x(i), (i,): F.p_x(j)}))

def e_elem(i, j):
    """x_i d/dx_j."""
    return vf(j, F.p_x(i))

def h_elem(i, j):
    """h_ij = x_i d/dx_i - x_j d/dx_j."""
    return SuperElement(even=F.vf_add(F.vf_basis(i, F.p_x(i)),
                                      F.vf_neg(F.vf_basis(j, F.p_x(j)))))

def c_elem():
    return SuperElement(even=F.EULER)


P4_NAMES = (
    [("e", i, j) for i in range(1, 5) for j in range(1, 5) if i != j]
    + [("h", i, i + 1) for i in range(1, 4)]
    + [("C",)]
    + [("a", i, j) for i, j in itertools.combinations(range(1, 5), 2)]
    + [("b", i, j) for i in range(1, 5) for j in range(i, 5)]
)

P4_PARITY = {}
for _n in P4_NAMES:
    P4_PARITY[_n] = 1 if _n[0] in ("a", "b") else 0


@lru_cache(maxsize=None)
def p4_realize(name) -> SuperElement:
    kind = name[0]
    if kind == "e":
        return e_elem(name[1], name[2])
    if kind == "h":
        return h_elem(name[1], name[2])
    if kind == "C":
        return c_elem()
    if kind == "a":
        return a_elem(name[1], name[2])
    if kind == "b":
        return b_elem(name[1], name[2])
    raise KeyError(name)


def decompose_p4(u: SuperElement):
    """Coordinates of a degree-0 element in the phat(4) basis."""
    out = {}
    diag = [Q0, Q0, Q0, Q0]
    for i in range(4):
        for e, c in u.even[i].items():
            if sum(e) != 1:
                raise ValueError("decompose_p4 on non-linear vector field")
            j = e.index(1) + 1
            if j == i + 1:
                diag[i] = c
            else:
                out[("e", j, i + 1)] = c
    # diag = l1 h12 + l2 h23 + l3 h34 + l4 C componentwise:
    # d1 = l1+l4, d2 = -l1+l2+l4, d3 = -l2+l3+l4, d4 = -l3+l4
    l4 = sdiv(sadd(sadd(diag[0], diag[1]), sadd(diag[2], diag[3])), mpq(4))
    l1 = sadd(diag[0], sneg(l4))
    l2 = sadd(sadd(diag[1], l1), sneg(l4))
    l3 = sadd(sadd(diag[2], l2), sneg(l4))
    for nm, val in ((("h", 1, 2), l1), (("h", 2, 3), l2), (("h", 3, 4), l3), (("C",), l4)):
        if not sis_zero(val):
            out[nm] = val
    coef = {}
    for (j,), poly in u.odd.coeffs.items():
        for e, c in poly.items():
            if sum(e) != 1:
                raise ValueError("decompose_p4 on non-linear one-form")
            i = e.index(1) + 1
            coef[(i, j)] = c  # x_i dx_j
    seen = set()
    for (i, j), c in coef.items():
        if (i, j) in seen:
            continue
        if i == j:
            out[("b", i, i)] = sdiv(c, mpq(2))
            seen.add((i, j))
            continue
        lo, hi = min(i, j), max(i, j)
        c_lohi = coef.get((lo, hi), Q0)   # x_lo dx_hi
        c_hilo = coef.get((hi, lo), Q0)   # x_hi dx_lo
        av = sdiv(sadd(c_lohi, sneg(c_hilo)), mpq(2))
        bv = sdiv(sadd(c_lohi, c_hilo), mpq(2))
        if not sis_zero(av):
            out[("a", lo, hi)] = av
        if not sis_zero(bv):
            out[("b", lo, hi)] = bv
        seen.add((lo, hi))
        seen.add((hi, lo))
    return out


@lru_cache(maxsize=None)
def p4_structure(n1, n2):
    """[n1, n2] in phat(4) coordinates; cached structure constants."""
    res = bracket(p4_realize(n1), p4_realize(n2))
    return tuple(sorted(decompose_p4(res).items()))


def principal_degree_parts(u: SuperElement):
    """Split into homogeneous principal-degree components {j: SuperElement}."""
    parts = {}
    for i in range(4):
        for e, c in u.even[i].items():
            j = sum(e) - 1
            parts.setdefault(j, SuperElement())
            parts[j] = parts[j] + vf(i + 1, {e: c})
    for (i,), poly in u.odd.coeffs.items():
        for e, c in poly.items():
            j = sum(e) - 1
            parts.setdefault(j, SuperElement())
            parts[j] = parts[j] + form(i, {e: c})
    return parts


# -- raising set --------------------------------------------------------------

def E_elem():
    """E = x4^2 dx3 - x3 x4 dx4."""
    return SuperElement(odd=F.KForm(1, {
        (3,): F.p_x(4, 2),
        (4,): F.p_neg(F.p_mul(F.p_x(3), F.p_x(4))),
    }))


def x4C_elem():
    """x4 * C = sum_i x4 x_i d/dx_i."""
    comps = tuple(F.p_mul(F.p_x(4), F.p_x(i)) for i in range(1, 5))
    return SuperElement(even=comps)


def raising_generators():
    """{x1 d/dx2, x2 d/dx3, x3 d/dx4, b44, E, x4 C}; annihilation by these
    characterizes singular vectors in induced modules."""
    return [e_elem(1, 2), e_elem(2, 3), e_elem(3, 4), b_elem(4, 4), E_elem(), x4C_elem()]


RAISING_NAMES = [("e", 1, 2), ("e", 2, 3), ("e", 3, 4), ("b", 4, 4), ("E",), ("x4C",)]


def realize_generator(name) -> SuperElement:
    if name == ("E",):
        return E_elem()
    if name == ("x4C",):
        return x4C_elem()
    if name[0] == "x2del":       # x_i^2 d/dx_j
        return vf(name[2], F.p_x(name[1], 2))
    if name[0] == "x2d":         # x_i^2 dx_j
        return form(name[2], F.p_x(name[1], 2))
    return p4_realize(name)


def generator_parity(name):
    if name in (("E",),):
        return 1
    if name == ("x4C",):
        return 0
    if name[0] == "x2d":
        return 1
    if name[0] == "x2del":
        return 0
    return P4_PARITY[name]
