"""Sparse exact linear algebra over the scalar tower.

Elimination is fraction-free (Bareiss) after rows are cleared to polynomial
form; every pivot and every row-clearing denominator contributes its
squarefree factors to `pivot_divisors`, so for parametric matrices the
computed rank/kernel is valid for every t outside the vanishing locus of the
recorded divisors, and those roots are exactly the candidate exceptional
central charges.
"""

from __future__ import annotations

from gmpy2 import mpq

from .scalars import (
    ArithmeticDomainError,
    Q0,
    Q1,
    TP_ONE,
    TPoly,
    TRat,
    _demote,
    evaluate_at_t,
    is_parametric,
    sadd,
    scalar_size,
    sdiv,
    sis_zero,
    smul,
    sneg,
    srender,
    ssub,
)


class SparseMatrix:
    """Immutable-by-convention sparse matrix with Scalar entries."""

    __slots__ = ("n_rows", "n_cols", "entries")

    def __init__(self, n_rows, n_cols, entries=None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < n_rows and 0 <= c < n_cols):
                    raise IndexError(f"entry ({r},{c}) out of range")
                if not sis_zero(v):
                    self.entries[(r, c)] = v

    @classmethod
    def from_rows(cls, rows, n_cols=None):
        rows = [dict(r) for r in rows]
        if n_cols is None:
            n_cols = 1 + max((c for r in rows for c in r), default=-1)
        m = cls(len(rows), n_cols)
        for i, r in enumerate(rows):
            for c, v in r.items():
                if not sis_zero(v):
                    m.entries[(i, c)] = v
        return m

    def rows(self):
        out = [dict() for _ in range(self.n_rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self):
        m = SparseMatrix(self.n_cols, self.n_rows)
        for (r, c), v in self.entries.items():
            m.entries[(c, r)] = v
        return m

    def mul_vec(self, vec):
        """Matrix times sparse column vector {col: Scalar} -> {row: Scalar}."""
        out = {}
        for (r, c), v in self.entries.items():
            x = vec.get(c)
            if x is None:
                continue
            out[r] = sadd(out.get(r, Q0), smul(v, x))
        return {r: v for r, v in out.items() if not sis_zero(v)}

    def is_parametric(self):
        return any(is_parametric(v) for v in self.entries.values())

    def to_text(self):
        """Matrix-market style dump: 'row col scalar' lines, deterministic order."""
        lines = [f"{self.n_rows} {self.n_cols}"]
        for (r, c) in sorted(self.entries):
            lines.append(f"{r} {c} {srender(self.entries[(r, c)])}")
        return "\n".join(lines) + "\n"

    def specialize(self, t0):
        m = SparseMatrix(self.n_rows, self.n_cols)
        for (r, c), v in self.entries.items():
            ev = evaluate_at_t(v, t0)
            if ev != 0:
                m.entries[(r, c)] = ev
        return m


class KernelResult:
    """Right-kernel basis plus the divisor bookkeeping of the elimination."""

    __slots__ = ("basis", "pivot_divisors", "rank")

    def __init__(self, basis, pivot_divisors, rank):
        self.basis = basis
        self.pivot_divisors = pivot_divisors
        self.rank = rank

    def dim(self):
        return len(self.basis)


def _to_poly(x):
    if isinstance(x, TRat):
        return x.num, x.den
    return TPoly([x]), TP_ONE


def _record_divisor(divisors, poly):
    if poly.is_constant():
        return
    for f in poly.squarefree_factors():
        divisors.add(f)


def _clear_rows(rows, divisors):
    """Scale each row to TPoly entries; denominators join the divisor set."""
    out = []
    for row in rows:
        if not row:
            out.append({})
            continue
        den = TP_ONE
        polys = {}
        for c, v in row.items():
            n, d = _to_poly(v)
            polys[c] = (n, d)
            g = den.gcd(d)
            den = den * d.exact_div(g)
        _record_divisor(divisors, den)
        out.append({c: n * den.exact_div(d) for c, (n, d) in polys.items()})
    return out


def _echelon_core(rows, n_cols, divisors, col_order=None):
    """Fraction-free row echelon on polynomial rows.

    Returns (echelon_rows, pivots) where pivots is a list of
    (col, row_dict, pivot_poly) in elimination order.  Pivot selection per
    column: smallest scalar size first, then lowest original row index.
    """
    order = col_order if col_order is not None else range(n_cols)
    live = [(i, r) for i, r in enumerate(rows) if r]
    pivots = []
    prev = TP_ONE
    for col in order:
        cand = [(i, r) for i, r in live if col in r]
        if not cand:
            continue
        cand.sort(key=lambda ir: (scalar_size(_demote(TRat(ir[1][col], TP_ONE, reduced=True))), ir[0]))
        pi, prow = cand[0]
        live = [(i, r) for i, r in live if i != pi]
        p = prow[col]
        _record_divisor(divisors, p)
        nxt = []
        for i, r in live:
            v = r.get(col)
            if v is None:
                # Bareiss still rescales untouched rows to keep exactness
                r2 = {}
                for c, x in r.items():
                    r2[c] = (p * x).exact_div(prev)
                if r2:
                    nxt.append((i, r2))
                continue
            r2 = {}
            for c, x in r.items():
                if c == col:
                    continue
                num = p * x - v * prow.get(c, _TP_Z)
                if not num.is_zero():
                    r2[c] = num.exact_div(prev)
            for c, y in prow.items():
                if c != col and c not in r:
                    num = -(v * y)
                    if not num.is_zero():
                        r2[c] = num.exact_div(prev)
            if r2:
                nxt.append((i, r2))
        live = nxt
        pivots.append((col, prow, p))
        prev = p
    return pivots


_TP_Z = TPoly()


def echelonize(m: SparseMatrix, col_order=None):
    """Row echelon form with deterministic pivoting and divisor tracking."""
    divisors = set()
    rows = _clear_rows(m.rows(), divisors)
    pivots = _echelon_core(rows, m.n_cols, divisors, col_order)
    out_rows = [{c: _demote(TRat(v, TP_ONE, reduced=True)) for c, v in prow.items()}
                for (_, prow, _) in pivots]
    while len(out_rows) < m.n_rows:
        out_rows.append({})
    ech = SparseMatrix.from_rows(out_rows, m.n_cols)
    if not m.is_parametric():
        divisors = set()
    return ech, divisors


def rank(m: SparseMatrix):
    ech, _ = echelonize(m)
    return sum(1 for r in ech.rows() if r)


def kernel_basis(m: SparseMatrix, col_order=None) -> KernelResult:
    """Basis of the right kernel over the coefficient field.

    For parametric matrices the kernel vectors are primitive polynomial
    vectors (content-free), valid for every t avoiding pivot_divisors.
    """
    divisors = set()
    rows = _clear_rows(m.rows(), divisors)
    pivots = _echelon_core(rows, m.n_cols, divisors, col_order)
    pivot_cols = [col for (col, _, _) in pivots]
    pivot_set = set(pivot_cols)
    free_cols = [c for c in (col_order if col_order is not None else range(m.n_cols))
                 if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = {fc: Q1}
        # back-substitute pivot rows in reverse elimination order
        for col, prow, p in reversed(pivots):
            acc = Q0
            for c, v in prow.items():
                if c == col:
                    continue
                x = vec.get(c)
                if x is not None:
                    acc = sadd(acc, smul(_demote(TRat(v, TP_ONE, reduced=True)), x))
            if not sis_zero(acc):
                vec[col] = sneg(sdiv(acc, _demote(TRat(p, TP_ONE, reduced=True))))
        basis.append(_primitive(vec))
    if not m.is_parametric():
        divisors = set()
    return KernelResult(basis, divisors, len(pivots))


def _primitive(vec):
    """Clear denominators and content to make a canonical primitive vector."""
    if any(isinstance(v, TRat) for v in vec.values()):
        den = TP_ONE
        for v in vec.values():
            if isinstance(v, TRat):
                g = den.gcd(v.den)
                den = den * v.den.exact_div(g)
        polys = {}
        for c, v in vec.items():
            n, d = _to_poly(v)
            polys[c] = n * den.exact_div(d)
        g = None
        for p in polys.values():
            g = p if g is None else g.gcd(p)
            if g.is_constant():
                break
        if g is not None and not g.is_constant():
            polys = {c: p.exact_div(g) for c, p in polys.items()}
        # normalize sign/scale: leading coefficient of the lowest column is positive
        lead_col = min(polys)
        lc = polys[lead_col].leading()
        polys = {c: p.scale(1 / lc) for c, p in polys.items()}
        den_lcm = 1
        for p in polys.values():
            for q in p.c:
                den_lcm = den_lcm * q.denominator // _gcd(den_lcm, q.denominator)
        polys = {c: p.scale(mpq(den_lcm)) for c, p in polys.items()}
        num_gcd = 0
        for p in polys.values():
            for q in p.c:
                num_gcd = _gcd(num_gcd, q.numerator)
        if num_gcd > 1:
            polys = {c: p.scale(mpq(1, num_gcd)) for c, p in polys.items()}
        return {c: _demote(TRat(p, TP_ONE, reduced=True)) for c, p in polys.items()}
    lead_col = min(vec)
    lead = vec[lead_col]
    vec = {c: v / lead for c, v in vec.items()}
    den_lcm = 1
    for v in vec.values():
        den_lcm = den_lcm * v.denominator // _gcd(den_lcm, v.denominator)
    vec = {c: v * den_lcm for c, v in vec.items()}
    num_gcd = 0
    for v in vec.values():
        num_gcd = _gcd(num_gcd, v.numerator)
    if num_gcd > 1:
        vec = {c: v / num_gcd for c, v in vec.items()}
    return vec


def _gcd(a, b):
    a, b = abs(int(a)), abs(int(b))
    while b:
        a, b = b, a % b
    return a


def specialize_and_rescan(m: SparseMatrix, t0) -> KernelResult:
    """Evaluate a parametric matrix at t0 and recompute the kernel over Q."""
    return kernel_basis(m.specialize(t0))


def rational_roots_of(divisors):
    roots = set()
    for d in divisors:
        roots.update(d.rational_roots())
    return sorted(roots)


def vec_eq_up_to_scalar(u, v):
    """Return the Scalar c with u = c*v, or None."""
    if not u and not v:
        return Q1
    if not u or not v or set(u) != set(v):
        return None
    c0 = min(u)
    c = sdiv(u[c0], v[c0])
    for k, x in u.items():
        if not sis_zero(ssub(x, smul(c, v[k]))):
            return None
    return c
