"""Cohomology of the transformation groupoid of the Z-action on T^2.

The group direction is modelled by the two-term complex

    Omega^p(T^2) --(1 - gamma^*)--> Omega^p(T^2)

so the total complex in degree ``n`` is ``Omega^n (+) Omega^(n-1)`` with
differential ``(x, y) -> (d x, (1 - gamma^*) x - d y)``.  Both ``d`` and
``gamma^*`` preserve Fourier modes, so ranks are computed mode by mode.

Ranks use fraction-free elimination over the exact scalar ring: only ring
operations and exact zero tests are needed, and pivots that are monomials
(such as ``2 pi i k_j``) are preferred to keep entries small.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from torusindex.fedosov import FORM_BASIS, _wedge
from torusindex.fourier import FourierPoly
from torusindex.scalar import EXACT, NumericField


FORMS_BY_DEGREE = {p: [I for I in FORM_BASIS if len(I) == p] for p in range(3)}


class DeRhamForm:
    """``sum_I f_I dx^I`` on T^2 with FourierPoly coefficients."""

    __slots__ = ("comps", "field")

    def __init__(self, comps, field=EXACT):
        self.field = field
        self.comps = {tuple(I): f for I, f in comps.items() if not f.is_zero()}

    @classmethod
    def zero(cls, field=EXACT):
        return cls({}, field)

    def __getitem__(self, I):
        return self.comps.get(tuple(I), FourierPoly({}, self.field))

    def __add__(self, other):
        out = dict(self.comps)
        for I, f in other.comps.items():
            out[I] = out[I] + f if I in out else f
        return DeRhamForm(out, self.field)

    def __neg__(self):
        return DeRhamForm({I: -f for I, f in self.comps.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return DeRhamForm({I: f.scale(s) for I, f in self.comps.items()}, self.field)

    def is_zero(self):
        return not self.comps

    def degrees(self):
        return sorted({len(I) for I in self.comps})

    def translate(self, m):
        return DeRhamForm({I: f.translate(m) for I, f in self.comps.items()}, self.field)

    def __eq__(self, other):
        if not isinstance(other, DeRhamForm):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"DeRhamForm({ {I: len(f.coeffs) for I, f in self.comps.items()} })"


def de_rham_d(x):
    out = {}
    for I, f in x.comps.items():
        for j in (1, 2):
            sign, K = _wedge((j,), I)
            if not sign:
                continue
            df = f.deriv(j)
            if sign < 0:
                df = -df
            out[K] = out[K] + df if K in out else df
    return DeRhamForm(out, x.field)


def gamma_action(x):
    """Pullback along the generator: mode ``k`` picks up ``u^k1 v^k2``; frames are invariant."""
    return x.translate(1)


def random_form(rng, field=EXACT, modes=2, degree=None):
    comps = {}
    for I in FORM_BASIS:
        if degree is not None and len(I) != degree:
            continue
        coeffs = {}
        for _ in range(rng.randint(1, 3)):
            k = (rng.randint(-modes, modes), rng.randint(-modes, modes))
            coeffs[k] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        comps[I] = FourierPoly(coeffs, field)
    return DeRhamForm(comps, field)


# --------------------------------------------------------------------------
# per-mode matrices


def _mode_blocks(k, field, identity_action=False):
    """Matrices of ``d: Omega^p -> Omega^(p+1)`` and ``1 - gamma^*`` on mode ``k``.

    Columns index the source basis ``FORMS_BY_DEGREE[p]``; rows the target.
    """
    twopii = field.monomial(2, pi=1) * field.i
    dmats = {}
    for p in range(2):
        rows = FORMS_BY_DEGREE[p + 1]
        cols = FORMS_BY_DEGREE[p]
        M = [[field.zero for _ in cols] for _ in rows]
        for c, I in enumerate(cols):
            for j in (1, 2):
                sign, K = _wedge((j,), I)
                if sign and k[j - 1]:
                    M[rows.index(K)][c] = twopii * (sign * k[j - 1])
        dmats[p] = M
    if identity_action:
        g = field.zero
    else:
        g = field.one - field.monomial(1, u=k[0], v=k[1])
    return dmats, g


def _total_differential(k, field, identity_action=False):
    """Total differential ``C^n -> C^(n+1)`` on mode ``k`` for n = 0, 1, 2."""
    dmats, g = _mode_blocks(k, field, identity_action)
    dims = {p: len(FORMS_BY_DEGREE[p]) for p in range(3)}
    zero = field.zero
    mats = {}
    for n in range(3):
        # source C^n = Omega^n (+) Omega^(n-1); target C^(n+1) = Omega^(n+1) (+) Omega^n
        src = [(0, n)] + ([(1, n - 1)] if n >= 1 else [])
        tgt = ([(0, n + 1)] if n + 1 <= 2 else []) + [(1, n)]
        rows = []
        for tq, tp in tgt:
            for r in range(dims[tp]):
                row = []
                for sq, sp in src:
                    for c in range(dims[sp]):
                        if tq == 0 and sq == 0 and tp == sp + 1:
                            val = dmats[sp][r][c]
                        elif tq == 1 and sq == 0 and tp == sp:
                            val = g if r == c else zero
                        elif tq == 1 and sq == 1 and tp == sp + 1:
                            val = -dmats[sp][r][c]
                        else:
                            val = zero
                        row.append(val)
                rows.append(row)
        mats[n] = rows
    return mats


def total_dims(n):
    """``dim C^n`` per mode: Omega^n (+) Omega^(n-1)."""
    return sum(len(FORMS_BY_DEGREE[p]) for p in (n, n - 1) if 0 <= p <= 2)


# --------------------------------------------------------------------------
# ranks


def exact_rank(M):
    """Rank over the fraction field by fraction-free elimination."""
    rows = [list(r) for r in M if any(not x.is_zero() for x in r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        cand = [i for i in range(rank, len(rows)) if not rows[i][col].is_zero()]
        if not cand:
            continue
        mono = [i for i in cand if rows[i][col].is_monomial()]
        piv = (mono or cand)[0]
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            a = rows[i][col]
            if a.is_zero():
                continue
            rows[i] = [p * x - a * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def numeric_rank(M, tol=1e-9):
    if not M or not M[0]:
        return 0
    A = np.array([[complex(x.value) for x in r] for r in M])
    return int(np.linalg.matrix_rank(A, tol=tol))


def _rank(M, field):
    if not M or not M[0]:
        return 0
    if field is EXACT:
        return exact_rank(M)
    return numeric_rank(M)


def modes(K):
    return list(itertools.product(range(-K, K + 1), repeat=2))


def cohomology_dims(K=1, field=EXACT, identity_action=False):
    """``[h^0, h^1, h^2, h^3]`` of the mode-truncated two-term model."""
    if K < 1:
        raise ValueError("cutoff must be at least 1")
    h = [0, 0, 0, 0]
    for k in modes(K):
        mats = _total_differential(k, field, identity_action)
        ranks = {n: _rank(mats[n], field) for n in range(3)}
        for n in range(4):
            h[n] += total_dims(n) - ranks.get(n, 0) - ranks.get(n - 1, 0)
    return h


def periodic_dims(K=1, field=EXACT, identity_action=False, dims=None):
    h = cohomology_dims(K, field, identity_action) if dims is None else dims
    return [h[0] + h[2], h[1] + h[3]]


def resonance_warnings(K, field):
    if not isinstance(field, NumericField):
        return []
    return [f"|1 - u^{a} v^{b}| below tolerance: mode treated as non-invertible"
            for a, b in field.near_resonances(K)]


def rank_oracle(K=1, seed=0, identity_action=False):
    """Independent check: sympy ranks after substituting random rationals for the symbols."""
    import sympy
    rng = random.Random(seed)
    vals = {"pi": Fraction(rng.randint(7, 40), rng.randint(2, 9)),
            "u": Fraction(rng.randint(2, 40), rng.randint(41, 97)),
            "v": Fraction(rng.randint(2, 40), rng.randint(41, 97))}
    h = [0, 0, 0, 0]
    for k in modes(K):
        twopik = [2 * vals["pi"] * k[0], 2 * vals["pi"] * k[1]]
        g = 0 if identity_action else 1 - vals["u"] ** k[0] * vals["v"] ** k[1]
        # basis order: Omega^0 = [1]; Omega^1 = [dx1, dx2]; Omega^2 = [dx1 dx2]
        d0 = sympy.Matrix([[twopik[0]], [twopik[1]]])
        d1 = sympy.Matrix([[-twopik[1], twopik[0]]])
        eye = sympy.eye
        Z = sympy.zeros
        D0 = sympy.Matrix.vstack(d0, g * eye(1))
        D1 = sympy.Matrix.vstack(sympy.Matrix.hstack(d1, Z(1, 1)),
                                 sympy.Matrix.hstack(g * eye(2), -d0))
        D2 = sympy.Matrix.hstack(g * eye(1), -d1)
        r = [D0.rank(), D1.rank(), D2.rank()]
        dims = [1, 3, 3, 1]
        for n in range(4):
            h[n] += dims[n] - (r[n] if n < 3 else 0) - (r[n - 1] if n >= 1 else 0)
    return h


def total_d_squared_zero(K=1, field=EXACT):
    """``D^(n+1) D^n = 0`` on every mode of the box."""
    for k in modes(K):
        mats = _total_differential(k, field)
        for n in range(2):
            A, B = mats[n], mats[n + 1]
            for i in range(len(B)):
                for j in range(len(A[0])):
                    acc = field.zero
                    for t in range(len(A)):
                        acc = acc + B[i][t] * A[t][j]
                    if not acc.is_zero():
                        return False
    return True


# --------------------------------------------------------------------------
# finitely supported simplicial chains and the honest H^0


def _face(t, i):
    from torusindex.cyclic import BurgheleaTuple, burghelea_face
    return burghelea_face(BurgheleaTuple(tuple(t)), i).n


def boundary(chain):
    """``sum_i (-1)^i (d_i)_*`` on ``{tuple: DeRhamForm}``; the last face transports by ``T_(n_q)``."""
    out = {}
    for t, x in chain.items():
        q = len(t) - 1
        if q == 0:
            continue
        for i in range(q + 1):
            y = x if i < q else x.translate(t[q])
            if i % 2:
                y = -y
            s = _face(t, i)
            out[s] = out[s] + y if s in out else y
    return {s: y for s, y in out.items() if not y.is_zero()}


def chain_d(chain):
    return {t: de_rham_d(x) for t, x in chain.items()}


def chains_zero(chain):
    return all(x.is_zero() for x in chain.values())


def _chain_sub(a, b):
    out = dict(a)
    for t, y in b.items():
        out[t] = out[t] - y if t in out else -y
    return out


def random_chain(rng, q, field=EXACT, span=2, count=3):
    out = {}
    for _ in range(count):
        ns = [rng.randint(-span, span) for _ in range(q)]
        t = tuple(ns + [-sum(ns)])
        out[t] = random_form(rng, field)
    return out


def homology_boundary_check(chain):
    """Residual flags for ``boundary^2 = 0`` and ``d boundary = boundary d``."""
    bb = boundary(boundary(chain))
    comm = _chain_sub(chain_d(boundary(chain)), boundary(chain_d(chain)))
    return {"boundary_squared_zero": chains_zero(bb), "d_commutes": chains_zero(comm)}


def honest_h0(K=1, span=1, field=EXACT):
    """Dimension of invariant closed 0-forms using the simplicial coboundary on B_1.

    A 0-form ``f`` (modes in the box) is a cocycle iff ``df = 0`` and
    ``f - T_(-n) f = 0`` on every component ``(n, -n)`` with ``|n| <= span``.
    """
    cols = modes(K)
    rows = []
    twopii = field.monomial(2, pi=1) * field.i
    for j in (1, 2):
        rows.append([twopii * k[j - 1] for k in cols])
    for n in range(-span, span + 1):
        if n == 0:
            continue
        rows.append([field.one - field.monomial(1, u=-n * k[0], v=-n * k[1]) for k in cols])
    # distinct modes never mix, so the rank counts columns with a nonzero entry
    rank = 0
    for c in range(len(cols)):
        if any(not r[c].is_zero() for r in rows):
            rank += 1
    return len(cols) - rank


__all__ = [
    "DeRhamForm", "de_rham_d", "gamma_action", "random_form", "cohomology_dims", "periodic_dims",
    "exact_rank", "numeric_rank", "rank_oracle", "total_d_squared_zero", "boundary",
    "homology_boundary_check", "random_chain", "honest_h0", "resonance_warnings", "modes",
]
