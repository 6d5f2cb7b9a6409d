"""Simplicial cocycle generators, explicit cyclic cochains and index pairings.

Conventions (all fixed here and echoed in every CLI report):

* ``tau(F) = integral of F_0`` over the unit space with total mass 1;
* ``N(f W^n) = n f W^n`` and ``d_j`` differentiates every coefficient;
* ``Phi(xi0)(F) = -(hbar theta)^-1 tau(F)``,
  ``Phi(xi2)(a0, a1, a2) = +(hbar/theta) tau(a0 N(a1) d_2 a2)``,
  ``Phi(xi3)(a0, a1, a2) = -(hbar/theta) tau(a0 N(a1) d_1 a2)``.

Written on components, ``a0 N(a1) d a2`` at ``W^0`` is
``n1 f0 T_n0(f1) T_(n0+n1)(d f2)`` summed over ``n0 + n1 + n2 = 0``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import sympy

from torusindex.crossed import CrossedElement, rieffel_projection, unit_fourier
from torusindex.cyclic import chern, hochschild_b
from torusindex.piecewise import PiecewiseFn
from torusindex.pwseries import PWSeries, RealSeries
from torusindex.scalar import EXACT
from torusindex.series import DEFAULT_ORDER, FormalLaurent


# --------------------------------------------------------------------------
# simplicial cochains on the Burghelea spaces


class CochainError(ValueError):
    pass


N_SYMBOLS = sympy.symbols("n0:6", integer=True)
U, V = sympy.symbols("u v")


@dataclass
class SimplicialCochain:
    """A (p, q) cochain: ``{form index I: {mode k: sympy expr in n0..nq}}``.

    ``I`` is one of ``()``, ``(1,)``, ``(2,)``, ``(1, 2)``; all indices share
    the form degree ``p``.  The value on the component ``(n0, ..., nq)`` of
    ``B_q`` is obtained by substituting the tuple.
    """

    q: int
    data: dict
    name: str = ""
    p: int = dc_field(init=False)

    def __post_init__(self):
        degs = {len(I) for I in self.data}
        if len(degs) > 1:
            raise CochainError("cochain mixes form degrees")
        self.p = degs.pop() if degs else 0
        self.data = {I: {tuple(k): sympy.sympify(v) for k, v in modes.items()}
                     for I, modes in self.data.items()}

    @property
    def total_degree(self):
        return self.p + self.q

    def evaluate(self, tup):
        """Numeric data on one component: ``{I: {k: value}}``."""
        if len(tup) != self.q + 1 or sum(tup) != 0:
            raise CochainError(f"{tup} is not a component of B_{self.q}")
        subs = dict(zip(N_SYMBOLS, tup))
        return {I: {k: v.subs(subs) for k, v in modes.items()} for I, modes in self.data.items()}


def _face_substitution(q1, i):
    """Substitution realizing the pullback along the i-th face B_q1 -> B_(q1-1)."""
    n = N_SYMBOLS[:q1 + 1]
    k = q1
    if i < k:
        image = list(n[:i]) + [n[i] + n[i + 1]] + list(n[i + 2:k + 1])
    else:
        image = [n[k] + n[0]] + list(n[1:k])
    return {N_SYMBOLS[j]: image[j] for j in range(k)}


def _sum_zero(expr, q):
    """Impose ``n0 + ... + nq = 0`` by eliminating ``nq``."""
    last = N_SYMBOLS[q]
    return sympy.expand(expr.subs(last, -sum(N_SYMBOLS[:q])))


def simplicial_delta(x):
    """``sum_i (-1)^i d_i^*``; the last face carries the transport ``T_(-n_last)``."""
    if x.q > 2:
        raise CochainError("simplicial degree above 2 is not supported")
    q1 = x.q + 1
    out = {}
    for i in range(q1 + 1):
        subs = _face_substitution(q1, i)
        sign = -1 if i % 2 else 1
        for I, modes in x.data.items():
            for k, expr in modes.items():
                val = expr.subs(subs, simultaneous=True)
                if i == q1 and k != (0, 0):
                    val = val * U ** (-N_SYMBOLS[q1] * k[0]) * V ** (-N_SYMBOLS[q1] * k[1])
                slot = out.setdefault(I, {})
                slot[k] = slot.get(k, 0) + sign * val
    return SimplicialCochain(q1, out, f"delta {x.name}")


def simplicial_d(x):
    """Exterior derivative, modewise: ``d e_k = 2 pi i (k1 e_k dx^1 + k2 e_k dx^2)``."""
    out = {}
    for I, modes in x.data.items():
        for j in (1, 2):
            if j in I:
                continue
            K = tuple(sorted((j,) + I))
            sign = 1 if not I or j < I[0] else -1
            for k, expr in modes.items():
                if k[j - 1]:
                    slot = out.setdefault(K, {})
                    slot[k] = slot.get(k, 0) + sign * 2 * sympy.pi * sympy.I * k[j - 1] * expr
    return SimplicialCochain(x.q, out, f"d {x.name}")


def simplicial_closed(x):
    """``(bool, residuals)``: both bidegree parts of ``(d + delta) x`` after ``sum n = 0``."""
    res = {}
    for label, y in (("d", simplicial_d(x)), ("delta", simplicial_delta(x))):
        parts = {}
        for I, modes in y.data.items():
            for k, expr in modes.items():
                r = sympy.simplify(_sum_zero(expr, y.q))
                if r != 0:
                    parts[(I, k)] = r
        res[label] = parts
    return not (res["d"] or res["delta"]), res


def generators():
    """The eight generators, keyed by name."""
    n1 = N_SYMBOLS[1]
    one = {(0, 0): 1}
    lin = {(0, 0): n1}
    return {
        "xi0": SimplicialCochain(0, {(): one}, "xi0"),
        "eta1": SimplicialCochain(0, {(1,): one}, "eta1"),
        "eta2": SimplicialCochain(0, {(2,): one}, "eta2"),
        "eta3": SimplicialCochain(1, {(): lin}, "eta3"),
        "xi1": SimplicialCochain(0, {(1, 2): one}, "xi1"),
        "xi2": SimplicialCochain(1, {(1,): lin}, "xi2"),
        "xi3": SimplicialCochain(1, {(2,): lin}, "xi3"),
        "eta0": SimplicialCochain(1, {(1, 2): lin}, "eta0"),
    }


# --------------------------------------------------------------------------
# cyclic cochains


def _as_laurent(value, field, factor, shift):
    """``factor * hbar^shift * value`` for a trace value of either mode."""
    if isinstance(value, RealSeries):
        if field is EXACT and not value.is_rational():
            raise CochainError("exact pairing needs a rational trace; use method='quad' "
                               "with a numeric field")
        return value.to_laurent(field, factor, shift)
    if value.field != field:
        value = value.evaluate(field)
    return (value * field.coerce(factor)).shift(shift)


def _trace(F, method):
    if F.kind == "pw":
        return F.trace(method=method)
    return F.trace()


@dataclass(frozen=True)
class CyclicCochain:
    """A closed-form cochain of the given arity (number of arguments minus one)."""

    name: str
    arity: int
    fn: object

    def __call__(self, *args, field=EXACT, method="exact"):
        if len(args) != self.arity + 1:
            raise CochainError(f"{self.name} takes {self.arity + 1} arguments")
        return self.fn(*args, field=field, method=method)

    def on_chain(self, chain, field=EXACT, method="exact"):
        """Linear extension to a :class:`Chain` of the matching degree."""
        if chain.degree != self.arity:
            raise CochainError(f"{self.name} has arity {self.arity}, chain degree {chain.degree}")
        total = None
        for c, t in chain.terms:
            val = self(*t, field=field, method=method)
            val = val * field.coerce(Fraction(c))
            total = val if total is None else total + val
        if total is None:
            return FormalLaurent.zero(field)
        return total


def phi_xi0(F, field=EXACT, method="exact"):
    """``-(hbar theta)^-1 tau(F)``."""
    return _as_laurent(_trace(F, method), field, -field.theta.inverse(), -1)


def _psi(a0, a1, a2, j, method):
    return _trace(a0 * a1.number_operator() * a2.deriv(j), method)


def phi_xi2(a0, a1, a2, field=EXACT, method="exact"):
    return _as_laurent(_psi(a0, a1, a2, 2, method), field, field.theta.inverse(), 1)


def phi_xi3(a0, a1, a2, field=EXACT, method="exact"):
    return _as_laurent(_psi(a0, a1, a2, 1, method), field, -field.theta.inverse(), 1)


COCYCLES = {
    "xi0": CyclicCochain("xi0", 0, phi_xi0),
    "xi2": CyclicCochain("xi2", 2, phi_xi2),
    "xi3": CyclicCochain("xi3", 2, phi_xi3),
}


def cocycle(name):
    try:
        return COCYCLES[name]
    except KeyError:
        raise CochainError(f"no closed-form cochain {name!r}; available: {sorted(COCYCLES)}") from None


def hochschild_coboundary_value(phi, chain, field=EXACT, method="exact"):
    """``(b phi)(chain) = phi(b chain)``."""
    return phi.on_chain(hochschild_b(chain), field, method)


def index_pairing(phi, E, k=None, field=EXACT, method="exact"):
    """``<phi, Ch_k(E)>`` with ``2k`` equal to the arity of ``phi``."""
    if isinstance(phi, str):
        phi = cocycle(phi)
    if phi.arity % 2:
        raise CochainError("odd cochains do not pair with idempotents")
    if k is None:
        k = phi.arity // 2
    if 2 * k != phi.arity:
        raise CochainError(f"{phi.name} has arity {phi.arity}; Ch_{k} has degree {2 * k}")
    return phi.on_chain(chern(E, k)[k], field, method)


# --------------------------------------------------------------------------
# the degree-two prefactor, enumerated component by component


def _single_power(F, n):
    return CrossedElement.monomial(F[n], n)


def enumerate_xi3_components(E):
    """Per-component contributions of ``<Phi(xi3), Ch_1(E)>`` in units of hbar/theta.

    Every tensor of ``c_1`` is split into its ``W``-powers; the sum over
    ``(n0, n1, n2)`` of the returned rationals is the pairing divided by
    ``hbar/theta``.
    """
    contributions = {}
    for c, t in chern(E, 1)[1].terms:
        for ns in itertools.product(*(a.support() for a in t)):
            if sum(ns) != 0 or ns[1] == 0:
                continue
            parts = [_single_power(a, n) for a, n in zip(t, ns)]
            val = _psi(*parts, 1, "exact")
            q = -Fraction(c) * val.coeffs[0].to_fraction() if 0 in val.coeffs else Fraction(0)
            contributions[ns] = contributions.get(ns, Fraction(0)) + q
    return {k: v for k, v in contributions.items() if v}


def xi3_prefactor(alpha=Fraction(3, 10), eps=Fraction(1, 10), ramp="quintic"):
    """Return ``(prefactor, integral)`` with ``<Phi(xi3), e2> = prefactor (hbar/theta) int g^2 f'``."""
    e, f, g = rieffel_projection(alpha, eps, ramp)
    ramp_integral = (g * g * f.derive()).integrate().to_fraction()
    total = sum(enumerate_xi3_components(e).values(), Fraction(0))
    return total / ramp_integral, ramp_integral


# --------------------------------------------------------------------------
# the report


UNAVAILABLE_XI1 = "unavailable (requires tau_2)"


@dataclass
class PsiReport:
    """Coordinates of the image of ``Ch(E)`` against the dual basis of ``xi0, xi2, xi3``."""

    pairings: dict
    identity: FormalLaurent
    components: dict
    xi1: str = UNAVAILABLE_XI1

    def reproduces_pairings(self):
        """Pair the reported forms back with ``xi2``, ``xi3``; ``delta(n0, n1) = n1``."""
        field = self.identity.field
        back = {"xi2": FormalLaurent.zero(field), "xi3": FormalLaurent.zero(field)}
        for (n0, n1), forms in self.components.items():
            # xi2 = dtheta1 (x) delta pairs with the dtheta2 part, +1 orientation
            back["xi2"] = back["xi2"] + forms["dtheta2"] * field.coerce(n1)
            # xi3 = dtheta2 (x) delta pairs with the dtheta1 part, dtheta2 ^ dtheta1 = -1
            back["xi3"] = back["xi3"] - forms["dtheta1"] * field.coerce(n1)
        return all(back[k] == self.pairings[k] for k in back)

    def to_json(self):
        from torusindex.serialize import series_to_json
        return {
            "pairings": {k: {"value": str(v), "series": series_to_json(v)}
                         for k, v in sorted(self.pairings.items())},
            "id": str(self.identity),
            "components": {f"({a},{b})": {k: str(s) for k, s in sorted(forms.items())}
                           for (a, b), forms in sorted(self.components.items())},
            "xi1": self.xi1,
        }


def psi_chern_report(E, field=EXACT, method="exact"):
    p0 = index_pairing("xi0", E, field=field, method=method)
    p2 = index_pairing("xi2", E, field=field, method=method)
    p3 = index_pairing("xi3", E, field=field, method=method)
    half = field.const(Fraction(1, 2))
    components = {
        (1, -1): {"dtheta1": p3 * half, "dtheta2": -(p2 * half)},
        (-1, 1): {"dtheta1": -(p3 * half), "dtheta2": p2 * half},
    }
    return PsiReport({"xi0": p0, "xi2": p2, "xi3": p3}, p0, components)


# --------------------------------------------------------------------------
# idempotents and homotopies


def e1(field=EXACT, trunc=DEFAULT_ORDER):
    return unit_fourier(field, trunc)


def e2(alpha=Fraction(3, 10), eps=Fraction(1, 10), ramp="quintic", trunc=DEFAULT_ORDER):
    return rieffel_projection(alpha, eps, ramp, trunc)[0]


def random_periodic_function(rng, pieces=3, scale=3):
    """Continuous 1-periodic piecewise polynomial with rational data."""
    cuts = sorted({Fraction(rng.randint(1, 59), 60) for _ in range(pieces - 1)})
    breaks = [Fraction(0)] + cuts + [Fraction(1)]
    knots = [Fraction(rng.randint(-scale, scale), rng.randint(1, 3)) for _ in breaks[:-1]]
    knots.append(knots[0])
    polys = []
    for a, b, ya, yb in zip(breaks, breaks[1:], knots, knots[1:]):
        slope = (yb - ya) / (b - a)
        bump = Fraction(rng.randint(-scale, scale), 1)
        # ya + slope (x - a) + bump (x - a)(x - b), expanded in x
        c0 = ya - slope * a + bump * a * b
        c1 = slope - bump * (a + b)
        polys.append((c0, c1, bump))
    return PiecewiseFn.from_polys(breaks, polys)


def conjugate(E, h, alpha=None):
    """``u E u^-1`` with ``u = 1 + hbar h`` and ``u^-1`` expanded as a series."""
    tmpl = E.template
    if isinstance(h, PiecewiseFn):
        h = PWSeries({1: h}, tmpl.alpha if alpha is None else alpha, tmpl.trunc)
    u = CrossedElement.monomial(h.one_like() + h)
    ui = CrossedElement.monomial(u[0].invert())
    return u * E * ui


def random_homotopies(seed, count=5):
    rng = random.Random(seed)
    return [random_periodic_function(rng) for _ in range(count)]


__all__ = [
    "SimplicialCochain", "CochainError", "simplicial_delta", "simplicial_d", "simplicial_closed",
    "generators", "CyclicCochain", "phi_xi0", "phi_xi2", "phi_xi3", "COCYCLES", "cocycle",
    "hochschild_coboundary_value", "index_pairing", "enumerate_xi3_components", "xi3_prefactor",
    "PsiReport", "psi_chern_report", "rieffel_projection", "e1", "e2",
    "random_periodic_function", "conjugate", "random_homotopies", "UNAVAILABLE_XI1",
]
