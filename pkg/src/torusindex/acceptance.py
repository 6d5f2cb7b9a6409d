"""The acceptance suite: nine criteria, each with a runtime budget in seconds.

Every criterion returns a :class:`CriterionResult`; ``run_all`` runs them in
order and the CLI ``verify`` command turns the list into a report.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from torusindex import cocycles as C
from torusindex import cohomology as H
from torusindex.crossed import (
    CrossedElement, idempotent_residual, rieffel_identities, rieffel_projection,
)
from torusindex.cyclic import (
    Chain, chain_is_zero, chern, chern_cycle_residuals, connes_B, hochschild_b,
    random_tuple, simplicial_identities,
)
from torusindex.fedosov import random_fourier, star_via_fedosov
from torusindex.fourier import FourierPoly, moyal_star, poisson_bracket
from torusindex.piecewise import rieffel_functions
from torusindex.scalar import EXACT, NumericField
from torusindex.series import DEFAULT_ORDER, FormalLaurent


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    budget: float
    details: dict = dc_field(default_factory=dict)

    @property
    def within_budget(self):
        return self.seconds <= self.budget

    @property
    def ok(self):
        return self.passed and self.within_budget

    def line(self):
        mark = "PASS" if self.ok else "FAIL"
        extra = "" if self.within_budget else f" (over budget {self.budget:g}s)"
        return f"[{mark}] {self.number}. {self.title} ({self.seconds:.2f}s){extra}"

    def to_json(self):
        return {"number": self.number, "title": self.title, "passed": self.passed,
                "within_budget": self.within_budget, "budget_s": self.budget,
                "details": {k: _plain(v) for k, v in sorted(self.details.items())}}


def _plain(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return str(v)


def _timed(number, title, budget, fn):
    t0 = time.perf_counter()
    passed, details = fn()
    return CriterionResult(number, title, bool(passed), time.perf_counter() - t0, budget, details)


def _hbar_theta_inv(coeff, power, field=EXACT):
    """``coeff * hbar^power * theta^-1`` as a series."""
    return FormalLaurent.monomial(field.monomial(coeff, theta=-1), power, field)


RIEFFEL_CASES = ((Fraction(3, 10), Fraction(1, 10)), (Fraction(37, 100), Fraction(1, 20)))


# --------------------------------------------------------------------------


def criterion_trace_pairing(order=DEFAULT_ORDER):
    def run():
        d = {}
        v1 = C.index_pairing("xi0", C.e1(trunc=order))
        d["xi0(e1)"] = str(v1)
        ok = v1 == _hbar_theta_inv(-1, -1)
        for alpha, eps in RIEFFEL_CASES:
            f, _ = rieffel_functions(alpha, eps)
            intf = f.integrate().to_fraction()
            quad = f.integrate("quad")
            v = C.index_pairing("xi0", C.e2(alpha, eps, trunc=order))
            num = C.index_pairing("xi0", C.e2(alpha, eps, trunc=order),
                                  field=NumericField(1.0, float(alpha)))
            good = (abs(intf - alpha) < Fraction(1, 10 ** 10) and abs(quad - float(alpha)) < 1e-10
                    and v == _hbar_theta_inv(-alpha, -1)
                    and abs(num[-1].value + float(alpha)) < 1e-12)
            d[f"xi0(e2) alpha={alpha} eps={eps}"] = str(v)
            d[f"numeric xi0(e2) alpha={alpha}"] = str(num)
            ok &= good
        return ok, d
    return _timed(1, "trace pairing xi0 on e1 and e2", 5, run)


def criterion_vanishing(order=DEFAULT_ORDER):
    def run():
        a = C.index_pairing("xi2", C.e2(trunc=order))
        b = C.index_pairing("xi3", C.e1(trunc=order))
        return a.is_zero() and b.is_zero(), {"xi2(e2)": str(a), "xi3(e1)": str(b)}
    return _timed(2, "xi2 on e2 and xi3 on e1 vanish", 5, run)


def criterion_degree_two(order=DEFAULT_ORDER):
    def run():
        alpha, eps = RIEFFEL_CASES[0]
        e, f, g = rieffel_projection(alpha, eps, trunc=order)
        exact = C.index_pairing("xi3", e)
        quad = C.index_pairing("xi3", e, field=NumericField(1.0, float(alpha)), method="quad")
        q1 = quad[1].value
        ramp_exact = (g * g * f.derive()).integrate().to_fraction()
        ramp_quad = (g * g * f.derive()).integrate("quad")
        prefactor, _ = C.xi3_prefactor(alpha, eps)
        ok = (exact == _hbar_theta_inv(1, 1)
              and abs(q1 - 1) < 1e-6
              and abs(ramp_exact) == Fraction(1, 6) and abs(abs(ramp_quad) - 1 / 6) < 1e-10
              and prefactor * ramp_exact == 1)
        return ok, {"xi3(e2)": str(exact), "quadrature": str(quad),
                    "int g^2 f'": str(ramp_exact), "quadrature int g^2 f'": ramp_quad,
                    "enumerated prefactor": str(prefactor)}
    return _timed(3, "degree-two pairing xi3 on e2 equals hbar/theta", 30, run)


def criterion_psi_report(order=DEFAULT_ORDER):
    def run():
        r1 = C.psi_chern_report(C.e1(trunc=order))
        alpha = RIEFFEL_CASES[0][0]
        r2 = C.psi_chern_report(C.e2(alpha, RIEFFEL_CASES[0][1], trunc=order))
        zero = FormalLaurent.zero(EXACT)
        ok1 = r1.identity == _hbar_theta_inv(-1, -1) and all(
            s == zero for forms in r1.components.values() for s in forms.values())
        half = _hbar_theta_inv(Fraction(1, 2), 1)
        ok2 = (r2.identity == _hbar_theta_inv(-alpha, -1)
               and r2.components[(1, -1)]["dtheta1"] == half
               and r2.components[(-1, 1)]["dtheta1"] == -half
               and r2.components[(1, -1)]["dtheta2"] == zero
               and r2.reproduces_pairings())
        return ok1 and ok2, {"e1": r1.to_json(), "e2": r2.to_json()}
    return _timed(4, "Psi(Ch(e)) report for e1 and e2", 60, run)


def criterion_cohomology():
    def run():
        d = {}
        ok = True
        for K in (1, 2, 4):
            h = H.cohomology_dims(K)
            p = H.periodic_dims(K, dims=h)
            d[f"K={K}"] = {"dims": h, "periodic": p}
            ok &= h == [1, 3, 3, 1] and p == [4, 4]
        return ok, d
    return _timed(5, "cohomology dims [1,3,3,1], periodic [4,4]", 10, run)


def criterion_star_consistency(order=DEFAULT_ORDER, seed=7):
    def run():
        rng = random.Random(seed)
        f, g = random_fourier(rng, 2, order), random_fourier(rng, 2, order)
        agree = star_via_fedosov(f, g, order) == moyal_star(f, g)
        semi = True
        for _ in range(50):
            a = random_fourier(rng, 2, order, count=3)
            b = random_fourier(rng, 2, order, count=3)
            comm = moyal_star(a, b) - moyal_star(b, a)
            pb = poisson_bracket(a, b)
            for k in set(comm.coeffs) | set(pb.coeffs):
                if comm[k][1] != -(EXACT.i * pb[k][0]) or not comm[k][0].is_zero():
                    semi = False
        return agree and semi, {"seed": seed, "box": "5x5", "fedosov_equals_moyal": agree,
                                "semiclassical_pairs": 50, "semiclassical": semi}
    return _timed(6, "Fedosov star equals Moyal; commutator is -i hbar {,}", 60, run)


def _random_crossed(rng, order):
    tmpl = FourierPoly({}, EXACT, order)
    terms = {}
    for _ in range(2):
        terms[rng.randint(-1, 1)] = random_fourier(rng, 1, order, count=2)
    return CrossedElement(terms, tmpl)


def criterion_identities(order=DEFAULT_ORDER, seed=7):
    def run():
        rng = random.Random(seed)
        d = {"seed": seed}
        assoc = True
        for _ in range(20):
            x, y, z = (_random_crossed(rng, order) for _ in range(3))
            assoc &= (x * y) * z == x * (y * z)
        d["convolution associativity (20 triples)"] = assoc
        bb = True
        for i in range(30):
            deg = 1 + i % 3
            c = Chain.elementary(*(_random_crossed(rng, order) for _ in range(deg + 1)))
            bb &= chain_is_zero(hochschild_b(hochschild_b(c)), False)[0]
            bb &= chain_is_zero(connes_B(connes_B(c)))[0]
            bb &= chain_is_zero(hochschild_b(connes_B(c)) + connes_B(hochschild_b(c)))[0]
        d["b^2 = B^2 = bB + Bb = 0 (30 chains)"] = bb
        e2 = C.e2(trunc=order)
        h = C.random_periodic_function(rng)
        cycles = True
        for label, E in (("e1", C.e1(trunc=order)), ("e2", e2), ("u e2 u^-1", C.conjugate(e2, h))):
            res = [chain_is_zero(r)[0] for r in chern_cycle_residuals(chern(E, 2))]
            d[f"(b+B)Ch(e), {label}"] = res
            cycles &= all(res)
        tuples = True
        for _ in range(100):
            t = random_tuple(rng, rng.randint(0, 4))
            tuples &= all(simplicial_identities(t).values())
        d["cyclic-set identities (100 tuples)"] = tuples
        gens = {name: C.simplicial_closed(x)[0] for name, x in C.generators().items()}
        d["generators closed"] = gens
        return assoc and bb and cycles and tuples and all(gens.values()), d
    return _timed(7, "algebraic identity suites", 120, run)


def criterion_idempotency():
    def run():
        d = {}
        ok = True
        for ramp in ("quintic", "cubic"):
            alpha, eps = RIEFFEL_CASES[0]
            e, f, g = rieffel_projection(alpha, eps, ramp)
            res = idempotent_residual(e)["residual"]
            ids = rieffel_identities(f, g, alpha)
            d[ramp] = {"grid residual": res, **ids}
            ok &= res < 1e-9 and all(ids.values())
        return ok, d
    return _timed(8, "Rieffel idempotency for both ramps", 10, run)


def criterion_homotopy(order=DEFAULT_ORDER, seed=7):
    def run():
        e2 = C.e2(trunc=order)
        base = {c: C.index_pairing(c, e2) for c in ("xi0", "xi2", "xi3")}
        ok = True
        for h in C.random_homotopies(seed, 5):
            ec = C.conjugate(e2, h)
            for c, v in base.items():
                ok &= C.index_pairing(c, ec) == v
        return ok, {"seed": seed, "homotopies": 5, **{c: str(v) for c, v in base.items()}}
    return _timed(9, "pairings invariant under u = 1 + hbar h", 60, run)


CRITERIA = (
    criterion_trace_pairing, criterion_vanishing, criterion_degree_two, criterion_psi_report,
    criterion_cohomology, criterion_star_consistency, criterion_identities,
    criterion_idempotency, criterion_homotopy,
)


def run_all(order=DEFAULT_ORDER, seed=7):
    out = []
    for fn in CRITERIA:
        kwargs = {}
        code = fn.__code__.co_varnames[:fn.__code__.co_argcount]
        if "order" in code:
            kwargs["order"] = order
        if "seed" in code:
            kwargs["seed"] = seed
        out.append(fn(**kwargs))
    return out


__all__ = ["CriterionResult", "CRITERIA", "run_all"] + [f.__name__ for f in CRITERIA]
