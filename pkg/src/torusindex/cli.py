"""Command-line front end.

Every command prints a JSON report (sorted keys) on standard output, or
writes it to ``--output`` and prints a short table instead.  Exit codes:

    0  success
    1  a verification failed
    2  invalid flags or violated parameter constraints
    3  backend mismatch (for example ``verify`` with the numeric backend)
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from torusindex import __version__
from torusindex import cocycles as C
from torusindex import cohomology as H
from torusindex.crossed import CrossedElement, idempotent_residual, rieffel_identities
from torusindex.cyclic import chain_is_zero, chern, chern_cycle_residuals
from torusindex.fedosov import check_suite
from torusindex.fourier import FourierPoly, moyal_star
from torusindex.kernels import BACKEND as KERNEL_BACKEND
from torusindex.piecewise import PiecewiseError, check_rieffel_params, rieffel_functions
from torusindex.scalar import EXACT, NumericField
from torusindex.serialize import dumps, series_to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BACKEND = 0, 1, 2, 3


class UsageError(Exception):
    code = EXIT_USAGE


class BackendError(Exception):
    code = EXIT_BACKEND


@dataclass(frozen=True)
class RunConfig:
    backend: str = "exact"
    order: int = 6
    floor: int = 2
    cutoff: int = 1
    alpha: Fraction = Fraction(3, 10)
    beta: float = math.sqrt(2) - 1
    theta: float = 1.0
    eps: Fraction = Fraction(1, 10)
    ramp: str = "quintic"
    seed: int = 7
    output: str | None = None

    def field(self):
        if self.backend == "exact":
            return EXACT
        return NumericField(self.theta, float(self.alpha), self.beta)

    def to_json(self):
        d = asdict(self)
        d.pop("output")
        d["alpha"] = str(self.alpha)
        d["eps"] = str(self.eps)
        return d


def convention_ledger(cfg):
    return {
        "orientation": "integral of dtheta1 ^ dtheta2 over T^2 is +1",
        "measure": "Haar measure of total mass 1; tau(F) is the integral of the W^0 coefficient",
        "action": "W f W^-1 = f(x - alpha); mode k of f(x - m alpha) gains u^(m k1) v^(m k2)",
        "binding": "u = exp(-2 pi i alpha), v = exp(-2 pi i beta)",
        "star": "e_k * e_l = exp(2 pi^2 i hbar theta (k1 l2 - k2 l1)) e_(k+l)",
        "chern": "c_i = (-1)^i (2i)!/i! tr((e - 1/2) (x) e^(x 2i)), c_0 = tr e",
        "cochains": "xi0: -(hbar theta)^-1 tau; xi2: +(hbar/theta) tau(a0 N(a1) d_2 a2); "
                    "xi3: -(hbar/theta) tau(a0 N(a1) d_1 a2)",
        "truncation": {"hbar_order": cfg.order, "laurent_floor": cfg.floor},
    }


# --------------------------------------------------------------------------
# parsing helpers


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def parse_fourier(text, cfg):
    """``"k1,k2:coeff; ..."`` with rational coefficients."""
    coeffs = {}
    for part in filter(None, (p.strip() for p in text.split(";"))):
        try:
            k, c = part.split(":")
            k1, k2 = (int(x) for x in k.split(","))
            coeffs[(k1, k2)] = coeffs.get((k1, k2), 0) + Fraction(c)
        except ValueError:
            raise UsageError(f"cannot parse Fourier term {part!r}; expected 'k1,k2:coeff'") from None
    return FourierPoly(coeffs, cfg.field(), cfg.order, cfg.floor)


def _check_rieffel(alpha, eps):
    try:
        check_rieffel_params(alpha, eps)
    except PiecewiseError as exc:
        raise UsageError(str(exc)) from None


def load_idempotent(name, cfg):
    """``e1``, ``e2`` or a JSON file describing one of them."""
    if name == "e1":
        return C.e1(cfg.field(), cfg.order), {"name": "e1"}
    if name == "e2":
        _check_rieffel(cfg.alpha, cfg.eps)
        return C.e2(cfg.alpha, cfg.eps, cfg.ramp, cfg.order), {
            "name": "e2", "alpha": str(cfg.alpha), "eps": str(cfg.eps), "ramp": cfg.ramp}
    try:
        with open(name) as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read idempotent file {name!r}: {exc}") from None
    kind = payload.get("kind")
    if kind == "rieffel":
        alpha = Fraction(str(payload.get("alpha", cfg.alpha)))
        eps = Fraction(str(payload.get("eps", cfg.eps)))
        ramp = payload.get("ramp", cfg.ramp)
        _check_rieffel(alpha, eps)
        return C.e2(alpha, eps, ramp, cfg.order), {"name": name, "kind": kind,
                                                   "alpha": str(alpha), "eps": str(eps)}
    if kind == "fourier":
        tmpl = FourierPoly({}, cfg.field(), cfg.order, cfg.floor)
        terms = {}
        for t in payload.get("terms", []):
            terms[int(t["n"])] = FourierPoly(
                {tuple(m["k"]): Fraction(str(m["coeff"])) for m in t.get("modes", [])},
                cfg.field(), cfg.order, cfg.floor)
        E = CrossedElement(terms, tmpl)
        if not idempotent_residual(E)["zero"]:
            raise UsageError(f"{name} does not describe an idempotent")
        return E, {"name": name, "kind": kind}
    raise UsageError(f"unknown idempotent kind {kind!r}; use 'rieffel' or 'fourier'")


# --------------------------------------------------------------------------
# commands


def cmd_star(cfg, args):
    f, g = parse_fourier(args.f, cfg), parse_fourier(args.g, cfg)
    prod = moyal_star(f, g)
    return EXIT_OK, {"product": prod.to_json(),
                     "text": {f"{k[0]},{k[1]}": str(c) for k, c in prod.items()}}


def cmd_fedosov_check(cfg, args):
    verdict = check_suite(args.modes, cfg.order, cfg.seed)
    ok = all(v for k, v in verdict.items() if k != "cap")
    return (EXIT_OK if ok else EXIT_FAIL), {"verdict": verdict, "passed": ok}


def cmd_rieffel(cfg, args):
    _check_rieffel(cfg.alpha, cfg.eps)
    f, g = rieffel_functions(cfg.alpha, cfg.eps, cfg.ramp)
    e = C.e2(cfg.alpha, cfg.eps, cfg.ramp, cfg.order)
    res = idempotent_residual(e)
    ids = rieffel_identities(f, g, cfg.alpha)
    ok = res["residual"] < 1e-9 and all(ids.values())
    intf = f.integrate().to_fraction()
    return (EXIT_OK if ok else EXIT_FAIL), {
        "grid_residual": res["residual"], "identities": ids, "integral_f": str(intf),
        "integral_f_float": float(intf), "element": e.to_json(), "passed": ok}


def _chain_json(chain):
    return [{"coeff": str(c), "tensor": [a.to_json() for a in t]} for c, t in chain.terms]


def cmd_chern(cfg, args):
    E, meta = load_idempotent(args.idempotent, cfg)
    chs = chern(E, args.k)
    residuals = [chain_is_zero(r)[0] for r in chern_cycle_residuals(chs)]
    out = {"idempotent": meta, "k": args.k, "cycle_residuals_vanish": residuals}
    if not args.summary:
        out["chain"] = [_chain_json(c) for c in chs]
    else:
        out["terms_per_degree"] = [len(c) for c in chs]
    if args.report:
        out["psi_report"] = C.psi_chern_report(E, cfg.field(), args.method).to_json()
    return (EXIT_OK if all(residuals) else EXIT_FAIL), out


def cmd_pair(cfg, args):
    E, meta = load_idempotent(args.idempotent, cfg)
    if args.method == "quad" and cfg.backend == "exact":
        raise BackendError("quadrature values are floating point; use --backend numeric")
    value = C.index_pairing(args.cocycle, E, field=cfg.field(), method=args.method)
    return EXIT_OK, {"cocycle": args.cocycle, "idempotent": meta, "value": str(value),
                     "value_series": series_to_json(value), "method": args.method}


def cmd_psi(cfg, args):
    E, meta = load_idempotent(args.idempotent, cfg)
    if args.method == "quad" and cfg.backend == "exact":
        raise BackendError("quadrature values are floating point; use --backend numeric")
    return EXIT_OK, {"idempotent": meta,
                     "report": C.psi_chern_report(E, cfg.field(), args.method).to_json()}


def cmd_cohomology(cfg, args):
    field = cfg.field()
    dims = H.cohomology_dims(args.cutoff, field, args.identity_action)
    return EXIT_OK, {"dims": dims, "periodic": H.periodic_dims(dims=dims),
                     "cutoff": args.cutoff, "identity_action": args.identity_action,
                     "warnings": H.resonance_warnings(args.cutoff, field)}


def cmd_verify(cfg, args):
    from torusindex.acceptance import run_all
    if cfg.backend != "exact":
        raise BackendError("the acceptance suite runs on the exact backend")
    results = run_all(cfg.order, cfg.seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.ok for r in results)
    return (EXIT_OK if ok else EXIT_FAIL), {"criteria": [r.to_json() for r in results],
                                            "passed": ok}


COMMANDS = {
    "star": cmd_star, "fedosov-check": cmd_fedosov_check, "rieffel": cmd_rieffel,
    "chern": cmd_chern, "pair": cmd_pair, "psi": cmd_psi, "cohomology": cmd_cohomology,
    "verify": cmd_verify,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("exact", "numeric"), default="exact")
    common.add_argument("--order", "--hbar-order", dest="order", type=int, default=6,
                        help="hbar truncation order N")
    common.add_argument("--floor", type=int, default=2, help="Laurent floor L")
    common.add_argument("--alpha", type=_fraction, default=Fraction(3, 10))
    common.add_argument("--beta", type=float, default=math.sqrt(2) - 1)
    common.add_argument("--theta", type=float, default=1.0, help="numeric binding of theta")
    common.add_argument("--eps", type=_fraction, default=Fraction(1, 10))
    common.add_argument("--ramp", choices=("quintic", "cubic"), default="quintic")
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--output", help="write JSON here and print a table instead")

    p = argparse.ArgumentParser(prog="torusindex", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("star", parents=[common], help="Moyal product of two Fourier polynomials")
    s.add_argument("--f", required=True, help="e.g. '1,0:1;0,1:1/2'")
    s.add_argument("--g", required=True)

    s = sub.add_parser("fedosov-check", parents=[common], help="Fedosov agreement and flatness")
    s.add_argument("--modes", type=int, default=2, help="mode box |k_i| <= K")

    sub.add_parser("rieffel", parents=[common], help="build e2 and check idempotency")

    for name, helptext in (("chern", "Chern character chains"), ("pair", "index pairing"),
                           ("psi", "coordinates of Psi(Ch(e))")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--idempotent", default="e2", help="e1, e2 or a JSON file")
        s.add_argument("--method", choices=("exact", "quad"), default="exact")
        if name == "chern":
            s.add_argument("--k", type=int, default=1)
            s.add_argument("--summary", action="store_true", help="omit the chain itself")
            s.add_argument("--report", action="store_true", help="append the Psi report")
        if name == "pair":
            s.add_argument("--cocycle", choices=sorted(C.COCYCLES), required=True)

    s = sub.add_parser("cohomology", parents=[common], help="groupoid cohomology dimensions")
    s.add_argument("--cutoff", type=int, default=1)
    s.add_argument("--identity-action", action="store_true",
                   help="replace the translation by the identity (consistency fixture)")

    sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    return p


def _config(args):
    if args.order < 1 or args.floor < 0:
        raise UsageError("--order must be positive and --floor non-negative")
    if getattr(args, "cutoff", 1) < 1:
        raise UsageError("--cutoff must be at least 1")
    if getattr(args, "k", 0) < 0:
        raise UsageError("--k must be non-negative")
    return RunConfig(backend=args.backend, order=args.order, floor=args.floor,
                     cutoff=getattr(args, "cutoff", 1), alpha=args.alpha, beta=args.beta,
                     theta=args.theta, eps=args.eps, ramp=args.ramp, seed=args.seed,
                     output=args.output)


def _table(report):
    lines = []
    for key, val in sorted(report.items()):
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
            if len(val) > 70:
                val = val[:67] + "..."
        lines.append(f"{key:<24} {val}")
    return "\n".join(lines)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        code, body = COMMANDS[args.command](cfg, args)
    except (UsageError, BackendError) as exc:
        print(f"torusindex {args.command}: {exc}", file=sys.stderr)
        return exc.code
    report = {"command": args.command, "backend": cfg.backend, "kernels": KERNEL_BACKEND,
              "config": cfg.to_json(), "convention_ledger": convention_ledger(cfg), **body}
    text = dumps(report)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
        print(_table(body))
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
