"""Command-line front end: multiplicity routes, Euler tables, form checks,
spectrum/zeta/entropy pipelines, all emitting versioned JSON (or CSV).

Exit codes: 0 success, 2 usage/configuration, and one distinct code per
error family (see ERROR_EXIT_CODES)."""

import argparse
import hashlib
import json
import sys

from . import __version__
from . import errors as err
from .euler_topology import (euler_table, multiplicity_from_dimension,
                             multiplicity_from_proportionality, multiplicity_from_betti)
from fractions import Fraction

from .exterior_forms import (Omega_R, ScaledScalar, alpha_R, contract,
                             h0_coadjoint_derivative, invariant_d, mu_R,
                             wedge)
from .geodesic_spectrum import (bolza_generators, counting_function,
                                enumerate_classes, entropy_fit,
                                load_spectrum_csv)
from .lie_core import COMPLEX, QUATERNIONIC, REAL, Family, build_model
from .multiplicity_geometry import multiplicity_from_chi, multiplicity_ratio
from .zeta_engine import (TruncationParams, check_quotient_identity,
                          ruelle_fe_rhs, ruelle_zeta, selberg_fe_factor,
                          selberg_zeta)

SCHEMA_VERSION = 1

ERROR_EXIT_CODES = {
    err.UnsupportedFamily: 3,
    err.OddDimension: 4,
    err.NonDivisibleChi: 5,
    err.DualityViolation: 6,
    err.WrongParity: 7,
    err.NotHyperbolic: 8,
    err.ToleranceCollision: 9,
    err.BeyondHorizon: 10,
    err.InsufficientData: 11,
    err.OutsideConvergence: 12,
    err.PoleAtInteger: 13,
    err.PathNearPole: 14,
    err.NonIntegerMultiplicity: 15,
    err.WrongFamily: 16,
    err.StructureViolation: 17,
}

FAMILY_KINDS = {
    "real-hyperbolic": REAL,
    "complex-hyperbolic": COMPLEX,
    "quaternionic-hyperbolic": QUATERNIONIC,
}


def _manifest(args, spectrum_hash=None):
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func",) and v is not None}
    m = {
        "command": args.command,
        "parameters": params,
        "tool_version": __version__,
        "timestamp": getattr(args, "timestamp", None) or "unset",
    }
    if spectrum_hash is not None:
        m["spectrum_fixture_hash"] = spectrum_hash
    return m


def _emit(args, payload, spectrum_hash=None):
    payload = dict(payload)
    payload["schema_version"] = SCHEMA_VERSION
    payload["manifest"] = _manifest(args, spectrum_hash)
    out = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _family_of(args):
    kind = FAMILY_KINDS[args.family]
    if kind == REAL:
        if args.dim is None:
            raise err.UnsupportedFamily("real-hyperbolic requires --dim")
        return Family(REAL, args.dim)
    if args.n is None:
        raise err.UnsupportedFamily(f"{args.family} requires --n")
    return Family(kind, args.n)


def cmd_multiplicity(args):
    if args.betti:
        betti = [int(x) for x in args.betti.split(",")]
        m0 = multiplicity_from_betti(betti)
        _emit(args, {"routes": {"betti-sum": m0}, "betti": betti,
                     "multiplicity": m0, "agreement": True})
        return 0
    family = _family_of(args)
    if args.genus is not None:
        chi = 2 - 2 * args.genus
    elif args.chi is not None:
        chi = args.chi
    else:
        raise err.NonDivisibleChi("provide --chi or --genus")
    routes = {
        "forms": multiplicity_from_chi(family, chi),
        "euler-proportionality": multiplicity_from_proportionality(args.family, chi,
                                                   family.n),
        "dimension-formula": multiplicity_from_dimension(family.d, chi),
    }
    agreement = len(set(routes.values())) == 1
    _emit(args, {
        "family": args.family,
        "n": family.n,
        "d": family.d,
        "chi": chi,
        "routes": routes,
        "multiplicity": routes["forms"],
        "agreement": agreement,
    })
    return 0


def cmd_euler_table(args):
    rows = euler_table()
    if args.format == "csv":
        cols = ["family", "n", "d", "chi_dual", "chi_geodesic_space",
                "ratio", "d_over_2", "consistent"]
        lines = [",".join(cols)]
        lines += [",".join(str(r[c]).lower() if c == "consistent"
                           else str(r[c]) for c in cols) for r in rows]
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    else:
        _emit(args, {"rows": rows})
    return 0


def cmd_forms_check(args):
    family = _family_of(args)
    model = build_model(family)
    i_over_2pi = ScaledScalar.make(Fraction(1, 2), -1, 1)
    checks = {}
    for sign in (+1, -1):
        tag = "plus" if sign > 0 else "minus"
        omega = Omega_R(model, sign)
        checks[f"closed_{tag}"] = invariant_d(omega, model).is_zero()
        checks[f"basic_{tag}"] = contract(omega, 0).is_zero()
        checks[f"flow_invariant_{tag}"] = (
            h0_coadjoint_derivative(omega, model).is_zero())
        mu, _lam = mu_R(model, sign)
        alpha = alpha_R(model, sign)
        checks[f"primitive_{tag}"] = (
            invariant_d(alpha, model) - mu.scale(i_over_2pi)).is_zero()
    checks["sign_antisymmetry"] = (
        Omega_R(model, +1) + Omega_R(model, -1)).is_zero()
    top_plus = wedge(Omega_R(model, +1), alpha_R(model, -1))
    top_minus = wedge(Omega_R(model, -1), alpha_R(model, +1))
    checks["integrand_symmetry"] = (top_plus - top_minus).is_zero()
    ratio = multiplicity_ratio(family)
    _emit(args, {
        "family": args.family,
        "n": family.n,
        "d": family.d,
        "checks": {k: bool(v) for k, v in checks.items()},
        "ratio": str(ratio.ratio),
        "expected_ratio": str(Fraction(family.d, 2)),
        "all_passed": (all(checks.values())
                       and ratio.ratio == Fraction(family.d, 2)),
    })
    return 0


def _spectrum_from_args(args):
    if getattr(args, "spectrum", None):
        with open(args.spectrum, encoding="utf-8") as fh:
            text = fh.read()
        return load_spectrum_csv(text), _sha256(text)
    presentation = bolza_generators()
    spec = enumerate_classes(presentation, args.max_word_length,
                             args.max_geodesic_length)
    return spec, _sha256(spec.to_csv())


def _sha256(text):
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def cmd_spectrum(args):
    presentation = bolza_generators()
    spec = enumerate_classes(presentation, args.max_word_length,
                             args.max_geodesic_length)
    text = spec.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    summary = {
        "classes": len(spec.records),
        "max_word_length": spec.max_word_length,
        "max_geodesic_length": spec.max_geodesic_length,
        "det_drift": spec.det_drift,
        "spectrum_fixture_hash": _sha256(text),
    }
    if args.out:
        print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def cmd_zeta(args):
    spec, spec_hash = _spectrum_from_args(args)
    s = complex(args.s, args.imag)
    params = TruncationParams(selberg_N_max=args.selberg_n_max)
    if args.kind == "ruelle":
        ev = ruelle_zeta(spec, s, params)
        payload = {"kind": "ruelle", "s": [s.real, s.imag],
                   "value": [ev.value.real, ev.value.imag],
                   "truncation_bound": ev.truncation_bound}
    elif args.kind == "selberg":
        ev = selberg_zeta(spec, s, params)
        payload = {"kind": "selberg", "s": [s.real, s.imag],
                   "value": [ev.value.real, ev.value.imag],
                   "truncation_bound": ev.truncation_bound}
    elif args.kind == "quotient-check":
        residual = check_quotient_identity(spec, s, params)
        payload = {"kind": "quotient-check", "s": [s.real, s.imag],
                   "residual": residual}
    elif args.kind == "ruelle-fe-rhs":
        v = ruelle_fe_rhs(s, args.genus)
        payload = {"kind": "ruelle-fe-rhs", "s": [s.real, s.imag],
                   "genus": args.genus, "value": [v.real, v.imag]}
    else:
        v = selberg_fe_factor(s, args.genus)
        payload = {"kind": "selberg-fe-factor", "s": [s.real, s.imag],
                   "genus": args.genus, "value": [v.real, v.imag]}
    payload["params"] = {"selberg_N_max": params.selberg_N_max,
                         "entropy_margin": params.entropy_margin}
    _emit(args, payload, spec_hash)
    return 0


def cmd_entropy(args):
    spec, spec_hash = _spectrum_from_args(args)
    fit = entropy_fit(spec)
    _emit(args, {
        "h_hat": fit.h_hat,
        "window": list(fit.window),
        "shell_count": fit.shell_count,
        "classes": len(spec.records),
        "count_at_horizon": counting_function(
            spec, spec.max_geodesic_length),
    }, spec_hash)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="zetamult",
        description="Multiplicity of the dynamical zeta singularity at "
                    "s = 0 by three independent routes.")
    parser.add_argument("--timestamp", help="value recorded in the report "
                        "manifest (omitted -> 'unset' for reproducibility)")
    parser.add_argument("--config", help="JSON file of default parameter "
                        "values; explicit flags take precedence")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("multiplicity", help="m0 via all applicable routes")
    p.add_argument("--family", choices=sorted(FAMILY_KINDS),
                   default="real-hyperbolic")
    p.add_argument("--dim", type=int, help="dim(X) for real-hyperbolic")
    p.add_argument("--n", type=int, help="projective dimension parameter")
    p.add_argument("--chi", type=int, help="Euler characteristic of X")
    p.add_argument("--genus", type=int, help="surface genus (chi = 2-2g)")
    p.add_argument("--betti", help="comma-separated Betti numbers "
                   "b_0..b_{2n+1} (odd-dimensional route)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_multiplicity)

    p = sub.add_parser("euler-table", help="per-family Euler table")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_euler_table)

    p = sub.add_parser("forms-check", help="exact form identities")
    p.add_argument("--family", choices=sorted(FAMILY_KINDS),
                   default="real-hyperbolic")
    p.add_argument("--dim", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_forms_check)

    p = sub.add_parser("spectrum", help="enumerate the length spectrum")
    p.add_argument("--max-word-length", type=int, required=True)
    p.add_argument("--max-geodesic-length", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("zeta", help="zeta evaluations over a spectrum")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--imag", type=float, default=0.0)
    p.add_argument("--kind", default="quotient-check",
                   choices=["ruelle", "selberg", "quotient-check",
                            "ruelle-fe-rhs", "selberg-fe-factor"])
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--spectrum", help="CSV produced by the spectrum command")
    p.add_argument("--max-word-length", type=int, default=6)
    p.add_argument("--max-geodesic-length", type=float)
    p.add_argument("--selberg-n-max", type=int, default=30)
    p.add_argument("--out")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("entropy", help="entropy fit from geodesic counting")
    p.add_argument("--spectrum")
    p.add_argument("--max-word-length", type=int, default=6)
    p.add_argument("--max-geodesic-length", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_entropy)
    return parser


def _apply_config(args, argv):
    """Fill unset parameters from the JSON config file; explicit command-line
    flags always win."""
    with open(args.config, encoding="utf-8") as fh:
        config = json.load(fh)
    given = {a.split("=", 1)[0].lstrip("-").replace("-", "_")
             for a in argv if a.startswith("--")}
    for key, value in config.items():
        attr = key.replace("-", "_")
        if attr in given or not hasattr(args, attr):
            continue
        setattr(args, attr, value)


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            _apply_config(args, argv)
        return args.func(args)
    except err.ZetamultError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        for klass, code in ERROR_EXIT_CODES.items():
            if isinstance(exc, klass):
                return code
        return 2


if __name__ == "__main__":
    sys.exit(main())
