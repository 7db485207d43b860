"""Command-line front end.

Subcommands:

* classify: stratify all refinements of GL(2n) by optimal spin parabolic.
* info: classification report for one refinement (spin set, gamma,
  optimal parabolic, symbolic eigenvalues, switching data).
* slopes: audit declared slopes against the non-critical bounds, with an
  optional exact profile solve.
* zeta: support verdict of the twisted zeta integral for a spin parabolic.
* mtau: intertwined parahoric eigenvector expansion with symbolic
  coefficients.

Output is deterministic (members sorted by one-line notation) so tables
diff cleanly.  Exit codes: 2 enumeration bound exceeded, 3 malformed
permutation, 4 missing slope data, 5 non-spin composition.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .hecke import (MissingSlopeError, alpha_U, non_critical_slope, solve_profile)
from .intertwine import m_tau_expansion, zeta_support_verdict
from .parabolic import NotSpinError, SpinParabolic, format_xp, parse_composition
from .refine import (DEFAULT_ENUMERATION_BOUND, EnumerationBoundError, Refinement,
                     gamma, optimal_parabolic, spin_set, stratify, to_B_spin)
from .rootdata import PureWeight
from .weyl import format_one_line

EXIT_BOUND = 2
EXIT_BAD_PERM = 3
EXIT_MISSING_DATA = 4
EXIT_NOT_SPIN = 5


class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# Argument parsing helpers.
# ---------------------------------------------------------------------------

def _parse_sigma(text: str) -> Refinement:
    try:
        return Refinement.from_one_line(text)
    except ValueError as exc:
        raise CliError(f"malformed permutation: {exc}", EXIT_BAD_PERM) from exc


def _parse_weight(text: str, require_dominant: bool = True) -> PureWeight:
    try:
        coeffs = tuple(int(piece) for piece in text.split(","))
    except ValueError as exc:
        raise CliError(f"bad weight {text!r}: integers expected") from exc
    try:
        lam = PureWeight.from_coeffs(coeffs)
    except ValueError as exc:
        raise CliError(f"bad weight: {exc}") from exc
    if require_dominant and not lam.is_dominant:
        raise CliError(f"weight {text!r} is not dominant")
    return lam


def _parse_slopes(text: str) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for piece in text.split(","):
        if "=" not in piece:
            raise CliError(f"bad slope entry {piece!r}: expected index=value",
                           EXIT_MISSING_DATA)
        key, _, value = piece.partition("=")
        try:
            out[int(key)] = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise CliError(f"bad slope entry {piece!r}: {exc}", EXIT_MISSING_DATA) from exc
    return out


def _parse_parabolic(text: str, n: int | None = None) -> SpinParabolic:
    try:
        parts = parse_composition(text)
        p = SpinParabolic.from_composition(parts)
    except NotSpinError as exc:
        raise CliError(str(exc), EXIT_NOT_SPIN) from exc
    except ValueError as exc:
        raise CliError(f"bad composition {text!r}: {exc}") from exc
    if n is not None and p.n != n:
        raise CliError(f"composition {text!r} is for GL({2 * p.n}), expected GL({2 * n})")
    return p


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------

def _strata_rows(n: int, bound: int) -> list[dict]:
    if n < 1:
        raise CliError(f"--n must be >= 1, got {n}")
    try:
        strata = stratify(n, bound)
    except EnumerationBoundError as exc:
        raise CliError(str(exc), EXIT_BOUND) from exc
    rows = []
    for p in sorted(strata, key=lambda p: (-len(p.xp), p.composition)):
        members = [r.one_line() for r in strata[p]]
        rows.append({
            "parabolic": p.label(),
            "xp": sorted(p.xp),
            "dim": len(p.xp) + 1,
            "size": len(members),
            "members": members,
        })
    return rows


def cmd_classify(args) -> int:
    rows = _strata_rows(args.n, args.bound)
    total = sum(row["size"] for row in rows)
    if args.format == "json":
        print(json.dumps({"n": args.n, "total": total, "strata": rows}, ensure_ascii=False))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["parabolic", "xp", "dim", "size", "members"])
        for row in rows:
            writer.writerow([row["parabolic"], format_xp(frozenset(row["xp"])),
                             row["dim"], row["size"], " ".join(row["members"])])
    else:
        print(f"stratification of the {total} refinements of GL({2 * args.n}) "
              f"by optimal spin parabolic")
        width = max(len("parabolic"), *(len(row["parabolic"]) for row in rows))
        xp_width = max(len("X_P"), *(len(format_xp(frozenset(row["xp"]))) for row in rows))
        print(f"{'parabolic':<{width + 2}}{'X_P':<{xp_width + 2}}dim  size  members")
        for row in rows:
            members = " ".join(row["members"])
            print(f"{row['parabolic']:<{width + 2}}"
                  f"{format_xp(frozenset(row['xp'])):<{xp_width + 2}}"
                  f"{row['dim']:<5}{row['size']:<6}{members}".rstrip())
        counts = ", ".join(f"{row['parabolic']}: {row['size']}" for row in rows)
        print(f"totals: {counts}")
    return 0


# ---------------------------------------------------------------------------
# info
# ---------------------------------------------------------------------------

def refinement_report(r: Refinement) -> dict:
    profile = optimal_parabolic(r)
    taus, target = to_B_spin(r)
    report = {
        "sigma": r.one_line(),
        "n": r.n,
        "spin_set": sorted(spin_set(r)),
        "gamma": list(gamma(r).values),
        "optimal": profile.optimal.label(),
        "optimal_xp": sorted(profile.optimal.xp),
        "dim": len(profile.optimal.xp) + 1,
        "b_spin_target": target.one_line(),
        "tau": [list(t) for t in taus],
        "alpha_u": {
            str(k): dict(alpha_U(r, k).normal_form().to_json(), str=str(alpha_U(r, k)))
            for k in range(1, 2 * r.n + 1)
        },
    }
    return report


def parse_refinement_report(report: dict) -> Refinement:
    return Refinement.from_one_line(report["sigma"])


def cmd_info(args) -> int:
    r = _parse_sigma(args.sigma)
    report = refinement_report(r)
    if args.format == "table":
        print(f"sigma          {report['sigma']}")
        print(f"spin set       {report['spin_set']}")
        print(f"gamma          {report['gamma']}")
        print(f"optimal        {report['optimal']}  (X_P = {report['optimal_xp']}, "
              f"family dim {report['dim']})")
        print(f"B-spin target  {report['b_spin_target']}  via tau = {report['tau']}")
        for k in range(1, 2 * r.n + 1):
            label = f"alpha(U_p,{k})"
            print(f"{label:<15}{report['alpha_u'][str(k)]['str']}")
    else:
        print(json.dumps(report, ensure_ascii=False))
    return 0


# ---------------------------------------------------------------------------
# slopes
# ---------------------------------------------------------------------------

def cmd_slopes(args) -> int:
    r = _parse_sigma(args.sigma)
    if args.weight is None:
        raise CliError("slopes needs --lambda", EXIT_MISSING_DATA)
    if args.slopes is None:
        raise CliError("slopes needs --slopes", EXIT_MISSING_DATA)
    lam = _parse_weight(args.weight)
    if lam.n != r.n:
        raise CliError("weight and permutation ranks differ")
    slopes = _parse_slopes(args.slopes)
    parabolic = (_parse_parabolic(args.parabolic, r.n) if args.parabolic
                 else SpinParabolic.borel(r.n))
    try:
        audit = non_critical_slope(lam, slopes, parabolic)
    except MissingSlopeError as exc:
        raise CliError(str(exc), EXIT_MISSING_DATA) from exc

    payload = {
        "sigma": r.one_line(),
        "lambda": list(lam.coeffs),
        "parabolic": parabolic.label(),
        "rows": [{"index": row.index, "bound": row.bound, "slope": str(row.value),
                  "ok": row.ok} for row in audit.rows],
        "non_critical": audit.ok,
    }
    solution = None
    if args.solve:
        solution = solve_profile(slopes, lam, r.sigma)
        payload["solve"] = {
            "status": solution.status,
            "t": [str(v) for v in solution.profile.t] if solution.profile else None,
            "eta_val": str(solution.profile.eta_val) if solution.profile else None,
            "free": list(solution.free),
            "certificate": [row.describe() for row in solution.certificate],
        }
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False))
        return 0
    for row in audit.rows:
        state = "ok" if row.ok else "VIOLATED"
        print(f"U_p,{row.index}: slope {row.value} < bound {row.bound}  {state}")
    print("verdict: " + ("non-critical slope" if audit.ok else
                         "critical (some bound violated)"))
    if solution is not None:
        print(f"profile solve: {solution.status}")
        if solution.profile is not None:
            print(f"  t = ({', '.join(str(v) for v in solution.profile.t)}), "
                  f"v(eta) = {solution.profile.eta_val}")
            if solution.free:
                print(f"  free: {', '.join(solution.free)}")
        for row in solution.certificate:
            print(f"  violated: {row.describe()}")
    return 0


# ---------------------------------------------------------------------------
# zeta
# ---------------------------------------------------------------------------

def cmd_zeta(args) -> int:
    p = _parse_parabolic(args.parabolic)
    if args.beta < 1:
        raise CliError(f"--beta must be a positive integer, got {args.beta}")
    verdict = zeta_support_verdict(p, args.beta)
    payload = {
        "parabolic": p.label(),
        "beta": args.beta,
        "block_count": len(p.composition),
        "block_count_parity": verdict.block_count_parity,
        "contained_in_Q": verdict.contained_in_Q,
        "integral": verdict.integral,
        "forced_vanishing": verdict.forced_vanishing,
        "antidiagonal_exponents": list(verdict.matrix.exponents),
    }
    if args.format == "json":
        print(json.dumps(payload))
        return 0
    print(f"parabolic {p.label()}  (blocks: {len(p.composition)}, "
          f"{verdict.block_count_parity})")
    print(f"contained in (n,n)-parabolic: {'yes' if verdict.contained_in_Q else 'no'}")
    exps = ", ".join(f"p^{e}" for e in verdict.matrix.exponents)
    print(f"antidiagonal of nu_beta(t_P^beta): [{exps}]")
    print("verdict: " + ("forced vanishing" if verdict.forced_vanishing
                         else "no forced vanishing"))
    return 0


# ---------------------------------------------------------------------------
# mtau
# ---------------------------------------------------------------------------

def cmd_mtau(args) -> int:
    p = _parse_parabolic(args.parabolic)
    if args.n is not None and args.n != p.n:
        raise CliError(f"--n {args.n} disagrees with the composition (rank {p.n})")
    expansion, prenorm = m_tau_expansion(p.n, p)
    rows = sorted(((format_one_line(coset.rep), str(coeff))
                   for coset, coeff in expansion.items()))
    if args.format == "json":
        print(json.dumps({
            "n": p.n,
            "parabolic": p.label(),
            "expansion": dict(rows),
            "prenormalization": str(prenorm),
        }, ensure_ascii=False))
        return 0
    print(f"intertwined eigenvector expansion for n={p.n}, parabolic {p.label()}")
    for rep, coeff in rows:
        print(f"  [{rep}]  {coeff}")
    print(f"prenormalization factor: {prenorm}")
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinref",
        description="Spin stratification of p-refinements of GL(2n)")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="stratify all refinements by optimal parabolic")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--bound", type=int, default=DEFAULT_ENUMERATION_BOUND)
    c.add_argument("--format", choices=["table", "json", "csv"], default="table")
    c.set_defaults(func=cmd_classify)

    i = sub.add_parser("info", help="classification report for one refinement")
    i.add_argument("--sigma", required=True)
    i.add_argument("--format", choices=["table", "json"], default="json")
    i.set_defaults(func=cmd_info)

    s = sub.add_parser("slopes", help="non-critical slope audit")
    s.add_argument("--sigma", required=True)
    s.add_argument("--lambda", dest="weight")
    s.add_argument("--slopes", help='declared slopes, e.g. "1=11,2=0,3=11"')
    s.add_argument("--parabolic")
    s.add_argument("--solve", action="store_true",
                   help="also solve for a valuation profile (or a certificate)")
    s.add_argument("--format", choices=["table", "json"], default="table")
    s.set_defaults(func=cmd_slopes)

    z = sub.add_parser("zeta", help="twisted zeta-integral support verdict")
    z.add_argument("--parabolic", required=True)
    z.add_argument("--beta", type=int, default=1)
    z.add_argument("--format", choices=["table", "json"], default="table")
    z.set_defaults(func=cmd_zeta)

    m = sub.add_parser("mtau", help="intertwined parahoric eigenvector expansion")
    m.add_argument("--parabolic", required=True,
                   help="spin composition contained in the (n,n)-parabolic")
    m.add_argument("--n", type=int, help="cross-check of the rank")
    m.add_argument("--format", choices=["table", "json"], default="table")
    m.set_defaults(func=cmd_mtau)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except NotSpinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_SPIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
