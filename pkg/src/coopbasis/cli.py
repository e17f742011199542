"""Command-line surface: exact tables for every family, test, and congruence.

Subcommands: phi, g, expand, check-integrality, weight, verify, margolis.
All rationals are emitted as "num/den" strings, never floats.  Exit codes:
0 success, 1 mathematical failure, 2 usage or resource error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .arith import base_p_digits, require_prime
from .errors import (NotSemistableError, PolyParseError, ResourceLimitError,
                     WeightMonotonicityError)
from .filtration import (checks_to_json, expand_in_phi, verify_congruences, weight)
from .margolis import (complex_to_json, cycle_to_string, enumerate_m1,
                       expected_q0_generator, expected_q1_generator,
                       homologous, is_cycle, margolis_homology,
                       q_square_is_zero)
from .phi import phi_family, phi_family_oracle, phi_monomial
from .poly import Poly
from .semistable import (DEFAULT_RESIDUE_BUDGET, expand_in_g, g_poly,
                         is_semistable_2local, is_semistable_plocal_residues)

EXIT_OK = 0
EXIT_MATH_FAILURE = 1
EXIT_USAGE = 2

BUDGET_ENV_VAR = "COOPBASIS_BUDGET"


def _resolve_budget(args: argparse.Namespace) -> int:
    if getattr(args, "budget", None) is not None:
        value = args.budget
    else:
        raw = os.environ.get(BUDGET_ENV_VAR)
        if raw is None:
            return DEFAULT_RESIDUE_BUDGET
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}")
    if value <= 0:
        raise ValueError(f"budget must be positive, got {value}")
    return value


def _parse_poly_arg(text: str) -> Poly:
    text = text.strip()
    if text.startswith("["):
        try:
            return Poly.from_json(json.loads(text))
        except (json.JSONDecodeError, ValueError, TypeError) as exc:
            raise PolyParseError(f"bad coefficient list: {exc}") from exc
    return Poly.parse(text)


def _write(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit(args: argparse.Namespace, payload: object, pretty: list[str],
          csv_rows: list[list[object]] | None = None) -> None:
    if args.format == "json":
        _write(args, json.dumps(payload, indent=2))
    elif args.format == "csv":
        if csv_rows is None:
            raise ValueError("csv format is not available for this command")
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerows(csv_rows)
        _write(args, buffer.getvalue())
    else:
        _write(args, "\n".join(pretty))


# ---- subcommands ---------------------------------------------------------


def cmd_phi(args: argparse.Namespace) -> int:
    budget = _resolve_budget(args)
    family = phi_family(args.prime, args.n, residue_budget=budget)
    rows = [
        {"n": n, "af": family.af[n - 1], "degree": int(family.phi(n).degree),
         "coefficients": family.phi(n).to_json(), "text": str(family.phi(n))}
        for n in range(1, len(family) + 1)
    ]
    payload = {"prime": args.prime, "family": rows}
    pretty = [f"phi_{r['n']}  AF={r['af']}  {r['text']}" for r in rows]
    csv_rows: list[list[object]] = [["n", "af", "degree", "poly"]]
    csv_rows += [[r["n"], r["af"], r["degree"], r["text"]] for r in rows]
    _emit(args, payload, pretty, csv_rows)
    return EXIT_OK


def cmd_g(args: argparse.Namespace) -> int:
    rows = [
        {"n": n, "degree": n, "coefficients": g_poly(n).to_json(), "text": str(g_poly(n))}
        for n in range(args.n + 1)
    ]
    payload = {"family": rows}
    pretty = [f"g_{r['n']}  {r['text']}" for r in rows]
    csv_rows: list[list[object]] = [["n", "degree", "poly"]]
    csv_rows += [[r["n"], r["degree"], r["text"]] for r in rows]
    _emit(args, payload, pretty, csv_rows)
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    f = _parse_poly_arg(args.poly)
    if args.basis == "g":
        expansion = expand_in_g(f)
        payload = expansion.to_json()
        pretty = [f"g_{j}: {c}" for j, c in expansion.items()] or ["0"]
        _emit(args, payload, pretty)
        return EXIT_OK
    if args.prime != 2:
        raise ValueError("phi-expansion is only defined at p = 2")
    expansion = expand_in_phi(f, args.precision)
    payload = expansion.to_json()
    pretty = [f"precision 2^{expansion.precision}"]
    pretty += [f"m_{k}: {v}" for k, v in sorted(expansion.coeffs.items())]
    pretty.append(f"residual weight {expansion.residual_weight}")
    _emit(args, payload, pretty)
    return EXIT_OK


def cmd_check_integrality(args: argparse.Namespace) -> int:
    f = _parse_poly_arg(args.poly)
    budget = _resolve_budget(args)
    if args.prime == 2:
        method = "g-expansion"
        integral = is_semistable_2local(f)
    else:
        method = "residues"
        integral = is_semistable_plocal_residues(args.prime, f, budget=budget)
    payload = {"prime": args.prime, "method": method, "integral": integral}
    _emit(args, payload, [f"integral at p={args.prime}: {integral} ({method})"])
    return EXIT_OK if integral else EXIT_MATH_FAILURE


def cmd_weight(args: argparse.Namespace) -> int:
    if args.prime != 2:
        raise ValueError("the weight calculus is defined at p = 2 only")
    f = _parse_poly_arg(args.poly)
    report = weight(f)
    value = None if report.weight.is_infinite else report.weight.value
    payload = {"weight": value, "argmin": list(report.argmin),
               "expansion": report.expansion.to_json()}
    pretty = [f"weight {report.weight}  argmin {list(report.argmin)}"]
    _emit(args, payload, pretty)
    return EXIT_OK


def cmd_margolis(args: argparse.Namespace) -> int:
    budget = _resolve_budget(args)
    complex_ = enumerate_m1(args.prime, args.k, budget=budget)
    payload = complex_to_json(complex_)
    pretty = [f"p={args.prime} k={args.k}  {len(complex_.basis)} monomials",
              "basis: " + ", ".join(payload["basis"])]
    for name in ("Q0", "Q1"):
        hom = payload["homology"][name]
        gens = "; ".join(g for c in hom["classes"] for g in c["generators"])
        pretty.append(f"{name} homology dim {hom['dimension']}: {gens}")
    pretty.append(f"cover rank {payload['cover_rank']}")
    csv_rows: list[list[object]] = [["monomial", "degree", "weight"]]
    csv_rows += [[str(m), m.degree(), m.weight()] for m in complex_.basis]
    _emit(args, payload, pretty, csv_rows)
    return EXIT_OK


def _verify_margolis(p: int, max_k: int, budget: int) -> tuple[bool, dict]:
    failures = []
    for k in range(max_k + 1):
        complex_ = enumerate_m1(p, k, budget=budget)
        for i in (0, 1):
            if not q_square_is_zero(complex_, i):
                failures.append(f"Q{i}^2 != 0 at k={k}")
            entries = margolis_homology(complex_, i)
            total = sum(e.dimension for e in entries)
            if total != 1:
                failures.append(f"Q{i} homology of M1({k}) has dimension {total}")
                continue
            if p == 2:
                expected = (expected_q0_generator if i == 0 else expected_q1_generator)(2, k)
                cycle = entries[0].generators[0]
                if not (is_cycle(i, ((expected, 1),))
                        and homologous(complex_, i, cycle, ((expected, 1),))):
                    failures.append(
                        f"Q{i} generator of M1({k}) is {cycle_to_string(cycle)}, "
                        f"not the class of {expected}")
    return not failures, {"max_k": max_k, "failures": failures}


def cmd_verify(args: argparse.Namespace) -> int:
    require_prime(args.prime)
    budget = _resolve_budget(args)
    p = args.prime
    checks: list[dict] = []

    digits_needed = len(base_p_digits(p, args.max_k)) if args.max_k else 1
    family_size = max(1, args.max_n.bit_length() if p == 2 else args.max_n, digits_needed)

    family = phi_family(p, family_size, residue_budget=budget)
    oracle = phi_family_oracle(p, family_size)
    checks.append({
        "name": "oracle_equivalence",
        "pass": family.polys == oracle.polys and family.af == oracle.af,
        "detail": {"size": family_size},
    })

    skipped: list[int] = []
    integral_ok = True
    if p == 2:
        for k in range(args.max_k + 1):
            if not is_semistable_2local(phi_monomial(2, k, family).poly):
                integral_ok = False
    else:
        for n in range(1, len(family) + 1):
            try:
                if not is_semistable_plocal_residues(p, family.phi(n), budget=budget):
                    integral_ok = False
            except ResourceLimitError:
                skipped.append(n)
        for k in range(args.max_k + 1):
            try:
                if not is_semistable_plocal_residues(p, phi_monomial(p, k, family).poly,
                                                     budget=budget):
                    integral_ok = False
            except ResourceLimitError:
                continue
    checks.append({
        "name": "integrality",
        "pass": integral_ok,
        "detail": {"max_k": args.max_k, "over_budget_phi": skipped},
    })

    congruence_json: list[dict] = []
    if p == 2:
        congruence_checks = verify_congruences(args.max_n)
        congruence_json = checks_to_json(congruence_checks)
        checks.append({
            "name": "congruence_suite",
            "pass": all(c.passed for c in congruence_checks),
            "detail": {"max_n": args.max_n,
                       "failures": [f"{c.claim}@{c.n}" for c in congruence_checks if not c.passed]},
        })

    margolis_ok, margolis_detail = _verify_margolis(p, args.max_k, budget)
    checks.append({"name": "margolis", "pass": margolis_ok, "detail": margolis_detail})

    all_pass = all(c["pass"] for c in checks)
    payload = {"prime": p, "pass": all_pass, "checks": checks}
    if congruence_json:
        payload["congruences"] = congruence_json
    pretty = [f"[{'PASS' if c['pass'] else 'FAIL'}] {c['name']}" for c in checks]
    pretty.append(f"overall: {'PASS' if all_pass else 'FAIL'}")
    csv_rows: list[list[object]] = [["check", "pass"]]
    csv_rows += [[c["name"], c["pass"]] for c in checks]
    _emit(args, payload, pretty, csv_rows)
    return EXIT_OK if all_pass else EXIT_MATH_FAILURE


# ---- parser and dispatch --------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coopbasis",
        description="Exact workbench for the bases of p-local K-theory cooperations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, prime_default: int | None = 2) -> None:
        if prime_default is not None:
            p.add_argument("--prime", type=int, default=prime_default,
                           help="prime of localization (default %(default)s)")
        p.add_argument("--budget", type=int, default=None,
                       help=f"residue/enumeration cap (default {DEFAULT_RESIDUE_BUDGET}, "
                            f"or ${BUDGET_ENV_VAR})")
        p.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
        p.add_argument("--out", default=None, help="write output to FILE instead of stdout")

    p_phi = sub.add_parser("phi", help="emit phi_1..phi_N with Adams filtrations")
    p_phi.add_argument("--n", type=int, required=True)
    common(p_phi)
    p_phi.set_defaults(handler=cmd_phi)

    p_g = sub.add_parser("g", help="emit the semistable basis g_0..g_N")
    p_g.add_argument("--n", type=int, required=True)
    common(p_g, prime_default=None)
    p_g.set_defaults(handler=cmd_g)

    p_expand = sub.add_parser("expand", help="expand a polynomial in the g- or phi-basis")
    p_expand.add_argument("--basis", choices=("g", "phi"), required=True)
    p_expand.add_argument("--precision", type=int, default=8,
                          help="2-adic precision for the phi-expansion")
    p_expand.add_argument("poly", help="polynomial in w, or a JSON coefficient list")
    common(p_expand)
    p_expand.set_defaults(handler=cmd_expand)

    p_check = sub.add_parser("check-integrality",
                             help="decide p-local semistable integrality")
    p_check.add_argument("poly")
    common(p_check)
    p_check.set_defaults(handler=cmd_check_integrality)

    p_weight = sub.add_parser("weight", help="g-expansion weight report (p = 2)")
    p_weight.add_argument("poly")
    common(p_weight)
    p_weight.set_defaults(handler=cmd_weight)

    p_verify = sub.add_parser("verify", help="run the full verification suite")
    p_verify.add_argument("--max-n", type=int, default=16, dest="max_n")
    p_verify.add_argument("--max-k", type=int, default=12, dest="max_k")
    common(p_verify)
    p_verify.set_defaults(handler=cmd_verify)

    p_margolis = sub.add_parser("margolis", help="weight piece with Margolis homology")
    p_margolis.add_argument("--k", type=int, required=True)
    common(p_margolis)
    p_margolis.set_defaults(handler=cmd_margolis)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "prime"):
            require_prime(args.prime)
        return args.handler(args)
    except NotSemistableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for j, b, v in exc.coordinates:
            print(f"  g_{j}: coefficient {b} has nu_2 = {v}", file=sys.stderr)
        return EXIT_MATH_FAILURE
    except WeightMonotonicityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH_FAILURE
    except (PolyParseError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
