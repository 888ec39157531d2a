"""``hurlab`` command line.

Exit codes: 0 success, 1 domain error, 2 numerical failure, 3 budget
overflow, 64 usage error.  Defaults for the shared flags can be set through
``HURLAB_TOLERANCE``, ``HURLAB_NODE_CAP``, ``HURLAB_SEED``, ``HURLAB_OUTPUT``
and ``HURLAB_THREADS``.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional, Sequence

from . import acceptance, cohomology
from .braid_orbits import FactorSequence, classify_components, hurwitz_condition, split_by_blocks
from .completion import (
    CompletionElement,
    is_propagator_witness,
    make_klud_g,
    multiply,
    _identity_elements,
)
from .errors import BudgetExceeded, DomainError, NumericalError
from .moduli_dims import SurfaceData, dims, dims_table_csv, euler_check, balanced_orders
from .pmq_core import Permutation, all_permutations, partial_product
from .poly_monodromy import MonicPolynomial, monodromy, rescale_into_rectangle

EXIT_OK, EXIT_DOMAIN, EXIT_NUMERICAL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _env(name: str, default, cast):
    raw = os.environ.get("HURLAB_" + name)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"bad value for HURLAB_{name}: {raw!r}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("shared options")
    g.add_argument("--tolerance", type=float, default=_env("TOLERANCE", 1e-8, float),
                   help="clustering tolerance for critical values (default 1e-8)")
    g.add_argument("--node-cap", type=int, default=_env("NODE_CAP", 10**6, int),
                   help="maximum number of sequences visited by orbit searches")
    g.add_argument("--seed", type=int, default=_env("SEED", 0, int), help="seed for randomized checks")
    g.add_argument("--output", choices=["json", "csv"], default=_env("OUTPUT", "json", str))
    g.add_argument("--threads", type=int, default=_env("THREADS", 1, int),
                   help="accepted for compatibility; all work runs on one thread")
    return p


def _perm(text: str, d: Optional[int]) -> Permutation:
    return Permutation.parse(text, d)


def _elem(text: str) -> CompletionElement:
    return CompletionElement.from_json(text)


def _ints(text: str) -> list:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def _poly(args) -> MonicPolynomial:
    return MonicPolynomial.parse(args.coeffs, args.degree)


# -- command bodies: each returns (payload, csv_rows or None) -----------------


def cmd_pmq(args):
    if args.action == "norm":
        s = _perm(args.sigma, args.d)
        return {"sigma": list(s.image), "norm": s.norm(), "cycles": s.cycle_string()}, None
    a, b = _perm(args.sigma, args.d), _perm(args.tau, args.d)
    if args.action == "product":
        prod = partial_product(a, b)
        if prod is None:
            raise DomainError("pair is not geodesic: N(sigma tau) != N(sigma) + N(tau)")
        return {"product": list(prod.image), "norm": prod.norm()}, None
    return {"conjugate": list(a.conjugate(b).image)}, None


def cmd_completion(args):
    if args.action == "normal-form":
        seq = FactorSequence.parse(args.d, args.factors)
        return seq.normal_form().to_dict(), None
    if args.action == "multiply":
        return multiply(_elem(args.a), _elem(args.b)).to_dict(), None
    if args.action == "klud":
        return make_klud_g(args.g, _ints(args.dvec)).to_dict(), None
    # propagator: witnesses for every trivial-monodromy element up to a norm bound
    rows = []
    top = args.max_norm if args.max_norm is not None else 2 * args.d - 2
    for total in range(2, top + 1, 2):
        for x in _identity_elements(args.d, total):
            hit = is_propagator_witness(x, args.max_k)
            rows.append({"x": x.to_dict(), "k": hit[1] if hit else None,
                         "y": hit[0].to_dict() if hit else None})
    missing = sum(1 for r in rows if r["k"] is None)
    return {"d": args.d, "max_k": args.max_k, "checked": len(rows), "missing": missing, "witnesses": rows}, None


def cmd_orbits(args):
    if args.action == "split":
        seq = FactorSequence.parse(args.d, args.factors)
        parts = split_by_blocks(seq)
        return {"parts": [{"factors": p.to_list(), "normal_form": p.normal_form().to_dict()} for p in parts]}, None
    report = classify_components(args.d, args.k, transpositions_only=not args.all_factors,
                                 node_cap=args.node_cap)
    if args.action == "enumerate":
        payload = report.to_dict()
        rows = [["size", "representative", "normal_form"]]
        for o in payload["orbits"]:
            rows.append([o["size"], json.dumps(o["representative"]), json.dumps(o["normal_form"])])
        return payload, rows
    counts = report.transitive_counts()
    classes = []
    for sigma in all_permutations(args.d):
        classes.append({
            "sigma": list(sigma.image),
            "transitive_orbits": counts.get(sigma, 0),
            "condition": hurwitz_condition(args.d, args.k, sigma),
        })
    return {
        "d": args.d,
        "k": args.k,
        "orbit_count": report.orbit_count,
        "fibers_match": report.fibers_match(),
        "transitive": classes,
    }, None


def cmd_monodromy(args):
    f = _poly(args)
    if args.action == "rescale":
        res = rescale_into_rectangle(f, args.tolerance)
        return {
            "coeffs": [[c.real, c.imag] for c in res.poly.coeffs],
            "t": res.t,
            "shift": {"re": res.shift.real, "im": res.shift.imag},
        }, None
    cfg = monodromy(f, cluster_tol=args.tolerance)
    payload = cfg.to_dict()
    rows = [["re", "im", "multiplicity", "permutation"]]
    for b in payload["branch_points"]:
        rows.append([b["re"], b["im"], b["multiplicity"], " ".join(map(str, b["permutation"]))])
    return payload, rows


def cmd_dims(args):
    if args.action == "euler-check":
        cfg = monodromy(_poly(args), cluster_tol=args.tolerance)
        rep = euler_check(cfg)
        if not rep.consistent:
            raise NumericalError(f"Euler characteristics disagree: {rep.chi_branch} vs {rep.chi_genus}")
        return {"chi_branch": rep.chi_branch, "chi_genus": rep.chi_genus, "consistent": rep.consistent}, None
    if args.dvec:
        rec = dims(SurfaceData(args.g, _ints(args.dvec)))
        return rec.as_dict(), None
    text = dims_table_csv(range(args.g_max + 1), range(1, args.n_max + 1), range(1, args.d_max + 1))
    rows = list(csv.reader(io.StringIO(text)))
    records = [dims(SurfaceData(int(r[0]), balanced_orders(int(r[1]), int(r[2])))).as_dict() for r in rows[1:]]
    return {"rows": records}, rows


def cmd_cohomology(args):
    if args.action == "basis":
        basis = cohomology.conjugacy_basis(args.d, args.m)
        rows = [["lambda"]] + [[json.dumps(c.as_dict)] for c in basis]
        return {"d": args.d, "m": args.m, "basis": [c.as_dict for c in basis]}, rows
    if args.action == "table":
        t = cohomology.dim_table(args.d, args.max_m)
        rows = list(csv.reader(io.StringIO(t.to_csv())))
        return t.to_dict(), rows
    mat = cohomology.stabilization_map(args.d, args.m)
    return {
        "d": args.d,
        "m": args.m,
        "rows": [c.as_dict for c in cohomology.conjugacy_basis(args.d, args.m)],
        "cols": [c.as_dict for c in cohomology.conjugacy_basis(args.d + 1, args.m)],
        "matrix": mat.tolist(),
    }, [list(r) for r in mat.tolist()]


def cmd_verify(args):
    only = set(_ints(args.only)) if args.only else None
    results = acceptance.run_all(seed=args.seed, only=only)
    for r in results:
        print(r.line(), file=sys.stderr)
    payload = {
        "passed": all(r.passed for r in results),
        "criteria": [
            {"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail, "seconds": round(r.seconds, 3)}
            for r in results
        ],
    }
    rows = [["number", "passed", "seconds", "detail"]] + [[r.number, r.passed, f"{r.seconds:.3f}", r.detail] for r in results]
    return payload, rows


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = _Parser(prog="hurlab", description="Hurwitz-space combinatorics and polynomial monodromy.")
    groups = top.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(sub, name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func, action=name)
        return p

    g = groups.add_parser("pmq", help="permutation norm, geodesic product, conjugation")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, help_text in [("norm", "norm of sigma"), ("product", "geodesic product sigma*tau"),
                            ("conjugate", "tau^-1 sigma tau")]:
        p = leaf(sub, name, cmd_pmq, help_text)
        p.add_argument("--sigma", required=True, help='one-line "2 3 1" or cycles "(1 2 3)"')
        p.add_argument("--d", type=int, help="degree (needed for cycle notation with fixed points)")
        if name != "norm":
            p.add_argument("--tau", required=True)

    g = groups.add_parser("completion", help="completion monoid elements")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(sub, "normal-form", cmd_completion, "normal form of a factor sequence")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--factors", required=True, help='e.g. "(1 2);(2 3)"')
    p = leaf(sub, "multiply", cmd_completion, "product of two elements given as JSON")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p = leaf(sub, "klud", cmd_completion, "the element classifying genus g with pole orders dvec")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--dvec", required=True, help="comma-separated pole orders")
    p = leaf(sub, "propagator", cmd_completion, "witnesses against e' for trivial-monodromy elements")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--max-norm", type=int, default=None)

    g = groups.add_parser("orbits", help="Hurwitz orbits of factor sequences")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, help_text in [("enumerate", "all orbits of length-k sequences"),
                            ("classify", "orbit counts per total monodromy")]:
        p = leaf(sub, name, cmd_orbits, help_text)
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--all-factors", action="store_true", help="allow any non-unit factor, not only transpositions")
    p = leaf(sub, "split", cmd_orbits, "split a sequence along the blocks of its normal form")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--factors", required=True)

    g = groups.add_parser("monodromy", help="branch points and monodromy of a monic polynomial")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name, help_text in [("compute", "monodromy around each critical value"),
                            ("rescale", "move critical values into the unit square")]:
        p = leaf(sub, name, cmd_monodromy, help_text)
        p.add_argument("--coeffs", required=True, help="a_0,...,a_{d-1} (or a_0..a_{d-2} when normalized); complex as 1+2i")
        p.add_argument("--degree", type=int, required=True)

    g = groups.add_parser("dims", help="dimension formulas")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(sub, "table", cmd_dims, "dimension table over genus, poles and degree")
    p.add_argument("--g-max", type=int, default=3)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--d-max", type=int, default=8)
    p.add_argument("--dvec", default=None, help="single record for these pole orders instead of a table")
    p.add_argument("--g", type=int, default=0, help="genus for --dvec")
    p = leaf(sub, "euler-check", cmd_dims, "Euler characteristic of a polynomial cover, two ways")
    p.add_argument("--coeffs", required=True)
    p.add_argument("--degree", type=int, required=True)

    g = groups.add_parser("cohomology", help="conjugation-invariant classes")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(sub, "basis", cmd_cohomology, "cycle types of norm m fitting in d points")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p = leaf(sub, "table", cmd_cohomology, "dimensions for m = 0..max-m")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--max-m", type=int, required=True)
    p = leaf(sub, "stab-map", cmd_cohomology, "matrix of the map from d+1 to d points")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    g = groups.add_parser("verify", help="acceptance checks")
    sub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(sub, "all", cmd_verify, "run every acceptance criterion")
    p.add_argument("--only", default=None, help="comma-separated criterion numbers")
    return top


def _emit(payload, rows, fmt: str, out) -> None:
    if fmt == "csv":
        if rows is None:
            raise UsageError("this command has no CSV form; use --output json")
        csv.writer(out, lineterminator="\n").writerows(rows)
    else:
        out.write(json.dumps(payload) + "\n")


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.tolerance <= 0 or args.node_cap <= 0:
            raise UsageError("--tolerance and --node-cap must be positive")
        payload, rows = args.func(args)
        _emit(payload, rows, args.output, out)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        print(f"hurlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:  # DomainError and malformed inputs
        print(f"hurlab: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericalError as exc:
        print(f"hurlab: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except BudgetExceeded as exc:
        print(f"hurlab: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.func is cmd_verify and not payload["passed"]:
        return EXIT_DOMAIN
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
