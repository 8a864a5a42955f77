"""Command-line driver: build objects, run verification suites, emit tables.

Exit codes: 0 all checks passed, 1 a check failed (first witness reported),
2 configuration error. Reports are machine-readable JSON; identical
configurations produce identical output bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import jacobi, satake, shift
from .dunkl import (check_adjointness_compact, check_commutativity,
                    check_hecke_relations, radial_laplacian_check)
from .ghecke import eta_compatibility, invariant_center_check
from .reports import CheckReport, failed, passed
from .rootdata import MultiplicityParam, build
from .scalars import scalar_str

SUITES = ("commutativity", "hecke", "adjoint", "center",
          "jacobi-orthogonality", "norms", "constant-term", "shift-raise",
          "shift-nonsym", "shift-compose", "shift-lowering-nonexist",
          "satake", "radial-laplacian", "hyper-rank1")


class ConfigError(ValueError):
    pass


def _datum(cfg):
    try:
        return build(cfg.type)
    except ValueError as exc:
        raise ConfigError(str(exc))


def _multiplicity(cfg, datum, need_integer=False):
    if cfg.k == "symbolic":
        if need_integer:
            raise ConfigError("this suite needs numeric multiplicities")
        return MultiplicityParam.symbolic(datum)
    try:
        values = [Fraction(part) for part in cfg.k.split(",")]
    except ValueError:
        raise ConfigError("cannot parse --k %r" % cfg.k)
    if len(values) == 1 and datum.num_orbits > 1:
        values = values * datum.num_orbits
    if len(values) != datum.num_orbits:
        raise ConfigError("expected %d multiplicity values for %s"
                          % (datum.num_orbits, datum.label))
    k = MultiplicityParam.of(datum, *values)
    if need_integer and not k.is_integral():
        raise ConfigError("this suite needs nonnegative integer k")
    return k


def run_suite(suite, cfg):
    """Run one verification suite; returns a list of CheckReports."""
    if suite == "commutativity":
        datum = _datum(cfg)
        return [check_commutativity(datum, _multiplicity(cfg, datum),
                                    cfg.height)]
    if suite == "hecke":
        datum = _datum(cfg)
        return [check_hecke_relations(datum, _multiplicity(cfg, datum),
                                      cfg.height)]
    if suite == "adjoint":
        datum = _datum(cfg)
        return [check_adjointness_compact(
            datum, _multiplicity(cfg, datum, need_integer=True), cfg.height)]
    if suite == "center":
        datum = _datum(cfg)
        k = _multiplicity(cfg, datum)
        return [invariant_center_check(datum, k, min(cfg.height, 4)),
                eta_compatibility(datum, k, min(cfg.height, 3),
                                  rng=_rng(cfg))]
    if suite == "jacobi-orthogonality":
        datum = _datum(cfg)
        return [jacobi.orthogonality_check(
            datum, _multiplicity(cfg, datum, need_integer=True), cfg.height)]
    if suite == "norms":
        datum = _datum(cfg)
        k = _multiplicity(cfg, datum, need_integer=True)
        reports = [jacobi.orthogonality_check(datum, k, cfg.height)]
        ct = jacobi.constant_term_value(datum, k)
        reports.append(passed("constant-term-value", type=datum.label,
                              k=[str(v) for v in k.values],
                              value=str(ct)))
        return reports
    if suite == "constant-term":
        datum = _datum(cfg)
        k = _multiplicity(cfg, datum, need_integer=True)
        value = jacobi.constant_term_value(datum, k)
        formula = jacobi.norm_formula(datum, (0,) * datum.rank, k)
        if value != formula:
            return [failed("constant-term",
                           {"ct": str(value), "norm_formula": str(formula)},
                           type=datum.label)]
        return [passed("constant-term", type=datum.label,
                       k=[str(v) for v in k.values], value=str(value))]
    if suite == "shift-raise":
        datum = _datum(cfg)
        k = _multiplicity(cfg, datum)
        return [shift.transmutation_check(datum, +1, k, cfg.height),
                shift.transmutation_check(datum, -1, k, cfg.height)]
    if suite == "shift-nonsym":
        datum = _datum(cfg)
        k = _multiplicity(cfg, datum)
        return [shift.nonsymmetric_shift_checks(datum, k, cfg.height)]
    if suite == "shift-compose":
        datum = _datum(cfg)
        return [shift.composition_identities(datum, _multiplicity(cfg, datum),
                                             cfg.height)]
    if suite == "shift-lowering-nonexist":
        datum = _datum(cfg)
        k = _multiplicity(cfg, datum)
        reports = [shift.nonexistence_probe(datum, k, cfg.height)]
        if k.is_integral() and all(v >= 1 for v in k.values):
            reports.append(shift.lowering_adjoint_check(datum, k, cfg.height))
        return reports
    if suite == "satake":
        datum = satake.dual_datum(cfg.type)
        par = (satake.HeckeParam.equal(datum) if cfg.q == "symbolic"
               else satake.HeckeParam.equal(datum))
        reports = [satake.c_sum_identity(datum, par)]
        for lam in datum.dominants_up_to_height(min(cfg.height, 4)):
            got, want = satake.q_one_orbit_average(datum, par, lam)
            if got != want:
                reports.append(failed("satake-q-one", {"lambda": list(lam)},
                                      type=datum.label))
                return reports
        reports.append(passed("satake-q-one", type=datum.label))
        if datum.rank == 1:
            qs = [int(cfg.q)] if cfg.q not in ("symbolic",) else [2, 3]
            for q in qs:
                for n in range(0, cfg.height + 1):
                    rep = satake.tree_comparison(n, q)
                    if not rep.ok:
                        reports.append(rep)
                        return reports
            reports.append(passed("satake-tree", q=qs,
                                  n_max=cfg.height))
        return reports
    if suite == "radial-laplacian":
        datum = _datum(cfg)
        return [radial_laplacian_check(datum, _multiplicity(cfg, datum),
                                       cfg.height)]
    if suite == "hyper-rank1":
        from . import hyper
        from .jacobi import symmetric_jacobi
        import math
        reports = []
        datum = build("A1")
        for kval in (Fraction(1, 2), Fraction(1), Fraction(5, 2)):
            k = MultiplicityParam.of(datum, kval)
            for m in range(1, 4):
                p = symmetric_jacobi(datum, (m,), k)
                at_one = sum(float(c) for c in p.poly.coeffs.values())
                for x in (0.2, 0.7, 1.1):
                    lhs = hyper.rank1_F(2.0 * m + 2.0 * float(kval), 0.0,
                                        float(kval), x) * at_one
                    rhs = sum(float(c) * math.exp(w[0] * x)
                              for w, c in p.poly.coeffs.items())
                    if abs(lhs - rhs) > 1e-10 * max(abs(rhs), 1.0):
                        reports.append(failed(
                            "hyper-poly-specialization",
                            {"k": str(kval), "mu": m, "x": x,
                             "lhs": lhs, "rhs": rhs}))
                        return reports
        reports.append(passed("hyper-poly-specialization",
                              tolerance=1e-10,
                              argument_map=hyper.argument_map_used()))
        res = hyper.c_numeric(6.0, 0.0, 1.0)
        if not res["agree"]:
            reports.append(failed("hyper-c-asymptotics",
                                  {"gap": res["gap"]}))
        else:
            reports.append(passed("hyper-c-asymptotics", gap=res["gap"],
                                  tolerance=1e-6))
        return reports
    raise ConfigError("unknown suite %r (choose from %s)"
                      % (suite, ", ".join(SUITES)))


def _rng(cfg):
    import random
    return random.Random(cfg.seed)


def table_rows(kind, cfg):
    if kind == "E":
        datum = _datum(cfg)
        k = _multiplicity(cfg, datum)
        rows = []
        for mu in datum.truncation(cfg.height):
            e = jacobi.nonsymmetric_jacobi(datum, mu, k)
            try:
                norm = str(jacobi.norm_formula(datum, mu, k))
            except jacobi.NotReducible:
                norm = "gamma:" + json.dumps(
                    jacobi.norm_gamma(datum, mu, k).to_json(), sort_keys=True)
            rows.append({
                "mu": json.dumps(list(mu)),
                "coefficients": json.dumps(e.poly.to_json(), sort_keys=True),
                "eigenvalue": json.dumps([scalar_str(s) for s in e.spectral]),
                "norm": norm,
            })
        return ["mu", "coefficients", "eigenvalue", "norm"], rows
    if kind == "P":
        datum = _datum(cfg)
        k = _multiplicity(cfg, datum)
        rows = []
        for lam in datum.dominants_up_to_height(cfg.height):
            p = jacobi.symmetric_jacobi(datum, lam, k)
            rows.append({
                "lambda": json.dumps(list(lam)),
                "coefficients": json.dumps(p.poly.to_json(), sort_keys=True),
                "eigenvalue": json.dumps([scalar_str(s) for s in p.spectral]),
            })
        return ["lambda", "coefficients", "eigenvalue"], rows
    if kind == "satake":
        datum = satake.dual_datum(cfg.type)
        par = satake.HeckeParam.equal(datum)
        rows = []
        for lam in datum.dominants_up_to_height(cfg.height):
            img = satake.satake_image(datum, par, lam)
            val = satake.spherical_value(datum, par, lam)
            rows.append({
                "lambda": json.dumps(list(lam)),
                "satake_image": json.dumps(img.to_json(), sort_keys=True),
                "spherical_value": json.dumps(val.value.to_json(),
                                              sort_keys=True),
            })
        return ["lambda", "satake_image", "spherical_value"], rows
    if kind == "cfun":
        datum = _datum(cfg)
        k = _multiplicity(cfg, datum)
        rows = []
        for lam in datum.dominants_up_to_height(cfg.height):
            gp = jacobi.c_function(datum, "c_tilde", lam, k)
            rows.append({
                "lambda": json.dumps(list(lam)),
                "c_tilde": json.dumps(gp.to_json(), sort_keys=True),
            })
        return ["lambda", "c_tilde"], rows
    raise ConfigError("unknown table kind %r" % kind)


def _emit(payload, cfg):
    text = json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_table(header, rows, cfg):
    if cfg.format == "json":
        _emit({"columns": header, "rows": rows}, cfg)
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def make_parser():
    parser = argparse.ArgumentParser(
        prog="cherednik",
        description="exact verification engine for root-system harmonic "
                    "analysis")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", default="A1",
                        help="Cartan label, e.g. A1, A2, B2, BC1")
    common.add_argument("--rank", type=int, default=None,
                        help="rank when --type is a bare family letter")
    common.add_argument("--k", default="symbolic",
                        help='multiplicities: comma list or "symbolic"')
    common.add_argument("--q", default="symbolic",
                        help='Hecke parameter: integer or "symbolic"')
    common.add_argument("--height", type=int, default=4)
    common.add_argument("--out", default=None, help="output file")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=20240901)
    verify = sub.add_parser("verify", parents=[common],
                            help="run a verification suite")
    verify.add_argument("--suite", required=True)
    table = sub.add_parser("table", parents=[common], help="dump a table")
    table.add_argument("--kind", required=True,
                       choices=("E", "P", "satake", "cfun"))
    return parser


def main(argv=None):
    parser = make_parser()
    cfg = parser.parse_args(argv)
    if cfg.rank is not None:
        cfg.type = "%s%d" % (cfg.type, cfg.rank)
    try:
        if cfg.command == "verify":
            reports = run_suite(cfg.suite, cfg)
            payload = {"suite": cfg.suite,
                       "config": {"type": cfg.type, "k": cfg.k, "q": cfg.q,
                                  "height": cfg.height, "seed": cfg.seed},
                       "reports": [r.to_json() for r in reports],
                       "status": "pass" if all(r.ok for r in reports)
                       else "fail"}
            _emit(payload, cfg)
            return 0 if all(r.ok for r in reports) else 1
        header, rows = table_rows(cfg.kind, cfg)
        _emit_table(header, rows, cfg)
        return 0
    except ConfigError as exc:
        sys.stderr.write("configuration error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
