"""Command line interface.

Every command prints one JSON document on stdout.  Exit status: 0 when all
checks pass, 1 when a verification fails, 2 on malformed input.

Defaults can be set in a key = value config file (``--config``); flags win
over the file, the file wins over the built-in defaults.  Recognised keys:
order, jobs, allow_n2.
"""
from __future__ import annotations

import argparse
import configparser
import json
import sys

from .exactalg import field
from .patterns import DominantWeight, PatternError, enumerate_patterns, pattern_from_json
from .vectors import ModuleVector

DEFAULTS = {"order": 6, "jobs": 1, "allow_n2": False}

VERIFY_SUITES = ("relations", "affine-relations", "a01", "irreducible", "k-identity",
                 "localization", "truncation", "xvi")


class UsageError(ValueError):
    pass


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def load_config(path):
    if path is None:
        return {}
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_string("[main]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    sect = parser["main"]
    out = {}
    for key in sect:
        if key not in DEFAULTS:
            raise UsageError(f"unknown config key {key!r}")
        if key == "allow_n2":
            out[key] = sect.getboolean(key)
        else:
            out[key] = sect.getint(key)
    return out


def build_parser():
    p = argparse.ArgumentParser(prog="laumon", description="Fixed-point computations on (affine) Laumon spaces.")
    p.add_argument("--config", help="key = value file with defaults (order, jobs, allow_n2)")
    p.add_argument("--jobs", type=int, help="worker processes for the verifiers")
    p.add_argument("--order", type=int, help="number of series coefficients kept")
    p.add_argument("--format", choices=["json"], default="json")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="list the fixed points of a given degree")
    e.add_argument("--kind", choices=["finite", "affine"], required=True)
    e.add_argument("-n", type=int, required=True)
    e.add_argument("--degree", type=_int_list, required=True)

    a = sub.add_parser("apply", help="apply a generator to a vector")
    a.add_argument("--gen", required=True,
                   choices=["e", "f", "h", "E", "xplus", "xminus", "hcoeff", "h_diag", "h_series_coeff"])
    a.add_argument("-i", type=int, required=True)
    a.add_argument("-r", type=int, default=0)
    a.add_argument("--state", required=True, help="JSON file: a pattern, or a list of {pattern, coeff}")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=VERIFY_SUITES)
    v.add_argument("-n", type=int, required=True)
    v.add_argument("--max-degree", type=int, required=True)
    v.add_argument("--rmax", type=int, default=2)
    v.add_argument("--mu", type=_int_list)
    v.add_argument("--level", type=int)
    v.add_argument("--mode", choices=["diagonal", "all"], default="diagonal", help="degree mode for xvi")
    v.add_argument("--per-component", action="store_true",
                   help="xvi: bound each degree entry (d,...,d) by --max-degree instead of the total")
    v.add_argument("--labels", choices=["yangian", "literal"], default="yangian",
                   help="x+- labelling used by the finite relation check")
    v.add_argument("--failures-only", action="store_true", help="omit passing entries from the report")

    c = sub.add_parser("character", help="graded character of V(mu) against the cylindric count")
    c.add_argument("--mu", type=_int_list, required=True)
    c.add_argument("--level", type=int, required=True)
    c.add_argument("--cutoff", type=int, required=True)

    lo = sub.add_parser("localize", help="torus characters at fixed points")
    lo.add_argument("what", choices=["tangent", "e-bundle", "edge"])
    lo.add_argument("--pattern", required=True, help="JSON file with an affine pattern")
    lo.add_argument("--pattern2", help="second pattern (e-bundle)")
    lo.add_argument("-i", type=int)
    lo.add_argument("-j", type=int)
    return p


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _read_state(path):
    data = _read_json(path)
    if isinstance(data, dict) and "kind" in data:
        data = [{"pattern": data, "coeff": "1"}]
    if not isinstance(data, list) or not data:
        raise UsageError("state must be a pattern or a nonempty list of {pattern, coeff}")
    terms = {}
    for item in data:
        try:
            p = pattern_from_json(item["pattern"])
            c = field(p.n).parse(str(item.get("coeff", "1")))
        except (KeyError, TypeError, PatternError, ValueError, SyntaxError) as exc:
            raise UsageError(f"bad state entry {item!r}: {exc}")
        terms[p] = terms[p] + c if p in terms else c
    kinds = {(type(p).__name__, p.n) for p in terms}
    if len(kinds) != 1:
        raise UsageError("state mixes pattern kinds or sizes")
    return ModuleVector(terms)


def _report_out(report, failures_only):
    if failures_only:
        report = dict(report, entries=[e for e in report["entries"] if e["status"] != "pass"])
    return report, (0 if report["status"] == "pass" else 1)


def cmd_enumerate(args, cfg):
    if args.n < 2:
        raise UsageError("n must be at least 2")
    if len(args.degree) != args.n - (1 if args.kind == "finite" else 0):
        raise UsageError(f"degree vector must have {args.n - 1 if args.kind == 'finite' else args.n} entries")
    if any(d < 0 for d in args.degree):
        raise UsageError("degrees must be nonnegative")
    pats = enumerate_patterns(args.kind, args.n, tuple(args.degree))
    return [p.to_json() for p in pats], 0


def cmd_apply(args, cfg):
    from .affine_module import apply_affine
    from .finite_module import apply_finite
    from .patterns import AffinePattern

    v = _read_state(args.state)
    p0 = next(iter(v.terms))
    affine = isinstance(p0, AffinePattern)
    gen = {"h_diag": "h", "h_series_coeff": "hcoeff"}.get(args.gen, args.gen)
    if args.r < 0:
        raise UsageError("r must be nonnegative")
    if gen in ("xplus", "xminus", "hcoeff"):
        key = (gen, args.i, args.r)
    elif affine and gen == "h":
        key = ("hdiag", args.i)
    else:
        key = (gen, args.i)
    if affine:
        if gen == "E":
            raise UsageError("E is a finite-type generator")
        if p0.n < 3 and not cfg["allow_n2"]:
            raise UsageError("affine n = 2 needs allow_n2 = true in the config")
        out = apply_affine(key, v, cfg["order"], allow_n2=cfg["allow_n2"])
    else:
        out = apply_finite(key, v, cfg["order"])
    return out.to_json(), 0


def _weight(args):
    if args.mu is None or args.level is None:
        raise UsageError("--mu and --level are required")
    if len(args.mu) != args.n:
        raise UsageError("mu must have n entries")
    try:
        return DominantWeight(args.level, tuple(args.mu))
    except PatternError as exc:
        raise UsageError(str(exc))


def cmd_verify(args, cfg):
    from . import affine_module, detline, finite_module, integrable, localization

    n, D, R, jobs = args.n, args.max_degree, args.rmax, cfg["jobs"]
    if D < 0 or R < 0:
        raise UsageError("cutoffs must be nonnegative")
    if args.suite == "relations":
        if n < 2:
            raise UsageError("n must be at least 2")
        rep = finite_module.verify_finite_relations(n, D, R, cfg["order"], args.labels, jobs)
    else:
        if n < 3:
            raise UsageError("the affine suites need n >= 3")
        if args.suite == "affine-relations":
            rep = affine_module.verify_affine_relations(n, D, R, cfg["order"], jobs)
        elif args.suite == "a01":
            rep = affine_module.verify_a01(n, D, R, jobs)
        elif args.suite == "irreducible":
            rep = affine_module.verify_irreducibility_data(n, D, jobs)
        elif args.suite == "k-identity":
            rep = localization.verify_K_identities(n, D, jobs)
        elif args.suite == "localization":
            rep = localization.verify_localization(n, D, jobs)
        elif args.suite == "truncation":
            rep = integrable.check_truncation(_weight(args), D, R, jobs)
        else:
            if args.per_component and args.mode != "diagonal":
                raise UsageError("--per-component needs --mode diagonal")
            rep = detline.verify_xvi(n, D, args.mode, jobs, per_component=args.per_component)
    return _report_out(rep, args.failures_only)


def cmd_character(args, cfg):
    from .integrable import character_table

    if len(args.mu) < 3:
        raise UsageError("needs n >= 3")
    try:
        w = DominantWeight(args.level, tuple(args.mu))
    except PatternError as exc:
        raise UsageError(str(exc))
    if args.cutoff < 0:
        raise UsageError("cutoff must be nonnegative")
    table = character_table(w, args.cutoff)
    return table, (0 if table["match"] else 1)


def cmd_localize(args, cfg):
    from . import localization as loc
    from .patterns import AffinePattern

    def load(path):
        try:
            p = pattern_from_json(_read_json(path))
        except PatternError as exc:
            raise UsageError(str(exc))
        if not isinstance(p, AffinePattern):
            raise UsageError("localize works with affine patterns")
        return p

    p = load(args.pattern)
    if args.what == "tangent":
        ch = loc.char_tangent(p)
        return {"pattern": p.to_json(), "character": ch.to_json(), "text": str(ch),
                "weights": [str(w) for w in loc.char_to_weights(ch)]}, 0
    if args.what == "e-bundle":
        pp = load(args.pattern2) if args.pattern2 else p
        if pp.n != p.n:
            raise UsageError("patterns have different n")
        ch = loc.char_E(p, pp)
        return {"patterns": [p.to_json(), pp.to_json()], "character": ch.to_json(), "text": str(ch),
                "rank": ch.at_one()}, 0
    if args.i is None or args.j is None:
        raise UsageError("edge needs -i and -j")
    try:
        edge = loc.FixedEdge.make(p, args.i, args.j)
    except ValueError as exc:
        raise UsageError(str(exc))
    ch = loc.char_corr_tangent(edge)
    return {"source": p.to_json(), "target": edge.target.to_json(), "i": args.i, "j": args.j,
            "character": ch.to_json(), "text": str(ch),
            "e": str(loc.localized_coeff(edge, "e")), "f": str(loc.localized_coeff(edge, "f"))}, 0


COMMANDS = {"enumerate": cmd_enumerate, "apply": cmd_apply, "verify": cmd_verify,
            "character": cmd_character, "localize": cmd_localize}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = dict(DEFAULTS)
        cfg.update(load_config(args.config))
        if args.jobs is not None:
            cfg["jobs"] = args.jobs
        if args.order is not None:
            cfg["order"] = args.order
        result, status = COMMANDS[args.command](args, cfg)
    except (UsageError, PatternError) as exc:
        json.dump({"error": str(exc)}, out, sort_keys=True)
        out.write("\n")
        return 2
    json.dump(result, out, sort_keys=True, separators=(",", ":"))
    out.write("\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
