"""Command-line entry point.

Exit codes: 0 success, 1 verified mismatch, 2 usage error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .affweyl import BallCapExceeded, affine_weyl_group
from .blockmatch import (LevelNotGood, PositiveLevel, enumerate_blocks, match_blocks,
                         parahoric_subset_check)
from .duality import verify_coxeter_iso
from .goodness import bad_prime_product, is_good_alcove_oracle, is_good_table
from .intweyl import integral_weyl_group
from .levels import DegenerateLevelError, classify_sign, dual_level, parse_level
from .rootdata import build_root_datum, langlands_dual

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

DEFAULTS = {"bound": 8, "ball": 8, "cap": 10**6}


class UsageError(Exception):
    pass


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def _dump(obj):
    return json.dumps(obj, indent=2, default=_json_default)


def _fmt(v):
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(a) for a in v) + ")"
    return str(v)


def _datum(label):
    try:
        return build_root_datum(label)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _simple_datum(label):
    d = _datum(label)
    if not d.is_simple:
        raise UsageError(f"{label!r} is not a simple type")
    return d


def _level(text):
    try:
        return parse_level(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def read_config(path):
    """key=value lines; '#' starts a comment.  Only the known bound keys are accepted."""
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            if key not in DEFAULTS:
                raise UsageError(f"{path}:{n}: unknown key {key!r}")
            try:
                out[key] = int(val)
            except ValueError:
                raise UsageError(f"{path}:{n}: {key} must be an integer") from None
    return out


# ----- commands ------------------------------------------------------------


def cmd_rootdata(args):
    label = f"{args.type}{args.rank}"
    try:
        rank = int(args.rank)
    except ValueError:
        raise UsageError(f"rank must be an integer, got {args.rank!r}") from None
    try:
        d = build_root_datum(args.type, rank)
    except ValueError as e:
        raise UsageError(str(e)) from None
    data = d.to_dict()
    if args.json:
        return EXIT_OK, _dump(data)
    c = data["constants"]
    lines = [f"type            {label.upper()}",
             f"rank            {d.rank}",
             f"positive roots  {c['n_positive_roots']}",
             f"h_dual          {c['dual_coxeter_number']}",
             f"coxeter number  {c['coxeter_number']}",
             f"lacing r        {c['lacing_number']}",
             f"theta_s check   {_fmt(c['theta_check_short'])}",
             f"theta_l check   {_fmt(c['theta_check_long'])}",
             f"rho             {_fmt(c['rho'])}",
             f"rho check       {_fmt(c['rho_check'])}",
             "cartan matrix"]
    lines += ["  " + " ".join(f"{a:>3}" for a in row) for row in data["cartan_matrix"]]
    return EXIT_OK, "\n".join(lines)


def cmd_dual_level(args):
    d = _simple_datum(args.type)
    k = _level(args.level)
    try:
        kd = dual_level(k, d)
    except DegenerateLevelError as e:
        raise UsageError(str(e)) from None
    data = {"type": d.type_label, "level": k.to_dict(), "sign": classify_sign(k),
            "dual_type": langlands_dual(d).type_label, "dual_level": kd.to_dict(),
            "dual_sign": classify_sign(kd)}
    if args.json:
        return EXIT_OK, _dump(data)
    return EXIT_OK, (f"{d.type_label} {k.literal()} ({data['sign']})  ->  "
                     f"{data['dual_type']} {kd.literal()} ({data['dual_sign']})")


def cmd_good(args):
    d = _simple_datum(args.type)
    k = _level(args.level)
    if k.is_critical:
        raise UsageError("goodness is not defined at the critical level")
    table = is_good_table(k, d)
    oracle = is_good_alcove_oracle(k, d, args.width)
    data = {"type": d.type_label, "level": k.to_dict(),
            "bad_prime_product": bad_prime_product(d.type_label),
            "good": table, "oracle": oracle.to_dict()}
    if oracle.status == "inconclusive":
        code = EXIT_INCONCLUSIVE
    elif oracle.good != table:
        code = EXIT_MISMATCH
    else:
        code = EXIT_OK
    if args.json:
        return code, _dump(data)
    lines = [f"{d.type_label} {k.literal()}: {'good' if table else 'not good'} "
             f"(n = {data['bad_prime_product']}); oracle: {oracle.status}"]
    for c in oracle.certificate:
        if "witness" in c:
            extra = f"P={c['P']} " if "P" in c else ""
            lines.append(f"  face {_fmt(c['face'])}: {extra}mu={_fmt(c['witness'])}")
        elif "exhausted" in c:
            e = c["exhausted"]
            lines.append(f"  face {_fmt(c['face'])}: none (gcd {e['gcd']} vs q {e['q']})")
        else:
            lines.append(f"  face {_fmt(c['face'])}: inconclusive")
    return code, "\n".join(lines)


def cmd_intweyl(args):
    d = _simple_datum(args.type)
    k = _level(args.level)
    W = integral_weyl_group(k, d)
    data = W.to_dict()
    data["type"] = d.type_label
    data["coxeter_matrix"] = W.coxeter_matrix()
    if args.json:
        return EXIT_OK, _dump(data)
    lines = [f"W_(g,kappa) for {d.type_label} at {k.literal()}"]
    for i, g in enumerate(data["generators"]):
        lines.append(f"  s{i}: coroot {_fmt(g['coroot'])} n={g['n']}  {g['element']}")
    lines.append("  coxeter matrix (0 = infinity)")
    lines += ["    " + " ".join(f"{a:>2}" for a in row) for row in data["coxeter_matrix"]]
    lat = data.get("translation_lattice")
    if lat:
        basis = ", ".join(_fmt(b) for b in lat["basis"]) or "0"
        lines.append(f"  translation lattice: {basis}; index {lat['index']}")
    return EXIT_OK, "\n".join(lines)


def cmd_blocks(args):
    d = _simple_datum(args.type)
    k = _level(args.level)
    if k.is_critical:
        raise UsageError("no blocks at the critical level")
    G = affine_weyl_group(d)
    blocks = enumerate_blocks(k, d, args.bound, cap=args.cap)
    rows = [b.to_dict(G) for b in blocks]
    cert = [b for b in blocks if b.certified]
    ok = all(b.unique_minimum and b.positivity and b.parabolic and b.minimum_below_window
             for b in cert)
    data = {"type": d.type_label, "level": k.to_dict(), "bound": args.bound, "blocks": rows,
            "summary": {"blocks": len(rows), "certified": len(cert), "properties_hold": ok}}
    code = EXIT_OK if ok else EXIT_MISMATCH
    if code == EXIT_OK and not cert:
        code = EXIT_INCONCLUSIVE
    if args.json:
        return code, _dump(data)
    lines = [f"{'weight':<16} {'y':<34} {'len':>3} {'stab':<10} cert"]
    for r in rows:
        lines.append(f"{_fmt(r['weight']):<16} {r['y']:<34} {r['length']:>3} "
                     f"{_fmt(r['stabilizer']):<10} {'yes' if r['certified'] else 'no'}")
    lines.append(f"{len(rows)} blocks, {len(cert)} certified, properties "
                 f"{'hold' if ok else 'FAIL'}")
    return code, "\n".join(lines)


def cmd_match(args):
    d = _simple_datum(args.type)
    k = _level(args.level)
    try:
        report = match_blocks(k, d, args.bound, cap=args.cap)
    except (LevelNotGood, PositiveLevel) as e:
        raise UsageError(str(e)) from None
    data = report.to_dict()
    data["type"] = d.type_label
    s = data["summary"]
    if s["verdict"] == "MISMATCH":
        code = EXIT_MISMATCH
    elif s["certified"] == 0:
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_OK
    if args.json:
        return code, _dump(data)
    lines = [f"{d.type_label} {data['level']} <-> {langlands_dual(d).type_label} "
             f"{data['dual_level']}, bound {args.bound}",
             f"{'weight':<16} {'stab':<10} {'dual stab':<10} {'cert':<5} verdict"]
    for b in data["blocks"]:
        lines.append(f"{_fmt(b['weight']):<16} {_fmt(b['stabilizer']):<10} "
                     f"{_fmt(b['dual_stabilizer']):<10} {'yes' if b['certified'] else 'no':<5} "
                     f"{b['verdict']}")
    lines.append(f"{s['verdict']}: {s['matched']}/{s['certified']} certified blocks "
                 f"({s['blocks']} in window)")
    return code, "\n".join(lines)


def cmd_verify_duality(args):
    d = _simple_datum(args.type)
    k = _level(args.level)
    if k.is_critical:
        raise UsageError("degenerate: no dual level at the critical level")
    report = verify_coxeter_iso(k, d, ball=args.ball)
    data = report.to_dict()
    data["type"] = d.type_label
    code = EXIT_OK if report.ok else EXIT_MISMATCH
    if args.json:
        return code, _dump(data)
    lines = [f"{d.type_label} {data['level']} -> {langlands_dual(d).type_label} "
             f"{data['dual_level']}: {data['verdict']}",
             f"  generators  {'ok' if report.generators_match else 'differ'}",
             f"  coxeter     {'ok' if report.coxeter_match else 'differ'}",
             f"  lattice     {'ok' if report.lattice_match else 'differ'}",
             f"  ball {args.ball}: {report.ball_checked} elements, lengths "
             f"{'ok' if report.lengths_match else 'differ'}, homomorphism "
             f"{'ok' if report.homomorphism else 'fails'}, injective "
             f"{'yes' if report.injective else 'no'}"]
    lines += [f"  failure: {f}" for f in report.failures]
    return code, "\n".join(lines)


def _subset(text, rank):
    if text.strip() == "":
        return []
    try:
        J = sorted({int(a) for a in text.split(",")})
    except ValueError:
        raise UsageError(f"bad subset {text!r}; expected comma-separated indices") from None
    if any(j < 0 or j >= rank for j in J):
        raise UsageError(f"subset {text!r} out of range 0..{rank - 1}")
    return J


def cmd_parahoric(args):
    d = _simple_datum(args.type)
    J = _subset(args.J, d.rank)
    report = parahoric_subset_check(J, d, args.bound, cap=args.cap)
    data = report.to_dict()
    data["type"] = d.type_label
    code = EXIT_OK if report.equal else EXIT_MISMATCH
    if args.json:
        return code, _dump(data)
    lines = [f"{d.type_label} J={_fmt(J)} bound {args.bound}: "
             f"{'A = B = C' if report.equal else 'sets differ'} "
             f"(|A|={len(report.A)}, |B|={len(report.B)}, |C|={len(report.C)}; "
             f"{report.undecided} cosets beyond the bound)"]
    lines += [f"  {x}" for x in report.C]
    return code, "\n".join(lines)


# ----- parser --------------------------------------------------------------


def build_parser(defaults=None):
    dflt = dict(DEFAULTS, **(defaults or {}))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--config", metavar="FILE", help="key=value file with default bounds")

    p = argparse.ArgumentParser(prog="qlcomb", description="Exact affine Weyl group combinatorics.")
    sub = p.add_subparsers(dest="command", required=True)

    def typed(name, help_, level=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--type", required=True, help="simple type, e.g. A2 or G2")
        if level:
            sp.add_argument("--level", required=True,
                            help="level literal: -h+p/q, -h-p/q or irr")
        return sp

    sp = sub.add_parser("rootdata", parents=[common], help="root datum of a simple type")
    sp.add_argument("type")
    sp.add_argument("rank")
    sp.set_defaults(func=cmd_rootdata)

    typed("dual-level", "dual level on the Langlands dual").set_defaults(func=cmd_dual_level)

    sp = typed("good", "goodness by table and alcove oracle")
    sp.add_argument("--width", type=int, default=None, help="number of p-representatives tried")
    sp.set_defaults(func=cmd_good)

    typed("intweyl", "integral Weyl group at twist 0").set_defaults(func=cmd_intweyl)

    for name, func, help_ in (("blocks", cmd_blocks, "double-coset blocks in a length ball"),
                              ("match", cmd_match, "stabilizer match across duality")):
        sp = typed(name, help_)
        sp.add_argument("--bound", type=int, default=dflt["bound"])
        sp.add_argument("--cap", type=int, default=dflt["cap"])
        sp.set_defaults(func=func)

    sp = typed("verify-duality", "check the Coxeter isomorphism")
    sp.add_argument("--ball", type=int, default=dflt["ball"])
    sp.set_defaults(func=cmd_verify_duality)

    sp = typed("parahoric", "compare the three parahoric descriptions", level=False)
    sp.add_argument("--J", default="", help="comma-separated finite simple indices")
    sp.add_argument("--bound", type=int, default=dflt["bound"])
    sp.add_argument("--cap", type=int, default=dflt["cap"])
    sp.set_defaults(func=cmd_parahoric)
    return p


def _config_path(argv):
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--config="):
            return a.split("=", 1)[1]
    return None


def _glue_levels(argv):
    """Level literals start with '-', so argparse would read them as options."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--level" and i + 1 < len(argv):
            out.append(f"--level={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None, out=None, err=None):
    argv = _glue_levels(list(sys.argv[1:] if argv is None else argv))
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        path = _config_path(argv)
        defaults = read_config(path) if path else None
        parser = build_parser(defaults)
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return EXIT_USAGE if e.code else EXIT_OK
        for key in ("bound", "ball", "cap"):
            if getattr(args, key, 0) is not None and getattr(args, key, 0) < 0:
                raise UsageError(f"--{key} must be nonnegative")
        code, text = args.func(args)
    except (UsageError, OSError) as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except BallCapExceeded as e:
        print(f"inconclusive: {e}", file=err)
        return EXIT_INCONCLUSIVE
    print(text, file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
