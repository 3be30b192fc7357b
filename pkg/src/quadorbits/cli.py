"""Command-line front end: ``quadorbits <command> [options]``."""

import argparse
import json
import sys

from . import census as cen
from . import covers as cov
from . import verify as ver
from .forms import ParseError, act, parse_form
from .normal import diagram_ascii, normalize
from .parabolic import brion_graph, emit

GUARD = {"census": 12, "counts": 12, "brion": 8, "covers": 12, "weyl": 8}


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_normalize(args):
    try:
        q = parse_form(args.form, args.n)
    except (ParseError, IndexError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    nf, w = normalize(q)
    ok = act(w, q) == nf.as_form() and w.is_borel()
    if args.format == "json-lines":
        text = json.dumps({"input": str(q), "normal_form": nf.text(), "level": w.level(),
                           "witness": [[str(w.entry(a, b)) for b in range(1, q.n + 1)]
                                       for a in range(1, q.n + 1)], "verified": ok}) + "\n"
    else:
        lines = [f"normal form: {nf.text()}", f"tower level: {w.level()}", "witness:"]
        lines += ["  " + row for row in w.format().splitlines()]
        lines.append(f"act(witness, input) == normal form: {'OK' if ok else 'MISMATCH'}")
        if args.format == "text" and q.n:
            lines.append(diagram_ascii(nf))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0 if ok else 1


def cmd_census(args):
    rows = cen.census(args.n)
    if args.format == "json-lines":
        text = "".join(json.dumps(r.as_dict()) + "\n" for r in rows)
    else:
        wd = max(len(r.nf.text()) for r in rows)
        lines = [f"{'form'.ljust(wd)}  brank  nondeg  cc"]
        for r in rows:
            cc = "-" if r.cc is None else str(r.cc)
            lines.append(f"{r.nf.text().ljust(wd)}  {r.brank:5}  {'yes' if r.nondegenerate else 'no':6}  {cc}")
        lines.append(f"{len(rows)} normal forms")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def cmd_counts(args):
    rep = cen.counts_report(args.n)
    if args.format == "json-lines":
        text = json.dumps(rep) + "\n"
    else:
        r = (args.n + 1) // 2
        lines = [f"n = {args.n}",
                 f"max-rank count {rep['max_rank']} = C_{r} = {rep['catalan']}: "
                 f"{'OK' if rep['max_rank'] == rep['catalan'] else 'MISMATCH'}"]
        for row in rep["b"]:
            lines.append(f"b({args.n},{row['f']}) = {row['direct']} (recursion {row['recursive']}, "
                         f"triangle C({r - 1},{r - row['f']}) = {row['triangle']})")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0 if rep["ok"] else 1


def cmd_brion(args):
    fmt = args.format
    _emit(emit(brion_graph(args.n), fmt), args.out)
    return 0


def cmd_covers(args):
    rows = cov.cover_table(args.n)
    if args.format == "json-lines":
        text = "".join(json.dumps({"form": q.text(), "eps": list(e), "m": list(m.m), "relations": rel}) + "\n"
                       for q, e, m, rel in rows)
    else:
        lines = []
        for q, e, m, rel in rows:
            lines.append(f"{q.text()}  eps={''.join(map(str, e)) or '-'}  m={m}  " + "; ".join(rel))
        lines.append(f"{len(rows)} covers")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def cmd_weyl(args):
    verts, edges = cov.weyl_orbit_graph(args.n)
    if args.format == "dot":
        out = [f"graph weyl_{args.n} {{", "  node [shape=plaintext];"]
        for m in verts:
            out.append(f"  \"{m}\";")
        for a, b, i in edges:
            out.append(f"  \"{a}\" -- \"{b}\" [label=\"s{i}\"];")
        text = "\n".join(out) + "\n}\n"
    elif args.format == "tikz":
        out = ["\\documentclass[tikz]{standalone}", "\\begin{document}", "\\begin{tikzpicture}"]
        names = {m: f"m{k}" for k, m in enumerate(verts)}
        for k, m in enumerate(verts):
            out.append(f"  \\node ({names[m]}) at ({2 * (k % 5)},{-1.2 * (k // 5)}) {{$\\{{{','.join(map(str, m.m))}\\}}$}};")
        for a, b, i in edges:
            out.append(f"  \\draw ({names[a]}) -- node[midway,above] {{\\small $s_{i}$}} ({names[b]});")
        out += ["\\end{tikzpicture}", "\\end{document}"]
        text = "\n".join(out) + "\n"
    elif args.format == "json-lines":
        text = "".join(json.dumps({"from": list(a.m), "to": list(b.m), "label": i}) + "\n" for a, b, i in edges)
    else:
        text = "".join(f"{a} --s{i}-- {b}\n" for a, b, i in edges)
    _emit(text, args.out)
    return 0


def cmd_verify(args):
    names = list(ver.SUITES) if args.suite == "all" else args.suite.split(",")
    reports = []
    for name in names:
        if name not in ver.SUITES:
            print(f"unknown suite {name!r}; choose from {', '.join(ver.SUITES)}", file=sys.stderr)
            return 2
        try:
            reports += ver.SUITES[name](args.n, args.field_level)
        except Exception as e:  # reported, never raised
            r = ver.Report(name, f"n={args.n}, level={args.field_level}")
            r.fail(f"error: {e}")
            reports.append(r)
    if args.format == "json-lines":
        text = "".join(json.dumps(r.as_dict()) + "\n" for r in reports)
    else:
        text = "".join(r.line() + "\n" for r in reports)
    _emit(text, args.out)
    return 0 if all(r.ok for r in reports) else 1


COMMANDS = {
    "normalize": (cmd_normalize, ("text", "plain", "json-lines")),
    "census": (cmd_census, ("text", "json-lines")),
    "counts": (cmd_counts, ("text", "json-lines")),
    "brion": (cmd_brion, ("text", "dot", "tikz", "json-lines")),
    "covers": (cmd_covers, ("text", "json-lines")),
    "weyl": (cmd_weyl, ("text", "dot", "tikz", "json-lines")),
    "verify": (cmd_verify, ("text", "json-lines")),
}


def build_parser():
    p = argparse.ArgumentParser(prog="quadorbits", description="Borel orbits of quadratic forms in characteristic 2")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, formats) in COMMANDS.items():
        s = sub.add_parser(name)
        s.add_argument("-n", type=int, required=name != "normalize", default=None)
        s.add_argument("--format", choices=formats, default="text")
        s.add_argument("--out", default=None)
        s.add_argument("--field-level", type=int, default=0)
        if name == "normalize":
            s.add_argument("form")
        if name == "verify":
            s.add_argument("--suite", default="all")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    guard = GUARD.get(args.command)
    if guard is not None and not 0 <= args.n <= guard:
        print(f"{args.command}: n must be between 0 and {guard}", file=sys.stderr)
        return 2
    return COMMANDS[args.command][0](args)


if __name__ == "__main__":
    sys.exit(main())
