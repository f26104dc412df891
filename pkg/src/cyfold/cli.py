"""Command-line front end: input schemas, report/DOT/CSV emitters, and a
content-addressed cache.

Input documents are UTF-8 JSON.  A quiver document is
  {"vertices": [...],
   "arrows": [{"name", "from", "to", "cdeg", "adeg"}, ...],
   "relations": [[{"coef": "p/q", "path": [names...]}, ...], ...]}
and a bimodule-complex document is
  {"terms": {"<cdeg>": [{"left", "right", "adeg"}, ...]},
   "diff": {"<cdeg>": [[entry, ...], ...]}}
where diff["<p>"][t][s] is the entry from source summand s at degree p to
target summand t at degree p+1, a list of
  {"coef": "p/q", "left_path": [names...], "right_path": [names...]}
with paths written in composition order (empty list = idempotent).
Exit codes: 0 all checks pass, 1 a check failed, 2 inconclusive, 3 input
error.
"""

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time
from fractions import Fraction

from . import __version__
from .bimodcx import (
    ProjBimodComplex,
    ProjBimodSummand,
    resolution_of_algebra,
)
from .cluster import (
    build_zq,
    classify_dynkin_roots,
    dynkin_quiver,
    folded_a2n_auto,
    orbit_hom,
    orbit_quiver,
)

from .completion import completion
from .exactlin import QQ, Field
from .quiveralg import Arrow, Quiver, Relation, build_algebra
from .rootpair import (
    RootPairSpec,
    check_strict_pair,
    is_cyclically_invariant,
    k0_spanning_check,
    projective_sum,
)
from . import presets

SCHEMA_VERSION = 1

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


class ParseError(Exception):
    def __init__(self, location, message):
        super().__init__(f"{location}: {message}")
        self.location = location


def _frac(text, location):
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(location, f"bad rational {text!r}: {exc}")


def quiver_to_doc(quiver, relations=()):
    return {
        "vertices": list(quiver.vertices),
        "arrows": [
            {"name": a.name, "from": a.source, "to": a.target,
             "cdeg": a.cdeg, "adeg": a.adeg}
            for a in quiver.arrows
        ],
        "relations": [
            [{"coef": str(c), "path": list(p)} for c, p in rel.terms]
            for rel in relations
        ],
    }


def doc_to_algebra(doc, max_len, field=QQ):
    try:
        arrows = [
            Arrow(a["name"], a["from"], a["to"], a.get("cdeg", 0), a.get("adeg", 0))
            for a in doc["arrows"]
        ]
        quiver = Quiver(doc["vertices"], arrows)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("quiver", str(exc))
    rels = []
    for i, rel in enumerate(doc.get("relations", [])):
        terms = [
            (_frac(t["coef"], f"relations[{i}]"), tuple(t["path"])) for t in rel
        ]
        rels.append(Relation(terms))
    return build_algebra(quiver, rels, max_len, field)


def complex_to_doc(cx):
    alg = cx.base
    terms = {}
    for p, ss in sorted(cx.terms.items()):
        terms[str(p)] = [
            {"left": s.left, "right": s.right, "adeg": s.adeg} for s in ss
        ]
    diff = {}
    for p in sorted(cx.diff):
        n_t = len(cx.summands(p + 1))
        n_s = len(cx.summands(p))
        grid = [[[] for _ in range(n_s)] for _ in range(n_t)]
        for (t, s), entry in cx.diff[p].items():
            for (a, b), c in entry.items():
                grid[t][s].append(
                    {
                        "coef": str(Fraction(c) if alg.field.char == 0 else c),
                        "left_path": list(alg.basis[a].path),
                        "right_path": list(alg.basis[b].path),
                    }
                )
        diff[str(p)] = grid
    return {"terms": terms, "diff": diff}


def _path_element(alg, path, location):
    """Element of the algebra from an arrow-name sequence."""
    f = alg.field
    if not path:
        return None  # idempotent, resolved by corner context
    elem = None
    for name in reversed(path):
        idx = None
        for b in alg.basis:
            if b.path == (name,):
                idx = b.index
                break
        if idx is None:
            raise ParseError(location, f"unknown arrow {name!r}")
        if elem is None:
            elem = {idx: f.one()}
        else:
            elem = alg.mult_elements({idx: f.one()}, elem)
    return elem


def doc_to_complex(doc, alg):
    f = alg.field
    terms = {}
    for key, ss in doc.get("terms", {}).items():
        p = int(key)
        terms[p] = [
            ProjBimodSummand(s["left"], s["right"], p, s.get("adeg", 0))
            for s in ss
        ]
    diff = {}
    for key, grid in doc.get("diff", {}).items():
        p = int(key)
        dd = {}
        for t, row in enumerate(grid):
            for s, entries in enumerate(row):
                entry = {}
                for item in entries:
                    loc = f"diff[{key}][{t}][{s}]"
                    c = _frac(item["coef"], loc)
                    coeff = f(c.numerator, c.denominator)
                    src = terms[p][s]
                    tgt = terms[p + 1][t]
                    left = _path_element(alg, tuple(item.get("left_path", [])), loc)
                    if left is None:
                        if src.left != tgt.left:
                            raise ParseError(loc, "idempotent left path between different vertices")
                        left = {alg.idempotent_index(src.left): f.one()}
                    right = _path_element(alg, tuple(item.get("right_path", [])), loc)
                    if right is None:
                        if src.right != tgt.right:
                            raise ParseError(loc, "idempotent right path between different vertices")
                        right = {alg.idempotent_index(src.right): f.one()}
                    for a, ca in left.items():
                        for b, cb in right.items():
                            val = f.add(entry.get((a, b), f.zero()),
                                        f.mul(coeff, f.mul(ca, cb)))
                            if val == 0:
                                entry.pop((a, b), None)
                            else:
                                entry[(a, b)] = val
                if entry:
                    dd[(t, s)] = entry
        if dd:
            diff[p] = dd
    cx = ProjBimodComplex(alg, terms, diff)
    errors = cx.validate()
    if errors:
        raise ParseError("complex", "; ".join(errors[:3]))
    return cx


def content_hash(payload):
    canon = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def cache_dir(args):
    return os.environ.get("CYFOLD_CACHE") or os.path.join(
        args.out_dir or ".", ".cyfold-cache"
    )


def cache_get(directory, key):
    path = os.path.join(directory, key + ".json")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError):
        return None


def cache_put(directory, key, blob):
    try:
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(blob, fh, sort_keys=True)
        os.replace(tmp, os.path.join(directory, key + ".json"))
    except OSError:
        pass  # cache failures degrade to recompute


def write_report(args, report):
    report["schema_version"] = SCHEMA_VERSION
    report["tool"] = f"cyfold {__version__}"
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        path = os.path.join(args.out_dir, "report.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(path, str(exc))
    except ValueError as exc:
        raise ParseError(path, f"invalid JSON: {exc}")


def _field(args):
    return QQ if args.field == "Q" else Field(int(args.field))


def cmd_gen(args):
    out = args.out_dir or "."
    os.makedirs(out, exist_ok=True)
    if args.model == "kronecker":
        alg = presets.kronecker_algebra()
        u = presets.kronecker_root(alg, args.s, args.eps)
        qdoc = quiver_to_doc(alg.quiver)
        udoc = complex_to_doc(u)
        meta = {"model": "kronecker", "s": args.s, "eps": args.eps, "max_len": 3}
    elif args.model == "typeA":
        alg = presets.a2n_algebra(args.n)
        u = presets.a2n_root(alg, args.n, args.d, args.eps)
        qdoc = quiver_to_doc(alg.quiver)
        udoc = complex_to_doc(u)
        meta = {"model": "typeA", "n": args.n, "d": args.d, "eps": args.eps, "max_len": 2}
    elif args.model == "beilinson":
        alg = presets.beilinson_algebra(args.d)
        qdoc = quiver_to_doc(alg.quiver, _beilinson_relations(args.d))
        meta = {"model": "beilinson", "d": args.d, "max_len": args.d + 1}
        if args.d == 1:
            udoc = complex_to_doc(presets.kronecker_root(alg, 0, 1))
        else:
            udoc = None
    elif args.model == "a4mod":
        alg = presets.a4_mod_longest_algebra()
        qdoc = quiver_to_doc(alg.quiver, [Relation([(1, ("a3", "a2", "a1"))])])
        udoc = None
        meta = {"model": "a4mod", "max_len": 3}
    else:
        raise ParseError("gen", f"unknown model {args.model}")
    prefix = args.prefix or args.model
    qpath = os.path.join(out, f"{prefix}_algebra.json")
    with open(qpath, "w", encoding="utf-8") as fh:
        json.dump({"quiver": qdoc, "meta": meta}, fh, indent=2, sort_keys=True)
    paths = {"algebra": qpath}
    if udoc is not None:
        upath = os.path.join(out, f"{prefix}_bimodule.json")
        with open(upath, "w", encoding="utf-8") as fh:
            json.dump(udoc, fh, indent=2, sort_keys=True)
        paths["bimodule"] = upath
    print(json.dumps({"written": paths}, indent=2, sort_keys=True))
    return EXIT_PASS


def _beilinson_relations(d):
    rels = []
    for k in range(d - 1):
        for i in range(d + 1):
            for j in range(i + 1, d + 1):
                rels.append(
                    Relation(
                        [
                            (1, (f"x{i}_{k + 1}", f"x{j}_{k}")),
                            (-1, (f"x{j}_{k + 1}", f"x{i}_{k}")),
                        ]
                    )
                )
    return rels


def _load_pair(args):
    adoc = _load_json(args.algebra)
    field = _field(args)
    max_len = args.max_len or adoc.get("meta", {}).get("max_len", 6)
    alg = doc_to_algebra(adoc["quiver"], max_len, field)
    udoc = _load_json(args.bimodule)
    u = doc_to_complex(udoc, alg)
    hashes = {"algebra": content_hash(adoc), "bimodule": content_hash(udoc)}
    return alg, u, hashes


def _vertex_arg(alg, raw):
    out = []
    for tok in raw.split(","):
        tok = tok.strip()
        for v in alg.vertices:
            if str(v) == tok:
                out.append(v)
                break
        else:
            raise ParseError("--e", f"unknown vertex {tok!r}")
    return out


def cmd_check_root_pair(args):
    t0 = time.monotonic()
    alg, u, hashes = _load_pair(args)
    e_vertices = _vertex_arg(alg, args.e)
    spec = RootPairSpec(
        alg, u, args.a, args.d, e_vertices, trials=args.trials, seed=args.seed
    )
    resolution = resolution_of_algebra(alg, len_bound=12)
    report = check_strict_pair(spec, resolution=resolution)
    k0 = k0_spanning_check(spec)
    cyc, _ = is_cyclically_invariant(
        alg, u, args.a, args.d, resolution=resolution,
        trials=args.trials, seed=args.seed,
    )
    payload = {
        "command": "check-root-pair",
        "inputs": hashes,
        "params": {
            "a": args.a, "d": args.d, "e": [str(v) for v in e_vertices],
            "seed": args.seed, "trials": args.trials, "field": args.field,
        },
        "verdicts": {
            **report.verdicts,
            "k0_spanning": k0,
            "cyclically_invariant": cyc,
        },
        "details": report.as_dict()["details"],
        "timing_s": round(time.monotonic() - t0, 3),
    }
    write_report(args, payload)
    if all(payload["verdicts"].values()):
        return EXIT_PASS
    if not report.verdicts.get("root", True):
        return EXIT_INCONCLUSIVE  # quasi-iso NotFound is not a disproof
    return EXIT_FAIL


def cmd_complete(args):
    t0 = time.monotonic()
    alg, u, hashes = _load_pair(args)
    e_vertices = _vertex_arg(alg, args.e)
    key = content_hash(
        {
            "op": "complete",
            "inputs": hashes,
            "field": args.field,
            "adams_max": args.adams_max,
            "e": [str(v) for v in e_vertices],
        }
    )
    cdir = cache_dir(args)
    cached = cache_get(cdir, key)
    if cached is not None:
        table = {tuple(map(int, k.split(":"))): v for k, v in cached["table"].items()}
        from_cache = True
    else:
        data = completion(alg, u, e_vertices, args.adams_max)
        table = data.table
        cache_put(
            cdir, key,
            {"table": {f"{p}:{l}": d for (p, l), d in table.items()}},
        )
        from_cache = False
    lines = ["cdeg,adams,dim"]
    for (p, l), d in sorted(table.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        lines.append(f"{p},{l},{d}")
    csv_text = "\n".join(lines) + "\n"
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    hilbert = [table.get((0, l), 0) for l in range(args.adams_max + 1)]
    payload = {
        "command": "complete",
        "inputs": hashes,
        "params": {
            "adams_max": args.adams_max, "e": [str(v) for v in e_vertices],
            "field": args.field,
        },
        "hilbert_degree_zero": hilbert,
        "concentrated_in_degree_zero": all(p == 0 for (p, _), d in table.items() if d),
        "cache_hit": from_cache,
        "timing_s": round(time.monotonic() - t0, 3),
    }
    write_report(args, payload)
    return EXIT_PASS


def cmd_fold(args):
    t0 = time.monotonic()
    if args.type != "A":
        raise ParseError("--type", "folding is implemented for type A")
    if args.rank % 2 != 0:
        raise ParseError("--rank", "type A folding needs even rank")
    n = args.rank // 2
    quiver = dynkin_quiver("A", args.rank)
    sl = build_zq(quiver, (-args.window, args.window))
    auto = folded_a2n_auto(n, args.d)
    oq = orbit_quiver(sl, auto)
    dot = oq.dot(f"fold_A{args.rank}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
    payload = {
        "command": "fold",
        "params": {
            "type": args.type, "rank": args.rank, "a": args.a, "d": args.d,
            "window": args.window,
        },
        "fundamental_domain_vertices": len(oq.vertices),
        "arrows": len(oq.arrows),
        "timing_s": round(time.monotonic() - t0, 3),
    }
    write_report(args, payload)
    return EXIT_PASS


def cmd_classify_roots(args):
    t0 = time.monotonic()
    exists, witness = classify_dynkin_roots(args.type, args.rank, args.a, args.window)
    payload = {
        "command": "classify-roots",
        "params": {
            "type": args.type, "rank": args.rank, "a": args.a,
            "window": args.window,
        },
        "root_exists": exists,
        "witness": None if witness is None else {
            "rho": {str(k): str(v) for k, v in witness.rho.items()},
            "shifts": {str(k): v for k, v in witness.shifts.items()},
        },
        "timing_s": round(time.monotonic() - t0, 3),
    }
    write_report(args, payload)
    return EXIT_PASS


def cmd_orbit_hom(args):
    from .cluster import HomTable

    t0 = time.monotonic()
    alg, u, hashes = _load_pair(args)
    e_vertices = _vertex_arg(alg, args.e)
    table = HomTable(args.window)
    verdict_converged = True
    for v in e_vertices:
        for w in e_vertices:
            x = projective_sum(alg, [v])
            y = projective_sum(alg, [w])
            dim, conv = orbit_hom(alg, u, x, y, args.window)
            verdict_converged = verdict_converged and conv
            table.record((v, w), dim, conv)
    csv_text = table.csv()
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    payload = {
        "command": "orbit-hom",
        "inputs": hashes,
        "params": {"e": [str(v) for v in e_vertices], "window": args.window,
                   "field": args.field},
        "converged": verdict_converged,
        "csv": csv_text,
        "timing_s": round(time.monotonic() - t0, 3),
    }
    write_report(args, payload)
    return EXIT_PASS if verdict_converged else EXIT_INCONCLUSIVE


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cyfold",
        description="Exact checks for root pairs, completions, and folded "
        "cluster categories on quiver algebras",
    )
    parser.add_argument("--out-dir", default=None, help="report/artifact directory")
    parser.add_argument("--field", default="Q", help="Q or a prime p")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write built-in example inputs")
    g.add_argument("model", choices=["kronecker", "typeA", "beilinson", "a4mod"])
    g.add_argument("--s", type=int, default=0)
    g.add_argument("--eps", type=int, choices=[1, -1], default=1)
    g.add_argument("--n", type=int, default=1)
    g.add_argument("--d", type=int, default=1)
    g.add_argument("--prefix", default=None)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check-root-pair", help="verify the root-pair axioms")
    c.add_argument("--algebra", required=True)
    c.add_argument("--bimodule", required=True)
    c.add_argument("--a", type=int, required=True)
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--e", required=True, help="comma-separated vertices")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int, default=16)
    c.add_argument("--max-len", type=int, default=None)
    c.set_defaults(func=cmd_check_root_pair)

    m = sub.add_parser("complete", help="completion bidegree table")
    m.add_argument("--algebra", required=True)
    m.add_argument("--bimodule", required=True)
    m.add_argument("--adams-max", type=int, required=True)
    m.add_argument("--e", required=True)
    m.add_argument("--csv", default=None)
    m.add_argument("--max-len", type=int, default=None)
    m.set_defaults(func=cmd_complete)

    fo = sub.add_parser("fold", help="folded fundamental domain as DOT")
    fo.add_argument("--type", default="A")
    fo.add_argument("--rank", type=int, required=True)
    fo.add_argument("--a", type=int, default=2)
    fo.add_argument("--d", type=int, default=1)
    fo.add_argument("--window", type=int, default=12)
    fo.add_argument("--dot", default=None)
    fo.set_defaults(func=cmd_fold)

    cl = sub.add_parser("classify-roots", help="combinatorial root search")
    cl.add_argument("--type", required=True, choices=["A", "D", "E"])
    cl.add_argument("--rank", type=int, required=True)
    cl.add_argument("--a", type=int, required=True)
    cl.add_argument("--window", type=int, default=10)
    cl.set_defaults(func=cmd_classify_roots)

    oh = sub.add_parser("orbit-hom", help="orbit Hom dimension table")
    oh.add_argument("--algebra", required=True)
    oh.add_argument("--bimodule", required=True)
    oh.add_argument("--e", required=True)
    oh.add_argument("--window", type=int, default=6)
    oh.add_argument("--csv", default=None)
    oh.add_argument("--max-len", type=int, default=None)
    oh.set_defaults(func=cmd_orbit_hom)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
