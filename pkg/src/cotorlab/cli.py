"""cotorlab command line.

    cotorlab series mul --kind dirichlet --bound 8 f.txt g.txt
    cotorlab cotor --coalgebra div --trunc 8 --nmax 4
    cotorlab verify suspension --quiver crown.qv --nmax 2

JSON on stdout (one object per line), TSV with --tsv.  Exit status 0 on
success, 1 when a verification fails, 2 on bad input.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from . import coalgebra as co
from . import combinat as cb
from . import series as se
from . import theorems as th
from .errors import CotorlabError, ParseError, UnknownLabel, UnknownVertex, VerificationFailed
from .homology import (
    cobar_complex,
    ext_dims,
    hochschild_complex,
    hochschild_reduced,
    incidence_point_comodule,
    regular_bimodule,
    simple_bimodule,
    simplicial_cohomology,
)

# ---------------------------------------------------------------------------
# input formats


def parse_poset_text(text):
    """Lines `x < y` (covers or any relations); `#` starts a comment.

    A line holding a single label declares an isolated element.
    """
    labels, pairs = [], []
    seen = set()

    def note(x):
        if x not in seen:
            seen.add(x)
            labels.append(x)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "<" in line:
            parts = [p.strip() for p in line.split("<")]
            if any(not p or " " in p for p in parts):
                raise ParseError(f"malformed relation {raw.strip()!r}", lineno)
            for p in parts:
                note(p)
            pairs.extend(zip(parts, parts[1:]))
        elif " " in line:
            raise ParseError(f"expected `x < y`, got {raw.strip()!r}", lineno)
        else:
            note(line)
    return cb.build_poset(labels, pairs)


def parse_quiver_text(text):
    """Lines `vertex v` and `arrow name: x -> y`; `#` starts a comment."""
    vertices, arrows, names = [], [], set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "vertex":
            if not rest or " " in rest:
                raise ParseError(f"bad vertex line {raw.strip()!r}", lineno)
            if rest in vertices:
                raise ParseError(f"duplicate vertex {rest!r}", lineno)
            vertices.append(rest)
        elif head == "arrow":
            name, colon, body = rest.partition(":")
            src, arrow, tgt = body.partition("->")
            name, src, tgt = name.strip(), src.strip(), tgt.strip()
            if not colon or not arrow or not name or not src or not tgt:
                raise ParseError(f"bad arrow line {raw.strip()!r}", lineno)
            if name in names:
                raise ParseError(f"duplicate arrow name {name!r}", lineno)
            for v in (src, tgt):
                if v not in vertices:
                    raise UnknownLabel(f"line {lineno}: arrow {name!r} uses undeclared vertex {v!r}")
            names.add(name)
            arrows.append((name, src, tgt))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    return cb.Quiver(tuple(vertices), tuple(arrows))


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _builtin_poset(name):
    table = {"diamond": cb.diamond, "crown": cb.crown}
    if name in table:
        return table[name]()
    for prefix, fn in (("chain", cb.chain), ("antichain", cb.antichain), ("boolean", cb.boolean_lattice), ("fence", cb.fence)):
        if name.startswith(prefix) and name[len(prefix) :].isdigit():
            return fn(int(name[len(prefix) :]))
    raise UnknownLabel(f"no builtin poset {name!r}")


def _builtin_quiver(name):
    if name == "crown":
        return cb.crown_quiver()
    if name == "point":
        return cb.Quiver(("v",), ())
    if name.startswith("linear") and name[6:].isdigit():
        return cb.linear_quiver(int(name[6:]))
    raise UnknownLabel(f"no builtin quiver {name!r}")


def parse_poset_file(path):
    if path.startswith("builtin:"):
        return _builtin_poset(path[8:])
    return parse_poset_text(_read(path))


def parse_quiver_file(path):
    if path.startswith("builtin:"):
        return _builtin_quiver(path[8:])
    return parse_quiver_text(_read(path))


def read_series_file(path, kind, bound, q):
    text = _read(path).strip()
    if "kind=" in text:
        s = se.parse_series(text)
        if s.kind != kind or s.bound != bound or s.q != q:
            raise ParseError(f"{path}: series header does not match --kind/--bound/--q")
        return s
    coeffs = [Fraction(tok) for tok in text.replace(",", " ").split()]
    s = se.make_series(kind, coeffs, q)
    if s.bound != bound:
        raise ParseError(f"{path}: {len(coeffs)} coefficients do not fit --bound {bound}")
    return s


# ---------------------------------------------------------------------------
# report output


def read_reports(text):
    """Inverse of the JSON output: a list of dicts, one per non-empty line."""
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def _tsv_value(v):
    if isinstance(v, (list, tuple)):
        return ",".join(_tsv_value(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return "" if v is None else str(v)


class Emitter:
    def __init__(self, out, tsv=False, timings=True):
        self.out = out
        self.tsv = tsv
        self.timings = timings

    def emit(self, obj):
        obj = dict(obj)
        if not self.timings:
            obj.pop("timings_ms", None)
            obj.pop("elapsed_ms", None)
        if self.tsv:
            keys = sorted(obj)
            self.out.write("\t".join(keys) + "\n")
            self.out.write("\t".join(_tsv_value(obj[k]) for k in keys) + "\n")
        else:
            self.out.write(json.dumps(obj, sort_keys=True, default=str) + "\n")


def _ms(t0):
    return round((time.perf_counter() - t0) * 1000, 3)


# ---------------------------------------------------------------------------
# verbs


def cmd_series(args, em):
    q = Fraction(args.q) if args.q is not None else None
    if args.op == "id":
        s = se.identity_series(args.kind, args.bound, q)
    elif args.op == "zeta":
        s = se.zeta_series(args.kind, args.bound, q)
    elif args.op == "inv":
        if len(args.files) != 1:
            raise ParseError("series inv takes one file")
        s = se.invert(read_series_file(args.files[0], args.kind, args.bound, q))
    else:
        if len(args.files) != 2:
            raise ParseError("series mul takes two files")
        f, g = (read_series_file(p, args.kind, args.bound, q) for p in args.files)
        s = se.convolve(f, g)
    em.emit(
        {
            "object": "series",
            "op": args.op,
            "kind": s.kind,
            "bound": s.bound,
            "q": None if s.q is None else str(s.q),
            "coeffs": [str(c) for c in s.coeffs],
        }
    )
    return 0


def _poset_summary(P):
    ivs = cb.enumerate_intervals(P)
    return {
        "elements": [str(x) for x in P],
        "covers": sorted([str(x), str(y)] for x, y in P.covers),
        "intervals": len(ivs),
        "height": P.height(),
        "connected": P.is_connected(),
        "forest": cb.is_forest_hasse(P),
    }


def cmd_poset(args, em):
    P = parse_poset_file(args.file)
    if len(P) > args.poset_cap:
        raise CotorlabError(f"poset has {len(P)} elements > --poset-cap {args.poset_cap}")
    if args.nerve:
        t0 = time.perf_counter()
        dims = simplicial_cohomology(cb.order_complex(P), args.nmax, reduced=args.reduced)
        em.emit(
            {"object": args.file, "tool": "simplicial", "dims": dims, "degree_cap": None,
             "n_max": args.nmax, "timings_ms": [_ms(t0)]}
        )
        return 0
    out = {"object": args.file, "tool": "poset"}
    out.update(_poset_summary(P))
    if args.mobius:
        mu = se.mobius(P)
        out["mobius"] = {f"{x},{y}": str(v) for (x, y), v in sorted(mu.values.items(), key=repr)}
    if args.types:
        T = se.interval_types(P, cap=args.poset_cap)
        out["types"] = len(T)
        out["order_compatible"] = se.check_order_compatible(T)[0]
    em.emit(out)
    return 0


def cmd_quiver(args, em):
    Q = parse_quiver_file(args.file)
    ordered = cb.is_ordered_quiver(Q)
    out = {
        "object": args.file,
        "tool": "quiver",
        "vertices": list(Q.vertices),
        "arrows": [list(a) for a in Q.arrows],
        "ordered": ordered,
        "sources": Q.sources(),
        "sinks": Q.sinks(),
    }
    if ordered:
        P = cb.poset_from_ordered_quiver(cb.suspend_quiver(Q) if args.suspend else Q)
        out["poset"] = _poset_summary(P)
    em.emit(out)
    return 0 if ordered or not args.require_ordered else 1


def _coalgebra_from_args(args):
    kind, N = args.coalgebra, args.trunc
    if kind == "div":
        return co.div_coalgebra(N)
    if kind == "bin":
        return co.bin_coalgebra(N)
    if kind == "binq":
        return co.binq_coalgebra(N, Fraction(args.q or 2))
    if kind == "dir":
        return co.dir_coalgebra(args.m, N)
    if kind == "poly":
        return co.polynomial_coalgebra(args.m, N)
    if kind == "incidence":
        if not args.poset:
            raise ParseError("--coalgebra incidence needs --poset")
        return co.full_incidence_coalgebra(parse_poset_file(args.poset))
    if kind == "graph":
        base = co.complete(N) if args.graph == "complete" else co.edgeless(N)
        return co.graph_coalgebra([base])
    raise ParseError(f"unknown coalgebra {kind!r}")


def cmd_coalgebra(args, em):
    C = _coalgebra_from_args(args)
    bad = C.check_axioms()
    if args.dump and not args.tsv:
        for line in C.dump():
            em.out.write(line + "\n")
    else:
        em.emit({"object": C.name, "tool": "coalgebra", "dim": len(C), "axioms_ok": not bad,
                 "violations": bad, "dump": C.dump() if args.dump else None})
    return 0 if not bad else 1


def cmd_cotor(args, em):
    t0 = time.perf_counter()
    C = _coalgebra_from_args(args)
    cap = args.degree_cap
    if C.exact_through is not None and cap is not None:
        cap = min(cap, C.exact_through)
    build = 0.0
    if C.is_normalized():
        K = cobar_complex(C, n_max=args.nmax, degree_cap=cap)
        build = _ms(t0)
        dims = K.dims()
        extra = {"by_degree": {str(k): v for k, v in K.dims_by_degree().items()}} if args.by_degree else {}
    else:
        P = C.poset
        cap = None
        dims = [0] * (args.nmax + 1)
        for x in P:
            for y in P:
                if args.source is not None and str(x) != args.source:
                    continue
                if args.target is not None and str(y) != args.target:
                    continue
                K = cobar_complex(
                    C, incidence_point_comodule(C, x, "right"), incidence_point_comodule(C, y, "left"),
                    n_max=args.nmax, reduced=False,
                )
                dims = [a + b for a, b in zip(dims, K.dims())]
        build = _ms(t0)
        extra = {}
    out = {"object": C.name, "tool": "cotor", "dims": dims, "degree_cap": cap, "n_max": args.nmax,
           "timings_ms": [build, _ms(t0)]}
    out.update(extra)
    em.emit(out)
    return 0


def _algebra_and_poset(args):
    if args.quiver:
        Q = parse_quiver_file(args.quiver)
        if args.suspend:
            Q = cb.suspend_quiver(Q)
        P = cb.poset_from_ordered_quiver(Q)
        label = args.quiver
    elif args.poset:
        P = parse_poset_file(args.poset)
        label = args.poset
    else:
        raise ParseError("need --poset or --quiver")
    if len(P) > args.poset_cap:
        raise CotorlabError(f"poset has {len(P)} elements > --poset-cap {args.poset_cap}")
    return co.incidence_algebra(P), P, label


def _vertex(P, name):
    for x in P:
        if str(x) == name:
            return x
    raise UnknownVertex(f"{name!r} is not a vertex")


def cmd_hh(args, em):
    t0 = time.perf_counter()
    A, P, label = _algebra_and_poset(args)
    if args.module == "regular":
        M = regular_bimodule(A)
    else:
        if args.a is None or args.b is None:
            raise ParseError("--module simple needs --a and --b")
        M = simple_bimodule(A, _vertex(P, args.a), _vertex(P, args.b))
    if args.method == "full":
        H = hochschild_complex(A, M, args.nmax)
    else:
        H = hochschild_reduced(A, M, args.nmax)
    build = _ms(t0)
    dims = H.dims()
    em.emit({"object": label, "tool": "hh", "dims": dims, "degree_cap": None, "n_max": args.nmax,
             "method": args.method if args.method == "full" else "reduced",
             "cochain_dims": H.cochain_dims(), "timings_ms": [build, _ms(t0)]})
    return 0


def cmd_ext(args, em):
    t0 = time.perf_counter()
    A, P, label = _algebra_and_poset(args)
    a = _vertex(P, args.a) if args.a is not None else None
    b = _vertex(P, args.b) if args.b is not None else None
    if a is None or b is None:
        raise ParseError("ext needs --a and --b (with --suspend the new vertices are a and b)")
    dims = ext_dims(A, a, b, args.nmax, method=args.method)
    em.emit({"object": label, "tool": "ext", "dims": dims, "degree_cap": None, "n_max": args.nmax,
             "a": args.a, "b": args.b, "timings_ms": [_ms(t0)]})
    return 0


CORPUS_POSETS = [
    ("chain1", lambda: cb.chain(1)),
    ("chain2", lambda: cb.chain(2)),
    ("chain3", lambda: cb.chain(3)),
    ("chain4", lambda: cb.chain(4)),
    ("antichain2", lambda: cb.antichain(2)),
    ("antichain3", lambda: cb.antichain(3)),
    ("diamond", cb.diamond),
    ("crown", cb.crown),
    ("boolean3", lambda: cb.boolean_lattice(3)),
    ("fence4", lambda: cb.fence(4)),
    ("fence5", lambda: cb.fence(5)),
    ("chain2+chain3", lambda: cb.disjoint_union(cb.chain(2), cb.chain(3))),
]

CORPUS_QUIVERS = [
    ("point", lambda: cb.Quiver(("v",), ())),
    ("arrow", lambda: cb.linear_quiver(2)),
    ("linear3", lambda: cb.linear_quiver(3)),
    ("crown", cb.crown_quiver),
]


def _coextension(name, m, D):
    if name == "dirichlet":
        return co.dirichlet_coextension(m, D)
    if name == "point":
        return co.point_coextension(cb.chain(2))
    if name == "identity":
        return co.identity_coextension(co.div_coalgebra(D))
    raise ParseError(f"unknown coextension {name!r}")


def _verify_reports(args):
    which = args.check
    n = args.nmax
    if which == "thm-exp":
        return [th.check_thm_exp(args.N, n, q=Fraction(args.q or 2), degree_cap=args.degree_cap)]
    if which == "fundamental3":
        return [th.check_fundamental3(args.m, args.D, n)]
    if which == "z-lemma":
        E = _coextension(args.coextension, args.m, args.D)
        return [th.check_z_lemma(E, n, args.degree_cap)]
    if which in ("duality", "gs"):
        if not args.poset:
            raise ParseError(f"verify {which} needs --poset")
        P = parse_poset_file(args.poset)
        return [th.check_duality(P, n) if which == "duality" else th.check_gs(P, n)]
    if which in ("suspension", "eta-sequence"):
        if not args.quiver:
            raise ParseError(f"verify {which} needs --quiver")
        Q = parse_quiver_file(args.quiver)
        return [th.check_suspension(Q, n) if which == "suspension" else th.check_eta_sequence(Q, n)]
    if which == "all":
        reps = [th.check_thm_exp(8, 4)]
        reps += [th.check_fundamental3(m, 5, 4) for m in (1, 2, 3)]
        reps += [th.check_z_lemma(co.dirichlet_coextension(1, 4), 3, 4),
                 th.check_z_lemma(co.point_coextension(cb.chain(2)), 3),
                 th.check_z_lemma(co.identity_coextension(co.div_coalgebra(4)), 3, 4)]
        reps += [th.check_duality(P(), 3) for _, P in CORPUS_POSETS[:3]] + [th.check_duality(cb.diamond(), 3)]
        reps += [th.check_gs(P(), 3) for _, P in CORPUS_POSETS]
        reps += [th.check_suspension(Q(), 2) for _, Q in CORPUS_QUIVERS]
        reps += [th.check_eta_sequence(Q(), 2) for _, Q in CORPUS_QUIVERS]
        return reps
    raise ParseError(f"unknown check {which!r}")


def cmd_verify(args, em):
    ok = True
    for rep in _verify_reports(args):
        em.emit(rep.to_dict(timings=em.timings))
        ok = ok and rep.passed
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="cotorlab", description="Incidence (co)algebras, Cotor and Hochschild cohomology.")
    p.add_argument("--tsv", action="store_true", help="tab separated output instead of JSON")
    p.add_argument("--no-timings", action="store_true", help="omit timing fields (byte-stable output)")
    p.add_argument("--poset-cap", type=int, default=10, help="largest poset accepted (default 10)")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("series", help="truncated series arithmetic")
    s.add_argument("op", choices=["mul", "inv", "id", "zeta"])
    s.add_argument("files", nargs="*")
    s.add_argument("--kind", required=True, choices=list(se.KINDS))
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--q", default=None, help="rational q for eulerian series")

    s = sub.add_parser("poset", help="summarize a poset file")
    s.add_argument("file", help="poset file or builtin:NAME")
    s.add_argument("--mobius", action="store_true")
    s.add_argument("--types", action="store_true", help="interval types and order compatibility")
    s.add_argument("--nerve", action="store_true", help="cohomology of the order complex")
    s.add_argument("--reduced", action="store_true")
    s.add_argument("--nmax", type=int, default=4)

    s = sub.add_parser("quiver", help="summarize a quiver file")
    s.add_argument("file", help="quiver file or builtin:NAME")
    s.add_argument("--suspend", action="store_true")
    s.add_argument("--require-ordered", action="store_true", help="exit 1 if the quiver is not ordered")

    coalg = argparse.ArgumentParser(add_help=False)
    coalg.add_argument("--coalgebra", required=True, choices=["div", "bin", "binq", "dir", "poly", "incidence", "graph"])
    coalg.add_argument("--trunc", type=int, default=8, help="truncation degree (graph: vertex count)")
    coalg.add_argument("--q", default=None)
    coalg.add_argument("--m", type=int, default=1, help="number of primes / variables")
    coalg.add_argument("--poset", default=None)
    coalg.add_argument("--graph", choices=["complete", "edgeless"], default="complete")

    s = sub.add_parser("coalgebra", parents=[coalg], help="build and check a coalgebra")
    s.add_argument("--dump", action="store_true")

    s = sub.add_parser("cotor", parents=[coalg], help="Cotor dims by the cobar complex")
    s.add_argument("--nmax", type=int, default=4)
    s.add_argument("--degree-cap", type=int, default=12)
    s.add_argument("--by-degree", action="store_true")
    s.add_argument("--source", default=None, help="incidence: vertex x of k_x")
    s.add_argument("--target", default=None, help="incidence: vertex y of k_y")

    alg = argparse.ArgumentParser(add_help=False)
    alg.add_argument("--poset", default=None)
    alg.add_argument("--quiver", default=None)
    alg.add_argument("--suspend", action="store_true")
    alg.add_argument("--nmax", type=int, default=4)

    s = sub.add_parser("hh", parents=[alg], help="Hochschild cohomology of an incidence algebra")
    s.add_argument("--module", choices=["regular", "simple"], default="regular")
    s.add_argument("--a", default=None)
    s.add_argument("--b", default=None)
    s.add_argument("--method", choices=["reduced", "full"], default="reduced")

    s = sub.add_parser("ext", parents=[alg], help="Ext(k_a, k_b) over an incidence algebra")
    s.add_argument("--a", default=None)
    s.add_argument("--b", default=None)
    s.add_argument("--method", choices=["reduced", "full"], default="reduced")

    s = sub.add_parser("verify", help="run theorem checks")
    s.add_argument("check", choices=["thm-exp", "fundamental3", "z-lemma", "duality", "gs", "suspension", "eta-sequence", "all"])
    s.add_argument("--poset", default=None)
    s.add_argument("--quiver", default=None)
    s.add_argument("--N", type=int, default=8)
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--D", type=int, default=5)
    s.add_argument("--q", default=None)
    s.add_argument("--nmax", type=int, default=4)
    s.add_argument("--degree-cap", type=int, default=12)
    s.add_argument("--coextension", choices=["dirichlet", "point", "identity"], default="dirichlet")
    return p


COMMANDS = {
    "series": cmd_series,
    "poset": cmd_poset,
    "quiver": cmd_quiver,
    "coalgebra": cmd_coalgebra,
    "cotor": cmd_cotor,
    "hh": cmd_hh,
    "ext": cmd_ext,
    "verify": cmd_verify,
}


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra:
        # `series mul --kind k --bound n f g`: files may follow the options
        if args.verb == "series" and not any(x.startswith("-") for x in extra):
            args.files = list(args.files) + extra
        else:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
    em = Emitter(out, tsv=args.tsv, timings=not args.no_timings)
    try:
        return COMMANDS[args.verb](args, em)
    except VerificationFailed as exc:
        err.write(f"verification failed: {exc}\n")
        return 1
    except (CotorlabError, ValueError, OSError, KeyError, IndexError, ZeroDivisionError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main(argv=None):
    try:
        code = run(argv)
    except SystemExit as exc:  # argparse
        code = exc.code
    sys.exit(code)


if __name__ == "__main__":
    main()
