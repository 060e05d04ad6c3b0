"""Command-line front end: ``thompsonkit <command> ...``.

Elements are given in the one-line text form ``TREE ; PERM ; TREE`` or as
JSON; ``-`` (or no argument) reads the first non-empty line of stdin, so
``thompsonkit family order_c 45 | thompsonkit order`` works.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import core, families, houghton, langtools, metric, rotation
from . import order as order_mod

EXIT_PARSE = 2
EXIT_DOMAIN = 1


class ParseError(Exception):
    pass


def _read_element(text: str | None) -> core.TreePair:
    if text is None or text == "-":
        lines = [ln for ln in sys.stdin.read().splitlines() if ln.strip()]
        if not lines:
            raise ParseError("no element on stdin")
        text = lines[0]
    try:
        return core.parse_element(text)
    except (core.TreePairError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(exc)) from exc


def _read_grammar(path: str) -> langtools.Cfg:
    try:
        return langtools.parse_grammar(_read_file(path))
    except langtools.GrammarError as exc:
        raise ParseError(str(exc)) from exc


def _read_nfa(path: str) -> langtools.Nfa:
    try:
        return langtools.load_nfa(_read_file(path))
    except (json.JSONDecodeError, langtools.GrammarError) as exc:
        raise ParseError(str(exc)) from exc


def order_json(res) -> dict:
    if isinstance(res, order_mod.Finite):
        return {"order": res.order, "finite": True}
    if isinstance(res, order_mod.Infinite):
        return {"order": None, "finite": False, "orbit_lengths": list(res.orbit_lengths)}
    return {"order": None, "finite": None, "cap": res.cap}


# pgrowth

BUILTIN_TABLES = ("trivial", "a1", "x0y", "thompson")


def generator_table(source: str) -> core.GeneratorTable:
    """A built-in table name or a JSON file mapping names to elements."""
    if source == "trivial":
        return core.GeneratorTable()
    if source == "a1":
        return core.GeneratorTable({"a1": families.torsion_a(1)})
    if source in ("x0y", "thompson"):
        t = families.derive_generators()
        if source == "x0y":
            return core.GeneratorTable({"x0": t["x0"], "y": t["y"]})
        return core.GeneratorTable({k: t[k] for k in ("x0", "y", "f", "g2", "t2")})
    try:
        obj = json.loads(_read_file(source))
        return core.GeneratorTable({k: core.parse_element(v) if isinstance(v, str)
                                    else core.from_json(v) for k, v in obj.items()})
    except (json.JSONDecodeError, AttributeError, core.TreePairError) as exc:
        raise ParseError(f"bad generator table {source!r}: {exc}") from exc


def ball(table: core.GeneratorTable, radius: int) -> list[list[core.TreePair]]:
    """Elements by word length (spheres), deduplicated by reduced form."""
    gens = []
    for name in table:
        g = table[name]
        gens += [g, core.inverse(g)]
    e = core.identity()
    seen = {e.key}
    spheres = [[e]]
    for _ in range(radius):
        nxt = []
        for g in spheres[-1]:
            for s in gens:
                h = core.compose(g, s).reduced
                if h.key not in seen:
                    seen.add(h.key)
                    nxt.append(h)
        spheres.append(nxt)
    return spheres


def pgrowth(table: core.GeneratorTable, radius: int) -> list[tuple[int, int]]:
    """(r, largest finite order among elements of length <= r)."""
    rows, best = [], 1
    for r, sphere in enumerate(ball(table, radius)):
        for g in sphere:
            res = order_mod.order(g)
            if isinstance(res, order_mod.Finite):
                best = max(best, res.order)
        rows.append((r, best))
    return rows


# commands

def _emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_order(args):
    res = order_mod.order(_read_element(args.element))
    _emit(args, str(res), order_json(res))


def cmd_torsion(args):
    t = order_mod.is_torsion(_read_element(args.element))
    _emit(args, "true" if t else "false", {"torsion": t})


def cmd_rotation(args):
    r = rotation.rotation_number(_read_element(args.element))
    _emit(args, str(r), {"num": r.num, "den": r.den})


def cmd_classify(args):
    c = core.classify(_read_element(args.element))
    _emit(args, c, {"group": c})


def cmd_reduce(args):
    g = _read_element(args.element).reduced
    _emit(args, core.to_text(g), core.to_json(g))


def cmd_compose(args):
    g = core.compose(_read_element(args.first), _read_element(args.second)).reduced
    _emit(args, core.to_text(g), core.to_json(g))


def cmd_length_bound(args):
    row = metric.table_row(_read_element(args.element))
    cols = ("leaves", "rising", "lds", "shuffle_norm", "bound")
    text = ",".join(cols) + "\n" + ",".join(str(row[c]) for c in cols)
    _emit(args, text, row)


def cmd_family(args):
    try:
        g = families.family(args.name, args.k)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    res = order_mod.order(g)
    _emit(args, f"{core.to_text(g)}\norder {res}", {"element": core.to_json(g), **order_json(res)})


def cmd_dot(args):
    G = order_mod.to_cylinder(_read_element(args.element))
    if args.reduced:
        G = order_mod.reduce_strands(G)
    if args.json:
        print(json.dumps(order_mod.to_dict(G), sort_keys=True))
    else:
        sys.stdout.write(order_mod.export_dot(G))


def cmd_random(args):
    rng = random.Random(args.seed)
    for _ in range(args.count):
        g = core.random_element(args.leaves, rng, args.group)
        _emit(args, core.to_text(g), core.to_json(g))


def cmd_landau(args):
    if args.primes:
        try:
            primes = [int(x) for x in args.primes.split(",") if x.strip()]
        except ValueError as exc:
            raise ParseError(f"bad prime list {args.primes!r}") from exc
        v = houghton.landau_restricted(args.n, primes)
    else:
        v = houghton.landau(args.n)
    _emit(args, str(v), {"n": args.n, "value": v})


def _hword(text: str) -> list[str]:
    try:
        return houghton.parse_hword(text)
    except (core.TreePairError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def cmd_houghton_order(args):
    g = houghton.evaluate_hword(_hword(" ".join(args.word)))
    res = houghton.horder(g)
    _emit(args, str(res), {**order_json(res), "shift": g.shift, "cycles": [list(c) for c in g.cycles()]})


def cmd_houghton_witness(args):
    w = houghton.witness_word(*args.parts)
    g = houghton.evaluate_hword(w)
    res = houghton.horder(g)
    _emit(args, f"{' '.join(w)}\nlength {len(w)}\n{g}\norder {res}",
          {"word": w, "length": len(w), "shift": g.shift, **order_json(res)})


def cmd_cfg_cnf(args):
    C = langtools.to_cnf(_read_grammar(args.grammar))
    _emit(args, C.to_text().rstrip("\n"), _cfg_json(C))


def cmd_cfg_intersect(args):
    I = langtools.intersect_regular(_read_grammar(args.grammar), _read_nfa(args.nfa))
    _emit(args, I.to_text().rstrip("\n"), _cfg_json(I))


def cmd_cfg_unary_period(args):
    G = langtools.unary_project(_read_grammar(args.grammar))
    bits = langtools.derivable_lengths(G, args.bound)
    res = langtools.minimal_eventual_period(bits, args.bound)
    if isinstance(res, langtools.Inconclusive):
        _emit(args, str(res), {"inconclusive": True, "bound": args.bound})
        return EXIT_DOMAIN
    _emit(args, f"preperiod {res.preperiod} period {res.period}",
          {"preperiod": res.preperiod, "period": res.period, "table": [int(x) for x in res.table]})


def cmd_cfg_cowp_order(args):
    A = _read_nfa(args.nfa)
    w = args.word.split() if " " in args.word.strip() else list(args.word.strip())
    bad = [x for x in w if x not in A.alphabet]
    if bad:
        raise ParseError(f"letters not in the alphabet: {bad}")
    res = langtools.order_from_cowp(A, w)
    _emit(args, str(res), order_json(res))


def _cfg_json(G: langtools.Cfg) -> dict:
    return {"variables": list(G.variables), "alphabet": list(G.alphabet), "start": G.start,
            "rules": [[a, list(w)] for a, w in G.rules]}


def cmd_pgrowth(args):
    rows = pgrowth(generator_table(args.gens), args.radius)
    if args.json:
        print(json.dumps({"lower_bound": True, "rows": [{"radius": r, "max_order": m} for r, m in rows]}))
        return
    print("# lower bound on period growth: largest finite order in the ball")
    print("radius,max_order")
    for r, m in rows:
        print(f"{r},{m}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thompsonkit", description="Orders and rotation numbers in Thompson's groups.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    sub = p.add_subparsers(dest="command", required=True)

    def elt(name, fn, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("element", nargs="?", default="-")
        s.set_defaults(func=fn)
        return s

    elt("order", cmd_order, "order of an element")
    elt("torsion", cmd_torsion, "is the order finite")
    elt("rotation", cmd_rotation, "rotation number of an element of T")
    elt("classify", cmd_classify, "smallest of F, T, V containing the element")
    elt("reduce", cmd_reduce, "reduced tree pair")
    elt("length-bound", cmd_length_bound, "LDS-based word length bound")
    d = elt("dot", cmd_dot, "strand diagram in DOT format")
    d.add_argument("--reduced", action="store_true", help="run the reduction first")

    s = sub.add_parser("compose", help="product, first element acting first")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("family", help="named family member")
    s.add_argument("name", help=", ".join(families.FAMILIES))
    s.add_argument("k", type=int)
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("random", help="seeded random elements")
    s.add_argument("--leaves", type=int, default=8)
    s.add_argument("--group", choices=("F", "T", "V"), default="V")
    s.add_argument("--count", type=int, default=1)
    s.set_defaults(func=cmd_random)

    s = sub.add_parser("landau", help="largest order in Sym(n)")
    s.add_argument("n", type=int)
    s.add_argument("--primes", help="comma-separated allowed prime divisors")
    s.set_defaults(func=cmd_landau)

    h = sub.add_parser("houghton", help="Houghton's group H2").add_subparsers(dest="hcmd", required=True)
    s = h.add_parser("order", help="order of a word in a, t")
    s.add_argument("word", nargs="+")
    s.set_defaults(func=cmd_houghton_order)
    s = h.add_parser("witness", help="short word with given cycle lengths")
    s.add_argument("parts", type=int, nargs="+")
    s.set_defaults(func=cmd_houghton_witness)

    c = sub.add_parser("cfg", help="grammar tools").add_subparsers(dest="ccmd", required=True)
    s = c.add_parser("cnf", help="Chomsky normal form")
    s.add_argument("grammar")
    s.set_defaults(func=cmd_cfg_cnf)
    s = c.add_parser("intersect", help="intersect a grammar with an automaton")
    s.add_argument("grammar")
    s.add_argument("nfa")
    s.set_defaults(func=cmd_cfg_intersect)
    s = c.add_parser("unary-period", help="eventual period of the length set")
    s.add_argument("grammar")
    s.add_argument("--bound", type=int, default=256)
    s.set_defaults(func=cmd_cfg_unary_period)
    s = c.add_parser("cowp-order", help="order from a co-word-problem automaton")
    s.add_argument("nfa")
    s.add_argument("word")
    s.set_defaults(func=cmd_cfg_cowp_order)

    s = sub.add_parser("pgrowth", help="largest finite order by ball radius")
    s.add_argument("--gens", required=True, help=f"{', '.join(BUILTIN_TABLES)} or a JSON file")
    s.add_argument("--radius", type=int, required=True)
    s.set_defaults(func=cmd_pgrowth)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args) or 0
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (rotation.NotInT, families.ValidationFailed, ArithmeticError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
