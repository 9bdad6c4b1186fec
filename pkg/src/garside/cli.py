"""Command line interface.

Words and subsets use 1-based digit strings ("121", "[1,3]"); "e" or "" is
the identity.  Results go to stdout (or ``--out``) only after the whole
command has succeeded.  Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from . import braid as br
from . import conjcat, periodic, ribbon, verify
from .coxeter import CoxeterError, CoxeterSystem, ParseError, build_system

HUGE_ORDER = 1_000_000


class UsageError(Exception):
    pass


def emit_json(result) -> str:
    return json.dumps(result, sort_keys=True) + "\n"


def emit_dot(graph: conjcat.CategoryGraph) -> str:
    return conjcat.to_dot(graph)


# ---------------------------------------------------------------------------
# argument helpers

def _system(text: str) -> CoxeterSystem:
    return build_system(text)


def _braid(W: CoxeterSystem, text: str) -> br.BraidElement:
    return br.from_word(W, text)


def _subset(W: CoxeterSystem, text: str | None) -> frozenset[int]:
    return frozenset() if text is None else W.parse_subset(text)


def _automorphism(W: CoxeterSystem, text: str | None) -> tuple[int, ...] | None:
    """'none', 'phi' (conjugation by Delta), 'sigma' (the diagram automorphism
    of the type), 'phi-inv', or an explicit 1-based image list such as 4,3,2,1."""
    if text is None or text == "none":
        return None
    if text in ("phi", "phi-inv"):
        sig = tuple(W.delta_sigma)
        if text == "phi-inv":
            inv = [0] * len(sig)
            for i, j in enumerate(sig):
                inv[j] = i
            sig = tuple(inv)
        return sig
    if text == "sigma":
        return tuple(W.sigma)
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if sorted(parts) != sorted(str(i + 1) for i in range(W.rank)):
        raise ParseError(f"automorphism {text!r} is not a permutation of 1..{W.rank}")
    sig = tuple(int(p) - 1 for p in parts)
    W.automorphism_perm(sig)
    return sig


def _subset_list(subset) -> list[int]:
    return [s + 1 for s in sorted(subset)]


def _check_size(W: CoxeterSystem, allow_huge: bool) -> None:
    if W.order > HUGE_ORDER and not allow_huge:
        raise UsageError(f"{W.tag} has order {W.order}; pass --allow-huge to run this computation")


# ---------------------------------------------------------------------------
# commands

def cmd_normal(args) -> str:
    W = _system(args.type)
    return f"{_braid(W, args.word)}\n"


def cmd_gcd(args) -> str:
    W = _system(args.type)
    a, b = _braid(W, args.a), _braid(W, args.b)
    g = br.right_gcd(a, b) if args.right else br.left_gcd(a, b)
    return f"{g}\n"


def cmd_lcm(args) -> str:
    W = _system(args.type)
    a, b = _braid(W, args.a), _braid(W, args.b)
    m = br.left_lcm(a, b) if args.left else br.right_lcm(a, b)
    return f"{m}\n"


def cmd_divides(args) -> str:
    W = _system(args.type)
    a, b = _braid(W, args.a), _braid(W, args.b)
    if not br.divides(a, b, args.side):
        return "false\n"
    return f"true\n{br.quotient(a, b, args.side)}\n"


def cmd_ribbon_alpha(args) -> str:
    W = _system(args.type)
    subset = _subset(W, args.subset)
    alpha, omega = ribbon.alpha_I(subset, _braid(W, args.word))
    return f"alpha: {alpha}\nomega: {omega}\n"


def cmd_ribbon_atoms(args) -> str:
    W = _system(args.type)
    subset = _subset(W, args.subset)
    if args.orbit:
        return "".join(f"{ribbon.subset_str(W, J)}\n" for J in ribbon.orbit(W, subset))
    return "".join(f"{m}\n" for m in ribbon.atoms_from(W, subset))


def _object(W: CoxeterSystem, args) -> conjcat.ConjObject:
    return conjcat.ConjObject(_braid(W, args.word), _subset(W, args.source), _automorphism(W, args.twist))


def cmd_conj_graph(args) -> str:
    W = _system(args.type)
    obj = _object(W, args)
    graph = conjcat.explore_component(obj, _automorphism(W, args.fixed), args.max_nodes)
    if args.dot is not None:
        text = emit_dot(graph)
        if args.dot != "-":
            with open(args.dot, "w") as fh:
                fh.write(text)
            return ""
        return text
    if args.json:
        return conjcat.emit_json(graph) + "\n"
    return "".join(f"{label}\n" for label in graph.node_words())


def cmd_endo_gens(args) -> str:
    W = _system(args.type)
    obj = _object(W, args)
    gens = conjcat.endo_generators(obj, args.bound, _automorphism(W, args.fixed), args.max_nodes)
    return "".join(f"{g}\n" for g in gens)


def cmd_periodic_check(args) -> str:
    W = _system(args.type)
    b = _braid(W, args.word)
    if args.subset is None:
        subset = periodic.infer_subset(b, args.d)
        ok = subset is not None
    else:
        subset = _subset(W, args.subset)
        ok = periodic.is_periodic(subset, b, args.d)
    result = {"braid": str(b), "d": args.d, "periodic": ok,
              "I": None if subset is None else _subset_list(subset)}
    if ok and len(b.factors) <= 1:
        checks = periodic.goodness_checks(W, b.image(), subset, args.d)
        result["good"] = all(v for k, v in checks.items() if k != "maximal")
        result["maximal"] = checks["maximal"]
    return emit_json(result)


def cmd_slide(args) -> str:
    W = _system(args.type)
    b = _braid(W, args.word)
    subset = _subset(W, args.subset) if args.subset is not None else periodic.infer_subset(b, args.d)
    if subset is None:
        raise periodic.NotPeriodic(f"{b} is not periodic for d={args.d}")
    conj, obj = periodic.slide_to_good(subset, b, args.d)
    return emit_json({"conjugator": str(conj), "braid": str(obj.braid), "I": _subset_list(obj.source)})


def _table(W: CoxeterSystem, d: int, args) -> periodic.GoodTable:
    return periodic.classify_good(W, d, limit=args.limit, seed=args.seed, relative=args.relative)


def cmd_good(args) -> str:
    W = _system(args.type)
    if args.word is not None:
        if args.d is None:
            raise UsageError("--word needs --d")
        cert = periodic.certify(W, args.word, _subset(W, args.subset), args.d)
        if args.relative:
            periodic.relative_section(cert)
        return emit_json(cert.describe())
    if args.all:
        _check_size(W, args.allow_huge)
        ds = periodic.admissible_orders(W)
        with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
            tables = list(pool.map(lambda d: _table(W, d, args), ds))
        rows = [dict(r.to_dict(), d=t.d) for t in tables for r in t.rows]
        return emit_json({"type": str(W.tag), "rows": rows})
    if args.d is None:
        raise UsageError("good needs --d, --all or --word")
    if args.count or args.enumerate:
        _check_size(W, args.allow_huge)
        table = _table(W, args.d, args)
        out = table.to_dict()
        out["count"] = table.total
        if args.count and not args.enumerate:
            for row in out["rows"]:
                row.pop("representatives")
        return emit_json(out)
    if periodic.coset_zeta_rank(W, 1, args.d) == 0:
        raise periodic.NotAdmissible(f"zeta_{args.d} has no eigenvector on {W.tag}")
    cert = periodic.find_good(W, args.d, seed=args.seed)
    if args.relative:
        periodic.relative_section(cert)
    return emit_json(cert.describe())


def cmd_restrict(args) -> str:
    W = _system(args.type)
    cert = periodic.restriction_of_scalars(W, args.n, args.d, seed=args.seed)
    out = cert.describe()
    out["factors"] = args.n
    return emit_json(out)


def cmd_poset_check(args) -> str:
    W = _system(args.type)
    if args.up_to is not None:
        results = []
        for g in verify.braids_up_to(W, args.up_to):
            if not g.factors:
                continue
            ev = verify.check_simply_connected_evidence(verify.decomposition_poset(g, args.bound))
            results.append({"braid": str(g), "connected": ev["connected"], "h1_rank": ev["h1_rank"]})
        ok = all(r["connected"] and r["h1_rank"] == 0 for r in results)
        return emit_json({"all_ok": ok, "checked": len(results), "results": results})
    g = _braid(W, args.word)
    poset = verify.decomposition_poset(g, args.bound)
    ev = verify.check_simply_connected_evidence(poset)
    ev["braid"] = str(g)
    ev["factorizations"] = [list(e) for e in poset.words()]
    return emit_json(ev)


# ---------------------------------------------------------------------------
# parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--max-nodes", type=int, default=10**6, help="exploration cap for graphs")
    common.add_argument("--tolerance", type=float, default=None, help="singular value cutoff for eigenspaces")
    common.add_argument("--allow-huge", action="store_true", help="permit class enumeration in E7/E8")
    common.add_argument("--threads", type=int, default=1, help="worker threads (output does not depend on it)")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="garside", description="Garside structures of finite Coxeter groups")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("normal", parents=[common], help="left greedy normal form")
    p.add_argument("type")
    p.add_argument("word")
    p.set_defaults(func=cmd_normal)

    p = sub.add_parser("gcd", parents=[common], help="left (or right) gcd")
    p.add_argument("type")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--right", action="store_true")
    p.set_defaults(func=cmd_gcd)

    p = sub.add_parser("lcm", parents=[common], help="right (or left) lcm")
    p.add_argument("type")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--left", action="store_true")
    p.set_defaults(func=cmd_lcm)

    p = sub.add_parser("divides", parents=[common], help="divisibility and quotient")
    p.add_argument("type")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.set_defaults(func=cmd_divides)

    p = sub.add_parser("ribbon-alpha", parents=[common], help="alpha_I and omega_I of a braid")
    p.add_argument("type")
    p.add_argument("subset")
    p.add_argument("word")
    p.set_defaults(func=cmd_ribbon_alpha)

    p = sub.add_parser("ribbon-atoms", parents=[common], help="atoms out of a subset")
    p.add_argument("type")
    p.add_argument("subset")
    p.add_argument("--orbit", action="store_true", help="list the objects of the ribbon category instead")
    p.set_defaults(func=cmd_ribbon_atoms)

    for name, func, text in (("conj-graph", cmd_conj_graph, "component of the cyclic conjugacy category"),
                             ("endo-gens", cmd_endo_gens, "indecomposable endomorphisms of an object")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("type")
        p.add_argument("word")
        p.add_argument("--source", help="source subset of the object")
        p.add_argument("--twist", help="automorphism twisting the object: phi, phi-inv, sigma or a permutation")
        p.add_argument("--fixed", help="only use conjugators fixed by this automorphism")
        if name == "conj-graph":
            p.add_argument("--dot", nargs="?", const="-", help="DOT output (to a path, or - for stdout)")
            p.add_argument("--json", action="store_true")
        else:
            p.add_argument("--bound", type=int, default=4, help="canonical length bound")
        p.set_defaults(func=func)

    p = sub.add_parser("periodic-check", parents=[common], help="test (b phi)^d = pi/pi_I")
    p.add_argument("type")
    p.add_argument("word")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--subset")
    p.set_defaults(func=cmd_periodic_check)

    p = sub.add_parser("slide", parents=[common], help="cyclically conjugate a periodic braid to a good one")
    p.add_argument("type")
    p.add_argument("word")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--subset")
    p.set_defaults(func=cmd_slide)

    p = sub.add_parser("good", parents=[common], help="find, certify, count or enumerate good elements")
    p.add_argument("type")
    p.add_argument("--d", type=int)
    p.add_argument("--word", help="certify this element")
    p.add_argument("--subset", help="subset I for --word")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--all", action="store_true", help="table over every admissible d")
    p.add_argument("--enumerate", action="store_true", help="include representatives")
    p.add_argument("--limit", type=int, default=5, help="representatives per row")
    p.add_argument("--relative", action="store_true", help="compute relative group orders")
    p.set_defaults(func=cmd_good)

    p = sub.add_parser("restrict", parents=[common], help="good element of W^n with the shifting twist")
    p.add_argument("type")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("poset-check", parents=[common], help="connectivity and H1 of E(g)")
    p.add_argument("type")
    p.add_argument("word", nargs="?", default="")
    p.add_argument("--bound", type=int, default=verify.DEFAULT_ATOM_BOUND, help="atom length bound")
    p.add_argument("--up-to", type=int, help="check every braid up to this atom length")
    p.set_defaults(func=cmd_poset_check)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
        if args.tolerance is not None:
            periodic.DEFAULT_TOL = args.tolerance
        text = args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except CoxeterError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    finally:
        periodic.DEFAULT_TOL = _DEFAULT_TOL
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


_DEFAULT_TOL = periodic.DEFAULT_TOL


def main() -> None:
    sys.exit(run())
