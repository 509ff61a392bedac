"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 budget exceeded,
3 a mathematical invariant failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from . import __version__
from .betti import (
    betti_profile,
    irreducibility_criterion,
    is_palindromic,
    poincare_polynomial,
    witness_partition,
)
from .bijection import CellBijection, nilpotent_complement, unique_weyl_rep
from .errors import BudgetExceeded, InvalidInput, InvariantViolation
from .hessenberg import (
    borel,
    from_type_a_function,
    from_vectors,
    full,
    height_cutoff,
    weyl_type_subsets,
)
from .report import SCHEMA_VERSION, dumps, root_vectors, simple_labels, space_dict, sweep_text, word
from .rootsys import build_root_system, members, parse_label
from .verify import DEFAULT_ORACLE_MAX_M, run_sweep, sweep_systems
from .weyl import DEFAULT_MAX_ORDER, WeylGroup

log = logging.getLogger("hessbetti")

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_hess(rs, value: str):
    """Parse ``full``, ``borel``, ``height:<h>``, ``afunc:<h1,...>`` or ``roots:<json>``."""
    text = value.strip()
    kind, _, arg = text.partition(":")
    kind = kind.lower()
    try:
        if kind == "full" and not arg:
            return full(rs)
        if kind == "borel" and not arg:
            return borel(rs)
        if kind == "height":
            return height_cutoff(rs, int(arg))
        if kind == "afunc":
            return from_type_a_function(rs, [int(x) for x in arg.split(",")])
        if kind == "roots":
            vectors = json.loads(arg)
            if not isinstance(vectors, list):
                raise InvalidInput("roots: expects a JSON list of coefficient vectors")
            return from_vectors(rs, vectors)
    except (ValueError, TypeError) as exc:
        if isinstance(exc, InvalidInput):
            raise
        raise InvalidInput(f"cannot parse Hessenberg space {value!r}: {exc}") from exc
    raise InvalidInput(
        f"unknown Hessenberg space {value!r}; use full, borel, height:<h>, afunc:<h1,...> "
        "or roots:<json list>"
    )


def parse_j(rs, value: str) -> frozenset[int]:
    """Parse ``all``, ``none`` or comma-separated 1-based simple root indices."""
    text = value.strip().lower()
    if text == "all":
        return frozenset(range(rs.rank))
    if text in ("none", ""):
        return frozenset()
    try:
        picked = [int(x) for x in text.split(",")]
    except ValueError:
        raise InvalidInput(f"cannot parse J {value!r}; use all, none or e.g. 1,3") from None
    for j in picked:
        if not 1 <= j <= rs.rank:
            raise InvalidInput(f"simple root index {j} out of range 1..{rs.rank}")
    return frozenset(j - 1 for j in picked)


def _job(args):
    type_label, rank = parse_label(args.system)
    rs = build_root_system(type_label, rank)
    space = parse_hess(rs, args.hess)
    js = parse_j(rs, args.j)
    return rs, space, js


def _header(command, rs, space, js):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "system": rs.label,
        "hess": space_dict(space),
        "j": simple_labels(js),
    }


def cmd_roots(args):
    rs = build_root_system(*parse_label(args.system))
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "roots",
        "system": rs.label,
        "cartan": [list(row) for row in rs.cartan],
        "roots": [{"index": i, "vector": list(v), "height": sum(v)} for i, v in enumerate(rs.roots)],
    }
    if args.format == "json":
        return dumps(doc)
    lines = [f"{rs.label}: {len(rs.roots)} roots, {rs.npos} positive"]
    lines.append("cartan: " + " ".join("[" + " ".join(map(str, r)) + "]" for r in rs.cartan))
    for r in doc["roots"]:
        lines.append(f"{r['index']:4d}  height {r['height']:3d}  {r['vector']}")
    return "\n".join(lines) + "\n"


def cmd_betti(args):
    rs, space, js = _job(args)
    group = WeylGroup(rs, args.max_order)
    profile = betti_profile(group, js, space)
    irreducible = irreducibility_criterion(group, space)
    doc = _header("betti", rs, space, js)
    doc.update({
        "m_h": space.m_h,
        "counts": list(profile.counts),
        "poincare": poincare_polynomial(profile.counts),
        "palindromic": is_palindromic(profile),
        "irreducible": irreducible,
    })
    if args.format == "json":
        return dumps(doc)
    return (
        f"system: {rs.label}\n"
        f"hessenberg: {json.dumps(space.vectors())}\n"
        f"J: {simple_labels(js)}\n"
        f"m_H: {space.m_h}\n"
        f"profile: {','.join(map(str, profile.counts))}\n"
        f"poincare: {doc['poincare']}\n"
        f"palindromic: {'yes' if doc['palindromic'] else 'no'}\n"
        f"irreducible: {'yes' if irreducible else 'no'}\n"
    )


def cmd_weyl_type(args):
    rs, space, js = _job(args)
    group = WeylGroup(rs, args.max_order)
    part = witness_partition(group, js, space)
    sizes = {s.mask: len(ws) for s, ws in part.blocks.items()}
    rows = []
    for s in weyl_type_subsets(group, space):
        rep = unique_weyl_rep(group, space, s)
        rows.append({
            "subset": root_vectors(rs, s.members),
            "size": len(s),
            "representative": word(rep),
            "block_size": sizes.get(s.mask, 0),
        })
    doc = _header("weyl-type", rs, space, js)
    doc["subsets"] = rows
    if args.format == "json":
        return dumps(doc)
    lines = [f"{rs.label} H={json.dumps(space.vectors())} J={simple_labels(js)}: "
             f"{len(rows)} subsets of Weyl type"]
    for r in rows:
        lines.append(f"|S|={r['size']} rep={r['representative']} |W(J,S)|={r['block_size']} "
                     f"S={json.dumps(r['subset'])}")
    return "\n".join(lines) + "\n"


def cmd_bijection(args):
    rs, space, js = _job(args)
    group = WeylGroup(rs, args.max_order)
    fmap = CellBijection(group, space, js)
    ks = fmap.k_set
    hm = space.mask
    part = witness_partition(group, js, space)
    part_k = witness_partition(group, ks, space)
    k_sizes = {s.mask: len(ws) for s, ws in part_k.blocks.items()}
    full_j = len(js) == rs.rank
    blocks = []
    for s in weyl_type_subsets(group, space):
        comp = hm & ~s.mask
        ws = part.blocks.get(s, [])
        pairs = []
        for w in ws:
            rec = fmap.record(w)
            if full_j and nilpotent_complement(group, space, w) != rec.target:
                raise InvariantViolation(f"map disagrees with the nilpotent complement at {w}")
            pairs.append({
                "w": word(rec.source),
                "w_bar": word(rec.target),
                "w0w": word(rec.w0w),
                "y": word(rec.y),
                "v": word(rec.v),
                "levi_space": root_vectors(rs, rec.levi_space.neg_roots),
                "y_bar": word(rec.ybar),
            })
        targets = [tuple(p["w_bar"]) for p in pairs]
        if len(set(targets)) != len(targets):
            raise InvariantViolation(f"map is not injective on the block of {s.members}")
        if len(ws) != k_sizes.get(comp, 0):
            raise InvariantViolation(
                f"|W(J,S)| = {len(ws)} but |W(K,S^c)| = {k_sizes.get(comp, 0)}")
        blocks.append({
            "subset": root_vectors(rs, s.members),
            "complement": root_vectors(rs, members(comp)),
            "pairs": pairs,
        })
    doc = _header("bijection", rs, space, js)
    doc.update({"k": simple_labels(ks), "blocks": blocks})
    if args.format == "json":
        return dumps(doc)
    lines = [f"{rs.label} H={json.dumps(space.vectors())} J={simple_labels(js)} K={simple_labels(ks)}"]
    for b in blocks:
        lines.append(f"S={json.dumps(b['subset'])} -> S^c={json.dumps(b['complement'])}: "
                     f"{len(b['pairs'])} pairs")
        for p in b["pairs"]:
            lines.append(
                f"  {p['w']} -> {p['w_bar']}   w0w={p['w0w']} y={p['y']} v={p['v']} "
                f"H_v={json.dumps(p['levi_space'])} y_bar={p['y_bar']}"
            )
    return "\n".join(lines) + "\n"


def cmd_verify(args):
    extra = [parse_label(x) for x in args.extra.split(",") if x.strip()] if args.extra else []
    systems = sweep_systems(args.max_rank, args.types, extra)
    if not systems:
        raise InvalidInput("no root systems selected")
    start = time.perf_counter()
    doc = run_sweep(systems, jobs=args.jobs, max_order=args.max_order,
                    oracle_max_m=args.oracle_max_m)
    log.info("verified %d cases in %.1fs", doc["case_count"], time.perf_counter() - start)
    text = dumps(doc) if args.format == "json" else sweep_text(doc)
    return text, (EXIT_OK if doc["ok"] else EXIT_INVARIANT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hessbetti", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hessbetti {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                       help="refuse Weyl groups larger than this")

    p = sub.add_parser("roots", help="dump the root table")
    p.add_argument("system")
    common(p)

    for name, help_text in [("betti", "Betti numbers of one regular Hessenberg variety"),
                            ("weyl-type", "subsets of Weyl type and witness block sizes"),
                            ("bijection", "explicit matching W(J,S) -> W(K,S^c)")]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("system", help="root system label, e.g. A2, B3, G2")
        p.add_argument("--hess", default="full",
                       help="full | borel | height:<h> | afunc:<h1,...> | roots:<json>")
        p.add_argument("--j", default="all", help="all | none | 1-based indices, e.g. 1,3")
        common(p)

    p = sub.add_parser("verify", help="exhaustive verification sweep")
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--types", default="ABCDEFG", help="type letters to include")
    p.add_argument("--extra", default="", help="additional systems, e.g. F4")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--oracle-max-m", type=int, default=DEFAULT_ORACLE_MAX_M,
                   help="brute-force Weyl-type oracle for spaces with m_H up to this")
    common(p)
    return parser


COMMANDS = {
    "roots": cmd_roots,
    "betti": cmd_betti,
    "weyl-type": cmd_weyl_type,
    "bijection": cmd_bijection,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        result = COMMANDS[args.command](args)
    except InvalidInput as exc:
        print(f"hessbetti: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"hessbetti: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"hessbetti: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
