"""Serialization of roots, elements and reports.

Roots serialize as coefficient vectors, Weyl elements as reduced words of
1-based simple reflection indices, and subsets J as 1-based index lists.
"""

from __future__ import annotations

import json

from .hessenberg import HessenbergSpace
from .weyl import WeylElement

SCHEMA_VERSION = 1


def word(w: WeylElement) -> list[int]:
    return [j + 1 for j in w.word]


def root_vectors(rs, indices) -> list[list[int]]:
    return sorted(list(rs.roots[g]) for g in indices)


def simple_labels(subset) -> list[int]:
    return [j + 1 for j in sorted(subset)]


def space_dict(space: HessenbergSpace) -> dict:
    return {"neg_roots": space.vectors(), "m_h": space.m_h}


def dumps(doc: dict) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def sweep_text(doc: dict) -> str:
    lines = [f"hessbetti {doc['tool_version']} verification sweep (schema {doc['schema_version']})"]
    for s in doc["systems"]:
        lines.append(
            f"  {s['system']}: {s['roots']} roots, |W| = {s['weyl_order']}, "
            f"{s['hessenberg_spaces']} Hessenberg spaces, {s['cases']} cases"
        )
    lines.append(f"cases: {doc['case_count']}  checks: {doc['check_count']}  "
                 f"violations: {len(doc['violations'])}")
    for rec in doc["records"]:
        lines.append(
            f"{rec['system']} H={json.dumps(rec['hess'])} J={rec['j']} K={rec['k']} "
            f"m_H={rec['m_h']} betti={' '.join(map(str, rec['counts']))} "
            f"palindromic={'yes' if rec['palindromic'] else 'no'} "
            f"irreducible={'yes' if rec['irreducible'] else 'no'} "
            f"roundtrip={rec['roundtrip'][0]}/{rec['roundtrip'][1]}"
        )
    for v in doc["violations"]:
        lines.append("VIOLATION " + json.dumps(v, sort_keys=True))
    lines.append("PASS" if doc["ok"] else "FAIL")
    return "\n".join(lines) + "\n"
