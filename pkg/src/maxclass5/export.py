"""Report builders and file exporters for the CLI surface."""

from __future__ import annotations

from .classify import classify_by_transfers, family_label
from .engine import PcGroup
from .errors import SizeGuard
from .structure import (lower_central_series, maximal_subgroups,
                        structure_report, two_step_centralizer)
from .transfer import transfer_general, triviality_fingerprint

MUL_TABLE_MAX_N = 4


def transfer_report(G: PcGroup) -> dict:
    """Per maximal subgroup: generator images of V into gamma_2, triviality."""
    series = lower_central_series(G)
    gamma2 = series.term(2)
    subs = maximal_subgroups(G, series)
    out = []
    for i, H in enumerate(subs, start=1):
        tmap = transfer_general(G, H, gamma2)
        head = next(g for g in H.generators if not gamma2.contains(g))
        out.append({"index": i, "head": str(head),
                    "images": tmap.images_json(),
                    "trivial": tmap.trivial})
    return {"descriptor": G.descriptor(), "subgroups": out}


def classify_report(G: PcGroup) -> dict:
    res = classify_by_transfers(G)
    label = family_label(G)
    return {"descriptor": G.descriptor(),
            "label": label.text,
            "fingerprint": [bool(b) for b in res.fingerprint],
            "matched": {pid: sorted(l.text for l in labels)
                        for pid, labels in res.matched},
            "predicted": sorted(l.text for l in res.predicted),
            "diagnostic": res.diagnostic}


def export_json(G: PcGroup) -> dict:
    return {"descriptor": G.descriptor(),
            "structure": structure_report(G).to_dict()}


def export_dot(G: PcGroup) -> str:
    """Subgroup diagram: G above the six maximal subgroups above gamma_2,
    with transfer-triviality annotations on the descending edges."""
    series = lower_central_series(G)
    subs = maximal_subgroups(G, series)
    chi2 = two_step_centralizer(G, series, subs)
    fp = triviality_fingerprint(G)
    lines = ["digraph subgroup_transfers {",
             '  rankdir="TB";',
             '  node [shape=box];',
             f'  G [label="G (order 5^{G.n})"];']
    for i, H in enumerate(subs, start=1):
        mark = ", chi2" if H.same_as(chi2) else ""
        lines.append(f'  H{i} [label="H_{i} (order 5^{G.n - 1}{mark})"];')
    lines.append(f'  gamma2 [label="gamma_2 (order 5^{G.n - 2})"];')
    for i in range(1, 7):
        lines.append(f"  G -> H{i};")
    for i in range(1, 7):
        verdict = "trivial" if fp[i - 1] else "nontrivial"
        lines.append(f'  H{i} -> gamma2 [label="V {verdict}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_multiplication_table(G: PcGroup) -> str:
    """CSV: one row per element, entries are packed product ids."""
    if G.n > MUL_TABLE_MAX_N:
        raise SizeGuard(
            f"multiplication table export limited to n <= {MUL_TABLE_MAX_N}")
    ids = G.all_ids()
    rows = ["id," + ",".join(str(int(v)) for v in ids)]
    for u in ids:
        prods = G.kern.mul_batch(u, ids)
        rows.append(str(int(u)) + "," + ",".join(str(int(p)) for p in prods))
    return "\n".join(rows) + "\n"
