"""Reconcile brute-force ground truth for M(D_n, 2) with the closed forms.

Enumeration is the ground truth and every closed form is a prediction.
Each report row carries a status: ``MATCH`` / ``MISMATCH`` on exact integer
equality, or ``INCONCLUSIVE`` when a solver ran out of budget.  A mismatch is
a normal outcome of the tool, not an error.
"""

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
import json

import numpy as np

from . import formulas, invariants
from .algebra import check_moufang_identities, dihedral_group, moufang_extension
from .errors import DomainError
from .hypergraph import EDGE_SEMANTICS, all_pairs_distances, build, degrees

MATCH = "MATCH"
MISMATCH = "MISMATCH"
INCONCLUSIVE = "INCONCLUSIVE"

PART_NAMES = {"Z": "center", "R": "R", "S": "S"}


def status(computed, predicted, exhausted=False):
    if exhausted:
        return INCONCLUSIVE
    if computed is None or predicted is None:
        return MISMATCH
    if isinstance(predicted, Fraction) and predicted.denominator != 1:
        return MISMATCH
    return MATCH if computed == predicted else MISMATCH


def _jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    return x


# ---------------------------------------------------------------------------
# case breakdown
# ---------------------------------------------------------------------------


def classify_triple(edge, loop_order, base_order):
    """Case id 1..8 of a directed edge of M(G, 2) from its alpha-pattern."""
    if loop_order != 2 * base_order:
        raise DomainError("hypergraph is not built from an M(G,2) loop")
    for v in edge:
        if not 0 <= v < loop_order:
            raise DomainError(f"vertex {v} out of range")
    return formulas.PATTERN_TO_CASE[tuple(int(v >= base_order) for v in edge)]


@dataclass
class CaseBreakdown:
    counts: dict  # case id -> enumerated directed edges

    @property
    def total(self):
        return sum(self.counts.values())


def _require_moufang(h):
    if h.loop is None or not h.loop.provenance.startswith("moufang_extension"):
        raise DomainError("hypergraph is not built from an M(G,2) loop")
    return h.vertex_count // 2


def case_breakdown(h):
    base = _require_moufang(h)
    e = h.directed_edges
    if len(e) == 0:
        return CaseBreakdown({k: 0 for k in range(1, 9)})
    bits = (e >= base).astype(np.int64)
    code = bits[:, 0] * 4 + bits[:, 1] * 2 + bits[:, 2]
    hist = np.bincount(code, minlength=8)
    counts = {}
    for k, (a1, a2, a3) in formulas.CASE_PATTERNS.items():
        counts[k] = int(hist[a1 * 4 + a2 * 2 + a3])
    return CaseBreakdown(counts)


# ---------------------------------------------------------------------------
# degree classes
# ---------------------------------------------------------------------------


def _class_name(alpha, part):
    return f"(g,{alpha}) {PART_NAMES[part]}"


def degree_class_check(h, partition, n=None):
    """One row per vertex class: enumerated degrees against the predicted A..F."""
    base = _require_moufang(h)
    n = base // 2 if n is None else n
    deg = degrees(h)
    parts = {"Z": partition.center, "R": partition.R, "S": partition.S}
    rows = []
    for pred in formulas.predict_degrees(n):
        members = [pred.alpha * base + g for g in sorted(parts[pred.part])]
        directed = Counter(int(deg.directed_degree[v]) for v in members)
        support = Counter(int(deg.support_degree[v]) for v in members)
        uniform = len(directed) == 1
        value = next(iter(directed)) if uniform else None
        row = {
            "label": pred.label,
            "class": _class_name(pred.alpha, pred.part),
            "size": len(members),
            "members": [h.names[v] for v in members],
            "enumerated": value,
            "uniform": uniform,
            "directed_values": sorted(directed.items()),
            "support_values": sorted(support.items()),
            "predicted": pred.value,
            "alternate_predicted": pred.alternate,
            "status": status(value, pred.value),
        }
        if pred.alternate is not None:
            row["alternate_status"] = status(value, pred.alternate)
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# full report
# ---------------------------------------------------------------------------


@dataclass
class VerificationReport:
    n: int
    parity: str
    budget: int
    totals: dict
    cases: list
    degrees: list
    invariants: list
    lemmas: list
    consistency: list = field(default_factory=list)
    matching_polynomial: dict = field(default_factory=dict)
    edge_semantics: str = EDGE_SEMANTICS

    def rows(self):
        yield ("totals", "directed_edges", self.totals)
        for r in self.cases:
            yield ("cases", f"case {r['case_id']}", r)
        for r in self.degrees:
            yield ("degrees", r["class"], r)
        for r in self.invariants:
            yield ("invariants", r["name"], r)
        for r in self.lemmas:
            yield ("lemmas", r["name"], r)
        for r in self.consistency:
            yield ("consistency", r["name"], r)
        if self.matching_polynomial:
            yield ("matching_polynomial", "top_index", self.matching_polynomial)

    def status_counts(self):
        return Counter(r["status"] for _, _, r in self.rows())

    def to_dict(self):
        return _jsonable({
            "n": self.n,
            "parity": self.parity,
            "edge_semantics": self.edge_semantics,
            "budget": self.budget,
            "totals": self.totals,
            "cases": self.cases,
            "degrees": self.degrees,
            "invariants": self.invariants,
            "lemmas": self.lemmas,
            "consistency": self.consistency,
            "matching_polynomial": self.matching_polynomial,
        })


def _budget_for(budgets, name):
    if budgets is None:
        return invariants.default_budget()
    if isinstance(budgets, dict):
        return budgets.get(name, invariants.default_budget())
    return int(budgets)


def run_verification(n, budgets=None):
    """Build M(D_n, 2) and its hypergraph, run every check, assemble the report."""
    if n < 3:
        raise DomainError("D_n nonabelian requires n >= 3")
    group, partition = dihedral_group(n)
    loop = moufang_extension(group)
    h = build(loop)
    V = h.vertex_count

    predicted_total = formulas.predict_total_edges(n)
    enumerated_total = int(len(h.directed_edges))
    totals = {
        "vertex_count": V,
        "enumerated": enumerated_total,
        "predicted": predicted_total,
        "support_edges": int(len(h.support_edges)),
        "status": status(enumerated_total, predicted_total),
    }

    breakdown = case_breakdown(h)
    cases = []
    for pred in formulas.predict_case_counts(n):
        got = breakdown.counts[pred.case_id]
        cases.append({
            "case_id": pred.case_id,
            "pattern": list(pred.pattern),
            "enumerated": got,
            "predicted": pred.count,
            "status": status(got, pred.count),
        })

    degree_rows = degree_class_check(h, partition, n)

    predicted = formulas.predict_invariants(n)
    alternates = predicted.alternates()
    results = {}
    inv_rows = []
    for name in invariants.INVARIANT_NAMES:
        res = invariants.SOLVERS[name](h, _budget_for(budgets, name))
        results[name] = res
        pv = predicted.as_dict()[name]
        row = {
            "name": name,
            "computed": res.value,
            "predicted": pv,
            "alternate_predicted": alternates.get(name),
            "status": status(res.value, pv, res.budget_exhausted),
            "budget_exhausted": res.budget_exhausted,
            "nodes_explored": res.nodes_explored,
            "witness_valid": invariants.verify_witness(h, res),
            "witness": res.witness,
        }
        if name in alternates:
            row["alternate_status"] = status(res.value, alternates[name], res.budget_exhausted)
        inv_rows.append(row)

    a, t = results["alpha"], results["tau"]
    dist = all_pairs_distances(h)
    off = dist[~np.eye(V, dtype=bool)]
    moufang = check_moufang_identities(loop)
    lemmas = [
        {
            "name": "alpha_plus_tau",
            "computed": a.value + t.value,
            "predicted": V,
            "status": status(a.value + t.value, V, a.budget_exhausted or t.budget_exhausted),
        },
        {
            "name": "all_pairs_distance_1",
            "computed": int(off.max()) if off.size and off.min() >= 0 else None,
            "predicted": 1,
            "status": MATCH if off.size and off.min() == 1 and off.max() == 1 else MISMATCH,
        },
        {
            "name": "moufang_identities",
            "computed": moufang.holds,
            "predicted": True,
            "counterexample": moufang.counterexample,
            "status": MATCH if moufang.holds else MISMATCH,
        },
    ]

    consistency = []
    for use_alt, label in ((False, "degree_sum_vs_edges"), (True, "degree_sum_vs_edges_alternate")):
        if use_alt and not any(d.alternate is not None for d in formulas.predict_degrees(n)):
            continue
        lhs, rhs = formulas.degree_sum_check(n, use_alternates=use_alt)
        consistency.append({
            "name": label,
            "computed": lhs,
            "predicted": rhs,
            "status": status(lhs, rhs),
        })

    poly = invariants.matching_polynomial(h, _budget_for(budgets, "matching_poly"))
    nu = results["nu"]
    top_pred = predicted.nu
    matching_poly = {
        "coefficients": list(poly.coefficients),
        "formatted": invariants.format_matching_polynomial(poly),
        "computed": poly.matching_number,
        "predicted": top_pred,
        "agrees_with_nu": (poly.matching_number == nu.value) if not (poly.budget_exhausted or nu.budget_exhausted) else None,
        "budget_exhausted": poly.budget_exhausted,
        "status": status(poly.matching_number, top_pred, poly.budget_exhausted),
    }

    return VerificationReport(
        n=n,
        parity=formulas.parity(n),
        budget=_budget_for(budgets, "alpha") if not isinstance(budgets, dict) else budgets,
        totals=totals,
        cases=cases,
        degrees=degree_rows,
        invariants=inv_rows,
        lemmas=lemmas,
        consistency=consistency,
        matching_polynomial=matching_poly,
    )


def run_range(n_min, n_max, budgets=None, workers=1):
    """Independent reports for ``n_min..n_max``, in ascending ``n``."""
    if not 3 <= n_min <= n_max:
        raise DomainError("need 3 <= n_min <= n_max")
    ns = list(range(n_min, n_max + 1))
    if workers > 1 and len(ns) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run_verification, ns, [budgets] * len(ns)))
    return [run_verification(n, budgets) for n in ns]


def summarize(reports):
    """Totals per status plus the identifiers of every non-MATCH row."""
    counts = Counter()
    flagged = []
    for rep in reports:
        for section, ident, row in rep.rows():
            counts[row["status"]] += 1
            if row["status"] != MATCH:
                flagged.append((rep.n, section, ident, row["status"]))
    return counts, flagged


def exit_code(reports, strict):
    if not strict:
        return 0
    counts, _ = summarize(reports)
    if counts[MISMATCH]:
        return 3
    if counts[INCONCLUSIVE]:
        return 2
    return 0


def reports_to_json(reports):
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


def _fmt(x):
    if x is None:
        return "-"
    if isinstance(x, Fraction):
        return str(int(x)) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(x)


def format_report(rep):
    """Plain-text table form of one report."""
    out = [
        f"== M(D_{rep.n},2)  n={rep.n} ({rep.parity})  |V|={rep.totals['vertex_count']}  budget={rep.budget}",
        f"   edge semantics: {rep.edge_semantics}",
        "",
        f"{'item':<34}{'enumerated':>14}{'predicted':>14}{'alternate':>12}  status",
    ]

    def line(item, got, pred, alt=None, st=""):
        out.append(f"{item:<34}{_fmt(got):>14}{_fmt(pred):>14}{_fmt(alt):>12}  {st}")

    t = rep.totals
    line("directed edges (total)", t["enumerated"], t["predicted"], None, t["status"])
    out.append(f"{'support edges':<34}{t['support_edges']:>14}")
    for r in rep.cases:
        line(f"case {r['case_id']} {tuple(r['pattern'])}", r["enumerated"], r["predicted"], None, r["status"])
    for r in rep.degrees:
        got = r["enumerated"] if r["uniform"] else "non-uniform"
        st = r["status"]
        if "alternate_status" in r:
            st += f" (alt {r['alternate_status']})"
        line(f"deg {r['label']} {r['class']} x{r['size']}", got, r["predicted"], r["alternate_predicted"], st)
        sv = ", ".join(f"{v}x{c}" for v, c in r["support_values"])
        dv = ", ".join(f"{v}x{c}" for v, c in r["directed_values"])
        out.append(f"{'':<4}directed {dv}; support {sv}")
    for r in rep.invariants:
        st = r["status"]
        if "alternate_status" in r:
            st += f" (alt {r['alternate_status']})"
        st += f"  nodes={r['nodes_explored']} witness={'ok' if r['witness_valid'] else 'INVALID'}"
        line(f"invariant {r['name']}", r["computed"], r["predicted"], r["alternate_predicted"], st)
    for r in rep.lemmas:
        line(f"lemma {r['name']}", r["computed"], r["predicted"], None, r["status"])
    for r in rep.consistency:
        line(f"check {r['name']}", r["computed"], r["predicted"], None, r["status"])
    mp = rep.matching_polynomial
    if mp:
        line("matching poly top index", mp["computed"], mp["predicted"], None, mp["status"])
        out.append(f"{'':<4}a_k = {mp['coefficients']}")
    counts = rep.status_counts()
    out.append("")
    out.append(f"summary: {counts[MATCH]} match, {counts[MISMATCH]} mismatch, {counts[INCONCLUSIVE]} inconclusive")
    return "\n".join(out) + "\n"
