"""Exact hypergraph invariants with optimality certificates.

All solvers work on the support hypergraph (unordered 3-sets) and use Python
ints as vertex/edge bitmasks.  Search effort is bounded by a node budget
rather than wall-clock time so that results are reproducible; when the
budget runs out the best value found so far is returned with
``budget_exhausted=True``.  Ties are always broken towards the lowest index.
"""

from dataclasses import dataclass, field
import os
from typing import Any

from .errors import DomainError, InfeasibleError

DEFAULT_BUDGET = 50_000_000

INVARIANT_NAMES = ("alpha", "tau", "rho", "nu", "chi", "chi_strong")


def default_budget():
    """Node budget per solver; ``AHG_BUDGET`` overrides the built-in default."""
    raw = os.environ.get("AHG_BUDGET")
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    value = int(raw)
    if value < 1:
        raise DomainError("AHG_BUDGET must be >= 1")
    return value


@dataclass
class InvariantResult:
    name: str
    value: int
    witness: Any
    nodes_explored: int
    budget_exhausted: bool = False

    @property
    def optimal(self):
        return not self.budget_exhausted


@dataclass
class MatchingPolynomial:
    coefficients: tuple
    vertex_count: int
    nodes_explored: int = 0
    budget_exhausted: bool = False

    @property
    def matching_number(self):
        nz = [k for k, a in enumerate(self.coefficients) if a]
        return nz[-1] if nz else 0


class _Exhausted(Exception):
    pass


@dataclass
class _Counter:
    limit: int
    nodes: int = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise _Exhausted


def _bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _popcount(mask):
    return bin(mask).count("1")


def _budget(budget):
    b = default_budget() if budget is None else int(budget)
    if b < 1:
        raise DomainError("budget must be >= 1")
    return _Counter(b)


@dataclass
class _Structure:
    """Derived lookup tables shared by the solvers."""

    m: int
    masks: tuple
    edges: tuple  # vertex triples
    incident: list = field(default_factory=list)  # vertex -> edge indices
    partner: list = field(default_factory=list)  # partner[a][b] = mask of c with {a,b,c} an edge


def _structure(h):
    m = h.vertex_count
    edges = tuple(tuple(int(v) for v in e) for e in h.support_edges)
    incident = [[] for _ in range(m)]
    partner = [[0] * m for _ in range(m)]
    for k, (a, b, c) in enumerate(edges):
        for v in (a, b, c):
            incident[v].append(k)
        partner[a][b] |= 1 << c
        partner[b][a] |= 1 << c
        partner[a][c] |= 1 << b
        partner[c][a] |= 1 << b
        partner[b][c] |= 1 << a
        partner[c][b] |= 1 << a
    return _Structure(m, h.support_masks, edges, incident, partner)


# ---------------------------------------------------------------------------
# witness checks
# ---------------------------------------------------------------------------


def is_independent(h, vertices):
    s = sum(1 << v for v in set(vertices))
    return all(e & s != e for e in h.support_masks)


def is_transversal(h, vertices):
    s = sum(1 << v for v in set(vertices))
    return all(e & s for e in h.support_masks)


def is_cover(h, edge_ids):
    union = 0
    for k in edge_ids:
        union |= h.support_masks[k]
    return union == (1 << h.vertex_count) - 1


def is_matching(h, edge_ids):
    used = 0
    for k in edge_ids:
        e = h.support_masks[k]
        if used & e:
            return False
        used |= e
    return True


def is_weak_coloring(h, coloring):
    return all(len({coloring[a], coloring[b], coloring[c]}) > 1 for a, b, c in h.support_edges.tolist())


def is_strong_coloring(h, coloring):
    return all(len({coloring[a], coloring[b], coloring[c]}) == 3 for a, b, c in h.support_edges.tolist())


def verify_witness(h, result):
    """Polynomial-time check that ``result.witness`` certifies ``result.value``."""
    w = result.witness
    if result.name == "alpha":
        return len(set(w)) == result.value and is_independent(h, w)
    if result.name == "tau":
        return len(set(w)) == result.value and is_transversal(h, w)
    if result.name == "rho":
        return len(set(w)) == result.value and is_cover(h, w)
    if result.name == "nu":
        return len(set(w)) == result.value and is_matching(h, w)
    if result.name == "chi":
        return len(w) == h.vertex_count and len(set(w)) == result.value and is_weak_coloring(h, w)
    if result.name == "chi_strong":
        return len(w) == h.vertex_count and len(set(w)) == result.value and is_strong_coloring(h, w)
    raise DomainError(f"unknown invariant {result.name!r}")


# ---------------------------------------------------------------------------
# independence number
# ---------------------------------------------------------------------------


def _clique_partition_bound(cand, partner):
    """Upper bound on |I & cand| for an independent I.

    Greedily split ``cand`` into groups in which every 3 vertices form an
    edge; an independent set takes at most 2 vertices from such a group.
    """
    bound = 0
    rest = cand
    while rest:
        a = (rest & -rest).bit_length() - 1
        rest ^= 1 << a
        group = [a]
        second = 0
        for b in _bits(rest):
            if partner[a][b] & rest:
                second = b
                break
        else:
            bound += 1
            continue
        rest ^= 1 << second
        group.append(second)
        common = partner[a][second] & rest
        while common:
            c = (common & -common).bit_length() - 1
            for u in group:
                common &= partner[u][c]
            group.append(c)
            rest ^= 1 << c
            common &= rest
        bound += min(len(group), 2)
    return bound


def independence_number(h, budget=None):
    """Largest vertex set containing no support edge."""
    st = _structure(h)
    m, partner = st.m, st.partner
    counter = _budget(budget)

    # greedy lower bound
    best = []
    chosen = 0
    for v in range(m):
        if not any(partner[v][u] & chosen for u in _bits(chosen)):
            chosen |= 1 << v
            best.append(v)
    best_set = list(best)

    def search(ind, size, cand):
        nonlocal best_set
        counter.tick()
        if size > len(best_set):
            best_set = _bits(ind)
        if not cand:
            return
        if size + _popcount(cand) <= len(best_set):
            return
        if size + _clique_partition_bound(cand, partner) <= len(best_set):
            return
        v = (cand & -cand).bit_length() - 1
        rest = cand ^ (1 << v)
        # include v: drop candidates that would complete an edge with v and a member
        blocked = 0
        for w in _bits(rest):
            if partner[v][w] & ind:
                blocked |= 1 << w
        search(ind | (1 << v), size + 1, rest & ~blocked)
        search(ind, size, rest)

    exhausted = False
    try:
        search(0, 0, (1 << m) - 1)
    except _Exhausted:
        exhausted = True
    return InvariantResult("alpha", len(best_set), sorted(best_set), counter.nodes, exhausted)


# ---------------------------------------------------------------------------
# transversal number
# ---------------------------------------------------------------------------


def _disjoint_packing(masks):
    used = 0
    count = 0
    for e in masks:
        if not used & e:
            used |= e
            count += 1
    return count


def transversal_number(h, budget=None):
    """Smallest vertex set meeting every support edge (direct hitting-set search)."""
    st = _structure(h)
    masks = st.masks
    m = st.m
    counter = _budget(budget)

    # greedy upper bound: complement of a greedy maximal independent set
    chosen = 0
    for v in range(m):
        if not any(st.partner[v][u] & chosen for u in _bits(chosen)):
            chosen |= 1 << v
    best = _bits(((1 << m) - 1) & ~chosen)
    if not masks:
        best = []

    def search(tr, size, excluded):
        nonlocal best
        counter.tick()
        uncovered = [e for e in masks if not e & tr]
        if not uncovered:
            if size < len(best):
                best = _bits(tr)
            return
        if size + max(1, _disjoint_packing(uncovered)) >= len(best):
            return
        pick = None
        pick_free = 4
        for e in uncovered:
            free = e & ~excluded
            c = _popcount(free)
            if c == 0:
                return
            if c < pick_free:
                pick, pick_free = free, c
                if c == 1:
                    break
        done = 0
        for v in _bits(pick):
            search(tr | (1 << v), size + 1, excluded | done)
            done |= 1 << v

    exhausted = False
    try:
        search(0, 0, 0)
    except _Exhausted:
        exhausted = True
    return InvariantResult("tau", len(best), sorted(best), counter.nodes, exhausted)


# ---------------------------------------------------------------------------
# covering number
# ---------------------------------------------------------------------------


def covering_number(h, budget=None):
    """Fewest support edges whose union is the whole vertex set.

    Raises :class:`InfeasibleError` when a vertex lies in no edge.
    """
    st = _structure(h)
    m, masks, incident = st.m, st.masks, st.incident
    for v in range(m):
        if not incident[v]:
            raise InfeasibleError(f"vertex {v} ({h.names[v]}) lies in no edge; no cover exists")
    counter = _budget(budget)
    full = (1 << m) - 1
    if m == 0:
        return InvariantResult("rho", 0, [], 0, False)

    # greedy upper bound
    covered, greedy = 0, []
    while covered != full:
        k = max(range(len(masks)), key=lambda i: (_popcount(masks[i] & ~covered), -i))
        greedy.append(k)
        covered |= masks[k]
    best = sorted(greedy)

    def search(covered, chosen, banned):
        nonlocal best
        counter.tick()
        if covered == full:
            if len(chosen) < len(best):
                best = sorted(chosen)
            return
        left = _popcount(full & ~covered)
        if len(chosen) + -(-left // 3) >= len(best):
            return
        # least-covered uncovered vertex: fewest usable edges
        target, options = None, None
        for v in _bits(full & ~covered):
            opts = [k for k in incident[v] if not banned >> k & 1]
            if target is None or len(opts) < len(options):
                target, options = v, opts
                if not opts:
                    return
        options.sort(key=lambda k: (-_popcount(masks[k] & ~covered), k))
        for k in options:
            chosen.append(k)
            search(covered | masks[k], chosen, banned)
            chosen.pop()
            banned |= 1 << k

    exhausted = False
    try:
        search(0, [], 0)
    except _Exhausted:
        exhausted = True
    return InvariantResult("rho", len(best), best, counter.nodes, exhausted)


# ---------------------------------------------------------------------------
# matching number
# ---------------------------------------------------------------------------


def matching_number(h, budget=None):
    """Largest set of pairwise vertex-disjoint support edges."""
    st = _structure(h)
    m, masks, incident = st.m, st.masks, st.incident
    counter = _budget(budget)

    used, greedy = 0, []
    for k, e in enumerate(masks):
        if not used & e:
            used |= e
            greedy.append(k)
    best = greedy

    def search(free, chosen):
        nonlocal best
        counter.tick()
        if len(chosen) > len(best):
            best = sorted(chosen)
        if len(chosen) + _popcount(free) // 3 <= len(best):
            return
        if not free:
            return
        v = (free & -free).bit_length() - 1
        for k in incident[v]:
            e = masks[k]
            if e & free == e:
                chosen.append(k)
                search(free & ~e, chosen)
                chosen.pop()
        search(free ^ (1 << v), chosen)

    exhausted = False
    try:
        search((1 << m) - 1, [])
    except _Exhausted:
        exhausted = True
    return InvariantResult("nu", len(best), sorted(best), counter.nodes, exhausted)


# ---------------------------------------------------------------------------
# weak chromatic number
# ---------------------------------------------------------------------------


def _weak_colorable(st, k, counter):
    """A colouring with at most ``k`` colours and no monochromatic edge, or None."""
    m, partner = st.m, st.partner
    colors = [-1] * m
    classes = [0] * k

    def search(v, used, forbidden):
        counter.tick()
        if v == m:
            return True
        top = min(used + 1, k)
        for c in range(top):
            if forbidden[v] >> c & 1:
                continue
            cls = classes[c]
            nxt = list(forbidden)
            ok = True
            # colour c becomes forbidden for w when {v, u, w} is an edge with u already in class c
            for w in range(v + 1, m):
                if partner[v][w] & cls:
                    nxt[w] |= 1 << c
                    if _popcount(nxt[w]) >= k:
                        ok = False
                        break
            if not ok:
                continue
            colors[v] = c
            classes[c] = cls | (1 << v)
            if search(v + 1, max(used, c + 1), nxt):
                return True
            classes[c] = cls
            colors[v] = -1
        return False

    if m == 0:
        return []
    if search(0, 0, [0] * m):
        return list(colors)
    return None


def weak_chromatic_number(h, budget=None):
    """Fewest colours so that no support edge is monochromatic.

    Iterative deepening on the number of colours.  Vertex 0 always gets
    colour 0, and colour ``c`` is tried only once ``c - 1`` is in use.
    """
    st = _structure(h)
    m = st.m
    counter = _budget(budget)
    if m == 0:
        return InvariantResult("chi", 0, [], 0, False)
    if not st.masks:
        return InvariantResult("chi", 1, [0] * m, 0, False)
    # pairs of vertices per colour never complete a 3-edge
    fallback = [v // 2 for v in range(m)]
    proven_lower = 2
    try:
        for k in range(2, (m + 1) // 2 + 1):
            coloring = _weak_colorable(st, k, counter)
            if coloring is not None:
                return InvariantResult("chi", k, coloring, counter.nodes, False)
            proven_lower = k + 1
    except _Exhausted:
        return InvariantResult("chi", len(set(fallback)), fallback, counter.nodes, True)
    # unreachable: ceil(m/2) colours always suffice
    raise AssertionError(f"no colouring found up to {proven_lower - 1} colours")


# ---------------------------------------------------------------------------
# strong chromatic number
# ---------------------------------------------------------------------------


def strong_chromatic_number(h, budget=None):
    """Chromatic number of the co-occurrence graph (DSATUR branch and bound)."""
    m = h.vertex_count
    counter = _budget(budget)
    if m == 0:
        return InvariantResult("chi_strong", 0, [], 0, False)
    adj = h.cooccurrence()
    nbr = [sum(1 << int(u) for u in adj[v].nonzero()[0]) for v in range(m)]
    if all(_popcount(nbr[v]) == m - 1 for v in range(m)):
        return InvariantResult("chi_strong", m, list(range(m)), 0, False)

    # greedy clique for a lower bound
    order = sorted(range(m), key=lambda v: (-_popcount(nbr[v]), v))
    clique = 0
    for v in order:
        if clique & nbr[v] == clique:
            clique |= 1 << v
    lower = max(1, _popcount(clique))

    best_colors = None
    best_k = m + 1
    colors = [-1] * m

    def saturation(v):
        return len({colors[u] for u in _bits(nbr[v]) if colors[u] >= 0})

    def search(n_colored, used):
        nonlocal best_colors, best_k
        counter.tick()
        if used >= best_k:
            return
        if n_colored == m:
            best_k = used
            best_colors = list(colors)
            return
        v = max((u for u in range(m) if colors[u] < 0),
                key=lambda u: (saturation(u), _popcount(nbr[u]), -u))
        taken = {colors[u] for u in _bits(nbr[v]) if colors[u] >= 0}
        for c in range(min(used + 1, best_k - 1)):
            if c in taken:
                continue
            colors[v] = c
            search(n_colored + 1, max(used, c + 1))
            colors[v] = -1
            if best_k <= lower:
                return

    exhausted = False
    try:
        search(0, 0)
    except _Exhausted:
        exhausted = True
    if best_colors is None:
        best_colors = list(range(m))
        best_k = m
    return InvariantResult("chi_strong", best_k, best_colors, counter.nodes, exhausted)


# ---------------------------------------------------------------------------
# matching polynomial
# ---------------------------------------------------------------------------


def _add_poly(p, q, shift):
    n = max(len(p), len(q) + shift)
    out = list(p) + [0] * (n - len(p))
    for i, a in enumerate(q):
        out[i + shift] += a
    return out


def matching_polynomial(h, budget=None):
    """Exact counts ``a_k`` of k-edge matchings of the support, k = 0..nu.

    Recurses on the lowest free vertex (left unmatched, or matched by one of
    its edges inside the free set) with memoisation on the free-vertex mask.
    """
    st = _structure(h)
    m, masks, incident = st.m, st.masks, st.incident
    counter = _budget(budget)
    memo = {0: (1,)}

    def count(free):
        hit = memo.get(free)
        if hit is not None:
            return hit
        counter.tick()
        v = (free & -free).bit_length() - 1
        poly = list(count(free ^ (1 << v)))
        for k in incident[v]:
            e = masks[k]
            if e & free == e:
                poly = _add_poly(poly, count(free & ~e), 1)
        while len(poly) > 1 and poly[-1] == 0:
            poly.pop()
        result = tuple(poly)
        memo[free] = result
        return result

    try:
        coeffs = count((1 << m) - 1)
    except _Exhausted:
        partial = (1, len(masks)) if masks else (1,)
        return MatchingPolynomial(partial, m, counter.nodes, True)
    return MatchingPolynomial(tuple(coeffs), m, counter.nodes, False)


def format_matching_polynomial(p):
    """Render ``sum a_k w1^(|V|-3k) w2^k`` with ascending ``k``."""
    terms = []
    for k, a in enumerate(p.coefficients):
        if a == 0:
            continue
        term = f"{a}*w1^{p.vertex_count - 3 * k}"
        if k:
            term += f"*w2^{k}"
        terms.append(term)
    return " + ".join(terms) if terms else "0"


SOLVERS = {
    "alpha": independence_number,
    "tau": transversal_number,
    "rho": covering_number,
    "nu": matching_number,
    "chi": weak_chromatic_number,
    "chi_strong": strong_chromatic_number,
}
