"""Cartan entries, matrix and datum reflections, and reflection orbits.

The Cartan entry a_pj is the least n >= 0 killing
(1 + q_pp + ... + q_pp^n)(1 - q_pp^n q_pj q_jp), negated; a vertex p is
reflectable when every a_pj is finite.  Reflections are involutive, and
the twisted matrix of a reflected datum satisfies the same transformation
rule as the braiding matrix itself, which ``reflect_datum`` re-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .datum import BraidingMatrix, Datum, DiagonalOne
from .scalars import order_of, solve_power


class NotReflectable(ValueError):
    """Some Cartan entry at the requested vertex is infinite."""


def cartan_entry(q: BraidingMatrix, p: int, j: int) -> int | None:
    """a_pj (an integer <= 0, or 2 on the diagonal); None when undefined."""
    if p == j:
        return 2
    n1 = solve_power(q[p, p], (q[p, j] * q[j, p]).inverse())
    ord_pp = order_of(q[p, p])
    n2 = ord_pp - 1 if ord_pp is not None else None
    candidates = [n for n in (n1, n2) if n is not None]
    if not candidates:
        return None
    return -min(candidates)


def cartan_row(q: BraidingMatrix, p: int) -> list[int] | None:
    row = []
    for j in range(q.theta):
        a = cartan_entry(q, p, j)
        if a is None:
            return None
        row.append(a)
    return row


def reflect_matrix(q: BraidingMatrix, p: int) -> BraidingMatrix:
    """The reflected matrix q'_ij = q_ij q_pj^{-a_pi} q_ip^{-a_pj} q_pp^{a_pi a_pj}."""
    a = cartan_row(q, p)
    if a is None:
        raise NotReflectable(f"vertex {p} has an infinite Cartan entry")
    theta = q.theta
    rows = []
    for i in range(theta):
        row = []
        for j in range(theta):
            s = q[i, j] * (q[p, j] ** (-a[i])) * (q[i, p] ** (-a[j])) \
                * (q[p, p] ** (a[i] * a[j]))
            row.append(s)
        rows.append(row)
    return BraidingMatrix(rows)


def reflect_datum(E: Datum, p: int) -> Datum:
    """Reflect a datum: q' = s_p q and t'_i = t_i * t_p^{-a_pi}.

    The reflected twisted matrix must transform by the same rule as q;
    this identity is recomputed and enforced.
    """
    a = cartan_row(E.q, p)
    if a is None:
        raise NotReflectable(f"vertex {p} has an infinite Cartan entry")
    q_new = reflect_matrix(E.q, p)
    t_new = tuple(E.t[i] * (E.t[p] ** (-a[i])) for i in range(E.theta))
    result = Datum(q_new, E.group, E.beta, t_new)
    qt = E.qt
    for i in range(E.theta):
        for j in range(E.theta):
            expected = qt[i, j] * (qt[p, j] ** (-a[i])) * (qt[i, p] ** (-a[j])) \
                * (qt[p, p] ** (a[i] * a[j]))
            if result.qt[i, j] != expected:
                raise AssertionError(
                    f"twisted matrix does not satisfy the reflection identity "
                    f"at ({i},{j})")
    return result


def reflectable_vertices(E: Datum) -> list[int]:
    """Vertices with finite Cartan rows whose reflection stays a datum.

    Finiteness of the Cartan row does not by itself keep the reflected
    diagonal away from 1 on arbitrary matrices, so the reflection is
    attempted.
    """
    out = []
    for p in range(E.theta):
        if cartan_row(E.q, p) is None:
            continue
        try:
            reflect_datum(E, p)
        except DiagonalOne:
            continue
        out.append(p)
    return out


@dataclass
class OrbitGraph:
    nodes: list[Datum]
    edges: list[tuple[int, int, int]]  # (source index, vertex p, target index)
    truncated: bool = False

    def node_index(self, E: Datum) -> int:
        return self.nodes.index(E)


def weyl_orbit(E: Datum, max_nodes: int = 1024, threads: int = 1) -> OrbitGraph:
    """Breadth-first closure of a datum under all reflections.

    Node identity is exact datum equality.  Vertices with an infinite
    Cartan entry are skipped.  When the closure would exceed
    ``max_nodes`` the graph is returned with ``truncated=True``.

    Frontier levels can be reflected in parallel worker threads; results
    are merged in a fixed order so the output is identical for any thread
    count.
    """
    if max_nodes < 1:
        raise ValueError("max_nodes must be >= 1")
    nodes = [E]
    index = {E: 0}
    edges = []
    truncated = False
    frontier = [0]

    def expand(src: int):
        current = nodes[src]
        results = []
        for p in range(current.theta):
            if cartan_row(current.q, p) is None:
                continue
            try:
                results.append((p, reflect_datum(current, p)))
            except DiagonalOne:
                continue  # not a reflectable vertex for this matrix
        return src, results

    while frontier:
        if threads > 1 and len(frontier) > 1:
            from concurrent.futures import ThreadPoolExecutor
            with ThreadPoolExecutor(max_workers=threads) as pool:
                expanded = list(pool.map(expand, frontier))
        else:
            expanded = [expand(src) for src in frontier]
        next_frontier = []
        for src, results in expanded:
            for p, reflected in results:
                if reflected in index:
                    tgt = index[reflected]
                else:
                    if len(nodes) >= max_nodes:
                        truncated = True
                        continue
                    tgt = len(nodes)
                    nodes.append(reflected)
                    index[reflected] = tgt
                    next_frontier.append(tgt)
                edges.append((src, p, tgt))
        frontier = next_frontier
    return OrbitGraph(nodes=nodes, edges=edges, truncated=truncated)


def check_consistent_coloring(orbit: OrbitGraph) -> bool:
    """Re-verify that every stored edge is an exact reflection."""
    for src, p, tgt in orbit.edges:
        try:
            if reflect_datum(orbit.nodes[src], p) != orbit.nodes[tgt]:
                return False
        except (NotReflectable, DiagonalOne, AssertionError):
            return False
    return True
