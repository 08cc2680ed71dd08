"""Reflection arrangement combinatorics: edges and their multiplicities.

Edges are identified purely by their closed sets of reflections; no
geometric subspace arithmetic happens anywhere.  Each edge multiplicity is
computed twice: by the closed product formula over parabolic data, and by
an independent chamber-counting oracle that scans the whole group.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coxeter_core import EnumeratedGroup, _mask
from .errors import (
    BlocksOverlap,
    InvarianceViolation,
    NoFullSupportReflection,
    ReflectionNotOnEdge,
)

FORMULA_CROSSCHECK_LIMIT = 1152  # brute-force checks only below this order


@dataclass(frozen=True)
class Edge:
    """A relevant edge, stored as its closed set of reflection indices."""

    reflections: tuple[int, ...]
    class_J: tuple[int, ...]
    witness: int  # element w with reflections == T_J^w
    coset_id: int

    def __len__(self):
        return len(self.reflections)


@dataclass
class MultiplicityReport:
    class_J: tuple[int, ...]
    label: str
    ingredients: tuple[int, int, int, int]  # |floor|, |[J]|, |X(S,J)|, |X(J,{s})|
    l_formula: int
    l_oracle: int | None = None

    @property
    def match(self):
        return self.l_oracle is None or self.l_oracle == self.l_formula


class Arrangement:
    """Cached per-group view of the reflection arrangement."""

    def __init__(self, group: EnumeratedGroup, floor_ambient: str = "WJ"):
        self.group = group
        self.floor_ambient = floor_ambient
        self._parabolic_cache = {}

    # -- basic chamber combinatorics ----------------------------------------

    def separating_set(self, x: int, y: int) -> set[int]:
        N = self.group.inversion_table
        return set(np.nonzero(N[x] ^ N[y])[0].tolist())

    def parabolic(self, J):
        J = tuple(sorted(J))
        if J not in self._parabolic_cache:
            self._parabolic_cache[J] = self.group.parabolic_data(J)
        return self._parabolic_cache[J]

    # -- relevant edges ------------------------------------------------------

    @lru_cache(maxsize=1)
    def class_representatives(self):
        """One representative per Coxeter class of irreducible subsets."""
        reps = []
        seen = set()
        for J in self.group.diagram.irreducible_subsets():
            if J in seen:
                continue
            pd = self.parabolic(J)
            seen.update(K for K, _ in pd.coxeter_class)
            reps.append(J)
        return reps

    @lru_cache(maxsize=1)
    def relevant_edges(self):
        """All relevant edges, deduplicated and globally sorted."""
        g = self.group
        R = g.conj_by_gen
        edges = []
        for J in self.class_representatives():
            pd = self.parabolic(J)
            TJ = frozenset(int(t) for t in pd.T_J)
            orbit = {TJ: []}
            frontier = [TJ]
            while frontier:
                nxt = []
                for U in frontier:
                    wU = orbit[U]
                    for gen in range(g.n):
                        U2 = frozenset(int(R[t, gen]) for t in U)
                        if U2 not in orbit:
                            orbit[U2] = wU + [gen]
                            nxt.append(U2)
                frontier = nxt
            expected = g.order // pd.normalizer_order
            assert len(orbit) == expected, (J, len(orbit), expected)
            for cid, (U, word) in enumerate(sorted(orbit.items(),
                                                   key=lambda kv: sorted(kv[0]))):
                edges.append(Edge(
                    reflections=tuple(sorted(U)),
                    class_J=J,
                    witness=g.element_of_word(word),
                    coset_id=cid,
                ))
        uniq = {e.reflections: e for e in edges}
        assert len(uniq) == len(edges)
        return sorted(uniq.values(), key=lambda e: (len(e), e.reflections))

    @lru_cache(maxsize=1)
    def edge_lookup(self):
        return {frozenset(e.reflections): e for e in self.relevant_edges()}

    def minimal_edge_through_chamber_face(self, x: int, t: int) -> Edge:
        """The edge spanned by the face of chamber x on hyperplane t."""
        g = self.group
        D, C = g.conj_tables
        Kmask = int(g.refl_support[C[x, t]])
        TK = g.reflection_indices_in(Kmask)
        refl = frozenset(int(D[x, u]) for u in TK)
        return self.edge_lookup()[refl]

    # -- multiplicity: chamber-counting oracle -------------------------------

    def chambers_spanning(self, edge: Edge, t: int) -> set[int]:
        """All x whose face on hyperplane t spans exactly this edge."""
        if t not in edge.reflections:
            raise ReflectionNotOnEdge(f"reflection {t} not on edge")
        g = self.group
        D, C = g.conj_tables
        pd = self.parabolic(edge.class_J)
        allowed = np.array(sorted({np.int64(_mask(K))
                                   for K, _ in pd.coxeter_class}))
        Ksup = g.refl_support[C[:, t]]
        candidates = np.nonzero(np.isin(Ksup, allowed))[0]
        target = frozenset(edge.reflections)
        tk_cache = {}
        out = set()
        for x in candidates:
            Kmask = int(Ksup[x])
            TK = tk_cache.get(Kmask)
            if TK is None:
                TK = g.reflection_indices_in(Kmask)
                tk_cache[Kmask] = TK
            if frozenset(int(v) for v in D[x, TK]) == target:
                out.add(int(x))
        return out

    def count_L(self, edge: Edge, t: int) -> int:
        return len(self.chambers_spanning(edge, t))

    def multiplicity_oracle(self, edge: Edge) -> int:
        """l(E): half the chamber count, checked for hyperplane independence."""
        t0 = edge.reflections[0]
        c = self.count_L(edge, t0)
        assert c % 2 == 0
        for u in edge.reflections[1:]:
            cu = self.count_L(edge, u)
            if cu != c:
                raise InvarianceViolation(
                    f"|L(E,{u})| = {cu} but |L(E,{t0})| = {c}")
        return c // 2

    # -- multiplicity: closed formula ---------------------------------------

    def multiplicity_formula(self, J) -> MultiplicityReport:
        """Ingredient cardinalities and their product for the class of J."""
        J = tuple(sorted(J))
        g = self.group
        pd = self.parabolic(J)
        if not pd.irreducible:
            raise ValueError(f"J = {J} is not irreducible")
        Jmask = _mask(J)
        full = [t for t in range(g.num_reflections)
                if int(g.refl_support[t]) == Jmask]
        if not full:
            raise NoFullSupportReflection(f"no full-support reflection for {J}")
        reports = []
        choices = full if len(pd.W_J) <= FORMULA_CROSSCHECK_LIMIT else full[:1]
        for tJ in choices:
            s, _v = g.palindromic_decomposition(tJ)
            ing = (
                len(g.floor_class(tJ, ambient=self.floor_ambient)),
                len(pd.coxeter_class),
                len(pd.X_SJ),
                g.x_J_s(J, s),
            )
            reports.append(ing)
        products = {a * b * c * d for a, b, c, d in reports}
        assert len(products) == 1, (J, reports)
        ing = reports[0]
        return MultiplicityReport(
            class_J=J,
            label=g.diagram.subdiagram_label(J),
            ingredients=ing,
            l_formula=ing[0] * ing[1] * ing[2] * ing[3],
        )

    def multiplicity_reports(self, with_oracle=False):
        """One report per irreducible Coxeter class."""
        out = []
        for J in self.class_representatives():
            rep = self.multiplicity_formula(J)
            if with_oracle:
                pd = self.parabolic(J)
                edge = Edge(
                    reflections=tuple(int(t) for t in pd.T_J),
                    class_J=J, witness=0, coset_id=0)
                rep.l_oracle = self.multiplicity_oracle(edge)
            out.append(rep)
        return out

    # -- the explicit chamber-set decomposition ------------------------------

    def decompose_L(self, J, t: int):
        """Materialize the block decomposition of L(E_{T_J}, t).

        Returns (blocks, union) where blocks maps (K, u) to an element set.
        """
        J = tuple(sorted(J))
        g = self.group
        if int(g.refl_support[t]) != _mask(J):
            raise ValueError(f"reflection {t} does not have support {J}")
        pd = self.parabolic(J)
        N_members = pd.normalizer_members()
        nset = set(int(x) for x in N_members)
        s, v = g.palindromic_decomposition(t)
        # centralizer of t in W_J, and N_{W_J}(W_{s})^v which must equal it
        D, _ = g.conj_tables
        WJ = pd.W_J
        cent_t = [int(x) for x in WJ if int(D[x, t]) == t]
        vinv = int(g.inv[v])
        cent_s_v = {g.mul(g.mul(vinv, int(c)), v)
                    for c in WJ if int(D[c, s]) == s}
        assert cent_s_v == set(cent_t)
        floor = g.floor_class(t, ambient=self.floor_ambient)
        lengths = g.length
        blocks = {}
        union = set()
        for K, cKJ in pd.coxeter_class:
            # minimal-length representative of the coset cKJ * N_W(W_J)
            coset = [g.mul(int(cKJ), int(x)) for x in N_members]
            cK = min(coset, key=lambda e: (int(lengths[e]), e))
            for u in floor:
                cut = self._conjugator(u, t, WJ)
                coset_u = [g.mul(int(cut), int(c)) for c in cent_t]
                cu = min(coset_u, key=lambda e: (int(lengths[e]), e))
                block = set()
                for x in pd.X_SJ:
                    a = g.mul(cK, int(x))
                    for c in cent_t:
                        block.add(g.mul(g.mul(a, cu), int(c)))
                key = (K, u)
                if union & block:
                    raise BlocksOverlap(f"block {key} overlaps previous blocks")
                blocks[key] = block
                union |= block
        return blocks, union

    def _conjugator(self, u: int, t: int, members) -> int:
        """Some c in the given member set with u^c = t."""
        g = self.group
        D, _ = g.conj_tables
        for x in members:
            if int(D[x, u]) == t:
                return int(x)
        raise AssertionError(f"no conjugator from {u} to {t}")
