"""Finite Coxeter groups: diagrams, exact enumeration, parabolic machinery.

Groups are enumerated by breadth-first search through the geometric
reflection representation, realized over the smallest exact ring for each
type and embedded into integer matrices via the companion matrix of the
ring generator.  After enumeration every element is a dense integer id and
all further work happens on multiplication / conjugation tables, so no
matrix arithmetic survives on any hot path.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    GeneratorNotInJ,
    NonFiniteDiagram,
    OrderLimitExceeded,
    ParseError,
    RankOutOfRange,
    UnsupportedType,
)
from .exact_algebra import minimal_polynomial_2cos

MAX_RANK = 16
DEFAULT_ORDER_LIMIT = 10**6


def _factorial(n):
    r = 1
    for i in range(2, n + 1):
        r *= i
    return r


def known_order(letter: str, param: int) -> int:
    if letter == "A":
        return _factorial(param + 1)
    if letter == "B":
        return 2**param * _factorial(param)
    if letter == "D":
        return 2 ** (param - 1) * _factorial(param)
    if letter == "E":
        return {6: 51840, 7: 2903040, 8: 696729600}[param]
    if letter == "F":
        return 1152
    if letter == "H":
        return {3: 120, 4: 14400}[param]
    if letter == "I":
        return 2 * param
    raise UnsupportedType(letter)


def known_reflection_count(letter: str, param: int) -> int:
    if letter == "A":
        return param * (param + 1) // 2
    if letter == "B":
        return param * param
    if letter == "D":
        return param * (param - 1)
    if letter == "E":
        return {6: 36, 7: 63, 8: 120}[param]
    if letter == "F":
        return 24
    if letter == "H":
        return {3: 15, 4: 60}[param]
    if letter == "I":
        return param
    raise UnsupportedType(letter)


@dataclass(frozen=True)
class Component:
    """One irreducible factor of a diagram: type letter, parameter, node ids."""

    letter: str
    param: int  # rank, or m for I2(m)
    nodes: tuple[int, ...]

    @property
    def rank(self):
        return len(self.nodes)

    @property
    def label(self):
        if self.letter == "I":
            return f"I2({self.param})"
        return f"{self.letter}{self.param}"

    @property
    def order(self):
        return known_order(self.letter, self.param)


def _component_bonds(letter: str, param: int):
    """Bond matrix of one irreducible type, local node numbering."""
    if letter == "I":
        n = 2
        bonds = [[1, param], [param, 1]]
        return bonds
    n = param
    bonds = [[2] * n for _ in range(n)]
    for i in range(n):
        bonds[i][i] = 1

    def set_bond(i, j, m):
        bonds[i][j] = m
        bonds[j][i] = m

    if letter in ("A", "B", "F", "H"):
        for i in range(n - 1):
            set_bond(i, i + 1, 3)
        if letter == "B":
            set_bond(0, 1, 4)
        elif letter == "F":
            set_bond(1, 2, 4)
        elif letter == "H":
            set_bond(0, 1, 5)
    elif letter == "D":
        for i in range(n - 2):
            set_bond(i, i + 1, 3)
        set_bond(n - 3, n - 1, 3)
    elif letter == "E":
        for i in range(n - 2):
            set_bond(i, i + 1, 3)
        set_bond(2, n - 1, 3)
    else:
        raise UnsupportedType(letter)
    return bonds


@dataclass(frozen=True)
class CoxeterDiagram:
    """Bond matrix plus the parsed decomposition into irreducible components."""

    bonds: tuple[tuple[int, ...], ...]
    type_label: str
    components: tuple[Component, ...]

    def __post_init__(self):
        n = len(self.bonds)
        for i in range(n):
            if self.bonds[i][i] != 1:
                raise NonFiniteDiagram("diagonal bond labels must be 1")
            for j in range(n):
                if self.bonds[i][j] != self.bonds[j][i]:
                    raise NonFiniteDiagram("bond matrix must be symmetric")
                if i != j and self.bonds[i][j] < 2:
                    raise NonFiniteDiagram("off-diagonal bonds must be >= 2")
        # components must tile the nodes and reproduce the bond matrix
        seen = []
        for comp in self.components:
            seen.extend(comp.nodes)
            local = _component_bonds(comp.letter, comp.param)
            for a, ga in enumerate(comp.nodes):
                for b, gb in enumerate(comp.nodes):
                    if self.bonds[ga][gb] != local[a][b]:
                        raise NonFiniteDiagram(
                            f"bonds do not match claimed type {comp.label}")
        if sorted(seen) != list(range(n)):
            raise NonFiniteDiagram("components do not partition the nodes")

    @property
    def rank(self):
        return len(self.bonds)

    @property
    def order(self):
        r = 1
        for c in self.components:
            r *= c.order
        return r

    def bond_graph_neighbors(self, i):
        return [j for j in range(self.rank) if j != i and self.bonds[i][j] >= 3]

    def is_connected_subset(self, J) -> bool:
        """Connectivity of J in the bond graph (edges where m_ij >= 3)."""
        J = list(J)
        if not J:
            return False
        Jset = set(J)
        stack, seen = [J[0]], {J[0]}
        while stack:
            i = stack.pop()
            for j in self.bond_graph_neighbors(i):
                if j in Jset and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen == Jset

    def irreducible_subsets(self):
        """All nonempty connected subsets of the nodes, sorted."""
        n = self.rank
        out = []
        for mask in range(1, 1 << n):
            J = tuple(i for i in range(n) if mask >> i & 1)
            if self.is_connected_subset(J):
                out.append(J)
        out.sort(key=lambda J: (len(J), J))
        return out

    def subdiagram_label(self, J) -> str:
        """Classify the (connected) induced subdiagram of J by type name."""
        comp = _classify_component(self.bonds, tuple(sorted(J)))
        return comp.label


_NAME_RE = re.compile(r"^(A|B|D)([0-9]+)$|^(E6|E7|E8|F4|H3|H4)$|^I2\(([0-9]+)\)$")


def parse_group_spec(text: str) -> CoxeterDiagram:
    """Parse e.g. "A3", "I2(7)", "B3xA1xI2(5)" into a validated diagram."""
    text = text.strip()
    if not text:
        raise ParseError("empty group spec")
    comps = []
    offset = 0
    for name in text.split("x"):
        m = _NAME_RE.match(name.strip())
        if not m:
            raise ParseError(f"cannot parse component {name!r}")
        if m.group(1):
            letter, n = m.group(1), int(m.group(2))
            if n < 1:
                raise UnsupportedType(f"{letter}{n}")
            if letter == "B" and n < 2:
                raise UnsupportedType("B1: write A1")
            if letter == "D" and n < 3:
                raise UnsupportedType("D2 is reducible: write A1xA1")
            if n > MAX_RANK:
                raise RankOutOfRange(f"rank {n} exceeds limit {MAX_RANK}")
            param, rank = n, n
        elif m.group(3):
            letter, param = m.group(3)[0], int(m.group(3)[1])
            rank = param
        else:
            letter, param, rank = "I", int(m.group(4)), 2
            if param < 3:
                raise UnsupportedType("I2(m) needs m >= 3; I2(2) is A1xA1")
        comps.append(Component(letter, param, tuple(range(offset, offset + rank))))
        offset += rank
    n = offset
    bonds = [[2] * n for _ in range(n)]
    for i in range(n):
        bonds[i][i] = 1
    for comp in comps:
        local = _component_bonds(comp.letter, comp.param)
        for a, ga in enumerate(comp.nodes):
            for b, gb in enumerate(comp.nodes):
                bonds[ga][gb] = local[a][b]
    label = "x".join(c.label for c in comps)
    return CoxeterDiagram(tuple(tuple(r) for r in bonds), label, tuple(comps))


def _classify_component(bonds, nodes):
    """Identify the finite type of one connected induced subdiagram."""
    nodes = tuple(nodes)
    k = len(nodes)
    sub = {(a, b): bonds[a][b] for a in nodes for b in nodes}
    edges = [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:]
             if sub[(a, b)] >= 3]
    labels = sorted(sub[e] for e in edges)
    deg = {a: sum(1 for e in edges if a in e) for a in nodes}
    if len(edges) != k - 1 or (k and max(deg.values(), default=0) > 3):
        raise NonFiniteDiagram("subdiagram is not a finite-type tree")
    if k == 1:
        return Component("A", 1, nodes)
    if k == 2:
        m = labels[0]
        if m == 3:
            return Component("A", 2, nodes)
        if m == 4:
            return Component("B", 2, nodes)
        return Component("I", m, nodes)
    branch = [a for a in nodes if deg[a] == 3]
    if not branch:
        # a path; order nodes along it
        ends = [a for a in nodes if deg[a] == 1]
        path = [ends[0]]
        while len(path) < k:
            nxt = [b for b in nodes if sub[(path[-1], b)] >= 3
                   and (len(path) < 2 or b != path[-2]) and b != path[-1]]
            path.append(nxt[0])
        seq = [sub[(path[i], path[i + 1])] for i in range(k - 1)]
        if all(m == 3 for m in seq):
            return Component("A", k, nodes)
        if sorted(labels) == [3] * (k - 2) + [4]:
            if seq[0] == 4 or seq[-1] == 4:
                return Component("B", k, nodes)
            if k == 4 and seq[1] == 4:
                return Component("F", 4, nodes)
        if sorted(labels) == [3] * (k - 2) + [5] and (seq[0] == 5 or seq[-1] == 5):
            if k in (3, 4):
                return Component("H", k, nodes)
        raise NonFiniteDiagram(f"unrecognized path labels {seq}")
    if len(branch) > 1 or any(m != 3 for m in labels):
        raise NonFiniteDiagram("not a finite type diagram")
    # tree with one degree-3 node: arm lengths decide D vs E
    c = branch[0]
    arms = []
    for start in (b for b in nodes if sub[(c, b)] >= 3):
        ln, prev, cur = 1, c, start
        while True:
            nxt = [b for b in nodes if sub[(cur, b)] >= 3 and b != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            ln += 1
        arms.append(ln)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return Component("D", k, nodes)
    if arms[0] == 1 and arms[1] == 2 and k in (6, 7, 8):
        return Component("E", k, nodes)
    raise NonFiniteDiagram(f"unrecognized branching diagram (arms {arms})")


# ---------------------------------------------------------------------------
# element engines


class _MatrixEngine:
    """Reflection matrices over the exact ring, embedded into integer matrices."""

    def __init__(self, bonds):
        n = len(bonds)
        labels = {bonds[i][j] for i in range(n) for j in range(n) if i < j}
        labels.discard(2)
        if labels <= {3, 4, 6}:
            # crystallographic: asymmetric Cartan integers, trivial embedding
            d = 1
            gamma_min = None
        elif labels <= {3, 5}:
            d = 2
            gamma_min = (1, -1, -1)  # x^2 - x - 1, golden ratio
        else:
            m = max(labels)
            if labels != {m}:
                raise NonFiniteDiagram(f"mixed bond labels {labels} unsupported")
            gamma_min = minimal_polynomial_2cos(m)
            d = len(gamma_min) - 1
        self.n, self.d = n, d
        N = n * d
        if d == 1:
            def coeff(m):
                # pair (c_ij, c_ji); returned for (i<j, j>i) positions
                return {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3)}[m]

            cart = [[0] * n for _ in range(n)]
            for i in range(n):
                cart[i][i] = 2
                for j in range(i + 1, n):
                    cij, cji = coeff(bonds[i][j])
                    cart[i][j], cart[j][i] = cij, cji

            def entry_block(c):
                return np.array([[c]], dtype=np.int64)
        else:
            # companion matrix of the ring generator gamma
            # gamma_min descending: x^d + a_{d-1} x^(d-1) + ... + a_0
            comp = np.zeros((d, d), dtype=np.int64)
            for i in range(1, d):
                comp[i, i - 1] = 1
            for i in range(d):
                comp[i, d - 1] = -gamma_min[d - i]
            ident = np.eye(d, dtype=np.int64)

            def c_poly(m):
                # 2cos(pi/m) as polynomial in gamma, low-degree first
                if m == 2:
                    return [0]
                if m == 3:
                    return [1]
                # gamma itself (m equals the defining label)
                return [0, 1]

            def entry_block(poly):
                if isinstance(poly, int):
                    poly = [poly]
                B = np.zeros((d, d), dtype=np.int64)
                P = ident
                for c in poly:
                    if c:
                        B = B + c * P
                    P = P @ comp
                return B

            cart = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    if i == j:
                        cart[i][j] = [2]
                    else:
                        cart[i][j] = [-c for c in c_poly(bonds[i][j])]
        gens = []
        for i in range(n):
            M = np.zeros((N, N), dtype=np.int64)
            for a in range(n):
                for b in range(n):
                    if a == i:
                        blk = entry_block(cart[i][b])
                        val = (np.eye(d, dtype=np.int64) if a == b else 0) - blk
                        M[a * d:(a + 1) * d, b * d:(b + 1) * d] = val
                    elif a == b:
                        M[a * d:(a + 1) * d, b * d:(b + 1) * d] = np.eye(
                            d, dtype=np.int64)
            gens.append(M)
        self.gens = gens
        self.identity = np.eye(N, dtype=np.int64)

    def identity_key(self):
        return self.identity.tobytes()

    def start_stack(self):
        return self.identity[None, :, :]

    def right_apply(self, stack, g):
        return stack @ self.gens[g]

    def left_apply(self, stack, g):
        return self.gens[g] @ stack

    @staticmethod
    def keys(stack):
        return [stack[i].tobytes() for i in range(stack.shape[0])]


class _DihedralEngine:
    """I2(m) closed form: element (k, f) is rotation^k * flip^f."""

    def __init__(self, m):
        self.m = m
        self.gens = [(0, 1), (1, 1)]

    def identity_key(self):
        return (0, 0)

    def start_stack(self):
        return [(0, 0)]

    def _mul(self, x, y):
        a, fa = x
        b, fb = y
        if fa == 0:
            return ((a + b) % self.m, fb)
        return ((a - b) % self.m, 1 - fb)

    def right_apply(self, stack, g):
        gg = self.gens[g]
        return [self._mul(x, gg) for x in stack]

    def left_apply(self, stack, g):
        gg = self.gens[g]
        return [self._mul(gg, x) for x in stack]

    @staticmethod
    def keys(stack):
        return list(stack)


class _ProductEngine:
    """Direct product of already-enumerated component groups."""

    def __init__(self, groups, gen_map):
        # gen_map: global generator -> (component index, local generator)
        self.groups = groups
        self.gen_map = gen_map

    def identity_key(self):
        return tuple(0 for _ in self.groups)

    def start_stack(self):
        return [self.identity_key()]

    def right_apply(self, stack, g):
        c, lg = self.gen_map[g]
        tab = self.groups[c].right_mul
        return [x[:c] + (int(tab[x[c], lg]),) + x[c + 1:] for x in stack]

    def left_apply(self, stack, g):
        c, lg = self.gen_map[g]
        tab = self.groups[c].left_mul
        return [x[:c] + (int(tab[x[c], lg]),) + x[c + 1:] for x in stack]

    @staticmethod
    def keys(stack):
        return list(stack)


# ---------------------------------------------------------------------------


class EnumeratedGroup:
    """A fully enumerated finite Coxeter group with lookup tables.

    Element ids follow breadth-first order by length, ties resolved by
    generator index, so ids, reduced words, and everything derived from
    them are reproducible across runs.
    """

    def __init__(self, diagram, right_mul, left_mul, parent, gen_of, length,
                 support):
        self.diagram = diagram
        self.n = diagram.rank
        self.right_mul = right_mul
        self.left_mul = left_mul
        self.parent = parent
        self.gen_of = gen_of
        self.length = length
        self.support = support  # bitmask over generators
        self.order = len(length)
        self.full_mask = (1 << self.n) - 1

    # -- basic element calculus ---------------------------------------------

    def word(self, x: int) -> list[int]:
        """The stored reduced word of element x."""
        w = []
        while x != 0:
            w.append(int(self.gen_of[x]))
            x = int(self.parent[x])
        w.reverse()
        return w

    def mul(self, x: int, y: int) -> int:
        for g in self.word(y):
            x = int(self.right_mul[x, g])
        return x

    @cached_property
    def inv(self):
        inv = np.zeros(self.order, dtype=np.int64)
        for y in range(1, self.order):
            x, g = int(self.parent[y]), int(self.gen_of[y])
            inv[y] = self.left_mul[inv[x], g]
        return inv

    @property
    def longest_element(self) -> int:
        return int(np.argmax(self.length))

    # -- reflections ---------------------------------------------------------

    @cached_property
    def refl_ids(self):
        """Element ids of all reflections, sorted (= closure of S under conj)."""
        seen = set(range(1, self.n + 1))
        frontier = list(seen)
        while frontier:
            nxt = []
            for t in frontier:
                for g in range(self.n):
                    u = int(self.left_mul[self.right_mul[t, g], g])  # g t g
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        ids = np.array(sorted(seen), dtype=np.int64)
        assert list(ids[: self.n]) == list(range(1, self.n + 1))
        return ids

    @cached_property
    def num_reflections(self):
        return len(self.refl_ids)

    @cached_property
    def refl_index(self):
        """Element id -> reflection index, -1 elsewhere."""
        idx = np.full(self.order, -1, dtype=np.int64)
        idx[self.refl_ids] = np.arange(len(self.refl_ids))
        return idx

    @cached_property
    def refl_support(self):
        """Support bitmask per reflection index."""
        return self.support[self.refl_ids]

    @cached_property
    def conj_by_gen(self):
        """R[t, g] = reflection index of t^g = g t g."""
        nT = self.num_reflections
        R = np.zeros((nT, self.n), dtype=np.int64)
        for ti, t in enumerate(self.refl_ids):
            for g in range(self.n):
                R[ti, g] = self.refl_index[
                    self.left_mul[self.right_mul[t, g], g]]
        return R

    @cached_property
    def conj_tables(self):
        """(D, C): D[x, t] = index of t^x, C[x, t] = index of t^(x^-1)."""
        nT = self.num_reflections
        R = self.conj_by_gen
        D = np.zeros((self.order, nT), dtype=np.int32)
        C = np.zeros((self.order, nT), dtype=np.int32)
        D[0] = np.arange(nT)
        C[0] = np.arange(nT)
        for y in range(1, self.order):
            x, g = int(self.parent[y]), int(self.gen_of[y])
            D[y] = R[:, g][D[x]]          # t^(xg) = (t^x)^g
            C[y] = C[x][R[:, g]]          # t^((xg)^-1) = (t^g)^(x^-1)
        return D, C

    @cached_property
    def inversion_table(self):
        """Boolean table: N[x, t] iff reflection t is a left inversion of x."""
        _, C = self.conj_tables
        N = np.zeros((self.order, self.num_reflections), dtype=bool)
        for y in range(1, self.order):
            x, g = int(self.parent[y]), int(self.gen_of[y])
            N[y] = N[x]
            c = C[x, g]  # x g x^-1 as a reflection index
            assert not N[y, c]
            N[y, c] = True
        return N

    def inversion_set(self, x: int) -> set[int]:
        return set(np.nonzero(self.inversion_table[x])[0].tolist())

    def support_set(self, x: int) -> tuple[int, ...]:
        mask = int(self.support[x])
        return tuple(i for i in range(self.n) if mask >> i & 1)

    def conj_refl(self, t: int, x: int) -> int:
        """Reflection index of t^x."""
        return int(self.conj_tables[0][x, t])

    # -- parabolic machinery -------------------------------------------------

    def reflection_indices_in(self, Jmask: int):
        """T_J as reflection indices: reflections with support inside J."""
        sup = self.refl_support
        return np.nonzero((sup & ~np.int64(Jmask)) == 0)[0]

    def parabolic_members(self, J):
        """Element ids of W_J (those whose inversion set lies in T_J)."""
        Jmask = _mask(J)
        TJ = self.reflection_indices_in(Jmask)
        outside = np.setdiff1d(np.arange(self.num_reflections), TJ)
        ok = ~self.inversion_table[:, outside].any(axis=1)
        return np.nonzero(ok)[0]

    def min_coset_reps(self, J):
        """X_J: elements with no left descent in J."""
        if len(J) == 0:
            return np.arange(self.order)
        ok = ~self.inversion_table[:, list(J)].any(axis=1)
        return np.nonzero(ok)[0]

    def coset_decompose(self, w: int, J):
        """Unique (u, x) with w = u x, u in W_J, x in X_J, lengths adding."""
        x = w
        Jl = list(J)
        while True:
            desc = [s for s in Jl if self.inversion_table[x, s]]
            if not desc:
                break
            x = int(self.left_mul[x, desc[0]])
        u = self.mul(w, int(self.inv[x]))
        return u, x

    def subset_orbit(self, J):
        """Conjugation orbit of the generator subset J, with witness words.

        Returns dict mapping frozenset(reflection indices) -> word w such
        that J^w equals that set.
        """
        start = frozenset(int(s) for s in J)
        R = self.conj_by_gen
        orbit = {start: []}
        frontier = [start]
        while frontier:
            nxt = []
            for K in frontier:
                wK = orbit[K]
                for g in range(self.n):
                    K2 = frozenset(int(R[t, g]) for t in K)
                    if K2 not in orbit:
                        orbit[K2] = wK + [g]
                        nxt.append(K2)
            frontier = nxt
        return orbit

    def element_of_word(self, word) -> int:
        x = 0
        for g in word:
            x = int(self.right_mul[x, g])
        return x

    def parabolic_data(self, J) -> "ParabolicData":
        J = tuple(sorted(int(s) for s in J))
        Jmask = _mask(J)
        W_J = self.parabolic_members(J)
        T_J = self.reflection_indices_in(Jmask)
        X_J = self.min_coset_reps(J)
        # Coxeter class: orbit members that are subsets of S, with witnesses
        orbit = self.subset_orbit(J)
        Sgens = frozenset(range(self.n))
        cox_class = []
        for K, wordJK in orbit.items():
            if K <= Sgens:
                # J^w = K, so K^(w^-1) = J
                w = self.element_of_word(wordJK)
                cox_class.append((tuple(sorted(K)), int(self.inv[w])))
        cox_class.sort()
        X_SJ = self._stabilizing_reps(X_J, J)
        return ParabolicData(
            J=J,
            group=self,
            W_J=W_J,
            T_J=T_J,
            X_J=X_J,
            irreducible=self.diagram.is_connected_subset(J),
            coxeter_class=cox_class,
            X_SJ=X_SJ,
            normalizer_order=len(W_J) * len(X_SJ),
        )

    def _stabilizing_reps(self, X, J):
        """Members x of X with J^x = J (setwise)."""
        if len(J) == 0:
            return X
        D, _ = self.conj_tables
        block = D[np.ix_(X, list(J))]
        block = np.sort(block, axis=1)
        target = np.array(sorted(J))
        ok = (block == target[None, :]).all(axis=1)
        return X[ok]

    def x_J_s(self, J, s: int) -> int:
        """|X(J, {s})| = half the order of the centralizer of s in W_J."""
        if s not in set(J):
            raise GeneratorNotInJ(f"generator {s} not in {J}")
        D, _ = self.conj_tables
        members = self.parabolic_members(J)
        cnt = int((D[members, s] == s).sum())
        return cnt // 2

    def reflection_conjugacy_classes(self):
        """Orbits of T under W-conjugation, sorted by smallest member."""
        R = self.conj_by_gen
        nT = self.num_reflections
        seen = np.full(nT, -1, dtype=np.int64)
        classes = []
        for t in range(nT):
            if seen[t] >= 0:
                continue
            orb = {t}
            frontier = [t]
            while frontier:
                nxt = []
                for u in frontier:
                    for g in range(self.n):
                        v = int(R[u, g])
                        if v not in orb:
                            orb.add(v)
                            nxt.append(v)
                frontier = nxt
            for u in orb:
                seen[u] = len(classes)
            classes.append(tuple(sorted(orb)))
        return classes

    @cached_property
    def reflection_class_of(self):
        """Reflection index -> conjugacy class index."""
        classes = self.reflection_conjugacy_classes()
        out = np.zeros(self.num_reflections, dtype=np.int64)
        for ci, cls in enumerate(classes):
            for t in cls:
                out[t] = ci
        return out

    def full_support_reflections(self):
        sup = self.refl_support
        return np.nonzero(sup == self.full_mask)[0]

    def floor_class(self, t: int, ambient: str = "WJ"):
        """Reflections with the same support as t, conjugate to t.

        ambient "WJ" restricts conjugation to the parabolic on the support
        of t; "W" uses the whole group.
        """
        Jmask = int(self.refl_support[t])
        if ambient == "WJ":
            gens = [i for i in range(self.n) if Jmask >> i & 1]
        elif ambient == "W":
            gens = list(range(self.n))
        else:
            raise ValueError(f"unknown ambient {ambient!r}")
        R = self.conj_by_gen
        orb = {t}
        frontier = [t]
        while frontier:
            nxt = []
            for u in frontier:
                for g in gens:
                    v = int(R[u, g])
                    if v not in orb:
                        orb.add(v)
                        nxt.append(v)
            frontier = nxt
        return sorted(u for u in orb if int(self.refl_support[u]) == Jmask)

    def palindromic_decomposition(self, t: int):
        """(s, v) with t = v^-1 s v, s a generator, v in the support parabolic."""
        telem = int(self.refl_ids[t])
        word = self.word(telem)
        k = len(word) // 2
        s = word[k]
        R = self.conj_by_gen
        u = s
        for g in word[k + 1:]:
            u = int(R[u, g])
        if u == t:
            v = self.element_of_word(word[k + 1:])
            return s, v
        # middle-letter construction failed; fall back to brute-force search
        D, _ = self.conj_tables
        J = self.support_set(telem)
        for v in self.parabolic_members(J):
            for s2 in J:
                if int(D[v, s2]) == t:
                    return s2, int(v)
        raise AssertionError("no palindromic decomposition found")


@dataclass
class ParabolicData:
    """Everything Theorem-1 style bookkeeping needs about one subset J."""

    J: tuple[int, ...]
    group: EnumeratedGroup
    W_J: np.ndarray
    T_J: np.ndarray
    X_J: np.ndarray
    irreducible: bool
    coxeter_class: list  # (K sorted tuple, witness id c with K^c = J)
    X_SJ: np.ndarray
    normalizer_order: int

    def normalizer_members(self):
        """N_W(W_J) = W_J * X(S,J), materialized as a sorted id array."""
        g = self.group
        out = set()
        for u in self.W_J:
            for x in self.X_SJ:
                out.add(g.mul(int(u), int(x)))
        assert len(out) == self.normalizer_order
        return np.array(sorted(out), dtype=np.int64)


def _mask(J) -> int:
    m = 0
    for s in J:
        m |= 1 << int(s)
    return m


def build_group(diagram: CoxeterDiagram, limit: int = DEFAULT_ORDER_LIMIT,
                force_matrix: bool = False) -> EnumeratedGroup:
    """Enumerate the whole group by BFS through the chosen representation."""
    if diagram.order > limit:
        raise OrderLimitExceeded(
            f"{diagram.type_label} has order {diagram.order} > limit {limit}",
            known_order=diagram.order)
    if len(diagram.components) > 1:
        subgroups = []
        gen_map = {}
        for ci, comp in enumerate(diagram.components):
            sub = parse_group_spec(comp.label)
            subgroups.append(build_group(sub, limit=limit,
                                         force_matrix=force_matrix))
            for li, gnode in enumerate(comp.nodes):
                gen_map[gnode] = (ci, li)
        engine = _ProductEngine(subgroups, gen_map)
    else:
        comp = diagram.components[0]
        if comp.letter == "I" and not force_matrix:
            engine = _DihedralEngine(comp.param)
        else:
            engine = _MatrixEngine([list(r) for r in diagram.bonds])
    return _bfs_enumerate(diagram, engine)


def _bfs_enumerate(diagram, engine) -> EnumeratedGroup:
    n = diagram.rank
    ids = {engine.identity_key(): 0}
    parent, gen_of, length, support = [0], [-1], [0], [0]
    right_rows = []
    level_stack = engine.start_stack()
    level_ids = [0]
    depth = 0
    while level_ids:
        next_stack_parts, next_ids = [], []
        level_rows = np.zeros((len(level_ids), n), dtype=np.int32)
        for g in range(n):
            out = engine.right_apply(level_stack, g)
            keys = engine.keys(out)
            for i, key in enumerate(keys):
                j = ids.get(key)
                if j is None:
                    j = len(ids)
                    ids[key] = j
                    parent.append(level_ids[i])
                    gen_of.append(g)
                    length.append(depth + 1)
                    support.append(support[level_ids[i]] | (1 << g))
                    next_stack_parts.append(
                        out[i] if isinstance(out, list) else out[i:i + 1])
                    next_ids.append(j)
                level_rows[i, g] = j
        right_rows.append((level_ids, level_rows))
        if next_ids:
            if isinstance(level_stack, list):
                level_stack = next_stack_parts
            else:
                level_stack = np.concatenate(next_stack_parts, axis=0)
            level_ids = next_ids
        else:
            level_ids = []
        depth += 1
    order = len(ids)
    if order != diagram.order:
        raise NonFiniteDiagram(
            f"enumeration found {order} elements, expected {diagram.order}")
    right_mul = np.zeros((order, n), dtype=np.int32)
    for lids, rows in right_rows:
        right_mul[lids, :] = rows
    # left multiplication via a second pass over all elements
    left_mul = np.zeros((order, n), dtype=np.int32)
    if isinstance(engine, _MatrixEngine):
        # rebuild all matrices in id order (cheap: one pass along words)
        N = engine.identity.shape[0]
        mats = np.zeros((order, N, N), dtype=np.int64)
        mats[0] = engine.identity
        for y in range(1, order):
            mats[y] = mats[parent[y]] @ engine.gens[gen_of[y]]
        for g in range(n):
            out = engine.gens[g] @ mats
            for x in range(order):
                left_mul[x, g] = ids[out[x].tobytes()]
    else:
        allkeys = [None] * order
        for k, i in ids.items():
            allkeys[i] = k
        for g in range(n):
            out = engine.left_apply(allkeys, g)
            for x in range(order):
                left_mul[x, g] = ids[out[x]]
    return EnumeratedGroup(
        diagram,
        right_mul=right_mul,
        left_mul=left_mul,
        parent=np.array(parent, dtype=np.int32),
        gen_of=np.array(gen_of, dtype=np.int16),
        length=np.array(length, dtype=np.int16),
        support=np.array(support, dtype=np.int64),
    )


@lru_cache(maxsize=32)
def group(spec: str, limit: int = DEFAULT_ORDER_LIMIT) -> EnumeratedGroup:
    """Parse and build, with caching keyed on the spec string."""
    return build_group(parse_group_spec(spec), limit=limit)
