"""The lcm-lattice of a monomial ideal, with generator-support labels.

Every element m carries the label ``A_m``: the set of generator indices
dividing m.  Divisibility order is exactly label inclusion, so closure,
meets and joins are pure set computations; the companion simplicial
complex at m has the labels of the covered elements as facets.

Abstract atomic lattices (given only by their labels, e.g. through the
JSON dump format) are supported by synthesising a monomial ideal with
one variable per nonbottom element; the synthesised ideal has exactly
the requested lcm-lattice, which is checked after construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from monres.linalg import Field
from monres.monomials import Monomial, MonomialIdeal, parse_monomial
from monres.vcomplex import prune_facets, reduced_homology

MAX_ATOMS = 63
SUBSET_ENUM_LIMIT = 20


@dataclass(frozen=True)
class LatticeElement:
    id: int
    mdeg: Monomial
    A: frozenset
    rank: int
    covers: tuple       # ids of elements covered by this one (lower neighbours)
    covered_by: tuple   # ids of elements covering this one (upper neighbours)


@dataclass(frozen=True)
class SimplicialComplexAt:
    """Facets of the complex at m: labels of the covered elements; {()} at atoms."""

    m: int
    facets: tuple


class LcmLattice:
    def __init__(self, ideal: MonomialIdeal, elements_data):
        """elements_data: list of (mdeg, A frozenset); order is canonicalised here."""
        self.ideal = ideal
        self.r = ideal.r
        data = sorted(elements_data, key=lambda p: p[0].sort_key())
        labels = [frozenset(A) for _, A in data]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate element labels")
        below = [[False] * len(data) for _ in data]
        for i, (_, Ai) in enumerate(data):
            for j, (_, Aj) in enumerate(data):
                below[i][j] = frozenset(Ai) < frozenset(Aj)
        covers_of = [[] for _ in data]
        covered_by = [[] for _ in data]
        for j in range(len(data)):
            for i in range(len(data)):
                if below[i][j] and not any(below[i][k] and below[k][j] for k in range(len(data))):
                    covers_of[j].append(i)
                    covered_by[i].append(j)
        ranks = [0] * len(data)
        for j in range(len(data)):  # degree order is a linear extension
            ranks[j] = 1 + max((ranks[i] for i in covers_of[j]), default=-1)
        self.elements = [
            LatticeElement(i, data[i][0], frozenset(data[i][1]), ranks[i],
                           tuple(covers_of[i]), tuple(covered_by[i]))
            for i in range(len(data))
        ]
        self.by_label = {e.A: e.id for e in self.elements}
        self.bottom = self.by_label[frozenset()]
        self.top = self.by_label[frozenset(range(1, self.r + 1))]
        self.atom_ids = [self.by_label[frozenset([i])] for i in range(1, self.r + 1)]
        self._homology_cache: dict = {}

    # -- construction ------------------------------------------------
    @staticmethod
    def from_ideal(ideal: MonomialIdeal) -> "LcmLattice":
        if ideal.r > MAX_ATOMS:
            raise ValueError(f"at most {MAX_ATOMS} generators supported")
        mdegs: dict = {}
        if ideal.r <= SUBSET_ENUM_LIMIT:
            for size in range(ideal.r + 1):
                for A in combinations(range(1, ideal.r + 1), size):
                    m = ideal.mdeg_of_subset(A)
                    mdegs.setdefault(m.exponents, m)
        else:
            # join-closure from the atoms, avoiding the 2^r sweep
            mdegs[ideal.one().exponents] = ideal.one()
            frontier = {g.exponents: g for g in ideal.gens}
            mdegs.update(frontier)
            while frontier:
                new: dict = {}
                for _, m in sorted(frontier.items()):
                    for g in ideal.gens:
                        j = m.lcm(g)
                        if j.exponents not in mdegs and j.exponents not in new:
                            new[j.exponents] = j
                mdegs.update(new)
                frontier = new
        elements = []
        for m in mdegs.values():
            A = frozenset(i for i in range(1, ideal.r + 1) if ideal.generator(i).divides(m))
            elements.append((m, A))
        return LcmLattice(ideal, elements)

    @staticmethod
    def from_labels(labels) -> "LcmLattice":
        """Realise an abstract atomic lattice, given as a family of A-labels.

        The family must contain the empty set, every singleton of its
        vertex union, the union itself, and be closed under pairwise
        intersection.  A monomial ideal with this lcm-lattice is
        synthesised (one variable per nonbottom element plus one shared
        variable) and used for all multigraded data.
        """
        fam = {frozenset(A) for A in labels}
        verts = sorted(set().union(*fam)) if fam else []
        if verts != list(range(1, len(verts) + 1)):
            raise ValueError("atoms must be numbered 1..r")
        r = len(verts)
        if r > MAX_ATOMS:
            raise ValueError(f"at most {MAX_ATOMS} atoms supported")
        needed = {frozenset()} | {frozenset([i]) for i in verts} | {frozenset(verts)}
        missing = needed - fam
        if missing:
            raise ValueError(f"labels must include bottom, atoms and top; missing {sorted(map(sorted, missing))}")
        for a in fam:
            for b in fam:
                if a & b not in fam:
                    raise ValueError(f"labels not intersection-closed at {sorted(a)} ^ {sorted(b)}")
        nonbottom = sorted((A for A in fam if A), key=lambda A: (len(A), sorted(A)))
        names = ["z"] + [f"y{k}" for k in range(len(nonbottom))]
        gens = []
        for i in verts:
            exps = [1] + [0 if i in A else 1 for A in nonbottom]
            gens.append(Monomial(tuple(exps)))
        ideal = MonomialIdeal(names, gens)
        lat = LcmLattice.from_ideal(ideal)
        if {e.A for e in lat.elements} != fam:
            raise ValueError("label family is not realisable as an lcm-lattice")
        return lat

    # -- basic queries -----------------------------------------------
    def __len__(self):
        return len(self.elements)

    def element(self, m_id: int) -> LatticeElement:
        return self.elements[m_id]

    def id_of_label(self, A) -> int:
        key = frozenset(A)
        if key not in self.by_label:
            raise KeyError(f"no lattice element with label {sorted(key)}")
        return self.by_label[key]

    def leq(self, a: int, b: int) -> bool:
        return self.elements[a].A <= self.elements[b].A

    def lt(self, a: int, b: int) -> bool:
        return self.elements[a].A < self.elements[b].A

    def below(self, m_id: int, strict: bool = True):
        """Ids of elements <= m (or < m), in canonical element order."""
        A = self.elements[m_id].A
        return [e.id for e in self.elements if e.A < A or (not strict and e.A == A)]

    def closure(self, A) -> frozenset:
        """Smallest label containing A: intersection of all labels above A."""
        A = frozenset(A)
        out = frozenset(range(1, self.r + 1))
        for lbl in self.by_label:
            if A <= lbl and lbl < out:
                out = lbl
        if not A <= out:
            raise ValueError(f"subset {sorted(A)} out of range")
        return out

    def closure_id(self, A) -> int:
        return self.by_label[self.closure(A)]

    def meet(self, a: int, b: int) -> int:
        return self.by_label[self.elements[a].A & self.elements[b].A]

    def join(self, a: int, b: int) -> int:
        return self.by_label[self.closure(self.elements[a].A | self.elements[b].A)]

    def rank_of(self, m_id: int) -> int:
        return self.elements[m_id].rank

    def lattice_rank(self) -> int:
        return self.elements[self.top].rank

    # -- simplicial data ----------------------------------------------
    def simplicial_complex_at(self, m_id: int) -> SimplicialComplexAt:
        if m_id == self.bottom:
            raise ValueError("no simplicial complex at the bottom element")
        e = self.elements[m_id]
        if e.rank == 1:
            return SimplicialComplexAt(m_id, ((),))
        facets = prune_facets(tuple(sorted(self.elements[c].A)) for c in e.covers)
        return SimplicialComplexAt(m_id, tuple(facets))

    def q_faces(self, m_id: int):
        """Subsets of A_m whose closure is exactly A_m, sorted."""
        if m_id == self.bottom:
            raise ValueError("Q is undefined at the bottom element")
        A = sorted(self.elements[m_id].A)
        target = self.elements[m_id].A
        out = []
        for size in range(len(A) + 1):
            for sub in combinations(A, size):
                if self.closure(sub) == target:
                    out.append(sub)
        return out

    def is_scarf_multidegree(self, m_id: int) -> bool:
        """True iff exactly one subset of the generators has this multidegree."""
        if m_id == self.bottom:
            raise ValueError("the bottom element is not a multidegree")
        A = sorted(self.elements[m_id].A)
        target = self.elements[m_id].A
        count = 0
        for size in range(len(A) + 1):
            for sub in combinations(A, size):
                if self.closure(sub) == target:
                    count += 1
                    if count > 1:
                        return False
        return count == 1

    def scarf_ids(self):
        return [e.id for e in self.elements if e.id != self.bottom and self.is_scarf_multidegree(e.id)]

    # -- homology of the complexes at the elements --------------------
    def homology_at(self, m_id: int, field: Field):
        """dict dim -> (dim_k H~, representative Chains) for Delta_m."""
        cache = self._homology_cache.setdefault(field.char, {})
        if m_id not in cache:
            cache[m_id] = reduced_homology(field, self.simplicial_complex_at(m_id).facets)
        return cache[m_id]

    def compute_homologies(self, field: Field, jobs: int = 1):
        ids = [e.id for e in self.elements if e.id != self.bottom]
        if jobs > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=jobs) as pool:
                list(pool.map(lambda i: self.homology_at(i, field), ids))
        else:
            for i in ids:
                self.homology_at(i, field)
        return {i: self.homology_at(i, field) for i in ids}

    def betti_poset_ids(self, field: Field):
        """Bottom plus every element with nonvanishing reduced homology."""
        out = [self.bottom]
        for e in self.elements:
            if e.id == self.bottom:
                continue
            if self.homology_at(e.id, field):
                out.append(e.id)
        return out

    def betti_numbers(self, field: Field):
        """Homology-formula Betti table: (i, element id) -> b_{i,m}."""
        table = {(0, self.bottom): 1}
        for e in self.elements:
            if e.id == self.bottom:
                continue
            for dim, (n, _) in self.homology_at(e.id, field).items():
                table[(dim + 2, e.id)] = n
        return table

    # -- JSON ----------------------------------------------------------
    def to_json(self) -> str:
        doc = {
            "vars": self.ideal.names,
            "gens": [g.to_str(self.ideal.names) for g in self.ideal.gens],
            "elements": [
                {
                    "id": e.id,
                    "mdeg": e.mdeg.to_str(self.ideal.names),
                    "A": sorted(e.A),
                    "covers": sorted(e.covers),
                }
                for e in self.elements
            ],
        }
        return json.dumps(doc, indent=2)

    @staticmethod
    def from_json(text: str) -> "LcmLattice":
        doc = json.loads(text)
        if "vars" in doc and "gens" in doc:
            names = doc["vars"]
            gens = [parse_monomial(g, names) for g in doc["gens"]]
            lat = LcmLattice.from_ideal(MonomialIdeal(names, gens))
        else:
            lat = LcmLattice.from_labels([tuple(e["A"]) for e in doc["elements"]])
        given = {frozenset(e["A"]) for e in doc["elements"]}
        have = {e.A for e in lat.elements}
        if given != have:
            raise ValueError("element list does not match the lattice of the given ideal")
        return lat
