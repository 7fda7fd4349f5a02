"""Multigraded free complexes and the resolution algorithms.

A multigraded complex is stored as its frame (scalar matrices between
based levels) plus a multidegree for every basis element; the monomial
matrix entry in position (row e', col e) is ``scalar * mdeg(e)/mdeg(e')``
and is reconstructed on demand, never stored.  Labels are chains in the
generator simplex whenever the complex was built from one (Taylor
resolution, cancellations, the atomic lattice resolution), and opaque
strings otherwise (JSON input).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from monres.chains import Chain, boundary, format_chain, mdeg_chain, support
from monres.lattice import LcmLattice
from monres.linalg import Field, Matrix
from monres.monomials import Monomial, MonomialIdeal, parse_monomial
from monres.vcomplex import BasedComplex, chain_to_coords, complex_of_facets, exact_closure


@dataclass
class MgBasisElement:
    label: object          # Chain or str
    mdeg: Monomial
    hdeg: int

    def label_str(self, names) -> str:
        if isinstance(self.label, Chain):
            return format_chain(self.label)
        return str(self.label)


class MultigradedComplex:
    """Frame matrices plus per-element multidegrees over a fixed ideal."""

    def __init__(self, ideal: MonomialIdeal, field: Field, levels, frames):
        self.ideal = ideal
        self.field = field
        self.levels = [list(lv) for lv in levels]
        self.frames = list(frames)
        if len(self.frames) != len(self.levels):
            raise ValueError("need one frame slot per level (frames[0] unused)")
        for i in range(1, len(self.levels)):
            fr = self.frames[i]
            if fr.nrows != len(self.levels[i - 1]) or fr.ncols != len(self.levels[i]):
                raise ValueError("frame shape mismatch")
        for i, lv in enumerate(self.levels):
            for e in lv:
                if e.hdeg != i:
                    raise ValueError("homological degree mismatch")

    @property
    def length(self) -> int:
        n = len(self.levels) - 1
        while n > 0 and not self.levels[n]:
            n -= 1
        return n

    def frame(self, i: int) -> Matrix:
        if 1 <= i < len(self.levels):
            return self.frames[i]
        rows = len(self.levels[i - 1]) if 0 <= i - 1 < len(self.levels) else 0
        return Matrix.zero(self.field, rows, 0)

    def rank_vector(self):
        return [len(self.levels[i]) for i in range(self.length + 1)]

    def s_entry(self, i: int, row: int, col: int):
        """(scalar, monomial quotient) for the S-matrix entry of map i."""
        scalar = self.frames[i][row, col]
        lo = self.levels[i - 1][row].mdeg
        hi = self.levels[i][col].mdeg
        if scalar == self.field.zero:
            return scalar, self.ideal.one()
        return scalar, hi.quotient(lo)

    def homogeneity_failure(self):
        z = self.field.zero
        for i in range(1, len(self.levels)):
            fr = self.frames[i]
            for r in range(fr.nrows):
                for c in range(fr.ncols):
                    if fr[r, c] != z and not self.levels[i - 1][r].mdeg.divides(self.levels[i][c].mdeg):
                        return (i, r, c)
        return None

    def is_homogeneous(self) -> bool:
        return self.homogeneity_failure() is None

    def is_complex(self) -> bool:
        # with homogeneity, frame products vanish iff the S-matrix products do
        for i in range(2, len(self.levels)):
            if not self.frames[i - 1].mul(self.frames[i]).is_zero():
                return False
        return True

    def is_minimal(self) -> bool:
        z = self.field.zero
        for i in range(1, len(self.levels)):
            fr = self.frames[i]
            for r in range(fr.nrows):
                for c in range(fr.ncols):
                    if fr[r, c] != z and self.levels[i - 1][r].mdeg == self.levels[i][c].mdeg:
                        return False
        return True

    def to_based_complex(self) -> BasedComplex:
        labels = [[e.label_str(self.ideal.names) for e in lv] for lv in self.levels]
        return BasedComplex(self.field, labels, [None] + self.frames[1:])

    def restrict_to(self, m: Monomial) -> BasedComplex:
        """Frame of F(<= m): basis elements of multidegree dividing m."""
        keep = [[j for j, e in enumerate(lv) if e.mdeg.divides(m)] for lv in self.levels]
        top = len(self.levels) - 1
        while top > 0 and not keep[top]:
            top -= 1
        labels = [[f"{i}:{j}" for j in keep[i]] for i in range(top + 1)]
        maps: list = [None]
        for i in range(1, top + 1):
            maps.append(self.frames[i].submatrix(keep[i - 1], keep[i]))
        return BasedComplex(self.field, labels, maps)

    def betti_table(self, lat: LcmLattice):
        table: dict = {}
        for i, lv in enumerate(self.levels):
            for e in lv:
                key = (i, lat.id_of_label(frozenset(
                    k for k in range(1, lat.r + 1) if lat.ideal.generator(k).divides(e.mdeg)
                )))
                table[key] = table.get(key, 0) + 1
        return table

    # -- serialisation -------------------------------------------------
    def to_json(self) -> str:
        doc = {
            "char": self.field.char,
            "vars": self.ideal.names,
            "gens": [g.to_str(self.ideal.names) for g in self.ideal.gens],
            "levels": [
                [{"mdeg": e.mdeg.to_str(self.ideal.names), "label": e.label_str(self.ideal.names)}
                 for e in lv]
                for lv in self.levels
            ],
            "frames": [
                [[self.field.to_str(self.frames[i][r, c]) for c in range(self.frames[i].ncols)]
                 for r in range(self.frames[i].nrows)]
                for i in range(1, len(self.levels))
            ],
        }
        return json.dumps(doc, indent=2)

    @staticmethod
    def from_json(text: str) -> "MultigradedComplex":
        doc = json.loads(text)
        field = Field(doc.get("char", 0))
        names = doc["vars"]
        ideal = MonomialIdeal(names, [parse_monomial(g, names) for g in doc["gens"]])
        levels = []
        for i, lv in enumerate(doc["levels"]):
            levels.append([
                MgBasisElement(e.get("label", f"e[{i}][{j}]"), parse_monomial(e["mdeg"], names), i)
                for j, e in enumerate(lv)
            ])
        frames: list = [None]
        for i, rows in enumerate(doc["frames"], start=1):
            m = Matrix(field, [[field.of(x) for x in row] for row in rows]) if rows else \
                Matrix.zero(field, len(levels[i - 1]), len(levels[i]))
            if not rows:
                pass
            elif m.nrows != len(levels[i - 1]) or m.ncols != len(levels[i]):
                raise ValueError("frame shape mismatch in JSON input")
            frames.append(m)
        return MultigradedComplex(ideal, field, levels, frames)

    def render_text(self) -> str:
        names = self.ideal.names
        lines = []
        for i in range(self.length, 0, -1):
            mdegs = " ".join(e.mdeg.to_str(names) for e in self.levels[i])
            lines.append(f"degree {i}: basis multidegrees [{mdegs}]")
            rows = []
            for r in range(len(self.levels[i - 1])):
                cells = []
                for c in range(len(self.levels[i])):
                    scalar, quot = self.s_entry(i, r, c)
                    cells.append(_format_s_entry(self.field, scalar, quot, names))
                rows.append(" ".join(cells))
            lines.append("  d_%d = [%s]" % (i, "; ".join(rows)))
        lines.append(f"degree 0: basis multidegrees [{self.levels[0][0].mdeg.to_str(names)}]"
                     if self.levels[0] else "degree 0: empty")
        return "\n".join(lines)


def _format_s_entry(field: Field, scalar, quot: Monomial, names) -> str:
    if scalar == field.zero:
        return "0"
    mono = quot.to_str(names)
    s = str(scalar)
    if s == "1":
        return mono
    if s == "-1" and mono != "1":
        return f"-{mono}"
    return s if mono == "1" else f"{s}*{mono}"


# -- Taylor basis ------------------------------------------------------


class TaylorBasis:
    """Chains grouped by lattice element, with an explicit global order."""

    def __init__(self, lattice: LcmLattice, chains_by_elt, order=None):
        self.lattice = lattice
        self.by_elt = {m: list(cs) for m, cs in chains_by_elt.items()}
        if order is None:
            order = [(m, k) for m in sorted(self.by_elt) for k in range(len(self.by_elt[m]))]
        self.order = list(order)

    def chains_at(self, m_id: int):
        return list(self.by_elt.get(m_id, []))

    def flat(self):
        """(element id, chain) pairs in the basis order."""
        return [(m, self.by_elt[m][k]) for m, k in self.order]

    def chains(self):
        return [c for _, c in self.flat()]

    def counts(self):
        """(homological degree, element id) -> number of chains."""
        out: dict = {}
        for m, c in self.flat():
            key = (c.dim + 1, m)
            out[key] = out.get(key, 0) + 1
        return out

    def to_text(self) -> str:
        names = self.lattice.ideal.names
        lines = []
        for m in sorted(self.by_elt):
            if not self.by_elt[m]:
                continue
            mdeg = self.lattice.element(m).mdeg.to_str(names)
            chs = " ; ".join(format_chain(c) for c in self.by_elt[m])
            lines.append(f"{mdeg} : {chs}")
        return "\n".join(lines)


# -- Taylor resolution -------------------------------------------------


def taylor_resolution(ideal: MonomialIdeal, field: Field) -> MultigradedComplex:
    """The Taylor complex: one basis element per subset of the generators."""
    if ideal.r > 20:
        raise ValueError("Taylor resolution limited to 20 generators (2^r basis)")
    levels = []
    for size in range(ideal.r + 1):
        lv = []
        for A in combinations(range(1, ideal.r + 1), size):
            lv.append(MgBasisElement(Chain.from_face(field, A), ideal.mdeg_of_subset(A), size))
        levels.append(lv)
    frames: list = [None]
    for size in range(1, ideal.r + 1):
        index = {tuple(sorted(e.label.faces()[0])): j for j, e in enumerate(levels[size - 1])}
        cols = []
        for e in levels[size]:
            col = [field.zero] * len(levels[size - 1])
            for f, coeff in boundary(e.label).terms.items():
                col[index[f]] = coeff
            cols.append(col)
        frames.append(Matrix.from_columns(field, len(levels[size - 1]), cols))
    return MultigradedComplex(ideal, field, levels, frames)


# -- consecutive cancellation -------------------------------------------


def consecutive_cancellation(C: MultigradedComplex, i: int, q: int, p: int) -> MultigradedComplex:
    """Cancel the unit entry at (row q, col p) of the degree-i map.

    The entry must be a nonzero scalar between basis elements of equal
    multidegree.  Both elements are removed; the remaining degree-i map
    picks up the correction A1 - a^-1 * beta * alpha and the surviving
    degree-i labels are updated to f_v - a^-1 A[q,v] f_p.
    """
    f = C.field
    if not (1 <= i <= C.length):
        raise ValueError(f"no map at degree {i}")
    A = C.frames[i]
    a = A[q, p]
    if a == f.zero:
        raise ValueError("cancellation entry is zero")
    if C.levels[i - 1][q].mdeg != C.levels[i][p].mdeg:
        raise ValueError("cancellation entry is not a unit: multidegrees differ")
    inv_a = f.inv(a)

    new_levels = [list(lv) for lv in C.levels]
    new_frames = [None] + [C.frames[k].copy() for k in range(1, len(C.levels))]

    # update the surviving labels at level i
    fp = C.levels[i][p]
    for v in range(A.ncols):
        if v == p or A[q, v] == f.zero:
            continue
        e = new_levels[i][v]
        if isinstance(e.label, Chain) and isinstance(fp.label, Chain):
            lbl = e.label.sub(fp.label.scale(f.mul(inv_a, A[q, v])))
        else:
            lbl = e.label
        new_levels[i][v] = MgBasisElement(lbl, e.mdeg, e.hdeg)

    keep_rows = [u for u in range(A.nrows) if u != q]
    keep_cols = [v for v in range(A.ncols) if v != p]
    corrected = Matrix.zero(f, len(keep_rows), len(keep_cols))
    for ui, u in enumerate(keep_rows):
        for vi, v in enumerate(keep_cols):
            val = A[u, v]
            if A[u, p] != f.zero and A[q, v] != f.zero:
                val = f.sub(val, f.mul(f.mul(A[u, p], inv_a), A[q, v]))
            corrected.rows[ui][vi] = val
    new_frames[i] = corrected
    if i + 1 < len(new_levels):
        B = C.frames[i + 1]
        new_frames[i + 1] = B.submatrix(keep_cols, range(B.ncols))
    if i - 1 >= 1:
        D = C.frames[i - 1]
        new_frames[i - 1] = D.submatrix(range(D.nrows), keep_rows)
    new_levels[i] = [new_levels[i][v] for v in keep_cols]
    new_levels[i - 1] = [new_levels[i - 1][u] for u in keep_rows]

    while len(new_levels) > 1 and not new_levels[-1]:
        new_levels.pop()
        new_frames.pop()
    return MultigradedComplex(C.ideal, f, new_levels, new_frames)


def find_unit_entry(C: MultigradedComplex):
    """First unit entry scanning degrees low to high, rows top-down, row-major."""
    z = C.field.zero
    for i in range(1, C.length + 1):
        fr = C.frames[i]
        for q in range(fr.nrows):
            mq = C.levels[i - 1][q].mdeg
            for p in range(fr.ncols):
                if fr[q, p] != z and C.levels[i][p].mdeg == mq:
                    return (i, q, p)
    return None


def minimize_resolution(C: MultigradedComplex, lat: LcmLattice | None = None):
    """Cancel unit entries to a fixpoint; returns (minimal complex, Taylor basis)."""
    cur = C
    while True:
        hit = find_unit_entry(cur)
        if hit is None:
            break
        cur = consecutive_cancellation(cur, *hit)
    if lat is None:
        lat = LcmLattice.from_ideal(C.ideal)
    by_elt: dict = {}
    order = []
    for lv in cur.levels:
        for e in lv:
            if not isinstance(e.label, Chain):
                raise ValueError("minimization bookkeeping needs chain labels")
            m = lat.closure_id(support(e.label)) if not e.label.is_zero() else lat.bottom
            by_elt.setdefault(m, []).append(e.label)
            order.append((m, len(by_elt[m]) - 1))
    return cur, TaylorBasis(lat, by_elt, order)


# -- the atomic lattice resolution ---------------------------------------


def _face_boundary_matrix(field: Field, dim: int, vertex_set):
    """Boundary matrix from dim-faces to (dim-1)-faces inside the given simplex."""
    verts = sorted(vertex_set)
    cols_faces = list(combinations(verts, dim + 1))
    rows_faces = list(combinations(verts, dim)) if dim >= 1 else [()]
    index = {fc: i for i, fc in enumerate(rows_faces)}
    cols = []
    for fc in cols_faces:
        col = [field.zero] * len(rows_faces)
        for sub, coeff in boundary(Chain.from_face(field, fc)).terms.items():
            col[index[sub]] = coeff
        cols.append(col)
    return rows_faces, cols_faces, Matrix.from_columns(field, len(rows_faces), cols)


def lift_cycle_in_simplex(field: Field, cycle: Chain, vertex_set) -> Chain:
    """Canonical chain g with boundary(g) = cycle, supported in the given simplex."""
    dim = cycle.dim + 1
    rows_faces, cols_faces, bd = _face_boundary_matrix(field, dim, vertex_set)
    rhs = [field.zero] * len(rows_faces)
    index = {fc: i for i, fc in enumerate(rows_faces)}
    for fc, coeff in cycle.terms.items():
        if fc not in index:
            raise ValueError("cycle leaves the allowed simplex")
        rhs[index[fc]] = coeff
    sol = bd.solve(rhs)
    if sol is None:
        raise ValueError("cycle is not a boundary in the allowed simplex")
    return Chain(field, {fc: x for fc, x in zip(cols_faces, sol) if x != field.zero}, dim=dim)


class _MasterChains:
    """Bookkeeping for chains created during the atomic construction."""

    def __init__(self, field: Field):
        self.field = field
        self.chains: list[Chain] = []
        self.elt: list[int] = []
        self.dexp: list[list] = []  # list of (master index, coeff)

    def add(self, chain: Chain, elt_id: int, dexp):
        self.chains.append(chain)
        self.elt.append(elt_id)
        self.dexp.append(list(dexp))
        return len(self.chains) - 1

    def complex_on(self, idxs) -> tuple:
        """BasedComplex on the given master indices (labels are the indices)."""
        f = self.field
        by_level: dict = {}
        for k in idxs:
            by_level.setdefault(self.chains[k].dim + 1, []).append(k)
        top = max(by_level) if by_level else 0
        labels = [by_level.get(h, []) for h in range(top + 1)]
        pos = {k: (h, j) for h in range(top + 1) for j, k in enumerate(labels[h])}
        maps: list = [None]
        for h in range(1, top + 1):
            cols = []
            for k in labels[h]:
                col = [f.zero] * len(labels[h - 1])
                for tgt, coeff in self.dexp[k]:
                    col[pos[tgt][1]] = coeff
                cols.append(col)
            maps.append(Matrix.from_columns(f, len(labels[h - 1]), cols))
        return BasedComplex(f, labels, maps), labels


def atomic_lattice_resolution(lat: LcmLattice, field: Field):
    """Build a minimal free resolution element by element via exact closures.

    Returns ``(TaylorBasis, MultigradedComplex)``.  Processing order is
    the canonical linear extension (atoms in generator order, then the
    degree-then-lex element order); every choice inside is canonical, so
    the output is deterministic.
    """
    ideal = lat.ideal
    master = _MasterChains(field)
    gamma: dict = {e.id: [] for e in lat.elements}

    bot = master.add(Chain.from_face(field, ()), lat.bottom, [])
    gamma[lat.bottom].append(bot)
    for i, atom in enumerate(lat.atom_ids, start=1):
        k = master.add(Chain.from_face(field, (i,)), atom, [(bot, field.one)])
        gamma[atom].append(k)

    order = [e.id for e in lat.elements if e.rank >= 2]
    for m_id in order:
        A_m = lat.element(m_id).A
        idxs = [k for k in range(len(master.chains)) if lat.lt(master.elt[k], m_id)]
        U, labels = master.complex_on(idxs)
        _, added = exact_closure(U)
        for level in sorted(added):
            for _, cycle_vec in added[level]:
                pairs = [(coeff, master.chains[k]) for coeff, k in zip(cycle_vec, labels[level - 1])]
                z = Chain.combine(field, pairs, dim=level - 2)
                g = lift_cycle_in_simplex(field, z, A_m)
                dexp = [(k, coeff) for coeff, k in zip(cycle_vec, labels[level - 1]) if coeff != field.zero]
                gamma[m_id].append(master.add(g, m_id, dexp))

    by_level: dict = {}
    ordered = [lat.bottom] + lat.atom_ids + order
    for m_id in ordered:
        for k in gamma[m_id]:
            by_level.setdefault(master.chains[k].dim + 1, []).append(k)
    top = max(by_level)
    pos = {}
    levels = []
    for h in range(top + 1):
        lv = []
        for j, k in enumerate(by_level.get(h, [])):
            pos[k] = (h, j)
            lv.append(MgBasisElement(master.chains[k], lat.element(master.elt[k]).mdeg, h))
        levels.append(lv)
    frames: list = [None]
    for h in range(1, top + 1):
        cols = []
        for k in by_level.get(h, []):
            col = [field.zero] * len(levels[h - 1])
            for tgt, coeff in master.dexp[k]:
                col[pos[tgt][1]] = coeff
            cols.append(col)
        frames.append(Matrix.from_columns(field, len(levels[h - 1]), cols))
    C = MultigradedComplex(ideal, field, levels, frames)
    basis = TaylorBasis(lat, {m: [master.chains[k] for k in ks] for m, ks in gamma.items() if ks})
    return basis, C


# -- Taylor bases <-> resolutions -----------------------------------------


class TaylorBasisError(ValueError):
    def __init__(self, message, m_id=None):
        super().__init__(message)
        self.m_id = m_id


def resolution_from_taylor_basis(lat: LcmLattice, chains) -> MultigradedComplex:
    """Build and validate the resolution determined by a set of chains.

    `chains` is a TaylorBasis or a flat chain list: it must contain the
    empty chain, one vertex per generator, and for each lattice element
    chains whose boundary classes form a basis of the homology of the
    complex at that element.  Levels keep the given chain order.
    """
    field = None
    if isinstance(chains, TaylorBasis):
        flat = chains.chains()
    else:
        flat = list(chains)
    if not flat:
        raise TaylorBasisError("empty basis")
    field = flat[0].field
    ideal = lat.ideal

    placed = []  # (elt_id, chain) in given order
    for c in flat:
        if c.is_zero():
            raise TaylorBasisError("zero chain in basis")
        m = lat.closure_id(support(c)) if c.dim >= 0 else lat.bottom
        placed.append((m, c))

    bottoms = [c for m, c in placed if m == lat.bottom]
    if len(bottoms) != 1 or bottoms[0].terms != {(): field.one}:
        raise TaylorBasisError("basis must contain exactly the empty chain at the bottom")
    for i, atom in enumerate(lat.atom_ids, start=1):
        at = [c for m, c in placed if m == atom]
        if len(at) != 1 or at[0].terms != {(i,): field.one}:
            raise TaylorBasisError(f"basis must contain exactly the vertex {{{i}}} at generator {i}", atom)

    by_elt: dict = {}
    for m, c in placed:
        by_elt.setdefault(m, []).append(c)

    # homology-basis condition at every element of rank >= 2
    for e in lat.elements:
        if e.id == lat.bottom or e.rank == 1:
            continue
        hom = lat.homology_at(e.id, field)
        mine = by_elt.get(e.id, [])
        for c in mine:
            if not set(support(c)) <= set(e.A):
                raise TaylorBasisError(f"chain {format_chain(c)} leaves the simplex at its element", e.id)
        facets = lat.simplicial_complex_at(e.id).facets
        cx = complex_of_facets(field, facets)
        by_dim: dict = {}
        for c in mine:
            by_dim.setdefault(c.dim - 1, []).append(c)
        dims_needed = {d: n for d, (n, _) in hom.items()}
        for d in set(by_dim) | set(dims_needed):
            got = by_dim.get(d, [])
            want = dims_needed.get(d, 0)
            if len(got) != want:
                raise TaylorBasisError(
                    f"element {e.id}: {len(got)} chains with boundary dimension {d}, homology needs {want}",
                    e.id,
                )
            if not got:
                continue
            dcols = []
            for c in got:
                b = boundary(c)
                try:
                    dcols.append(chain_to_coords(cx, b))
                except ValueError as err:
                    raise TaylorBasisError(f"element {e.id}: boundary leaves the complex: {err}", e.id)
            level = d + 1
            dmat = cx.differential(level)
            for col in dcols:
                if any(x != field.zero for x in dmat.mul_vector(col)):
                    raise TaylorBasisError(f"element {e.id}: boundary of a basis chain is not a cycle", e.id)
            up = cx.differential(level + 1)
            im = Matrix.from_columns(field, len(dcols[0]), [up.column(j) for j in range(up.ncols)])
            allm = Matrix.from_columns(field, len(dcols[0]),
                                       [up.column(j) for j in range(up.ncols)] + dcols)
            if allm.rank() != im.rank() + len(dcols):
                raise TaylorBasisError(f"element {e.id}: boundary classes are dependent in homology", e.id)

    # assemble levels in the given order and solve each boundary in the span
    by_hdeg: dict = {}
    for m, c in placed:
        by_hdeg.setdefault(c.dim + 1, []).append((m, c))
    top = max(by_hdeg)
    if sorted(by_hdeg) != list(range(top + 1)):
        raise TaylorBasisError("basis misses a homological degree")
    levels = []
    for h in range(top + 1):
        levels.append([MgBasisElement(c, lat.element(m).mdeg, h) for m, c in by_hdeg[h]])
    frames: list = [None]
    for h in range(1, top + 1):
        lower = [c for _, c in by_hdeg[h - 1]]
        faces = sorted({fc for c in lower for fc in c.terms})
        index = {fc: i for i, fc in enumerate(faces)}
        cols_bases = Matrix.from_columns(
            field, len(faces),
            [[c.terms.get(fc, field.zero) for fc in faces] for c in lower],
        )
        cols = []
        for m, c in by_hdeg[h]:
            b = boundary(c)
            rhs = [field.zero] * len(faces)
            for fc, coeff in b.terms.items():
                if fc not in index:
                    raise TaylorBasisError(
                        f"boundary of {format_chain(c)} is outside the span of lower basis chains", m)
                rhs[index[fc]] = coeff
            sol = cols_bases.solve(rhs)
            if sol is None:
                raise TaylorBasisError(
                    f"boundary of {format_chain(c)} is outside the span of lower basis chains", m)
            cols.append(sol)
        frames.append(Matrix.from_columns(field, len(by_hdeg[h - 1]), cols))
    return MultigradedComplex(lat.ideal, field, levels, frames)


def taylor_basis_from_resolution(C: MultigradedComplex, lat: LcmLattice | None = None) -> TaylorBasis:
    """Recover a Taylor basis from the frame of a minimal free resolution.

    Requires the degree-1 map to be the generators in order with unit
    frame entries.  Each column determines a cycle over the chains
    already built; the new chain is the canonical lift inside the
    simplex on the closure of the cycle's support.
    """
    field = C.field
    ideal = C.ideal
    if lat is None:
        lat = LcmLattice.from_ideal(ideal)
    if len(C.levels[0]) != 1 or not C.levels[0][0].mdeg.is_one():
        raise TaylorBasisError("degree 0 must be a single basis element of multidegree 1")
    if len(C.levels[1]) != ideal.r:
        raise TaylorBasisError("degree 1 must have one basis element per generator")
    for j in range(ideal.r):
        if C.levels[1][j].mdeg != ideal.generator(j + 1):
            raise TaylorBasisError("degree-1 multidegrees must be the generators in order")
        if C.frames[1][0, j] != field.one:
            raise TaylorBasisError("degree-1 map must be the row (m_1 ... m_r)")

    built: list[list[Chain]] = [[Chain.from_face(field, ())],
                                [Chain.from_face(field, (i,)) for i in range(1, ideal.r + 1)]]
    order = []
    by_elt: dict = {lat.bottom: [built[0][0]]}
    order.append((lat.bottom, 0))
    for i, atom in enumerate(lat.atom_ids):
        by_elt[atom] = [built[1][i]]
        order.append((atom, 0))

    for h in range(2, C.length + 1):
        prev = built[h - 1]
        new_level = []
        for col in range(len(C.levels[h])):
            pairs = [(C.frames[h][j, col], prev[j]) for j in range(len(prev))]
            z = Chain.combine(field, pairs, dim=h - 2)
            if z.is_zero():
                raise TaylorBasisError("zero column in a minimal resolution frame")
            supp = set()
            for coeff, g in pairs:
                if coeff != field.zero:
                    supp.update(support(g))
            vertex_set = lat.closure(supp)
            try:
                fchain = lift_cycle_in_simplex(field, z, vertex_set)
            except ValueError as err:
                raise TaylorBasisError(f"column cycle is not a boundary: {err}")
            m = lat.closure_id(support(fchain))
            if lat.element(m).mdeg != C.levels[h][col].mdeg:
                raise TaylorBasisError("recovered chain multidegree disagrees with the basis element")
            new_level.append(fchain)
            by_elt.setdefault(m, []).append(fchain)
            order.append((m, len(by_elt[m]) - 1))
        built.append(new_level)
    return TaylorBasis(lat, by_elt, order)


# -- verification -----------------------------------------------------


@dataclass
class VerificationReport:
    homogeneous: bool
    complex: bool
    h0_ok: bool
    restriction_failure: object      # None or the offending multidegree string
    is_resolution: bool
    is_minimal: bool
    notes: list = dc_field(default_factory=list)

    def summary(self) -> str:
        verdict = "PASS" if self.is_resolution else "FAIL"
        lines = [
            f"homogeneous: {'yes' if self.homogeneous else 'no'}",
            f"complex (d^2=0): {'yes' if self.complex else 'no'}",
            f"H0 = S/M: {'yes' if self.h0_ok else 'no'}",
            "restricted frames exact: " + ("yes" if self.restriction_failure is None
                                           else f"no (fails at {self.restriction_failure})"),
            f"minimal: {'yes' if self.is_minimal else 'no'}",
            f"resolution: {verdict}",
        ]
        return "\n".join(lines + self.notes)


def verify_resolution(C: MultigradedComplex, lat: LcmLattice | None = None) -> VerificationReport:
    """PV criterion: homogeneity, d^2 = 0, restricted exactness on L_M, H0."""
    if lat is None:
        lat = LcmLattice.from_ideal(C.ideal)
    ideal = C.ideal
    notes = []
    hom = C.homogeneity_failure()
    homogeneous = hom is None
    if not homogeneous:
        notes.append(f"homogeneity fails at map {hom[0]} entry {hom[1:]}" )
    cx_ok = C.is_complex() if homogeneous else False

    h0_ok = (
        len(C.levels[0]) == 1
        and C.levels[0][0].mdeg.is_one()
        and len(C.levels) > 1
    )
    if h0_ok:
        image_mdegs = [C.levels[1][j].mdeg for j in range(len(C.levels[1]))
                       if any(C.frames[1][r, j] != C.field.zero for r in range(C.frames[1].nrows))]
        h0_ok = all(ideal.contains_monomial(m) for m in image_mdegs) and all(
            any(m.divides(g) for m in image_mdegs) for g in ideal.gens
        )

    restriction_failure = None
    if homogeneous and cx_ok:
        for e in lat.elements:
            if e.id == lat.bottom:
                continue
            sub = C.restrict_to(e.mdeg)
            if not sub.is_exact():
                restriction_failure = e.mdeg.to_str(ideal.names)
                break
    else:
        restriction_failure = "(skipped: not a homogeneous complex)"

    is_resolution = homogeneous and cx_ok and h0_ok and restriction_failure is None
    return VerificationReport(homogeneous, cx_ok, h0_ok, restriction_failure,
                              is_resolution, C.is_minimal(), notes)


# -- approximation, Scarf, transport, bounds ----------------------------


def maximal_approximation(C: MultigradedComplex) -> MultigradedComplex:
    """Zero every coefficient aimed strictly below another potential target.

    For a basis element e of multidegree m, the comparison set is the
    multidegrees of the next-lower level that strictly divide m; the
    coefficient on e' survives only if mdeg(e') is maximal in that set.
    The result may fail to be a complex; callers check `is_complex`.
    """
    z = C.field.zero
    frames: list = [None]
    for i in range(1, len(C.levels)):
        fr = C.frames[i].copy()
        lower = [e.mdeg for e in C.levels[i - 1]]
        for c, e in enumerate(C.levels[i]):
            cmp_set = [t for t in lower if t.divides(e.mdeg) and t != e.mdeg]
            for r in range(fr.nrows):
                if fr[r, c] == z:
                    continue
                mj = lower[r]
                if any(mj.divides(t) and mj != t for t in cmp_set):
                    fr.rows[r][c] = z
        frames.append(fr)
    return MultigradedComplex(C.ideal, C.field, C.levels, frames)


def scarf_complex(lat: LcmLattice):
    """The faces A_m over Scarf multidegrees, plus the empty face."""
    faces = [()]
    for m_id in lat.scarf_ids():
        faces.append(tuple(sorted(lat.element(m_id).A)))
    return sorted(faces, key=lambda f: (len(f), f))


class ChangeOfBasisError(ValueError):
    def __init__(self, condition, detail):
        super().__init__(f"Aut condition ({condition}) violated: {detail}")
        self.condition = condition


def change_of_basis(C: MultigradedComplex, Us) -> MultigradedComplex:
    """Conjugate the frames by per-degree automorphisms U_i (scalar frames).

    Entries of U_i are scalars; the implied S-entry is
    ``u * mdeg(e_col)/mdeg(e_row)``, so condition (iii) holds by
    construction.  (ii) forbids entries against divisibility; (i) asks
    the equal-multidegree block part to be invertible.
    """
    f = C.field
    Us = list(Us)
    if len(Us) < len(C.levels):
        Us = Us + [Matrix.identity(f, len(C.levels[i])) for i in range(len(Us), len(C.levels))]
    for i, U in enumerate(Us[: len(C.levels)]):
        lv = C.levels[i]
        if U.nrows != len(lv) or U.ncols != len(lv):
            raise ChangeOfBasisError("i", f"U_{i} has wrong shape")
        block = Matrix.zero(f, len(lv), len(lv))
        for r in range(len(lv)):
            for c in range(len(lv)):
                if U[r, c] != f.zero and not lv[r].mdeg.divides(lv[c].mdeg):
                    raise ChangeOfBasisError("ii", f"U_{i}[{r},{c}] nonzero but multidegree does not divide")
                if lv[r].mdeg == lv[c].mdeg:
                    block.rows[r][c] = U[r, c]
        if block.rank() != len(lv):
            raise ChangeOfBasisError("i", f"U_{i} equal-multidegree part is singular")
    frames: list = [None]
    for i in range(1, len(C.levels)):
        frames.append(Us[i - 1].inverse().mul(C.frames[i]).mul(Us[i]))
    levels = []
    for i, lv in enumerate(C.levels):
        new_lv = []
        for j, e in enumerate(lv):
            if all(isinstance(x.label, Chain) for x in lv):
                pairs = [(Us[i][l, j], lv[l].label) for l in range(len(lv))]
                lbl = Chain.combine(f, pairs, dim=i - 1)
            else:
                lbl = e.label
            new_lv.append(MgBasisElement(lbl, e.mdeg, e.hdeg))
        levels.append(new_lv)
    return MultigradedComplex(C.ideal, f, levels, frames)


def betti_poset_label_map(lat_M: LcmLattice, lat_N: LcmLattice, field: Field):
    """The canonical Betti-poset isomorphism (matching A-labels), or None."""
    bm = {lat_M.element(i).A for i in lat_M.betti_poset_ids(field)}
    bn = {lat_N.element(i).A for i in lat_N.betti_poset_ids(field)}
    if bm != bn:
        return None
    return {lat_M.id_of_label(A): lat_N.id_of_label(A) for A in bm}


def transport_via_betti_poset(C: MultigradedComplex, lat_M: LcmLattice,
                              lat_N: LcmLattice, field: Field) -> MultigradedComplex:
    """Relabel the multidegrees of a minimal resolution through B_M ~ B_N."""
    mapping = betti_poset_label_map(lat_M, lat_N, field)
    if mapping is None:
        raise ValueError("Betti posets have different label families; no transport")
    levels = []
    for lv in C.levels:
        new_lv = []
        for e in lv:
            A = frozenset(k for k in range(1, lat_M.r + 1)
                          if lat_M.ideal.generator(k).divides(e.mdeg))
            m_id = lat_M.id_of_label(A)
            if m_id not in mapping:
                raise ValueError("a basis multidegree lies outside the Betti poset")
            new_lv.append(MgBasisElement(e.label, lat_N.element(mapping[m_id]).mdeg, e.hdeg))
        levels.append(new_lv)
    return MultigradedComplex(lat_N.ideal, C.field, levels, C.frames)


def projdim_bound(lat: LcmLattice) -> int:
    return lat.lattice_rank()
