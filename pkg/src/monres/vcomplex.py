"""Based complexes of vector spaces, homology with representatives, exact closures.

A based complex is a finite sequence of levels, each an ordered list of
basis labels, with a matrix mapping each level to the one below.  All
homology representatives are canonical: the echelon completion of an
image basis to a kernel basis under the fixed pivot order, so the exact
closure of a complex is deterministic.
"""

from __future__ import annotations

from itertools import combinations

from monres.chains import Chain, boundary
from monres.linalg import Field, Matrix


class BasedComplex:
    """Levels of labelled basis vectors joined by boundary matrices.

    ``maps[i]`` sends level i to level i-1 and has shape
    ``(len(labels[i-1]), len(labels[i]))``; ``maps[0]`` is None.
    """

    def __init__(self, field: Field, labels, maps):
        self.field = field
        self.labels = [list(lv) for lv in labels]
        self.maps = list(maps)
        if len(self.maps) != len(self.labels):
            raise ValueError("need one map slot per level (maps[0] unused)")
        for i in range(1, len(self.labels)):
            m = self.maps[i]
            if m.nrows != len(self.labels[i - 1]) or m.ncols != len(self.labels[i]):
                raise ValueError(f"map {i} has shape {m.nrows}x{m.ncols}, "
                                 f"want {len(self.labels[i - 1])}x{len(self.labels[i])}")

    @property
    def length(self) -> int:
        return len(self.labels) - 1

    def level_dim(self, i: int) -> int:
        if 0 <= i < len(self.labels):
            return len(self.labels[i])
        return 0

    def total_dim(self) -> int:
        return sum(len(lv) for lv in self.labels)

    def differential(self, i: int) -> Matrix:
        """The map level i -> level i-1, as a matrix (zero-sized off the ends)."""
        if 1 <= i <= self.length:
            return self.maps[i]
        return Matrix.zero(self.field, self.level_dim(i - 1), self.level_dim(i))

    def is_complex(self) -> bool:
        for i in range(2, self.length + 1):
            if not self.differential(i - 1).mul(self.differential(i)).is_zero():
                return False
        return True

    def homology(self, i: int):
        """(dimension, canonical cycle representatives) at level i.

        Representatives are coordinate vectors in level i: the echelon
        completion of an image basis of d_{i+1} to a kernel basis of d_i.
        """
        f = self.field
        dim_i = self.level_dim(i)
        if dim_i == 0:
            return 0, []
        d_i = self.differential(i)
        if i == 0:
            kernel_cols = Matrix.identity(f, dim_i).columns()
        else:
            kernel_cols = d_i.kernel_basis().columns()
        d_up = self.differential(i + 1)
        chosen: list[list] = []
        base = [d_up.column(j) for j in range(d_up.ncols)]
        current = Matrix.from_columns(f, dim_i, base)
        rank = current.rank()
        im_rank = rank
        reps = []
        for k in kernel_cols:
            cand = Matrix.from_columns(f, dim_i, base + chosen + [k])
            r = cand.rank()
            if r > rank:
                chosen.append(k)
                reps.append(k)
                rank = r
        return len(kernel_cols) - im_rank, reps

    def is_exact(self) -> bool:
        return all(self.homology(i)[0] == 0 for i in range(self.length + 1))

    def homology_dims(self):
        return [self.homology(i)[0] for i in range(self.length + 1)]


def exact_closure(U: BasedComplex, namer=None):
    """Minimal exact complex containing U as a based subcomplex.

    Returns ``(V, added)``; ``added[i]`` lists ``(label, cycle)`` pairs
    for the generators appended at level i, where `cycle` is the image
    vector in U's level i-1 coordinates.  With U already exact, V is U.
    """
    if not U.is_complex():
        raise ValueError("exact_closure needs a complex")
    f = U.field
    if namer is None:
        namer = lambda level, j: f"g[{level}][{j}]"
    mus = {}
    added: dict[int, list] = {}
    for i in range(U.length + 1):
        mu, reps = U.homology(i)
        mus[i] = (mu, reps)
        if mu:
            added[i + 1] = [(namer(i + 1, j), reps[j]) for j in range(mu)]
    top = U.length + (1 if (U.length + 1) in added else 0)
    labels = []
    maps: list = [None]
    for i in range(top + 1):
        labels.append(list(U.labels[i]) if i <= U.length else [])
        labels[i].extend(lbl for lbl, _ in added.get(i, []))
    for i in range(1, top + 1):
        rows = len(labels[i - 1])
        base_rows = U.level_dim(i - 1)
        cols = []
        d_i = U.differential(i)
        for j in range(U.level_dim(i)):
            col = d_i.column(j)
            cols.append(col + [f.zero] * (rows - base_rows))
        for _, cycle in added.get(i, []):
            cols.append(list(cycle) + [f.zero] * (rows - base_rows))
        maps.append(Matrix.from_columns(f, rows, cols))
    V = BasedComplex(f, labels, maps)
    return V, added


def is_exact_closure_of(V: BasedComplex, U: BasedComplex) -> bool:
    """Kernel criterion: V exact and Ker(V's map) = Ker(U's map) levelwise.

    U must be a based subcomplex of V (label inclusion); otherwise this
    raises ValueError.
    """
    f = V.field
    positions = []
    for i in range(U.length + 1):
        pos = []
        used = set()
        for lbl in U.labels[i]:
            hit = None
            for j, vl in enumerate(V.labels[i] if i <= V.length else []):
                if j not in used and vl == lbl:
                    hit = j
                    break
            if hit is None:
                raise ValueError(f"label {lbl!r} of level {i} not found in the ambient complex")
            used.add(hit)
            pos.append(hit)
        positions.append(pos)
    # subcomplex check: V's differential restricted to U's labels is U's,
    # with no leakage outside U's rows
    for i in range(1, U.length + 1):
        dV = V.differential(i)
        dU = U.differential(i)
        inside = set(positions[i - 1])
        for cj, j in enumerate(positions[i]):
            col = dV.column(j)
            for rrow, val in enumerate(col):
                if rrow in inside:
                    if val != dU[positions[i - 1].index(rrow), cj]:
                        raise ValueError("labels nested but differentials disagree")
                elif val != f.zero:
                    raise ValueError("U is not closed under the ambient differential")
    if not V.is_exact():
        return False
    for i in range(V.length + 1):
        dV = V.differential(i)
        kv = Matrix.identity(f, V.level_dim(i)) if i == 0 else dV.kernel_basis()
        dim_u = U.level_dim(i)
        if i == 0:
            ku_cols = Matrix.identity(f, dim_u).columns() if dim_u else []
        else:
            ku_cols = U.differential(i).kernel_basis().columns() if dim_u else []
        # embed U-kernel vectors into V coordinates
        embedded = []
        for col in ku_cols:
            v = [f.zero] * V.level_dim(i)
            for val, j in zip(col, positions[i] if i <= U.length else []):
                v[j] = val
            embedded.append(v)
        if kv.ncols != len(embedded):
            return False
        if embedded:
            emb = Matrix.from_columns(f, V.level_dim(i), embedded)
            both = emb.stack_columns(kv)
            if both.rank() != emb.rank():
                return False
        elif kv.ncols:
            return False
    return True


# -- simplicial complexes --------------------------------------------


def faces_of(facets):
    """All faces of the complex generated by `facets`, including the empty face."""
    out = {()}
    for fac in facets:
        fac = tuple(sorted(fac))
        for k in range(1, len(fac) + 1):
            out.update(combinations(fac, k))
    return out


def prune_facets(facets):
    """Drop faces contained in another; sorted deterministic facet list."""
    fs = sorted({tuple(sorted(f)) for f in facets}, key=lambda t: (-len(t), t))
    out = []
    for f in fs:
        if not any(set(f) < set(g) for g in out) and f not in out:
            out.append(f)
    return sorted(out)


def complex_of_facets(field: Field, facets) -> BasedComplex:
    """The augmented chain complex of the simplicial complex with these facets.

    Level h holds the faces of cardinality h (dimension h-1), sorted
    lexicographically; level 0 is the empty face.  Reduced homology
    H~_d of the complex is the homology of this object at level d+1.
    """
    all_faces = faces_of(facets)
    top = max(len(f) for f in all_faces)
    labels = [sorted(f for f in all_faces if len(f) == h) for h in range(top + 1)]
    maps: list = [None]
    for h in range(1, top + 1):
        index = {f: i for i, f in enumerate(labels[h - 1])}
        cols = []
        for f in labels[h]:
            col = [field.zero] * len(labels[h - 1])
            b = boundary(Chain.from_face(field, f))
            for sub, coeff in b.terms.items():
                col[index[sub]] = coeff
            cols.append(col)
        maps.append(Matrix.from_columns(field, len(labels[h - 1]), cols))
    return BasedComplex(field, labels, maps)


def reduced_homology(field: Field, facets):
    """dict: dimension d -> (dim_k H~_d, canonical representative Chains)."""
    cx = complex_of_facets(field, facets)
    out = {}
    for level in range(cx.length + 1):
        mu, reps = cx.homology(level)
        if mu:
            chains = []
            for rep in reps:
                terms = {cx.labels[level][i]: v for i, v in enumerate(rep) if v != field.zero}
                chains.append(Chain(field, terms, dim=level - 1))
            out[level - 1] = (mu, chains)
    return out


def chain_to_coords(cx: BasedComplex, c: Chain):
    """Coordinates of a face-labelled chain in a face-labelled complex level."""
    level = c.dim + 1
    if level > cx.length and not c.is_zero():
        raise ValueError("chain dimension exceeds complex")
    labels = cx.labels[level] if level <= cx.length else []
    index = {f: i for i, f in enumerate(labels)}
    v = [cx.field.zero] * len(labels)
    for f, coeff in c.terms.items():
        if f not in index:
            raise ValueError(f"face {f} not in the complex")
        v[index[f]] = coeff
    return v


def class_in_homology(field: Field, facets, c: Chain, basis_chains):
    """Coordinates of the class [c] in a fixed homology basis of the complex.

    `basis_chains` are cycles whose classes form a basis of H~_dim(c).
    Solves c = sum(x_s * basis_s) + boundary; returns the x vector, or
    raises if c is not a cycle in the complex or the solve fails.
    """
    cx = complex_of_facets(field, facets)
    level = c.dim + 1
    d = cx.differential(level)
    coords = chain_to_coords(cx, c)
    if any(x != field.zero for x in d.mul_vector(coords)):
        raise ValueError("not a cycle")
    up = cx.differential(level + 1)
    cols = [chain_to_coords(cx, b) for b in basis_chains]
    cols += [up.column(j) for j in range(up.ncols)]
    m = Matrix.from_columns(field, len(coords), cols)
    sol = m.solve(coords)
    if sol is None:
        raise ValueError("class not in the span of the given basis")
    return sol[: len(basis_chains)]
