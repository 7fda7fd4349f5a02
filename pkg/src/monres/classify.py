"""Membership of an ideal in the resolution-theoretic classes.

Verdicts are yes/no/unknown.  Classes defined by a quantifier over all
minimal resolutions or all construction choices (lattice-linear,
homology-linear, strongly homology-linear) are decided soundly:

- yes needs a certificate (a successful construction run, a membership
  implication, or a parameter-independence proof over the symbolic
  homology-approximation construction);
- no needs a witness (a failing construction instance, or a composite
  entry of the symbolic construction that is a nonzero constant and so
  breaks the complex condition for every choice);
- anything else stays unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product

from monres.chains import Chain
from monres.lattice import LcmLattice
from monres.linalg import Field, Matrix
from monres.posetres import (HomologyBasis, poset_construction, rlm_construction,
                             rlm_symbolic, certified_constant_rank)
from monres.resolutions import _MasterChains, lift_cycle_in_simplex


@dataclass
class ClassVerdict:
    verdict: str          # "yes" | "no" | "unknown"
    witness: str = ""

    def __str__(self):
        return self.verdict if not self.witness else f"{self.verdict} ({self.witness})"


CLASS_NAMES = [
    "scarf",
    "nearly_scarf",
    "homologically_monotonic",
    "rigid",
    "nearly_hm",
    "lattice_linear",
    "betti_linear",
    "homology_linear",
    "strongly_homology_linear",
]

# upstream yes forbids downstream no
IMPLICATIONS = [
    ("scarf", "rigid"),
    ("rigid", "homologically_monotonic"),
    ("homologically_monotonic", "betti_linear"),
    ("betti_linear", "homology_linear"),
    ("scarf", "lattice_linear"),
    ("lattice_linear", "betti_linear"),
    ("nearly_scarf", "nearly_hm"),
    ("homologically_monotonic", "nearly_hm"),
    ("nearly_hm", "strongly_homology_linear"),
    ("strongly_homology_linear", "homology_linear"),
]


@dataclass
class ClassificationReport:
    verdicts: dict = dc_field(default_factory=dict)

    def __getitem__(self, name) -> ClassVerdict:
        return self.verdicts[name]

    def consistent(self) -> bool:
        for up, down in IMPLICATIONS:
            if self.verdicts[up].verdict == "yes" and self.verdicts[down].verdict == "no":
                return False
        return True

    def rows(self):
        return [(name, self.verdicts[name].verdict, self.verdicts[name].witness)
                for name in CLASS_NAMES]

    def to_text(self) -> str:
        width = max(len(n) for n in CLASS_NAMES)
        lines = [f"{name.ljust(width)}  {verdict:8}  {witness}".rstrip()
                 for name, verdict, witness in self.rows()]
        return "\n".join(lines)


def _homology_dims(lat: LcmLattice, field: Field):
    dims = {}
    for e in lat.elements:
        if e.id == lat.bottom:
            continue
        hom = lat.homology_at(e.id, field)
        dims[e.id] = {d: n for d, (n, _) in hom.items()}
    return dims


def is_scarf(lat: LcmLattice, field: Field) -> ClassVerdict:
    for m in lat.betti_poset_ids(field):
        if m == lat.bottom:
            continue
        if not lat.is_scarf_multidegree(m):
            return ClassVerdict("no", f"element {sorted(lat.element(m).A)} is not Scarf")
    return ClassVerdict("yes")


def is_nearly_scarf(lat: LcmLattice) -> ClassVerdict:
    for e in lat.elements:
        if e.id in (lat.bottom, lat.top):
            continue
        if not lat.is_scarf_multidegree(e.id):
            return ClassVerdict("no", f"element {sorted(e.A)} is neither top nor Scarf")
    return ClassVerdict("yes")


def is_homologically_monotonic(lat: LcmLattice, field: Field) -> ClassVerdict:
    dims = _homology_dims(lat, field)
    for m1, d1 in dims.items():
        if not d1:
            continue
        for m2, d2 in dims.items():
            if not d2 or not lat.lt(m1, m2):
                continue
            if max(d1) >= min(d2):
                return ClassVerdict(
                    "no",
                    f"{sorted(lat.element(m1).A)} < {sorted(lat.element(m2).A)} with dims {sorted(d1)} vs {sorted(d2)}",
                )
    return ClassVerdict("yes")


def is_rigid(lat: LcmLattice, field: Field) -> ClassVerdict:
    hm = is_homologically_monotonic(lat, field)
    if hm.verdict != "yes":
        return ClassVerdict("no", "not homologically monotonic")
    for m, d in _homology_dims(lat, field).items():
        total = sum(d.values())
        if m in lat.atom_ids:
            continue
        if d and total != 1:
            return ClassVerdict("no", f"dim H~(Delta) = {total} at {sorted(lat.element(m).A)}")
    return ClassVerdict("yes")


def is_nearly_hm(lat: LcmLattice, field: Field) -> ClassVerdict:
    dims = _homology_dims(lat, field)
    for m1, d1 in dims.items():
        for m2, d2 in dims.items():
            if not lat.lt(m1, m2):
                continue
            shared = set(d1) & set(d2)
            for i in shared:
                for m3, d3 in dims.items():
                    if lat.lt(m2, m3) and (i + 1) in d3:
                        return ClassVerdict(
                            "no",
                            f"{sorted(lat.element(m1).A)} < {sorted(lat.element(m2).A)} share dim {i}, "
                            f"{sorted(lat.element(m3).A)} has dim {i + 1}",
                        )
    return ClassVerdict("yes")


def is_betti_linear(lat: LcmLattice, field: Field, hb: HomologyBasis | None = None) -> ClassVerdict:
    out = poset_construction(lat, field, hb)
    if out.is_minimal_resolution():
        return ClassVerdict("yes", "poset construction is a minimal resolution")
    if not out.is_complex:
        return ClassVerdict("no", "poset construction is not a complex")
    return ClassVerdict("no", "poset construction is not a minimal resolution")


def lattice_linear_greedy(lat: LcmLattice, field: Field):
    """Greedy certificate run: every exact-closure cycle must be spanned by
    chains at elements covered by m.  Returns (ok, witness element id)."""
    master = _MasterChains(field)
    gamma: dict = {e.id: [] for e in lat.elements}
    bot = master.add(Chain.from_face(field, ()), lat.bottom, [])
    gamma[lat.bottom].append(bot)
    for i, atom in enumerate(lat.atom_ids, start=1):
        gamma[atom].append(master.add(Chain.from_face(field, (i,)), atom, [(bot, field.one)]))
    for e in lat.elements:
        if e.rank < 2:
            continue
        m_id = e.id
        idxs = [k for k in range(len(master.chains)) if lat.lt(master.elt[k], m_id)]
        U, labels = master.complex_on(idxs)
        covered = set(e.covers)
        for level in range(U.length + 1):
            mu, _ = U.homology(level)
            if mu == 0:
                continue
            cov_pos = [j for j, k in enumerate(labels[level]) if master.elt[k] in covered]
            d_i = U.differential(level)
            if level == 0:
                kernel_cols = Matrix.identity(field, len(cov_pos)).columns() if cov_pos else []
            else:
                kernel_cols = d_i.submatrix(range(d_i.nrows), cov_pos).kernel_basis().columns()
            embedded = []
            for col in kernel_cols:
                v = [field.zero] * U.level_dim(level)
                for val, j in zip(col, cov_pos):
                    v[j] = val
                embedded.append(v)
            d_up = U.differential(level + 1)
            base = [d_up.column(j) for j in range(d_up.ncols)]
            picked = []
            rank = Matrix.from_columns(field, U.level_dim(level), base).rank()
            for v in embedded:
                if len(picked) == mu:
                    break
                cand = Matrix.from_columns(field, U.level_dim(level), base + picked + [v])
                if cand.rank() > rank + len(picked):
                    picked.append(v)
            if len(picked) < mu:
                return False, m_id
            for v in picked:
                pairs = [(coeff, master.chains[k]) for coeff, k in zip(v, labels[level])]
                z = Chain.combine(field, pairs, dim=level - 1)
                g = lift_cycle_in_simplex(field, z, e.A)
                dexp = [(k, coeff) for coeff, k in zip(v, labels[level]) if coeff != field.zero]
                gamma[m_id].append(master.add(g, m_id, dexp))
    return True, None


def is_lattice_linear(lat: LcmLattice, field: Field, scarf: ClassVerdict | None = None) -> ClassVerdict:
    if scarf is None:
        scarf = is_scarf(lat, field)
    if scarf.verdict == "yes":
        return ClassVerdict("yes", "Scarf")
    ok, witness = lattice_linear_greedy(lat, field)
    if ok:
        return ClassVerdict("yes", "greedy covered-element run completed")
    return ClassVerdict("unknown", f"greedy run blocked at {sorted(lat.element(witness).A)}")


# -- homology-linear analysis over the symbolic construction -------------


def _grid_points(field: Field, nvars: int):
    if field.char == 0:
        values = [field.of(0), field.of(1), field.of(2)]
    else:
        values = [field.of(v) for v in range(min(field.char, 3))]
    if nvars <= 8:
        yield from product(values, repeat=nvars)
    else:
        import random

        rng = random.Random(20240810)
        pool = values if field.char else [field.of(v) for v in range(5)]
        for _ in range(500):
            yield tuple(pool[rng.randrange(len(pool))] for _ in range(nvars))


def _find_nonzero_point(field: Field, comps, nparams: int):
    entries = [p for mat in comps.values() for row in mat for p in row if not p.is_zero()]
    for p in entries:
        vs = sorted(p.variables())
        if not vs:
            return {}
        for point in _grid_points(field, len(vs)):
            values = dict(zip(vs, point))
            if p.evaluate(values) != field.zero:
                return values
    return None


@dataclass
class RlmAnalysis:
    canonical_ok: bool
    composites_zero: bool
    const_nonzero_entry: bool
    complex_breaking_point: dict | None
    sample_ok: bool
    sample_fail: bool
    certified_all_choices: bool
    available: bool = True


def _certify_exactness_all_choices(sym) -> bool:
    """All restricted frames exact for every preimage choice.

    Uses constant-pivot elimination: if every restricted matrix has a
    parameter-independent rank and the rank bookkeeping gives vanishing
    homology (H0 of the restriction included), the construction is a
    resolution for every parameter value.
    """
    lat, field = sym.lat, sym.field
    for e in lat.elements:
        if e.id == lat.bottom:
            continue
        keep = []
        for lv in sym.levels:
            keep.append([idx for idx, (m, _, _) in enumerate(lv)
                         if lat.leq(m, e.id)])
        top = len(sym.levels) - 1
        while top > 0 and not keep[top]:
            top -= 1
        ranks = [0] * (top + 2)
        for i in range(1, top + 1):
            rows = keep[i - 1]
            cols = keep[i]
            sub = [[sym.matrices[i][r][c] for c in cols] for r in rows]
            if not rows or not cols:
                ranks[i] = 0
                if any(not sym.matrices[i][r][c].is_zero() for r in rows for c in cols):
                    return False
                continue
            rank, certified = certified_constant_rank(field, sub)
            if not certified:
                return False
            ranks[i] = rank
        for i in range(0, top + 1):
            if len(keep[i]) != ranks[i] + ranks[i + 1]:
                return False
    return True


def analyse_rlm(lat: LcmLattice, field: Field, hb: HomologyBasis | None = None,
                max_params: int = 40) -> RlmAnalysis:
    if hb is None:
        hb = HomologyBasis.canonical(lat, field)
    canonical = rlm_construction(lat, field, hb)
    canonical_ok = canonical.is_minimal_resolution()
    sym = rlm_symbolic(lat, field, hb, max_params=max_params)
    if sym is None:
        return RlmAnalysis(canonical_ok, False, False, None, False, not canonical_ok,
                           False, available=False)
    comps = sym.composites()
    entries = [p for mat in comps.values() for row in mat for p in row]
    composites_zero = all(p.is_zero() for p in entries)
    const_nonzero = any(p.is_const() and not p.is_zero() for p in entries)
    breaking = None
    if not composites_zero:
        point = _find_nonzero_point(field, comps, len(sym.params))
        if point is not None and not sym.evaluate(point).is_complex:
            breaking = point
    sample_ok = canonical_ok
    sample_fail = not canonical_ok
    for v in range(len(sym.params)):
        out = sym.evaluate({v: field.one})
        if out.is_minimal_resolution():
            sample_ok = True
        else:
            sample_fail = True
    certified = False
    if composites_zero and canonical_ok and not sample_fail:
        certified = _certify_exactness_all_choices(sym)
    return RlmAnalysis(canonical_ok, composites_zero, const_nonzero, breaking,
                       sample_ok, sample_fail, certified)


def is_homology_linear(lat: LcmLattice, field: Field, max_params: int = 40) -> ClassVerdict:
    return classify(lat, field, max_params)["homology_linear"]


def is_strongly_homology_linear(lat: LcmLattice, field: Field, max_params: int = 40) -> ClassVerdict:
    return classify(lat, field, max_params)["strongly_homology_linear"]


def classify(lat: LcmLattice, field: Field, max_params: int = 40) -> ClassificationReport:
    report = ClassificationReport()
    scarf = is_scarf(lat, field)
    report.verdicts["scarf"] = scarf
    report.verdicts["nearly_scarf"] = is_nearly_scarf(lat)
    hm = is_homologically_monotonic(lat, field)
    report.verdicts["homologically_monotonic"] = hm
    report.verdicts["rigid"] = is_rigid(lat, field)
    nhm = is_nearly_hm(lat, field)
    report.verdicts["nearly_hm"] = nhm
    bl = is_betti_linear(lat, field)
    report.verdicts["betti_linear"] = bl
    report.verdicts["lattice_linear"] = is_lattice_linear(lat, field, scarf)

    analysis = analyse_rlm(lat, field, max_params=max_params)

    if analysis.sample_fail or analysis.complex_breaking_point is not None:
        strongly = ClassVerdict("no", "a homology-approximation instance fails")
    elif nhm.verdict == "yes":
        strongly = ClassVerdict("yes", "nearly homologically monotonic")
    elif analysis.certified_all_choices:
        strongly = ClassVerdict("yes", "every preimage choice verified symbolically")
    else:
        strongly = ClassVerdict("unknown")
    report.verdicts["strongly_homology_linear"] = strongly

    if analysis.canonical_ok or analysis.sample_ok:
        hl = ClassVerdict("yes", "a homology-approximation instance is a minimal resolution")
    elif bl.verdict == "yes":
        hl = ClassVerdict("yes", "Betti-linear")
    elif strongly.verdict == "yes":
        hl = ClassVerdict("yes", "strongly homology-linear")
    elif analysis.const_nonzero_entry:
        hl = ClassVerdict("no", "a forced nonzero composite component breaks every choice")
    else:
        hl = ClassVerdict("unknown")
    report.verdicts["homology_linear"] = hl

    if not report.consistent():
        raise AssertionError("classification verdicts contradict the inclusion diagram")
    return report
