"""Mixed Hodge diagram verification and Hodge structures on homotopy groups.

A mixed Hodge diagram is a zig-zag whose first vertex is a weight-filtered
algebra over Q, whose last vertex carries weight and Hodge filtrations over a
quadratic imaginary extension Q(sqrt d), and whose comparison string induces
isomorphisms on the cohomology of the weight-graded pieces.  The rational
structure lives only at the first vertex; the conjugation used by the purity
checks is transported along the string, never assumed coefficientwise.

Axiom checks:
  MH0  the string consists of E_1 quasi-isomorphisms for W; W is regular and
       exhaustive, F biregular, cohomology of finite type (automatic here);
  MH1  the differential of each weight-graded piece of the last vertex is
       strictly compatible with F;
  MH2  F induces a pure structure of weight p+n on H^n of the p-th
       weight-graded piece, with conjugation transported from the Q-side.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebra import (AlgebraError, FreeCdga, compose, extend_scalars,
                      identity_morphism)
from .diagrams import Diagram, DiagramMorphism, HoMorphism, validate_ho_morphism
from .filtered import (FilteredComplex, GrComplex, SpectralSequence, decalage,
                       gr, gr_differential_strict, is_Er_quasi_iso)
from .homology import quasi_iso_report
from .ops import ValidationReport, indecomposables, induced_on_indecomposables
from .paths import integrate
from .scalars import Scalar
from .sullivan import is_minimal


# ---------------------------------------------------------------------------
# pure/mixed Hodge structures on exact vector spaces
# ---------------------------------------------------------------------------

def _conj_vec(v):
    return [c.conjugate() for c in v]


class MhsStructure:
    """Candidate mixed Hodge structure on coordinates of a rational space.

    dim: dimension of V (coordinates are with respect to a rational basis of
    V unless a transported conjugation is supplied).  weight_vectors: list of
    (level, vector) spanning W adaptedly.  hodge_spans: {q: [vectors]} with
    F^q = span (decreasing: F^q contains F^{q+1} after closure).  conj: an
    antilinear involution on coordinates (default: entrywise conjugation).
    """

    def __init__(self, dim, weight_vectors, hodge_spans, conj=None):
        self.dim = dim
        self.weight_vectors = list(weight_vectors)
        self.hodge_spans = {q: [list(v) for v in vs] for q, vs in hodge_spans.items()}
        self.conj = conj or _conj_vec

    def f_span(self, q):
        out = []
        for qq, vs in self.hodge_spans.items():
            if qq >= q:
                out.extend(vs)
        return out

    def weight_levels(self):
        return sorted({lv for lv, _ in self.weight_vectors})

    def check(self) -> ValidationReport:
        rep = ValidationReport(subject="mixed Hodge structure")
        # involution
        probe = [linalg.zeros(self.dim) for _ in range(self.dim)]
        for i in range(self.dim):
            probe[i][i] = Scalar(1)
            if self.conj(self.conj(probe[i])) != probe[i]:
                rep.add("conjugation", f"not an involution at basis {i}")
        levels = self.weight_levels()
        if not levels and self.dim:
            rep.add("weights", "no weight data")
        qs = sorted(self.hodge_spans)
        for m in levels:
            den = [v for lv, v in self.weight_vectors if lv <= m - 1]
            num = [v for lv, v in self.weight_vectors if lv <= m]
            grm = linalg.Subquotient(num, den, self.dim)
            if grm.dim == 0:
                continue

            def project(vs):
                out = []
                for v in vs:
                    c = grm.coords(v)
                    if c is not None:
                        out.append(c)
                return out

            qs_range = range(min(qs + [0]) - 1, max(qs + [0]) + 2) if qs else range(0, 1)
            for q in qs_range:
                Fq = project(self._cap_weight(self.f_span(q), m))
                Fbar = project([self.conj(v) for v in self._cap_weight(
                    self.f_span(m - q + 1), m)])
                inter = linalg.intersect(Fq, Fbar, grm.dim)
                if linalg.span_dim(inter, grm.dim):
                    rep.add("purity-intersection",
                            f"F^{q} cap conj(F^{m - q + 1}) != 0 at weight {m}",
                            weight=m, q=q)
                total = linalg.span_dim(Fq + Fbar, grm.dim)
                if total != grm.dim:
                    rep.add("purity-sum",
                            f"F^{q} + conj(F^{m - q + 1}) misses Gr_{m}",
                            weight=m, q=q, dim=total, expected=grm.dim)
        return rep

    def _cap_weight(self, vs, m):
        """Intersect a span with W_m (so projecting to Gr_m is legitimate)."""
        wm = [v for lv, v in self.weight_vectors if lv <= m]
        return linalg.intersect(vs, wm, self.dim) if vs else []

    def types_at(self, m):
        """Dimension of F^q cap conj(F^{m-q}) projected to Gr_m, per (q, m-q)."""
        den = [v for lv, v in self.weight_vectors if lv <= m - 1]
        num = [v for lv, v in self.weight_vectors if lv <= m]
        grm = linalg.Subquotient(num, den, self.dim)
        out = {}
        qs = sorted(self.hodge_spans)
        for q in qs:
            Fq = [grm.coords(v) for v in self._cap_weight(self.f_span(q), m)]
            Fq = [v for v in Fq if v is not None]
            Fb = [grm.coords(self.conj(v))
                  for v in self._cap_weight(self.f_span(m - q), m)]
            Fb = [v for v in Fb if v is not None]
            d = linalg.span_dim(linalg.intersect(Fq, Fb, grm.dim), grm.dim)
            if d:
                out[(q, m - q)] = d
        return out


# ---------------------------------------------------------------------------
# mixed Hodge diagrams
# ---------------------------------------------------------------------------

class MixedHodgeDiagram:
    """Zig-zag (A_Q, W) <--> (A_C, W, F): first vertex rational, last bifiltered."""

    def __init__(self, diagram: Diagram, d: int = -1):
        self.diagram = diagram
        self.d = d
        verts = diagram.index.vertices
        self.first = verts[0]
        self.last = verts[-1]
        A0 = diagram.algebras[self.first]
        As = diagram.algebras[self.last]
        if not A0.field.is_rational:
            raise AlgebraError("first vertex must be rational")
        if As.field.is_rational:
            raise AlgebraError("last vertex must live over the extension")
        if not A0.has_weights or not As.has_weights:
            raise AlgebraError("weight filtration missing")
        if not As.has_hodge:
            raise AlgebraError("Hodge filtration missing on the last vertex")

    @property
    def rational(self):
        return self.diagram.algebras[self.first]

    @property
    def complex_vertex(self):
        return self.diagram.algebras[self.last]

    @property
    def N(self):
        return self.diagram.check_upto()

    def string_path(self):
        """Arrows from the first to the last vertex with orientation flags."""
        verts = self.diagram.index.vertices
        out = []
        for k in range(len(verts) - 1):
            a, b = verts[k], verts[k + 1]
            found = None
            for ar in self.diagram.index.arrows:
                if {ar.src, ar.dst} == {a, b}:
                    found = (ar.name, ar.src == a)
                    break
            if found is None:
                raise AlgebraError(f"no arrow between {a} and {b}")
            out.append(found)
        return out


@dataclass
class MhdReport:
    axioms: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(v["ok"] for v in self.axioms.values())

    def to_doc(self):
        return {"ok": self.ok, "axioms": self.axioms}


def _gr_cohomology(grc: GrComplex, n: int):
    return grc.cohomology(n)


def _gr_class_map(phi, p, n, fc_src, fc_dst, grc_src: GrComplex, grc_dst: GrComplex):
    """Matrix of H^n(Gr_p(phi)) (rows = source classes), or None witness."""
    sq_s = grc_src.cohomology(n)
    sq_d = grc_dst.cohomology(n)
    sel_dst = [i for i, lv in enumerate(fc_dst.levels[n]) if lv == p]
    rows = []
    for rep in sq_s.reps:
        el = None
        for c, e in zip(rep, grc_src.reps[n]):
            if not c.is_zero:
                el = e * c if el is None else el + e * c
        if el is None:
            rows.append(linalg.zeros(sq_d.dim))
            continue
        y = phi(el)
        yv = fc_dst.coords(y, n) if not y.is_zero else linalg.zeros(fc_dst.dim(n))
        gr_v = [yv[i] for i in sel_dst]
        c = sq_d.coords(gr_v)
        if c is None:
            return None, sq_s, sq_d
        rows.append(c)
    return rows, sq_s, sq_d


def _mat_inverse(rows, dim):
    """Inverse of a square matrix given as rows; None if singular."""
    if len(rows) != dim:
        return None
    cols = [[rows[i][j] for i in range(dim)] for j in range(dim)]
    inv_rows = []
    for i in range(dim):
        e = linalg.zeros(dim)
        e[i] = Scalar(1)
        sol = linalg.solve(cols, dim, e)
        if sol is None:
            return None
        inv_rows.append(sol)
    return inv_rows


def _mat_compose(first, then, dim_mid, dim_out):
    """rows of (then o first): first maps into mid coords, then into out."""
    out = []
    for row in first:
        acc = linalg.zeros(dim_out)
        for c, trow in zip(row, then):
            if not c.is_zero:
                acc = linalg.vec_add(acc, linalg.vec_scale(c, trow))
        out.append(acc)
    return out


class Transport:
    """Composite isomorphism H^n(Gr_p A_Q) (x) Q(sqrt d) -> H^n(Gr_p A_C)."""

    def __init__(self, matrix, dim_src, dim_dst):
        self.matrix = matrix
        self.dim_src = dim_src
        self.dim_dst = dim_dst
        self.inverse = _mat_inverse(matrix, dim_dst) if dim_src == dim_dst else None

    def conjugation(self):
        if self.inverse is None:
            return None

        def sigma(v):
            back = linalg.mat_mul_vec(
                [[self.inverse[i][j] for i in range(self.dim_dst)]
                 for j in range(self.dim_dst)], v)
            back = _conj_vec(back)
            fwd = [[self.matrix[i][j] for i in range(self.dim_src)]
                   for j in range(self.dim_dst)]
            return linalg.mat_mul_vec(fwd, back)

        return sigma


def transport_rational_structure(D: MixedHodgeDiagram, n: int, p: int,
                                 rng=None):
    """Transported isomorphism and conjugation at (n, p), with soundness checks.

    Fails with a witness when some comparison does not induce an isomorphism
    on H^n of the p-th weight-graded piece.
    """
    dia = D.diagram
    fcs = {v: FilteredComplex(_transport_vertex_algebra(D, v), kind="W")
           for v in dia.index.vertices}
    grcs = {v: gr(None, p, fc=fcs[v]) for v in dia.index.vertices}
    verts = dia.index.vertices
    current = None
    dim = grcs[verts[0]].cohomology(n).dim
    ident = []
    for i in range(dim):
        e = linalg.zeros(dim)
        e[i] = Scalar(1)
        ident.append(e)
    current = ident
    cur_dim = dim
    for arrow_name, forward in D.string_path():
        a = dia.arrow(arrow_name)
        phi = dia.phi[arrow_name]
        src_v, dst_v = a.src, a.dst
        rows, sq_s, sq_d = _gr_class_map(phi, p, n, fcs[src_v], fcs[dst_v],
                                         grcs[src_v], grcs[dst_v])
        if rows is None:
            raise AlgebraError(f"comparison {arrow_name} does not descend at (n={n}, p={p})")
        if not linalg.is_isomorphism(rows, sq_s.dim, sq_d.dim):
            raise AlgebraError(
                f"comparison {arrow_name} is not an isomorphism on H^{n}(Gr_{p})")
        if forward:
            current = _mat_compose(current, rows, sq_s.dim, sq_d.dim)
            cur_dim = sq_d.dim
        else:
            inv = _mat_inverse(rows, sq_d.dim)
            if inv is None:
                raise AlgebraError(f"comparison {arrow_name} not invertible")
            current = _mat_compose(current, inv, sq_d.dim, sq_s.dim)
            cur_dim = sq_s.dim
    tr = Transport(current, dim, cur_dim)
    sigma = tr.conjugation()
    if sigma is not None:
        for i in range(cur_dim):
            e = linalg.zeros(cur_dim)
            e[i] = Scalar(1)
            if sigma(sigma(e)) != e:
                raise AlgebraError("transported conjugation is not an involution")
    return tr


def _transport_vertex_algebra(D: MixedHodgeDiagram, v):
    """The algebra whose elements flow through the string at vertex v.

    At the rational vertex this is the scalar extension used by the first
    comparison (so transported representatives live where the comparison maps
    can consume them)."""
    if v != D.first:
        return D.diagram.algebras[v]
    for a in D.diagram.index.arrows:
        if a.src == D.first and D.diagram.coerce[a.name] is not None:
            return D.diagram.phi[a.name].source
    cached = getattr(D, "_extended_first_cache", None)
    if cached is None:
        cached, _ = extend_scalars(D.rational, D.d)
        D._extended_first_cache = cached
    return cached


def check_mhd(D: MixedHodgeDiagram, max_degree=None) -> MhdReport:
    """Verify MH0-MH2 with witnesses; the report carries all failures."""
    report = MhdReport()
    dia = D.diagram
    N = D.N if max_degree is None else max_degree

    # MH0: E_1 quasi-isomorphisms along the string; bounds bookkeeping
    mh0 = {"ok": True, "witnesses": [], "arrows": {}}
    for u in dia.phi:
        ok, bad = is_Er_quasi_iso(dia.phi[u], 1, kind="W")
        mh0["arrows"][u] = ok
        if not ok:
            mh0["ok"] = False
            mh0["witnesses"].append({"arrow": u, "failures": bad[:3]})
    from .filtered import weight_bounds_report
    mh0["weight_bounds"] = weight_bounds_report(FilteredComplex(D.rational, "W"))
    mh0["hodge_bounds"] = weight_bounds_report(FilteredComplex(D.complex_vertex, "F"))
    mh0["finite_type"] = True
    report.axioms["MH0"] = mh0

    # MH1: strictness of d on Gr_p^W(A_C) with respect to F
    mh1 = {"ok": True, "witnesses": []}
    fc_c = FilteredComplex(D.complex_vertex, kind="W")
    lo, hi = fc_c.level_range()
    for p in range(lo, hi + 1):
        grc = gr(None, p, fc=fc_c)
        for n in range(0, min(N - 1, fc_c.bound - 1) + 1):
            bad = gr_differential_strict(grc, n)
            if bad:
                mh1["ok"] = False
                mh1["witnesses"].append({"p": p, "n": n, "failures": bad})
    report.axioms["MH1"] = mh1

    # MH2: purity of weight p+n on H^n(Gr_p^W) with transported conjugation
    mh2 = {"ok": True, "witnesses": [], "pure_pieces": []}
    for p in range(lo, hi + 1):
        grc = gr(None, p, fc=fc_c)
        for n in range(0, min(N - 1, fc_c.bound - 1) + 1):
            sq = grc.cohomology(n)
            if sq.dim == 0:
                continue
            try:
                tr = transport_rational_structure(D, n, p)
            except AlgebraError as e:
                mh2["ok"] = False
                mh2["witnesses"].append({"p": p, "n": n, "reason": str(e)})
                continue
            sigma = tr.conjugation()
            if sigma is None or tr.dim_src != sq.dim:
                mh2["ok"] = False
                mh2["witnesses"].append({"p": p, "n": n,
                                         "reason": "rational structure mismatch"})
                continue
            fspans = _hodge_spans_on_gr_cohomology(grc, n, sq)
            m = p + n
            ver = MhsStructure(sq.dim,
                               [(m, v) for v in _identity_vectors(sq.dim)],
                               fspans, conj=sigma).check()
            if not ver.ok:
                mh2["ok"] = False
                mh2["witnesses"].append({"p": p, "n": n,
                                         "failures": ver.failures})
            else:
                types = MhsStructure(sq.dim,
                                     [(m, v) for v in _identity_vectors(sq.dim)],
                                     fspans, conj=sigma).types_at(m)
                mh2["pure_pieces"].append(
                    {"p": p, "n": n, "weight": m, "dim": sq.dim,
                     "types": {f"({q},{r})": d for (q, r), d in sorted(types.items())}})
    report.axioms["MH2"] = mh2
    return report


def _identity_vectors(dim):
    out = []
    for i in range(dim):
        e = linalg.zeros(dim)
        e[i] = Scalar(1)
        out.append(e)
    return out


def _hodge_spans_on_gr_cohomology(grc: GrComplex, n, sq):
    """F^q on H^n(Gr_p): classes of cocycles lying in F^q."""
    spans = {}
    hodges = grc.hodge.get(n)
    if hodges is None:
        raise AlgebraError("no Hodge levels on the graded piece")
    dim = grc.dim(n)
    rows_d = grc.d.get(n, [])
    for q in sorted(set(hodges)):
        idx = [i for i, h in enumerate(hodges) if h >= q]
        rows = []
        dim_hi = grc.dim(n + 1)
        for i in idx:
            rows.append(rows_d[i] if rows_d else linalg.zeros(dim_hi))
        tmat = [[rows[i][j] for i in range(len(idx))] for j in range(dim_hi)]
        kern = linalg.kernel_basis(tmat, len(idx))
        vs = []
        for k in kern:
            full = linalg.zeros(dim)
            for c, i in zip(k, idx):
                full[i] = c
            cc = sq.coords(full)
            if cc is not None and any(not c.is_zero for c in cc):
                vs.append(cc)
        if vs:
            spans[q] = vs
    return spans


def degeneration_check(D: MixedHodgeDiagram, max_degree=None) -> dict:
    """d_r = 0 on E_r(W) for r >= 2 and on E_r(F) for r >= 1, within cutoff."""
    out = {"ok": True, "witnesses": []}
    fc_w = FilteredComplex(D.rational, kind="W")
    ss_w = SpectralSequence(fc_w)
    lo, hi = fc_w.level_range()
    for r in range(2, (hi - lo) + 2):
        bad = ss_w.d_r_is_zero(r)
        if bad:
            out["ok"] = False
            out["witnesses"].extend({"filtration": "W", **b} for b in bad)
    fc_f = FilteredComplex(D.complex_vertex, kind="F")
    ss_f = SpectralSequence(fc_f)
    lo_f, hi_f = fc_f.level_range()
    for r in range(1, (hi_f - lo_f) + 2):
        bad = ss_f.d_r_is_zero(r)
        if bad:
            out["ok"] = False
            out["witnesses"].extend({"filtration": "F", **b} for b in bad)
    return out


# ---------------------------------------------------------------------------
# diagrams attached to a mixed Hodge dga candidate; homotopy groups
# ---------------------------------------------------------------------------

def mixed_hodge_dga_diagram(M: FreeCdga, D: MixedHodgeDiagram,
                            budget=None) -> Diagram:
    """The constant-shape diagram of M matching D's index: Q at the first
    vertex, scalar extension elsewhere, (W, F) at the last vertex."""
    dia = D.diagram
    EM, coer = extend_scalars(M, D.d)
    algebras = {}
    for v in dia.index.vertices:
        algebras[v] = M if v == D.first else EM
    arrows = {}
    for a in dia.index.arrows:
        src_alg = algebras[a.src]
        if src_alg is M:
            arrows[a.name] = (identity_morphism(EM), coer)
        else:
            arrows[a.name] = identity_morphism(EM)
    return Diagram(dia.index, algebras, tags=dia.tags, arrows=arrows,
                   budget=budget or dia.budget, name=f"{M.name}-diagram")


def dec_weight_structure(M: FreeCdga, n: int) -> MhsStructure:
    """(M^n, Dec W, F) as an explicit candidate structure in monomial coords."""
    fc = FilteredComplex(M, kind="W", bound=min(M.N, n + 1))
    dec = decalage(fc)
    amb_dim = M.dim(n)
    wvecs = []
    for lv, el in zip(dec.levels[n], dec.elements[n]):
        wvecs.append((lv, M.coords(el, n)))
    hspans = {}
    for i, k in enumerate(M.basis_keys(n)):
        q = M.key_hodge(k)
        e = linalg.zeros(amb_dim)
        e[i] = Scalar(1)
        hspans.setdefault(q, []).append(e)
    return MhsStructure(amb_dim, wvecs, hspans)


@dataclass
class PiStarReport:
    degrees: dict = field(default_factory=dict)
    preconditions: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(v.get("ok", False) for v in self.preconditions.values()) and \
            all(v["ok"] for v in self.degrees.values())

    def to_doc(self):
        return {"ok": self.ok, "preconditions": self.preconditions,
                "degrees": {str(k): v for k, v in sorted(self.degrees.items())}}


def pi_star(D: MixedHodgeDiagram, M: FreeCdga, f: HoMorphism,
            max_degree=None) -> PiStarReport:
    """Graded mixed Hodge structure (Q(M)^n, Dec W, F) on homotopy groups.

    Preconditions are checked and reported: M minimal with the weight shift,
    (M^n, Dec W, F) a mixed Hodge structure per degree, f a validating
    ho-morphism that is a level-wise quasi-isomorphism through the horizon.
    """
    rep = PiStarReport()
    N = (D.N if max_degree is None else max_degree)
    ok_min, wit = is_minimal(M, filtered=True)
    rep.preconditions["minimal"] = {"ok": ok_min, "witnesses": wit}
    mhs_ok = True
    mhs_wit = []
    for n in range(0, min(N, M.N - 1) + 1):
        ver = dec_weight_structure(M, n).check()
        if not ver.ok:
            mhs_ok = False
            mhs_wit.append({"degree": n, "failures": ver.failures})
    rep.preconditions["dec-weight-mhs"] = {"ok": mhs_ok, "witnesses": mhs_wit}
    val = validate_ho_morphism(f)
    qiso = {}
    for v in f.source.index.vertices:
        qiso[v] = quasi_iso_report(f.maps[v], min(N - 1, f.source.check_upto() - 1))
    all_qiso = all(r["iso"] for rr in qiso.values() for r in rr.values())
    rep.preconditions["comparison"] = {
        "ok": val.ok and all_qiso,
        "witnesses": val.failures + ([] if all_qiso else
                                     [{"check": "level-wise quasi-isomorphism"}])}
    for n in range(1, N + 1):
        gens_n = [g for g in M.gens if g.degree == n]
        dim = len(gens_n)
        entry = {"dim": dim, "ok": True, "weights": {}, "types": {}}
        if dim:
            wvecs = [(g.weight + n, v)
                     for g, v in zip(gens_n, _identity_vectors(dim))]
            hspans = {}
            for g, v in zip(gens_n, _identity_vectors(dim)):
                hspans.setdefault(g.hodge, []).append(v)
            st = MhsStructure(dim, wvecs, hspans)
            ver = st.check()
            entry["ok"] = ver.ok
            if not ver.ok:
                entry["witnesses"] = ver.failures
            for m in sorted({lv for lv, _ in wvecs}):
                entry["weights"][str(m)] = sum(1 for lv, _ in wvecs if lv == m)
                types = st.types_at(m)
                for (q, r), dd in sorted(types.items()):
                    entry["types"][f"({q},{r})"] = entry["types"].get(f"({q},{r})", 0) + dd
        entry["provisional"] = (n == M.N)
        rep.degrees[n] = entry
    return rep


def pi_star_induced_map(D1, M1, f1, D2, M2, f2, g: DiagramMorphism, budget=8):
    """Functoriality hook: the induced map on indecomposables for g: D1 -> D2.

    Lifts g f1 through f2 on the rational vertex and reports filtration
    compatibility of the induced matrices on Q.
    """
    from .sullivan import lift_against_weak_equivalence
    v0 = D1.first
    target = compose(g.maps[v0], f1.maps[v0])
    h, hom = lift_against_weak_equivalence(M1, f2.maps[v0], target, budget=budget)
    QA, QB = indecomposables(M1), indecomposables(M2)
    mats = induced_on_indecomposables(h, QA, QB, upto=min(M1.N, M2.N))
    compat = []
    for n, rows in mats.items():
        src = QA.degrees.get(n)
        dst = QB.degrees.get(n)
        if not src or not rows:
            continue
        for i, row in enumerate(rows):
            for j, c in enumerate(row):
                if c.is_zero:
                    continue
                if src.weights[i] is not None and dst.weights[j] is not None \
                        and dst.weights[j] > src.weights[i]:
                    compat.append({"check": "W", "degree": n,
                                   "from": src.labels[i], "to": dst.labels[j]})
                if src.hodges[i] is not None and dst.hodges[j] is not None \
                        and dst.hodges[j] < src.hodges[i]:
                    compat.append({"check": "F", "degree": n,
                                   "from": src.labels[i], "to": dst.labels[j]})
    return {"map": h, "matrices": mats, "mhs_compatible": not compat,
            "witnesses": compat}


# ---------------------------------------------------------------------------
# indecomposables of diagrams; integration-based homotopy invariance
# ---------------------------------------------------------------------------

def indecomposables_diagram(D: Diagram, upto=None) -> dict:
    """Vertexwise Q with descended filtrations and induced comparison maps."""
    out = {"vertices": {}, "arrows": {}}
    qs = {}
    for v in D.index.vertices:
        qs[v] = indecomposables(D.algebras[v], upto=upto)
        out["vertices"][v] = {
            "dims": qs[v].dims(),
            "weights": {n: qd.weights for n, qd in qs[v].degrees.items() if qd.dim},
            "hodges": {n: qd.hodges for n, qd in qs[v].degrees.items() if qd.dim}}
    for u in D.phi:
        a = D.arrow(u)
        src_alg = D.dom(u)
        qsrc = indecomposables(src_alg, upto=upto) if D.coerce[u] is not None \
            else qs[a.src]
        mats = induced_on_indecomposables(D.phi[u], qsrc, qs[a.dst], upto=upto)
        out["arrows"][u] = {n: [[str(c) for c in row] for row in rows]
                            for n, rows in mats.items() if rows}
    return out


def integration_on_q(h_map, M: FreeCdga, B, n: int):
    """Matrix of Q(int h): degree-n generators of M to Q(B)^{n-1} classes."""
    QB = indecomposables(B)
    rows = []
    for g in M.gens:
        if g.degree != n:
            continue
        val = integrate(h_map(M.generator(g.name)))
        rows.append(QB.project(val, n - 1))
    return rows


def stokes_ho_report(h, upto=None) -> ValidationReport:
    """The two integration identities of a homotopy of ho-morphisms.

    Vertexwise: d(int h) + int(d h) = g - f.  Arrowwise, with K = int int H_u:
    K d - d K = int G_u - int F_u + int h_dst phi - phi int h_src.
    """
    from .diagrams import HoHomotopy
    rep = ValidationReport(subject="integration identities")
    f, g = h.f, h.g
    upto_eff = min(f.source.check_upto(), f.target.check_upto()) - 1 \
        if upto is None else upto
    from .paths import stokes_defect
    for v in f.source.index.vertices:
        for w in stokes_defect(h.vertex[v], upto=upto_eff):
            rep.add("vertex-stokes", f"vertex {v}: {w}")
    for u in f.source.phi:
        a = f.source.arrow(u)
        dom = f.source.algebras[a.src]
        to_dom = f.source.to_dom(u)
        phi_src = f.source.comp(u)
        phi_dst = f.target.comp(u)
        H_u = h.arrows[u]
        F_u, G_u = f.homotopies[u], g.homotopies[u]
        hi, hj = h.vertex[a.src], h.vertex[a.dst]
        for n in range(0, upto_eff + 1):
            for b in dom.basis(n):
                x = to_dom(b)
                lhs = integrate(integrate(H_u(to_dom(b.d())))) \
                    - integrate(integrate(H_u(x))).d()
                rhs = (integrate(G_u(x)) - integrate(F_u(x))
                       + integrate(hj(phi_src(b))) - phi_dst(integrate(hi(b))))
                if lhs != rhs:
                    rep.add("arrow-stokes", f"arrow {u}, degree {n}: {b!r}")
    return rep
