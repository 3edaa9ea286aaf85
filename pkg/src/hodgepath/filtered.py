"""Filtrations, graded pieces, spectral sequences, decalage, filtered paths.

Conventions (fixed once, documented here):

* Increasing weight filtrations W: level(x) = max key weight, W_p = {level <= p}.
* Decreasing Hodge filtrations F are handled by negating levels
  (F^q corresponds to level -q), so one engine serves both directions.
* Spectral sequence of (C, W), cohomological degree n:
      Z_r^{p,n} = {x in W_p C^n : dx in W_{p-r} C^{n+1}}
      E_r^{p,n} = Z_r^{p,n} / (Z_{r-1}^{p-1,n} + d Z_{r-1}^{p+r-1,n-1})
      d_r : E_r^{p,n} -> E_r^{p-r,n+1}
  Pages are reliable for n <= N - r - 1.  Only convention-independent facts
  (dimensions, iso-ness of induced maps, vanishing of d_r) are exported.
* Decalage: Dec W_p C^n = {x in W_{p-n} C^n : dx in W_{p-n-1} C^{n+1}}.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .algebra import (AlgebraError, CutoffError, Element, GradedAlgebra,
                      LinearMap)
from .paths import path_of
from .scalars import Scalar


def r_path(A, r: int, budget=None):
    """Filtered path: weight(a t^i) = weight(a), weight(a t^i dt) = weight(a) - r."""
    if r < 0:
        raise AlgebraError("r-path needs r >= 0")
    return path_of(A, budget, w_shift=r)


def path_10(A, budget=None):
    """Bifiltered path: W shifts by 1 on the dt part, F does not shift."""
    return path_of(A, budget, w_shift=1)


# ---------------------------------------------------------------------------
# adapted filtered bases
# ---------------------------------------------------------------------------

def _key_level(X, k, kind):
    if kind == "W":
        w = X.key_weight(k)
    else:
        h = X.key_hodge(k)
        w = None if h is None else -h
    return w


def element_level(x: Element, kind="W"):
    """Filtration level of an element (max over keys; None for 0)."""
    levels = []
    for k in x.terms:
        lv = _key_level(x.alg, k, kind)
        if lv is None:
            raise AlgebraError("element of an unfiltered algebra")
        levels.append(lv)
    return max(levels) if levels else None


class FilteredComplex:
    """Adapted-basis view of a filtered algebra/subspace, degrees 0..bound."""

    def __init__(self, X, kind="W", bound=None):
        self.X = X
        self.kind = kind
        self.bound = X.N if bound is None else bound
        self.levels = {}
        self.elements = {}
        self._coord_cache = {}
        keyed_alg = isinstance(X, GradedAlgebra)
        if keyed_alg and ((kind == "W" and not X.has_weights)
                          or (kind == "F" and not X.has_hodge)):
            raise AlgebraError(f"{X!r} carries no {kind} filtration")
        for n in range(0, self.bound + 1):
            if keyed_alg:
                keys = sorted(X.basis_keys(n),
                              key=lambda k: (_key_level(X, k, kind), X.key_sort(k)))
                self.levels[n] = [_key_level(X, k, kind) for k in keys]
                self.elements[n] = [X.from_key(k) for k in keys]
            else:
                self.levels[n], self.elements[n] = self._adapted_sub_basis(n)

    def _adapted_sub_basis(self, n):
        X = self.X
        amb = X.ambient
        keys = amb.basis_keys(n)
        key_levels = [_key_level(amb, k, self.kind) for k in keys]
        if any(lv is None for lv in key_levels):
            raise AlgebraError(f"{amb!r} carries no {self.kind} filtration")
        chosen_rows, chosen_levels, chosen_elems = [], [], []
        for p in sorted(set(key_levels)):
            allowed = [i for i, lv in enumerate(key_levels) if lv <= p]
            sub = [X.ambient.from_key(keys[i]) for i in allowed]
            # solve the constraints inside the span of allowed keys
            rows = []
            for c in X.constraints:
                imgs = [c(b) for b in sub]
                m = n
                dim_m = c.target.dim(m, strict=False)
                vecs = [c.target.coords(x, m, strict=False) if not x.is_zero
                        else linalg.zeros(dim_m) for x in imgs]
                for rj in range(dim_m):
                    rows.append([vecs[j][rj] for j in range(len(sub))])
            kern = linalg.kernel_basis(rows, len(sub)) if rows else [
                [Scalar(1) if i == j else Scalar(0) for j in range(len(sub))]
                for i in range(len(sub))]
            for v in kern:
                full = linalg.zeros(len(keys))
                for c, i in zip(v, allowed):
                    full[i] = c
                if not linalg.span_contains(chosen_rows, len(keys), full):
                    chosen_rows.append(full)
                    chosen_levels.append(p)
                    el = amb.zero()
                    for c, k in zip(full, keys):
                        if not c.is_zero:
                            el = el + amb.from_key(k) * c
                    chosen_elems.append(el)
        return chosen_levels, chosen_elems

    def dim(self, n) -> int:
        return len(self.elements.get(n, []))

    def coords(self, x: Element, n):
        if n not in self._coord_cache:
            mat = [self._amb_coords(b, n) for b in self.elements[n]]
            self._coord_cache[n] = mat
        mat = self._coord_cache[n]
        cols = len(mat[0]) if mat else 0
        tmat = [[mat[i][j] for i in range(len(mat))] for j in range(cols)]
        sol = linalg.solve(tmat, len(mat), self._amb_coords(x, n))
        if sol is None:
            raise AlgebraError("element not in the filtered complex")
        return sol

    def _amb_coords(self, x, n):
        amb = self.X if isinstance(self.X, GradedAlgebra) else self.X.ambient
        if x.is_zero:
            return linalg.zeros(amb.dim(n, strict=False))
        return amb.coords(x, n, strict=False)

    def from_coords(self, n, vec) -> Element:
        out = None
        for c, b in zip(vec, self.elements[n]):
            if not c.is_zero:
                out = b * c if out is None else out + b * c
        if out is None:
            amb = self.X if isinstance(self.X, GradedAlgebra) else self.X.ambient
            return amb.zero()
        return out

    def d_coords(self, n, vec):
        x = self.from_coords(n, vec)
        return self.coords(x.d(), n + 1)

    def level_range(self):
        vals = [lv for lvs in self.levels.values() for lv in lvs]
        if not vals:
            return (0, 0)
        return (min(vals), max(vals))

    def level_of_coords(self, n, vec):
        lvls = [lv for c, lv in zip(vec, self.levels[n]) if not c.is_zero]
        return max(lvls) if lvls else None

    def proj_above(self, n, vec, cutlevel):
        """Components of vec of level > cutlevel (adapted basis makes this exact)."""
        return [c if lv > cutlevel else Scalar(0)
                for c, lv in zip(vec, self.levels[n])]

    def check_compatible(self) -> list:
        """Witnesses of d not preserving the filtration."""
        bad = []
        for n in range(0, self.bound):
            for b, lv in zip(self.elements[n], self.levels[n]):
                db = b.d()
                if db.is_zero:
                    continue
                dlv = self.level_of_coords(n + 1, self.coords(db, n + 1))
                if dlv is not None and dlv > lv:
                    bad.append({"degree": n, "level": lv, "d_level": dlv,
                                "witness": repr(b)})
        return bad


def weight_bounds_report(fc: FilteredComplex) -> dict:
    """Exhaustive/bounded-below summary per degree (regularity within horizon)."""
    out = {}
    for n in range(0, fc.bound + 1):
        lv = fc.levels.get(n, [])
        out[n] = {"dim": len(lv), "min": min(lv) if lv else None,
                  "max": max(lv) if lv else None}
    return out


# ---------------------------------------------------------------------------
# graded pieces
# ---------------------------------------------------------------------------

@dataclass
class GrComplex:
    """Gr_p of a filtered complex: bases, differential, inherited second levels."""
    p: int
    dims: dict
    d: dict                 # n -> rows over basis of degree n, coords in n+1
    hodge: dict             # n -> list of hodge levels (or None)
    reps: dict              # n -> representative Elements

    def dim(self, n):
        return self.dims.get(n, 0)

    def cohomology(self, n) -> linalg.Subquotient:
        cols = self.dim(n)
        rows_d = self.d.get(n, [])
        dim_hi = self.dim(n + 1)
        tmat = [[rows_d[i][j] for i in range(cols)] for j in range(dim_hi)]
        kern = linalg.kernel_basis(tmat, cols)
        img = self.d.get(n - 1, [])
        return linalg.Subquotient(kern, img, cols)


def gr(X, p: int, kind="W", bound=None, fc: FilteredComplex | None = None) -> GrComplex:
    """The graded piece W_p/W_{p-1} with its induced differential.

    Out-of-range p gives the zero complex.  A second filtration descends
    through the levels of the adapted basis vectors.
    """
    fc = fc or FilteredComplex(X, kind=kind, bound=bound)
    dims, dmats, hodges, reps = {}, {}, {}, {}
    idx = {}
    for n in range(0, fc.bound + 1):
        sel = [i for i, lv in enumerate(fc.levels[n]) if lv == p]
        idx[n] = sel
        dims[n] = len(sel)
        reps[n] = [fc.elements[n][i] for i in sel]
        hs = []
        for i in sel:
            el = fc.elements[n][i]
            try:
                hs.append(el.hodge())
            except AlgebraError:
                hs = None
                break
        hodges[n] = hs
    for n in range(0, fc.bound):
        rows = []
        for i in idx[n]:
            dv = fc.d_coords(n, _unit_vec(fc.dim(n), i))
            rows.append([dv[j] for j in idx[n + 1]])
        dmats[n] = rows
    return GrComplex(p=p, dims=dims, d=dmats, hodge=hodges, reps=reps)


def _unit_vec(nn, i):
    v = linalg.zeros(nn)
    v[i] = Scalar(1)
    return v


# ---------------------------------------------------------------------------
# spectral sequences
# ---------------------------------------------------------------------------

class SpectralSequence:
    """Pages of the filtered complex, computed exactly per (r, p, n)."""

    def __init__(self, fc: FilteredComplex):
        self.fc = fc
        self._z_cache = {}
        self._e_cache = {}

    # Z_r^{p,n} as vectors in C^n coordinates
    def z_vectors(self, r, p, n):
        key = (r, p, n)
        if key in self._z_cache:
            return self._z_cache[key]
        fc = self.fc
        if n < 0 or n > fc.bound - 1:
            self._z_cache[key] = []
            return []
        lo, hi = fc.level_range()
        dim = fc.dim(n)
        gens = [i for i, lv in enumerate(fc.levels[n]) if lv <= p]
        rows = []
        for i in gens:
            dv = fc.d_coords(n, _unit_vec(dim, i))
            rows.append(fc.proj_above(n + 1, dv, p - r))
        cols = len(gens)
        dim_hi = fc.dim(n + 1)
        tmat = [[rows[i][j] for i in range(cols)] for j in range(dim_hi)]
        kern = linalg.kernel_basis(tmat, cols)
        out = []
        for v in kern:
            full = linalg.zeros(dim)
            for c, i in zip(v, gens):
                full[i] = c
            out.append(full)
        self._z_cache[key] = out
        return out

    def entry(self, r, p, n) -> linalg.Subquotient:
        key = (r, p, n)
        if key in self._e_cache:
            return self._e_cache[key]
        fc = self.fc
        dim = fc.dim(n)
        num = self.z_vectors(r, p, n)
        den = list(self.z_vectors(r - 1, p - 1, n))
        for v in self.z_vectors(r - 1, p + r - 1, n - 1):
            den.append(fc.d_coords(n - 1, v))
        sq = linalg.Subquotient(num, den, dim)
        self._e_cache[key] = sq
        return sq

    def p_range(self, extra=0):
        lo, hi = self.fc.level_range()
        return range(lo - extra, hi + 1 + extra)

    def page_dims(self, r, bound=None) -> dict:
        bound = self._bound(r) if bound is None else bound
        out = {}
        for n in range(0, bound + 1):
            for p in self.p_range():
                d = self.entry(r, p, n).dim
                if d:
                    out[(p, n)] = d
        return out

    def _bound(self, r):
        return max(0, min(self.fc.bound - 1, self.fc.X.N - r - 1))

    def d_r_matrix(self, r, p, n):
        """Rows over E_r^{p,n} reps; coords in E_r^{p-r,n+1}."""
        src = self.entry(r, p, n)
        dst = self.entry(r, p - r, n + 1)
        rows = []
        for rep in src.reps:
            dv = self.fc.d_coords(n, rep)
            c = dst.coords(dv)
            if c is None:
                raise AlgebraError("d_r does not land in its target entry")
            rows.append(c)
        return rows, src, dst

    def d_r_is_zero(self, r, bound=None) -> list:
        """Witnesses of nonzero d_r within the bound (empty = vanishes)."""
        bound = self._bound(r) if bound is None else bound
        bad = []
        for n in range(0, bound + 1):
            for p in self.p_range():
                rows, src, dst = self.d_r_matrix(r, p, n)
                if any(not c.is_zero for row in rows for c in row):
                    bad.append({"r": r, "p": p, "n": n})
        return bad

    def verify_page_turn(self, r, bound=None) -> list:
        """Check E_{r+1} = H(E_r, d_r) via the canonical comparison map."""
        bound = self._bound(r + 1) if bound is None else bound
        bad = []
        for n in range(0, bound + 1):
            for p in self.p_range():
                rows, src, dst = self.d_r_matrix(r, p, n)
                cols = dst.dim
                tmat = [[rows[i][j] for i in range(src.dim)] for j in range(cols)]
                kern = linalg.kernel_basis(tmat, src.dim)
                img_rows, up_src, _ = self.d_r_matrix(r, p + r, n - 1)
                hsq = linalg.Subquotient(kern, img_rows, src.dim)
                e_next = self.entry(r + 1, p, n)
                if e_next.dim != hsq.dim:
                    bad.append({"r": r, "p": p, "n": n, "dim_next": e_next.dim,
                                "dim_H": hsq.dim})
                    continue
                comp = []
                ok = True
                for rep in e_next.reps:
                    c_in_er = src.coords(rep)
                    if c_in_er is None:
                        ok = False
                        break
                    cc = hsq.coords(c_in_er)
                    if cc is None:
                        ok = False
                        break
                    comp.append(cc)
                if not ok or not linalg.is_isomorphism(comp, e_next.dim, hsq.dim):
                    bad.append({"r": r, "p": p, "n": n, "reason": "comparison not iso"})
        return bad


def spectral_page(X, r: int, kind="W", bound=None) -> dict:
    """Dimensions {(p, n): dim E_r^{p,n}} of the r-th page (exact)."""
    if r < 0:
        raise AlgebraError("page index r must be >= 0")
    if X.N - r - 1 < 0:
        raise CutoffError(f"cutoff {X.N} too small for page {r}")
    ss = SpectralSequence(FilteredComplex(X, kind=kind))
    return ss.page_dims(r, bound=bound)


def induced_page_map(f: LinearMap, r, ss_src: SpectralSequence,
                     ss_dst: SpectralSequence, p, n):
    src = ss_src.entry(r, p, n)
    dst = ss_dst.entry(r, p, n)
    rows = []
    for rep in src.reps:
        x = ss_src.fc.from_coords(n, rep)
        y = f(x)
        c = dst.coords(ss_dst.fc.coords(y, n))
        if c is None:
            return None, src, dst
        rows.append(c)
    return rows, src, dst


def check_filtration_preserving(f: LinearMap, kind="W", bound=None) -> list:
    bad = []
    bound = min(f.source.N, f.target.N) if bound is None else bound
    fcs = FilteredComplex(f.source, kind=kind, bound=bound)
    fct = FilteredComplex(f.target, kind=kind, bound=bound)
    for n in range(0, bound + 1):
        for b, lv in zip(fcs.elements[n], fcs.levels[n]):
            y = f(b)
            if y.is_zero:
                continue
            ylv = fct.level_of_coords(n, fct.coords(y, n))
            if ylv is not None and ylv > lv:
                bad.append({"degree": n, "level": lv, "image_level": ylv,
                            "witness": repr(b)})
    return bad


def is_Er_quasi_iso(f: LinearMap, r: int, kind="W", bound=None):
    """Verdict: does f induce an isomorphism on page r+1 (= H of page r)?

    Returns (ok, witnesses).  Pre: f preserves the filtration.
    """
    pre = check_filtration_preserving(f, kind=kind)
    if pre:
        return False, [{"reason": "not filtration-preserving", **pre[0]}]
    ss_s = SpectralSequence(FilteredComplex(f.source, kind=kind))
    ss_t = SpectralSequence(FilteredComplex(f.target, kind=kind))
    if min(f.source.N, f.target.N) - r - 2 < 0:
        raise CutoffError(f"cutoff too small for an E_{r}-quasi-isomorphism check")
    bound = min(ss_s._bound(r + 1), ss_t._bound(r + 1)) if bound is None else bound
    lo = min(ss_s.fc.level_range()[0], ss_t.fc.level_range()[0])
    hi = max(ss_s.fc.level_range()[1], ss_t.fc.level_range()[1])
    bad = []
    for n in range(0, bound + 1):
        for p in range(lo, hi + 1):
            rows, src, dst = induced_page_map(f, r + 1, ss_s, ss_t, p, n)
            if rows is None:
                bad.append({"p": p, "n": n, "reason": "map does not descend"})
                continue
            if not linalg.is_isomorphism(rows, src.dim, dst.dim):
                bad.append({"p": p, "n": n, "dim_src": src.dim, "dim_dst": dst.dim})
    return (not bad), bad


# ---------------------------------------------------------------------------
# decalage
# ---------------------------------------------------------------------------

def decalage(fc: FilteredComplex) -> FilteredComplex:
    """Dec W_p C^n = {x in W_{p-n} C^n : dx in W_{p-n-1} C^{n+1}}."""
    X = fc.X
    out = FilteredComplex.__new__(FilteredComplex)
    out.X = X
    out.kind = fc.kind + "-dec"
    out.bound = fc.bound - 1 if fc.bound >= 1 else 0
    out.levels = {}
    out.elements = {}
    out._coord_cache = {}
    for n in range(0, out.bound + 1):
        dim = fc.dim(n)
        chosen_rows, levels, elems = [], [], []
        lo, hi = fc.level_range()
        for p in range(lo + n, hi + n + 2):
            gens = [i for i, lv in enumerate(fc.levels[n]) if lv <= p - n]
            rows = []
            for i in gens:
                dv = fc.d_coords(n, _unit_vec(dim, i))
                rows.append(fc.proj_above(n + 1, dv, p - n - 1))
            cols = len(gens)
            dim_hi = fc.dim(n + 1)
            tmat = [[rows[i][j] for i in range(cols)] for j in range(dim_hi)]
            for v in linalg.kernel_basis(tmat, cols):
                full = linalg.zeros(dim)
                for c, i in zip(v, gens):
                    full[i] = c
                if not linalg.span_contains(chosen_rows, dim, full):
                    chosen_rows.append(full)
                    levels.append(p)
                    elems.append(fc.from_coords(n, full))
        out.levels[n] = levels
        out.elements[n] = elems
    return out


# ---------------------------------------------------------------------------
# strictness
# ---------------------------------------------------------------------------

def strictness_check(rows, src_levels, dst_levels, decreasing=True) -> list:
    """Witnesses of image(map) ∩ F^q != map(F^q) for a leveled linear map.

    rows[i] = image coordinates of the i-th source basis vector; levels are
    F-levels (decreasing filtration: F^q = span of level >= q).
    """
    bad = []
    cols = len(dst_levels)
    if cols == 0 or not rows:
        return bad
    qs = sorted(set(src_levels) | set(dst_levels))
    for q in qs:
        if decreasing:
            img_subspace = [r for r, lv in zip(rows, src_levels) if lv >= q]
            f_target = [_unit_vec(cols, i) for i, lv in enumerate(dst_levels) if lv >= q]
        else:
            img_subspace = [r for r, lv in zip(rows, src_levels) if lv <= q]
            f_target = [_unit_vec(cols, i) for i, lv in enumerate(dst_levels) if lv <= q]
        lhs = linalg.intersect(rows, f_target, cols)
        dim_lhs = linalg.span_dim(lhs, cols)
        dim_rhs = linalg.span_dim(img_subspace, cols)
        if dim_lhs != dim_rhs:
            bad.append({"q": q, "dim_image_cap_F": dim_lhs, "dim_image_of_F": dim_rhs})
    return bad


def gr_differential_strict(g: GrComplex, n: int) -> list:
    """MH-style strictness of d: Gr^n -> Gr^{n+1} for the inherited F levels."""
    if g.hodge.get(n) is None or g.hodge.get(n + 1) is None:
        raise AlgebraError("graded piece carries no second filtration")
    return strictness_check(g.d.get(n, []), g.hodge[n], g.hodge[n + 1],
                            decreasing=True)
