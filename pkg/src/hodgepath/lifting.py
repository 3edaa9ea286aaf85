"""Lifting against surjective quasi-isomorphisms from free sources.

The workhorse is free_lift: given a free algebra C with well-ordered
generators, a map v: X -> Y that is surjective degreewise and has acyclic
kernel through the horizon, and f: C -> Y, it builds g: C -> X with v g = f
generator by generator.  Each generator costs one preimage solve plus one
exact solve of (d z = error, v z = 0); an unsolvable system is reported as an
obstruction naming the generator (the certificate that v was not a trivial
fibration through the horizon).

Homotopy lifting and homotopy addition are the same solve against structured
targets: the double path for homotopy lifting, the mapping path of the
endpoint evaluation for addition, and a four-face boundary target for filling
squares of homotopies (used by the diagram engine's homotopies of
ho-morphisms).
"""

from __future__ import annotations

from . import linalg
from .algebra import (AlgebraError, Element, FreeCdga, FreeMorphism, LinearMap,
                      Morphism, ProductCdga, SubCdga, compose, solve_preimage)
from .paths import (DoublePath, Homotopy, delta, folding, induced_to_double_path,
                    keyed, mapping_path, path_linear_map, path_of)


class LiftObstruction(AlgebraError):
    def __init__(self, generator, degree, reason):
        super().__init__(
            f"no lift at generator {generator!r} (degree {degree}): {reason}")
        self.generator = generator
        self.degree = degree
        self.reason = reason


def _apply_partial(C: FreeCdga, images: dict, x: Element, target):
    out = None
    unit = target.unit() if not isinstance(target, SubCdga) else target.ambient.unit()
    for key, c in x.terms.items():
        term = unit
        for gi, e in key:
            name = C.gens[gi].name
            img = images.get(name)
            if img is None:
                raise AlgebraError(
                    f"generator {name!r} used before it is processed; "
                    "the source is not well-ordered for lifting")
            for _ in range(e):
                term = term * img
        out = term * c if out is None else out + term * c
    if out is None:
        amb = target.ambient if isinstance(target, SubCdga) else target
        return amb.zero()
    return out


def free_lift(C: FreeCdga, v, f, name="lift") -> FreeMorphism:
    """g: C -> X with v g = f, built generator by generator.

    Generators of degree N (the horizon) are matched against f but their
    d-compatibility lives beyond the horizon and is left provisional.
    """
    X, Y = v.source, v.target
    images = {}
    horizon = X.N
    log = []
    for idx, gen in enumerate(C.gens):
        n = gen.degree
        target_val = f(C.generator(gen.name))
        dgen = C.differential_of(gen.name)
        for key in dgen.terms:
            if any(gi >= idx for gi, _ in key):
                raise LiftObstruction(gen.name, n,
                                      "differential uses a later generator")
        xi = solve_preimage(v, target_val, n)
        if xi is None:
            raise LiftObstruction(gen.name, n, "v is not surjective here")
        entry = {"generator": gen.name, "degree": n, "correction": False}
        if n + 1 <= horizon:
            dg_img = _apply_partial(C, images, dgen, X)
            err = dg_img - xi.d()
            if not err.is_zero:
                zeta = _solve_closed_correction(v, err, n)
                if zeta is None:
                    raise LiftObstruction(
                        gen.name, n,
                        "the error cocycle is not a boundary in ker(v); "
                        "v is not a trivial fibration through the horizon")
                xi = xi + zeta
                entry["correction"] = True
        else:
            entry["provisional"] = True
        images[gen.name] = xi
        log.append(entry)
    g = FreeMorphism(C, X, images, name=name)
    g.lift_log = log
    return g


def _solve_closed_correction(v, err: Element, n: int):
    """z in X^n with d z = err and v z = 0, or None."""
    X, Y = v.source, v.target
    basis = X.basis(n, strict=False)
    if not basis:
        return None if not err.is_zero else X.zero()
    d_rows = []
    v_rows = []
    for b in basis:
        db = b.d()
        d_rows.append(_coords(X, db, n + 1))
        v_rows.append(_coords(Y, v(b), n))
    dim_hi = len(d_rows[0])
    dim_y = len(v_rows[0])
    cols = len(basis)
    mat = []
    for j in range(dim_hi):
        mat.append([d_rows[i][j] for i in range(cols)])
    for j in range(dim_y):
        mat.append([v_rows[i][j] for i in range(cols)])
    rhs = _coords(X, err, n + 1) + linalg.zeros(dim_y)
    sol = linalg.solve(mat, cols, rhs)
    if sol is None:
        return None
    out = None
    for c, b in zip(sol, basis):
        if not c.is_zero:
            out = b * c if out is None else out + b * c
    if out is None:
        amb = X.ambient if isinstance(X, SubCdga) else X
        return amb.zero()
    return out


def _coords(X, x, n):
    if x.is_zero:
        return linalg.zeros(X.dim(n, strict=False))
    return X.coords(x, n, strict=False)


# ---------------------------------------------------------------------------
# homotopy lifting through a trivial fibration (free source)
# ---------------------------------------------------------------------------

def lift_homotopy(C: FreeCdga, v: Morphism, f0: Morphism, f1: Morphism,
                  h: Homotopy) -> Homotopy:
    """Lift h: v f0 ~ v f1 to h~: f0 ~ f1 with P(v) h~ = h, exactly."""
    PB = h.path
    kB = keyed(PB)
    PA = path_of(v.source, kB.budget, kB.w_shift)
    dp = DoublePath(v, v, budget=kB.budget, path_object=PB)
    bar_v = induced_to_double_path(v, dp, PA)

    def data(c):
        return dp.embed(f0(c), f1(c), h.map(c))

    H = Morphism(C, dp.space, data, name="(f0,f1,h)")
    lifted = free_lift(C, bar_v, H, name="h~")
    hmap = Morphism(C, PA, lambda x: lifted(x), name="h~")
    out = Homotopy(f0, f1, hmap)
    out.lift_log = lifted.lift_log
    return out


def homotopy_add(h1: Homotopy, h2: Homotopy) -> Homotopy:
    """Concatenate h1: f ~ f' and h2: f' ~ f'' over a free source.

    Lift (h1, h2) through (delta^0 on the outer path, inner endpoint
    evaluation) into the double path algebra, then fold s -> t.
    """
    C = h1.source
    if not isinstance(C, FreeCdga):
        raise AlgebraError("homotopy addition needs a free source")
    if h1.path is not h2.path:
        raise AlgebraError("homotopies must share one path object")
    if not isinstance(h1.path, type(h2.path)):
        raise AlgebraError("incompatible paths")
    PA = h1.path
    kA = keyed(PA)
    d1 = delta(PA, 1)
    mp = mapping_path(d1, budget=kA.budget, path_object=PA)
    P2 = path_of(PA, kA.budget)
    k2 = keyed(P2)

    def pi_A(L):
        outer0 = k2.evaluate(L, 0)                      # delta^0 on the outer level
        inner1 = path_linear_map(d1, P2, mp.PB)(L)      # P(delta^1)
        return mp.pair(outer0, inner1)

    pi = Morphism(P2, mp.space, pi_A, name="pi_A")

    def data(c):
        return mp.pair(h1.map(c), h2.map(c))

    H = Morphism(C, mp.space, data, name="(h,h')")
    L = free_lift(C, pi, H, name="L")
    add_map = compose(folding(P2), L, name="h +~ h'")
    out = Homotopy(h1.f, h2.g, Morphism(C, PA, add_map.fn, name=add_map.name))
    out.lift_log = L.lift_log
    out.square = L
    return out


# ---------------------------------------------------------------------------
# filling a square of homotopies with prescribed boundary
# ---------------------------------------------------------------------------

def boundary_square_target(PB):
    """T = {(x0, x1, y0, y1) in P(B)^4 : corners match} and theta: P^2(B) -> T.

    Faces of L in P^2(B): x_m = inner evaluation at m, y_k = outer evaluation
    at k; the corner conditions are delta^k(x_m) = delta^m(y_k).
    """
    kB = keyed(PB)
    B = kB.base
    amb = ProductCdga([kB, kB, kB, kB], name="P(B)^4")
    cons = []
    for kk in (0, 1):
        for m in (0, 1):
            def gap(x, kk=kk, m=m):
                xm = amb.project(m, x)
                yk = amb.project(2 + kk, x)
                return kB.evaluate(xm, kk) - kB.evaluate(yk, m)
            cons.append(LinearMap(amb, B, gap, f"corner{kk}{m}"))
    T = SubCdga(amb, cons, name="square boundary")
    P2 = path_of(PB, kB.budget)
    k2 = keyed(P2)
    d0, d1 = delta(PB, 0), delta(PB, 1)

    def theta_fn(L):
        x0 = path_linear_map(d0, P2, PB)(L)
        x1 = path_linear_map(d1, P2, PB)(L)
        y0 = k2.evaluate(L, 0)
        y1 = k2.evaluate(L, 1)
        return (amb.inject(0, x0) + amb.inject(1, x1)
                + amb.inject(2, y0) + amb.inject(3, y1))

    theta = Morphism(P2, T, theta_fn, name="faces")
    return T, theta, amb


def fill_square(C: FreeCdga, PB, inner0: Morphism, inner1: Morphism,
                outer0: Morphism, outer1: Morphism) -> Morphism:
    """H: C -> P^2(B) with prescribed faces.

    inner evaluations (P(delta^k) H) give inner0/inner1, outer evaluations
    (delta^k on the outer path) give outer0/outer1.  Raises LiftObstruction if
    the boundary cannot be filled within the budget.
    """
    T, theta, amb = boundary_square_target(PB)

    def data(c):
        return (amb.inject(0, inner0(c)) + amb.inject(1, inner1(c))
                + amb.inject(2, outer0(c)) + amb.inject(3, outer1(c)))

    f = Morphism(C, T, data, name="boundary data")
    L = free_lift(C, theta, f, name="square fill")
    P2 = path_of(PB, keyed(PB).budget)
    return Morphism(C, P2, L.fn, name="square fill")
