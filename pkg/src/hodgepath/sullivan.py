"""Sullivan minimal models up to a degree horizon, with exact certification.

The construction is the classical degreewise one: at stage n adjoin closed
generators hitting the cokernel of H^n, then generators killing the kernel of
H^{n+1}, with all representatives and primitives found by exact solves.  The
result is certified independently: the quasi-isomorphism check recomputes
cohomology of both sides from scratch.

Degree-N data is provisional: corrections from degree N+1 could adjust the
top homotopy group, so stage N skips kernel-killing and the certificate
covers degrees <= N-1 (plus injectivity at N when both sides stay enumerable
one degree beyond the horizon).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebra import (AlgebraError, CutoffError, Element, FreeCdga, FreeMorphism,
                      Generator, Morphism, compose, is_surjective_at)
from .homology import cohomology, quasi_iso_report
from .lifting import free_lift, homotopy_add, lift_homotopy
from .ops import indecomposables
from .paths import (DoublePath, Homotopy, delta, induced_to_double_path, keyed,
                    mapping_path, path_linear_map, path_of)
from .scalars import Scalar


class ModelError(AlgebraError):
    pass


# ---------------------------------------------------------------------------
# helpers: rebuild a free algebra with extra generators
# ---------------------------------------------------------------------------

def _namepoly(M: FreeCdga, x: Element):
    out = []
    for k, c in x.sorted_terms():
        out.append((c, tuple((M.gens[i].name, e) for i, e in k)))
    return out


def _from_namepoly(M: FreeCdga, poly) -> Element:
    out = M.zero()
    for c, factors in poly:
        term = M.unit() * c
        for name, e in factors:
            g = M.generator(name)
            for _ in range(e):
                term = term * g
        out = out + term
    return out


def _rebuild(gens, diff_polys, N, fld, name) -> FreeCdga:
    M = FreeCdga(gens, N, fld, name=name)
    M.set_differential({nm: _from_namepoly(M, poly) for nm, poly in diff_polys.items()})
    return M


# ---------------------------------------------------------------------------
# minimality
# ---------------------------------------------------------------------------

def is_minimal(M, filtered: bool = False):
    """(ok, witnesses): the differential lands in decomposables.

    With filtered=True also requires d(W_p) in W_{p-1} of the decomposables,
    i.e. every monomial of d(g) has weight <= weight(g) - 1.
    """
    if not isinstance(M, FreeCdga):
        raise ModelError("minimality test needs a FREE presentation")
    bad = []
    for g in M.gens:
        dg = M.differential_of(g.name)
        for k, c in dg.terms.items():
            if len(k) == 1 and k[0][1] == 1:
                bad.append({"generator": g.name, "check": "linear-part",
                            "witness": M.gens[k[0][0]].name})
            if filtered:
                if g.weight is None:
                    bad.append({"generator": g.name, "check": "weights-missing"})
                    break
                if M.key_weight(k) is None or M.key_weight(k) > g.weight - 1:
                    bad.append({"generator": g.name, "check": "weight-shift",
                                "witness": M.key_str(k)})
    return (not bad), bad


# ---------------------------------------------------------------------------
# the construction
# ---------------------------------------------------------------------------

@dataclass
class MinimalModel:
    M: FreeCdga
    rho: FreeMorphism
    A: object
    N: int
    log: list = field(default_factory=list)
    provisional_degrees: list = field(default_factory=list)
    certificate: dict = field(default_factory=dict)

    def q_dims(self) -> dict:
        return {g.degree: sum(1 for h in self.M.gens if h.degree == g.degree)
                for g in self.M.gens}


def _solve_d_preimage(A, y: Element, n: int):
    basis = A.basis(n, strict=False)
    rows = []
    for b in basis:
        db = b.d()
        rows.append(A.coords(db, n + 1, strict=False) if not db.is_zero
                    else linalg.zeros(A.dim(n + 1, strict=False)))
    cols = len(basis)
    dim_hi = A.dim(n + 1, strict=False)
    mat = [[rows[i][j] for i in range(cols)] for j in range(dim_hi)]
    rhs = A.coords(y, n + 1, strict=False) if not y.is_zero else linalg.zeros(dim_hi)
    sol = linalg.solve(mat, cols, rhs)
    if sol is None:
        return None
    return A.from_coords(n, sol, strict=False)


def minimal_model(A, N: int | None = None, allow_0_connected: bool = False,
                  max_rounds: int = 8, rng=None) -> MinimalModel:
    """Minimal Sullivan model of a cohomologically connected algebra, up to N.

    Requires H^0(A) = k; H^1(A) = 0 unless allow_0_connected (in which case
    functoriality of the homotopy groups is not guaranteed).  Deterministic:
    generator names are v{degree}_{counter}, representatives are canonical
    reduced vectors (an optional rng only reshuffles representative choices).
    """
    N = A.N if N is None else N
    if N > A.N:
        raise CutoffError(f"requested horizon {N} exceeds the input's cutoff {A.N}")
    H0 = cohomology(A, 0)
    if H0.dim != 1:
        raise ModelError(f"not cohomologically connected: dim H^0 = {H0.dim}")
    if H0.cls(A.unit()) is None or all(c.is_zero for c in H0.cls(A.unit())):
        raise ModelError("unit does not generate H^0")
    start = 1
    if not allow_0_connected:
        if N >= 2 and cohomology(A, 1).dim != 0:
            raise ModelError("H^1 != 0; pass allow_0_connected=True to proceed "
                             "(homotopy groups lose functoriality)")
        start = 2

    if isinstance(A, FreeCdga) and is_minimal(A)[0]:
        rho = FreeMorphism(A, A, {g.name: A.generator(g.name) for g in A.gens},
                           name="identity")
        cert = quasi_iso_report(rho, min(N - 1, A.N - 1))
        return MinimalModel(M=A, rho=rho, A=A, N=N,
                            log=[{"stage": "input already minimal"}],
                            certificate=cert)

    gens: list[Generator] = []
    diff_polys: dict = {}
    rho_images: dict = {}
    counters: dict = {}
    M = _rebuild(gens, diff_polys, N, A.field, "M")
    rho = FreeMorphism(M, A, {}, name="rho")
    log = []

    def fresh(n):
        k = counters.get(n, 0)
        counters[n] = k + 1
        return f"v{n}_{k:02d}"

    def rebuild():
        nonlocal M, rho
        M = _rebuild(gens, diff_polys, N, A.field, "M")
        rho = FreeMorphism(M, A, dict(rho_images), name="rho")

    for n in range(start, N + 1):
        stage = {"degree": n, "added_closed": [], "added_killers": []}
        # 1. cokernel of H^n(rho)
        HnA = cohomology(A, n, strict=False)
        HnM = cohomology(M, n, strict=False)
        img = [HnA.cls(rho(rep)) for rep in HnM.reps]
        unit_vectors = [linalg.zeros(HnA.dim) for _ in range(HnA.dim)]
        for i in range(HnA.dim):
            unit_vectors[i][i] = Scalar(1)
        coker = linalg.Subquotient(unit_vectors, img, HnA.dim)
        new_reps = []
        for v in coker.reps:
            el = A.zero()
            for c, rep in zip(v, HnA.reps):
                if not c.is_zero:
                    el = el + rep * c
            new_reps.append(el)
        if rng is not None:
            rng.shuffle(new_reps)
            perturbed = []
            for el in new_reps:
                noise = A.random_element(n - 1, rng, density=0.3)
                perturbed.append(el + noise.d())
            new_reps = perturbed
        for el in new_reps:
            nm = fresh(n)
            gens.append(Generator(nm, n))
            diff_polys[nm] = []
            rho_images[nm] = el
            stage["added_closed"].append(nm)
        if new_reps:
            rebuild()
        # 2. kill the kernel of H^{n+1}(rho); skipped at the horizon
        if n + 1 <= N:
            for round_idx in range(max_rounds):
                Hn1A = cohomology(A, n + 1, strict=False)
                Hn1M = cohomology(M, n + 1, strict=False)
                if Hn1M.dim == 0:
                    break
                rows = [Hn1A.cls(rho(rep)) for rep in Hn1M.reps]
                mat = [[rows[i][j] for i in range(Hn1M.dim)] for j in range(Hn1A.dim)]
                kern = linalg.kernel_basis(mat, Hn1M.dim)
                if not kern:
                    break
                added = []
                for v in kern:
                    z = M.zero()
                    for c, rep in zip(v, Hn1M.reps):
                        if not c.is_zero:
                            z = z + rep * c
                    if z.is_zero:
                        continue
                    a = _solve_d_preimage(A, rho(z), n)
                    if a is None:
                        raise ModelError(
                            f"kernel class at degree {n + 1} has no primitive "
                            "(input differential data inconsistent)")
                    nm = fresh(n)
                    gens.append(Generator(nm, n))
                    diff_polys[nm] = _namepoly(M, z)
                    rho_images[nm] = a
                    added.append(nm)
                if not added:
                    break
                stage["added_killers"].extend(added)
                rebuild()
            else:
                raise ModelError(
                    f"stage {n} did not stabilize after {max_rounds} rounds; "
                    "the input is beyond the 0-connected construction's reach")
        log.append(stage)

    ok_min, witnesses = is_minimal(M)
    if not ok_min:
        raise ModelError(f"construction produced a non-minimal algebra: {witnesses}")
    cert = quasi_iso_report(rho, min(N - 1, A.N - 1))
    model = MinimalModel(M=M, rho=rho, A=A, N=N, log=log, certificate=cert,
                         provisional_degrees=[N])
    bad = [n for n, r in cert.items() if not r["iso"]]
    if bad:
        raise ModelError(f"certification failed in degrees {bad}")
    # injectivity surrogate at the horizon, when one degree beyond is enumerable
    try:
        HN_M = cohomology(M, N, strict=False)
        HN_A = cohomology(A, N, strict=False)
        rows = [HN_A.cls(rho(rep)) for rep in HN_M.reps]
        mat = [[rows[i][j] for i in range(HN_M.dim)] for j in range(HN_A.dim)]
        model.certificate[N] = {
            "dim_source": HN_M.dim, "dim_target": HN_A.dim,
            "injective": not linalg.kernel_basis(mat, HN_M.dim),
            "provisional": True}
    except Exception:
        pass
    return model


def homotopy_groups(model: MinimalModel) -> dict:
    """dim Q(M) per degree <= N; the degree-N entry is provisional."""
    ok, bad = is_minimal(model.M)
    if not ok:
        raise ModelError(f"homotopy groups need a minimal model: {bad}")
    q = indecomposables(model.M, upto=model.N)
    return {"dims": q.dims(), "provisional_degree": model.N}


# ---------------------------------------------------------------------------
# lifting along weak equivalences (surjectivity and injectivity of w_*)
# ---------------------------------------------------------------------------

def lift_against_weak_equivalence(C: FreeCdga, w: Morphism, f: Morphism,
                                  budget=None):
    """g: C -> A with an explicit verified homotopy w g ~ f.

    Factor w through its mapping path, lift f through the endpoint projection
    q (a trivial fibration when w is a weak equivalence), and read the
    homotopy off the canonical contraction.
    """
    mp = mapping_path(w, budget=budget)
    gprime = free_lift(C, mp.q, f, name="g'")
    g = FreeMorphism(C, w.source, {gen.name: mp.p(gprime(C.generator(gen.name)))
                                   for gen in C.gens}, name="g")
    h = mp.contraction()
    PB = mp.PB
    Pq = path_linear_map(mp.q, path_of(mp.space, keyed(PB).budget), PB)
    hmap = Morphism(C, PB, lambda x: Pq(h.map(gprime(x))), name="w g ~ f")
    wg = compose(w, g, name="w g")
    return g, Homotopy(wg, f, hmap)


def _surjective_through(w: Morphism, upto: int) -> bool:
    return all(is_surjective_at(w, n) for n in range(0, upto + 1))


def homotopy_between_lifts(C: FreeCdga, w: Morphism, g0: Morphism, g1: Morphism,
                           h: Homotopy, budget=None) -> Homotopy:
    """From h: w g0 ~ w g1 produce an explicit homotopy g0 ~ g1.

    When w is surjective through the horizon this is the homotopy lifting
    property (exact: P(w) applied to the result gives h back).  Otherwise the
    double-path factorization reduces to three composable homotopies which are
    added over the free source.
    """
    kh = keyed(h.path)
    budget = kh.budget if budget is None else budget
    upto = min(w.source.N, w.target.N) - 1
    if _surjective_through(w, upto):
        return lift_homotopy(C, w, g0, g1, h)
    A = w.source
    PA = path_of(A, budget, kh.w_shift)
    dp = DoublePath(w, w, budget=budget, path_object=h.path)
    barw = induced_to_double_path(w, dp, PA)

    def data(c):
        return dp.embed(g0(c), g1(c), h.map(c))

    H = Morphism(C, dp.space, data, name="(g0,g1,h)")
    G, K = lift_against_weak_equivalence(C, barw, H, budget=budget)
    # project the homotopy K: barw G ~ H to the two A-coordinates
    Pdp = K.path
    pi0 = Morphism(dp.space, A, lambda x: dp.parts(x)[0], name="pr0")
    pi1 = Morphism(dp.space, A, lambda x: dp.parts(x)[1], name="pr1")
    Ppi0 = path_linear_map(pi0, Pdp, PA)
    Ppi1 = path_linear_map(pi1, Pdp, PA)
    k0 = Homotopy(compose(delta(PA, 0), G), g0,
                  Morphism(C, PA, lambda x: Ppi0(K.map(x)), name="k0"))
    k1 = Homotopy(compose(delta(PA, 1), G), g1,
                  Morphism(C, PA, lambda x: Ppi1(K.map(x)), name="k1"))
    mid = Homotopy(compose(delta(PA, 0), G), compose(delta(PA, 1), G),
                   Morphism(C, PA, G.fn, name="G"))
    return homotopy_add(homotopy_add(k0.reversed(), mid), k1)
