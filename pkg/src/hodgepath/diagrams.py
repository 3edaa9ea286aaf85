"""Zig-zag diagrams of dg algebras: ho-morphisms, rectification, composition.

Index categories carry a binary degree; non-identity arrows go from degree 0
to degree 1.  Vertices are tagged plain / filtered / bifiltered; the tag
selects the vertex path object (plain path, weight-shifted path) and the
equivalence notion.  Comparison maps may change scalars (rational vertex into
a quadratic extension); rectification and composition require one common
scalar field, which is all their callers need.

A ho-morphism is a family of vertex maps plus one chosen homotopy per arrow
making each square commute up to homotopy.  The mapping path of a ho-morphism
alternates the endpoint evaluation with the vertex degree, which is exactly
what makes its two legs strict.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (AlgebraError, Element, FreeCdga, Morphism, SubCdga,
                      compose, identity_morphism)
from .lifting import LiftObstruction, fill_square, free_lift, homotopy_add, lift_homotopy
from .ops import ValidationReport
from .paths import (Homotopy, MappingPath, coproduct, c_hat, delta, iota, keyed,
                    pair_paths, path_linear_map, path_of)
from .sullivan import lift_against_weak_equivalence, minimal_model

W_SHIFT = {"plain": 0, "filtered": 1, "bifiltered": 1}


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    dst: str


class IndexCategory:
    """Finite index category with a binary degree; arrows go 0 -> 1."""

    def __init__(self, degrees: dict, arrows):
        self.degrees = dict(degrees)
        self.vertices = sorted(self.degrees)
        self.arrows = [a if isinstance(a, Arrow) else Arrow(*a) for a in arrows]
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate arrow name")
        for a in self.arrows:
            if a.src not in self.degrees or a.dst not in self.degrees:
                raise AlgebraError(f"arrow {a.name} touches an unknown vertex")
            if not (self.degrees[a.src] == 0 and self.degrees[a.dst] == 1):
                raise AlgebraError(
                    f"arrow {a.name}: non-identity arrows must go from degree 0 "
                    "to degree 1 (binary-degree index category)")

    def degree(self, v):
        return self.degrees[v]

    @staticmethod
    def zigzag(length: int) -> "IndexCategory":
        """0 -> 1 <- 2 -> ... with `length` arrows."""
        degrees = {str(i): i % 2 for i in range(length + 1)}
        arrows = []
        for k in range(length):
            a, b = str(k), str(k + 1)
            if degrees[a] == 0:
                arrows.append(Arrow(f"u{k}", a, b))
            else:
                arrows.append(Arrow(f"u{k}", b, a))
        return IndexCategory(degrees, arrows)


class Diagram:
    """Vertex algebras with comparison morphisms over an index category."""

    def __init__(self, index: IndexCategory, algebras: dict, tags=None,
                 arrows=None, budget=None, name=""):
        self.index = index
        self.algebras = dict(algebras)
        self.tags = {v: (tags or {}).get(v, "plain") for v in index.vertices}
        self.budget = budget
        self.name = name or "diagram"
        self.phi = {}
        self.coerce = {}
        for a in index.arrows:
            entry = (arrows or {}).get(a.name)
            if entry is None:
                raise AlgebraError(f"missing comparison for arrow {a.name}")
            if isinstance(entry, tuple):
                phi, coerce = entry
            else:
                phi, coerce = entry, None
            if phi.target is not self.algebras[a.dst]:
                raise AlgebraError(f"arrow {a.name}: comparison target mismatch")
            if coerce is None and phi.source is not self.algebras[a.src]:
                raise AlgebraError(f"arrow {a.name}: comparison source mismatch")
            self.phi[a.name] = phi
            self.coerce[a.name] = coerce

    def arrow(self, name) -> Arrow:
        for a in self.index.arrows:
            if a.name == name:
                return a
        raise AlgebraError(f"unknown arrow {name}")

    def dom(self, u: str):
        """Domain algebra of the comparison (vertex algebra after base change)."""
        return self.phi[u].source

    def comp(self, u: str) -> Morphism:
        """Effective comparison A_src -> A_dst (coercion folded in)."""
        phi = self.phi[u]
        c = self.coerce[u]
        return phi if c is None else compose(phi, c, name=f"phi_{u}")

    def to_dom(self, u: str) -> Morphism:
        c = self.coerce[u]
        return c if c is not None else identity_morphism(self.algebras[self.arrow(u).src])

    def vertex_path(self, v):
        return path_of(self.algebras[v], self.budget, W_SHIFT[self.tags[v]])

    def same_field(self) -> bool:
        return len({A.field for A in self.algebras.values()}) == 1 and \
            all(c is None for c in self.coerce.values())

    def check_upto(self) -> int:
        return min(A.N for A in self.algebras.values())


def validate_diagram(D: Diagram, rng=None, samples=2) -> ValidationReport:
    import random
    rng = rng or random.Random(11)
    rep = ValidationReport(subject=f"diagram {D.name}")
    from .algebra import check_morphism
    from .filtered import check_filtration_preserving
    for u in D.phi:
        fails = check_morphism(D.phi[u], rng, samples=samples)
        for fl in fails:
            rep.add("comparison-" + fl["check"], f"arrow {u}: {fl.get('witness')}")
        a = D.arrow(u)
        for kind, tag_need in (("W", ("filtered", "bifiltered")), ("F", ("bifiltered",))):
            if D.tags[a.src] in tag_need and D.tags[a.dst] in tag_need:
                bad = check_filtration_preserving(D.phi[u], kind=kind)
                if bad:
                    rep.add(f"comparison-{kind}-filtration", f"arrow {u}: {bad[0]}")
    return rep


# ---------------------------------------------------------------------------
# strict morphisms and ho-morphisms
# ---------------------------------------------------------------------------

class DiagramMorphism:
    """Strict morphism: vertex maps with exactly commuting squares."""

    def __init__(self, source: Diagram, target: Diagram, maps: dict, name=""):
        self.source = source
        self.target = target
        self.maps = dict(maps)
        self.name = name

    def vertex(self, v) -> Morphism:
        return self.maps[v]

    def dom_map(self, u) -> Morphism:
        """The vertex map extended to the comparison domain at arrow u."""
        a = self.source.arrow(u)
        f = self.maps[a.src]
        cs = self.source.coerce[u]
        ct = self.target.coerce[u]
        if cs is None and ct is None:
            return f
        src_dom = self.source.dom(u)
        tgt_dom = self.target.dom(u)

        def fn(x):
            out = tgt_dom.zero() if not isinstance(tgt_dom, SubCdga) else tgt_dom.ambient.zero()
            for k, c in x.terms.items():
                img = f(Element(f.source, {k: f.source.field.one()}))
                out = out + Element(tgt_dom, dict(img.terms)) * c
            return out

        return Morphism(src_dom, tgt_dom, fn, name=f"{self.name}@{u}")


def validate_diagram_morphism(F: DiagramMorphism, upto=None) -> ValidationReport:
    rep = ValidationReport(subject=f"morphism {F.name}")
    upto = min(F.source.check_upto(), F.target.check_upto()) if upto is None else upto
    for u in F.source.phi:
        a = F.source.arrow(u)
        lhs = compose(F.maps[a.dst], F.source.comp(u))
        rhs = compose(F.target.comp(u), F.maps[a.src])
        A = F.source.algebras[a.src]
        for n in range(0, upto + 1):
            for b in A.basis(n):
                if lhs(b) != rhs(b):
                    rep.add("square", f"arrow {u}, degree {n}")
                    break
    return rep


class HoMorphism:
    """Vertex maps f_v plus per-arrow homotopies F_u from f_dst phi to phi f_src."""

    def __init__(self, source: Diagram, target: Diagram, maps: dict,
                 homotopies: dict, name=""):
        self.source = source
        self.target = target
        self.maps = dict(maps)
        self.homotopies = dict(homotopies)  # arrow -> Morphism dom(u) -> P(B_dst)
        self.name = name

    def vertex(self, v) -> Morphism:
        return self.maps[v]

    def arrow_homotopy(self, u) -> Morphism:
        return self.homotopies[u]

    def path_target(self, u):
        a = self.source.arrow(u)
        return self.target.vertex_path(a.dst)


def promote_strict(F: DiagramMorphism, name="") -> HoMorphism:
    """A strict morphism as a ho-morphism: constant arrow homotopies."""
    homotopies = {}
    for u in F.source.phi:
        a = F.source.arrow(u)
        PB = F.target.vertex_path(a.dst)
        const = compose(iota(PB), compose(F.maps[a.dst], F.source.comp(u)))
        homotopies[u] = Morphism(F.source.dom(u), PB, const.fn, name=f"const@{u}")
    return HoMorphism(F.source, F.target, F.maps, homotopies,
                      name=name or F.name)


def validate_ho_morphism(f: HoMorphism, upto=None) -> ValidationReport:
    rep = ValidationReport(subject=f"ho-morphism {f.name}")
    upto_eff = min(f.source.check_upto(), f.target.check_upto()) if upto is None else upto
    strict = DiagramMorphism(f.source, f.target, f.maps, name=f.name)
    for u in f.source.phi:
        a = f.source.arrow(u)
        F_u = f.homotopies[u]
        PB = f.path_target(u)
        kB = keyed(PB)
        lhs0 = compose(f.maps[a.dst], f.source.comp(u))      # f_j phi_u
        rhs1 = compose(f.target.comp(u), f.maps[a.src])      # phi_u f_i
        dom = f.source.algebras[a.src]
        for n in range(0, upto_eff + 1):
            for b in dom.basis(n):
                x = f.source.to_dom(u)(b)
                hx = F_u(x)
                if kB.evaluate(hx, 0) != lhs0(b):
                    rep.add("endpoint-0", f"arrow {u}, degree {n}")
                    break
                if kB.evaluate(hx, 1) != rhs1(b):
                    rep.add("endpoint-1", f"arrow {u}, degree {n}")
                    break
                if n <= upto_eff - 1 and F_u(f.source.to_dom(u)(b.d())) != hx.d():
                    rep.add("chain-map", f"arrow {u}, degree {n}")
                    break
    return rep


class HoHomotopy:
    """Homotopy between ho-morphisms: vertex homotopies plus square fillers."""

    def __init__(self, f: HoMorphism, g: HoMorphism, vertex: dict, arrows: dict,
                 name=""):
        self.f = f
        self.g = g
        self.vertex = dict(vertex)    # v -> Homotopy
        self.arrows = dict(arrows)    # u -> Morphism dom(u) -> P^2(B_dst)
        self.name = name


def validate_ho_homotopy(h: HoHomotopy, upto=None) -> ValidationReport:
    rep = ValidationReport(subject=f"ho-homotopy {h.name}")
    f, g = h.f, h.g
    upto_eff = min(f.source.check_upto(), f.target.check_upto()) if upto is None else upto
    from .paths import verify_homotopy
    for v in f.source.index.vertices:
        sub = verify_homotopy(h.vertex[v], f.maps[v], g.maps[v], upto=upto_eff)
        for fl in sub.failures:
            rep.add("vertex-" + fl["check"], f"vertex {v}: {fl['witness']}")
    for u in f.source.phi:
        a = f.source.arrow(u)
        PB = f.path_target(u)
        kB = keyed(PB)
        P2 = path_of(PB, kB.budget)
        k2 = keyed(P2)
        H_u = h.arrows[u]
        Pd0 = path_linear_map(delta(PB, 0), P2, PB)
        Pd1 = path_linear_map(delta(PB, 1), P2, PB)
        F_u = f.homotopies[u]
        G_u = g.homotopies[u]
        hj = h.vertex[a.dst]
        hi = h.vertex[a.src]
        Pphi = path_linear_map(f.target.comp(u),
                               path_of(f.target.algebras[a.src], kB.budget,
                                       W_SHIFT[f.target.tags[a.src]]), PB)
        dom = f.source.algebras[a.src]
        for n in range(0, upto_eff + 1):
            for b in dom.basis(n):
                x = f.source.to_dom(u)(b)
                Hx = H_u(x)
                if Pd0(Hx) != F_u(x):
                    rep.add("face-F", f"arrow {u}, degree {n}")
                    break
                if Pd1(Hx) != G_u(x):
                    rep.add("face-G", f"arrow {u}, degree {n}")
                    break
                if k2.evaluate(Hx, 0) != hj(f.source.comp(u)(b)):
                    rep.add("face-hj", f"arrow {u}, degree {n}")
                    break
                if k2.evaluate(Hx, 1) != Pphi(hi(b)):
                    rep.add("face-hi", f"arrow {u}, degree {n}")
                    break
    return rep


def vertex_constant_homotopy(f: HoMorphism, v) -> Homotopy:
    """Constant homotopy at f_v inside the tag-appropriate vertex path."""
    P = f.target.vertex_path(v)
    const = compose(iota(P), f.maps[v])
    return Homotopy(f.maps[v], f.maps[v],
                    Morphism(f.maps[v].source, P, const.fn, name=f"const_{v}"))


def reflexive_ho_homotopy(f: HoMorphism) -> HoHomotopy:
    """The constant homotopy from f to itself (square filler P(iota) F_u)."""
    vertex = {v: vertex_constant_homotopy(f, v)
              for v in f.source.index.vertices}
    arrows = {}
    for u in f.source.phi:
        PB = f.path_target(u)
        kB = keyed(PB)
        P2 = path_of(PB, kB.budget)
        F_u = f.homotopies[u]
        Pi = path_linear_map(iota(PB), PB, P2)
        arrows[u] = Morphism(F_u.source, P2, lambda x, F_u=F_u, Pi=Pi: Pi(F_u(x)),
                             name=f"refl@{u}")
    return HoHomotopy(f, f, vertex, arrows, name=f"refl({f.name})")


def build_ho_homotopy(f: HoMorphism, g: HoMorphism, vertex_homotopies: dict,
                      name="") -> HoHomotopy:
    """Fill the arrow squares of a homotopy from f to g with given vertex data.

    Requires free (Sullivan) comparison domains; each filler is one exact lift
    against the four-face boundary map.
    """
    arrows = {}
    for u in f.source.phi:
        a = f.source.arrow(u)
        PB = f.path_target(u)
        kB = keyed(PB)
        dom = f.source.dom(u)
        if not isinstance(dom, FreeCdga):
            raise AlgebraError("square filling needs free comparison domains")
        hj = vertex_homotopies[a.dst]
        hi = vertex_homotopies[a.src]
        Pphi = path_linear_map(f.target.comp(u),
                               path_of(f.target.algebras[a.src], kB.budget,
                                       W_SHIFT[f.target.tags[a.src]]), PB)
        to_dom = f.source.to_dom(u)
        # faces as morphisms out of dom(u); vertex data enters through phi
        phiC = f.source.phi[u]
        outer0 = Morphism(dom, PB, lambda x, hj=hj, phiC=phiC: hj(phiC(x)),
                          name="hj.phi")
        outer1 = Morphism(dom, PB, lambda x, hi=hi, Pphi=Pphi: Pphi(hi(x)),
                          name="P(phi).hi")
        arrows[u] = fill_square(dom, PB, f.homotopies[u], g.homotopies[u],
                                outer0, outer1)
    return HoHomotopy(f, g, vertex_homotopies, arrows, name=name)


def ho_homotopy_add(h1: HoHomotopy, h2: HoHomotopy, name="") -> HoHomotopy:
    """Transitive composition of homotopies of ho-morphisms (free sources).

    The caller guarantees that h1 ends where h2 starts (shared middle
    representative); vertex homotopies are added and the arrow squares are
    refilled against the new boundary."""
    vertex = {v: homotopy_add(h1.vertex[v], h2.vertex[v])
              for v in h1.f.source.index.vertices}
    return build_ho_homotopy(h1.f, h2.g, vertex, name=name or "h +~ h'")


# ---------------------------------------------------------------------------
# the mapping path of a ho-morphism and rectification
# ---------------------------------------------------------------------------

class HoMappingPath:
    """Vertexwise mapping paths with comparisons psi_u = (phi_u, F_u) pi_1."""

    def __init__(self, f: HoMorphism):
        if not f.source.same_field() or not f.target.same_field():
            raise AlgebraError("rectification needs one common scalar field")
        self.f = f
        src, tgt = f.source, f.target
        budget = tgt.budget
        self.mps = {}
        for v in src.index.vertices:
            self.mps[v] = MappingPath(f.maps[v], budget=budget,
                                      w_shift=W_SHIFT[tgt.tags[v]],
                                      q_endpoint=src.index.degree(v))
        arrows = {}
        for u in src.phi:
            a = src.arrow(u)
            mp_i, mp_j = self.mps[a.src], self.mps[a.dst]
            phi_u = src.comp(u)
            F_u = f.homotopies[u]

            def psi(x, mp_i=mp_i, mp_j=mp_j, phi_u=phi_u, F_u=F_u):
                av = mp_i.component_a(x)
                return mp_j.pair(phi_u(av), F_u(av))

            arrows[u] = Morphism(mp_i.space, mp_j.space, psi, name=f"psi_{u}")
        self.diagram = Diagram(src.index, {v: self.mps[v].space for v in src.index.vertices},
                               tags=src.tags, arrows=arrows, budget=budget,
                               name=f"MappingPath({f.name})")
        self.p = DiagramMorphism(self.diagram, src,
                                 {v: self.mps[v].p for v in src.index.vertices}, name="p")
        self.q = DiagramMorphism(self.diagram, tgt,
                                 {v: self.mps[v].q for v in src.index.vertices}, name="q")
        iotas = {v: self.mps[v].iota for v in src.index.vertices}
        J = {}
        for u in src.phi:
            a = src.arrow(u)
            mp_j = self.mps[a.dst]
            PA_j = path_of(src.algebras[a.dst], budget, W_SHIFT[src.tags[a.dst]])
            PS = path_of(mp_j.space, budget)
            Pamb = path_of(mp_j.amb, budget)
            phi_u = src.comp(u)
            F_u = f.homotopies[u]
            cB = coproduct(mp_j.PB)
            iA = iota(PA_j)

            def J_u(x, phi_u=phi_u, F_u=F_u, cB=cB, iA=iA, Pamb=Pamb):
                return pair_paths(Pamb, [iA(phi_u(x)), cB(F_u(x))], depth=1)

            J[u] = Morphism(src.dom(u), PS, J_u, name=f"J_{u}")
        self.iota = HoMorphism(src, self.diagram, iotas, J, name="iota")

    def contraction(self) -> HoHomotopy:
        """Homotopy from iota p to the identity, with three-level square fillers."""
        f = self.f
        src = f.source
        budget = self.diagram.budget
        vertex = {v: self.mps[v].contraction() for v in src.index.vertices}
        iota_p = compose_with_strict_left(self.iota, self.p)
        identity = promote_strict(
            DiagramMorphism(self.diagram, self.diagram,
                            {v: identity_morphism(self.mps[v].space)
                             for v in src.index.vertices}, name="1"), name="1")
        arrows = {}
        for u in src.phi:
            a = src.arrow(u)
            mp_i, mp_j = self.mps[a.src], self.mps[a.dst]
            PA_j = path_of(src.algebras[a.dst], budget, W_SHIFT[src.tags[a.dst]])
            P2A_j = path_of(PA_j, budget)
            PS = path_of(mp_j.space, budget)
            P2S = path_of(PS, budget)
            P2amb = path_of(path_of(mp_j.amb, budget), budget)
            phi_u = src.comp(u)
            F_u = f.homotopies[u]
            chB = c_hat(mp_j.PB)
            ii = compose(path_linear_map(iota(PA_j), PA_j, P2A_j), iota(PA_j))

            def H_u(x, mp_i=mp_i, phi_u=phi_u, F_u=F_u, chB=chB, ii=ii, P2amb=P2amb):
                av = mp_i.component_a(x)
                return pair_paths(P2amb, [ii(phi_u(av)), chB(F_u(av))], depth=2)

            arrows[u] = Morphism(mp_i.space, P2S, H_u, name=f"H_{u}")
        return HoHomotopy(iota_p, identity, vertex, arrows, name="contraction")


def ho_mapping_path(f: HoMorphism) -> HoMappingPath:
    return HoMappingPath(f)


@dataclass
class RectifiedSpan:
    """The span of strict morphisms p, q representing a ho-morphism's class."""
    mp: HoMappingPath
    p: DiagramMorphism
    q: DiagramMorphism
    iota: HoMorphism


def rectify(f: HoMorphism) -> RectifiedSpan:
    mp = ho_mapping_path(f)
    return RectifiedSpan(mp=mp, p=mp.p, q=mp.q, iota=mp.iota)


# ---------------------------------------------------------------------------
# composition of ho-morphisms
# ---------------------------------------------------------------------------

def compose_with_strict_left(f: HoMorphism, g: DiagramMorphism, name="") -> HoMorphism:
    """f g for a strict g into f's source (exact, no lifts)."""
    maps = {v: compose(f.maps[v], g.maps[v]) for v in f.source.index.vertices}
    homotopies = {}
    for u in f.source.phi:
        F_u = f.homotopies[u]
        g_dom = g.dom_map(u)
        homotopies[u] = Morphism(g.source.dom(u), F_u.target,
                                 lambda x, F_u=F_u, g_dom=g_dom: F_u(g_dom(x)),
                                 name=f"{F_u.name}.g")
    return HoMorphism(g.source, f.target, maps, homotopies, name=name or "f g")


def compose_with_strict_right(g: DiagramMorphism, f: HoMorphism, name="") -> HoMorphism:
    """g f for a strict g out of f's target (exact, no lifts)."""
    maps = {v: compose(g.maps[v], f.maps[v]) for v in f.source.index.vertices}
    homotopies = {}
    for u in f.source.phi:
        a = f.source.arrow(u)
        PB = f.path_target(u)
        PC = g.target.vertex_path(a.dst)
        Pg = path_linear_map(g.maps[a.dst], PB, PC)
        F_u = f.homotopies[u]
        homotopies[u] = Morphism(F_u.source, PC,
                                 lambda x, F_u=F_u, Pg=Pg: Pg(F_u(x)),
                                 name=f"P(g).{F_u.name}")
    return HoMorphism(f.source, g.target, maps, homotopies, name=name or "g f")


def compose_ho(g: HoMorphism, f: HoMorphism, name="") -> HoMorphism:
    """Representative of [g][f]: vertexwise g f, arrows P(g)F +~ G f.

    Needs level-wise free (Sullivan) comparison domains on f's source; the
    class of the result does not depend on the lift choices.
    """
    src = f.source
    maps = {v: compose(g.maps[v], f.maps[v]) for v in src.index.vertices}
    homotopies = {}
    for u in src.phi:
        a = src.arrow(u)
        dom = src.dom(u)
        if not isinstance(dom, FreeCdga):
            raise AlgebraError("ho-composition needs free comparison domains")
        PB = f.path_target(u)
        PC = g.path_target(u)
        Pg = path_linear_map(g.maps[a.dst], PB, PC)
        F_u = f.homotopies[u]
        G_u = g.homotopies[u]
        f_dom = DiagramMorphism(f.source, f.target, f.maps).dom_map(u)
        # endpoints for bookkeeping
        gj_fj_phi = compose(maps[a.dst], src.comp(u))
        gj_phi_fi = compose(compose(g.maps[a.dst], f.target.comp(u)), f.maps[a.src])
        phi_gi_fi = compose(g.target.comp(u), maps[a.src])
        h1 = Homotopy(gj_fj_phi, gj_phi_fi,
                      Morphism(dom, PC, lambda x, F_u=F_u, Pg=Pg: Pg(F_u(x)),
                               name="P(g)F"))
        h2 = Homotopy(gj_phi_fi, phi_gi_fi,
                      Morphism(dom, PC, lambda x, G_u=G_u, f_dom=f_dom: G_u(f_dom(x)),
                               name="G f"))
        homotopies[u] = homotopy_add(h1, h2).map
    return HoMorphism(src, g.target, maps, homotopies, name=name or "g * f")


def identity_ho(D: Diagram) -> HoMorphism:
    return promote_strict(
        DiagramMorphism(D, D, {v: identity_morphism(D.algebras[v])
                               for v in D.index.vertices}, name="1"), name="1")


# ---------------------------------------------------------------------------
# zig-zag evaluation
# ---------------------------------------------------------------------------

def evaluate_zigzag(source: Diagram, items, name="") -> HoMorphism:
    """Evaluate a zig-zag of strict morphisms and inverted ho-equivalences.

    items: sequence of ("fwd", DiagramMorphism | HoMorphism) and
    ("bwd", DiagramMorphism g, HoMorphism h) where h is a designated homotopy
    inverse of g.  Compositions with a strict side are exact; only genuine
    ho-by-ho composition spends a lift.
    """
    current_strict = DiagramMorphism(source, source,
                                     {v: identity_morphism(source.algebras[v])
                                      for v in source.index.vertices}, name="1")
    current = None  # HoMorphism once strictness is lost

    def as_ho():
        return promote_strict(current_strict) if current is None else current

    for item in items:
        kind = item[0]
        if kind == "fwd":
            gmap = item[1]
            if isinstance(gmap, DiagramMorphism):
                if current is None:
                    current_strict = DiagramMorphism(
                        source, gmap.target,
                        {v: compose(gmap.maps[v], current_strict.maps[v])
                         for v in source.index.vertices}, name="composite")
                else:
                    current = compose_with_strict_right(gmap, current)
            else:
                if current is None:
                    current = compose_with_strict_left(gmap, current_strict)
                else:
                    current = compose_ho(gmap, current)
        elif kind == "bwd":
            g, inverse = item[1], item[2]
            if inverse is None:
                raise AlgebraError("backward arrow without a designated inverse")
            if current is None:
                current = compose_with_strict_left(inverse, current_strict)
            else:
                current = compose_ho(inverse, current)
        else:
            raise AlgebraError(f"unknown zig-zag item {kind!r}")
    out = as_ho()
    out.name = name or "zigzag"
    return out


def span_zigzag(span: RectifiedSpan):
    """The zig-zag q . p^{-1} of a rectified span, with iota as p's inverse."""
    return [("bwd", span.p, span.iota), ("fwd", span.q)]


def ho_morphisms_equal(f: HoMorphism, g: HoMorphism, upto=None) -> bool:
    """Exact equality of vertex maps and arrow homotopies on bases."""
    upto = min(f.source.check_upto(), f.target.check_upto()) if upto is None else upto
    for v in f.source.index.vertices:
        A = f.source.algebras[v]
        for n in range(0, upto + 1):
            for b in A.basis(n):
                if f.maps[v](b) != g.maps[v](b):
                    return False
    for u in f.source.phi:
        dom = f.source.dom(u)
        for n in range(0, upto + 1):
            for b in dom.basis(n):
                if f.homotopies[u](b) != g.homotopies[u](b):
                    return False
    return True


# ---------------------------------------------------------------------------
# lifting of ho-morphisms and cofibrant models of diagrams
# ---------------------------------------------------------------------------

def lift_ho_through_trivial_fibration(C: Diagram, w: DiagramMorphism,
                                      f: HoMorphism) -> HoMorphism:
    """g: C -> w.source with w g = f exactly (levels and homotopies).

    C must have free vertex algebras; w a level-wise trivial fibration.
    Obstructions are reported with their vertex or arrow.
    """
    if f.source is not C:
        raise AlgebraError("f must start at C")
    gmaps = {}
    for v in C.index.vertices:
        Cv = C.algebras[v]
        if not isinstance(Cv, FreeCdga):
            raise AlgebraError(f"vertex {v}: cofibrant lifting needs a free algebra")
        try:
            gmaps[v] = free_lift(Cv, w.maps[v], f.maps[v], name=f"g_{v}")
        except LiftObstruction as e:
            raise LiftObstruction(f"{v}/{e.generator}", e.degree, e.reason)
    homotopies = {}
    for u in C.phi:
        a = C.arrow(u)
        dom = C.dom(u)
        A_j = w.source.algebras[a.dst]
        budget = keyed(f.path_target(u)).budget
        f0 = compose(gmaps[a.dst], C.comp(u))
        g_dom = DiagramMorphism(C, w.source, gmaps).dom_map(u)
        f1 = compose(w.source.comp(u), gmaps[a.src])
        h = Homotopy(compose(w.maps[a.dst], f0), compose(w.maps[a.dst], f1),
                     f.homotopies[u])
        try:
            lifted = lift_homotopy(dom, w.maps[a.dst], f0, f1, h)
        except LiftObstruction as e:
            raise LiftObstruction(f"{u}/{e.generator}", e.degree, e.reason)
        homotopies[u] = lifted.map
    return HoMorphism(C, w.source, gmaps, homotopies, name=f"lift({f.name})")


def diagram_cofibrant_model(D: Diagram, N=None, budget=None,
                            allow_0_connected=False):
    """Level-wise minimal models with comparisons lifted up to homotopy.

    Returns (C, f) where C is a diagram of minimal algebras and f: C -> D is a
    ho-morphism, a level-wise quasi-isomorphism up to the horizon.
    """
    if any(t != "plain" for t in D.tags.values()):
        raise AlgebraError("cofibrant models are built for plain vertices")
    models = {v: minimal_model(D.algebras[v], N,
                               allow_0_connected=allow_0_connected)
              for v in D.index.vertices}
    budget = budget if budget is not None else (D.budget or 8)
    arrows = {}
    homotopies = {}
    for u in D.phi:
        a = D.arrow(u)
        mi, mj = models[a.src], models[a.dst]
        target_map = compose(D.comp(u), mi.rho)
        phi_prime, hom = lift_against_weak_equivalence(mi.M, mj.rho, target_map,
                                                       budget=budget)
        arrows[u] = phi_prime
        homotopies[u] = hom.map
    C = Diagram(D.index, {v: models[v].M for v in D.index.vertices},
                tags=D.tags, arrows=arrows, budget=budget,
                name=f"model({D.name})")
    f = HoMorphism(C, D, {v: models[v].rho for v in D.index.vertices},
                   homotopies, name="rho")
    f.models = models
    return C, f
