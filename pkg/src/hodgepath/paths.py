"""Polynomial path objects P(A) = A[t,dt] and their structural maps.

Elements of P(A) are sums a*t^i and a*t^i*dt with a in the base algebra; the
key of such a term is (base_key, (i, e)) with e in {0,1} the dt-exponent.
Bases are truncated at a configurable t-weight budget (i + e <= budget).  The
differential preserves the t-weight, so the truncation is a direct-summand
subcomplex and cohomology through the budget is exact, with no phantom
top-degree classes.

Structural maps are substitutions:

    evaluation     t -> k            (k = 0, 1)
    symmetry       t -> 1 - t
    coproduct      t -> t*s
    second coproduct t -> t + s - t*s   (coproduct with endpoints swapped)
    interchange    t <-> s
    folding        s -> t

The composite of the coproduct with the second coproduct of the once-pathed
algebra is the three-level transformation dual to (t,s,l) -> t(s + l - s*l),
used for the contraction of mapping paths of diagrams.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import (AlgebraError, Element, GradedAlgebra, LinearMap, Morphism,
                      ProductCdga, SubCdga, compose, solve_preimage)
from .scalars import Scalar

DEFAULT_BUDGET = 32

_NEXT_VAR = {"t": "s", "s": "l", "l": "t4"}


class BudgetError(AlgebraError):
    """A path computation needed a higher polynomial degree than the budget."""


class PathAlgebra(GradedAlgebra):
    """A[t,dt] over a keyed base algebra A."""

    def __init__(self, base: GradedAlgebra, budget: int, w_shift: int = 0):
        self.base = base
        self.budget = int(budget)
        if self.budget < 1:
            raise AlgebraError("path budget must be >= 1")
        self.w_shift = w_shift
        self.field = base.field
        self.N = base.N
        self.var = _NEXT_VAR.get(getattr(base, "var", None), "t") \
            if isinstance(base, PathAlgebra) else "t"
        shift = f", w-{w_shift}" if w_shift else ""
        self.name = f"P({base!r}{shift})"

    # ----- key protocol: key = (base_key, (i, e))

    def key_degree(self, k):
        return self.base.key_degree(k[0]) + k[1][1]

    def unit_terms(self):
        return {(bk, (0, 0)): c for bk, c in self.base.unit_terms().items()}

    def key_sort(self, k):
        i, e = k[1]
        return (i + e, e, self.base.key_sort(k[0]))

    def key_str(self, k):
        bk, (i, e) = k
        bits = [] if self.base.key_str(bk) == "1" else [self.base.key_str(bk)]
        if i:
            bits.append(self.var + (f"^{i}" if i > 1 else ""))
        if e:
            bits.append("d" + self.var)
        return "*".join(bits) or "1"

    def mul_keys(self, k1, k2):
        (b1, (i1, e1)), (b2, (i2, e2)) = k1, k2
        if e1 and e2:
            return {}
        if i1 + i2 + e1 + e2 > self.budget:
            raise BudgetError(
                f"product exceeds the t-budget {self.budget} of {self.name}")
        prod = self.base.mul_keys(b1, b2)
        if not prod:
            return {}
        sign = 1
        if e1 and self.base.key_degree(b2) % 2:
            sign = -1
        out = {}
        for bk, c in prod.items():
            out[(bk, (i1 + i2, e1 + e2))] = c * sign if sign < 0 else c
        return out

    def d_key(self, k):
        bk, (i, e) = k
        out = {(dk, (i, e)): c for dk, c in self.base.d_key(bk).items()}
        if e == 0 and i >= 1:
            sign = -1 if self.base.key_degree(bk) % 2 else 1
            c = self.field.scalar(sign * i)
            prev = out.get((bk, (i - 1, 1)))
            out[(bk, (i - 1, 1))] = c if prev is None else prev + c
        return {kk: c for kk, c in out.items() if not c.is_zero}

    def basis_keys(self, n):
        keys = []
        for i in range(0, self.budget + 1):
            keys.extend((bk, (i, 0)) for bk in self.base.basis_keys(n))
        for i in range(0, self.budget):
            keys.extend((bk, (i, 1)) for bk in self.base.basis_keys(n - 1))
        keys.sort(key=self.key_sort)
        return keys

    def key_weight(self, k):
        w = self.base.key_weight(k[0])
        if w is None:
            return None
        return w - self.w_shift * k[1][1]

    def key_hodge(self, k):
        return self.base.key_hodge(k[0])

    def key_block(self, k):
        return (k[1][0] + k[1][1], self.base.key_block(k[0]))

    @property
    def has_weights(self):
        return self.base.has_weights

    @property
    def has_hodge(self):
        return self.base.has_hodge

    def key_t_weight(self, k):
        """Total polynomial weight across all path levels of a nested key."""
        bk, (i, e) = k
        inner = self.base.key_t_weight(bk) if isinstance(self.base, PathAlgebra) else 0
        return inner + i + e

    def random_element(self, n, rng, density=0.6, strict=True):
        """Random element supported on total t-weight <= budget // 2.

        Sampling the full budget would make random products overflow by
        construction; the safe half keeps all structural-map identities
        exercisable on random inputs.
        """
        cap = max(1, self.budget // 2)
        terms = {}
        from fractions import Fraction
        for k in self.basis_keys(n) if n >= 0 else []:
            if self.key_t_weight(k) > cap:
                continue
            if rng.random() < density:
                c = self.field.scalar(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
                if not c.is_zero:
                    terms[k] = c
        return Element(self, terms)

    # ----- convenience elements

    def t(self) -> Element:
        return Element(self, {(bk, (1, 0)): c for bk, c in self.base.unit_terms().items()})

    def dt(self) -> Element:
        return Element(self, {(bk, (0, 1)): c for bk, c in self.base.unit_terms().items()})

    def include(self, x: Element) -> Element:
        if x.alg is not self.base:
            raise AlgebraError("include: element not in the base algebra")
        return Element(self, {(bk, (0, 0)): c for bk, c in x.terms.items()})

    def coefficients(self, x: Element) -> dict:
        """x, grouped as {(i, e): base element}."""
        out = {}
        for (bk, ie), c in x.terms.items():
            out.setdefault(ie, {})[bk] = c
        return {ie: Element(self.base, t) for ie, t in sorted(out.items())}

    def evaluate(self, x: Element, k: int) -> Element:
        """Endpoint evaluation t -> k (k = 0,1); kills dt."""
        terms = {}
        for (bk, (i, e)), c in x.terms.items():
            if e or (k == 0 and i > 0):
                continue
            prev = terms.get(bk)
            terms[bk] = c if prev is None else prev + c
        return Element(self.base, terms)

    def parse(self, text: str) -> Element:
        def resolve(nm):
            if nm == self.var:
                return self.t()
            if nm == "d" + self.var:
                return self.dt()
            try:
                inner = self.base.parse(nm)
            except Exception:
                return None
            return self.include(inner)
        from .exprs import parse_expression
        return parse_expression(text, resolve, self.unit())


# ---------------------------------------------------------------------------
# path objects over arbitrary spaces (subalgebras included)
# ---------------------------------------------------------------------------

def path_of(X, budget: int | None = None, w_shift: int = 0):
    """The path object of X; cached per (budget, w_shift) on X.

    For a keyed algebra this is a PathAlgebra.  For a subalgebra S of M cut by
    linear constraints, P(S) is the subalgebra of P(M) cut by the
    coefficientwise constraints — the path functor commutes with these fibre
    products, which is what makes iterated paths of mapping paths work.
    """
    if isinstance(X, SubCdga):
        PM = path_of(X.ambient, budget, w_shift)
        key = ("path", PM.budget, w_shift)
        cache = X._path_cache or {}
        if key not in cache:
            lifted = []
            for c in X.constraints:
                PT = path_of(c.target, PM.budget, w_shift=0)
                lifted.append(path_linear_map(c, PM, PT))
            S = SubCdga(PM, lifted, name=f"P({X.name})")
            S.over = X
            cache[key] = S
            X._path_cache = cache
        return cache[key]
    budget = DEFAULT_BUDGET if budget is None else budget
    if isinstance(X, PathAlgebra) and budget != X.budget:
        budget = X.budget  # nested paths share the innermost budget
    key = ("path", budget, w_shift)
    cache = X._path_cache or {}
    if key not in cache:
        P = PathAlgebra(X, budget, w_shift)
        P.over = X
        cache[key] = P
        X._path_cache = cache
    return cache[key]


def keyed(P):
    """The underlying keyed path algebra of a path object."""
    if isinstance(P, PathAlgebra):
        return P
    if isinstance(P, SubCdga) and isinstance(P.ambient, PathAlgebra):
        return P.ambient
    raise AlgebraError(f"{P!r} is not a path object")


def path_linear_map(f: LinearMap, PS, PT) -> LinearMap:
    """P(f): apply f to path coefficients (t stays t)."""
    kS, kT = keyed(PS), keyed(PT)

    def fn(x: Element) -> Element:
        out = {}
        for ie, coeff in kS.coefficients(x).items():
            img = f(coeff)
            for bk, c in img.terms.items():
                kk = (bk, ie)
                prev = out.get(kk)
                out[kk] = c if prev is None else prev + c
        return Element(kT, out)

    cls = Morphism if isinstance(f, Morphism) else LinearMap
    return cls(PS, PT, fn, name=f"P({f.name or 'f'})")


def iota(P) -> Morphism:
    """Constant-path inclusion A -> P(A)."""
    k = keyed(P)
    base = getattr(P, "over", k.base)
    return Morphism(base, P, lambda x: k.include(x), name="iota")


def delta(P, endpoint: int) -> Morphism:
    """Endpoint evaluation P(A) -> A at t = 0 or 1."""
    k = keyed(P)
    base = getattr(P, "over", k.base)
    return Morphism(P, base, lambda x: k.evaluate(x, endpoint), name=f"delta^{endpoint}")


def _substitution(P, target, im_t: Element, im_dt: Element, coeff_map, name):
    """Algebra map out of P determined by coefficients and the image of t."""
    kP = keyed(P)
    powers = {0: (target.unit() if hasattr(target, "unit") else target.ambient.unit())}

    def t_power(i):
        if i not in powers:
            powers[i] = t_power(i - 1) * im_t
        return powers[i]

    def fn(x: Element) -> Element:
        out = None
        for ie, coeff in kP.coefficients(x).items():
            i, e = ie
            term = coeff_map(coeff) * t_power(i)
            if e:
                term = term * im_dt
            out = term if out is None else out + term
        if out is None:
            amb = target.ambient if isinstance(target, SubCdga) else target
            return amb.zero()
        return out

    return Morphism(P, target, fn, name=name)


def symmetry(P) -> Morphism:
    """t -> 1 - t (hence dt -> -dt)."""
    k = keyed(P)
    im_t = k.unit() - k.t()
    im_dt = -k.dt()
    return _substitution(P, P, im_t, im_dt, lambda c: k.include(c), "symmetry")


def coproduct(P) -> Morphism:
    """c: P(A) -> P^2(A), t -> t*s."""
    k = keyed(P)
    P2 = path_of(P)
    k2 = keyed(P2)
    t_in = k2.include(k.t())
    s_out = k2.t()
    im_t = t_in * s_out
    im_dt = k2.include(k.dt()) * s_out + t_in * k2.dt()

    def cmap(c):
        return k2.include(k.include(c))

    return _substitution(P, P2, im_t, im_dt, cmap, "coproduct")


def coproduct_prime(P) -> Morphism:
    """c': P(A) -> P^2(A), t -> t + s - t*s (coproduct with endpoints swapped)."""
    k = keyed(P)
    P2 = path_of(P)
    k2 = keyed(P2)
    t_in = k2.include(k.t())
    s_out = k2.t()
    im_t = t_in + s_out - t_in * s_out
    one = k2.unit()
    im_dt = (one - s_out) * k2.include(k.dt()) + (one - t_in) * k2.dt()

    def cmap(c):
        return k2.include(k.include(c))

    return _substitution(P, P2, im_t, im_dt, cmap, "coproduct'")


def interchange(P2) -> Morphism:
    """mu: P^2(A) -> P^2(A) swapping the two path levels."""
    k2 = keyed(P2)
    if not isinstance(k2.base, PathAlgebra):
        raise AlgebraError("interchange needs a double path")

    def fn(x: Element) -> Element:
        out = {}
        for ((bk, (i1, e1)), (i2, e2)), c in x.terms.items():
            if e1 and e2:
                c = -c
            kk = ((bk, (i2, e2)), (i1, e1))
            prev = out.get(kk)
            out[kk] = c if prev is None else prev + c
        return Element(k2, out)

    return Morphism(P2, P2, fn, name="interchange")


def folding(P2) -> Morphism:
    """nabla: P^2(A) -> P(A), s -> t."""
    k2 = keyed(P2)
    P = k2.base
    if not isinstance(P, PathAlgebra):
        raise AlgebraError("folding needs a double path")
    return _substitution(P2, P, P.t(), P.dt(), lambda c: c, "folding")


def c_hat(P) -> Morphism:
    """The three-level coproduct P -> P^3 (contraction of iterated paths)."""
    P2 = path_of(P)
    return compose(coproduct_prime(P2), coproduct(P), name="c_hat")


def structural_map(kind: str, x: Element) -> Element:
    """Apply a named path transformation to an element.

    symmetry / coproduct / c_hat act on elements of P(A); interchange and
    folding act on elements of P^2(A).  The ambient power of the path is
    checked against the requested kind.
    """
    P = x.alg
    if not isinstance(P, PathAlgebra):
        raise AlgebraError(f"{kind}: element does not live in a path algebra")
    if kind in ("interchange", "folding"):
        if not isinstance(P.base, PathAlgebra):
            raise AlgebraError(f"{kind} needs an element of a double path")
        return (interchange if kind == "interchange" else folding)(P)(x)
    if kind == "symmetry":
        return symmetry(P)(x)
    if kind == "coproduct":
        return coproduct(P)(x)
    if kind == "c_hat":
        return c_hat(P)(x)
    raise AlgebraError(f"unknown structural map {kind!r}")


def integrate(x: Element) -> Element:
    """Degree -1 integration P(B) -> B: a*t^i |-> 0, a*t^i*dt |-> (-1)^|a| a/(i+1)."""
    k = x.alg
    if not isinstance(k, PathAlgebra):
        raise AlgebraError("integrate expects an element of a path algebra")
    out = {}
    for (bk, (i, e)), c in x.terms.items():
        if not e:
            continue
        sign = -1 if k.base.key_degree(bk) % 2 else 1
        coeff = c * Fraction(sign, i + 1)
        prev = out.get(bk)
        out[bk] = coeff if prev is None else prev + coeff
    return Element(k.base, out)


def integrate_map(P) -> LinearMap:
    k = keyed(P)
    base = getattr(P, "over", k.base)
    return LinearMap(P, base, lambda x: integrate(x if x.alg is k else x), name="int01")


# ---------------------------------------------------------------------------
# pairing P(X x Y) = P(X) x P(Y), at any path depth
# ---------------------------------------------------------------------------

def _retag(key, slot, depth):
    if depth == 0:
        return (slot, key)
    inner, ie = key
    return (_retag(inner, slot, depth - 1), ie)


def _untag(key, depth):
    if depth == 0:
        return key[0], key[1]
    inner, ie = key
    slot, stripped = _untag(inner, depth - 1)
    return slot, (stripped, ie)


def pair_paths(P_prod, parts, depth: int = 1) -> Element:
    """Assemble elements of P^depth(X_j) into one element of P^depth(prod X_j)."""
    kp = keyed(P_prod)
    out = {}
    for slot, x in enumerate(parts):
        for k, c in x.terms.items():
            kk = _retag(k, slot, depth)
            prev = out.get(kk)
            out[kk] = c if prev is None else prev + c
    return Element(kp, out)


def path_component(P_prod, x: Element, slot: int, component_path, depth: int = 1) -> Element:
    """Inverse of pair_paths for one slot."""
    kc = keyed(component_path)
    out = {}
    for k, c in x.terms.items():
        s, stripped = _untag(k, depth)
        if s == slot:
            out[stripped] = c
    return Element(kc, out)


# ---------------------------------------------------------------------------
# homotopies
# ---------------------------------------------------------------------------

class Homotopy:
    """h: A -> P(B) with endpoints delta^0 h = f and delta^1 h = g."""

    def __init__(self, f: Morphism, g: Morphism, map: Morphism):
        self.f = f
        self.g = g
        self.map = map

    @property
    def source(self):
        return self.map.source

    @property
    def path(self):
        return self.map.target

    def __call__(self, x):
        return self.map(x)

    def reversed(self) -> "Homotopy":
        return Homotopy(self.g, self.f, compose(symmetry(self.path), self.map))


def constant_homotopy(f: Morphism, budget=None) -> Homotopy:
    P = path_of(f.target, budget)
    return Homotopy(f, f, compose(iota(P), f, name=f"const({f.name})"))


def verify_homotopy(h, f: Morphism, g: Morphism, upto=None, d_check=True):
    """Exact endpoint and chain checks of a homotopy candidate on bases.

    Returns a ValidationReport-style dict list (empty = verified).
    """
    from .ops import ValidationReport
    hm = h.map if isinstance(h, Homotopy) else h
    rep = ValidationReport(subject=f"homotopy {hm.name or ''}".strip())
    P = hm.target
    k = keyed(P)
    d0, d1 = delta(P, 0), delta(P, 1)
    top = min(hm.source.N, f.target.N) if upto is None else upto
    top = min(top, hm.source.N)
    for n in range(0, top + 1):
        for b in hm.source.basis(n):
            hx = hm(b)
            e0, e1 = k.evaluate(hx, 0), k.evaluate(hx, 1)
            if e0 != f(b):
                rep.add("endpoint-0", f"degree {n}: {b!r}")
            if e1 != g(b):
                rep.add("endpoint-1", f"degree {n}: {b!r}")
            if d_check and n <= top - 1:
                if hm(b.d()) != hx.d():
                    rep.add("chain-map", f"degree {n}: {b!r}")
    return rep


def stokes_defect(h, upto=None):
    """Witnesses of d(int h) + int(d h) != g - f; empty when the identity holds."""
    hm = h.map
    f, g = h.f, h.g
    out = []
    top = min(hm.source.N - 1, f.target.N - 1) if upto is None else upto
    for n in range(0, top + 1):
        for b in hm.source.basis(n):
            k = integrate(hm(b))
            kd = integrate(hm(b.d()))
            lhs = k.d() + kd
            rhs = g(b) - f(b)
            if lhs != rhs:
                out.append({"degree": n, "witness": repr(b)})
    return out


# ---------------------------------------------------------------------------
# mapping paths, double paths, the surjection lift
# ---------------------------------------------------------------------------

def product_space(spaces, name=""):
    """Product of spaces, flattening subalgebra factors into their ambients.

    Returns (amb, constraints, inject, project): the keyed ambient product,
    the factor constraints pushed through the projections, and slotwise
    injection/projection working directly with each factor's elements.
    """
    factors = []
    carried = []
    for i, X in enumerate(spaces):
        if isinstance(X, SubCdga):
            factors.append(X.ambient)
            carried.append((i, X.constraints))
        else:
            factors.append(X)
    amb = ProductCdga(factors, name=name)

    def inject(i, x):
        return amb.inject(i, x)

    def project(i, x):
        return amb.project(i, x)

    constraints = []
    for i, cons in carried:
        for c in cons:
            constraints.append(LinearMap(
                amb, c.target, lambda x, c=c, i=i: c(amb.project(i, x)),
                name=f"[{i}]{c.name}"))
    return amb, constraints, inject, project


class MappingPath:
    """P(f) = {(a, b(t)) : f(a) = b(0)} with projections p, q and section iota.

    q evaluates the path at the chosen endpoint (1 by default; diagrams
    alternate endpoints by vertex degree).
    """

    def __init__(self, f: Morphism, budget=None, w_shift: int = 0,
                 q_endpoint: int = 1, path_object=None):
        A, B = f.source, f.target
        self.f = f
        PB = path_object if path_object is not None else path_of(B, budget, w_shift)
        kB = keyed(PB)
        self.PB = PB
        amb, cons, inj, proj = product_space([A, kB], name=f"{A!r} x {kB!r}")
        self.amb = amb
        self._inj, self._proj = inj, proj

        def gap(x):
            return f(proj(0, x)) - kB.evaluate(proj(1, x), 0)

        self.space = SubCdga(amb, cons + [LinearMap(amb, B, gap, "b(0)=f(a)")],
                             name=f"MappingPath({f.name or 'f'})")
        self.space.over = self.space
        self.p = Morphism(self.space, A, lambda x: proj(0, x), name="p")
        self.q_endpoint = q_endpoint
        self.q = Morphism(self.space, B,
                          lambda x: kB.evaluate(proj(1, x), q_endpoint), name="q")
        self.iota = Morphism(A, self.space,
                             lambda a: inj(0, a) + inj(1, kB.include(f(a))),
                             name="iota")

    def pair(self, a: Element, bt: Element) -> Element:
        """Element (a, b(t)) of the ambient product; caller owns the constraint."""
        return self._inj(0, a) + self._inj(1, bt)

    def component_a(self, x: Element) -> Element:
        return self._proj(0, x)

    def component_path(self, x: Element) -> Element:
        return self._proj(1, x)

    def contraction(self) -> Homotopy:
        """h = (iota_A pi_1, c_B pi_2): a homotopy from iota p to the identity."""
        PS = path_of(self.space, keyed(self.PB).budget)
        PA = path_of(self.f.source, keyed(self.PB).budget)
        c_B = coproduct(self.PB)
        iota_A = iota(PA)
        Pamb = path_of(self.amb, keyed(self.PB).budget)

        def fn(x):
            a = self.component_a(x)
            bt = self.component_path(x)
            pa = iota_A(a)               # in P(A)
            pb = c_B(bt)                 # in P^2(B)
            return pair_paths(Pamb, [pa, pb], depth=1)

        hmap = Morphism(self.space, PS, fn, name="contraction")
        id_space = Morphism(self.space, self.space, lambda x: x, name="1")
        iota_p = compose(self.iota, self.p)
        return Homotopy(iota_p, id_space, hmap)


def mapping_path(f: Morphism, budget=None, w_shift: int = 0, q_endpoint: int = 1,
                 path_object=None) -> MappingPath:
    return MappingPath(f, budget=budget, w_shift=w_shift, q_endpoint=q_endpoint,
                       path_object=path_object)


class DoublePath:
    """P(v, v') = {(a0, a1, b(t)) : b(0) = v(a0), b(1) = v'(a1)}."""

    def __init__(self, v: Morphism, v2: Morphism, budget=None, w_shift: int = 0,
                 path_object=None):
        if v.target is not v2.target:
            raise AlgebraError("double path needs a shared target")
        A, A2, B = v.source, v2.source, v.target
        self.v, self.v2 = v, v2
        PB = path_object if path_object is not None else path_of(B, budget, w_shift)
        kB = keyed(PB)
        self.PB = PB
        amb, cons, inj, proj = product_space([A, A2, kB],
                                             name=f"{A!r} x {A2!r} x P({B!r})")
        self.amb = amb
        self._inj, self._proj = inj, proj
        c0 = LinearMap(amb, B, lambda x: kB.evaluate(proj(2, x), 0) - v(proj(0, x)),
                       "b(0)=v(a0)")
        c1 = LinearMap(amb, B, lambda x: kB.evaluate(proj(2, x), 1) - v2(proj(1, x)),
                       "b(1)=v'(a1)")
        self.space = SubCdga(amb, cons + [c0, c1],
                             name=f"DoublePath({v.name or 'v'})")
        self.space.over = self.space

    def embed(self, a0: Element, a1: Element, bt: Element) -> Element:
        return self._inj(0, a0) + self._inj(1, a1) + self._inj(2, bt)

    def parts(self, x: Element):
        return (self._proj(0, x), self._proj(1, x), self._proj(2, x))


def induced_to_double_path(v: Morphism, dp: DoublePath, PA) -> Morphism:
    """(delta^0, delta^1, P(v)): P(A) -> P(v, v)."""
    kA = keyed(PA)
    Pv = path_linear_map(v, PA, dp.PB)

    def fn(x):
        return dp.embed(kA.evaluate(x, 0), kA.evaluate(x, 1), Pv(x))

    return Morphism(PA, dp.space, fn, name="(d0,d1,P(v))")


def p5_lift(v: Morphism, a0: Element, a1: Element, bt: Element, budget=None) -> Element:
    """Explicit section of (delta^0, delta^1, P(v)) over a surjection v.

    Choose any coefficientwise preimage bt~ of b(t) and return
    (a0 - bt~(0))(1-t) + (a1 - bt~(1)) t + bt~(t).
    """
    A, B = v.source, v.target
    kB = bt.alg
    if not isinstance(kB, PathAlgebra) or kB.base is not B:
        raise AlgebraError("p5_lift: b(t) must live in P(target)")
    if kB.evaluate(bt, 0) != v(a0) or kB.evaluate(bt, 1) != v(a1):
        raise AlgebraError("p5_lift: endpoints of b(t) do not match v(a0), v(a1)")
    PA = path_of(A, kB.budget)
    kA = keyed(PA)
    tilde = kA.zero()
    for (i, e), coeff in kB.coefficients(bt).items():
        n = coeff.degree()
        pre = solve_preimage(v, coeff, n)
        if pre is None:
            raise AlgebraError(
                f"p5_lift: v is not surjective in degree {n} (no preimage)")
        tilde = tilde + kA.include(pre) * _t_pow(kA, i) * (kA.dt() if e else kA.unit())
    t = kA.t()
    one = kA.unit()
    at = (kA.include(a0 - kA.evaluate(tilde, 0)) * (one - t)
          + kA.include(a1 - kA.evaluate(tilde, 1)) * t + tilde)
    return at


def _t_pow(kA, i):
    out = kA.unit()
    for _ in range(i):
        out = out * kA.t()
    return out
