"""Graded-commutative dg algebra kernel.

Elements are sparse maps {basis key -> Scalar}; each algebra class implements a
small key protocol (degree, product with Koszul sign, differential, basis
enumeration) and everything else — cohomology, morphism checks, subalgebras cut
out by linear equations — is generic on top of it.

Algebras carry a mandatory degree cutoff N: bases and cohomology are served for
degrees inside the horizon and fail loudly beyond it.  Free algebras only admit
generators of degree >= 1 so that every degreewise basis is finite; degree-0
content enters through table presentations or through the path machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .exprs import parse_expression
from .scalars import Field, QQ, Scalar

RESERVED_NAMES = {"t", "dt", "s", "ds", "l", "dl", "i", "sqrtd"}


class CutoffError(ValueError):
    """An operation touched degrees beyond the algebra's trust horizon."""


class AlgebraError(ValueError):
    pass


def _as_scalar(c) -> Scalar:
    if isinstance(c, Scalar):
        return c
    return Scalar(c)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class Element:
    """Sparse element of a graded algebra: {key: nonzero Scalar}."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {k: c for k, c in terms.items() if not c.is_zero}

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = self.alg.unit() * other
        if other.alg is not self.alg:
            raise AlgebraError("adding elements of different algebras")
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, Scalar(0)) + c
            if s.is_zero:
                out.pop(k, None)
            else:
                out[k] = s
        return Element(self.alg, out)

    def __neg__(self):
        return Element(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = self.alg.unit() * other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            c = _as_scalar(other)
            return Element(self.alg, {k: c * v for k, v in self.terms.items()})
        if other.alg is not self.alg:
            raise AlgebraError("multiplying elements of different algebras")
        return Element(self.alg, self.alg.mul_terms(self.terms, other.terms))

    def __rmul__(self, other):
        return self.__mul__(other)

    def d(self) -> "Element":
        return Element(self.alg, self.alg.d_terms(self.terms))

    # structure ---------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree_parts(self) -> dict:
        out = {}
        for k, c in self.terms.items():
            n = self.alg.key_degree(k)
            out.setdefault(n, {})[k] = c
        return {n: Element(self.alg, t) for n, t in sorted(out.items())}

    def degree(self):
        """Degree if homogeneous (zero element has degree None)."""
        degs = {self.alg.key_degree(k) for k in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise AlgebraError(f"inhomogeneous element of degrees {sorted(degs)}")
        return degs.pop()

    def weight(self):
        """Filtration level: max key weight (increasing W); None when empty."""
        ws = [self.alg.key_weight(k) for k in self.terms]
        if not ws or any(w is None for w in ws):
            return None
        return max(ws)

    def hodge(self):
        """Hodge level: min key hodge (decreasing F); None when empty."""
        hs = [self.alg.key_hodge(k) for k in self.terms]
        if not hs or any(h is None for h in hs):
            return None
        return min(hs)

    def coefficient(self, key) -> Scalar:
        return self.terms.get(key, Scalar(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            other = self.alg.unit() * other
        if not isinstance(other, Element):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.alg), frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kc: self.alg.key_sort(kc[0]))

    def __repr__(self):
        if self.is_zero:
            return "0"
        bits = []
        for k, c in self.sorted_terms():
            ks = self.alg.key_str(k)
            if ks == "1":
                bits.append(str(c))
            elif c == 1:
                bits.append(ks)
            else:
                bits.append(f"({c})*{ks}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# algebra base
# ---------------------------------------------------------------------------

class GradedAlgebra:
    """Base class: subclasses fill in the key protocol."""

    field: Field
    N: int
    name: str

    # key protocol (subclass responsibility)
    def key_degree(self, k) -> int: raise NotImplementedError
    def mul_keys(self, k1, k2) -> dict: raise NotImplementedError
    def d_key(self, k) -> dict: raise NotImplementedError
    def basis_keys(self, n) -> list: raise NotImplementedError
    def unit_terms(self) -> dict: raise NotImplementedError

    def key_weight(self, k): return None
    def key_hodge(self, k): return None
    def key_block(self, k): return 0
    def key_sort(self, k): return repr(k)
    def key_str(self, k) -> str: return repr(k)

    @property
    def has_weights(self) -> bool:
        return False

    @property
    def has_hodge(self) -> bool:
        return False

    # generic element machinery ------------------------------------------------

    def element(self, terms: dict) -> Element:
        return Element(self, terms)

    def zero(self) -> Element:
        return Element(self, {})

    def unit(self) -> Element:
        return Element(self, dict(self.unit_terms()))

    def from_key(self, k, c=1) -> Element:
        return Element(self, {k: _as_scalar(c)})

    def mul_terms(self, t1: dict, t2: dict) -> dict:
        out = {}
        for k1, c1 in t1.items():
            for k2, c2 in t2.items():
                prod = self.mul_keys(k1, k2)
                if not prod:
                    continue
                c = c1 * c2
                for k, ck in prod.items():
                    s = out.get(k, Scalar(0)) + c * ck
                    if s.is_zero:
                        out.pop(k, None)
                    else:
                        out[k] = s
        return out

    def d_terms(self, terms: dict) -> dict:
        out = {}
        for k, c in terms.items():
            for kk, ck in self.d_key(k).items():
                s = out.get(kk, Scalar(0)) + c * ck
                if s.is_zero:
                    out.pop(kk, None)
                else:
                    out[kk] = s
        return out

    # bases / coordinates -------------------------------------------------------

    def check_degree(self, n, strict=True):
        if strict and not (0 <= n <= self.N):
            raise CutoffError(
                f"degree {n} outside the trust horizon 0..{self.N} of {self.name or self}")

    def basis(self, n, strict=True) -> list:
        self.check_degree(n, strict)
        if n < 0:
            return []
        return [self.from_key(k) for k in self.basis_keys(n)]

    def dim(self, n, strict=True) -> int:
        self.check_degree(n, strict)
        if n < 0:
            return 0
        return len(self.basis_keys(n))

    def coords(self, x: Element, n, strict=True):
        self.check_degree(n, strict)
        keys = self.basis_keys(n) if n >= 0 else []
        index = {k: i for i, k in enumerate(keys)}
        v = linalg.zeros(len(keys))
        for k, c in x.terms.items():
            i = index.get(k)
            if i is None:
                raise AlgebraError(
                    f"element has a degree-{self.key_degree(k)} key outside basis({n})")
            v[i] = c
        return v

    def from_coords(self, n, vec, strict=True) -> Element:
        keys = self.basis_keys(n) if n >= 0 else []
        return Element(self, {k: c for k, c in zip(keys, vec) if not c.is_zero})

    def random_element(self, n, rng, density=0.6, strict=True) -> Element:
        terms = {}
        for k in self.basis_keys(n) if n >= 0 else []:
            if rng.random() < density:
                c = self.field.scalar(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
                if not c.is_zero:
                    terms[k] = c
        return Element(self, terms)

    def __repr__(self):
        return self.name or f"<{type(self).__name__} at {hex(id(self))}>"

    # path-object cache (filled by paths.path_of)
    _path_cache: dict = None


# ---------------------------------------------------------------------------
# free (Sullivan-presented) algebras
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    weight: int | None = None
    hodge: int | None = None


class FreeCdga(GradedAlgebra):
    """Free graded-commutative dg algebra on generators of degree >= 1.

    Keys are monomials: tuples of (generator index, exponent) sorted by the
    fixed generator order (degree, then name).  Odd generators square to zero.
    """

    def __init__(self, generators, N, field=QQ, name="", differentials=None):
        seen = set()
        for g in generators:
            if g.degree < 1:
                raise AlgebraError(
                    f"free generator {g.name!r} has degree {g.degree}; "
                    "degree-0 content needs a table presentation or a path adjunction")
            if g.name in RESERVED_NAMES:
                raise AlgebraError(f"generator name {g.name!r} is reserved")
            if g.name in seen:
                raise AlgebraError(f"duplicate generator name {g.name!r}")
            seen.add(g.name)
        self.gens = sorted(generators, key=lambda g: (g.degree, g.name))
        self.gen_index = {g.name: i for i, g in enumerate(self.gens)}
        self.N = int(N)
        if self.N < 0:
            raise AlgebraError("cutoff N must be >= 0")
        self.field = field
        self.name = name or "Free(" + ",".join(g.name for g in self.gens) + ")"
        self._diff = {}          # gen index -> terms dict
        self._d_key_cache = {}
        self._basis_cache = {}
        if differentials:
            self.set_differential(differentials)

    # ----- construction

    def generator(self, name) -> Element:
        i = self.gen_index.get(name)
        if i is None:
            raise AlgebraError(f"unknown generator {name!r}")
        return self.from_key(((i, 1),))

    def set_differential(self, assignment: dict):
        """assignment: generator name -> Element (or terms dict) of degree+1."""
        for name, val in assignment.items():
            i = self.gen_index.get(name)
            if i is None:
                raise AlgebraError(f"unknown generator {name!r} in differential")
            el = val if isinstance(val, Element) else Element(self, val)
            if el.alg is not self:
                raise AlgebraError("differential value from a different algebra")
            if not el.is_zero and el.degree() != self.gens[i].degree + 1:
                raise AlgebraError(
                    f"d({name}) must have degree {self.gens[i].degree + 1}")
            self._diff[i] = dict(el.terms)
        self._d_key_cache.clear()

    def parse(self, text: str) -> Element:
        def resolve(nm):
            if nm in self.gen_index:
                return self.generator(nm)
            if nm in ("sqrtd", "i") and not self.field.is_rational:
                return self.unit() * self.field.sqrt_d()
            return None
        return parse_expression(text, resolve, self.unit())

    # ----- key protocol

    def key_degree(self, k) -> int:
        return sum(e * self.gens[i].degree for i, e in k)

    def unit_terms(self):
        return {(): self.field.one()}

    def key_sort(self, k):
        return (self.key_degree(k), k)

    def key_str(self, k) -> str:
        if not k:
            return "1"
        return "*".join(self.gens[i].name + (f"^{e}" if e > 1 else "") for i, e in k)

    def mul_keys(self, k1, k2):
        if not k1:
            return {k2: self.field.one()}
        if not k2:
            return {k1: self.field.one()}
        # merge the two sorted factor lists, counting odd-odd transpositions
        sign = 1
        out = []
        i, j = 0, 0
        # parity of odd-degree content of k1 suffix from position i
        odd_suffix = [0] * (len(k1) + 1)
        for a in range(len(k1) - 1, -1, -1):
            gi, e = k1[a]
            odd = (self.gens[gi].degree % 2) * e
            odd_suffix[a] = odd_suffix[a + 1] + odd
        while i < len(k1) and j < len(k2):
            if k1[i][0] <= k2[j][0]:
                out.append(k1[i]); i += 1
            else:
                gj, ej = k2[j]
                if (self.gens[gj].degree % 2) and ej % 2 and odd_suffix[i] % 2:
                    sign = -sign
                out.append(k2[j]); j += 1
        out.extend(k1[i:])
        out.extend(k2[j:])
        merged = []
        for gi, e in out:
            if merged and merged[-1][0] == gi:
                merged[-1][1] += e
            else:
                merged.append([gi, e])
        key = []
        for gi, e in merged:
            if self.gens[gi].degree % 2 and e > 1:
                return {}  # odd square
            key.append((gi, e))
        return {tuple(key): self.field.scalar(sign)}

    def d_key(self, k):
        cached = self._d_key_cache.get(k)
        if cached is not None:
            return cached
        if not k:
            out = {}
        else:
            (gi, e), rest = k[0], k[1:]
            g_deg = self.gens[gi].degree
            dg = self._diff.get(gi, {})
            # d(g^e) = e * g^(e-1) * dg   (odd g has e = 1)
            head = {}
            if dg:
                if e == 1:
                    head = dg
                else:
                    pref = {((gi, e - 1),): self.field.scalar(e)}
                    head = self.mul_terms(pref, dg)
            out = self.mul_terms(head, {rest: self.field.one()})
            drest = self.d_key(rest)
            if drest:
                sign = self.field.scalar(-1 if (g_deg * e) % 2 else 1)
                tail = self.mul_terms({(k[:1]): self.field.one()}, drest)
                for kk, c in tail.items():
                    s = out.get(kk, Scalar(0)) + sign * c
                    if s.is_zero:
                        out.pop(kk, None)
                    else:
                        out[kk] = s
        self._d_key_cache[k] = out
        return out

    def basis_keys(self, n):
        cached = self._basis_cache.get(n)
        if cached is not None:
            return cached
        keys = []

        def rec(start, remaining, acc):
            if remaining == 0:
                keys.append(tuple(acc))
                return
            for i in range(start, len(self.gens)):
                g = self.gens[i]
                if g.degree > remaining:
                    break  # gens sorted by degree
                emax = 1 if g.degree % 2 else remaining // g.degree
                for e in range(1, emax + 1):
                    if e * g.degree <= remaining:
                        acc.append((i, e))
                        rec(i + 1, remaining - e * g.degree, acc)
                        acc.pop()

        rec(0, n, [])
        keys.sort()
        self._basis_cache[n] = keys
        return keys

    def key_weight(self, k):
        if not self.has_weights:
            return None
        return sum(e * self.gens[i].weight for i, e in k)

    def key_hodge(self, k):
        if not self.has_hodge:
            return None
        return sum(e * self.gens[i].hodge for i, e in k)

    @property
    def has_weights(self):
        return all(g.weight is not None for g in self.gens)

    @property
    def has_hodge(self):
        return all(g.hodge is not None for g in self.gens)

    def differential_of(self, name) -> Element:
        return Element(self, dict(self._diff.get(self.gen_index[name], {})))


# ---------------------------------------------------------------------------
# finite table presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TableBasisElement:
    name: str
    degree: int
    weight: int | None = None
    hodge: int | None = None


class TableCdga(GradedAlgebra):
    """Finite-dimensional cdga given by a graded basis and a multiplication table.

    Products absent from the table (in particular everything above the top
    declared degree) are zero; the table is the whole algebra.
    """

    def __init__(self, basis, N, field=QQ, name="", unit="1",
                 products=None, differentials=None, augmentation=None):
        self.basis_list = list(basis)
        names = [b.name for b in self.basis_list]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate table basis name")
        for b in self.basis_list:
            if b.name in RESERVED_NAMES:
                raise AlgebraError(f"basis name {b.name!r} is reserved")
            if b.degree < 0:
                raise AlgebraError(f"basis element {b.name!r} has negative degree")
        self.info = {b.name: b for b in self.basis_list}
        if unit not in self.info or self.info[unit].degree != 0:
            raise AlgebraError(f"unit {unit!r} must be a degree-0 basis element")
        self.unit_name = unit
        self.N = int(N)
        self.field = field
        self.name = name or f"Table({','.join(names)})"
        self.products = {}
        for (a, b), terms in (products or {}).items():
            self._check_names(a, b)
            self.products[(a, b)] = {k: _as_scalar(c) for k, c in terms.items()
                                     if not _as_scalar(c).is_zero}
        self.diffs = {}
        for a, terms in (differentials or {}).items():
            self._check_names(a)
            self.diffs[a] = {k: _as_scalar(c) for k, c in terms.items()
                             if not _as_scalar(c).is_zero}
        if augmentation is None:
            augmentation = {self.unit_name: self.field.one()}
        self.augmentation = {k: _as_scalar(c) for k, c in augmentation.items()}

    def _check_names(self, *names):
        for nm in names:
            if nm not in self.info:
                raise AlgebraError(f"unknown basis name {nm!r}")

    def basis_element(self, name) -> Element:
        self._check_names(name)
        return self.from_key(name)

    def parse(self, text: str) -> Element:
        def resolve(nm):
            if nm in self.info:
                return self.basis_element(nm)
            if nm in ("sqrtd", "i") and not self.field.is_rational:
                return self.unit() * self.field.sqrt_d()
            return None
        return parse_expression(text, resolve, self.unit())

    # ----- key protocol

    def key_degree(self, k) -> int:
        return self.info[k].degree

    def unit_terms(self):
        return {self.unit_name: self.field.one()}

    def key_sort(self, k):
        return (self.info[k].degree, k)

    def key_str(self, k) -> str:
        return k

    def mul_keys(self, k1, k2):
        if k1 == self.unit_name:
            return {k2: self.field.one()}
        if k2 == self.unit_name:
            return {k1: self.field.one()}
        if (k1, k2) in self.products:
            return self.products[(k1, k2)]
        if (k2, k1) in self.products:
            d1, d2 = self.info[k1].degree, self.info[k2].degree
            sign = self.field.scalar(-1 if (d1 * d2) % 2 else 1)
            return {k: sign * c for k, c in self.products[(k2, k1)].items()}
        return {}

    def d_key(self, k):
        return self.diffs.get(k, {})

    def basis_keys(self, n):
        return [b.name for b in self.basis_list if b.degree == n]

    def key_weight(self, k):
        return self.info[k].weight

    def key_hodge(self, k):
        return self.info[k].hodge

    @property
    def has_weights(self):
        return all(b.weight is not None for b in self.basis_list)

    @property
    def has_hodge(self):
        return all(b.hodge is not None for b in self.basis_list)

    def augment(self, x: Element) -> Scalar:
        out = Scalar(0)
        for k, c in x.terms.items():
            a = self.augmentation.get(k)
            if a is not None:
                out = out + a * c
        return out


# ---------------------------------------------------------------------------
# finite products
# ---------------------------------------------------------------------------

class ProductCdga(GradedAlgebra):
    """Direct product of algebras; keys are (slot, key) pairs."""

    def __init__(self, factors, name=""):
        if not factors:
            raise AlgebraError("empty product")
        fields = {f.field for f in factors}
        if len(fields) != 1:
            raise AlgebraError("product factors over different fields")
        self.factors = list(factors)
        self.field = factors[0].field
        self.N = min(f.N for f in factors)
        self.name = name or "(" + " x ".join(repr(f) for f in factors) + ")"

    def key_degree(self, k):
        return self.factors[k[0]].key_degree(k[1])

    def unit_terms(self):
        out = {}
        for i, f in enumerate(self.factors):
            for kk, c in f.unit_terms().items():
                out[(i, kk)] = c
        return out

    def key_sort(self, k):
        return (k[0], self.factors[k[0]].key_sort(k[1]))

    def key_str(self, k):
        return f"[{k[0]}]{self.factors[k[0]].key_str(k[1])}"

    def mul_keys(self, k1, k2):
        if k1[0] != k2[0]:
            return {}
        i = k1[0]
        return {(i, kk): c for kk, c in self.factors[i].mul_keys(k1[1], k2[1]).items()}

    def d_key(self, k):
        i = k[0]
        return {(i, kk): c for kk, c in self.factors[i].d_key(k[1]).items()}

    def basis_keys(self, n):
        out = []
        for i, f in enumerate(self.factors):
            out.extend((i, kk) for kk in f.basis_keys(n))
        return out

    def key_weight(self, k):
        return self.factors[k[0]].key_weight(k[1])

    def key_hodge(self, k):
        return self.factors[k[0]].key_hodge(k[1])

    def key_block(self, k):
        return (k[0], self.factors[k[0]].key_block(k[1]))

    @property
    def has_weights(self):
        return all(f.has_weights for f in self.factors)

    @property
    def has_hodge(self):
        return all(f.has_hodge for f in self.factors)

    def inject(self, i, x: Element) -> Element:
        if x.alg is not self.factors[i]:
            raise AlgebraError("inject: wrong factor")
        return Element(self, {(i, k): c for k, c in x.terms.items()})

    def project(self, i, x: Element) -> Element:
        return Element(self.factors[i],
                       {k[1]: c for k, c in x.terms.items() if k[0] == i})


# ---------------------------------------------------------------------------
# linear maps and morphisms
# ---------------------------------------------------------------------------

class LinearMap:
    """Degree-preserving linear map; not necessarily multiplicative."""

    def __init__(self, source, target, fn, name=""):
        self.source = source
        self.target = target
        self.fn = fn
        self.name = name

    def __call__(self, x: Element) -> Element:
        return self.fn(x)

    def __repr__(self):
        return self.name or f"<linear {self.source!r} -> {self.target!r}>"


class Morphism(LinearMap):
    """Unit-preserving cdga morphism (degree 0, commutes with d and products)."""

    kind = "morphism"

    def then(self, g: "Morphism") -> "Morphism":
        return compose(g, self)


def compose(g: LinearMap, f: LinearMap, name="") -> LinearMap:
    cls = Morphism if isinstance(g, Morphism) and isinstance(f, Morphism) else LinearMap
    return cls(f.source, g.target, lambda x: g(f(x)),
               name or f"({g.name or 'g'} o {f.name or 'f'})")


def identity_morphism(A) -> Morphism:
    return Morphism(A, A, lambda x: x, name=f"1_{A!r}")


class FreeMorphism(Morphism):
    """Morphism out of a FreeCdga, determined by generator images."""

    def __init__(self, source: FreeCdga, target, gen_images: dict, name=""):
        self.gen_images = {}
        target_amb = target.ambient if isinstance(target, SubCdga) else target
        for nm, el in gen_images.items():
            if nm not in source.gen_index:
                raise AlgebraError(f"unknown generator {nm!r}")
            if el.alg is not target_amb:
                raise AlgebraError(f"image of {nm!r} lies in the wrong algebra")
            self.gen_images[nm] = el
        missing = [g.name for g in source.gens if g.name not in self.gen_images]
        if missing:
            raise AlgebraError(f"missing generator images: {missing}")
        self._key_cache = {}
        super().__init__(source, target, self._apply, name)

    def _image_of_key(self, k) -> Element:
        cached = self._key_cache.get(k)
        if cached is not None:
            return cached
        if not k:
            out = self.target.unit()
        else:
            (gi, e), rest = k[0], k[1:]
            g = self.source.gens[gi]
            img = self.gen_images[g.name]
            out = self._image_of_key(rest)
            for _ in range(e):
                out = img * out
        self._key_cache[k] = out
        return out

    def _apply(self, x: Element) -> Element:
        out = self.target.zero()
        for k, c in x.terms.items():
            out = out + self._image_of_key(k) * c
        return out


def linear_morphism(source, target, key_images: dict, name="") -> Morphism:
    """Morphism given by images of basis keys (e.g. out of a TableCdga)."""
    def fn(x: Element) -> Element:
        out = target.zero()
        for k, c in x.terms.items():
            img = key_images.get(k)
            if img is None:
                raise AlgebraError(f"no image for basis key {k!r}")
            out = out + img * c
        return out
    return Morphism(source, target, fn, name)


def morphism_matrix(f: LinearMap, n, strict=True):
    """Rows = coords of f(b) over the source basis b of degree n."""
    return [f.target.coords(f(b), n, strict=strict) for b in f.source.basis(n, strict=strict)]


def equal_maps(f: LinearMap, g: LinearMap, upto, strict=True) -> bool:
    if f.source is not g.source or f.target is not g.target:
        return False
    for n in range(0, upto + 1):
        for b in f.source.basis(n, strict=strict):
            if f(b) != g(b):
                return False
    return True


def is_surjective_at(f: LinearMap, n) -> int:
    rows = morphism_matrix(f, n)
    need = f.target.dim(n)
    return linalg.rank(rows, need) == need


def solve_preimage(f: LinearMap, y: Element, n):
    """x of degree n with f(x) = y, or None; deterministic free choice."""
    rows = morphism_matrix(f, n)
    ncols = f.target.dim(n)
    rhs = f.target.coords(y, n)
    # unknowns are source coordinates: transpose rows
    mat = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    sol = linalg.solve(mat, len(rows), rhs)
    if sol is None:
        return None
    return f.source.from_coords(n, sol)


def kernel_elements(f: LinearMap, n):
    rows = morphism_matrix(f, n)
    ncols = f.target.dim(n)
    mat = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
    return [f.source.from_coords(n, v) for v in linalg.kernel_basis(mat, len(rows))]


def check_morphism(f: Morphism, rng, degrees=None, samples=4, report=None):
    """Exact unit/d checks on bases, sampled multiplicativity; returns failures."""
    failures = [] if report is None else report
    A, B = f.source, f.target
    if f(A.unit()) != B.unit():
        failures.append({"check": "unit", "witness": "f(1) != 1"})
    top = min(A.N, B.N) - 1
    degs = degrees if degrees is not None else range(0, top + 1)
    for n in degs:
        for b in A.basis(n):
            if f(b.d()) != f(b).d():
                failures.append({"check": "d-commutation", "degree": n,
                                 "witness": repr(b)})
                break
    for _ in range(samples):
        n1 = rng.randint(0, max(0, top))
        n2 = rng.randint(0, max(0, top - n1))
        x = A.random_element(n1, rng)
        y = A.random_element(n2, rng)
        if f(x * y) != f(x) * f(y):
            failures.append({"check": "multiplicativity",
                             "witness": f"deg {n1} * deg {n2}"})
    return failures


def extend_scalars(A, d: int):
    """Base change of a Free/Table algebra to Q(sqrt d); returns (B, coerce)."""
    F = Field(d)
    if isinstance(A, FreeCdga):
        B = FreeCdga(A.gens, A.N, F, name=f"{A.name}@C")
        B._diff = {i: dict(t) for i, t in A._diff.items()}
    elif isinstance(A, TableCdga):
        B = TableCdga(A.basis_list, A.N, F, name=f"{A.name}@C", unit=A.unit_name,
                      products={k: dict(v) for k, v in A.products.items()},
                      differentials={k: dict(v) for k, v in A.diffs.items()},
                      augmentation=dict(A.augmentation))
    else:
        raise AlgebraError("scalar extension implemented for free/table presentations")
    coerce = Morphism(A, B, lambda x: Element(B, dict(x.terms)), name="? C")
    return B, coerce


# ---------------------------------------------------------------------------
# subalgebras cut out by linear constraints
# ---------------------------------------------------------------------------

class SubCdga:
    """Degreewise kernel of linear constraints inside a keyed ambient algebra.

    Elements live in the ambient algebra; this object serves bases and
    coordinates.  Used for mapping paths, double paths and boundary-condition
    targets, none of which are free.
    """

    def __init__(self, ambient: GradedAlgebra, constraints, name=""):
        self.ambient = ambient
        self.constraints = list(constraints)
        self.field = ambient.field
        self.N = ambient.N
        self.name = name or f"Sub({ambient!r})"
        self._basis_cache = {}
        self._coord_cache = {}

    # space protocol ------------------------------------------------------------

    def basis(self, n, strict=True):
        if strict and not (0 <= n <= self.N):
            raise CutoffError(f"degree {n} outside 0..{self.N} of {self.name}")
        if n < 0:
            return []
        if n not in self._basis_cache:
            self._basis_cache[n] = self._solve_basis(self.ambient.basis(n, strict=False))
        return list(self._basis_cache[n])

    def _solve_basis(self, amb_basis):
        if not amb_basis:
            return []
        rows = []  # constraint rows: one per (constraint, target basis index)
        cols = len(amb_basis)
        images = []
        for c in self.constraints:
            imgs = [c(b) for b in amb_basis]
            degs = {x.degree() for x in imgs if not x.is_zero}
            tgt_dims = {}
            for x in imgs:
                for m in ([x.degree()] if not x.is_zero else []):
                    tgt_dims[m] = True
            # constraints are degree-preserving maps; collect coords per degree
            for m in sorted(tgt_dims):
                vecs = [c.target.coords(x if (not x.is_zero and x.degree() == m)
                                        else c.target.zero(), m, strict=False)
                        for x in imgs]
                dim_m = len(vecs[0])
                for r in range(dim_m):
                    rows.append([vecs[j][r] for j in range(cols)])
        kern = linalg.kernel_basis(rows, cols) if rows else [
            [Scalar(1) if i == j else Scalar(0) for j in range(cols)] for i in range(cols)]
        out = []
        for v in kern:
            terms = {}
            for coeff, b in zip(v, amb_basis):
                if not coeff.is_zero:
                    for k, c in b.terms.items():
                        terms[k] = terms.get(k, Scalar(0)) + coeff * c
            out.append(Element(self.ambient, terms))
        return out

    def dim(self, n, strict=True):
        return len(self.basis(n, strict=strict))

    def coords(self, x: Element, n, strict=True):
        basis = self.basis(n, strict=strict)
        amb = self.ambient
        cols = amb.dim(n, strict=False)
        if n not in self._coord_cache:
            mat = [amb.coords(b, n, strict=False) for b in basis]
            self._coord_cache[n] = mat
        mat = self._coord_cache[n]
        target = amb.coords(x, n, strict=False)
        tmat = [[mat[i][j] for i in range(len(mat))] for j in range(cols)]
        sol = linalg.solve(tmat, len(mat), target)
        if sol is None:
            raise AlgebraError(f"element is not in {self.name} (degree {n})")
        return sol

    def from_coords(self, n, vec, strict=True) -> Element:
        basis = self.basis(n, strict=strict)
        out = self.ambient.zero()
        for c, b in zip(vec, basis):
            if not c.is_zero:
                out = out + b * c
        return out

    def contains(self, x: Element) -> bool:
        for c in self.constraints:
            if not c(x).is_zero:
                return False
        return True

    def random_element(self, n, rng, density=0.6, strict=True) -> Element:
        out = self.ambient.zero()
        for b in self.basis(n, strict=strict):
            if rng.random() < density:
                c = self.field.scalar(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
                out = out + b * c
        return out

    def check_degree(self, n, strict=True):
        if strict and not (0 <= n <= self.N):
            raise CutoffError(f"degree {n} outside 0..{self.N} of {self.name}")

    def zero(self):
        return self.ambient.zero()

    def unit(self):
        u = self.ambient.unit()
        return u

    @property
    def has_weights(self):
        return self.ambient.has_weights

    @property
    def has_hodge(self):
        return self.ambient.has_hodge

    def __repr__(self):
        return self.name

    _path_cache = None
