"""Operations on cdga presentations: canonical forms, validation reports,
indecomposables, and materialized table presentations (truncation)."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebra import (AlgebraError, CutoffError, Element, FreeCdga, GradedAlgebra,
                      LinearMap, TableBasisElement, TableCdga)
from .scalars import Scalar


def normalize(raw_terms, A) -> Element:
    """Canonical form of a raw term list [(coeff, [name, name, ...]), ...].

    Factors are multiplied in the given order, so Koszul signs fall out of the
    algebra's product; merging and zero-dropping happen in Element arithmetic.
    Idempotent: normalizing a normalized element is the identity.
    """
    out = A.zero()
    for coeff, names in raw_terms:
        term = A.unit() * coeff
        for nm in names:
            if isinstance(A, FreeCdga):
                term = term * A.generator(nm)
            elif isinstance(A, TableCdga):
                term = term * A.basis_element(nm)
            else:
                raise AlgebraError("normalize needs a free or table presentation")
        out = out + term
    return out


def differentiate(a: Element, A=None) -> Element:
    """d(a) for a in degrees <= N-1; fails loudly past the cutoff."""
    A = A or a.alg
    for n in a.degree_parts():
        if n > A.N - 1:
            raise CutoffError(f"differentiate: degree {n} element, horizon ends at {A.N - 1}")
    return a.d()


@dataclass
class ValidationReport:
    subject: str
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, check, witness, **extra):
        self.failures.append({"check": check, "witness": witness, **extra})

    def to_doc(self):
        return {"subject": self.subject, "ok": self.ok, "failures": self.failures}


def check_cdga(A, max_assoc_dim: int = 24) -> ValidationReport:
    """Assert the cdga identities up to the horizon, with witnesses.

    d raises degree by 1 and squares to zero in degrees <= N-2; Leibniz and
    graded commutativity hold for basis pairs with degree sum <= N-1; table
    presentations additionally get unit and associativity checks.
    """
    rep = ValidationReport(subject=repr(A))

    if isinstance(A, FreeCdga):
        for g in A.gens:
            dg = A.differential_of(g.name)
            if not dg.is_zero and dg.degree() != g.degree + 1:
                rep.add("d-degree", g.name, expected=g.degree + 1, got=dg.degree())
            if g.degree + 2 <= A.N:
                dd = dg.d()
                if not dd.is_zero:
                    rep.add("d-squared", g.name, value=repr(dd))
            if A.has_weights and not dg.is_zero:
                if any(A.key_weight(k) > g.weight for k in dg.terms):
                    rep.add("filtration", g.name,
                            detail="differential raises the weight filtration")
        # Leibniz / commutativity hold by construction for the free product;
        # spot-check small degrees to catch kernel bugs.
        top = min(A.N - 1, 6)
        for n1 in range(1, top + 1):
            for b1 in A.basis(n1):
                for n2 in range(n1, top - n1 + 1):
                    for b2 in A.basis(n2):
                        lhs = (b1 * b2).d()
                        sgn = -1 if n1 % 2 else 1
                        rhs = b1.d() * b2 + (b1 * b2.d()) * sgn
                        if lhs != rhs:
                            rep.add("leibniz", f"{b1!r},{b2!r}")
                        csgn = -1 if (n1 * n2) % 2 else 1
                        if b1 * b2 != (b2 * b1) * csgn:
                            rep.add("graded-commutativity", f"{b1!r},{b2!r}")
        return rep

    if isinstance(A, TableCdga):
        names = [b.name for b in A.basis_list]
        for nm in names:
            b = A.basis_element(nm)
            db = b.d()
            if not db.is_zero and db.degree() != A.info[nm].degree + 1:
                rep.add("d-degree", nm, expected=A.info[nm].degree + 1, got=db.degree())
            if A.info[nm].degree <= A.N - 2:
                dd = db.d()
                if not dd.is_zero:
                    rep.add("d-squared", nm, value=repr(dd))
        for n1 in names:
            for n2 in names:
                d1, d2 = A.info[n1].degree, A.info[n2].degree
                if d1 + d2 > A.N - 1:
                    continue
                b1, b2 = A.basis_element(n1), A.basis_element(n2)
                csgn = -1 if (d1 * d2) % 2 else 1
                if b1 * b2 != (b2 * b1) * csgn:
                    rep.add("graded-commutativity", f"{n1},{n2}")
                lhs = (b1 * b2).d()
                sgn = -1 if d1 % 2 else 1
                rhs = b1.d() * b2 + (b1 * b2.d()) * sgn
                if lhs != rhs:
                    rep.add("leibniz", f"{n1},{n2}")
        if len(names) <= max_assoc_dim:
            for n1 in names:
                for n2 in names:
                    for n3 in names:
                        dsum = A.info[n1].degree + A.info[n2].degree + A.info[n3].degree
                        if dsum > A.N:
                            continue
                        b1, b2, b3 = (A.basis_element(x) for x in (n1, n2, n3))
                        if (b1 * b2) * b3 != b1 * (b2 * b3):
                            rep.add("associativity", f"{n1},{n2},{n3}")
        for nm, c in A.augmentation.items():
            if A.info[nm].degree != 0 and not c.is_zero:
                rep.add("augmentation", nm, detail="nonzero on positive degree")
        for nm in names:
            d_aug = A.augment(A.basis_element(nm).d())
            if not d_aug.is_zero:
                rep.add("augmentation", nm, detail="augmentation not a chain map")
        if A.has_weights:
            for nm in names:
                db = A.basis_element(nm).d()
                if not db.is_zero and db.weight() > A.info[nm].weight:
                    rep.add("filtration-W", nm, detail="d raises the weight")
            for (n1, n2), terms in A.products.items():
                el = Element(A, terms)
                if not el.is_zero and el.weight() > A.info[n1].weight + A.info[n2].weight:
                    rep.add("filtration-W", f"{n1}*{n2}",
                            detail="product exceeds the weight sum")
        if A.has_hodge:
            for nm in names:
                db = A.basis_element(nm).d()
                if not db.is_zero and db.hodge() < A.info[nm].hodge:
                    rep.add("filtration-F", nm, detail="d drops the Hodge level")
            for (n1, n2), terms in A.products.items():
                el = Element(A, terms)
                if not el.is_zero and el.hodge() < A.info[n1].hodge + A.info[n2].hodge:
                    rep.add("filtration-F", f"{n1}*{n2}",
                            detail="product below the Hodge level sum")
        return rep

    rep.add("presentation", repr(type(A)), detail="check_cdga needs FREE or TABLE")
    return rep


def euler_characteristic(A: TableCdga) -> int:
    return sum((-1) ** n * A.dim(n) for n in range(0, A.N + 1))


# ---------------------------------------------------------------------------
# indecomposables Q(A) = A+ / (A+ . A+)
# ---------------------------------------------------------------------------

@dataclass
class QDegree:
    labels: list
    reps: list            # Elements of A representing the classes
    weights: list         # filtration level per class or None
    hodges: list

    @property
    def dim(self):
        return len(self.labels)


class QComplex:
    """Graded complex of indecomposables, with the induced (linear) differential."""

    def __init__(self, A, degrees: dict, dmats: dict, project):
        self.A = A
        self.degrees = degrees      # n -> QDegree
        self.dmats = dmats          # n -> rows over degrees[n], coords in degrees[n+1]
        self._project = project     # (elem, n) -> coords in degrees[n]

    def dim(self, n) -> int:
        return self.degrees[n].dim if n in self.degrees else 0

    def dims(self) -> dict:
        return {n: q.dim for n, q in sorted(self.degrees.items()) if q.dim}

    def project(self, x: Element, n):
        return self._project(x, n)

    def dmat(self, n):
        return self.dmats.get(n, [])

    def differential_is_zero(self) -> bool:
        return all(all(all(c.is_zero for c in row) for row in rows)
                   for rows in self.dmats.values())


def indecomposables(A, upto=None) -> QComplex:
    """Q(A) = A+/(A+.A+) with the induced differential and filtrations.

    Free presentations: the degree-n generators are the basis and the induced
    differential is the linear part of d.  Table presentations: computed as an
    exact subquotient using the augmentation.
    """
    upto = A.N if upto is None else upto
    if isinstance(A, FreeCdga):
        degrees, dmats = {}, {}
        for n in range(0, upto + 1):
            gens_n = [g for g in A.gens if g.degree == n]
            degrees[n] = QDegree(labels=[g.name for g in gens_n],
                                 reps=[A.generator(g.name) for g in gens_n],
                                 weights=[g.weight for g in gens_n],
                                 hodges=[g.hodge for g in gens_n])
        for n in range(0, upto):
            src = degrees[n]
            dst = degrees[n + 1]
            rows = []
            for nm in src.labels:
                dg = A.differential_of(nm)
                row = [dg.coefficient(((A.gen_index[l], 1),)) for l in dst.labels]
                rows.append(row)
            dmats[n] = rows

        def project(x: Element, n):
            labels = degrees[n].labels
            return [x.coefficient(((A.gen_index[l], 1),)) for l in labels]

        return QComplex(A, degrees, dmats, project)

    if isinstance(A, TableCdga):
        # A+ = ker(augmentation); decomposables = span of products of positives
        plus_basis = {}
        for n in range(0, upto + 1):
            if n == 0:
                rows = [[A.augmentation.get(k, Scalar(0)) for k in A.basis_keys(0)]]
                kern = linalg.kernel_basis(rows, A.dim(0))
                plus_basis[0] = [A.from_coords(0, v) for v in kern]
            else:
                plus_basis[n] = A.basis(n)
        sqs, degrees, dmats = {}, {}, {}
        for n in range(0, upto + 1):
            cols = A.dim(n)
            dec = []
            for m in range(0, n + 1):
                for b1 in plus_basis.get(m, []):
                    for b2 in plus_basis.get(n - m, []):
                        p = b1 * b2
                        if not p.is_zero:
                            dec.append(A.coords(p, n))
            num = [A.coords(b, n) for b in plus_basis[n]]
            sq = linalg.Subquotient(num, dec, cols)
            sqs[n] = sq
            reps = [A.from_coords(n, v) for v in sq.reps]
            weights = []
            hodges = []
            for v in sq.reps:
                el = A.from_coords(n, v)
                weights.append(el.weight() if A.has_weights else None)
                hodges.append(el.hodge() if A.has_hodge else None)
            degrees[n] = QDegree(labels=[f"q{n}_{k}" for k in range(sq.dim)],
                                 reps=reps, weights=weights, hodges=hodges)
        for n in range(0, upto):
            rows = []
            for rep in degrees[n].reps:
                img = rep.d()
                c = sqs[n + 1].coords(A.coords(img, n + 1) if not img.is_zero
                                      else linalg.zeros(A.dim(n + 1)))
                if c is None:
                    raise AlgebraError("differential does not descend to Q(A)")
                rows.append(c)
            dmats[n] = rows

        def project(x: Element, n):
            vec = A.coords(x, n) if not x.is_zero else linalg.zeros(A.dim(n))
            c = sqs[n].coords(vec)
            if c is None:
                raise AlgebraError("element not in A+ modulo decomposables")
            return c

        return QComplex(A, degrees, dmats, project)

    raise AlgebraError("indecomposables needs a FREE or TABLE presentation")


def induced_on_indecomposables(f, QA: QComplex, QB: QComplex, upto=None):
    """Matrices (per degree) of Q(f) for an augmentation-compatible morphism."""
    upto = min(f.source.N, f.target.N) if upto is None else upto
    out = {}
    for n in range(0, upto + 1):
        rows = []
        for rep in QA.degrees[n].reps if n in QA.degrees else []:
            rows.append(QB.project(f(rep), n))
        out[n] = rows
    return out


# ---------------------------------------------------------------------------
# materialized table presentations (truncation)
# ---------------------------------------------------------------------------

def table_presentation(X, upto: int, name="", keep_filtrations=True) -> tuple:
    """Materialize any algebra/subalgebra as a TableCdga up to the given degree.

    Returns (T, to_table: LinearMap, from_table: LinearMap).  Products landing
    above the truncation degree are dropped, and for path-polynomial algebras
    products beyond the t-weight budget are zero: the table presents the
    quotient by the (acyclic, d-stable) ideal of keys above the budget.
    """
    bases = {n: X.basis(n) for n in range(0, upto + 1)}
    names = {}
    entries = []
    keyed = isinstance(X, GradedAlgebra)
    for n, bs in bases.items():
        for k, b in enumerate(bs):
            nm = f"b{n}_{k}"
            names[(n, k)] = nm
            w = b.weight() if keep_filtrations and X.has_weights else None
            h = b.hodge() if keep_filtrations and X.has_hodge else None
            entries.append(TableBasisElement(nm, n, w, h))
    # unit coordinates
    unit = X.unit() if hasattr(X, "unit") else X.ambient.unit()
    u_coords = _coords_of(X, unit, 0)
    unit_name = None
    for k, c in enumerate(u_coords):
        if c == 1 and all(cc.is_zero for j, cc in enumerate(u_coords) if j != k):
            unit_name = names[(0, k)]
            break
    if unit_name is None:
        raise AlgebraError("table presentation needs the unit to be a basis vector")

    def coords_named(x, n):
        return {names[(n, j)]: c for j, c in enumerate(_coords_of(X, x, n)) if not c.is_zero}

    from .paths import BudgetError
    products = {}
    for n1 in range(0, upto + 1):
        for n2 in range(n1, upto + 1 - n1):
            for k1, b1 in enumerate(bases[n1]):
                for k2, b2 in enumerate(bases[n2]):
                    if n1 == n2 and k2 < k1:
                        continue
                    try:
                        p = b1 * b2
                    except BudgetError:
                        continue  # zero in the budget quotient
                    terms = coords_named(p, n1 + n2) if not p.is_zero else {}
                    if terms:
                        products[(names[(n1, k1)], names[(n2, k2)])] = terms
    diffs = {}
    for n in range(0, upto):
        for k, b in enumerate(bases[n]):
            db = b.d()
            if not db.is_zero:
                diffs[names[(n, k)]] = coords_named(db, n + 1)
    T = TableCdga(entries, upto, X.field, name=name or f"Table[{X!r}]",
                  unit=unit_name, products=products, differentials=diffs)

    def to_table(x: Element) -> Element:
        out = T.zero()
        for n, part in x.degree_parts().items():
            if n > upto:
                raise CutoffError("element beyond the truncation degree")
            out = out + Element(T, coords_named(part, n))
        return out

    def from_table(x: Element) -> Element:
        amb = getattr(X, "ambient", X)
        out = amb.zero()
        for k, c in x.terms.items():
            n = T.info[k].degree
            idx = int(k.split("_")[1])
            out = out + bases[n][idx] * c
        return out

    return T, LinearMap(X, T, to_table, "to_table"), LinearMap(T, X, from_table, "from_table")


def _coords_of(X, x, n):
    if x.is_zero:
        return linalg.zeros(X.dim(n))
    return X.coords(x, n)
