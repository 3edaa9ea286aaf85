"""Exact cohomology of the algebras in this package.

For keyed algebras whose differential preserves a block grading (path algebras
graded by polynomial t-weight), kernels and images are computed block by
block; everything stays exact, the blocks only keep the matrices small.
"""

from __future__ import annotations

from . import linalg
from .algebra import AlgebraError, CutoffError, Element, GradedAlgebra, LinearMap


def _is_keyed(X) -> bool:
    return isinstance(X, GradedAlgebra)


class Cohomology:
    """H^n of an algebra/subspace complex, with representatives and class coords."""

    def __init__(self, X, n, dim, reps, block_data):
        self.X = X
        self.n = n
        self.dim = dim
        self.reps = reps            # list[Element], canonical representatives
        self._blocks = block_data   # list of (block_id, keys_or_none, subquotient)

    def cls(self, x: Element):
        """Coordinates of the class [x] in the representative basis.

        Raises if x is not closed; returns None if x is not in this degree's
        cocycles span (cannot happen for closed homogeneous x of degree n).
        """
        if not x.d().is_zero:
            raise AlgebraError("cls() of a non-closed element")
        out = []
        for block_id, keys, sq, index in self._blocks:
            if keys is None:
                vec = self.X.coords(x, self.n)
            else:
                vec = linalg.zeros(len(keys))
                for k, c in x.terms.items():
                    i = index.get(k)
                    if i is not None:
                        vec[i] = c
            # parts of x in other blocks are handled by those blocks
            c = sq.coords(vec)
            if c is None:
                return None
            out.extend(c)
        # safety: every key of x must have been consumed by some block
        return out

    def zero_class(self):
        return linalg.zeros(self.dim)


def _block_partition(X, n):
    """keys of degree n grouped by block id (sorted); None block => whole basis."""
    keys = X.basis_keys(n) if n >= 0 else []
    groups = {}
    for k in keys:
        groups.setdefault(X.key_block(k), []).append(k)
    return dict(sorted(groups.items(), key=lambda kv: repr(kv[0])))


def _d_matrix_on_keys(X, keys_src, keys_dst):
    index = {k: i for i, k in enumerate(keys_dst)}
    rows = []
    for k in keys_src:
        v = linalg.zeros(len(keys_dst))
        for kk, c in X.d_key(k).items():
            i = index.get(kk)
            if i is None:
                raise AlgebraError("differential leaves its block; block grading broken")
            v[i] = c
        rows.append(v)
    return rows


def cohomology(X, n: int, strict: bool = True) -> Cohomology:
    """Exact H^n: kernel of d_n modulo image of d_{n-1}.

    Needs bases in degrees n-1, n, n+1; within the horizon this means
    n <= N - 1 (per the cutoff design decision).
    """
    if strict and not (0 <= n <= X.N - 1):
        raise CutoffError(f"cohomology degree {n} outside 0..{X.N - 1} of {X!r}")

    blocks = []
    reps = []
    dim = 0
    if _is_keyed(X) and any(X.key_block(k) != 0 for k in X.basis_keys(n)):
        part_n = _block_partition(X, n)
        part_lo = _block_partition(X, n - 1)
        part_hi = _block_partition(X, n + 1)
        for block_id, keys in part_n.items():
            lo = part_lo.get(block_id, [])
            hi = part_hi.get(block_id, [])
            dmat = _d_matrix_on_keys(X, keys, hi)
            tmat = [[dmat[i][j] for i in range(len(keys))] for j in range(len(hi))]
            kern = linalg.kernel_basis(tmat, len(keys))
            img = _d_matrix_on_keys(X, lo, keys)
            sq = linalg.Subquotient(kern, img, len(keys))
            index = {k: i for i, k in enumerate(keys)}
            blocks.append((block_id, keys, sq, index))
            for rep in sq.reps:
                reps.append(Element(X, {k: c for k, c in zip(keys, rep) if not c.is_zero}))
            dim += sq.dim
    else:
        basis_n = X.basis(n, strict=False)
        cols = len(basis_n)
        dim_hi = _space_dim(X, n + 1)
        rows_d = [_space_coords(X, b.d(), n + 1) for b in basis_n]
        tmat = [[rows_d[i][j] for i in range(cols)] for j in range(dim_hi)]
        kern = linalg.kernel_basis(tmat, cols)
        img = [_space_coords_elem(X, b.d(), n, cols) for b in X.basis(n - 1, strict=False)] \
            if n >= 1 else []
        sq = linalg.Subquotient(kern, img, cols)
        blocks.append((0, None, sq, None))
        for repv in sq.reps:
            reps.append(_from_coords(X, n, repv, basis_n))
        dim = sq.dim
    return Cohomology(X, n, dim, reps, blocks)


def _space_dim(X, n):
    return X.dim(n, strict=False)


def _space_coords(X, x, n):
    if x.is_zero:
        return linalg.zeros(_space_dim(X, n))
    return X.coords(x, n, strict=False)


def _space_coords_elem(X, x, n, cols):
    if x.is_zero:
        return linalg.zeros(cols)
    return X.coords(x, n, strict=False)


def _from_coords(X, n, vec, basis_n):
    out = None
    for c, b in zip(vec, basis_n):
        if not c.is_zero:
            term = b * c
            out = term if out is None else out + term
    if out is None:
        amb = getattr(X, "ambient", X)
        return amb.zero()
    return out


def betti_numbers(X, upto: int) -> dict:
    return {n: cohomology(X, n).dim for n in range(0, upto + 1)}


def induced_map(f: LinearMap, HA: Cohomology, HB: Cohomology):
    """Matrix rows of H(f): image class coords of each source representative."""
    rows = []
    for rep in HA.reps:
        c = HB.cls(f(rep))
        if c is None:
            raise AlgebraError("map does not descend to cohomology")
        rows.append(c)
    return rows


def is_quasi_iso(f: LinearMap, upto: int, strict: bool = True) -> bool:
    for n in range(0, upto + 1):
        HA = cohomology(f.source, n, strict=strict)
        HB = cohomology(f.target, n, strict=strict)
        rows = induced_map(f, HA, HB)
        if not linalg.is_isomorphism(rows, HA.dim, HB.dim):
            return False
    return True


def quasi_iso_report(f: LinearMap, upto: int) -> dict:
    """Per-degree dims of source/target cohomology and rank of the induced map."""
    out = {}
    for n in range(0, upto + 1):
        HA = cohomology(f.source, n)
        HB = cohomology(f.target, n)
        rows = induced_map(f, HA, HB)
        out[n] = {"dim_source": HA.dim, "dim_target": HB.dim,
                  "rank": linalg.rank(rows, HB.dim),
                  "iso": linalg.is_isomorphism(rows, HA.dim, HB.dim)}
    return out
