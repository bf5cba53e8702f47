"""Exact linear algebra over Q and Q(i).

Dense work (determinants, echelon forms, kernels) goes through sympy's
DomainMatrix.  The positive-definiteness certificate needs every leading
principal minor, so it runs fraction-free (Bareiss) elimination on plain row
lists.
"""

import logging
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from .errors import ConstructionError, PreconditionError
from .freepoly import FieldMode

logger = logging.getLogger(__name__)

Rows = List[List[object]]


def to_matrix(rows: Sequence[Sequence[object]], field: FieldMode, ncols: Optional[int] = None) -> DomainMatrix:
    m = len(rows)
    n = len(rows[0]) if m else (ncols or 0)
    converted = [[field.convert(x) for x in row] for row in rows]
    for row in converted:
        if len(row) != n:
            raise PreconditionError("Ragged matrix rows")
    return DomainMatrix(converted, (m, n), field.domain)


def zeros(m: int, n: int, field: FieldMode) -> DomainMatrix:
    return DomainMatrix.zeros((m, n), field.domain).to_dense()


def identity(n: int, field: FieldMode) -> DomainMatrix:
    return DomainMatrix.eye(n, field.domain).to_dense()


def conjugate_transpose(M: DomainMatrix, field: FieldMode) -> DomainMatrix:
    rows = M.transpose().to_list()
    m, n = M.shape
    return DomainMatrix([[field.conjugate(x) for x in row] for row in rows], (n, m), field.domain)


def is_zero(M: DomainMatrix) -> bool:
    return all(not x for row in M.to_list() for x in row)


def is_hermitian(rows: Rows, field: FieldMode) -> bool:
    n = len(rows)
    return all(rows[i][j] == field.conjugate(rows[j][i]) for i in range(n) for j in range(n))


def trace(M: DomainMatrix, field: FieldMode):
    rows = M.to_list()
    total = field.zero
    for i in range(len(rows)):
        total = total + rows[i][i]
    return total


def bareiss_leading_minors(rows: Rows, field: FieldMode) -> List[object]:
    """Leading principal minors via Bareiss elimination without pivoting.

    Stops after the first vanishing minor, which is returned as the last entry.
    """
    n = len(rows)
    A = [list(r) for r in rows]
    prev = field.one
    minors = []
    for k in range(n):
        pivot = A[k][k]
        minors.append(pivot)
        if not pivot:
            break
        for i in range(k + 1, n):
            aik = A[i][k]
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * pivot - aik * A[k][j]) / prev
        prev = pivot
    return minors


def positive_definite(rows: Rows, field: FieldMode) -> Tuple[bool, List[object]]:
    """Exact PD test for a hermitian matrix; returns (verdict, leading minors)."""
    if not is_hermitian(rows, field):
        raise PreconditionError("Positive-definiteness test needs a hermitian matrix")
    minors = bareiss_leading_minors(rows, field)
    real = [field.real_part(m) for m in minors]
    ok = len(minors) == len(rows) and all(field.is_real(m) for m in minors) and all(r > 0 for r in real)
    return ok, minors


def rref(rows: Rows, field: FieldMode, ncols: int) -> Tuple[Rows, Tuple[int, ...]]:
    if not rows:
        return [], ()
    R, pivots = to_matrix(rows, field, ncols).rref()
    return R.to_list(), tuple(pivots)


def rank(rows: Rows, field: FieldMode, ncols: int) -> int:
    return len(rref(rows, field, ncols)[1])


def nullspace(rows: Rows, field: FieldMode, ncols: int) -> Rows:
    """Basis of {v : A v = 0}, one vector per free column in increasing order."""
    if not rows:
        return [[field.one if j == i else field.zero for j in range(ncols)] for i in range(ncols)]
    return to_matrix(rows, field, ncols).nullspace(divide_last=True).to_list()


def abs_bound(z, field: FieldMode):
    """Rational upper bound |Re z| + |Im z| on the modulus."""
    re, im = field.real_part(z), field.imag_part(z)
    return abs(re) + abs(im)


def max_row_sum(M: DomainMatrix, field: FieldMode):
    rows = M.to_list()
    best = field.real_part(field.zero)
    for row in rows:
        s = sum((abs_bound(x, field) for x in row), field.real_part(field.zero))
        if s > best:
            best = s
    return best


class SparseEchelon:
    """Row echelon form of sparse vectors keyed by sortable labels.

    The pivot of a row is its largest key under ``key``; rows are kept monic.
    """

    def __init__(self, field: FieldMode, key=None):
        self.field = field
        self.key = key or (lambda k: k)
        self.rows: Dict[Hashable, Dict[Hashable, object]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Dict[Hashable, object]) -> Dict[Hashable, object]:
        vec = {k: c for k, c in vec.items() if c}
        while True:
            hits = [k for k in vec if k in self.rows]
            if not hits:
                return vec
            top = max(hits, key=self.key)
            factor = vec[top]
            for k, c in self.rows[top].items():
                s = vec.get(k, self.field.zero) - factor * c
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)

    def add(self, vec: Dict[Hashable, object]) -> bool:
        """Insert vec; returns False when it was already in the span."""
        r = self.reduce(vec)
        if not r:
            return False
        pivot = max(r, key=self.key)
        inv = self.field.one / r[pivot]
        self.rows[pivot] = {k: c * inv for k, c in r.items()}
        return True

    def contains(self, vec: Dict[Hashable, object]) -> bool:
        return not self.reduce(vec)

    def pivots(self) -> List[Hashable]:
        return sorted(self.rows, key=self.key)

    def reduced_rows(self) -> List[Tuple[Hashable, Dict[Hashable, object]]]:
        """Fully reduced echelon basis in increasing pivot order."""
        done: Dict[Hashable, Dict[Hashable, object]] = {}
        for p in self.pivots():
            row = dict(self.rows[p])
            changed = True
            while changed:
                changed = False
                for k in sorted((k for k in row if k != p and k in done), key=self.key, reverse=True):
                    factor = row.get(k)
                    if not factor:
                        continue
                    for kk, c in done[k].items():
                        s = row.get(kk, self.field.zero) - factor * c
                        if s:
                            row[kk] = s
                        else:
                            row.pop(kk, None)
                    changed = True
            done[p] = row
        return [(p, done[p]) for p in self.pivots()]


class GramFactorization:
    """Incremental LDL^H factorisation of a hermitian positive definite Gram matrix.

    Bordering by a column r and corner t has determinant det(G) * s with the
    Schur complement s = t - r^H G^-1 r; a candidate is independent iff s != 0.
    """

    def __init__(self, field: FieldMode):
        self.field = field
        self.lower: List[List[object]] = []
        self.diag: List[object] = []

    def __len__(self):
        return len(self.diag)

    def _forward(self, b: Sequence[object]) -> List[object]:
        y = []
        for i in range(len(self.diag)):
            s = b[i]
            for j in range(i):
                s = s - self.lower[i][j] * y[j]
            y.append(s)
        return y

    def schur_complement(self, r: Sequence[object], t) -> object:
        conj = self.field.conjugate
        y = self._forward(r)
        s = t
        for j, yj in enumerate(y):
            s = s - conj(yj) * yj / self.diag[j]
        return s

    def append(self, r: Sequence[object], t) -> object:
        """Border the factorisation; returns the Schur complement (the new pivot)."""
        conj = self.field.conjugate
        y = self._forward(r)
        s = t
        for j, yj in enumerate(y):
            s = s - conj(yj) * yj / self.diag[j]
        if not s:
            raise ConstructionError("Bordered Gram matrix is singular")
        self.lower.append([conj(yj) / self.diag[j] for j, yj in enumerate(y)])
        self.diag.append(s)
        return s

    def solve(self, b: Sequence[object]) -> List[object]:
        """Solve G c = b."""
        conj = self.field.conjugate
        n = len(self.diag)
        z = [yi / self.diag[i] for i, yi in enumerate(self._forward(b))]
        c = [self.field.zero] * n
        for i in reversed(range(n)):
            s = z[i]
            for j in range(i + 1, n):
                s = s - conj(self.lower[j][i]) * c[j]
            c[i] = s
        return c
