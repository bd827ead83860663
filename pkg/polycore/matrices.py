"""Exact linear algebra over QQ on top of sympy's DomainMatrix."""
import logging
from dataclasses import dataclass
from functools import cached_property

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    dm: DomainMatrix

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {
            i: {j: QQ.convert(v) for j, v in enumerate(r) if v}
            for i, r in enumerate(rows)
        }
        return cls.from_sparse(entries, (len(rows), cols))

    @classmethod
    def from_sparse(cls, entries, shape):
        """Build from {row: {col: value}}; missing entries are zero."""
        entries = {i: dict(r) for i, r in entries.items() if r}
        return cls(shape[0], shape[1], DomainMatrix(entries, shape, QQ))

    @classmethod
    def identity(cls, n):
        return cls.from_sparse({i: {i: QQ.one} for i in range(n)}, (n, n))

    @classmethod
    def zeros(cls, rows, cols):
        return cls.from_sparse({}, (rows, cols))

    @cached_property
    def _echelon(self):
        if self.rows == 0 or self.cols == 0:
            return [], ()
        reduced, pivots = self.dm.rref(method='GJ')
        dense = reduced.to_list()
        return dense[:len(pivots)], tuple(pivots)

    def rref(self):
        """Nonzero rows of the reduced row-echelon form and the pivot columns."""
        rows, pivots = self._echelon
        return [list(r) for r in rows], pivots

    def rank(self):
        return len(self._echelon[1])

    def nullspace(self):
        """Kernel basis, one vector per free column in increasing column order."""
        rows, pivots = self._echelon
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vector = [QQ.zero] * self.cols
            vector[free] = QQ.one
            for row, p in zip(rows, pivots):
                if row[free]:
                    vector[p] = -row[free]
            basis.append(tuple(vector))
        return basis

    def free_columns(self):
        """Non-pivot columns, increasing; kernel vector i has a 1 in free column i."""
        pivots = set(self._echelon[1])
        return tuple(j for j in range(self.cols) if j not in pivots)

    def transpose(self):
        return RatMatrix(self.cols, self.rows, self.dm.transpose())

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f'shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}')
        return RatMatrix(self.rows, other.cols, self.dm.matmul(other.dm))

    def row_vectors(self):
        return [tuple(r) for r in self.dm.to_list()]


def span_rank(vectors, dimension):
    """Dimension of the span of a list of vectors in QQ^dimension."""
    if not vectors:
        return 0
    return RatMatrix.from_rows(vectors, dimension).rank()


def independent_subset(vectors, dimension, start=()):
    """Indices of `vectors` that extend `start` greedily, in list order.

    The columns of [start | vectors] are row reduced once; pivot columns past
    the start block are the chosen vectors.
    """
    combined = list(start) + list(vectors)
    if not combined:
        return []
    columns = RatMatrix.from_rows(combined, dimension).transpose()
    _, pivots = columns.rref()
    offset = len(start)
    return [p - offset for p in pivots if p >= offset]


def annihilator(vectors, dimension):
    """Basis of the linear functionals vanishing on span(vectors)."""
    if not vectors:
        return [tuple(QQ.one if i == j else QQ.zero for j in range(dimension))
                for i in range(dimension)]
    return RatMatrix.from_rows(vectors, dimension).nullspace()


def contains(basis, vectors, dimension):
    """True when every vector lies in span(basis)."""
    base = span_rank(basis, dimension)
    return span_rank(list(basis) + list(vectors), dimension) == base
