"""Brute-force dim AR(f)_k by plain undetermined coefficients.

Shares nothing with the degreewise machinery in syzygies.py: the unknown
coefficient triple is written symbolically, the syzygy expanded, and the rank
of the resulting linear system taken directly.
"""
from sympy import QQ, Poly, expand, linear_eq_to_matrix, symbols
from sympy.polys.matrices import DomainMatrix

from polycore.polys import GENS, monomials


def dense_syzygy_dimension(f, k):
    fx, fy, fz = (f.poly.diff(g).as_expr() for g in GENS)
    basis = [GENS[0] ** i * GENS[1] ** j * GENS[2] ** l for i, j, l in monomials(k)]
    a = symbols(f'a0:{len(basis)}')
    b = symbols(f'b0:{len(basis)}')
    c = symbols(f'c0:{len(basis)}')
    unknowns = list(a) + list(b) + list(c)
    A = sum(s * m for s, m in zip(a, basis))
    B = sum(s * m for s, m in zip(b, basis))
    C = sum(s * m for s, m in zip(c, basis))
    syzygy = expand(A * fx + B * fy + C * fz)
    if syzygy == 0:
        return len(unknowns)
    equations = Poly(syzygy, *GENS).coeffs()
    system, _ = linear_eq_to_matrix(equations, unknowns)
    _, pivots = DomainMatrix.from_Matrix(system).convert_to(QQ).to_sparse().rref(method='GJ')
    return len(unknowns) - len(pivots)
