"""Transfer-matrix generating functions for weighted automata.

The series of a partial DFA with start e1 and accepting indicator u is
u^T (I - sum_a w(a) M_a)^{-1} e1 where M_a(i,j) = 1 iff j --a--> i.
"""

from .exactalg import MPoly, RatFun, linear_solve_ratfun, series_expand, table_mismatches
from .automata import dp_count


class WeightFn:
    """Symbol -> monomial weight over a fixed variable set."""

    __slots__ = ("alphabet", "vars", "exps")

    def __init__(self, alphabet, vars, exps):
        self.alphabet = alphabet
        self.vars = vars
        self.exps = dict(exps)
        for name in alphabet.names:
            if name not in self.exps:
                raise ValueError("no weight for symbol %r" % name)

    @classmethod
    def standard(cls, alphabet, vars):
        """Content letters weigh t; class-k letters weigh the k-th size variable."""
        classes = alphabet.count_classes()
        size_names = vars.names[1:]
        if len(size_names) < len(classes):
            raise ValueError("not enough size variables for %r" % (classes,))
        exps = {}
        for name in alphabet.names:
            kind = alphabet.kind(name)
            e = [0] * len(vars)
            if kind == ("content",):
                e[0] = 1
            else:
                e[kind[1]] = 1
            exps[name] = tuple(e)
        return cls(alphabet, vars, exps)

    def monomial(self, name):
        return MPoly.monomial(self.vars, self.exps[name])


def transfer_matrix(dfa, weights):
    """I - sum_a w(a) M_a as a dense MPoly matrix in DFA state order."""
    vs = weights.vars
    r = dfa.r
    mat = [[MPoly.zero(vs) for _ in range(r)] for _ in range(r)]
    for i in range(r):
        mat[i][i] = MPoly.const(vs, 1)
    for (j, sym), i in dfa.trans.items():
        mat[i][j] = mat[i][j] - weights.monomial(sym)
    return mat


def transfer_series(dfa, weights):
    """Exact generating function of accepted words, one variable per weight axis."""
    mat = transfer_matrix(dfa, weights)
    vs = weights.vars
    rhs = [RatFun.const(vs, 1 if i == dfa.start else 0) for i in range(dfa.r)]
    x = linear_solve_ratfun(mat, rhs)
    total = RatFun.const(vs, 0)
    for q in sorted(dfa.accepts):
        total = total + x[q]
    return total


def series_check(dfa, weights, dmax, size_bounds):
    """Expand the transfer series and compare against direct word counting."""
    f = transfer_series(dfa, weights)
    bounds = (dmax,) + tuple(size_bounds)
    expanded = series_expand(f, bounds)
    counted = dp_count(dfa, dmax, size_bounds)
    bad = table_mismatches(expanded, counted)
    return not bad, bad
