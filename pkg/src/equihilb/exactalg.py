"""Exact integer polynomial / rational function arithmetic.

MPoly is a sparse exponent-dict polynomial over a fixed variable set.
RatFun is a quotient of MPolys that is never gcd-reduced; equality is
cross multiplication and canonicalization only strips integer content
and fixes the denominator's leading sign.
"""

import ast
import itertools
from fractions import Fraction


class VarSet:
    """Ordered tuple of variable names, shared by all polys that interoperate."""

    __slots__ = ("names", "index")

    def __init__(self, names):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.index = {x: i for i, x in enumerate(self.names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, VarSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "VarSet%r" % (self.names,)

    def zero_exp(self):
        return (0,) * len(self.names)


TS = VarSet(("t", "s"))
TSS = VarSet(("t", "s1", "s2"))


class MPoly:
    """Multivariate polynomial with integer coefficients, sparse dict storage."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = vars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[e] = self.terms.get(e, 0) + c
                    if not self.terms[e]:
                        del self.terms[e]

    @classmethod
    def zero(cls, vars):
        return cls(vars)

    @classmethod
    def const(cls, vars, c):
        return cls(vars, {vars.zero_exp(): c})

    @classmethod
    def var(cls, vars, name, power=1):
        e = [0] * len(vars)
        e[vars.index[name]] = power
        return cls(vars, {tuple(e): 1})

    @classmethod
    def monomial(cls, vars, exp, coeff=1):
        return cls(vars, {tuple(exp): coeff})

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get(self.vars.zero_exp(), 0)

    def _chk(self, other):
        if self.vars != other.vars:
            raise ValueError("mixed variable sets")

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = MPoly.const(self.vars, other)
        self._chk(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return MPoly(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = MPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = MPoly.const(self.vars, other)
        self._chk(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MPoly(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def leading(self):
        # lex-largest exponent tuple; used for canonical signs and divexact
        return max(self.terms)

    def evaluate(self, point):
        # point maps variable name -> number; exact over Fraction
        vals = [Fraction(point.get(x, 0)) for x in self.vars.names]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = Fraction(c)
            for b, k in zip(vals, e):
                v *= b**k
            total += v
        return total

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __repr__(self):
        return "MPoly(%s)" % poly_to_text(self)

    def __str__(self):
        return poly_to_text(self)


def _gcd_all(values):
    g = 0
    for v in values:
        g = _gcd2(g, abs(v))
        if g == 1:
            break
    return g


def _gcd2(a, b):
    while b:
        a, b = b, a % b
    return a


def divexact(a, b):
    """Divide a by b, both MPoly, requiring the division to be exact."""
    if b.is_zero():
        raise ZeroDivisionError("divexact by zero")
    if a.is_zero():
        return MPoly.zero(a.vars)
    rem = dict(a.terms)
    q = {}
    eb = b.leading()
    cb = b.terms[eb]
    while rem:
        er = max(rem)
        cr = rem[er]
        eq = tuple(x - y for x, y in zip(er, eb))
        if any(x < 0 for x in eq) or cr % cb:
            raise ArithmeticError("inexact division")
        cq = cr // cb
        q[eq] = q.get(eq, 0) + cq
        for e2, c2 in b.terms.items():
            e = tuple(x + y for x, y in zip(eq, e2))
            rem[e] = rem.get(e, 0) - cq * c2
            if not rem[e]:
                del rem[e]
    return MPoly(a.vars, q)


class RatFun:
    """Quotient of two MPolys.  Never reduced by polynomial gcd; equality is
    cross multiplication.  Canonical form: joint integer content 1, leading
    denominator coefficient positive, zero stored as 0/1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, int):
            num = MPoly.const(den.vars if den is not None else TS, num)
        if den is None:
            den = MPoly.const(num.vars, 1)
        if isinstance(den, int):
            den = MPoly.const(num.vars, den)
        if num.vars != den.vars:
            raise ValueError("mixed variable sets")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = MPoly.const(num.vars, 1)
        else:
            g = _gcd_all(itertools.chain(num.terms.values(), den.terms.values()))
            if den.terms[den.leading()] < 0:
                g = -g
            if g != 1:
                num = MPoly(num.vars, {e: c // g for e, c in num.terms.items()})
                den = MPoly(den.vars, {e: c // g for e, c in den.terms.items()})
        self.num = num
        self.den = den

    @property
    def vars(self):
        return self.num.vars

    @classmethod
    def const(cls, vars, c):
        return cls(MPoly.const(vars, c))

    @classmethod
    def var(cls, vars, name):
        return cls(MPoly.var(vars, name))

    def is_zero(self):
        return self.num.is_zero()

    def _lift(self, other):
        if isinstance(other, int):
            return RatFun.const(self.vars, other)
        if isinstance(other, MPoly):
            return RatFun(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        other = self._lift(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, MPoly)):
            other = self._lift(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __repr__(self):
        return "RatFun(%s)" % ratfun_to_text(self)

    def __str__(self):
        return ratfun_to_text(self)


def rat_equal(a, b):
    return a == b


class CountTable:
    """Dense-by-intent integer table keyed by exponent/profile tuples."""

    __slots__ = ("axes", "bounds", "data")

    def __init__(self, axes, bounds, data=None):
        self.axes = tuple(axes)
        self.bounds = tuple(bounds)
        self.data = dict(data) if data else {}

    def get(self, key):
        return self.data.get(tuple(key), 0)

    def __getitem__(self, key):
        return self.data.get(tuple(key), 0)

    def set(self, key, value):
        key = tuple(key)
        if value:
            self.data[key] = value
        elif key in self.data:
            del self.data[key]

    def keys_sorted(self):
        return sorted(self.data)

    def __eq__(self, other):
        if not isinstance(other, CountTable):
            return NotImplemented
        return self.bounds == other.bounds and self.data == other.data

    def __repr__(self):
        return "CountTable(axes=%r, bounds=%r, %d nonzero)" % (
            self.axes,
            self.bounds,
            len(self.data),
        )

    def to_csv(self):
        lines = [",".join(self.axes + ("count",))]
        for k in sorted(self.data):
            lines.append(",".join(str(x) for x in k) + "," + str(self.data[k]))
        return "\n".join(lines) + "\n"


def table_mismatches(a, b):
    """Cells where two tables differ, over the union of their supports."""
    out = []
    for k in sorted(set(a.data) | set(b.data)):
        if a.data.get(k, 0) != b.data.get(k, 0):
            out.append((k, a.data.get(k, 0), b.data.get(k, 0)))
    return out


def series_expand(f, bounds, axes=None):
    """Taylor coefficients of RatFun f in the box exp <= bounds (componentwise).

    Requires the denominator's constant term to be nonzero.  Computed by the
    recurrence c0*S[e] = N[e] - sum_{0<e'<=e} D[e']*S[e-e'] over Fractions;
    integer coefficients come back as ints.
    """
    vs = f.vars
    if len(bounds) != len(vs):
        raise ValueError("bounds arity mismatch")
    c0 = f.den.constant_term()
    if c0 == 0:
        raise ArithmeticError("denominator vanishes at the origin")
    dterms = {e: c for e, c in f.den.terms.items() if any(e)}
    table = {}
    axes = tuple(axes) if axes else vs.names
    out = CountTable(axes, bounds)
    for e in itertools.product(*[range(b + 1) for b in bounds]):
        acc = Fraction(f.num.terms.get(e, 0))
        for ed, cd in dterms.items():
            prev = tuple(a - b for a, b in zip(e, ed))
            if any(x < 0 for x in prev):
                continue
            acc -= cd * table[prev]
        val = acc / c0
        table[e] = val
        if val:
            out.set(e, int(val) if val.denominator == 1 else val)
    return out


def linear_solve_ratfun(mat, rhs):
    """Solve mat*x = rhs exactly, entries RatFun or MPoly.

    Fraction-free Gauss-Jordan: each row is cleared to a common-denominator
    MPoly row first, then one-step Bareiss elimination runs over all rows at
    every pivot, with every interior division exact.  The result components
    are RatFun(b_i, diag_i); no polynomial division is ever performed.
    """
    n = len(mat)
    if n == 0:
        return []
    vs = None
    for row in mat:
        for x in row:
            if isinstance(x, (MPoly, RatFun)):
                vs = x.vars
                break
        if vs:
            break
    if vs is None:
        raise ValueError("no polynomial entries")

    def as_rat(x):
        if isinstance(x, RatFun):
            return x
        if isinstance(x, MPoly):
            return RatFun(x)
        return RatFun.const(vs, x)

    aug = []
    for i in range(n):
        row = [as_rat(x) for x in mat[i]] + [as_rat(rhs[i])]
        dens = [x.den for x in row]
        cleared = []
        for j, x in enumerate(row):
            p = x.num
            for k, d in enumerate(dens):
                if k != j:
                    p = p * d
            cleared.append(p)
        aug.append(cleared)

    one = MPoly.const(vs, 1)
    prev = one
    for k in range(n):
        if aug[k][k].is_zero():
            for r in range(k + 1, n):
                if not aug[r][k].is_zero():
                    aug[k], aug[r] = aug[r], aug[k]
                    break
            else:
                raise ArithmeticError("singular matrix at pivot %d" % k)
        piv = aug[k][k]
        for i in range(n):
            if i == k:
                continue
            lead = aug[i][k]
            for j in range(n + 1):
                aug[i][j] = divexact(piv * aug[i][j] - lead * aug[k][j], prev)
        prev = piv
    return [RatFun(aug[i][n], aug[i][i]) for i in range(n)]


# ---------------------------------------------------------------------------
# text syntax: integer coefficients, + - * ^, parentheses, named variables


def parse_poly(vars, text):
    """Parse '(1-t)^2 - s' style text into an MPoly."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as e:
        raise ValueError("bad polynomial text: %s" % text) from e
    return _from_ast(vars, tree.body)


def _from_ast(vars, node):
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _from_ast(vars, node.left)
            if not isinstance(node.right, ast.Constant) or not isinstance(
                node.right.value, int
            ):
                raise ValueError("exponent must be an integer literal")
            return base ** node.right.value
        left = _from_ast(vars, node.left)
        right = _from_ast(vars, node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        raise ValueError("unsupported operator")
    if isinstance(node, ast.UnaryOp):
        if isinstance(node.op, ast.USub):
            return -_from_ast(vars, node.operand)
        if isinstance(node.op, ast.UAdd):
            return _from_ast(vars, node.operand)
        raise ValueError("unsupported unary operator")
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int):
            return MPoly.const(vars, node.value)
        raise ValueError("non-integer constant")
    if isinstance(node, ast.Name):
        if node.id not in vars.index:
            raise ValueError("unknown variable %r" % node.id)
        return MPoly.var(vars, node.id)
    raise ValueError("unsupported syntax node %r" % node)


def parse_ratfun(vars, text):
    """Parse '(num)/(den)' or a bare polynomial into a RatFun."""
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            return RatFun(parse_poly(vars, text[:i]), parse_poly(vars, text[i + 1 :]))
    return RatFun(parse_poly(vars, text))


def _exp_key(e):
    return (sum(e), e)


def poly_to_text(p):
    if p.is_zero():
        return "0"
    bits = []
    for e in sorted(p.terms, key=_exp_key):
        c = p.terms[e]
        factors = []
        for name, k in zip(p.vars.names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append("%s^%d" % (name, k))
        if not factors:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = str(abs(c)) + "*" + "*".join(factors)
        if not bits:
            bits.append(("-" if c < 0 else "") + body)
        else:
            bits.append(("- " if c < 0 else "+ ") + body)
    return " ".join(bits)


def ratfun_to_text(f):
    if f.den == MPoly.const(f.vars, 1):
        return poly_to_text(f.num)
    return "(%s)/(%s)" % (poly_to_text(f.num), poly_to_text(f.den))
