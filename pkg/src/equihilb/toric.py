"""Toric side of the window presentations.

Edge variables x[i,j] map to x_i*x_j; binomials live in the kernel iff both
sides have equal images, iff every vertex weight of the difference graph
vanishes (diagonal edges count twice).  Includes the recursive kernel
family for the gap map, quadric families for the square maps, fiber-graph
connectivity, and degree-reducing binomial reduction.
"""

import itertools

from .monoracle import mono_freeze, mono_str


def edge_valid(kind, c, n, edge):
    i, j = edge
    if i < 1 or j < i:
        return False
    if kind == "gap":
        if j - i not in (1, 2):
            return False
    elif kind == "window-squares":
        if j - i > c:
            return False
    else:
        raise ValueError("unknown map kind %r" % kind)
    return n is None or i <= n


class Binomial:
    """x^u - x^v over edge variables, stored with disjoint supports."""

    __slots__ = ("u", "v")

    def __init__(self, u, v, cancel=True):
        u = {e: k for e, k in u.items() if k}
        v = {e: k for e, k in v.items() if k}
        if cancel:
            for e in set(u) & set(v):
                t = min(u[e], v[e])
                u[e] -= t
                v[e] -= t
                if not u[e]:
                    del u[e]
                if not v[e]:
                    del v[e]
        self.u = u
        self.v = v

    def is_zero(self):
        return not self.u and not self.v

    def degree(self):
        return max(sum(self.u.values()), sum(self.v.values()))

    def weights(self):
        w = dict(self.u)
        for e, k in self.v.items():
            w[e] = w.get(e, 0) - k
            if not w[e]:
                del w[e]
        return w

    def flipped(self):
        return Binomial(dict(self.v), dict(self.u), cancel=False)

    def shifted(self, k):
        return Binomial(
            {(i + k, j + k): e for (i, j), e in self.u.items()},
            {(i + k, j + k): e for (i, j), e in self.v.items()},
            cancel=False,
        )

    def min_vertex(self):
        verts = [i for (i, j) in self.u] + [i for (i, j) in self.v]
        return min(verts) if verts else 1

    def max_vertex(self):
        verts = [j for (i, j) in self.u] + [j for (i, j) in self.v]
        return max(verts) if verts else 1

    def key(self):
        a = tuple(sorted(self.u.items()))
        b = tuple(sorted(self.v.items()))
        return (a, b) if a <= b else (b, a)

    def __eq__(self, other):
        return isinstance(other, Binomial) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Binomial(%s)" % binomial_str(self)


def edge_str(m):
    bits = []
    for e in sorted(m):
        name = "x[%d,%d]" % e
        bits.append(name if m[e] == 1 else "%s^%d" % (name, m[e]))
    return "*".join(bits) if bits else "1"


def binomial_str(b):
    if b.is_zero():
        return "0"
    return "%s - %s" % (edge_str(b.u), edge_str(b.v))


def presentation_image(mono):
    """x-monomial image of an edge monomial; diagonal edges square."""
    out = {}
    for (i, j), e in mono.items():
        out[i] = out.get(i, 0) + e
        out[j] = out.get(j, 0) + e
    return out


def vertex_weights(weights):
    out = {}
    for (i, j), w in weights.items():
        out[i] = out.get(i, 0) + w
        out[j] = out.get(j, 0) + w
    return {v: w for v, w in out.items() if w}


def kernel_test(b):
    return not vertex_weights(b.weights())


def g2():
    return Binomial({(1, 2): 1, (3, 4): 1}, {(1, 3): 1, (2, 4): 1})


class GenElement:
    """One member of the recursive kernel family for the gap map, reached from
    the base element by a sequence of 1- and 2-steps."""

    __slots__ = ("s", "w")

    def __init__(self, s, w):
        self.s = tuple(s)
        self.w = dict(w)

    @classmethod
    def base(cls):
        return cls(
            (),
            {
                (1, 2): 1,
                (1, 3): -1,
                (2, 3): -1,
                (3, 5): 2,
                (5, 6): -1,
                (5, 7): -1,
                (6, 7): 1,
            },
        )

    def label(self):
        return "g(%s)" % ",".join(str(x) for x in self.s)

    def span(self):
        return max(j for (i, j) in self.w)

    def degree(self):
        return sum(w for w in self.w.values() if w > 0)

    def binomial(self):
        u = {e: w for e, w in self.w.items() if w > 0}
        v = {e: -w for e, w in self.w.items() if w < 0}
        return Binomial(u, v, cancel=False)

    def child(self, step):
        """Append a 1-step (span +2) or 2-step (span +3) to the sequence."""
        k = self.span()
        new = {}
        for (i, j), w in self.w.items():
            if i <= k - 4 and j <= k - 2:
                new[(i, j)] = new.get((i, j), 0) + w
        if step == 1:
            w = self.w.get((k - 2, k))
            if w:
                new[(k - 2, k)] = new.get((k - 2, k), 0) + 2 * w
            for (i, j), w in self.w.items():
                if i + 2 >= k and j + 2 >= k + 1:
                    new[(i + 2, j + 2)] = new.get((i + 2, j + 2), 0) - w
        elif step == 2:
            w = self.w.get((k - 2, k - 1))
            if w:
                new[(k - 2, k - 1)] = new.get((k - 2, k - 1), 0) + 2 * w
                new[(k - 1, k + 1)] = new.get((k - 1, k + 1), 0) - 2 * w
            for (i, j), w in self.w.items():
                if i + 3 >= k + 1 and j + 3 >= k + 2:
                    new[(i + 3, j + 3)] = new.get((i + 3, j + 3), 0) + w
        else:
            raise ValueError("step must be 1 or 2")
        return GenElement(self.s + (step,), {e: w for e, w in new.items() if w})

    def structure_check(self):
        """Bottom triangle, alternating doubled chain, top triangle."""
        k = self.span()
        w = self.w
        bottom = [(1, 2), (1, 3), (2, 3)]
        top = [(k - 2, k - 1), (k - 2, k), (k - 1, k)]
        if w.get((1, 2)) != 1 or w.get((1, 3)) != -1 or w.get((2, 3)) != -1:
            return False
        eps = w.get((k - 2, k - 1))
        if eps not in (1, -1):
            return False
        if w.get((k - 2, k)) != eps or w.get((k - 1, k)) != -eps:
            return False
        middle = sorted(e for e in w if e not in bottom and e not in top)
        if not middle or middle[0] != (3, 5) or middle[-1] != (k - 4, k - 2):
            return False
        sign = 1
        prev = None
        for e in middle:
            if w[e] != 2 * sign:
                return False
            if prev is not None:
                if not (prev[0] < e[0] or prev[1] < e[1]):
                    return False
                if prev[1] == e[0] and prev[1] - prev[0] == 1 and e[1] - e[0] == 1:
                    return False
            prev = e
            sign = -sign
        for e in w:
            if not edge_valid("gap", None, None, e):
                return False
        return kernel_test(self.binomial())


def build_gen_family(max_degree=None, max_span=None):
    """g2 plus every recursive element within the given degree/span budget."""
    base = GenElement.base()
    out = []
    frontier = [base]
    while frontier:
        nxt = []
        for g in frontier:
            if max_degree is not None and g.degree() > max_degree:
                continue
            if max_span is not None and g.span() > max_span:
                continue
            out.append(g)
            nxt.append(g.child(1))
            nxt.append(g.child(2))
        frontier = nxt
    out.sort(key=lambda g: (g.degree(), g.s))
    return out


def quadric_family(c, n):
    """Window-valid kernel quadrics of the square map with bandwidth c."""
    out = []
    seen = set()
    for i in range(1, n + 1):
        for j in range(i, i + c):
            for k in range(j + 1, i + c + 1):
                lo = max(i + 1, j - c, k - c)
                hi = min(j + c, k + c)
                for ell in range(lo, hi + 1):
                    e1 = (i, j)
                    e2 = (min(k, ell), max(k, ell))
                    e3 = (i, k)
                    e4 = (min(j, ell), max(j, ell))
                    edges = [e1, e2, e3, e4]
                    if not all(edge_valid("window-squares", c, n, e) for e in edges):
                        continue
                    u = {}
                    for e in (e1, e2):
                        u[e] = u.get(e, 0) + 1
                    v = {}
                    for e in (e3, e4):
                        v[e] = v.get(e, 0) + 1
                    b = Binomial(u, v)
                    if b.is_zero():
                        continue
                    if b.key() in seen:
                        continue
                    seen.add(b.key())
                    out.append(b)
    out.sort(key=lambda b: b.key())
    return out


def window_edges(kind, c, n):
    out = []
    for i in range(1, n + 1):
        if kind == "gap":
            spans = (1, 2)
        else:
            spans = range(c + 1)
        for sp in spans:
            out.append((i, i + sp))
    return out


def enumerate_fiber(kind, c, n, target):
    """All window edge-monomials with the given x-monomial image."""
    rem = {k: e for k, e in target.items() if e}
    out = []
    acc = []

    def choices(a):
        if kind == "gap":
            return [(a, a + 1), (a, a + 2)]
        return [(a, a + sp) for sp in range(c + 1)]

    def rec(floor):
        if not rem:
            out.append(mono_freeze(_edge_multiset(acc)))
            return
        a = min(rem)
        if a > n:
            return
        for e in choices(a):
            if e < floor:
                continue
            i, j = e
            if i == j:
                if rem.get(i, 0) < 2:
                    continue
            elif not (rem.get(i, 0) and rem.get(j, 0)):
                continue
            for k in {i, j}:
                rem[k] -= 2 if i == j else 1
                if not rem[k]:
                    del rem[k]
            acc.append(e)
            rec(e)
            acc.pop()
            for k in {i, j}:
                rem[k] = rem.get(k, 0) + (2 if i == j else 1)

    rec((0, 0))
    return sorted(set(out))


def _edge_multiset(edges):
    m = {}
    for e in edges:
        m[e] = m.get(e, 0) + 1
    return m


def shifts_in_window(b, kind, c, n):
    """All shifts of b whose edges stay window-valid, labelled by offset."""
    lo = 1 - b.min_vertex()
    hi = n - max(i for (i, j) in list(b.u) + list(b.v))
    out = []
    for k in range(lo, hi + 1):
        s = b.shifted(k)
        if all(edge_valid(kind, c, n, e) for e in list(s.u) + list(s.v)):
            out.append((k, s))
    return out


class _UnionFind:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.p[ra] = rb
        return True


def fiber_report(kind, c, n, target, moves, use_shifts=True):
    """Connectivity of the fiber graph over the given target under the moves.

    moves: list of (label, Binomial).  With use_shifts every window-valid
    shift of each move is applied; labels get the offset appended.
    """
    fiber = enumerate_fiber(kind, c, n, target)
    index = {f: i for i, f in enumerate(fiber)}
    mat = []
    if use_shifts:
        for label, b in moves:
            for k, s in shifts_in_window(b, kind, c, n):
                mat.append(("%s%+d" % (label, k), s))
    else:
        mat = list(moves)
    uf = _UnionFind(len(fiber))
    used = set()
    for f in fiber:
        fd = dict(f)
        for label, b in mat:
            for u, v in ((b.u, b.v), (b.v, b.u)):
                if all(fd.get(e, 0) >= k for e, k in u.items()):
                    g = dict(fd)
                    for e, k in u.items():
                        g[e] -= k
                        if not g[e]:
                            del g[e]
                    for e, k in v.items():
                        g[e] = g.get(e, 0) + k
                    gf = mono_freeze(g)
                    if gf in index and uf.union(index[f], index[gf]):
                        used.add(label)
    comps = {}
    for f in fiber:
        comps.setdefault(uf.find(index[f]), []).append(f)
    components = sorted(sorted(_edge_mono_str(f) for f in comp) for comp in comps.values())
    return {
        "target": mono_str(target),
        "fiber_size": len(fiber),
        "components": components,
        "connected": len(components) <= 1,
        "moves_used": sorted(used),
    }


def _edge_mono_str(frozen):
    return edge_str(dict(frozen))


def reduce_binomial(h, moves):
    """Degree-reducing reduction of a kernel binomial by the given moves.

    Applies a move (or any shift) only when it strictly lowers the degree
    after cancelling; returns the zero binomial or the remainder.
    """
    if not kernel_test(h):
        raise ValueError("input binomial is not in the kernel")
    h = Binomial(dict(h.u), dict(h.v))
    while not h.is_zero():
        progress = False
        maxv = h.max_vertex()
        for _, b in moves:
            lo = 1 - b.min_vertex()
            hi = maxv - b.min_vertex()
            for k in range(lo, hi + 1):
                s = b.shifted(k)
                for u, v in ((s.u, s.v), (s.v, s.u)):
                    for a, bb in ((h.u, h.v), (h.v, h.u)):
                        if not all(a.get(e, 0) >= kk for e, kk in u.items()):
                            continue
                        cand = dict(a)
                        for e, kk in u.items():
                            cand[e] -= kk
                            if not cand[e]:
                                del cand[e]
                        for e, kk in v.items():
                            cand[e] = cand.get(e, 0) + kk
                        t = sum(min(cand.get(e, 0), bb.get(e, 0)) for e in cand)
                        if t > 0:
                            h = Binomial(cand, dict(bb))
                            progress = True
                            break
                    if progress:
                        break
                if progress:
                    break
            if progress:
                break
        if not progress:
            return h
    return h


def gen_degree_stats(nmin, nmax):
    """Max degree of the kernel family fitting window n vs the closed formula."""
    rows = []
    for n in range(nmin, nmax + 1):
        fam = build_gen_family(max_span=n + 1)
        computed = max([g.degree() for g in fam], default=0)
        if n >= 3:
            computed = max(computed, g2().degree())
        formula = (2 * n + 1) // 3
        rows.append(
            {"n": n, "computed": computed, "formula": formula, "equal": computed == formula}
        )
    return rows


def minimal_generator_degrees(kind, c, n, dmax):
    """Count minimal generators of the window kernel per degree via fibers.

    A fiber contributes (components - 1) minimal generators in its degree,
    components taken under the share-a-variable adjacency.
    """
    edges = window_edges(kind, c, n)
    out = {}
    for d in range(2, dmax + 1):
        total = 0
        fibers = {}
        for combo in itertools.combinations_with_replacement(range(len(edges)), d):
            m = _edge_multiset([edges[i] for i in combo])
            img = mono_freeze(presentation_image(m))
            fibers.setdefault(img, []).append(mono_freeze(m))
        for group in fibers.values():
            if len(group) < 2:
                continue
            uf = _UnionFind(len(group))
            supports = [set(e for e, _ in g) for g in group]
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    if supports[i] & supports[j]:
                        uf.union(i, j)
            comps = len({uf.find(i) for i in range(len(group))})
            total += comps - 1
        out[d] = total
    return out
