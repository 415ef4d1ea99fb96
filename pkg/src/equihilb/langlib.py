"""Built-in counted languages for algebra filtrations.

Each language bundles a definitional membership predicate, a hand-coded or
constructed partial DFA, standard weights, and the size-variable offset
relating word counts to algebra dimensions (window n counts words with
n-1 letters of the size class).
"""

from .exactalg import TS, TSS, MPoly, RatFun, parse_ratfun
from .automata import (
    Alphabet,
    Dfa,
    Nfa,
    REps,
    RStar,
    determinize_trim_minimize,
    hom_preimage,
    intersect,
    language_agrees,
    minimize,
    rx_any,
    rx_cat,
    RSym,
)
from .genfun import WeightFn, transfer_series


class FiltrationLanguage:
    """A language of weighted words standing for a filtration of algebras."""

    def __init__(
        self,
        name,
        alphabet,
        vars,
        dfa,
        predicate,
        offset_exp,
        regex=None,
        alt_dfa=None,
        reference_series=(),
        notes="",
        checked=False,
        check_len=6,
    ):
        self.name = name
        self.alphabet = alphabet
        self.vars = vars
        self.dfa = dfa
        self.predicate = predicate
        self.offset_exp = tuple(offset_exp)
        self.regex = regex
        self.alt_dfa = alt_dfa
        self.reference_series = list(reference_series)
        self.notes = notes
        self.weights = WeightFn.standard(alphabet, vars)
        self._transfer = None
        if checked:
            ok, bad, _ = self.check(check_len)
            if not ok:
                raise AssertionError(
                    "%s: predicate and automaton disagree at %r" % (name, bad)
                )

    def check(self, maxlen):
        return language_agrees(self.dfa, self.predicate, maxlen)

    def transfer(self):
        if self._transfer is None:
            self._transfer = transfer_series(self.dfa, self.weights)
        return self._transfer

    def offset(self):
        return RatFun(MPoly.monomial(self.vars, self.offset_exp))

    def series(self):
        """Equivariant Hilbert series: size-offset times the transfer series."""
        return self.offset() * self.transfer()

    def alt_series(self):
        if self.alt_dfa is None:
            return None
        return transfer_series(self.alt_dfa, self.weights)

    def __repr__(self):
        return "FiltrationLanguage(%s)" % self.name


def _single_alphabet(tau, alphas):
    return Alphabet([(tau, ("count", 1))] + [(a, ("content",)) for a in alphas])


def lang_poly_ring(c, tau="tau", alpha="a"):
    """Words over tau and a1..ac where adjacent content letters never descend.

    Counts monomials of free polynomial rings on a c x n variable grid.
    """
    if c < 1:
        raise ValueError("need c >= 1")
    alphas = ["%s%d" % (alpha, i) for i in range(1, c + 1)]
    alphabet = _single_alphabet(tau, alphas)
    idx = {a: i + 1 for i, a in enumerate(alphas)}
    # state 0: fresh after tau; state i: just read a_i
    trans = {(0, tau): 0}
    for a in alphas:
        trans[(0, a)] = idx[a]
    for a in alphas:
        i = idx[a]
        trans[(i, tau)] = 0
        for b in alphas:
            if idx[b] >= i:
                trans[(i, b)] = idx[b]
    dfa = Dfa(alphabet, c + 1, 0, set(range(c + 1)), trans, [str(q + 1) for q in range(c + 1)])

    def predicate(word):
        prev = None
        for sym in word:
            if sym == tau:
                prev = None
            else:
                i = idx[sym]
                if prev is not None and prev > i:
                    return False
                prev = i
        return True

    t = MPoly.var(TS, "t")
    s = MPoly.var(TS, "s")
    closed = RatFun(MPoly.const(TS, 1), (1 - t) ** c - s)
    return FiltrationLanguage(
        "poly-ring(%d)" % c,
        alphabet,
        TS,
        dfa,
        predicate,
        (0, 1),
        reference_series=[("closed form", closed)],
    )


def lang_window_squares(c, tau="tau", alpha="a"):
    """Words over tau and a0..ac where each ai owes i taus before the next aj.

    Counts monomials of the algebras generated by x_i*x_{i+j}, 0 <= j <= c.
    """
    if c < 0:
        raise ValueError("need c >= 0")
    alphas = ["%s%d" % (alpha, i) for i in range(c + 1)]
    alphabet = _single_alphabet(tau, alphas)
    states = [(i, j) for i in range(c + 1) for j in range(i + 1)]
    states.sort()
    idx = {st: q for q, st in enumerate(states)}
    trans = {}
    for (i, j) in states:
        if i == j:
            trans[(idx[(i, j)], tau)] = idx[(i, j)]
            for k in range(c + 1):
                trans[(idx[(i, j)], alphas[k])] = idx[(k, 0)]
        else:
            trans[(idx[(i, j)], tau)] = idx[(i, j + 1)]
    names = ["%d%d" % st for st in states]
    dfa = Dfa(alphabet, len(states), idx[(0, 0)], set(range(len(states))), trans, names)
    narrow = {idx[(i, 0)] for i in range(c + 1)} | {idx[(i, i)] for i in range(c + 1)}
    alt_dfa = Dfa(alphabet, len(states), idx[(0, 0)], narrow, trans, names)
    aidx = {a: i for i, a in enumerate(alphas)}

    def predicate(word):
        owed = None
        run = 0
        for sym in word:
            if sym == tau:
                run += 1
            else:
                if owed is not None and run < owed:
                    return False
                owed = aidx[sym]
                run = 0
        return True

    # closed regex: {tau, a0, a1 tau, ..., ac tau^c}* {eps, a0, ..., ac} {tau}*
    block = RSym(tau)
    for i, a in enumerate(alphas):
        block = block | rx_cat([RSym(a)] + [RSym(tau)] * i)
    tail = REps()
    for a in alphas:
        tail = tail | RSym(a)
    regex = RStar(block) + tail + RStar(RSym(tau))

    t = MPoly.var(TS, "t")
    s = MPoly.var(TS, "s")
    geom = MPoly.zero(TS)
    for i in range(1, c + 1):
        geom = geom + s**i
    ramp = MPoly.zero(TS)
    for e in range(c):
        ramp = ramp + (c - e) * s**e
    closed = RatFun(1 + t * ramp, 1 - t - s - t * geom)
    alt_closed = RatFun(c * t + 1, 1 - s - t * geom)
    return FiltrationLanguage(
        "window-squares(%d)" % c,
        alphabet,
        TS,
        dfa,
        predicate,
        (0, 1),
        regex=regex,
        alt_dfa=alt_dfa,
        reference_series=[("closed form", closed), ("alt closed form", alt_closed)],
        notes=(
            "alt_dfa restricts acceptance to states (i,0) and (i,i); it rejects "
            "words ending inside a tau run.  The alt closed form drops the lone "
            "-t denominator term; its tau-free slice stops at degree one."
        ),
    )


def lang_gap(tau="tau", alpha="a"):
    """Words over tau, a1, a2: no descent without tau between, and a2 followed
    by exactly one tau forces the next letter toward a1.

    Counts monomials of the algebras generated by x_i*x_{i+1} and x_i*x_{i+2}.
    """
    a1, a2 = "%s1" % alpha, "%s2" % alpha
    alphabet = _single_alphabet(tau, [a1, a2])
    trans = {
        (0, tau): 0,
        (0, a1): 0,
        (0, a2): 1,
        (1, a2): 1,
        (1, tau): 2,
        (2, a1): 0,
        (2, tau): 0,
    }
    dfa = Dfa(alphabet, 3, 0, {0, 1, 2}, trans, ["1", "2", "3"])

    def predicate(word):
        ks = [0]
        idxs = []
        for sym in word:
            if sym == tau:
                ks[-1] += 1
            else:
                idxs.append(1 if sym == a1 else 2)
                ks.append(0)
        d = len(idxs)
        for v in range(1, d):
            if ks[v] == 0 and idxs[v - 1] > idxs[v]:
                return False
        for v in range(d - 1):
            if idxs[v] == 2 and ks[v + 1] == 1 and idxs[v + 1] != 1:
                return False
        return True

    closed = parse_ratfun(
        TS, "(t*s + 1)/(1 - 2*t - s + t^2 + t*s - t^2*s - t*s^2)"
    )
    return FiltrationLanguage(
        "gap",
        alphabet,
        TS,
        dfa,
        predicate,
        (0, 1),
        reference_series=[("closed form", closed)],
    )


def _reclass(alphabet, cls):
    return Alphabet(
        [
            (n, ("count", cls) if alphabet.kind(n)[0] == "count" else ("content",))
            for n in alphabet.names
        ]
    )


def _check_pair(a, b):
    if set(a.alphabet.names) & set(b.alphabet.names):
        raise ValueError("pair languages must use disjoint letter names")
    for lang in (a, b):
        if lang.alphabet.count_classes() != [1]:
            raise ValueError("pair factors must be single-class languages")


def lang_segre(a, b, checked=False, check_len=6):
    """Interleaved product language whose counts multiply the factor counts.

    Letters: a's tau letters (class 1), b's tau letters (class 2), and one
    fused content letter g(x,y) per content pair; blocks are tau1* tau2* g.
    """
    _check_pair(a, b)
    taus_a = a.alphabet.count_names()
    taus_b = b.alphabet.count_names()
    cont_a = a.alphabet.content_names()
    cont_b = b.alphabet.content_names()
    gammas = {}
    symbols = [(n, ("count", 1)) for n in taus_a] + [(n, ("count", 2)) for n in taus_b]
    for x in cont_a:
        for y in cont_b:
            g = "g(%s,%s)" % (x, y)
            gammas[g] = (x, y)
            symbols.append((g, ("content",)))
    alphabet = Alphabet(symbols)

    hom_a = {n: (n,) for n in taus_a}
    hom_a.update({n: () for n in taus_b})
    hom_a.update({g: (xy[0],) for g, xy in gammas.items()})
    hom_b = {n: () for n in taus_a}
    hom_b.update({n: (n,) for n in taus_b})
    hom_b.update({g: (xy[1],) for g, xy in gammas.items()})

    pre_a = hom_preimage(a.dfa, alphabet, hom_a)
    pre_b = hom_preimage(b.dfa, alphabet, hom_b)
    block = RStar(rx_any(taus_a)) + RStar(rx_any(taus_b)) + rx_any(sorted(gammas))
    scaffold = RStar(block) + RStar(rx_any(taus_a)) + RStar(rx_any(taus_b))
    scaffold_dfa = determinize_trim_minimize(Nfa.from_regex(scaffold, alphabet))
    dfa = minimize(intersect(intersect(pre_a, pre_b), scaffold_dfa))

    set_a, set_b = set(taus_a), set(taus_b)

    def predicate(word):
        state = 1
        for sym in word:
            if sym in set_a:
                if state == 2:
                    return False
            elif sym in set_b:
                state = 2
            else:
                state = 1
        proj_a = [x for sym in word for x in hom_a[sym]]
        proj_b = [y for sym in word for y in hom_b[sym]]
        return a.predicate(proj_a) and b.predicate(proj_b)

    return FiltrationLanguage(
        "segre(%s, %s)" % (a.name, b.name),
        alphabet,
        TSS,
        dfa,
        predicate,
        (0, 1, 1),
        checked=checked,
        check_len=check_len,
    )


def lang_concat(a, b, checked=False, check_len=6):
    """Words of a followed by words of b; counts convolve over content degree."""
    _check_pair(a, b)
    alphabet = _reclass(a.alphabet, 1).merged(_reclass(b.alphabet, 2))
    nfa = Nfa(alphabet)
    for _ in range(a.dfa.r + b.dfa.r):
        nfa.add_state()
    off = a.dfa.r
    for (p, sym), q in a.dfa.trans.items():
        nfa.add_edge(p, sym, q)
    for (p, sym), q in b.dfa.trans.items():
        nfa.add_edge(off + p, sym, off + q)
    for q in a.dfa.accepts:
        nfa.add_eps(q, off + b.dfa.start)
    nfa.start = a.dfa.start
    nfa.accepts = {off + q for q in b.dfa.accepts}
    dfa = determinize_trim_minimize(nfa)

    set_a = set(a.alphabet.names)

    def predicate(word):
        cut = len(word)
        for i, sym in enumerate(word):
            if sym not in set_a:
                cut = i
                break
        head, tail = list(word[:cut]), list(word[cut:])
        if any(sym in set_a for sym in tail):
            return False
        return a.predicate(head) and b.predicate(tail)

    return FiltrationLanguage(
        "concat(%s, %s)" % (a.name, b.name),
        alphabet,
        TSS,
        dfa,
        predicate,
        (0, 1, 1),
        checked=checked,
        check_len=check_len,
    )


def ideal_gap_series():
    """Series of the presentation-ideal filtration for the gap family.

    Returns (computed, stated): computed is ambient minus algebra via the
    identity sum_n dim K[2 x n grid]_d t^d s^n = s/((1-t)^2 - s); stated is
    the closed form shipped with the gap family for comparison.
    """
    gap = lang_gap()
    t = MPoly.var(TS, "t")
    s = MPoly.var(TS, "s")
    ambient = RatFun(MPoly.var(TS, "s"), (1 - t) ** 2 - s)
    computed = ambient - gap.series()
    stated = parse_ratfun(
        TS,
        "(t*s^4 - t*s^3 - t^2*s + s^3 + t*s - s)/"
        "(t^2*s^3 + t*s^4 - t^3*s - 4*t^2*s^2 - 3*t*s^3 + t^3 + 4*t^2*s"
        " + 5*t*s^2 + s^3 - 2*t^2 - 6*t*s - 3*s^2 + 3*t + 3*s - 1)",
    )
    return computed, stated


def builtin_single(kind, c=None):
    if kind == "poly-ring":
        return lang_poly_ring(2 if c is None else c)
    if kind == "window-squares":
        return lang_window_squares(2 if c is None else c)
    if kind == "gap":
        return lang_gap()
    raise ValueError("unknown language %r" % kind)


def builtin_pair(op, kind_a, c_a, kind_b, c_b, checked=False):
    if kind_a == "gap":
        a = lang_gap()
    else:
        a = builtin_single(kind_a, c_a)
    if kind_b == "gap":
        b = lang_gap(tau="tau2", alpha="b")
    elif kind_b == "poly-ring":
        b = lang_poly_ring(2 if c_b is None else c_b, tau="tau2", alpha="b")
    elif kind_b == "window-squares":
        b = lang_window_squares(2 if c_b is None else c_b, tau="tau2", alpha="b")
    else:
        raise ValueError("unknown language %r" % kind_b)
    if op == "segre":
        return lang_segre(a, b, checked=checked)
    if op == "concat":
        return lang_concat(a, b, checked=checked)
    raise ValueError("unknown pair op %r" % op)
