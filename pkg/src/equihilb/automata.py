"""Finite automata over counted alphabets.

Letters either carry a size class ("count", k), contributing to the k-th
size variable, or are ("content",) letters contributing to internal degree.
DFAs are partial: a missing transition rejects.
"""

from .exactalg import CountTable


class Alphabet:
    """Fixed-order symbol list with a counting kind per symbol."""

    __slots__ = ("names", "kinds")

    def __init__(self, symbols):
        # symbols: iterable of (name, kind), kind = ("count", k) or ("content",)
        self.names = tuple(name for name, _ in symbols)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate symbol names")
        self.kinds = {name: kind for name, kind in symbols}
        for kind in self.kinds.values():
            if kind[0] == "count":
                if len(kind) != 2 or kind[1] < 1:
                    raise ValueError("bad count kind %r" % (kind,))
            elif kind != ("content",):
                raise ValueError("bad kind %r" % (kind,))

    def kind(self, name):
        return self.kinds[name]

    def count_classes(self):
        return sorted({k[1] for k in self.kinds.values() if k[0] == "count"})

    def content_names(self):
        return tuple(n for n in self.names if self.kinds[n] == ("content",))

    def count_names(self, cls=None):
        return tuple(
            n
            for n in self.names
            if self.kinds[n][0] == "count" and (cls is None or self.kinds[n][1] == cls)
        )

    def __eq__(self, other):
        return (
            isinstance(other, Alphabet)
            and self.names == other.names
            and self.kinds == other.kinds
        )

    def __repr__(self):
        return "Alphabet(%r)" % (self.names,)

    def merged(self, other):
        if set(self.names) & set(other.names):
            raise ValueError("overlapping alphabets")
        return Alphabet(
            [(n, self.kinds[n]) for n in self.names]
            + [(n, other.kinds[n]) for n in other.names]
        )


class Regex:
    def __or__(self, other):
        return RUnion(self, other)

    def __add__(self, other):
        return RCat(self, other)

    def star(self):
        return RStar(self)


class RSym(Regex):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name


class REps(Regex):
    pass


class RUnion(Regex):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = a, b


class RCat(Regex):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = a, b


class RStar(Regex):
    __slots__ = ("a",)

    def __init__(self, a):
        self.a = a


def rx_any(names):
    out = None
    for n in names:
        out = RSym(n) if out is None else RUnion(out, RSym(n))
    if out is None:
        raise ValueError("empty union")
    return out


def rx_cat(parts):
    out = None
    for p in parts:
        out = p if out is None else RCat(out, p)
    return REps() if out is None else out


def rx_word(names):
    return rx_cat([RSym(n) for n in names]) if names else REps()


class Nfa:
    """Thompson-style NFA with epsilon moves."""

    __slots__ = ("alphabet", "r", "start", "accepts", "trans", "eps")

    def __init__(self, alphabet):
        self.alphabet = alphabet
        self.r = 0
        self.start = None
        self.accepts = set()
        self.trans = {}
        self.eps = {}

    def add_state(self):
        q = self.r
        self.r += 1
        return q

    def add_edge(self, p, sym, q):
        self.trans.setdefault((p, sym), set()).add(q)

    def add_eps(self, p, q):
        self.eps.setdefault(p, set()).add(q)

    @classmethod
    def from_regex(cls, regex, alphabet):
        nfa = cls(alphabet)

        def build(rx):
            if isinstance(rx, RSym):
                if rx.name not in alphabet.kinds:
                    raise ValueError("symbol %r not in alphabet" % rx.name)
                a, b = nfa.add_state(), nfa.add_state()
                nfa.add_edge(a, rx.name, b)
                return a, b
            if isinstance(rx, REps):
                a, b = nfa.add_state(), nfa.add_state()
                nfa.add_eps(a, b)
                return a, b
            if isinstance(rx, RUnion):
                a1, b1 = build(rx.a)
                a2, b2 = build(rx.b)
                a, b = nfa.add_state(), nfa.add_state()
                nfa.add_eps(a, a1)
                nfa.add_eps(a, a2)
                nfa.add_eps(b1, b)
                nfa.add_eps(b2, b)
                return a, b
            if isinstance(rx, RCat):
                a1, b1 = build(rx.a)
                a2, b2 = build(rx.b)
                nfa.add_eps(b1, a2)
                return a1, b2
            if isinstance(rx, RStar):
                a1, b1 = build(rx.a)
                a, b = nfa.add_state(), nfa.add_state()
                nfa.add_eps(a, a1)
                nfa.add_eps(a, b)
                nfa.add_eps(b1, a1)
                nfa.add_eps(b1, b)
                return a, b
            raise TypeError("not a regex: %r" % (rx,))

        a, b = build(regex)
        nfa.start = a
        nfa.accepts = {b}
        return nfa


class Dfa:
    """Partial deterministic automaton; missing transition means reject."""

    __slots__ = ("alphabet", "r", "start", "accepts", "trans", "state_names")

    def __init__(self, alphabet, r, start, accepts, trans, state_names=None):
        self.alphabet = alphabet
        self.r = r
        self.start = start
        self.accepts = frozenset(accepts)
        self.trans = dict(trans)
        self.state_names = list(state_names) if state_names else None

    def step(self, q, sym):
        return self.trans.get((q, sym))

    def walk(self, word, q=None):
        if q is None:
            q = self.start
        for sym in word:
            q = self.trans.get((q, sym))
            if q is None:
                return None
        return q

    def accepts_word(self, word):
        q = self.walk(word)
        return q is not None and q in self.accepts

    def name_of(self, q):
        if self.state_names:
            return self.state_names[q]
        return str(q)

    def renumbered(self):
        """Canonical copy: states renumbered by BFS from start, alphabet order."""
        order = [self.start]
        seen = {self.start}
        i = 0
        while i < len(order):
            q = order[i]
            i += 1
            for sym in self.alphabet.names:
                q2 = self.trans.get((q, sym))
                if q2 is not None and q2 not in seen:
                    seen.add(q2)
                    order.append(q2)
        remap = {q: j for j, q in enumerate(order)}
        trans = {
            (remap[p], sym): remap[q]
            for (p, sym), q in self.trans.items()
            if p in remap and q in remap
        }
        accepts = {remap[q] for q in self.accepts if q in remap}
        names = [self.name_of(q) for q in order] if self.state_names else None
        return Dfa(self.alphabet, len(order), 0, accepts, trans, names)

    def to_dot(self, title="dfa"):
        lines = ["digraph %s {" % title, "  rankdir=LR;", '  __start [shape=none, label=""];']
        for q in range(self.r):
            shape = "doublecircle" if q in self.accepts else "circle"
            lines.append('  %d [shape=%s, label="%s"];' % (q, shape, self.name_of(q)))
        lines.append("  __start -> %d;" % self.start)
        for q in range(self.r):
            for sym in self.alphabet.names:
                q2 = self.trans.get((q, sym))
                if q2 is not None:
                    lines.append('  %d -> %d [label="%s"];' % (q, q2, sym))
        lines.append("}")
        return "\n".join(lines) + "\n"


def _eps_closure(nfa, states):
    out = set(states)
    stack = list(states)
    while stack:
        q = stack.pop()
        for q2 in nfa.eps.get(q, ()):
            if q2 not in out:
                out.add(q2)
                stack.append(q2)
    return frozenset(out)


def determinize(nfa):
    """Subset construction; keeps only nonempty targets (partial DFA)."""
    start = _eps_closure(nfa, {nfa.start})
    states = {start: 0}
    order = [start]
    trans = {}
    i = 0
    while i < len(order):
        cur = order[i]
        i += 1
        for sym in nfa.alphabet.names:
            nxt = set()
            for q in cur:
                nxt |= nfa.trans.get((q, sym), set())
            if not nxt:
                continue
            nxt = _eps_closure(nfa, nxt)
            if nxt not in states:
                states[nxt] = len(order)
                order.append(nxt)
            trans[(states[cur], sym)] = states[nxt]
    accepts = {states[S] for S in order if S & nfa.accepts}
    return Dfa(nfa.alphabet, len(order), 0, accepts, trans)


def trim(dfa):
    """Drop states that cannot reach an accepting state (or the start cannot reach)."""
    fwd = {dfa.start}
    stack = [dfa.start]
    while stack:
        q = stack.pop()
        for sym in dfa.alphabet.names:
            q2 = dfa.trans.get((q, sym))
            if q2 is not None and q2 not in fwd:
                fwd.add(q2)
                stack.append(q2)
    rev = {}
    for (p, sym), q in dfa.trans.items():
        rev.setdefault(q, set()).add(p)
    bwd = set(dfa.accepts)
    stack = list(bwd)
    while stack:
        q = stack.pop()
        for p in rev.get(q, ()):
            if p not in bwd:
                bwd.add(p)
                stack.append(p)
    alive = fwd & bwd
    if dfa.start not in alive:
        # empty language: single non-accepting start, no edges
        return Dfa(dfa.alphabet, 1, 0, set(), {})
    trans = {
        (p, sym): q for (p, sym), q in dfa.trans.items() if p in alive and q in alive
    }
    keep = [dfa.start] + sorted(q for q in alive if q != dfa.start)
    remap = {q: j for j, q in enumerate(keep)}
    names = [dfa.name_of(q) for q in keep] if dfa.state_names else None
    return Dfa(
        dfa.alphabet,
        len(keep),
        0,
        {remap[q] for q in dfa.accepts if q in alive},
        {(remap[p], sym): remap[q] for (p, sym), q in trans.items()},
        names,
    ).renumbered()


def minimize(dfa):
    """Moore partition refinement with an implicit reject sink."""
    SINK = dfa.r
    block = {}
    for q in range(dfa.r):
        block[q] = 1 if q in dfa.accepts else 0
    block[SINK] = 0
    while True:
        sigs = {}
        for q in list(block):
            sig = (block[q],)
            for sym in dfa.alphabet.names:
                if q == SINK:
                    t = SINK
                else:
                    t = dfa.trans.get((q, sym), SINK)
                sig += (block[t],)
            sigs[q] = sig
        relabel = {}
        newblock = {}
        for q in sorted(block):
            if sigs[q] not in relabel:
                relabel[sigs[q]] = len(relabel)
            newblock[q] = relabel[sigs[q]]
        if newblock == block:
            break
        block = newblock
    sink_block = block[SINK]
    reps = {}
    for q in range(dfa.r):
        if block[q] != sink_block and block[q] not in reps:
            reps[block[q]] = q
    if block[dfa.start] == sink_block:
        return Dfa(dfa.alphabet, 1, 0, set(), {})
    trans = {}
    for b, q in reps.items():
        for sym in dfa.alphabet.names:
            t = dfa.trans.get((q, sym), SINK)
            if t != SINK and block[t] != sink_block:
                trans[(b, sym)] = block[t]
    accepts = {b for b, q in reps.items() if q in dfa.accepts}
    out = Dfa(dfa.alphabet, len(reps), block[dfa.start], accepts, trans)
    return out.renumbered()


def determinize_trim_minimize(nfa):
    return minimize(trim(determinize(nfa)))


def intersect(a, b):
    """Trimmed product automaton; both inputs over the same alphabet."""
    if a.alphabet != b.alphabet:
        raise ValueError("alphabet mismatch")
    start = (a.start, b.start)
    states = {start: 0}
    order = [start]
    trans = {}
    i = 0
    while i < len(order):
        p1, p2 = order[i]
        i += 1
        for sym in a.alphabet.names:
            q1 = a.trans.get((p1, sym))
            q2 = b.trans.get((p2, sym))
            if q1 is None or q2 is None:
                continue
            tgt = (q1, q2)
            if tgt not in states:
                states[tgt] = len(order)
                order.append(tgt)
            trans[(states[(p1, p2)], sym)] = states[tgt]
    accepts = {
        states[(q1, q2)]
        for (q1, q2) in order
        if q1 in a.accepts and q2 in b.accepts
    }
    return trim(Dfa(a.alphabet, len(order), 0, accepts, trans))


def hom_preimage(dfa, alphabet, hom):
    """DFA for h^{-1}(L(dfa)): same states, letter c acts like the word h(c).

    hom maps each symbol of the new alphabet to a list of dfa-alphabet
    symbols (possibly empty for letters erased by h).
    """
    trans = {}
    for q in range(dfa.r):
        for c in alphabet.names:
            q2 = q
            for sym in hom[c]:
                q2 = dfa.trans.get((q2, sym))
                if q2 is None:
                    break
            if q2 is not None:
                trans[(q, c)] = q2
    return Dfa(alphabet, dfa.r, dfa.start, dfa.accepts, trans)


def _profile_shape(alphabet):
    classes = alphabet.count_classes()
    if classes != list(range(1, len(classes) + 1)):
        raise ValueError("count classes must be 1..k, got %r" % (classes,))
    return classes


def _letter_delta(alphabet, classes, sym):
    kind = alphabet.kind(sym)
    delta = [0] * (1 + len(classes))
    if kind == ("content",):
        delta[0] = 1
    else:
        delta[kind[1]] = 1
    return tuple(delta)


def dp_count(dfa, dmax, size_bounds):
    """Accepted-word counts by profile (d, m) or (d, m, n); d is content degree.

    Dynamic programming over (state, profile); profiles determine length so a
    single frontier sweep suffices.
    """
    classes = _profile_shape(dfa.alphabet)
    if len(size_bounds) != len(classes):
        raise ValueError("size bound arity mismatch")
    bounds = (dmax,) + tuple(size_bounds)
    deltas = {sym: _letter_delta(dfa.alphabet, classes, sym) for sym in dfa.alphabet.names}
    axes = ("d", "m", "n")[: 1 + len(classes)]
    out = CountTable(axes, bounds)
    zero = (0,) * len(bounds)
    frontier = {(dfa.start, zero): 1}
    while frontier:
        for (q, prof), cnt in frontier.items():
            if q in dfa.accepts:
                out.set(prof, out.get(prof) + cnt)
        nxt = {}
        for (q, prof), cnt in frontier.items():
            for sym, delta in deltas.items():
                q2 = dfa.trans.get((q, sym))
                if q2 is None:
                    continue
                p2 = tuple(a + b for a, b in zip(prof, delta))
                if any(a > b for a, b in zip(p2, bounds)):
                    continue
                key = (q2, p2)
                nxt[key] = nxt.get(key, 0) + cnt
        frontier = nxt
    return out


def enumerate_words(dfa, profile):
    """All accepted words with the exact profile (d, m[, n]), lexicographic."""
    classes = _profile_shape(dfa.alphabet)
    if len(profile) != 1 + len(classes):
        raise ValueError("profile arity mismatch")
    deltas = {sym: _letter_delta(dfa.alphabet, classes, sym) for sym in dfa.alphabet.names}
    out = []
    word = []

    def rec(q, remaining):
        if not any(remaining):
            if q in dfa.accepts:
                out.append(tuple(word))
            return
        for sym in dfa.alphabet.names:
            q2 = dfa.trans.get((q, sym))
            if q2 is None:
                continue
            rem2 = tuple(a - b for a, b in zip(remaining, deltas[sym]))
            if any(x < 0 for x in rem2):
                continue
            word.append(sym)
            rec(q2, rem2)
            word.pop()

    rec(dfa.start, tuple(profile))
    return out


def language_agrees(dfa, predicate, maxlen, require_prefix_closed=True):
    """Check dfa vs predicate on all words up to maxlen.

    Prunes subtrees where the (trimmed) DFA is dead and the predicate is
    false; sound for prefix-closed predicates, which is also checked along
    the way.  Returns (ok, first_counterexample_or_None, words_checked).
    """
    checked = 0

    def rec(word, q, pred_here):
        nonlocal checked
        if len(word) >= maxlen:
            return None
        for sym in dfa.alphabet.names:
            w2 = word + [sym]
            q2 = dfa.trans.get((q, sym)) if q is not None else None
            in_dfa = q2 is not None and q2 in dfa.accepts
            in_pred = bool(predicate(w2))
            checked += 1
            if in_dfa != in_pred:
                return tuple(w2)
            if require_prefix_closed and in_pred and not pred_here:
                return tuple(w2)  # predicate not prefix closed: treat as failure
            if q2 is not None or in_pred:
                bad = rec(w2, q2, in_pred)
                if bad:
                    return bad
        return None

    root_dfa = dfa.start in dfa.accepts
    root_pred = bool(predicate([]))
    if root_dfa != root_pred:
        return False, (), 1
    bad = rec([], dfa.start, root_pred)
    return bad is None, bad, checked
