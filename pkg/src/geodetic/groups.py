"""Free products of finite groups, their Cayley balls, and graph families."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import GraphFormatError, PreconditionError
from .graph import Graph, build_graph

IDENTITY_NAME = "1"


@dataclass(frozen=True)
class GeneratorAlphabet:
    symbols: tuple
    inverse: dict = field(hash=False)

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise PreconditionError("generator tokens must be distinct")
        for s in self.symbols:
            t = self.inverse.get(s)
            if t not in self.inverse or self.inverse[t] != s:
                raise PreconditionError(f"involution is not closed at {s!r}")
        if set(self.inverse) != set(self.symbols):
            raise PreconditionError("involution domain differs from the symbol list")
        object.__setattr__(self, "_order", {s: i for i, s in enumerate(self.symbols)})

    def inv(self, s):
        try:
            return self.inverse[s]
        except KeyError:
            raise PreconditionError(f"unknown generator token {s!r}") from None

    def invert_word(self, w) -> tuple:
        return tuple(self.inv(s) for s in reversed(w))

    def rank(self, s) -> int:
        return self._order[s]

    def word_key(self, w) -> tuple:
        return tuple(self._order[s] for s in w)

    def pairs(self) -> list:
        """Each involution orbit once, in symbol order."""
        seen, out = set(), []
        for s in self.symbols:
            if s not in seen:
                seen.update((s, self.inverse[s]))
                out.append((s, self.inverse[s]))
        return out


@dataclass(frozen=True)
class FiniteFactor:
    """One finite free factor, given by its multiplication table on indices."""

    elements: tuple  # element names, index 0 is the identity
    table: tuple
    tokens: tuple  # (token, element index) in alphabet order
    source: dict = field(hash=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def inverse_of(self, e: int) -> int:
        return next(x for x in range(self.order) if self.table[e][x] == 0)

    def shortest_words(self) -> list:
        """Shortest token word for each element, breadth-first in token order."""
        words = [None] * self.order
        words[0] = ()
        queue = deque([0])
        while queue:
            e = queue.popleft()
            for tok, x in self.tokens:
                f = self.table[e][x]
                if words[f] is None:
                    words[f] = words[e] + (tok,)
                    queue.append(f)
        return words


def cyclic_factor(m: int, gen: str, inv: str | None = None) -> FiniteFactor:
    if m < 2:
        raise PreconditionError(f"cyclic order must be at least 2, got {m}")
    if not gen.isalnum():
        raise PreconditionError(f"generator name {gen!r} must be alphanumeric")
    names = [IDENTITY_NAME] + [gen if k == 1 else f"{gen}^{k}" for k in range(1, m)]
    table = tuple(tuple((i + j) % m for j in range(m)) for i in range(m))
    if m == 2:
        tokens = ((gen, 1),)
    else:
        if inv is None:
            inv = gen.swapcase()
            if inv == gen:
                raise PreconditionError(f"cannot derive an inverse token for {gen!r}; give 'inv'")
        if not inv.isalnum() or inv == gen:
            raise PreconditionError(f"bad inverse token {inv!r}")
        tokens = ((gen, 1), (inv, m - 1))
    source = {"cyclic": m, "gen": gen}
    if m > 2 and inv != gen.swapcase():
        source["inv"] = inv
    return FiniteFactor(tuple(names), table, tokens, source)


def table_factor(elements: Sequence[str], identity: str, mul, gens: Sequence[str]) -> FiniteFactor:
    """Factor from an explicit Cayley table; the group axioms are checked exhaustively."""
    elements = list(elements)
    if len(set(elements)) != len(elements) or identity not in elements:
        raise PreconditionError("table elements must be distinct and include the identity")
    order = [identity] + [e for e in elements if e != identity]
    pos = {e: i for i, e in enumerate(order)}
    k = len(order)
    if len(mul) != k or any(len(row) != k for row in mul):
        raise PreconditionError("multiplication table must be square over the elements")
    raw = {}
    for a, row in zip(elements, mul):
        for b, c in zip(elements, row):
            c = elements[c] if isinstance(c, int) else c
            if c not in pos:
                raise PreconditionError(f"table entry {c!r} is not an element")
            raw[pos[a], pos[b]] = pos[c]
    table = tuple(tuple(raw[i, j] for j in range(k)) for i in range(k))
    for i in range(k):
        if table[0][i] != i or table[i][0] != i:
            raise PreconditionError(f"{identity!r} is not an identity")
        if 0 not in table[i]:
            raise PreconditionError(f"{order[i]!r} has no inverse")
    for a, b, c in itertools.product(range(k), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise PreconditionError(f"table is not associative at {order[a], order[b], order[c]}")
    tok_elems = []
    for gname in gens:
        if gname not in pos or pos[gname] == 0:
            raise PreconditionError(f"generator {gname!r} must be a non-identity element")
        tok_elems.append(pos[gname])
    tokens = []
    for e in tok_elems:
        for x in (e, next(x for x in range(k) if table[e][x] == 0)):
            if all(x != t for _, t in tokens):
                tokens.append((order[x], x))
    for tok, _ in tokens:
        if not tok.isalnum():
            raise PreconditionError(f"generator token {tok!r} must be alphanumeric")
    factor = FiniteFactor(tuple(order), table, tuple(tokens), {})
    words = factor.shortest_words()
    if any(w is None for w in words):
        raise PreconditionError("generators do not generate the table group")
    source = {
        "table": {"elements": elements, "identity": identity, "mul": [list(r) for r in mul]},
        "gens": list(gens),
    }
    return FiniteFactor(tuple(order), table, tuple(tokens), source)


@dataclass(frozen=True)
class GroupElement:
    """Free-product normal form: ``(factor, element)`` syllables, alternating factors."""

    word: tuple = ()

    def is_identity(self) -> bool:
        return not self.word


class GroupSpec:
    def __init__(self, factors: Sequence[FiniteFactor]):
        if not factors:
            raise PreconditionError("a group spec needs at least one factor")
        self.factors = tuple(factors)
        self.letter: dict = {}
        symbols, inverse = [], {}
        for f, factor in enumerate(self.factors):
            for tok, e in factor.tokens:
                if tok in self.letter or tok == IDENTITY_NAME:
                    raise PreconditionError(f"generator token {tok!r} is used twice")
                self.letter[tok] = (f, e)
                symbols.append(tok)
            for tok, e in factor.tokens:
                inv_e = factor.inverse_of(e)
                inverse[tok] = next(t for t, x in factor.tokens if x == inv_e)
        self.alphabet = GeneratorAlphabet(tuple(symbols), inverse)
        self._spellings = [factor.shortest_words() for factor in self.factors]

    def __eq__(self, other):
        return isinstance(other, GroupSpec) and self.to_json() == other.to_json()

    def __repr__(self):
        return f"GroupSpec({self.to_json()['factors']})"

    @classmethod
    def cyclic(cls, *orders, gens="abcdefgh") -> "GroupSpec":
        """Free product of cyclic groups with generators ``a, b, c, ...``."""
        return cls([cyclic_factor(m, g) for m, g in zip(orders, gens)])

    def to_json(self):
        return {"factors": [dict(f.source) for f in self.factors]}

    def multiply(self, x: GroupElement, token) -> GroupElement:
        try:
            f, e = self.letter[token]
        except KeyError:
            raise PreconditionError(f"unknown generator token {token!r}") from None
        word = list(x.word)
        if word and word[-1][0] == f:
            prod = self.factors[f].table[word[-1][1]][e]
            if prod == 0:
                word.pop()
            else:
                word[-1] = (f, prod)
        else:
            word.append((f, e))
        return GroupElement(tuple(word))

    def name(self, x: GroupElement) -> str:
        if not x.word:
            return IDENTITY_NAME
        return "*".join(self.factors[f].elements[e] for f, e in x.word)

    def spell(self, x: GroupElement) -> tuple:
        """A shortest word for ``x``: shortest factor words for each syllable."""
        return tuple(tok for f, e in x.word for tok in self._spellings[f][e])


def _tokens(letters) -> list:
    return letters.split() if isinstance(letters, str) else list(letters)


def free_product_normal_form(spec: GroupSpec, letters) -> GroupElement:
    x = GroupElement()
    for tok in _tokens(letters):
        x = spec.multiply(x, tok)
    return x


@dataclass(frozen=True)
class LabeledBall:
    spec: GroupSpec
    radius: int
    graph: Graph
    labels: dict  # (u, v) -> token
    elements: dict  # vertex name -> GroupElement
    step: dict = field(repr=False)  # (u, token) -> v

    @property
    def identity(self) -> str:
        return IDENTITY_NAME

    def to_json(self):
        out = {
            "vertices": list(self.graph.names),
            "edges": [list(e) for e in self.graph.edge_names()],
            "labels": [[u, v, t] for (u, v), t in self.labels.items()],
            "radius": self.radius,
            "identity": self.identity,
        }
        return out


def cayley_ball(spec: GroupSpec, radius: int) -> LabeledBall:
    """Ball of the given radius around 1 in the Cayley graph, with edge labels."""
    if radius < 1:
        raise PreconditionError("radius must be at least 1")
    one = GroupElement()
    order = [one]
    depth = {one: 0}
    queue = deque([one])
    while queue:
        x = queue.popleft()
        if depth[x] == radius:
            continue
        for tok in spec.alphabet.symbols:
            y = spec.multiply(x, tok)
            if y not in depth:
                depth[y] = depth[x] + 1
                order.append(y)
                queue.append(y)
    names = [spec.name(x) for x in order]
    edges, labels, step = [], {}, {}
    for x, u in zip(order, names):
        for tok in spec.alphabet.symbols:
            y = spec.multiply(x, tok)
            if y in depth:
                v = spec.name(y)
                labels[u, v] = tok
                step[u, tok] = v
                edges.append((u, v))
    graph = build_graph(edges, vertices=names)
    return LabeledBall(spec, radius, graph, labels, dict(zip(names, order)), step)


#: Returned by ``evaluate_word`` when the walk leaves the ball.
OUT_OF_BALL = None


def evaluate_word(ball: LabeledBall, w):
    v = ball.identity
    for tok in _tokens(w):
        ball.spec.alphabet.inv(tok)  # rejects unknown tokens
        v = ball.step.get((v, tok))
        if v is None:
            return OUT_OF_BALL
    return v


# --- graph families -------------------------------------------------------


def _family_complete(n):
    if n < 1:
        raise PreconditionError("complete(n) needs n >= 1")
    return build_graph(itertools.combinations(range(n), 2), vertices=range(n))


def _family_cycle(n):
    if n < 3:
        raise PreconditionError("cycle(n) needs n >= 3")
    return build_graph(((i, (i + 1) % n) for i in range(n)), vertices=range(n))


def _family_petersen():
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return build_graph(edges, vertices=range(10))


def _family_tree(branching, depth):
    if branching < 1 or depth < 0:
        raise PreconditionError("tree(branching, depth) needs branching >= 1, depth >= 0")
    edges, frontier, nxt = [], [0], 1
    for _ in range(depth):
        new = []
        for p in frontier:
            for _ in range(branching):
                edges.append((p, nxt))
                new.append(nxt)
                nxt += 1
        frontier = new
    return build_graph(edges, vertices=range(nxt))


def _family_psi(m):
    """Base path ``0..m`` with an odd cycle of length ``2n + 3`` hung at each ``n``."""
    if m < 0:
        raise PreconditionError("psi(m) needs m >= 0")
    vertices = [str(n) for n in range(m + 1)]
    edges = [(str(n), str(n + 1)) for n in range(m)]
    for n in range(m + 1):
        ring = [str(n)] + [f"{n}.{j}" for j in range(1, 2 * n + 3)]
        vertices.extend(ring[1:])
        edges.extend(zip(ring, ring[1:] + ring[:1]))
    return build_graph(edges, vertices=vertices)


def _family_hypercube(d):
    if d < 1:
        raise PreconditionError("hypercube(d) needs d >= 1")
    names = ["".join(bits) for bits in itertools.product("01", repeat=d)]
    edges = []
    for v in names:
        for i in range(d):
            w = v[:i] + ("1" if v[i] == "0" else "0") + v[i + 1:]
            if v < w:
                edges.append((v, w))
    return build_graph(edges, vertices=names)


FAMILIES = {
    "complete": (_family_complete, ("n",)),
    "cycle": (_family_cycle, ("n",)),
    "petersen": (_family_petersen, ()),
    "tree": (_family_tree, ("branching", "depth")),
    "psi": (_family_psi, ("m",)),
    "hypercube": (_family_hypercube, ("d",)),
}


def gen_family(name: str, **params) -> Graph:
    try:
        build, wanted = FAMILIES[name]
    except KeyError:
        raise PreconditionError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    if set(params) != set(wanted):
        raise PreconditionError(f"family {name!r} takes parameters {list(wanted)}, got {sorted(params)}")
    for k, v in params.items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise PreconditionError(f"parameter {k} must be an integer")
    return build(*(params[k] for k in wanted))


def parse_group_spec(data) -> GroupSpec:
    if not isinstance(data, dict) or set(data) != {"factors"}:
        raise GraphFormatError('group spec must be an object with exactly the key "factors"')
    factors = []
    for item in data["factors"]:
        if not isinstance(item, dict):
            raise GraphFormatError(f"factor must be an object: {item!r}")
        keys = set(item)
        if "cyclic" in keys:
            if not keys <= {"cyclic", "gen", "inv"} or "gen" not in keys:
                raise GraphFormatError(f"cyclic factor keys are cyclic, gen, inv: {sorted(keys)}")
            factors.append(cyclic_factor(int(item["cyclic"]), str(item["gen"]), item.get("inv")))
        elif keys == {"table", "gens"}:
            t = item["table"]
            if not isinstance(t, dict) or set(t) != {"elements", "identity", "mul"}:
                raise GraphFormatError("table must have keys elements, identity, mul")
            factors.append(table_factor(t["elements"], t["identity"], t["mul"], item["gens"]))
        else:
            raise GraphFormatError(f"unrecognised factor {item!r}")
    return GroupSpec(factors)
