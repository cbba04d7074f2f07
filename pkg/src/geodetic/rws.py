"""Length-reducing string rewriting systems read off the IECs of a Cayley ball.

For a geodetic Cayley graph the system consists of the free reductions
``a inv(a) -> 1`` together with ``u -> v`` whenever ``u v^-1`` labels an IEC
and ``|u| = |v| + 1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from .errors import DomainError, NotGeodeticError, PreconditionError, UnverifiedSystemError
from .graph import is_geodetic
from .groups import (
    GeneratorAlphabet,
    GroupSpec,
    LabeledBall,
    cayley_ball,
    free_product_normal_form,
)
from .iec import IecInventory, enumerate_iecs_geodetic

EMPTY_TOKEN = "1"


@dataclass(frozen=True)
class Rule:
    lhs: tuple
    rhs: tuple

    @property
    def length_reducing(self) -> bool:
        return len(self.lhs) > len(self.rhs)

    def __str__(self):
        return f"{format_word(self.lhs)} -> {format_word(self.rhs)}"


def format_word(w) -> str:
    return " ".join(w) if w else EMPTY_TOKEN


def parse_word(text) -> tuple:
    if isinstance(text, (tuple, list)):
        return tuple(text)
    tokens = text.split()
    if tokens == [EMPTY_TOKEN]:
        return ()
    if EMPTY_TOKEN in tokens:
        raise PreconditionError(f"'{EMPTY_TOKEN}' stands for the empty word and cannot be mixed with letters")
    return tuple(tokens)


@dataclass(frozen=True)
class RewritingSystem:
    alphabet: GeneratorAlphabet
    rules: tuple
    warnings: tuple = field(default=(), compare=False)

    def __post_init__(self):
        seen = set()
        for rule in self.rules:
            for tok in rule.lhs + rule.rhs:
                self.alphabet.inv(tok)
            if rule in seen:
                raise PreconditionError(f"duplicate rule {rule}")
            seen.add(rule)

    @cached_property
    def confluence(self) -> "ConfluenceReport":
        return check_confluence(self)

    def to_text(self) -> str:
        lines = ["[alphabet]"]
        lines += [f"{a} {b}" for a, b in self.alphabet.pairs()]
        lines.append("[rules]")
        lines += [str(r) for r in self.rules]
        return "\n".join(lines) + "\n"


def free_reduction_rules(alphabet: GeneratorAlphabet) -> list:
    return [Rule((a, alphabet.inv(a)), ()) for a in alphabet.symbols]


def _sorted_rules(alphabet, rules) -> list:
    key = alphabet.word_key
    return sorted(set(rules), key=lambda r: (len(r.lhs), key(r.lhs), key(r.rhs)))


def rules_from_iec_word(alphabet: GeneratorAlphabet, c) -> list:
    """Rules ``u -> v`` from every rotation and both directions of a cyclic word.

    ``c`` has odd length ``2n + 1``; each reading ``w`` splits into
    ``u = w[:n+1]`` and ``v`` = inverse of ``w[n+1:]``, so that ``u v^-1 = w``.
    """
    c = tuple(c)
    if len(c) < 3 or len(c) % 2 == 0:
        raise PreconditionError(f"IEC label word must have odd length >= 3, got {len(c)}")
    n = (len(c) - 1) // 2
    readings = [c, alphabet.invert_word(c)]
    out = set()
    for w in readings:
        for k in range(len(w)):
            rot = w[k:] + w[:k]
            out.add(Rule(rot[: n + 1], alphabet.invert_word(rot[n + 1:])))
    return _sorted_rules(alphabet, out)


def iec_label_word(ball: LabeledBall, canon, start) -> tuple:
    ring = list(canon[:-1])
    k = ring.index(start)
    ring = ring[k:] + ring[:k] + [start]
    return tuple(ball.labels[u, v] for u, v in zip(ring, ring[1:]))


def extract_rws(ball: LabeledBall, inv: IecInventory | None = None) -> RewritingSystem:
    report = is_geodetic(ball.graph)
    if not report.geodetic:
        raise NotGeodeticError(report)
    if inv is None:
        inv = enumerate_iecs_geodetic(ball.graph)
    alphabet = ball.spec.alphabet
    one = ball.identity
    iec_rules = set()
    longest = 0
    for it in inv.iecs:
        if one in it.vertices:
            iec_rules.update(rules_from_iec_word(alphabet, iec_label_word(ball, it.canon, one)))
            longest = max(longest, (it.length - 1) // 2)
    warnings = ()
    if longest >= ball.radius:
        warnings = (
            f"an IEC through the identity reaches the ball boundary (radius {ball.radius}); "
            "longer IECs may be missing",
        )
    rules = _sorted_rules(alphabet, free_reduction_rules(alphabet))
    rules += _sorted_rules(alphabet, iec_rules - set(rules))
    return RewritingSystem(alphabet, tuple(rules), warnings)


def normalize(r: RewritingSystem, w) -> tuple:
    """Leftmost-first rewriting to an irreducible word.

    At each position the first matching rule in system order fires; the scan
    then resumes just far enough back to catch new matches.
    """
    w = tuple(w)
    start_len = len(w)
    rules = r.rules
    if not rules:
        return w
    reach = max(len(rule.lhs) for rule in rules)
    steps = 0
    pos = 0
    while pos < len(w):
        for rule in rules:
            k = len(rule.lhs)
            if w[pos:pos + k] == rule.lhs:
                if k <= len(rule.rhs):
                    raise PreconditionError(f"rule {rule} is not length-reducing")
                w = w[:pos] + rule.rhs + w[pos + k:]
                steps += 1
                pos = max(0, pos - reach + 1)
                break
        else:
            pos += 1
    if steps > start_len:
        raise AssertionError("more rewrite steps than letters")
    return w


def normalize_random(r: RewritingSystem, w, rng: random.Random) -> tuple:
    """Rewrite at a uniformly chosen redex until none is left."""
    w = tuple(w)
    while True:
        redexes = [
            (pos, rule)
            for rule in r.rules
            for pos in range(len(w) - len(rule.lhs) + 1)
            if w[pos:pos + len(rule.lhs)] == rule.lhs
        ]
        if not redexes:
            return w
        pos, rule = rng.choice(redexes)
        w = w[:pos] + rule.rhs + w[pos + len(rule.lhs):]


@dataclass(frozen=True)
class CriticalPair:
    overlap: tuple
    rules: tuple  # (index of first rule, index of second rule)
    reducts: tuple
    normal_forms: tuple

    @property
    def resolved(self) -> bool:
        return self.normal_forms[0] == self.normal_forms[1]

    def to_json(self):
        return {
            "overlap": format_word(self.overlap),
            "rules": list(self.rules),
            "reducts": [format_word(w) for w in self.reducts],
            "normal_forms": [format_word(w) for w in self.normal_forms],
            "resolved": self.resolved,
        }


def find_critical_pairs(r: RewritingSystem) -> list:
    """Proper overlaps and containments between every ordered pair of rules."""
    rules = r.rules
    out = []
    for i, p in enumerate(rules):
        for j, q in enumerate(rules):
            a, b = p.lhs, q.lhs
            # suffix of a == prefix of b, overlap shorter than both
            for k in range(1, min(len(a), len(b))):
                if a[-k:] == b[:k]:
                    word = a + b[k:]
                    out.append(_pair(r, word, (i, j), p.rhs + b[k:], a[:-k] + q.rhs))
            if i != j and len(b) <= len(a):
                for pos in range(len(a) - len(b) + 1):
                    if a[pos:pos + len(b)] == b:
                        out.append(_pair(r, a, (i, j), p.rhs, a[:pos] + q.rhs + a[pos + len(b):]))
    return out


def _pair(r, word, ij, x, y) -> CriticalPair:
    return CriticalPair(word, ij, (x, y), (normalize(r, x), normalize(r, y)))


@dataclass(frozen=True)
class ConfluenceReport:
    confluent: bool
    pairs: int
    unresolved: tuple

    def to_json(self):
        return {
            "confluent": self.confluent,
            "critical_pairs": self.pairs,
            "unresolved": [p.to_json() for p in self.unresolved],
        }


def check_confluence(r: RewritingSystem) -> ConfluenceReport:
    """Local confluence via critical pairs; enough because rules shorten words."""
    for rule in r.rules:
        if not rule.length_reducing:
            raise PreconditionError(f"rule {rule} is not length-reducing")
    pairs = find_critical_pairs(r)
    bad = tuple(p for p in pairs if not p.resolved)
    return ConfluenceReport(not bad, len(pairs), bad)


def words_equal(r: RewritingSystem, w1, w2) -> bool:
    if not r.confluence.confluent:
        raise UnverifiedSystemError("system is not confluent; normal forms do not decide equality")
    return normalize(r, w1) == normalize(r, w2)


@dataclass(frozen=True)
class CrossValidation:
    samples: int
    seed: int
    max_len: int
    radius: int
    equality_checks: int
    disagreements: tuple
    length_mismatches: tuple
    skipped: tuple

    @property
    def passed(self) -> bool:
        return not self.disagreements and not self.length_mismatches

    def to_json(self):
        return {
            "samples": self.samples,
            "seed": self.seed,
            "max_len": self.max_len,
            "radius": self.radius,
            "equality_checks": self.equality_checks,
            "disagreements": [list(map(format_word, d)) for d in self.disagreements],
            "length_mismatches": [
                {"word": format_word(w), "normal_form": format_word(nf), "distance": d}
                for w, nf, d in self.length_mismatches
            ],
            "skipped": [format_word(w) for w in self.skipped],
            "passed": self.passed,
        }


def random_words(alphabet: GeneratorAlphabet, samples: int, max_len: int, seed: int) -> list:
    rng = random.Random(seed)
    symbols = alphabet.symbols
    return [tuple(rng.choice(symbols) for _ in range(rng.randint(0, max_len))) for _ in range(samples)]


def cross_validate(
    r: RewritingSystem,
    spec: GroupSpec,
    samples: int,
    max_len: int,
    seed: int,
    radius: int | None = None,
    ball: LabeledBall | None = None,
) -> CrossValidation:
    """Check the rewriting system against the free-product normal form oracle.

    Equality: each sample is compared with an independently spelled shortest
    word for its element and with the next sample. Length: the normal form of
    a sample must be as long as the BFS distance of its element from 1 in a
    ball of ``radius`` (default ``max_len``); elements outside are skipped.
    """
    if ball is None:
        ball = cayley_ball(spec, radius or max_len)
    depth = dict(zip(ball.graph.names, (int(d) for d in ball.graph.bfs_row(ball.identity))))
    words = random_words(spec.alphabet, samples, max_len, seed)
    disagreements, mismatches, skipped = [], [], []
    checks = 0
    for k, w in enumerate(words):
        element = free_product_normal_form(spec, w)
        for other in (spec.spell(element), words[(k + 1) % len(words)]):
            checks += 1
            truth = element == free_product_normal_form(spec, other)
            if words_equal(r, w, other) != truth:
                disagreements.append((w, other))
        name = spec.name(element)
        if name not in depth:
            skipped.append(w)
            continue
        nf = normalize(r, w)
        if len(nf) != depth[name]:
            mismatches.append((w, nf, depth[name]))
    return CrossValidation(
        samples, seed, max_len, ball.radius, checks,
        tuple(disagreements), tuple(mismatches), tuple(skipped),
    )


def parse_rws(text: str) -> RewritingSystem:
    """Read the ``[alphabet]`` / ``[rules]`` text format written by ``to_text``."""
    section = None
    inverse: dict = {}
    symbols: list = []
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("[alphabet]", "[rules]"):
            section = line
            continue
        if section == "[alphabet]":
            parts = line.split()
            if len(parts) not in (1, 2) or not all(p.isalnum() and p != EMPTY_TOKEN for p in parts):
                raise DomainError(f"line {lineno}: expected 'symbol [inverse]', got {raw!r}")
            a, b = parts[0], parts[-1]
            for s in dict.fromkeys((a, b)):
                if s in inverse:
                    raise DomainError(f"line {lineno}: symbol {s!r} declared twice")
                symbols.append(s)
            inverse[a], inverse[b] = b, a
        elif section == "[rules]":
            if line.count("->") != 1:
                raise DomainError(f"line {lineno}: expected 'lhs -> rhs', got {raw!r}")
            lhs, rhs = (parse_word(x) for x in line.split("->"))
            if not lhs:
                raise DomainError(f"line {lineno}: empty left-hand side")
            for tok in lhs + rhs:
                if tok not in inverse:
                    raise DomainError(f"line {lineno}: unknown token {tok!r}")
            rules.append(Rule(lhs, rhs))
        else:
            raise DomainError(f"line {lineno}: content before a section header")
    return RewritingSystem(GeneratorAlphabet(tuple(symbols), inverse), tuple(rules))
