"""Countable ordinals below epsilon_0 in hereditary Cantor normal form.

An ordinal is a sorted tuple of (exponent, coefficient) terms with strictly
decreasing exponents (themselves ordinals) and positive coefficients; the
empty tuple is 0.  The representation is canonical: equal ordinals have
identical term tuples, so equality, hashing and total order are structural.

The module also provides ladder systems: for every limit ordinal a strictly
increasing cofinal omega-sequence, either the standard rule-based one, a
seeded variant whose sequences share common prefixes, or an explicit table.
"""

from __future__ import annotations

import hashlib
import random
import re
from typing import Iterable, Iterator, NamedTuple

from .errors import DomainError, OrdinalParseError, ValidationError

LT, EQ, GT = -1, 0, 1


class Ordinal:
    """Immutable ordinal below epsilon_0 in Cantor normal form."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: tuple = ()):
        self.terms = tuple(terms)
        self._hash = None

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "Ordinal":
        if n < 0:
            raise DomainError("ordinals are non-negative")
        return Ordinal(((ZERO, n),)) if n else ZERO

    def successor(self) -> "Ordinal":
        return self + 1

    def predecessor(self) -> "Ordinal":
        if not self.is_successor:
            raise DomainError(f"{self} is not a successor")
        exp, coeff = self.terms[-1]
        head = self.terms[:-1]
        return Ordinal(head + ((exp, coeff - 1),) if coeff > 1 else head)

    def __add__(self, n: int) -> "Ordinal":
        """Append a natural number (the only addition the constructions need)."""
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise DomainError("cannot add a negative number")
        if n == 0:
            return self
        if self.terms and self.terms[-1][0].is_zero:
            exp, coeff = self.terms[-1]
            return Ordinal(self.terms[:-1] + ((exp, coeff + n),))
        return Ordinal(self.terms + ((ZERO, n),))

    # -- classification ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    # -- order -------------------------------------------------------------

    def compare(self, other: "Ordinal") -> int:
        """Total order; returns -1, 0 or 1."""
        for (e1, c1), (e2, c2) in zip(self.terms, other.terms):
            c = e1.compare(e2)
            if c:
                return c
            if c1 != c2:
                return LT if c1 < c2 else GT
        if len(self.terms) == len(other.terms):
            return EQ
        return LT if len(self.terms) < len(other.terms) else GT

    def __eq__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other):
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms != other.terms

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, coeff in self.terms:
            if exp.is_zero:
                parts.append(str(coeff))
            else:
                base = "w" if exp == ONE else f"w^({exp})"
                parts.append(base if coeff == 1 else f"{base}*{coeff}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"Ordinal({str(self)!r})"


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def omega_power(exp: Ordinal, coeff: int = 1) -> Ordinal:
    """The ordinal w^exp * coeff."""
    if coeff < 0:
        raise DomainError("coefficient must be non-negative")
    if coeff == 0:
        return ZERO
    if exp.is_zero:
        return Ordinal.from_int(coeff)
    return Ordinal(((exp, coeff),))


class Classified(NamedTuple):
    kind: str  # "zero" | "successor" | "limit"
    predecessor: Ordinal | None


def classify(a: Ordinal) -> Classified:
    """Zero, successor (with predecessor), or limit of cofinality omega."""
    if a.is_zero:
        return Classified("zero", None)
    if a.is_successor:
        return Classified("successor", a.predecessor())
    return Classified("limit", None)


# -- literal grammar -------------------------------------------------------
#
#   ord  := term ('+' term)*
#   term := 'w^' '(' ord ')' ('*' nat)?  |  'w' ('*' nat)?  |  nat
#
# Parsing is strict: exponents must be strictly decreasing and coefficients
# positive, so parse(str(a)) == a and every accepted literal is canonical.

_TOKEN = re.compile(r"w\^|w|\d+|[()*+]")


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    for m in _TOKEN.finditer(text):
        if m.start() != pos:
            raise OrdinalParseError(f"unexpected character at {pos}: {text[pos:]!r}")
        tokens.append(m.group())
        pos = m.end()
    if pos != len(text):
        raise OrdinalParseError(f"unexpected character at {pos}: {text[pos:]!r}")
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise OrdinalParseError("unexpected end of literal")
        if expected is not None and tok != expected:
            raise OrdinalParseError(f"expected {expected!r}, got {tok!r}")
        self.i += 1
        return tok

    def parse_ord(self) -> Ordinal:
        terms = [self.parse_term()]
        while self.peek() == "+":
            self.take("+")
            terms.append(self.parse_term())
        if len(terms) == 1 and terms[0] is None:
            return ZERO
        flat: list[tuple[Ordinal, int]] = []
        for t in terms:
            if t is None:
                raise OrdinalParseError("'0' may only appear as the whole literal")
            exp, coeff = t
            if flat and flat[-1][0].compare(exp) <= 0:
                raise OrdinalParseError("exponents must be strictly decreasing")
            flat.append((exp, coeff))
        return Ordinal(tuple(flat))

    def parse_term(self):
        """Returns (exponent, coefficient), or None for the literal nat 0."""
        tok = self.take()
        if tok == "w^":
            self.take("(")
            exp = self.parse_ord()
            self.take(")")
            if exp.is_zero:
                raise OrdinalParseError("write w^(0)*c as a plain number")
            return exp, self.parse_coeff()
        if tok == "w":
            return ONE, self.parse_coeff()
        if tok.isdigit():
            n = int(tok)
            return (ZERO, n) if n else None
        raise OrdinalParseError(f"unexpected token {tok!r}")

    def parse_coeff(self) -> int:
        if self.peek() == "*":
            self.take("*")
            tok = self.take()
            if not tok.isdigit():
                raise OrdinalParseError(f"expected a number after '*', got {tok!r}")
            n = int(tok)
            if n < 1:
                raise OrdinalParseError("coefficients must be >= 1")
            return n
        return 1


def parse_ordinal(text: str) -> Ordinal:
    """Parse a canonical ordinal literal such as 'w^(2)*3+w+5'."""
    parser = _Parser(_tokenize(text.strip()))
    result = parser.parse_ord()
    if parser.peek() is not None:
        raise OrdinalParseError(f"trailing tokens: {parser.tokens[parser.i:]}")
    return result


# -- ladder systems --------------------------------------------------------


def canonical_ladder(alpha: Ordinal, n: int) -> Ordinal:
    """Standard fundamental sequence of a limit ordinal.

    With alpha = head + w^e (the final coefficient absorbed into the head):
    index n maps to head+n when e = 1, to head + w^(e-1)*n for successor e,
    and to head + w^(e[n]) for limit e.  Values are strictly increasing in n
    and cofinal in alpha.
    """
    if not alpha.is_limit:
        raise DomainError(f"{alpha} is not a limit ordinal")
    if n < 0:
        raise DomainError("ladder index must be a natural number")
    exp, coeff = alpha.terms[-1]
    head = alpha.terms[:-1] + (((exp, coeff - 1),) if coeff > 1 else ())
    if exp.is_successor:
        sub = exp.predecessor()
        return Ordinal(head + ((sub, n),)) if n else Ordinal(head)
    return Ordinal(head + ((canonical_ladder(exp, n), 1),))


_SEED_PREFIX_MAX = 8


def _stable_rng(*parts) -> random.Random:
    key = ":".join(str(p) for p in parts).encode()
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


class LadderSystem:
    """Assigns to every limit ordinal a strictly increasing cofinal sequence.

    kind 'canonical' uses the rule-based sequences.  kind 'seeded' prepends a
    shared, seed-determined run of naturals (so distinct ordinals agree on
    long prefixes, giving nondegenerate disagreement indices) and continues
    with the canonical sequence from above the prefix.  kind 'explicit' reads
    finite tables and is meant for tests.
    """

    def __init__(self, kind: str, seed: int | None = None, table=None):
        if kind not in ("canonical", "seeded", "explicit"):
            raise ValidationError(f"unknown ladder kind {kind!r}")
        self.kind = kind
        self.seed = seed
        self.table = table
        if kind == "seeded":
            if seed is None:
                raise ValidationError("seeded ladders need a seed")
            rng = _stable_rng(seed, "ladder-prefix-pool")
            pool = [rng.randrange(3)]
            for _ in range(_SEED_PREFIX_MAX - 1):
                pool.append(pool[-1] + 1 + rng.randrange(4))
            self._pool = tuple(pool)
        if kind == "explicit":
            if not table:
                raise ValidationError("explicit ladders need a table")
            for alpha, values in table.items():
                for i, v in enumerate(values):
                    if v >= alpha or (i and values[i - 1] >= v):
                        raise ValidationError(
                            f"ladder of {alpha} must be strictly increasing below it"
                        )

    @classmethod
    def canonical(cls) -> "LadderSystem":
        return cls("canonical")

    @classmethod
    def seeded(cls, seed: int) -> "LadderSystem":
        return cls("seeded", seed=seed)

    @classmethod
    def explicit(cls, table) -> "LadderSystem":
        return cls("explicit", table=dict(table))

    @property
    def key(self) -> tuple:
        """Hashable identity used by memo caches."""
        if self.kind == "explicit":
            return ("explicit", id(self.table))
        return (self.kind, self.seed)

    def value(self, alpha: Ordinal, n: int) -> Ordinal:
        if not alpha.is_limit:
            raise DomainError(f"{alpha} is not a limit ordinal")
        if self.kind == "canonical":
            return canonical_ladder(alpha, n)
        if self.kind == "explicit":
            values = self.table.get(alpha)
            if values is None or n >= len(values):
                raise DomainError(f"explicit ladder of {alpha} has no entry {n}")
            return values[n]
        p = _stable_rng(self.seed, "prefix-len", alpha).randint(0, _SEED_PREFIX_MAX)
        if n < p:
            return Ordinal.from_int(self._pool[n])
        shift = 0
        if p:
            # Least canonical index whose value clears the prefix.
            last = Ordinal.from_int(self._pool[p - 1])
            while canonical_ladder(alpha, shift) <= last:
                shift += 1
        return canonical_ladder(alpha, shift + (n - p))

    def first_index_at_least(self, alpha: Ordinal, target: Ordinal, limit: int = 1 << 16) -> int:
        """Least n with ladder(alpha, n) >= target; galloping then bisection."""
        if self.value(alpha, 0) >= target:
            return 0
        lo, hi = 0, 1
        while self.value(alpha, hi) < target:
            lo, hi = hi, hi * 2
            if hi > limit:
                raise DomainError(
                    f"no ladder entry of {alpha} reaches {target} within {limit} steps"
                )
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.value(alpha, mid) < target:
                lo = mid
            else:
                hi = mid
        return hi

    def to_json(self) -> dict:
        if self.kind == "explicit":
            return {
                "kind": "explicit",
                "table": {str(a): [str(v) for v in vs] for a, vs in sorted(self.table.items())},
            }
        if self.kind == "seeded":
            return {"kind": "seeded", "seed": self.seed}
        return {"kind": "canonical"}

    @classmethod
    def from_json(cls, data: dict) -> "LadderSystem":
        kind = data.get("kind")
        if kind == "canonical":
            return cls.canonical()
        if kind == "seeded":
            return cls.seeded(int(data["seed"]))
        if kind == "explicit":
            table = {
                parse_ordinal(a): tuple(parse_ordinal(v) for v in vs)
                for a, vs in data["table"].items()
            }
            return cls.explicit(table)
        raise ValidationError(f"unknown ladder kind {kind!r}")


def ladder(system: LadderSystem, alpha: Ordinal, n: int) -> Ordinal:
    """Entry n of the ladder of the limit ordinal alpha."""
    return system.value(alpha, n)


# -- sampling --------------------------------------------------------------


def random_ordinal(rng: random.Random, bound: Ordinal) -> Ordinal:
    """A random ordinal strictly below bound (not uniform, but well spread)."""
    if bound.is_zero:
        raise DomainError("no ordinal lies below 0")
    exp, coeff = bound.terms[0]
    rest = Ordinal(bound.terms[1:])
    if rest.terms and rng.random() < 0.35:
        tail = random_ordinal(rng, rest)
        return Ordinal(((exp, coeff),) + tail.terms)
    new_coeff = rng.randrange(coeff)
    head = ((exp, new_coeff),) if new_coeff else ()
    return Ordinal(head + _random_below_power(rng, exp).terms)


def _random_below_power(rng: random.Random, exp: Ordinal) -> Ordinal:
    """A random ordinal all of whose exponents are < exp (hence < w^exp)."""
    if exp.is_zero:
        return ZERO
    exps = {random_ordinal(rng, exp) for _ in range(rng.randint(0, 2))}
    terms = tuple((e, rng.randint(1, 3)) for e in sorted(exps, reverse=True))
    return Ordinal(terms)


def random_limit(rng: random.Random, bound: Ordinal) -> Ordinal:
    """A random limit ordinal below bound (which must exceed omega)."""
    if bound <= OMEGA:
        raise DomainError(f"no limit ordinal lies below {bound}")
    for _ in range(500):
        x = random_ordinal(rng, bound)
        if x.is_limit:
            return x
    return OMEGA


def first_limits(bound: Ordinal, n: int) -> list[Ordinal]:
    """The first n limit ordinals (w, w*2, ...) that lie below bound."""
    out = []
    for k in range(1, n + 1):
        lim = omega_power(ONE, k)
        if lim >= bound:
            break
        out.append(lim)
    return out


def parse_index(text: str):
    """An index value: plain int, or an ordinal literal."""
    text = text.strip()
    if re.fullmatch(r"\d+", text):
        return int(text)
    return parse_ordinal(text)


def index_to_json(value):
    return value if isinstance(value, int) else str(value)


def index_from_json(value):
    return value if isinstance(value, int) else parse_ordinal(value)


def sort_key(values: Iterable) -> Iterator:
    """Indices are either all ints or all ordinals; both sort natively."""
    return sorted(values)
