"""Skeleta as elements of a partially commutative monoid.

Letters are ``c_i`` (a clone set on level ``i``) and ``t_i`` standing for
``t_{i,i+1}`` (a tangle on levels ``i`` and ``i+1``).  Letters are totally
ordered ``c_1 < t_1 < c_2 < t_2 < ...`` and words are compared
lexicographically in that order; the canonical representative of a monoid
element is its lexicographically largest word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .poset import Poset
from .tangles import decompose


class Letter(NamedTuple):
    kind: str  # "c" or "t"
    index: int

    @property
    def rank(self) -> int:
        return 2 * self.index - (2 if self.kind == "c" else 1)

    @property
    def start(self) -> int:
        """Height at which the letter's up step begins in the Dyck picture."""
        return self.index - 1

    @property
    def end(self) -> int:
        return self.index if self.kind == "c" else self.index + 1

    @property
    def weight(self) -> int:
        """Fewest vertices the corresponding part can hold."""
        return 1 if self.kind == "c" else 4

    def __str__(self) -> str:
        if self.kind == "c":
            return f"c{self.index}"
        i = self.index
        return f"t{i}{i + 1}" if i < 9 else f"t{i}_{i + 1}"


def c(i: int) -> Letter:
    if i < 1:
        raise ValueError("letter index must be >= 1")
    return Letter("c", i)


def t(i: int) -> Letter:
    """The letter ``t_{i,i+1}``."""
    if i < 1:
        raise ValueError("letter index must be >= 1")
    return Letter("t", i)


Word = tuple[Letter, ...]

_TOKEN = re.compile(r"^(c)(\d+)$|^(t)(\d+)(?:[_,](\d+))?$")


def parse_letter(token: str) -> Letter:
    m = _TOKEN.match(token.strip())
    if not m:
        raise ValueError(f"bad letter {token!r}")
    if m.group(1):
        return c(int(m.group(2)))
    digits, second = m.group(4), m.group(5)
    if second is not None:
        i = int(digits)
        if int(second) != i + 1:
            raise ValueError(f"bad tangle letter {token!r}: levels must be adjacent")
        return t(i)
    for cut in range(1, len(digits)):
        head, tail = digits[:cut], digits[cut:]
        if not head.startswith("0") and int(tail) == int(head) + 1 and not tail.startswith("0"):
            return t(int(head))
    return t(int(digits))


def parse_word(text: str) -> Word:
    """Parse ``c1.c2.t12.c3``; ``t12`` and ``t1_2`` both mean ``t_{1,2}``."""
    text = text.strip()
    if not text or text == "e":
        return ()
    return tuple(parse_letter(tok) for tok in text.split("."))


def format_word(word: Sequence[Letter]) -> str:
    return ".".join(str(x) for x in word) if word else "e"


def commutes(x: Letter, y: Letter) -> bool:
    if x.kind == "c" and y.kind == "c":
        return abs(x.index - y.index) >= 2
    if x.kind == "t" and y.kind == "t":
        return abs(x.index - y.index) >= 3
    ci, tj = (x.index, y.index) if x.kind == "c" else (y.index, x.index)
    return ci <= tj - 2 or ci >= tj + 3


def lex_max(word: Sequence[Letter]) -> Word:
    """Swap adjacent commuting letters that are in increasing order until none remain."""
    w = list(word)
    k = 0
    while k < len(w) - 1:
        x, y = w[k], w[k + 1]
        if x.rank < y.rank and commutes(x, y):
            w[k], w[k + 1] = y, x
            k = max(k - 1, 0)
        else:
            k += 1
    return tuple(w)


def is_lex_max(word: Sequence[Letter]) -> bool:
    return all(not (x.rank < y.rank and commutes(x, y)) for x, y in zip(word, word[1:]))


def same_element(u: Sequence[Letter], w: Sequence[Letter]) -> bool:
    return lex_max(u) == lex_max(w)


def is_valid_skeleton(word: Sequence[Letter]) -> bool:
    w0 = lex_max(word)
    if w0 and w0[0] not in (c(1), t(1)):
        return False
    return not any(x == y and x.kind == "c" for x, y in zip(w0, w0[1:]))


def weight(word: Sequence[Letter]) -> int:
    return sum(x.weight for x in word)


def skeleton_of(p: Poset) -> Word:
    """Canonical skeleton word of a (3+1)-free poset."""
    return lex_max(Letter(*x) for x in decompose(p).word())


# -- decorated Dyck paths -------------------------------------------------------

@dataclass(frozen=True)
class DyckPath:
    """Steps: ``u`` plain up, ``U`` decorated up (always in pairs), ``d`` down."""

    steps: str

    @property
    def semilength(self) -> int:
        return len(self.steps) // 2

    def heights(self) -> list[int]:
        h = [0]
        for s in self.steps:
            h.append(h[-1] + (1 if s in "uU" else -1))
        return h

    def __str__(self) -> str:
        return self.steps


def to_dyck(w0: Sequence[Letter]) -> DyckPath:
    """Clone letters become plain up steps, tangle letters decorated double steps."""
    steps = []
    h = 0
    for x in w0:
        if x.start > h:
            raise ValueError(f"{format_word(w0)} is not a canonical skeleton word")
        steps.append("d" * (h - x.start))
        steps.append("u" if x.kind == "c" else "UU")
        h = x.end
    steps.append("d" * h)
    return DyckPath("".join(steps))


def from_dyck(path: DyckPath | str) -> Word:
    steps = path.steps if isinstance(path, DyckPath) else path
    if set(steps) - set("uUd"):
        raise ValueError(f"unknown step in {steps!r}")
    if "udu" in steps:
        raise ValueError("path contains an undecorated up-down-up")
    word = []
    h = 0
    k = 0
    while k < len(steps):
        s = steps[k]
        if s == "d":
            h -= 1
            if h < 0:
                raise ValueError("path goes below the axis")
            k += 1
        elif s == "u":
            word.append(c(h + 1))
            h += 1
            k += 1
        else:
            if steps[k:k + 2] != "UU":
                raise ValueError("decorated up steps must come in pairs")
            word.append(t(h + 1))
            h += 2
            k += 2
    if h != 0:
        raise ValueError("path does not return to the axis")
    return tuple(word)


def decorated_dyck_paths(semilength: int) -> Iterator[DyckPath]:
    """All decorated Dyck paths of the given semilength with no plain up-down-up."""

    def grow(prefix: str, h: int, ups: int) -> Iterator[str]:
        if ups == semilength and h == 0:
            yield prefix
            return
        if h > 0:
            yield from grow(prefix + "d", h - 1, ups)
        if ups < semilength and not prefix.endswith("ud"):
            yield from grow(prefix + "u", h + 1, ups + 1)
        if ups + 2 <= semilength:
            yield from grow(prefix + "UU", h + 2, ups + 2)

    for s in grow("", 0, 0):
        yield DyckPath(s)


# -- enumeration -----------------------------------------------------------------

def enumerate_skeleta(max_weight: int) -> Iterator[Word]:
    """Canonical words of all valid skeleta of weight at most ``max_weight``.

    A word is canonical iff each letter starts no higher than the previous one
    ends; validity adds a first letter starting at height 0 and no ``c_i c_i``.
    """
    word: list[Letter] = []

    def grow(h: int, budget: int) -> Iterator[Word]:
        yield tuple(word)
        for k in range(1, h + 2):
            for x in (Letter("c", k), Letter("t", k)):
                if x.weight > budget or (word and x.kind == "c" and word[-1] == x):
                    continue
                word.append(x)
                yield from grow(x.end, budget - x.weight)
                word.pop()

    yield from grow(0, max_weight)


def count_by_shape(words) -> dict[tuple[int, int], int]:
    """Tally words by (number of clone letters, number of tangle letters)."""
    table: dict[tuple[int, int], int] = {}
    for w in words:
        r = sum(1 for x in w if x.kind == "c")
        key = (r, len(w) - r)
        table[key] = table.get(key, 0) + 1
    return table
