"""Reduced words of the longest permutation and the moves between them.

A reduced word of rank ``n`` is a sequence of ``N = n(n+1)/2`` letters from
``{1, ..., n}`` whose product of simple transpositions is the reversal of
``(1, ..., n+1)``.  Rank 0 (the empty word) is allowed so that the extension
tower can start from nothing.

>>> w = ReducedWord.parse("2,1,3,2,3,1")
>>> w.rank, len(w)
(3, 6)
>>> ind(w, "D"), ind(w, "A")
(1, 1)
>>> print(contract(ReducedWord.parse("1,2,1,3,2,1"), "D"))
1,2,1
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "WordError", "MoveError", "DomainError",
    "ReducedWord", "CommutationClass", "BULLETS",
    "evaluate_word", "enumerate_reduced_words",
    "two_move", "three_move", "is_two_move_equivalent", "canonical_form",
    "commutation_class", "commutation_classes",
    "ind", "coind", "normal_form", "contract", "extend", "gc_type", "parse_sigma",
    "LayoutError", "layout_index", "sigma_word", "sigma_of_layout", "two_move_permutation",
]

BULLETS = ("D", "A")


class WordError(ValueError):
    """Raised for letter sequences that are not reduced words of w0."""


class MoveError(ValueError):
    """Raised when a braid move is not applicable at the requested spot."""


class DomainError(ValueError):
    """Raised for out-of-range ranks, positions or extension sites."""


def _check_bullet(bullet: str) -> str:
    if bullet not in BULLETS:
        raise DomainError(f"bullet must be 'A' or 'D', got {bullet!r}")
    return bullet


def evaluate_word(letters: Sequence[int], n: int) -> tuple[int, ...]:
    """Return the one-line notation of ``s_{i_1} ... s_{i_N}`` in S_{n+1}.

    >>> evaluate_word((1, 2, 1), 2)
    (3, 2, 1)
    """
    perm = list(range(1, n + 2))
    for a in letters:
        if not isinstance(a, int) or not 1 <= a <= n:
            raise WordError(f"letter {a!r} is outside 1..{n}")
        perm[a - 1], perm[a] = perm[a], perm[a - 1]
    return tuple(perm)


@dataclass(frozen=True)
class ReducedWord:
    rank: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.rank < 0:
            raise WordError(f"rank must be nonnegative, got {self.rank}")
        length = self.rank * (self.rank + 1) // 2
        if len(self.letters) != length:
            raise WordError(
                f"a reduced word of w0 in rank {self.rank} has {length} letters, "
                f"got {len(self.letters)}")
        perm = evaluate_word(self.letters, self.rank)
        if perm != tuple(range(self.rank + 1, 0, -1)):
            raise WordError(f"{self} does not evaluate to the longest element")

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> "ReducedWord":
        """Parse ``"2,1,3"``-style text; the rank defaults to the largest letter."""
        text = text.strip().strip("()[]")
        letters: list[int] = []
        if text:
            for token in text.split(","):
                token = token.strip()
                try:
                    letters.append(int(token))
                except ValueError:
                    raise WordError(f"malformed letter {token!r}") from None
        if rank is None:
            rank = max(letters, default=0)
        return cls(rank, tuple(letters))

    @property
    def length(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, j):
        return self.letters[j]

    def __str__(self) -> str:
        return ",".join(map(str, self.letters))

    def mirror(self) -> "ReducedWord":
        """The word under the diagram automorphism ``i -> n+1-i``."""
        return ReducedWord(self.rank, tuple(self.rank + 1 - a for a in self.letters))


@dataclass(frozen=True)
class CommutationClass:
    canonical: ReducedWord
    size: int | None = None


def enumerate_reduced_words(n: int) -> list[ReducedWord]:
    """All reduced words of w0 in rank ``n``, in lexicographic order."""
    if n <= 0:
        raise DomainError(f"rank must be positive, got {n}")
    total = n * (n + 1) // 2
    out: list[ReducedWord] = []
    perm = list(range(1, n + 2))
    prefix: list[int] = []

    def walk() -> None:
        if len(prefix) == total:
            out.append(ReducedWord(n, tuple(prefix)))
            return
        for a in range(1, n + 1):
            # right multiplication by s_a lengthens iff positions a, a+1 are ascending
            if perm[a - 1] < perm[a]:
                perm[a - 1], perm[a] = perm[a], perm[a - 1]
                prefix.append(a)
                walk()
                prefix.pop()
                perm[a - 1], perm[a] = perm[a], perm[a - 1]

    walk()
    return out


def two_move(word: ReducedWord, p: int) -> ReducedWord:
    """Swap the commuting letters at 1-based positions ``p`` and ``p+1``."""
    if not 1 <= p < len(word):
        raise MoveError(f"position {p} out of range for a 2-move")
    a, b = word[p - 1], word[p]
    if abs(a - b) <= 1:
        raise MoveError(f"letters ({a},{b}) at position {p} do not commute")
    letters = list(word.letters)
    letters[p - 1], letters[p] = b, a
    return ReducedWord(word.rank, tuple(letters))


def three_move(word: ReducedWord, p: int) -> ReducedWord:
    """Replace ``(i,j,i)`` by ``(j,i,j)`` at 1-based position ``p`` when ``|i-j| = 1``."""
    if not 1 <= p <= len(word) - 2:
        raise MoveError(f"position {p} out of range for a 3-move")
    a, b, c = word[p - 1: p + 2]
    if a != c or abs(a - b) != 1:
        raise MoveError(f"letters ({a},{b},{c}) at position {p} are not a braid pattern")
    letters = list(word.letters)
    letters[p - 1: p + 2] = [b, a, b]
    return ReducedWord(word.rank, tuple(letters))


def _projections(letters: Sequence[int], n: int) -> list[tuple[int, ...]]:
    # two words are 2-move equivalent iff they agree on every projection
    # to a pair of non-commuting letters
    out = []
    for a in range(1, n + 1):
        out.append(tuple(x for x in letters if x == a or x == a + 1))
    return out


def is_two_move_equivalent(u: ReducedWord, v: ReducedWord) -> bool:
    if u.rank != v.rank:
        return False
    return _projections(u.letters, u.rank) == _projections(v.letters, v.rank)


def canonical_form(word: ReducedWord) -> ReducedWord:
    """Lexicographically least word reachable from ``word`` by 2-moves.

    Greedy: at every step emit the smallest letter that can be commuted to
    the front of what remains.
    """
    return ReducedWord(word.rank, _greedy_min(word.letters))


@lru_cache(maxsize=1 << 16)
def _greedy_min(letters: tuple[int, ...]) -> tuple[int, ...]:
    rest = list(letters)
    out = []
    while rest:
        best = None
        blocked: set[int] = set()
        for idx, a in enumerate(rest):
            if a not in blocked and (best is None or a < rest[best]):
                best = idx
            blocked.update((a - 1, a, a + 1))
        out.append(rest.pop(best))
    return tuple(out)


def commutation_class(word: ReducedWord) -> CommutationClass:
    """Breadth-first closure of ``word`` under 2-moves."""
    seen = {word.letters}
    queue = deque([word.letters])
    while queue:
        cur = queue.popleft()
        for p in range(len(cur) - 1):
            if abs(cur[p] - cur[p + 1]) > 1:
                nxt = cur[:p] + (cur[p + 1], cur[p]) + cur[p + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return CommutationClass(ReducedWord(word.rank, min(seen)), len(seen))


def commutation_classes(n: int) -> list[CommutationClass]:
    """Partition of all reduced words of rank ``n``, sorted by canonical word."""
    counts: dict[tuple[int, ...], int] = {}
    for w in enumerate_reduced_words(n):
        key = _greedy_min(w.letters)
        counts[key] = counts.get(key, 0) + 1
    return [CommutationClass(ReducedWord(n, key), size) for key, size in sorted(counts.items())]


# ----------------------------------------------------------------------------
# indices, normal forms, contraction and extension


def ind(word: ReducedWord, bullet: str) -> int:
    """Number of crossings strictly below the last (D) or first (A) wire."""
    from .wiring import build_diagram, nodes_below_wire

    _check_bullet(bullet)
    if word.rank == 0:
        return 0
    wire = word.rank + 1 if bullet == "D" else 1
    return nodes_below_wire(build_diagram(word), wire)


def coind(word: ReducedWord, bullet: str) -> int:
    """Number of crossings strictly above the last (D) or first (A) wire."""
    _check_bullet(bullet)
    if word.rank == 0:
        return 0
    return len(word) - word.rank - ind(word, bullet)


def _descending_normal_form(word: ReducedWord) -> tuple[tuple[int, ...], tuple[int, ...]]:
    from .wiring import build_diagram

    n = word.rank
    diagram = build_diagram(word)
    # 0-based position of the crossing of the last wire in column c
    pos = [0] * (n + 2)
    for node in diagram.nodes:
        if node.wires[1] == n + 1:
            pos[node.column] = node.index - 1
    w = list(word.letters)
    start = pos[1]  # w[start:start+m] is the block (m, ..., 1)
    for m in range(1, n):
        a = pos[m + 1]
        between = w[a + 1:start]
        if m in between or m + 1 in between:
            raise AssertionError(f"block commutation failed on {word} at step {m}")
        low = [x for x in between if x <= m - 1]
        high = [x for x in between if x >= m + 2]
        w = w[:a] + low + [m + 1] + w[start:start + m] + high + w[start + m:]
        start = a + len(low)
    return tuple(w[:start]), tuple(w[start + n:])


def normal_form(word: ReducedWord, bullet: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split ``word`` (up to 2-moves) as ``prefix . block . suffix``.

    The block is ``(n, n-1, ..., 1)`` for ``"D"`` and ``(1, ..., n)`` for
    ``"A"``; the suffix length is ``ind(word, bullet)``.
    """
    _check_bullet(bullet)
    if word.rank == 0:
        return (), ()
    if bullet == "D":
        return _descending_normal_form(word)
    n = word.rank
    prefix, suffix = _descending_normal_form(word.mirror())
    flip = lambda part: tuple(n + 1 - a for a in part)  # noqa: E731
    return flip(prefix), flip(suffix)


def contract(word: ReducedWord, bullet: str) -> ReducedWord:
    """Remove the last (D) or first (A) wire; the result has rank ``n-1``."""
    _check_bullet(bullet)
    if word.rank == 0:
        raise DomainError("the empty word cannot be contracted")
    prefix, suffix = normal_form(word, bullet)
    if bullet == "D":
        letters = prefix + tuple(a - 1 for a in suffix)
    else:
        letters = tuple(a - 1 for a in prefix) + suffix
    return ReducedWord(word.rank - 1, letters)


def extend(word: ReducedWord, bullet: str, s: int) -> ReducedWord:
    """Insert a new last (D) or first (A) wire with ``s`` crossings below it."""
    _check_bullet(bullet)
    n, total = word.rank, len(word)
    if not 0 <= s <= total:
        raise DomainError(f"extension site {s} outside 0..{total}")
    head, tail = word.letters[:total - s], word.letters[total - s:]
    if bullet == "D":
        letters = head + tuple(range(n + 1, 0, -1)) + tuple(a + 1 for a in tail)
    else:
        letters = tuple(a + 1 for a in head) + tuple(range(1, n + 2)) + tail
    return ReducedWord(n + 1, letters)


def gc_type(word: ReducedWord) -> tuple[str, ...] | None:
    """A sequence ``(sigma_1, ..., sigma_n)`` of vanishing nested indices, or None.

    Branches are tried D before A; in rank 1 both letters work and D is
    reported.
    """
    return _gc_type(word.rank, _greedy_min(word.letters))


@lru_cache(maxsize=None)
def _gc_type(rank: int, letters: tuple[int, ...]) -> tuple[str, ...] | None:
    if rank == 0:
        return ()
    word = ReducedWord(rank, letters)
    for bullet in BULLETS:
        if ind(word, bullet) == 0:
            inner = contract(word, bullet)
            rest = _gc_type(inner.rank, _greedy_min(inner.letters))
            if rest is not None:
                return rest + (bullet,)
    return None


def parse_sigma(text: str | Iterable[str]) -> tuple[str, ...]:
    """Parse ``"D,D,A"`` or ``"DDA"`` into a sigma tuple."""
    if isinstance(text, str):
        text = [c for c in text.replace(",", "").replace(" ", "").upper()]
    sigma = tuple(text)
    for c in sigma:
        _check_bullet(c)
    return sigma


# ----------------------------------------------------------------------------
# extension-built words and their double-index layout


class LayoutError(ValueError):
    """Raised when a word is not built by extensions at 0."""


def layout_index(k: int, j: int) -> int:
    """1-based node index of ``t_{k,j}``: the ``j``-th letter of block ``k``."""
    return k * (k - 1) // 2 + j


def sigma_word(sigma: Sequence[str]) -> ReducedWord:
    """``E_{sigma_n}(0) o ... o E_{sigma_1}(0)`` applied to the empty word."""
    word = ReducedWord(0, ())
    for b in sigma:
        word = extend(word, _check_bullet(b), 0)
    return word


def sigma_of_layout(word: ReducedWord) -> tuple[str, ...]:
    """Recover sigma from an extension-built word (rank 1 reports D)."""
    n = word.rank
    letters = word.letters
    sigma: list[str] = []
    for k in range(n, 0, -1):
        block = letters[len(letters) - k:]
        rest = letters[:len(letters) - k]
        if k == 1 and block == (1,):
            sigma.append("D")
        elif block == tuple(range(k, 0, -1)):
            sigma.append("D")
        elif block == tuple(range(1, k + 1)):
            sigma.append("A")
            rest = tuple(a - 1 for a in rest)
        else:
            raise LayoutError(f"{word} is not built by extensions at 0")
        if any(not 1 <= a <= k - 1 for a in rest):
            raise LayoutError(f"{word} is not built by extensions at 0")
        letters = rest
    return tuple(reversed(sigma))


def two_move_permutation(source: ReducedWord, target: ReducedWord) -> tuple[int, ...]:
    """``perm[p]`` is the 0-based position in ``source`` of the letter at ``p`` in ``target``.

    2-moves never reorder equal letters, so the ``m``-th occurrence of a
    letter in one word is matched with the ``m``-th occurrence in the other.
    """
    if not is_two_move_equivalent(source, target):
        raise MoveError(f"{source} and {target} are not related by 2-moves")
    where: dict[int, list[int]] = {}
    for p, a in enumerate(source.letters):
        where.setdefault(a, []).append(p)
    seen: dict[int, int] = {}
    perm = []
    for a in target.letters:
        m = seen.get(a, 0)
        perm.append(where[a][m])
        seen[a] = m + 1
    return tuple(perm)
