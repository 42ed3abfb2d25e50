"""Exact word algebra in a finite-rank free group.

Letters are nonzero signed integers: +i is the i-th basis generator
(1-based) and -i its inverse.  Text I/O writes a generator as its
lowercase basis name and the inverse as the same name uppercased, so
with basis ("a", "b") the string "a B" denotes a*b^-1; "eps" denotes
the empty word.

Everything here is immutable; functions return new objects.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

import numpy as np


def _reduce_onto(stack: list[int], letters: Iterable[int]) -> list[int]:
    for l in letters:
        if stack and stack[-1] == -l:
            stack.pop()
        else:
            stack.append(l)
    return stack


class Word:
    """A freely reduced word.  The constructor reduces its input."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = ()):
        stack: list[int] = []
        for l in letters:
            l = int(l)
            if l == 0:
                raise ValueError("letters must be nonzero signed indices")
            if stack and stack[-1] == -l:
                stack.pop()
            else:
                stack.append(l)
        self.letters: tuple[int, ...] = tuple(stack)

    @classmethod
    def _raw(cls, letters: tuple[int, ...]) -> "Word":
        """Wrap an already-reduced letter tuple without rechecking."""
        w = object.__new__(cls)
        w.letters = letters
        return w

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if not self.letters:
            return other
        if not other.letters:
            return self
        return Word._raw(tuple(_reduce_onto(list(self.letters), other.letters)))

    def inverse(self) -> "Word":
        return Word._raw(tuple(-l for l in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        # w^n = u c^n u^-1 with c the cyclic core; the concatenation is
        # already reduced, so no rescan is needed.
        if n == 0 or not self.letters:
            return Word()
        core, conj = cyclic_reduce(self)
        c = core.letters if n > 0 else core.inverse().letters
        return Word._raw(conj.letters + c * abs(n) + conj.inverse().letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return "Word(%s)" % ", ".join(map(str, self.letters))


def free_reduce(letters: Iterable[int], rank: Optional[int] = None) -> Word:
    """Freely reduce a raw letter sequence.

    If `rank` is given, every letter must satisfy 1 <= |letter| <= rank.
    """
    letters = tuple(int(l) for l in letters)
    if rank is not None:
        for l in letters:
            if not 1 <= abs(l) <= rank:
                raise ValueError(f"letter {l} out of rank range 1..{rank}")
    return Word(letters)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split w = conj * core * conj^-1 with core cyclically reduced.

    Returns (core, conj).  A reduced word is cyclically reduced when its
    first letter is not the inverse of its last.
    """
    letters = w.letters
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return Word._raw(letters[i:j]), Word._raw(letters[:i])


def _letter_key(l: int) -> tuple[int, int]:
    return (abs(l), 0 if l > 0 else 1)


def _canonical_rotation(letters: tuple[int, ...]) -> tuple[int, ...]:
    if len(letters) < 2:
        return letters
    n = len(letters)
    doubled = letters + letters
    best = min(range(n), key=lambda i: tuple(_letter_key(l) for l in doubled[i:i + n]))
    return doubled[best:best + n]


class CyclicWord:
    """A conjugacy class, stored as a cyclically reduced representative.

    Equality and hashing go through the least rotation under the fixed
    letter order a < A < b < B < ..., so rotated representatives compare
    equal.
    """

    __slots__ = ("representative", "_canonical")

    def __init__(self, representative: Word):
        letters = representative.letters
        if len(letters) >= 2 and letters[0] == -letters[-1]:
            raise ValueError("representative is not cyclically reduced")
        self.representative = representative
        self._canonical = _canonical_rotation(letters)

    @classmethod
    def from_word(cls, w: Word) -> "CyclicWord":
        core, _ = cyclic_reduce(w)
        return cls(core)

    @property
    def canonical_letters(self) -> tuple[int, ...]:
        return self._canonical

    def __len__(self) -> int:
        return len(self.representative)

    def __bool__(self) -> bool:
        return bool(self.representative)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CyclicWord) and self._canonical == other._canonical

    def __hash__(self) -> int:
        return hash(self._canonical)

    def __repr__(self) -> str:
        return "CyclicWord(%s)" % ", ".join(map(str, self._canonical))


def conjugacy_class(w: Word) -> CyclicWord:
    return CyclicWord.from_word(w)


def power_exponent(g: Word, w: Word) -> Optional[int]:
    """The integer k with g = w^k, or None if there is none.

    w must be nontrivial.  Writing w = u c u^-1 with c cyclically
    reduced, g = w^k iff u^-1 g u is the literal k-fold concatenation of
    c, which pins |k| down to |u^-1 g u| / |c|.
    """
    if not w:
        raise ValueError("w must be nontrivial")
    core, conj = cyclic_reduce(w)
    h = conj.inverse() * g * conj
    if not h:
        return 0
    if len(h) % len(core):
        return None
    q = len(h) // len(core)
    if h.letters == core.letters * q:
        return q
    if h.letters == core.inverse().letters * q:
        return -q
    return None


# --- text grammar ---------------------------------------------------------


def cyclic_coset_representative(g: Word, w: Word) -> tuple[Word, int]:
    """Canonical representative of the coset g<w>, w nontrivial.

    Returns (rep, k) with g = rep * w^k, where rep has minimal length
    among the coset (ties broken by the fixed letter order).  Only
    |k| <= 2|g|/|core(w)| + 2 can reach the minimum, so the search is
    finite and exact.
    """
    if not w:
        raise ValueError("w must be nontrivial")
    core, _ = cyclic_reduce(w)
    bound = 2 * (len(g) // len(core)) + 2
    best = None
    for k in range(-bound, bound + 1):
        cand = g * (w ** (-k))
        key = (len(cand), tuple(map(_letter_key, cand.letters)))
        if best is None or key < best[0]:
            best = (key, cand, k)
    return best[1], best[2]


def check_basis_names(basis: Sequence[str]) -> None:
    """Validate a tuple of generator names for the text grammar."""
    seen = set()
    for name in basis:
        if not name or name != name.lower() or name.upper() == name:
            raise ValueError(f"basis name {name!r} must be a lowercase name")
        if any(c.isspace() for c in name) or "." in name:
            raise ValueError(f"basis name {name!r} contains whitespace or '.'")
        if name == "eps":
            raise ValueError("basis name 'eps' is reserved")
        if name in seen:
            raise ValueError(f"duplicate basis name {name!r}")
        seen.add(name)


def parse_word(text: str, basis: Sequence[str]) -> Word:
    """Parse whitespace-separated letters over the given basis names."""
    index = {name: i + 1 for i, name in enumerate(basis)}
    letters: list[int] = []
    for tok in text.split():
        if tok == "eps":
            continue
        low = tok.lower()
        if low not in index:
            raise ValueError(f"unknown letter {tok!r} (basis: {', '.join(basis)})")
        if tok == low:
            letters.append(index[low])
        elif tok == low.upper():
            letters.append(-index[low])
        else:
            raise ValueError(f"mixed-case letter {tok!r}")
    return Word(letters)


def word_str(w: Word, basis: Sequence[str]) -> str:
    if not w:
        return "eps"
    parts = []
    for l in w.letters:
        name = basis[abs(l) - 1]
        parts.append(name if l > 0 else name.upper())
    return " ".join(parts)


# --- automorphisms --------------------------------------------------------


def _apply_table(images: Sequence[Word], w: Word) -> Word:
    out: list[int] = []
    for l in w.letters:
        if abs(l) > len(images):
            raise ValueError(f"letter {l} outside rank {len(images)}")
        img = images[abs(l) - 1]
        _reduce_onto(out, img.letters if l > 0 else img.inverse().letters)
    return Word._raw(tuple(out))


class FreeAutomorphism:
    """An automorphism of F_r given by images of the basis letters.

    The caller supplies the inverse images too; the constructor checks
    that the two substitutions really are mutually inverse, so every
    constructed instance is a genuine automorphism.
    """

    __slots__ = ("rank", "images", "inverse_images")

    def __init__(self, rank: int, images: Sequence[Word],
                 inverse_images: Sequence[Word]):
        if rank < 1:
            raise ValueError("rank must be at least 1")
        images = tuple(images)
        inverse_images = tuple(inverse_images)
        if len(images) != rank or len(inverse_images) != rank:
            raise ValueError("need exactly one image per basis letter")
        for w in images + inverse_images:
            for l in w.letters:
                if abs(l) > rank:
                    raise ValueError(f"image letter {l} outside rank {rank}")
        for i in range(1, rank + 1):
            x = Word((i,))
            if _apply_table(images, _apply_table(inverse_images, x)) != x:
                raise ValueError(f"inverse images do not invert at letter {i}")
            if _apply_table(inverse_images, _apply_table(images, x)) != x:
                raise ValueError(f"images do not invert at letter {i}")
        self.rank = rank
        self.images = images
        self.inverse_images = inverse_images

    def __call__(self, w: Word) -> Word:
        return _apply_table(self.images, w)

    def inverse(self) -> "FreeAutomorphism":
        return FreeAutomorphism(self.rank, self.inverse_images, self.images)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FreeAutomorphism) and self.rank == other.rank
                and self.images == other.images)

    def __hash__(self) -> int:
        return hash((self.rank, self.images))

    def __repr__(self) -> str:
        return f"FreeAutomorphism(rank={self.rank}, images={list(self.images)})"


def identity_automorphism(rank: int) -> FreeAutomorphism:
    basis = tuple(Word((i,)) for i in range(1, rank + 1))
    return FreeAutomorphism(rank, basis, basis)


def compose(outer: FreeAutomorphism, inner: FreeAutomorphism) -> FreeAutomorphism:
    """(outer o inner)(x) = outer(inner(x))."""
    if outer.rank != inner.rank:
        raise ValueError("rank mismatch")
    images = tuple(_apply_table(outer.images, w) for w in inner.images)
    inverse_images = tuple(_apply_table(inner.inverse_images, w)
                           for w in outer.inverse_images)
    return FreeAutomorphism(outer.rank, images, inverse_images)


def automorphism_power(aut: FreeAutomorphism, n: int) -> FreeAutomorphism:
    result = identity_automorphism(aut.rank)
    step = aut if n >= 0 else aut.inverse()
    for _ in range(abs(n)):
        result = compose(step, result)
    return result


def abelianization_matrix(aut: FreeAutomorphism) -> np.ndarray:
    """Integer matrix of the induced map on Z^r; column j is the
    exponent vector of the image of the j-th generator."""
    r = aut.rank
    mat = np.zeros((r, r), dtype=np.int64)
    for j, img in enumerate(aut.images):
        for l in img.letters:
            mat[abs(l) - 1, j] += 1 if l > 0 else -1
    return mat


# --- generation testing ---------------------------------------------------


def nielsen_reduce(words: Iterable[Word]) -> tuple[Word, ...]:
    """Greedy Nielsen reduction: replace a word by a strictly shorter
    product with another whenever possible, drop trivial words.

    The result generates the same subgroup.  Output is normalised
    (each word lexicographically at most its inverse) and sorted.
    """
    us = [w for w in words if w]
    changed = True
    while changed:
        changed = False
        us = [w for w in us if w]
        for i in range(len(us)):
            u = us[i]
            for j in range(len(us)):
                if i == j:
                    continue
                v = us[j]
                for cand in (u * v, u * v.inverse(), v * u, v.inverse() * u):
                    if len(cand) < len(u):
                        us[i] = cand
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    normalised = set()
    for w in us:
        if w:
            inv = w.inverse()
            normalised.add(min(w, inv, key=lambda x: tuple(map(_letter_key, x.letters))))
    return tuple(sorted(normalised, key=lambda x: (len(x), tuple(map(_letter_key, x.letters)))))


class _StallingsGraph:
    """Folded subgroup graph; exact membership for <words> <= F_r."""

    def __init__(self, words: Iterable[Word]):
        self._parent = [0]
        self._adj: list[dict[int, int]] = [{}]
        pending: list[tuple[int, int]] = []
        for w in words:
            if not w:
                continue
            prev = 0
            for pos, l in enumerate(w.letters):
                if pos == len(w.letters) - 1:
                    nxt = 0
                else:
                    nxt = len(self._parent)
                    self._parent.append(nxt)
                    self._adj.append({})
                self._attach(prev, l, nxt, pending)
                prev = nxt
            self._fold(pending)

    def _find(self, a: int) -> int:
        root = a
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[a] != root:
            self._parent[a], a = root, self._parent[a]
        return root

    def _attach(self, u: int, l: int, v: int, pending: list) -> None:
        for s, ll, t in ((u, l, v), (v, -l, u)):
            s, t = self._find(s), self._find(t)
            cur = self._adj[s].get(ll)
            if cur is None:
                self._adj[s][ll] = t
            elif self._find(cur) != t:
                pending.append((cur, t))

    def _fold(self, pending: list) -> None:
        while pending:
            a, b = pending.pop()
            a, b = self._find(a), self._find(b)
            if a == b:
                continue
            if len(self._adj[a]) < len(self._adj[b]):
                a, b = b, a
            self._parent[b] = a
            merged = self._adj[b]
            self._adj[b] = {}
            for l, t in merged.items():
                t = self._find(t)
                cur = self._adj[a].get(l)
                if cur is None:
                    self._adj[a][l] = t
                elif self._find(cur) != t:
                    pending.append((cur, t))

    def contains(self, w: Word) -> bool:
        state = self._find(0)
        for l in w.letters:
            nxt = self._adj[state].get(l)
            if nxt is None:
                return False
            state = self._find(nxt)
        return state == self._find(0)


def generates_free_group(words: Iterable[Word], rank: int) -> bool:
    """Whether the given words generate all of F_rank.

    Nielsen reduction usually lands directly on the standard basis; when
    the greedy reduction stalls short of it (no strictly shortening move
    exists), the answer is settled exactly by folding the subgroup graph
    and reading each basis letter as a loop.
    """
    reduced = nielsen_reduce(words)
    if (len(reduced) == rank and all(len(w) == 1 for w in reduced)
            and {abs(w.letters[0]) for w in reduced} == set(range(1, rank + 1))):
        return True
    graph = _StallingsGraph(reduced)
    return all(graph.contains(Word((i,))) for i in range(1, rank + 1))
