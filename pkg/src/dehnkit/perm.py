"""Permutations of the four vertices of a tetrahedron."""

from __future__ import annotations

import itertools


class Perm4:
    """A bijection of {0, 1, 2, 3}, stored as its tuple of images.

    ``Perm4("3012")`` sends 0->3, 1->0, 2->1, 3->2.  Composition follows
    function notation: ``(p * q)(x) == p(q(x))``.
    """

    __slots__ = ("images",)

    def __init__(self, images):
        if isinstance(images, str):
            if len(images) != 4 or not images.isdigit():
                raise ValueError(f"bad permutation string {images!r}")
            images = [int(ch) for ch in images]
        images = tuple(int(x) for x in images)
        if sorted(images) != [0, 1, 2, 3]:
            raise ValueError(f"not a permutation of 0..3: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm4 is immutable")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm4") -> "Perm4":
        return Perm4(tuple(self.images[other.images[x]] for x in range(4)))

    def inverse(self) -> "Perm4":
        inv = [0] * 4
        for x, y in enumerate(self.images):
            inv[y] = x
        return Perm4(inv)

    def sign(self) -> int:
        s = 1
        im = self.images
        for i in range(4):
            for j in range(i + 1, 4):
                if im[i] > im[j]:
                    s = -s
        return s

    def __eq__(self, other):
        return isinstance(other, Perm4) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __str__(self):
        return "".join(str(x) for x in self.images)

    def __repr__(self):
        return f"Perm4('{self}')"

    @classmethod
    def identity(cls) -> "Perm4":
        return cls((0, 1, 2, 3))

    @classmethod
    def all(cls) -> list["Perm4"]:
        """All 24 permutations in lexicographic order of their images."""
        return [cls(p) for p in itertools.permutations(range(4))]
