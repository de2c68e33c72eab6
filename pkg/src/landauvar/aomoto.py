"""Singularity structure of Aomoto polylogarithms of weight n.

Components of the Landau variety correspond to pairs of index sets (I, J)
with |I| + |J| = n + 1, each a linear pinch whose defining equation is the
determinant of the submatrix of hyperplane columns.  The maximal iterated
variations pick up one new Q-index and drop one R-index per step, so they are
labelled by pairs of permutations; the weight-n part of the symbol is the
signed sum over all such chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .hierarchy import HierarchyRelation
from .landau import LINEAR, LandauComponent
from .poly import Polynomial


class AomotoError(ValueError):
    pass


def _digits(indices) -> str:
    return "".join(str(i) for i in sorted(indices))


def component_id(I, J) -> str:
    return f"l_I{_digits(I)}_J{_digits(J)}"


def letter_id(I, J) -> str:
    return f"det_t_I{_digits(I)}_J{_digits(J)}"


def aomoto_components(n: int) -> list:
    """All C(2n+2, n+1) codimension-one components for weight n; the pure
    cases I empty or J empty have identically zero variation."""
    if n < 1:
        raise AomotoError("weight must be at least 1")
    universe = list(range(n + 1))
    comps = []
    for size_i in range(0, n + 2):
        size_j = n + 1 - size_i
        if size_j > n + 1:
            continue
        for I in combinations(universe, size_i):
            for J in combinations(universe, size_j):
                comps.append(LandauComponent(
                    id=component_id(I, J),
                    defining=Polynomial.var(letter_id(I, J)),
                    type_J=frozenset(f"Q{i}" for i in I),
                    type_K=frozenset(f"R{j}" for j in J),
                    simple_J=frozenset(f"Q{i}" for i in I),
                    simple_K=frozenset(f"R{j}" for j in J),
                    pinch=LINEAR,
                    parity=-1,
                    variation_known_zero=(size_i == 0 or size_j == 0),
                ))
    return comps


def aomoto_edges(n: int) -> HierarchyRelation:
    """Arrows l_{IJ} -> l_{I'J'} exactly for strict inclusions I' > I and
    J' < J; no self-edges.  (Coincides with the generic relation on these
    components, since every pinch is linear.)"""
    comps = aomoto_components(n)
    data = []
    for c in comps:
        I = frozenset(int(q[1:]) for q in c.type_J)
        J = frozenset(int(r[1:]) for r in c.type_K)
        data.append((c.id, I, J))
    edges = set()
    for cid, I, J in data:
        for cid2, I2, J2 in data:
            if I < I2 and J2 < J:
                edges.add((cid, cid2))
    return HierarchyRelation(
        nodes=tuple(sorted(c.id for c in comps)), edges=frozenset(edges)
    )


def _parity(perm) -> int:
    inversions = sum(
        1
        for a in range(len(perm))
        for b in range(a + 1, len(perm))
        if perm[a] > perm[b]
    )
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class SignedWord:
    """One length-n tensor word of the symbol: letters left to right, the
    rightmost letter is the first variation of the chain."""

    sign: int
    letters: tuple  # of (frozenset I, frozenset J)

    def letter_ids(self) -> tuple:
        return tuple(letter_id(I, J) for I, J in self.letters)

    def component_sequence(self) -> tuple:
        """Component ids in application order (right to left)."""
        return tuple(component_id(I, J) for I, J in reversed(self.letters))

    def __str__(self):
        body = " (x) ".join(
            f"a[{_digits(I)}|{_digits(J)}]" for I, J in self.letters
        )
        return ("+" if self.sign > 0 else "-") + " " + body


def chain_sets(n: int, sigma, tau) -> list:
    """(I_k, J_k) for k = 1..n: I_k grows along sigma, J_k shrinks along tau."""
    _check_perm(n, sigma)
    _check_perm(n, tau)
    out = []
    for k in range(1, n + 1):
        I = frozenset(sigma[:k])
        J = frozenset(tau[k:])
        out.append((I, J))
    return out


def aomoto_symbol(n: int) -> list:
    """The ((n+1)!)^2 signed words of length n, sorted by (sigma, tau); the
    identity pair is normalized to sign +1."""
    if n < 1:
        raise AomotoError("weight must be at least 1")
    words = []
    for sigma in permutations(range(n + 1)):
        for tau in permutations(range(n + 1)):
            sets = chain_sets(n, sigma, tau)
            letters = tuple(reversed(sets))  # leftmost letter is k = n
            words.append(SignedWord(_parity(sigma) * _parity(tau), letters))
    return words


def _check_perm(n: int, perm):
    if sorted(perm) != list(range(n + 1)):
        raise AomotoError(f"not a permutation of 0..{n}: {perm}")


@dataclass(frozen=True)
class ChainValue:
    sign: int
    weight: int

    def __str__(self):
        return ("+" if self.sign > 0 else "-") + f"(2*pi*i)^{self.weight}"


def maximal_chain_value(n: int, sigma, tau) -> ChainValue:
    """Value of the full n-fold iterated variation for one permutation pair,
    as a signed power of 2*pi*i, normalized to + at the identity pair."""
    _check_perm(n, sigma)
    _check_perm(n, tau)
    return ChainValue(_parity(tuple(sigma)) * _parity(tuple(tau)), n)
