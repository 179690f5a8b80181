"""Graded lexicographic orders and Buchberger's algorithm on pure-difference binomials.

Every polynomial handled here is ``m1 - m2`` for monomials ``m1 != m2``:
S-pairs and reduction steps of such binomials stay in that form, so no
coefficient arithmetic is needed. Zero is represented by ``None``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import IntEnum
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

from edgering.errors import InputError
from edgering.toric_ideal import Binomial, Monomial, binomial_sort_key, divides


class Cmp(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class MonomialOrder:
    """Graded lex order; ``priority`` lists variable indices from smallest to largest."""

    priority: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(i) for i in self.priority)
        if sorted(p) != list(range(len(p))):
            raise InputError(f"priority {p} is not a permutation of 0..{len(p) - 1}")
        object.__setattr__(self, "priority", p)

    @classmethod
    def natural(cls, num_vars: int) -> "MonomialOrder":
        return cls(tuple(range(num_vars)))

    @classmethod
    def from_names(cls, names: Sequence[str], labels: Sequence[str]) -> "MonomialOrder":
        """Build from variable names listed smallest to largest."""
        index = {lab: k for k, lab in enumerate(labels)}
        missing = [n for n in names if n not in index]
        if missing:
            raise InputError(f"unknown variables in order: {', '.join(missing)}")
        return cls(tuple(index[n] for n in names))

    @property
    def num_vars(self) -> int:
        return len(self.priority)

    def key(self, m: Monomial) -> tuple[int, ...]:
        if len(m) != len(self.priority):
            raise InputError(f"monomial has {len(m)} exponents, order has {len(self.priority)} variables")
        return (sum(m),) + tuple(m[i] for i in reversed(self.priority))

    def compare(self, a: Monomial, b: Monomial) -> Cmp:
        ka, kb = self.key(a), self.key(b)
        return Cmp.EQ if ka == kb else (Cmp.GT if ka > kb else Cmp.LT)

    def rank(self) -> list[int]:
        """rank[v] = position of variable v from the smallest."""
        r = [0] * len(self.priority)
        for pos, v in enumerate(self.priority):
            r[v] = pos
        return r


compare = MonomialOrder.compare


def leading_term(order: MonomialOrder, b: Binomial) -> tuple[Monomial, Binomial]:
    """Leading monomial and the binomial oriented so that ``plus`` leads."""
    c = order.compare(b.plus, b.minus)
    if c == Cmp.EQ:
        raise InputError("binomial sides are equal")
    oriented = b if c == Cmp.GT else b.negated()
    return oriented.plus, oriented


def orient(order: MonomialOrder, b: Binomial) -> Binomial:
    return leading_term(order, b)[1]


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def s_pair(f: Binomial, g: Binomial, order: MonomialOrder) -> Optional[Binomial]:
    """S-polynomial of two binomials: (l/g+) g- minus (l/f+) f-, oriented; None if zero."""
    f = orient(order, f)
    g = orient(order, g)
    l = lcm(f.plus, g.plus)
    a = tuple(li - fp + fm for li, fp, fm in zip(l, f.plus, f.minus))
    b = tuple(li - gp + gm for li, gp, gm in zip(l, g.plus, g.minus))
    assert min(a + b) >= 0, "S-pair left the monomials"
    if a == b:
        return None
    return orient(order, Binomial(b, a))


def normal_form_monomial(m: Monomial, basis: Sequence[Binomial]) -> Monomial:
    """Rewrite ``m`` with the first basis element whose leading term divides it, until none does.

    Basis elements must already be oriented with ``plus`` leading.
    """
    changed = True
    while changed:
        changed = False
        for g in basis:
            if divides(g.plus, m):
                m = tuple(x - p + q for x, p, q in zip(m, g.plus, g.minus))
                changed = True
                break
    return m


def reduce(b: Optional[Binomial], basis: Sequence[Binomial], order: MonomialOrder) -> Optional[Binomial]:
    """Normal form of ``b`` modulo ``basis``: both terms fully reduced."""
    if b is None:
        return None
    basis = [orient(order, g) for g in basis]
    p = normal_form_monomial(b.plus, basis)
    q = normal_form_monomial(b.minus, basis)
    if p == q:
        return None
    return orient(order, Binomial(p, q))


class GBCheck(NamedTuple):
    is_groebner_basis: bool
    failing_pair: Optional[tuple[int, int]]
    s_pair: Optional[Binomial]
    remainder: Optional[Binomial]
    pairs_checked: int
    pairs_skipped_coprime: int

    def __bool__(self):
        return self.is_groebner_basis


def is_groebner_basis(gens: Sequence[Binomial], order: MonomialOrder) -> GBCheck:
    """Buchberger's criterion: every S-pair reduces to zero modulo ``gens``."""
    basis = [orient(order, g) for g in gens]
    checked = skipped = 0
    for i, j in combinations(range(len(basis)), 2):
        if coprime(basis[i].plus, basis[j].plus):
            skipped += 1
            continue
        checked += 1
        s = s_pair(basis[i], basis[j], order)
        r = reduce(s, basis, order)
        if r is not None:
            return GBCheck(False, (i, j), s, r, checked, skipped)
    return GBCheck(True, None, None, None, checked, skipped)


def buchberger(gens: Sequence[Binomial], order: MonomialOrder) -> list[Binomial]:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    Pairs are processed lowest lcm degree first; pairs with coprime leading
    terms are skipped (product criterion).
    """
    basis: list[Binomial] = []
    for g in gens:
        og = orient(order, g)
        if og not in basis:
            basis.append(og)
    queue: list[tuple[int, int, int]] = []

    def push(i, j):
        if not coprime(basis[i].plus, basis[j].plus):
            heapq.heappush(queue, (sum(lcm(basis[i].plus, basis[j].plus)), i, j))

    for i, j in combinations(range(len(basis)), 2):
        push(i, j)
    while queue:
        _, i, j = heapq.heappop(queue)
        h = reduce(s_pair(basis[i], basis[j], order), basis, order)
        if h is None:
            continue
        basis.append(h)
        k = len(basis) - 1
        for i2 in range(k):
            push(i2, k)
    return reduce_basis(basis, order)


def reduce_basis(basis: Sequence[Binomial], order: MonomialOrder) -> list[Binomial]:
    """Minimalize leading terms, then reduce every tail."""
    oriented = [orient(order, g) for g in basis]
    minimal: list[Binomial] = []
    for k, g in enumerate(oriented):
        redundant = False
        for k2, h in enumerate(oriented):
            if k2 == k or not divides(h.plus, g.plus):
                continue
            # equal leading terms: keep the earlier element
            if h.plus != g.plus or k2 < k:
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    out = []
    for g in minimal:
        others = [h for h in minimal if h is not g]
        tail = normal_form_monomial(g.minus, others)
        out.append(Binomial(g.plus, tail))
    return sorted(out, key=binomial_sort_key)


@dataclass(frozen=True)
class MonomialIdeal:
    generators: tuple[Monomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(sorted(minimalize(self.generators), reverse=True)))

    @property
    def is_squarefree(self) -> bool:
        return all(max(m) <= 1 for m in self.generators)

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.generators)

    def supports(self) -> list[frozenset[int]]:
        return [frozenset(k for k, e in enumerate(m) if e) for m in self.generators]


def minimalize(monomials) -> list[Monomial]:
    mons = sorted(set(tuple(m) for m in monomials), key=sum)
    out: list[Monomial] = []
    for m in mons:
        if not any(divides(g, m) for g in out):
            out.append(m)
    return out


def initial_ideal(gb: Sequence[Binomial], order: MonomialOrder, check: bool = True) -> MonomialIdeal:
    """Ideal generated by the leading terms of a Gröbner basis."""
    if check:
        result = is_groebner_basis(gb, order)
        if not result:
            raise InputError(f"not a Gröbner basis: pair {result.failing_pair} leaves remainder")
    return MonomialIdeal(tuple(leading_term(order, g)[0] for g in gb))
