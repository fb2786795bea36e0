"""Finitely presented graded commutative algebras over GF(2).

Polynomials are frozensets of exponent tuples (addition is symmetric
difference).  A presentation is turned into a :class:`RewriteSystem` by a
homogeneous Buchberger completion truncated at a degree bound; everything
above the bound is refused rather than silently wrong.

Monomial order: weighted degree first, then the monomial with the smaller
exponent on the earliest generator where the two differ is the larger one.
With generators ``u2, u3`` this makes ``u3^2 > u2^3``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

from .linalg import BitMatrix, Subspace, kernel_basis, quotient_reps, rank

Monomial = tuple[int, ...]
Poly = frozenset


class PresentationError(ValueError):
    pass


class BoundError(ValueError):
    """A computation needs degrees beyond the truncation bound."""


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def order_key(m: Monomial, weights: Sequence[int]):
    return (sum(w * e for w, e in zip(weights, m)), tuple(-e for e in m))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# text format

def parse_polynomial(text: str, names: Sequence[str]) -> Poly:
    """Parse ``"u2^3 + u3^2"``.

    Grammar::

        poly    := term ("+" term)*
        term    := "0" | "1" | factor ("*" factor)*
        factor  := NAME ("^" INT)?

    Repeated monomials cancel in pairs.
    """
    index = {n: i for i, n in enumerate(names)}
    out: set = set()
    src = text.strip()
    if not src:
        raise PresentationError("empty polynomial")
    for raw in src.split("+"):
        term = raw.strip()
        if not term:
            raise PresentationError(f"empty term in {text!r}")
        if term == "0":
            continue
        exps = [0] * len(names)
        if term != "1":
            for factor in term.split("*"):
                factor = factor.strip()
                name, _, power = factor.partition("^")
                name = name.strip()
                if name not in index:
                    raise PresentationError(f"unknown generator {name!r} in {text!r}")
                try:
                    e = int(power) if power else 1
                except ValueError:
                    raise PresentationError(f"bad exponent in {factor!r}") from None
                if e < 0:
                    raise PresentationError(f"negative exponent in {factor!r}")
                exps[index[name]] += e
        out ^= {tuple(exps)}
    return frozenset(out)


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for n, e in zip(names, m):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts) if parts else "1"


def format_polynomial(poly: Iterable[Monomial], names: Sequence[str], weights: Sequence[int]) -> str:
    # Smallest term first; the leading term is printed last.
    terms = sorted(poly, key=lambda m: order_key(m, weights))
    if not terms:
        return "0"
    return " + ".join(format_monomial(m, names) for m in terms)


# ---------------------------------------------------------------------------
# presentations

@dataclass(frozen=True)
class AlgebraPresentation:
    generators: tuple[tuple[str, int], ...]
    relations: tuple[Poly, ...] = ()

    def __post_init__(self):
        names = [n for n, _ in self.generators]
        if len(set(names)) != len(names):
            raise PresentationError(f"duplicate generator names in {names}")
        for n, d in self.generators:
            if not _NAME.match(n):
                raise PresentationError(f"bad generator name {n!r}")
            if d < 1:
                raise PresentationError(f"generator {n} must have positive degree")
        for rel in self.relations:
            for m in rel:
                if len(m) != len(names):
                    raise PresentationError("relation monomial has wrong length")
            degs = {self.degree(m) for m in rel}
            if len(degs) > 1:
                raise PresentationError(f"relation {self.format(rel)!r} is not homogeneous")

    @classmethod
    def parse(cls, generators: Sequence[tuple[str, int]], relations: Iterable[str] = ()) -> "AlgebraPresentation":
        gens = tuple((str(n), int(d)) for n, d in generators)
        names = [n for n, _ in gens]
        rels = []
        for text in relations:
            poly = parse_polynomial(text, names)
            degs = {sum(d * e for (_, d), e in zip(gens, m)) for m in poly}
            if len(degs) > 1:
                raise PresentationError(f"relation {text!r} is not homogeneous (degrees {sorted(degs)})")
            if poly:
                rels.append(poly)
        return cls(gens, tuple(rels))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.generators)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.generators)

    def degree(self, m: Monomial) -> int:
        return sum(d * e for (_, d), e in zip(self.generators, m))

    def format(self, poly: Iterable[Monomial]) -> str:
        return format_polynomial(poly, self.names, self.weights)

    def quotient(self, extra: Iterable[Union[str, Poly]]) -> "AlgebraPresentation":
        rels = list(self.relations)
        for r in extra:
            poly = parse_polynomial(r, self.names) if isinstance(r, str) else frozenset(r)
            if poly:
                rels.append(poly)
        return AlgebraPresentation(self.generators, tuple(rels))

    def to_json(self) -> dict:
        return {
            "generators": [[n, d] for n, d in self.generators],
            "relations": [self.format(r) for r in self.relations],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "AlgebraPresentation":
        return cls.parse([tuple(g) for g in data.get("generators", [])], data.get("relations", []))

    def __str__(self):
        gens = ", ".join(self.names)
        if not self.relations:
            return f"F2[{gens}]"
        rels = ", ".join(self.format(r) for r in self.relations)
        return f"F2[{gens}]/<{rels}>"


def tensor(a: AlgebraPresentation, b: AlgebraPresentation) -> AlgebraPresentation:
    """Tensor product; clashing names of ``b`` get a ``_2``, ``_3``, ... suffix."""
    return tensor_renaming(a, b)[0]


def tensor_renaming(a: AlgebraPresentation, b: AlgebraPresentation):
    """Like :func:`tensor`, also returning the renaming applied to ``b``."""
    taken = set(a.names)
    rename = {}
    for n in b.names:
        new = n
        k = 2
        while new in taken:
            new = f"{n}_{k}"
            k += 1
        taken.add(new)
        rename[n] = new
    gens = a.generators + tuple((rename[n], d) for n, d in b.generators)
    pad_a = (0,) * len(b.generators)
    pad_b = (0,) * len(a.generators)
    rels = tuple(frozenset(m + pad_a for m in r) for r in a.relations)
    rels += tuple(frozenset(pad_b + m for m in r) for r in b.relations)
    return AlgebraPresentation(gens, rels), rename


def free_algebra(generators: Sequence[tuple[str, int]]) -> AlgebraPresentation:
    return AlgebraPresentation(tuple((n, d) for n, d in generators), ())


# ---------------------------------------------------------------------------
# completion

class _Reducer:
    def __init__(self, weights):
        self.weights = weights
        self.polys: list[Poly] = []
        self.leads: list[Monomial] = []

    def key(self, m):
        return order_key(m, self.weights)

    def lead(self, poly):
        return max(poly, key=self.key)

    def reduce(self, poly) -> frozenset:
        todo = set(poly)
        done = set()
        while todo:
            m = max(todo, key=self.key)
            for lead, g in zip(self.leads, self.polys):
                if divides(lead, m):
                    q = _div(m, lead)
                    todo ^= {_mul(q, t) for t in g}
                    break
            else:
                todo.remove(m)
                done.add(m)
        return frozenset(done)

    def add(self, poly):
        self.polys.append(poly)
        self.leads.append(self.lead(poly))


def normalize(p: AlgebraPresentation, bound: int) -> "RewriteSystem":
    """Complete the relations of ``p`` into rewrite rules valid up to ``bound``.

    Relations above the bound are ignored; they cannot change any degree
    at or below it.
    """
    if bound < 0:
        raise BoundError("bound must be non-negative")
    red = _Reducer(p.weights)
    pairs: list[tuple[int, int, int]] = []

    def push(poly):
        new_lead = red.lead(poly)
        j = len(red.polys)
        for i, lead in enumerate(red.leads):
            if all(x == 0 or y == 0 for x, y in zip(lead, new_lead)):
                continue  # coprime leading monomials reduce to zero
            d = p.degree(_lcm(lead, new_lead))
            if d <= bound:
                pairs.append((d, i, j))
        red.add(poly)

    for rel in sorted(p.relations, key=lambda r: p.degree(next(iter(r)))):
        if p.degree(next(iter(rel))) > bound:
            continue  # invisible at or below the bound
        r = red.reduce(rel)
        if r:
            push(r)
    while pairs:
        pairs.sort(reverse=True)
        _, i, j = pairs.pop()
        li, lj = red.leads[i], red.leads[j]
        lcm = _lcm(li, lj)
        qi, qj = _div(lcm, li), _div(lcm, lj)
        s = frozenset(_mul(qi, t) for t in red.polys[i]) ^ frozenset(_mul(qj, t) for t in red.polys[j])
        r = red.reduce(s)
        if r:
            push(r)

    # Minimal, then fully interreduced.
    keep = []
    for i, lead in enumerate(red.leads):
        if any(divides(red.leads[j], lead) and (red.leads[j] != lead or j < i)
               for j in range(len(red.leads)) if j != i):
            continue
        keep.append(red.polys[i])
    final = _Reducer(p.weights)
    for g in keep:
        final.add(g)
    rules = []
    for idx, g in enumerate(keep):
        lead = final.leads[idx]
        others = _Reducer(p.weights)
        for j, h in enumerate(keep):
            if j != idx:
                others.add(h)
        tail = others.reduce(g - {lead})
        rules.append((lead, tail))
    rules.sort(key=lambda rule: order_key(rule[0], p.weights))
    return RewriteSystem(p, bound, tuple(rules))


class RewriteSystem:
    """Degree-truncated confluent rewriting rules for a presentation."""

    def __init__(self, presentation: AlgebraPresentation, bound: int, rules):
        self.presentation = presentation
        self.bound = bound
        self.rules: tuple[tuple[Monomial, Poly], ...] = tuple(rules)
        self.weights = presentation.weights
        self.names = presentation.names
        self.ngens = len(self.names)
        self._nf_cache: dict[Monomial, Poly] = {}
        self._basis_cache: dict[int, tuple[Monomial, ...]] = {}
        self._index_cache: dict[int, dict[Monomial, int]] = {}

    # -- monomials -----------------------------------------------------
    def degree(self, m: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, m))

    def key(self, m: Monomial):
        return order_key(m, self.weights)

    def is_normal(self, m: Monomial) -> bool:
        return not any(divides(lead, m) for lead, _ in self.rules)

    def _nf_monomial(self, m: Monomial) -> Poly:
        hit = self._nf_cache.get(m)
        if hit is not None:
            return hit
        for lead, tail in self.rules:
            if divides(lead, m):
                q = _div(m, lead)
                out: frozenset = frozenset()
                for t in tail:
                    out = out ^ self._nf_monomial(_mul(q, t))
                break
        else:
            out = frozenset((m,))
        self._nf_cache[m] = out
        return out

    def normal_form(self, poly: Iterable[Monomial]) -> Poly:
        out: frozenset = frozenset()
        for m in poly:
            out = out ^ self._nf_monomial(m)
        return out

    def reduce_randomly(self, poly: Iterable[Monomial], rng) -> Poly:
        """Rewrite one random redex at a time; used to test confluence."""
        cur = set(poly)
        while True:
            redexes = [(m, i) for m in cur for i, (lead, _) in enumerate(self.rules) if divides(lead, m)]
            if not redexes:
                return frozenset(cur)
            m, i = redexes[rng.randrange(len(redexes))]
            lead, tail = self.rules[i]
            q = _div(m, lead)
            cur ^= {m}
            cur ^= {_mul(q, t) for t in tail}

    # -- degree pieces -------------------------------------------------
    def check_degree(self, d: int):
        if d > self.bound:
            raise BoundError(f"degree {d} exceeds the bound {self.bound}; normalize again with a larger bound")

    def degree_basis(self, d: int) -> tuple[Monomial, ...]:
        """Normal monomials of degree ``d``, largest first."""
        self.check_degree(d)
        hit = self._basis_cache.get(d)
        if hit is not None:
            return hit
        out = []
        leads = [lead for lead, _ in self.rules]
        n = self.ngens

        def walk(i, remaining, prefix):
            if i == n:
                if remaining == 0:
                    m = tuple(prefix)
                    if not any(divides(lead, m) for lead in leads):
                        out.append(m)
                return
            w = self.weights[i]
            for e in range(remaining // w + 1):
                prefix.append(e)
                walk(i + 1, remaining - e * w, prefix)
                prefix.pop()

        if d >= 0:
            walk(0, d, [])
        basis = tuple(sorted(out, key=self.key, reverse=True))
        self._basis_cache[d] = basis
        return basis

    def index(self, d: int) -> dict[Monomial, int]:
        hit = self._index_cache.get(d)
        if hit is None:
            hit = {m: i for i, m in enumerate(self.degree_basis(d))}
            self._index_cache[d] = hit
        return hit

    def dim(self, d: int) -> int:
        return len(self.degree_basis(d))

    def hilbert_series(self, upto: Optional[int] = None) -> list[int]:
        upto = self.bound if upto is None else upto
        return [self.dim(d) for d in range(upto + 1)]

    # -- elements ------------------------------------------------------
    def element(self, value, degree: Optional[int] = None) -> "Element":
        if isinstance(value, Element):
            if value.ring is not self:
                return lift(value, self)
            return value
        if isinstance(value, str):
            poly = parse_polynomial(value, self.names)
        elif isinstance(value, int) and value in (0, 1):
            poly = frozenset({(0,) * self.ngens}) if value else frozenset()
            degree = 0 if degree is None else degree
        else:
            poly = frozenset(value)
        degs = {self.degree(m) for m in poly}
        if len(degs) > 1:
            raise PresentationError(f"{self.presentation.format(poly)!r} is not homogeneous")
        if degs:
            d = degs.pop()
            if degree is not None and degree != d:
                raise PresentationError(f"expected degree {degree}, got {d}")
        elif degree is None:
            raise PresentationError("the degree of a zero element must be given")
        else:
            d = degree
        self.check_degree(d)
        return Element(self, d, self.normal_form(poly))

    def __call__(self, value, degree: Optional[int] = None) -> "Element":
        return self.element(value, degree)

    def one(self) -> "Element":
        return Element(self, 0, frozenset({(0,) * self.ngens}))

    def zero(self, degree: int = 0) -> "Element":
        return Element(self, degree, frozenset())

    def gen(self, name: str) -> "Element":
        i = self.names.index(name)
        m = tuple(1 if j == i else 0 for j in range(self.ngens))
        return self.element(frozenset({m}))

    def gens(self) -> tuple["Element", ...]:
        return tuple(self.gen(n) for n in self.names)

    def to_vector(self, e: "Element") -> int:
        idx = self.index(e.degree)
        v = 0
        for m in e.terms:
            v |= 1 << idx[m]
        return v

    def from_vector(self, d: int, v: int) -> "Element":
        basis = self.degree_basis(d)
        terms = frozenset(basis[i] for i in range(len(basis)) if (v >> i) & 1)
        return Element(self, d, terms)

    def multiplication_matrix(self, e: "Element", d: int) -> BitMatrix:
        """Matrix of ``x -> e*x`` from degree ``d`` to degree ``d + deg e``."""
        target = d + e.degree
        self.check_degree(target)
        idx = self.index(target)
        cols = []
        for m in self.degree_basis(d):
            v = 0
            for t in self.normal_form(_mul(m, s) for s in e.terms):
                v ^= 1 << idx[t]
            cols.append(v)
        return BitMatrix.from_columns(cols, len(idx))

    def format(self, poly: Iterable[Monomial]) -> str:
        return self.presentation.format(poly)

    def rule_strings(self) -> list[str]:
        return [f"{format_monomial(lead, self.names)} -> {self.format(tail)}" for lead, tail in self.rules]

    def __repr__(self):
        return f"RewriteSystem({self.presentation}, bound={self.bound}, rules={len(self.rules)})"


class Element:
    """A homogeneous element stored in normal form."""

    __slots__ = ("ring", "degree", "terms")

    def __init__(self, ring: RewriteSystem, degree: int, terms: Poly):
        self.ring = ring
        self.degree = degree
        self.terms = terms

    def _check(self, other: "Element"):
        if not isinstance(other, Element) or other.ring is not self.ring:
            raise TypeError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        if self.degree != other.degree and self.terms and other.terms:
            raise PresentationError("cannot add elements of different degrees")
        d = self.degree if self.terms else other.degree
        return Element(self.ring, d, self.terms ^ other.terms)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def __pow__(self, n: int) -> "Element":
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, Element):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms and (
            self.degree == other.degree or not self.terms)

    def __hash__(self):
        return hash((id(self.ring), self.terms))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def leading_monomial(self) -> Optional[Monomial]:
        return max(self.terms, key=self.ring.key) if self.terms else None

    def __str__(self):
        return self.ring.format(self.terms)

    def __repr__(self):
        return f"Element({self}, deg={self.degree})"


def multiply(a: Element, b: Element) -> Element:
    if a.ring is not b.ring:
        raise TypeError("elements belong to different algebras")
    d = a.degree + b.degree
    a.ring.check_degree(d)
    out: frozenset = frozenset()
    nf = a.ring._nf_monomial
    for x in a.terms:
        for y in b.terms:
            out = out ^ nf(_mul(x, y))
    return Element(a.ring, d, out)


def lift(e: Element, target: RewriteSystem, rename: Optional[Mapping[str, str]] = None) -> Element:
    """Move ``e`` into ``target`` by matching generator names."""
    rename = rename or {}
    pos = []
    for n in e.ring.names:
        tn = rename.get(n, n)
        if tn not in target.names:
            if any(m[len(pos)] for m in e.terms):
                raise PresentationError(f"generator {n!r} has no counterpart in the target algebra")
            pos.append(None)
        else:
            pos.append(target.names.index(tn))
    terms = set()
    for m in e.terms:
        new = [0] * target.ngens
        for i, ex in enumerate(m):
            if ex:
                new[pos[i]] += ex
        terms ^= {tuple(new)}
    return target.element(frozenset(terms), e.degree)


def hilbert_series(rs: RewriteSystem, bound: Optional[int] = None) -> list[int]:
    return rs.hilbert_series(bound)


def degree_basis(rs: RewriteSystem, d: int) -> tuple[Monomial, ...]:
    return rs.degree_basis(d)


def convolve(a: Sequence[int], b: Sequence[int], upto: int) -> list[int]:
    out = [0] * (upto + 1)
    for i, x in enumerate(a[: upto + 1]):
        if x:
            for j, y in enumerate(b[: upto + 1 - i]):
                out[i + j] += x * y
    return out


def poincare_duality(rs: RewriteSystem, d: int) -> tuple[bool, str]:
    """Check the mod-2 Poincare duality of a ring of formal dimension ``d``.

    The series must vanish above ``d`` (checked up to the bound), the top
    piece must be one-dimensional, and multiplication into it must be a
    perfect pairing ``H^k x H^(d-k) -> F2`` for every ``k``.
    """
    rs.check_degree(d)
    for e in range(d + 1, rs.bound + 1):
        if rs.dim(e):
            return False, f"nonzero piece in degree {e} above the top degree {d}"
    if rs.dim(d) != 1:
        return False, f"top piece has dimension {rs.dim(d)}"
    series = rs.hilbert_series(d)
    if series != series[::-1]:
        return False, f"series {series} is not palindromic"
    top = rs.degree_basis(d)[0]
    for k in range(d + 1):
        left = rs.degree_basis(k)
        right = rs.degree_basis(d - k)
        rows = []
        for a in left:
            row = 0
            for j, b in enumerate(right):
                if top in rs.normal_form((_mul(a, b),)):
                    row |= 1 << j
            rows.append(row)
        if rank(BitMatrix(len(left), len(right), tuple(rows))) != len(left) or len(left) != len(right):
            return False, f"pairing between degrees {k} and {d - k} is degenerate"
    return True, "ok"


# ---------------------------------------------------------------------------
# ideals

def ideal_piece(ring: RewriteSystem, gens: Sequence[Element], d: int) -> Subspace:
    """Degree-``d`` part of the ideal generated by ``gens``."""
    vectors = []
    for g in gens:
        if not g or g.degree > d:
            continue
        for m in ring.degree_basis(d - g.degree):
            vectors.append(ring.to_vector(multiply(g, Element(ring, d - g.degree, frozenset((m,))))))
    return Subspace.span(vectors, ring.dim(d))


def ideal_membership(e: Element, gens: Sequence[Element], bound: Optional[int] = None) -> bool:
    if bound is not None and e.degree > bound:
        raise BoundError(f"degree {e.degree} exceeds bound {bound}")
    if not e:
        return True
    ring = e.ring
    return ring.to_vector(e) in ideal_piece(ring, gens, e.degree)


@dataclass(frozen=True)
class GradedIdeal:
    """Per-degree subspaces of an ambient algebra, with minimal generators."""

    ambient: RewriteSystem
    bound: int
    pieces: tuple[Subspace, ...]
    minimal_generators: tuple[Element, ...] = field(default=())

    @classmethod
    def from_pieces(cls, ambient: RewriteSystem, pieces: Sequence[Subspace]) -> "GradedIdeal":
        pieces = tuple(pieces)
        gens = extract_minimal_generators(ambient, pieces)
        return cls(ambient, len(pieces) - 1, pieces, tuple(gens))

    @classmethod
    def generated_by(cls, gens: Sequence[Element], bound: int) -> "GradedIdeal":
        ring = gens[0].ring
        pieces = [ideal_piece(ring, gens, d) for d in range(bound + 1)]
        return cls.from_pieces(ring, pieces)

    def hilbert(self) -> list[int]:
        return [s.dim for s in self.pieces]

    def __contains__(self, e: Element) -> bool:
        if e.degree > self.bound:
            raise BoundError(f"degree {e.degree} exceeds the ideal bound {self.bound}")
        return self.ambient.to_vector(e) in self.pieces[e.degree]

    def is_closed(self) -> bool:
        """Spot-check closure under multiplication by generators of the ambient."""
        ring = self.ambient
        for d, piece in enumerate(self.pieces):
            for x in ring.gens():
                if d + x.degree > self.bound:
                    continue
                for v in piece.basis:
                    prod = multiply(ring.from_vector(d, v), x)
                    if ring.to_vector(prod) not in self.pieces[d + x.degree]:
                        return False
        return True

    def contains_ideal(self, other: "GradedIdeal") -> bool:
        top = min(self.bound, other.bound)
        return all(other.pieces[d].issubspace(self.pieces[d]) for d in range(top + 1))

    def __eq__(self, other):
        if not isinstance(other, GradedIdeal):
            return NotImplemented
        return self.ambient is other.ambient and self.bound == other.bound and self.pieces == other.pieces

    __hash__ = None


def extract_minimal_generators(ring: RewriteSystem, pieces: Sequence[Subspace]) -> list[Element]:
    """Generators by ascending degree.

    Within a degree the new generators are the reduced echelon
    representatives of the piece modulo the part generated in lower
    degrees; pivots sit on the smallest monomials, which reproduces the
    usual hand-written normal forms.
    """
    gens: list[Element] = []
    for d, piece in enumerate(pieces):
        if not piece.dim:
            continue
        lower = ideal_piece(ring, gens, d)
        for v in quotient_reps(lower, piece):
            gens.append(ring.from_vector(d, v))
    return gens


# ---------------------------------------------------------------------------
# morphisms

class AlgebraMorphism:
    """A grading-preserving map given on generators."""

    def __init__(self, source: RewriteSystem, target: RewriteSystem, images: Mapping[str, Union[Element, str]]):
        self.source = source
        self.target = target
        imgs = {}
        for (n, d) in source.presentation.generators:
            if n not in images:
                raise PresentationError(f"no image given for generator {n!r}")
            img = images[n]
            if isinstance(img, str):
                img = target.element(img, d)
            elif isinstance(img, int):
                img = target.zero(d) if img == 0 else target.one()
            if img.ring is not target:
                raise TypeError(f"image of {n!r} is not in the target algebra")
            if img and img.degree != d:
                raise PresentationError(f"image of {n!r} has degree {img.degree}, expected {d}")
            imgs[n] = img if img else target.zero(d)
        self.images = imgs
        self._gen_images = [imgs[n] for n in source.names]

    def _monomial(self, m: Monomial) -> Element:
        out = self.target.one()
        for g, e in zip(self._gen_images, m):
            for _ in range(e):
                out = multiply(out, g)
        return out

    def __call__(self, e: Element) -> Element:
        if e.ring is not self.source:
            raise TypeError("element is not in the source algebra")
        out = self.target.zero(e.degree)
        for m in e.terms:
            out = out + self._monomial(m)
        return out

    def check(self, bound: Optional[int] = None):
        """Raise unless every source relation of degree <= bound maps to zero."""
        bound = self.source.bound if bound is None else bound
        pres = self.source.presentation
        for rel in pres.relations:
            d = pres.degree(next(iter(rel)))
            if d > bound:
                continue
            img = self.target.zero(d)
            for m in rel:
                img = img + self._monomial(m)
            if img:
                raise PresentationError(
                    f"relation {pres.format(rel)} maps to {img}, so the morphism is not well defined")

    def matrix(self, d: int) -> BitMatrix:
        cols = []
        for m in self.source.degree_basis(d):
            cols.append(self.target.to_vector(self._monomial(m)))
        return BitMatrix.from_columns(cols, self.target.dim(d))


def morphism_kernel(f: AlgebraMorphism, bound: int) -> GradedIdeal:
    f.check(bound)
    pieces = [kernel_basis(f.matrix(d)) for d in range(bound + 1)]
    return GradedIdeal.from_pieces(f.source, pieces)


# ---------------------------------------------------------------------------
# isomorphism search

def find_isomorphism(a: RewriteSystem, b: RewriteSystem, bound: Optional[int] = None,
                     limit: int = 1 << 20) -> Optional[AlgebraMorphism]:
    """Search for a graded algebra isomorphism ``a -> b`` up to ``bound``.

    Brute force over images of generators; meant for the small rings of the
    catalog.  Raises when the search space exceeds ``limit``.
    """
    bound = min(a.bound, b.bound) if bound is None else bound
    if a.hilbert_series(bound) != b.hilbert_series(bound):
        return None
    choices = []
    total = 1
    for n, d in a.presentation.generators:
        if d > bound:
            raise BoundError(f"generator {n} lies above the bound")
        dim = b.dim(d)
        total *= 1 << dim
        choices.append((n, d, dim))
    if total > limit:
        raise ValueError(f"isomorphism search space {total} exceeds {limit}")
    for pick in itertools.product(*[range(1 << dim) for _, _, dim in choices]):
        images = {n: b.from_vector(d, v) for (n, d, _), v in zip(choices, pick)}
        f = AlgebraMorphism(a, b, images)
        try:
            f.check(bound)
        except PresentationError:
            continue
        if all(_rank_full(f.matrix(d)) for d in range(bound + 1)):
            return f
    return None


def _rank_full(m: BitMatrix) -> bool:
    return rank(m) == m.rows == m.cols


__all__ = [
    "AlgebraMorphism",
    "AlgebraPresentation",
    "BoundError",
    "Element",
    "GradedIdeal",
    "PresentationError",
    "RewriteSystem",
    "convolve",
    "degree_basis",
    "extract_minimal_generators",
    "find_isomorphism",
    "format_polynomial",
    "free_algebra",
    "hilbert_series",
    "ideal_membership",
    "ideal_piece",
    "lift",
    "morphism_kernel",
    "multiply",
    "normalize",
    "order_key",
    "parse_polynomial",
    "poincare_duality",
    "tensor",
    "tensor_renaming",
]
