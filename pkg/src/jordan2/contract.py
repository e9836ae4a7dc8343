"""Exact symbolic contraction of Jordan laws.

A contraction family is a one-parameter basis change f_t whose entries
are Laurent polynomials over Q.  Fractional powers of t (the sqrt(t)
family below) are handled by global ramification: with t = s^m all
entries become integer-exponent Laurent polynomials in s.  Limits at
t -> 0 are decided purely by the valuation of reduced rational
functions of s, never by numeric evaluation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .classify import CanonicalClass, canonical_law, classify
from .core import JordanLaw, is_jordan
from .geometry import orbit_dim
from .scalars import format_rational, parse_rational

# ---------------------------------------------------------------------------
# Laurent polynomials in s


class LaurentPoly:
    """Finitely many terms coeff * s**exp with integer exp, rational coeff."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[int, Fraction]] = None):
        cleaned = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                cleaned[int(e)] = c
        self.terms = cleaned

    @classmethod
    def const(cls, value) -> "LaurentPoly":
        return cls({0: Fraction(value)})

    @classmethod
    def term(cls, coeff, power: int) -> "LaurentPoly":
        return cls({power: Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self) -> Optional[int]:
        """Lowest exponent with nonzero coefficient; None for the zero poly."""
        return min(self.terms) if self.terms else None

    def degree(self) -> Optional[int]:
        return max(self.terms) if self.terms else None

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + other.scale(-1)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: Dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
        return LaurentPoly(out)

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        return LaurentPoly({e: c * v for e, v in self.terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by s**k."""
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Replace s by s**k (k >= 1)."""
        return LaurentPoly({e * k: c for e, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                bits.append(str(c))
            elif e == 1:
                bits.append(f"{c}*s")
            else:
                bits.append(f"{c}*s^{e}")
        return " + ".join(bits)


def _dense(p: LaurentPoly) -> Tuple[int, List[Fraction]]:
    """(valuation, dense coefficient list) of a nonzero Laurent poly."""
    lo, hi = p.valuation(), p.degree()
    return lo, [p.terms.get(e, Fraction(0)) for e in range(lo, hi + 1)]


def _dense_mod(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = list(a)
    while len(a) >= len(b) and any(a):
        while a and not a[-1]:
            a.pop()
        if len(a) < len(b):
            break
        f = a[-1] / b[-1]
        off = len(a) - len(b)
        for i, c in enumerate(b):
            a[off + i] -= f * c
        a.pop()
    while a and not a[-1]:
        a.pop()
    return a


def _poly_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    while b:
        a, b = b, _dense_mod(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


class RationalFunction:
    """Reduced quotient of Laurent polynomials over Q."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = LaurentPoly(), LaurentPoly.const(1)
            return
        nv, ncoef = _dense(num)
        dv, dcoef = _dense(den)
        g = _poly_gcd(ncoef, dcoef)
        if len(g) > 1:
            ncoef = _dense_div(ncoef, g)
            dcoef = _dense_div(dcoef, g)
        # normalize: denominator gets valuation 0 and leading coeff 1
        lead = dcoef[-1]
        num = LaurentPoly({nv - dv + i: c / lead
                           for i, c in enumerate(ncoef) if c})
        den = LaurentPoly({i: c / lead for i, c in enumerate(dcoef) if c})
        self.num, self.den = num, den

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalFunction":
        return cls(p, LaurentPoly.const(1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def valuation(self) -> Optional[int]:
        """Order at s=0; None for the zero function (no pole, limit 0)."""
        if self.num.is_zero():
            return None
        return self.num.valuation() - self.den.valuation()

    def limit_at_0(self) -> Optional[Fraction]:
        """Value at s=0, or None when there is a pole."""
        if self.num.is_zero():
            return Fraction(0)
        v = self.valuation()
        if v < 0:
            return None
        if v > 0:
            return Fraction(0)
        return (self.num.terms[self.num.valuation()]
                / self.den.terms[self.den.valuation()])

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def scale(self, c) -> "RationalFunction":
        return RationalFunction(self.num.scale(c), self.den)

    def __repr__(self):
        if self.den == LaurentPoly.const(1):
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _dense_div(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    """Exact dense polynomial division (remainder must vanish)."""
    a = list(a)
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        f = a[k + len(b) - 1] / b[-1]
        out[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
    if any(a):
        raise ArithmeticError("non-exact polynomial division")
    return out


# ---------------------------------------------------------------------------
# Contraction families


class ContractionFamily:
    """An n x n matrix of Laurent polynomials in s, where t = s**m."""

    __slots__ = ("dim", "ramification", "entries")

    def __init__(self, entries, ramification: int = 1):
        entries = tuple(tuple(e if isinstance(e, LaurentPoly)
                              else LaurentPoly.const(e) for e in row)
                        for row in entries)
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("entries must form a square matrix")
        if ramification < 1:
            raise ValueError("ramification must be a positive integer")
        self.dim = n
        self.ramification = int(ramification)
        self.entries = entries
        if self.determinant().is_zero():
            raise ValueError("family is identically singular")

    @classmethod
    def diag(cls, polys: Iterable[LaurentPoly],
             ramification: int = 1) -> "ContractionFamily":
        polys = list(polys)
        n = len(polys)
        return cls([[polys[i] if i == j else LaurentPoly()
                     for j in range(n)] for i in range(n)], ramification)

    def determinant(self) -> LaurentPoly:
        return _laurent_det(self.entries)

    def reramified(self, k: int) -> "ContractionFamily":
        """The same family with s replaced by s**k (m becomes m*k)."""
        return ContractionFamily(
            [[e.substitute_power(k) for e in row] for row in self.entries],
            self.ramification * k)


def _laurent_det(rows) -> LaurentPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = LaurentPoly()
    for j in range(n):
        minor = [[rows[i][c] for c in range(n) if c != j]
                 for i in range(1, n)]
        term = rows[0][j] * _laurent_det(minor)
        out = out + (term if j % 2 == 0 else term.scale(-1))
    return out


def family_inverse(f: ContractionFamily):
    """f^-1 as a matrix of reduced rational functions in s."""
    n = f.dim
    det = f.determinant()
    inv = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [[f.entries[r][c] for c in range(n) if c != i]
                     for r in range(n) if r != j]
            cof = _laurent_det(minor) if minor else LaurentPoly.const(1)
            if (i + j) % 2:
                cof = cof.scale(-1)
            row.append(RationalFunction(cof, det))
        inv.append(row)
    return inv


# ---------------------------------------------------------------------------
# Limits


@dataclass(frozen=True)
class ContractionResult:
    """Either a limit law or the location of a pole at s=0."""

    law: Optional[JordanLaw]
    pole_entry: Optional[Tuple[int, int, int]] = None
    pole_valuation: Optional[int] = None

    @property
    def is_limit(self) -> bool:
        return self.law is not None

    def to_document(self) -> dict:
        if self.is_limit:
            from .core import law_to_document
            return {"outcome": "limit", "law": law_to_document(self.law)}
        k, i, j = self.pole_entry
        return {"outcome": "pole_at_0",
                "entry": {"k": k, "i": i, "j": j},
                "valuation": self.pole_valuation}


def contract(law: JordanLaw, f: ContractionFamily) -> ContractionResult:
    """lim_{t->0} f_t^-1 (phi(f_t X, f_t Y)), decided by exact valuations."""
    if law.dim != f.dim:
        raise ValueError("law and family dimensions differ")
    if not law.mode.exact:
        raise ValueError("contraction requires an exact-rational law")
    n = law.dim
    inv = family_inverse(f)
    c = law.tensor
    # v[k][i][j] = sum_{p,q} F[p][i] F[q][j] c[k][p][q]  (Laurent)
    transformed: List[List[List[RationalFunction]]] = []
    worst: Optional[Tuple[int, Tuple[int, int, int]]] = None
    for k in range(n):
        slab = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = RationalFunction.from_poly(LaurentPoly())
                for r in range(n):
                    v_r = LaurentPoly()
                    for p in range(n):
                        for q in range(n):
                            coef = Fraction(c[r][p][q])
                            if coef:
                                v_r = v_r + (f.entries[p][i]
                                             * f.entries[q][j]).scale(coef)
                    if not v_r.is_zero():
                        acc = acc + inv[k][r] * RationalFunction.from_poly(v_r)
                val = acc.valuation()
                if val is not None and val < 0:
                    if worst is None or val < worst[0]:
                        worst = (val, (k, i, j))
                row.append(acc)
            slab.append(row)
        transformed.append(slab)
    if worst is not None:
        return ContractionResult(None, worst[1], worst[0])
    tensor = [[[transformed[k][i][j].limit_at_0() for j in range(n)]
               for i in range(n)] for k in range(n)]
    limit = JordanLaw(tensor, law.mode)
    if not is_jordan(limit):
        raise ArithmeticError("contraction limit violates the Jordan identity")
    return ContractionResult(limit)


# ---------------------------------------------------------------------------
# Catalogue and degeneration graph

_S = LaurentPoly.term(1, 1)
_ONE = LaurentPoly.const(1)
_HALF = LaurentPoly.const(Fraction(1, 2))


def known_contractions():
    """Catalogued (source, family, target) witnesses.

    Entries state f by columns: entry [i][j] is the e_i coefficient of
    f(e_j).  The sqrt(t) family uses ramification 2 (t = s**2).
    """
    diag_1_t = ContractionFamily.diag([_ONE, _S])
    triples = [
        (CanonicalClass.PSI5, diag_1_t, CanonicalClass.PSI1),
        (CanonicalClass.PSI0, diag_1_t, CanonicalClass.PSI1),
        # f(e1) = t e1, f(e2) = (e1 + e2)/2
        (CanonicalClass.PSI0,
         ContractionFamily([[_S, _HALF], [LaurentPoly(), _HALF]]),
         CanonicalClass.PSI2),
        # f(e1) = (sqrt t/2)(e1 + e2), f(e2) = t e1, with t = s**2
        (CanonicalClass.PSI5,
         ContractionFamily([[_S.scale(Fraction(1, 2)), _S * _S],
                            [_S.scale(Fraction(1, 2)), LaurentPoly()]],
                           ramification=2),
         CanonicalClass.PSI3),
        # f(e1) = t(e1 + e2), f(e2) = t**2 e2
        (CanonicalClass.PSI1,
         ContractionFamily([[_S, LaurentPoly()], [_S, _S * _S]]),
         CanonicalClass.PSI3),
        # f(e1) = t e2, f(e2) = t**2 e1.  (With the exponents the other
        # way around every product gains a strictly positive power of t
        # and the limit degenerates to the abelian law; this ordering
        # keeps e1*e1 -> e2 alive in the limit.)
        (CanonicalClass.PSI0,
         ContractionFamily([[LaurentPoly(), _S * _S], [_S, LaurentPoly()]]),
         CanonicalClass.PSI3),
        # f(e1) = e1 + t e2, f(e2) = t**2 e2
        (CanonicalClass.PSI2,
         ContractionFamily([[_ONE, LaurentPoly()], [_S, _S * _S]]),
         CanonicalClass.PSI3),
    ]
    scaling = ContractionFamily.diag([_S, _S])
    for cls in CanonicalClass:
        triples.append((cls, scaling, CanonicalClass.ABELIAN))
    return triples


_ORBIT_DIM_CACHE: Dict[CanonicalClass, int] = {}


def _class_orbit_dim(cls: CanonicalClass) -> int:
    if cls not in _ORBIT_DIM_CACHE:
        _ORBIT_DIM_CACHE[cls] = orbit_dim(canonical_law(cls))
    return _ORBIT_DIM_CACHE[cls]


def check_dimension_inequality(source: CanonicalClass,
                               target: CanonicalClass) -> bool:
    """Strict orbit-dimension drop required of any proper contraction."""
    return _class_orbit_dim(source) > _class_orbit_dim(target)


@dataclass(frozen=True)
class DegenerationGraph:
    nodes: Tuple[CanonicalClass, ...]
    edges: Tuple[Tuple[CanonicalClass, CanonicalClass], ...]
    witnesses: dict  # (source, target) -> ContractionFamily


_RIGID = (CanonicalClass.PSI0, CanonicalClass.PSI4, CanonicalClass.PSI5)


def degeneration_graph() -> DegenerationGraph:
    """The verified degeneration graph (13 edges among the 7 classes)."""
    edges = {}
    for source, family, target in known_contractions():
        if source == target:
            continue
        result = contract(canonical_law(source), family)
        if not result.is_limit:
            raise AssertionError(f"witness {source}->{target} has a pole")
        got = classify(result.law).cls
        if got != target:
            raise AssertionError(
                f"witness {source}->{target} produced {got}")
        if not check_dimension_inequality(source, target):
            raise AssertionError(
                f"edge {source}->{target} violates the dimension drop")
        edges[(source, target)] = family
    for (source, target) in edges:
        if target in _RIGID:
            raise AssertionError(f"forbidden edge into rigid class {target}")
    if (CanonicalClass.PSI5, CanonicalClass.PSI2) in edges:
        raise AssertionError("forbidden edge psi5 -> psi2")
    ordered = tuple(sorted(edges, key=lambda st: (st[0].value, st[1].value)))
    return DegenerationGraph(tuple(CanonicalClass), ordered, dict(edges))


def _matrix_label(cls: CanonicalClass) -> str:
    rows = canonical_law(cls).to_matrix2()
    return "; ".join(" ".join(format_rational(Fraction(v)) for v in row)
                     for row in rows)


def emit_dot(g: DegenerationGraph) -> str:
    """Byte-stable DOT rendering of a degeneration graph."""
    lines = ["digraph degenerations {"]
    for cls in sorted(g.nodes, key=lambda c: c.value):
        lines.append(f'  {cls.value} [label="{cls.value}\\n({_matrix_label(cls)})"];')
    for source, target in sorted(g.edges,
                                 key=lambda st: (st[0].value, st[1].value)):
        lines.append(f"  {source.value} -> {target.value};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def edges_csv(g: DegenerationGraph) -> str:
    """Edge list as CSV text (source,target per line)."""
    lines = ["source,target"]
    for source, target in sorted(g.edges,
                                 key=lambda st: (st[0].value, st[1].value)):
        lines.append(f"{source.value},{target.value}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Family file format


def family_to_document(f: ContractionFamily) -> dict:
    return {
        "dim": f.dim,
        "ramification": f.ramification,
        "entries": [[[{"coeff": format_rational(c), "power": e}
                      for e, c in sorted(poly.terms.items())]
                     for poly in row]
                    for row in f.entries],
    }


def family_from_document(doc: dict) -> ContractionFamily:
    try:
        dim = doc["dim"]
        ram = doc["ramification"]
        raw = doc["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed family document: missing {exc}") from exc
    if len(raw) != dim or any(len(row) != dim for row in raw):
        raise ValueError("entries must be a dim x dim matrix")
    entries = []
    for row in raw:
        out_row = []
        for terms in row:
            poly = LaurentPoly()
            for term in terms:
                coeff = parse_rational(term["coeff"], strict=True)
                poly = poly + LaurentPoly.term(coeff, int(term["power"]))
            out_row.append(poly)
        entries.append(out_row)
    return ContractionFamily(entries, ram)


def load_family(path) -> ContractionFamily:
    with open(path) as fh:
        return family_from_document(json.load(fh))
