"""Jones polynomial and rational Khovanov homology from the cube of smoothings.

Each full smoothing contributes a tensor factor X = span{x_plus, x_minus} per
circle; cube edges act by the Frobenius multiplication m (merge) or
comultiplication Delta (split), with the edge sign (-1)^(number of 1s left of
the star).  Gradings: i = r_v - k_minus and
j = (#plus - #minus) + r_v + k_plus - 2 k_minus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cube import Cube, CubeError


class KhovanovError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer Laurent polynomials in q


class LaurentPoly:
    """Laurent polynomial in q with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {e: c for e, c in dict(coeffs or {}).items() if c != 0}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def monomial(cls, e: int, c: int = 1):
        return cls({e: c})

    @classmethod
    def circle(cls):
        """q + q^-1, the value of one unknotted circle."""
        return cls({1: 1, -1: 1})

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise KhovanovError("negative powers not supported")
        out = LaurentPoly.one()
        for _ in range(exponent):
            out = out * self
        return out

    def shifted(self, by: int) -> "LaurentPoly":
        return LaurentPoly({e + by: c for e, c in self.coeffs.items()})

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient; raises if the division leaves a remainder."""
        if not divisor:
            raise KhovanovError("division by zero polynomial")
        rem = dict(self.coeffs)
        d_top = max(divisor.coeffs)
        d_c = divisor.coeffs[d_top]
        out: dict[int, int] = {}
        while rem:
            top = max(rem)
            c = rem[top]
            if c % d_c != 0:
                raise KhovanovError("non-exact Laurent division")
            q_e, q_c = top - d_top, c // d_c
            out[q_e] = out.get(q_e, 0) + q_c
            for e, dc in divisor.coeffs.items():
                ne = e + q_e
                nv = rem.get(ne, 0) - dc * q_c
                if nv:
                    rem[ne] = nv
                else:
                    rem.pop(ne, None)
        return LaurentPoly(out)

    def to_text(self) -> str:
        """Canonical text form: terms ``c*q^e`` ascending in e."""
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if not parts:
                parts.append(f"{c}*q^{e}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*q^{e}")
        return " ".join(parts)

    def t_text(self) -> str:
        """The substitution q -> -t^(1/2), as text (half-integer exponents)."""
        terms: dict[Fraction, int] = {}
        for e, c in self.coeffs.items():
            ex = Fraction(e, 2)
            terms[ex] = terms.get(ex, 0) + c * (-1) ** e
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return "0"
        parts = []
        for e in sorted(terms):
            c = terms[e]
            es = str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"
            head = f"{c}*t^{es}" if not parts else f"{'+' if c > 0 else '-'} {abs(c)}*t^{es}"
            parts.append(head)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"


# ---------------------------------------------------------------------------
# Jones state sum


def jones_state_sum(cube: Cube) -> LaurentPoly:
    """Unnormalized Jones polynomial from the full smoothings."""
    kp, km = cube.diagram.k_plus, cube.diagram.k_minus
    total = LaurentPoly.zero()
    circ = LaurentPoly.circle()
    for word, vx in cube.vertices.items():
        r = sum(word)
        term = (circ ** vx.c).shifted(r + kp - 2 * km)
        if (r + km) % 2:
            term = -term
        total = total + term
    return total


def normalized_jones(j_hat: LaurentPoly) -> LaurentPoly:
    """J = J_hat / (q + q^-1); raises on non-divisible input."""
    return j_hat.divide_exact(LaurentPoly.circle())


# ---------------------------------------------------------------------------
# the chain complex

PLUS, MINUS = 1, -1


@dataclass(frozen=True)
class BasisElement:
    word: tuple[int, ...]
    labels: tuple[int, ...]     # +1/-1 per circle, canonical circle order


@dataclass
class KhovanovComplex:
    k_plus: int
    k_minus: int
    basis: dict[int, list[BasisElement]]            # i -> ordered basis
    j_grading: dict[int, list[int]]                 # i -> j per basis element
    differentials: dict[int, dict[tuple[int, int], int]]  # i -> {(row, col): c}

    @property
    def degrees(self):
        return sorted(self.basis)

    def chain_euler(self) -> LaurentPoly:
        out = LaurentPoly.zero()
        for i, js in self.j_grading.items():
            for j in js:
                out = out + LaurentPoly.monomial(j, (-1) ** i)
        return out


def build_complex(cube: Cube) -> KhovanovComplex:
    """Chain spaces, gradings and signed differential from the cube."""
    kp, km = cube.diagram.k_plus, cube.diagram.k_minus
    circle_sets: dict[tuple, list[frozenset]] = {}
    for word, vx in cube.vertices.items():
        circle_sets[word] = [frozenset(cyc) for cyc in vx.state.successor.cycles()]

    basis: dict[int, list[BasisElement]] = {}
    index: dict[BasisElement, int] = {}
    j_grading: dict[int, list[int]] = {}
    for word in sorted(cube.vertices):
        r = sum(word)
        i = r - km
        circles = circle_sets[word]
        for labels in product((PLUS, MINUS), repeat=len(circles)):
            el = BasisElement(word, labels)
            basis.setdefault(i, [])
            index[el] = len(basis[i])
            basis[i].append(el)
            j = sum(labels) + r + kp - 2 * km
            j_grading.setdefault(i, []).append(j)

    diffs: dict[int, dict[tuple[int, int], int]] = {i: {} for i in basis}
    for edge in cube.edges:
        tail_c = circle_sets[edge.tail]
        head_c = circle_sets[edge.head]
        i = sum(edge.tail) - km
        if edge.kind == "merge":
            (a_idx, b_idx), c_idx = _match_merge(tail_c, head_c)
        else:
            c_idx, (a_idx, b_idx) = _match_split(tail_c, head_c)
        copy_map = _copy_map(tail_c, head_c)
        for el in (e for e in basis[i] if e.word == edge.tail):
            col = index[el]
            for labels, coeff in _edge_images(el.labels, edge.kind, tail_c,
                                              head_c, a_idx, b_idx, c_idx,
                                              copy_map):
                row_el = BasisElement(edge.head, labels)
                key = (index[row_el], col)
                d = diffs[i]
                d[key] = d.get(key, 0) + edge.sign * coeff
                if d[key] == 0:
                    del d[key]
    for i, d in diffs.items():
        for (row, col) in d:
            if j_grading[i + 1][row] != j_grading[i][col]:
                raise KhovanovError("differential does not preserve q-grading")
    _check_d_squared(basis, diffs)
    return KhovanovComplex(kp, km, basis, j_grading, diffs)


def _match_merge(tail_c, head_c):
    tail_set, head_set = set(tail_c), set(head_c)
    changed_t = [ix for ix, s in enumerate(tail_c) if s not in head_set]
    changed_h = [ix for ix, s in enumerate(head_c) if s not in tail_set]
    if len(changed_t) != 2 or len(changed_h) != 1:
        raise KhovanovError("merge edge does not merge exactly two circles")
    if tail_c[changed_t[0]] | tail_c[changed_t[1]] != head_c[changed_h[0]]:
        raise KhovanovError("merged circle membership mismatch")
    return (changed_t[0], changed_t[1]), changed_h[0]


def _match_split(tail_c, head_c):
    (a, b), c = _match_merge(head_c, tail_c)
    return c, (a, b)


def _copy_map(tail_c, head_c):
    pos = {s: ix for ix, s in enumerate(head_c)}
    return {ix: pos[s] for ix, s in enumerate(tail_c) if s in pos}


def _edge_images(labels, kind, tail_c, head_c, a_idx, b_idx, c_idx, copy_map):
    """Images of a tail basis label tuple under m or Delta, as
    (head label tuple, coefficient) pairs."""
    out = []
    base = [None] * len(head_c)
    for t_ix, h_ix in copy_map.items():
        base[h_ix] = labels[t_ix]
    if kind == "merge":
        la, lb = labels[a_idx], labels[b_idx]
        if la == MINUS and lb == MINUS:
            return []
        merged = PLUS if (la == PLUS and lb == PLUS) else MINUS
        img = list(base)
        img[c_idx] = merged
        out.append((tuple(img), 1))
    else:
        lc = labels[c_idx]
        if lc == PLUS:
            for la, lb in ((PLUS, MINUS), (MINUS, PLUS)):
                img = list(base)
                img[a_idx], img[b_idx] = la, lb
                out.append((tuple(img), 1))
        else:
            img = list(base)
            img[a_idx], img[b_idx] = MINUS, MINUS
            out.append((tuple(img), 1))
    return out


def _check_d_squared(basis, diffs):
    for i in diffs:
        if i + 1 not in diffs or not diffs[i] or not diffs[i + 1]:
            continue
        # compose sparse matrices: rows of d^{i+1} times columns of d^i
        by_col: dict[int, list[tuple[int, int]]] = {}
        for (row, col), c in diffs[i + 1].items():
            by_col.setdefault(col, []).append((row, c))
        acc: dict[tuple[int, int], int] = {}
        for (mid, col), c1 in diffs[i].items():
            for row, c2 in by_col.get(mid, []):
                key = (row, col)
                acc[key] = acc.get(key, 0) + c1 * c2
                if acc[key] == 0:
                    del acc[key]
        if acc:
            raise KhovanovError(f"d^2 != 0 between columns {i} and {i + 2}")


# ---------------------------------------------------------------------------
# homology


def _sparse_rank(rows: list[dict[int, Fraction]]) -> int:
    """Rank by exact Gaussian elimination on dict-backed rows."""
    rank = 0
    rows = [dict(r) for r in rows if r]
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        while row:
            col = min(row)
            if col in pivots:
                piv = pivots[col]
                factor = row[col] / piv[col]
                for c2, v2 in piv.items():
                    nv = row.get(c2, Fraction(0)) - factor * v2
                    if nv:
                        row[c2] = nv
                    else:
                        row.pop(c2, None)
            else:
                pivots[col] = row
                rank += 1
                break
    return rank


def homology(complex_: KhovanovComplex) -> dict[tuple[int, int], int]:
    """Dimensions of the rational homology per bidegree (i, j)."""
    dims: dict[tuple[int, int], int] = {}
    ranks: dict[tuple[int, int], int] = {}

    for i, d in complex_.differentials.items():
        if not d:
            continue
        by_j: dict[int, dict[int, dict[int, Fraction]]] = {}
        col_pos: dict[int, dict[int, int]] = {}
        for (row, col), c in d.items():
            j = complex_.j_grading[i][col]
            block = by_j.setdefault(j, {})
            block.setdefault(row, {})[col] = Fraction(c)
        for j, block in by_j.items():
            ranks[(i, j)] = _sparse_rank(list(block.values()))

    for i, js in complex_.j_grading.items():
        count: dict[int, int] = {}
        for j in js:
            count[j] = count.get(j, 0) + 1
        for j, c in count.items():
            dim = c - ranks.get((i, j), 0) - ranks.get((i - 1, j), 0)
            if dim < 0:
                raise KhovanovError("negative homology dimension (rank bug)")
            if dim:
                dims[(i, j)] = dim
    return dims


def khovanov_homology(cube: Cube) -> dict[tuple[int, int], int]:
    return homology(build_complex(cube))


def euler_characteristic(table: dict[tuple[int, int], int]) -> LaurentPoly:
    out = LaurentPoly.zero()
    for (i, j), dim in table.items():
        out = out + LaurentPoly.monomial(j, (-1) ** i * dim)
    return out


def homology_tsv(table: dict[tuple[int, int], int]) -> str:
    lines = [f"{i}\t{j}\t{dim}" for (i, j), dim in sorted(table.items())]
    return "\n".join(lines) + ("\n" if lines else "")
