"""Seeded random inputs: polynomials, analytic generator sets, probes and matrix tuples."""

import itertools
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .freepoly import FieldMode, Polynomial, Word
from .linalg import identity
from .repvar import MatrixTuple


# Generator templates for random analytic ideals (every template is homogeneous)
GENERATOR_TEMPLATES = {
    "binomial": {
        "degree_range": (2, 3),
        "terms_range": (2, 2),
        "weight": 0.40  # 40% of generators
    },
    "trinomial": {
        "degree_range": (2, 3),
        "terms_range": (3, 3),
        "weight": 0.25  # 25% of generators
    },
    "monomial": {
        "degree_range": (2, 3),
        "terms_range": (1, 1),
        "weight": 0.15  # 15% of generators
    },
    "linear": {
        "degree_range": (1, 1),
        "terms_range": (2, 2),
        "weight": 0.05  # 5% of generators
    },
    "dense": {
        "degree_range": (2, 2),
        "terms_range": (3, 4),
        "weight": 0.15  # 15% of generators
    }
}

COEFFICIENTS = [Fraction(c) for c in (1, -1, 2, -2, 3, -3)] + [Fraction(1, 2), Fraction(-1, 2), Fraction(2, 3)]

# (a, b, c) with a^2 + b^2 = c^2
PYTHAGOREAN_TRIPLES = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29)]


class PolynomialGenerator:
    """Generates reproducible random inputs for property and oracle checks."""

    def __init__(self, seed: int = 42, g: int = 2, field: FieldMode = FieldMode.RATIONAL):
        self.rng = random.Random(seed)
        self.g = g
        self.field = field

    def random_coefficient(self):
        c = self.field.convert(self.rng.choice(COEFFICIENTS))
        if self.field is FieldMode.GAUSSIAN_RATIONAL and self.rng.random() < 0.3:
            c = c + self.field.convert(self.rng.choice(COEFFICIENTS)) * self.field.imaginary_unit
        return c

    def random_word(self, length: int, analytic: bool = False) -> Word:
        letters = self.g if analytic else 2 * self.g
        return tuple(self.rng.randrange(letters) for _ in range(length))

    def random_polynomial(self, max_degree: int, terms: int = 3, analytic: bool = False,
                          homogeneous_degree: Optional[int] = None) -> Polynomial:
        """Nonzero polynomial with up to `terms` terms."""
        while True:
            coeffs: Dict[Word, object] = {}
            for _ in range(terms):
                if homogeneous_degree is not None:
                    length = homogeneous_degree
                else:
                    length = self.rng.randint(0, max_degree)
                coeffs[self.random_word(length, analytic)] = self.random_coefficient()
            p = Polynomial(coeffs, self.g, self.field)
            if not p.is_zero():
                return p

    def generator_from_template(self, template_name: str) -> Polynomial:
        template = GENERATOR_TEMPLATES[template_name]
        degree = self.rng.randint(*template["degree_range"])
        analytic = list(itertools.product(range(self.g), repeat=degree))
        terms = min(self.rng.randint(*template["terms_range"]), len(analytic))
        words = self.rng.sample(analytic, terms)
        return Polynomial({w: self.random_coefficient() for w in words}, self.g, self.field)

    def generator_sets(self, count: int, max_generators: int = 2) -> List[List[Polynomial]]:
        """Random analytic homogeneous generator sets, templates drawn by weight."""
        names = list(GENERATOR_TEMPLATES)
        weights = [GENERATOR_TEMPLATES[n]["weight"] for n in names]
        sets = []
        for _ in range(count):
            size = self.rng.randint(1, max_generators)
            chosen = self.rng.choices(names, weights=weights, k=size)
            gens: List[Polynomial] = []
            for name in chosen:
                p = self.generator_from_template(name)
                if p not in gens:
                    gens.append(p)
            sets.append(gens)
        return sets

    def ideal_element(self, generators: Sequence[Polynomial], max_degree: int, terms: int = 3) -> Polynomial:
        """Random combination of u * f * v with f a generator or its star."""
        total = Polynomial.zero(self.g, self.field)
        pool = list(generators) + [f.star() for f in generators]
        for _ in range(terms):
            f = self.rng.choice(pool)
            room = max_degree - f.degree()
            if room < 0:
                continue
            left = self.rng.randint(0, room)
            right = self.rng.randint(0, room - left)
            u = Polynomial.monomial(self.random_word(left), self.g, self.field)
            v = Polynomial.monomial(self.random_word(right), self.g, self.field)
            total = total + (u * f * v).scale(self.random_coefficient())
        return total

    def probes(self, generators: Sequence[Polynomial], count: int, max_degree: int) -> List[Polynomial]:
        """Half ideal elements, half ideal elements plus a random perturbation."""
        out = []
        for k in range(count):
            p = self.ideal_element(generators, max_degree)
            if k % 2:
                p = p + self.random_polynomial(max_degree, terms=1)
            if p.is_zero():
                p = self.random_polynomial(max_degree)
            out.append(p)
        return out

    def random_tuple(self, n: int, entry_range: Tuple[int, int] = (-2, 2)) -> MatrixTuple:
        """g random n x n matrices with small integer entries (Gaussian in Qi mode)."""
        mats = []
        for _ in range(self.g):
            rows = []
            for _ in range(n):
                row = []
                for _ in range(n):
                    x = self.field.convert(self.rng.randint(*entry_range))
                    if self.field is FieldMode.GAUSSIAN_RATIONAL:
                        x = x + self.field.convert(self.rng.randint(*entry_range)) * self.field.imaginary_unit
                    row.append(x)
                rows.append(row)
            mats.append(rows)
        return MatrixTuple.from_rows(mats, self.field)

    def signed_permutation(self, n: int) -> List[List[Fraction]]:
        perm = list(range(n))
        self.rng.shuffle(perm)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, j in enumerate(perm):
            rows[i][j] = Fraction(self.rng.choice((1, -1)))
        return rows

    def pythagorean_rotation(self) -> List[List[Fraction]]:
        """Rotation or reflection with rational entries from a Pythagorean triple."""
        a, b, c = self.rng.choice(PYTHAGOREAN_TRIPLES)
        cos, sin = Fraction(a, c), Fraction(b, c)
        if self.rng.random() < 0.5:
            return [[cos, -sin], [sin, cos]]
        return [[cos, sin], [sin, -cos]]

    def orthogonal_tuples(self, count: int) -> List[MatrixTuple]:
        """Exact orthogonal tuples (Y^T Y = I), alternating the two constructions."""
        tuples = []
        for k in range(count):
            if k % 2:
                mats = [self.pythagorean_rotation() for _ in range(self.g)]
            else:
                n = self.rng.randint(1, 3)
                mats = [self.signed_permutation(n) for _ in range(self.g)]
            tuples.append(MatrixTuple.from_rows(mats, self.field))
        return tuples

    def get_statistics(self, sets: Sequence[Sequence[Polynomial]]) -> Dict:
        """Get statistics about generated generator sets."""
        gens = [p for s in sets for p in s]
        stats = {
            "total_sets": len(sets),
            "total_generators": len(gens),
            "by_degree": {},
            "terms": {
                "min": min((len(p) for p in gens), default=0),
                "max": max((len(p) for p in gens), default=0),
                "avg": sum(len(p) for p in gens) / len(gens) if gens else 0.0
            },
            "self_adjoint": sum(1 for p in gens if p == p.star())
        }
        for p in gens:
            stats["by_degree"][p.degree()] = stats["by_degree"].get(p.degree(), 0) + 1
        return stats


def is_orthogonal(X: MatrixTuple) -> bool:
    """Y^T Y = Y Y^T = I for every matrix of the tuple."""
    eye = identity(X.n, X.field)
    return all(X.adjoint(i) * M == eye and M * X.adjoint(i) == eye for i, M in enumerate(X.X))
