"""Named problems used by the command line, the tests and the acceptance runs."""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from .cli import ProblemFile
from .errors import PreconditionError
from .freepoly import FieldMode, Polynomial
from .groebner import IdealPresentation
from .parser import parse_poly


class NamedProblem:
    """Base class for catalogued problems."""

    def __init__(self, name: str, g: int, generators: List[str], degree: int,
                 field: FieldMode = FieldMode.RATIONAL, q: Optional[Fraction] = None,
                 matrices: Optional[Dict[str, List[List[List[str]]]]] = None,
                 vectors: Optional[Dict[str, List[str]]] = None):
        self.name = name
        self.g = g
        self.generators = generators
        self.degree = degree
        self.field = field
        self.q = q
        self.matrices = matrices or {}
        self.vectors = vectors or {}

    def polynomials(self) -> List[Polynomial]:
        return [parse_poly(text, self.g, self.field) for text in self.generators]

    def ideal(self) -> IdealPresentation:
        return IdealPresentation.from_generators(self.polynomials(), self.g, self.field)

    def to_dict(self) -> Dict[str, Any]:
        """Problem-file JSON object."""
        data: Dict[str, Any] = {
            "field": self.field.value,
            "g": self.g,
            "generators": list(self.generators),
            "degree": self.degree,
        }
        if self.q is not None:
            data["q"] = str(self.q)
        if self.matrices:
            data["matrices"] = self.matrices
        if self.vectors:
            data["vectors"] = self.vectors
        return data

    def problem_file(self) -> ProblemFile:
        return ProblemFile.from_dict(self.to_dict())

    def __str__(self):
        gens = ", ".join(self.generators) or "no generators"
        return f"{self.name} (g={self.g}, {self.field.value}: {gens})"


class CommutatorProblem(NamedProblem):
    """*-ideal of x1x2 - x2x1; homogeneous and analytic."""

    def __init__(self):
        super().__init__(name="commutator", g=2, generators=["x1*x2 - x2*x1"], degree=3)


class ShiftedCommutatorProblem(NamedProblem):
    """x1x2 - x2x1 + 1: trace form 1, so no hard matrix zeros and 1 is not in the ideal."""

    def __init__(self):
        super().__init__(name="commutator_plus_one", g=2, generators=["x1*x2 - x2*x1 + 1"], degree=6)


class ToeplitzProblem(NamedProblem):
    """The isometry relation x*x = 1."""

    def __init__(self):
        super().__init__(name="toeplitz", g=1, generators=["1 - x1'*x1"], degree=3)


class WeylProblem(NamedProblem):
    """Canonical commutation relation xx* - x*x = 1."""

    def __init__(self):
        super().__init__(name="weyl", g=1, generators=["x1*x1' - x1'*x1 - 1"], degree=4)


class QWeylProblem(NamedProblem):
    """
    q-deformed relations with x = x1 and a = x2.
    - a*a - q aa*
    - xx* + aa* - 1
    """

    def __init__(self, q: Fraction = Fraction(1, 2)):
        super().__init__(
            name="qweyl",
            g=2,
            generators=[f"x2'*x2 - {q}*x2*x2'", "x1*x1' + x2*x2' - 1"],
            degree=5,
            q=q,
        )


class JordanBlockProblem(NamedProblem):
    """Nilpotent 2x2 Jordan block: x is a soft but not hard zero, and the image algebra is M_2."""

    def __init__(self):
        super().__init__(
            name="jordan",
            g=1,
            generators=[],
            degree=4,
            matrices={"jordan": [[["0", "1"], ["0", "0"]]]},
            vectors={"e1": ["1", "0"]},
        )


class DiagonalProblem(NamedProblem):
    """diag(0, 1): reducible, quotient of dimension 2."""

    def __init__(self):
        super().__init__(
            name="diag",
            g=1,
            generators=[],
            degree=3,
            matrices={"diag": [[["0", "0"], ["0", "1"]]]},
            vectors={"e1": ["1", "0"]},
        )


class RotationProblem(NamedProblem):
    """Quarter-turn rotation J; its commutant is a copy of C, so soft zeros are hard."""

    def __init__(self):
        super().__init__(
            name="rotation",
            g=1,
            generators=[],
            degree=3,
            matrices={"rotation": [[["0", "-1"], ["1", "0"]]]},
            vectors={"e1": ["1", "0"]},
        )


class PointDetectorProblem(NamedProblem):
    """
    Sum over i of (x_i - l_i)*(x_i - l_i) + (x_i - l_i)(x_i - l_i)*.
    Its only soft zero among 1x1 tuples is the point l, where it is a hard zero.
    """

    def __init__(self, point: Optional[List[Fraction]] = None):
        point = point or [Fraction(1), Fraction(2)]
        terms = []
        for i, value in enumerate(point, start=1):
            shifted = f"(x{i} - {value})"
            terms.append(f"{shifted}'*{shifted}")
            terms.append(f"{shifted}*{shifted}'")
        super().__init__(
            name="point_detector",
            g=len(point),
            generators=[" + ".join(terms)],
            degree=2,
            matrices={"point": [[[str(value)]] for value in point]},
        )
        self.point = point


def get_all_problems() -> List[NamedProblem]:
    """Get every catalogued problem."""
    return [
        CommutatorProblem(),
        ShiftedCommutatorProblem(),
        ToeplitzProblem(),
        WeylProblem(),
        QWeylProblem(),
        JordanBlockProblem(),
        DiagonalProblem(),
        RotationProblem(),
        PointDetectorProblem(),
    ]


def get_problem(name: str) -> NamedProblem:
    for problem in get_all_problems():
        if problem.name == name:
            return problem
    known = ", ".join(p.name for p in get_all_problems())
    raise PreconditionError(f"Unknown problem {name!r} (known: {known})")


def write_problem_files(directory: Path) -> List[Path]:
    """Write one <name>.json per catalogued problem."""
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for problem in get_all_problems():
        path = directory / f"{problem.name}.json"
        with open(path, "w") as f:
            json.dump(problem.to_dict(), f, indent=2)
            f.write("\n")
        written.append(path)
    return written
