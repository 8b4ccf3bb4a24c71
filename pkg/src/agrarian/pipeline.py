"""Deficiency-one pipeline: Fox Jacobian minors to the agrarian polytope.

For a presentation with one generator more than relators, the specialised
Jacobian ``A`` (relators x generators) loses the column of a generator
``s_i``; the resulting square matrix ``A_i`` gives the candidate
``P(det A_i) - P(s_i - 1)``.  All admissible candidates agree modulo
translation, and they agree with the polytope of the negated torsion.
"""

from fractions import Fraction

from .complexes import presentation_complex, specialize
from .errors import (
    NoAdmissibleGenerator,
    NotAcyclic,
    PolytopeMismatch,
    WrongDeficiency,
    ZeroCharacter,
)
from .invariants import betti_numbers, torsion
from .linalg import dieudonne_det_canonical
from .polytopes import (
    difference_equal,
    marked_membership,
    polytope_hom,
    reduce_difference,
)
from .presentations import format_presentation
from .twisted import AgrarianMap

__all__ = [
    "GeneratorRecord",
    "PipelineReport",
    "run_pipeline",
    "torsion_polytope",
    "bns_query",
    "parse_character",
]


class GeneratorRecord:
    """Per-generator data: the minor determinant and its candidate polytope."""

    def __init__(self, name, index, lattice_image):
        self.name = name
        self.index = index
        self.lattice_image = lattice_image
        self.admissible = any(lattice_image)
        self.determinant = None
        self.det_polytope = None
        self.generator_polytope = None
        self.candidate = None
        self.singular = False

    def to_json(self, field):
        out = {
            "generator": self.name,
            "latticeImage": list(self.lattice_image),
            "admissible": self.admissible,
            "singular": self.singular,
        }
        if self.determinant is not None:
            out["determinant"] = field.format(self.determinant)
        if self.candidate is not None:
            out["detPolytope"] = self.det_polytope.to_json()
            out["generatorPolytope"] = self.generator_polytope.to_json()
            out["candidate"] = self.candidate.to_json(modulo_translation=True)
        return out


class PipelineReport:
    def __init__(self, presentation, alpha, betti):
        self.presentation = presentation
        self.alpha = alpha
        self.betti = betti
        self.records = []
        self.agrarian_polytope = None
        self.consistency = False
        self.complex = None

    @property
    def acyclic(self):
        return self.betti.acyclic

    def admissible_records(self):
        return [r for r in self.records if r.admissible and not r.singular]

    def polytope(self):
        """The agrarian polytope as a single polytope (origin-normalised), if it is one."""
        if self.agrarian_polytope is None:
            return None
        R = reduce_difference(self.agrarian_polytope)
        return R.normalised() if R is not None else None

    def to_json(self):
        field = self.alpha.field
        out = {
            "presentation": format_presentation(self.presentation),
            "deficiency": self.presentation.deficiency,
            "map": self.alpha.describe(),
            "betti": self.betti.to_json(),
            "records": [r.to_json(field) for r in self.records],
            "consistency": self.consistency,
            "agrarianPolytope": None,
            "polytope": None,
        }
        if self.agrarian_polytope is not None:
            out["agrarianPolytope"] = self.agrarian_polytope.to_json(modulo_translation=True)
            P = self.polytope()
            out["polytope"] = P.to_json() if P is not None else None
        return out


def run_pipeline(P, alpha=None, token=None):
    """Agrarian polytope of a deficiency-one presentation via Jacobian minors."""
    if P.deficiency != 1:
        raise WrongDeficiency(f"deficiency {P.deficiency}, expected 1")
    if alpha is None:
        alpha = AgrarianMap.abelianisation(P)
    C = specialize(presentation_complex(P), alpha)
    report = PipelineReport(P, alpha, betti_numbers(C, token))
    report.complex = C
    if not report.acyclic:
        raise NotAcyclic(f"nonzero Betti numbers {report.betti.nonzero()}", report)
    A = C.d(2)
    field = alpha.field
    for i, name in enumerate(P.generators):
        rec = GeneratorRecord(name, i, alpha.lattice_image(name))
        report.records.append(rec)
        if not rec.admissible:
            continue
        det = dieudonne_det_canonical(A.delete_column(i), token)
        rec.determinant = det
        if not det:
            rec.singular = True
            continue
        s_minus_one = alpha.to_field(alpha.generator_image(name)) - field.one
        rec.det_polytope = polytope_hom(det)
        rec.generator_polytope = polytope_hom(s_minus_one)
        rec.candidate = rec.det_polytope - rec.generator_polytope
    good = report.admissible_records()
    if not good:
        raise NoAdmissibleGenerator("no generator with nontrivial image and nonsingular minor")
    first = good[0].candidate
    report.consistency = all(difference_equal(first, r.candidate, True) for r in good[1:])
    report.agrarian_polytope = first
    return report


def torsion_polytope(C, rng=None, token=None):
    """``P(-tau)``: the polytope of the inverse torsion representative."""
    tau = torsion(C, rng=rng, token=token)
    return -polytope_hom(tau.representative)


def parse_character(text):
    """``"1,-2"`` to a tuple of Fractions."""
    parts = [p.strip().replace("−", "-") for p in text.split(",")]
    if not parts or any(not p for p in parts):
        raise ValueError(f"malformed character {text!r}")
    return tuple(Fraction(p) for p in parts)


def bns_query(report, phi, marking):
    """Marked-vertex membership of ``phi`` for the report's agrarian polytope."""
    if isinstance(phi, str):
        phi = parse_character(phi)
    phi = tuple(Fraction(a) for a in phi)
    if not any(phi):
        raise ZeroCharacter("the zero character is never in the invariant")
    poly = report.polytope()
    if poly is None or marking.polytope.normalised() != poly:
        raise PolytopeMismatch("marking is not on the agrarian polytope")
    return marked_membership(marking, phi)
