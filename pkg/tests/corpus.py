"""The regression corpus: every family at desk-scale parameters."""

from arrlab.families import FamilySpec

CORPUS = [
    FamilySpec("full_monomial", (1,)),
    FamilySpec("full_monomial", (2,)),
    FamilySpec("full_monomial", (3,)),
    FamilySpec("monomial", (2,)),
    FamilySpec("monomial", (3,)),
    FamilySpec("L", (4, 3)),
    FamilySpec("L", (5, 3)),
    FamilySpec("L", (5, 4)),
    FamilySpec("L", (6, 4)),
    FamilySpec("L", (7, 5)),
    FamilySpec("L", (6, 3)),
    FamilySpec("hat_L", (2, 3)),
    FamilySpec("hat_L", (3, 4)),
    FamilySpec("hat_L", (3, 5)),
    FamilySpec("hat_L", (3, 6)),
    FamilySpec("hat_L", (4, 4)),
    FamilySpec("tilde_A", (2, 2)),
    FamilySpec("tilde_A", (2, 3)),
    FamilySpec("tilde_A", (3, 3)),
    FamilySpec("tilde_A", (3, 4)),
    FamilySpec("exB", (2, 2)),
    FamilySpec("exB", (2, 3)),
    FamilySpec("exB", (3, 3)),
    FamilySpec("exB", (2, 4)),
    FamilySpec("exB", (3, 4)),
    FamilySpec("exB", (3, 5)),
    FamilySpec("exC", (2,)),
    FamilySpec("exC", (3,)),
    FamilySpec("exC", (4,)),
]
