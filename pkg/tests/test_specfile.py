from fractions import Fraction

import pytest

from poishom import catalog
from poishom.homspace import classification_row
from poishom.specfile import (
    SpecParseError,
    parse_spec,
    parse_spec_text,
    serialize_spec,
)

MU_PLANE = """\
# two-dimensional quotient of the three-dimensional solvable group
[algebra]
basis: X1 X2 X3
X1,X2 -> 0
X1,X3 -> 1 X2
X2,X3 -> -1 X2

[delta]
X3 -> 1 X1^X2

[subalgebra]
X1
"""

SPHERE = """\
[algebra]
basis: J1 J2 J3
J1,J2 -> 1 J3
J2,J3 -> 1 J1
J3,J1 -> 1 J2

[rmatrix]
1 eta J1^J2

[subalgebra]
J3
"""

MODEL = """\
[coordinate_model]
variables: x1 x2 x3
base: 1 0 0
poisson_lie: yes
x1,x2 -> 1 x1 + -1
x2,x3 -> 1 x3
"""


def test_parse_mu_plane_matches_catalog():
    doc = parse_spec_text(MU_PLANE)
    assert doc.labels == ("X1", "X2", "X3")
    assert doc.brackets == {(0, 2): {1: Fraction(1)}, (1, 2): {1: Fraction(-1)}}
    S = doc.build_homspace("mu-plane")
    got = classification_row(S)
    want = classification_row(catalog.build_homspace("mu-plane"))
    assert got == want


def test_parse_sphere_with_eta():
    for eta in (Fraction(1), Fraction(2), Fraction(1, 3)):
        doc = parse_spec_text(SPHERE, eta=eta)
        assert doc.rmatrix == {(0, 1): eta}
        S = doc.build_homspace("sphere")
        row = classification_row(S)
        assert row["mu_status"] == "fails_condition_ii"
        assert row["subgroup_type"] == "poisson_lie_subgroup"


def test_empty_bracket_block_is_abelian():
    doc = parse_spec_text("[algebra]\nbasis: a b c\n")
    L = doc.build_algebra()
    assert L.jacobi_check() is None
    assert all(
        L.bracket(L.basis_vector(i), L.basis_vector(j)).is_zero()
        for i in range(3)
        for j in range(3)
    )


def test_asymmetry_conflict_rejected():
    text = "[algebra]\nbasis: a b c\na,b -> 1 c\nb,a -> 1 c\n"
    with pytest.raises(SpecParseError, match="inconsistent"):
        parse_spec_text(text)


def test_consistent_reversed_pair_accepted():
    text = "[algebra]\nbasis: a b c\na,b -> 1 c\nb,a -> -1 c\n"
    doc = parse_spec_text(text)
    assert doc.brackets == {(0, 1): {2: Fraction(1)}}


def test_unknown_label_diagnostic():
    text = "[algebra]\nbasis: a b\na,q -> 1 a\n"
    with pytest.raises(SpecParseError, match="line 3.*unknown label"):
        parse_spec_text(text)


def test_non_rational_literal_rejected():
    text = "[coordinate_model]\nvariables: x y\nbase: 0.5 0\n"
    with pytest.raises(SpecParseError, match="rational"):
        parse_spec_text(text)


def test_duplicate_label_rejected():
    with pytest.raises(SpecParseError, match="duplicate"):
        parse_spec_text("[algebra]\nbasis: a a\n")


def test_content_before_section_rejected():
    with pytest.raises(SpecParseError, match="before the first section"):
        parse_spec_text("basis: a b\n")


def test_coordinate_model_build_and_dynamics():
    doc = parse_spec_text(MODEL)
    model = doc.build_model("compartmental")
    from poishom.coord import divergence, hamiltonian_vf
    from poishom.poly import Polynomial

    h = (
        Polynomial.variable(model.vars, "x1")
        + Polynomial.variable(model.vars, "x2")
        + Polynomial.variable(model.vars, "x3")
    )
    X = hamiltonian_vf(model, h)
    assert divergence(model, X).is_zero()
    assert X.eval((1, 1, 1)) == (0, -1, 1)


def test_model_base_point_constraint_enforced():
    text = (
        "[coordinate_model]\nvariables: x y\nbase: 1 1\n"
        "constraint: 1 x^2 + 1 y^2 + -1\nx,y -> 1 x\n"
    )
    doc = parse_spec_text(text)
    with pytest.raises(ValueError, match="constraint"):
        doc.build_model()


def test_poisson_lie_flag_enforced_at_base():
    text = "[coordinate_model]\nvariables: x y\nbase: 0 0\npoisson_lie: yes\nx,y -> 1\n"
    # constant nonzero bracket cannot vanish at the base point
    with pytest.raises(SpecParseError):
        parse_spec_text(text + "bad\n")
    doc = parse_spec_text(
        "[coordinate_model]\nvariables: x y\nbase: 0 0\npoisson_lie: yes\nx,y -> 1 x\n"
    )
    doc.build_model()  # vanishing bracket at base: fine
    bad = parse_spec_text(
        "[coordinate_model]\nvariables: x y\nbase: 0 0\npoisson_lie: yes\nx,y -> 1\n"
    )
    with pytest.raises(ValueError, match="vanish"):
        bad.build_model()


def test_mult_and_field_sections():
    text = (
        "[coordinate_model]\nvariables: x y\nbase: 0 0\n"
        "x,y -> 1 x\n"
        "mult x: 1 x + 1 x'\n"
        "mult y: 1 y + 1 y'\n"
        "field probe: 1 y, -1 x\n"
    )
    doc = parse_spec_text(text)
    model = doc.build_model()
    assert model.group_mult is not None
    assert len(doc.model.fields["probe"]) == 2


def test_round_trip_identity():
    for text in (MU_PLANE, SPHERE, MODEL):
        doc = parse_spec_text(text)
        again = parse_spec_text(serialize_spec(doc))
        assert again == doc
        # serialization is canonical: a second pass is bit-identical
        assert serialize_spec(again) == serialize_spec(doc)


def test_parse_spec_from_file(tmp_path):
    path = tmp_path / "sphere.spec"
    path.write_text(SPHERE, encoding="utf-8")
    doc = parse_spec(str(path), eta=Fraction(2))
    assert doc.rmatrix == {(0, 1): Fraction(2)}


def test_basis_permuted_variant_same_verdicts():
    permuted = """\
[algebra]
basis: X2 X1 X3
X1,X3 -> 1 X2
X2,X3 -> -1 X2

[delta]
X3 -> 1 X1^X2

[subalgebra]
X1
"""
    base = classification_row(parse_spec_text(MU_PLANE).build_homspace("q"))
    row = classification_row(parse_spec_text(permuted).build_homspace("q"))
    for key in ("coisotropic", "subgroup_type", "chi_h0_zero", "invariant_volume",
                "semi_invariant", "mu_status"):
        assert row[key] == base[key]
