from fractions import Fraction

import pytest

import genclass


def test_hilbert_small():
    assert genclass.hilbert(-4) == [-1728, 1]
    assert genclass.hilbert(-23)[-1] == 1
    assert len(genclass.hilbert(-23)) == genclass.class_number(-23) + 1


def test_genclass_d52():
    f = genclass.genclass(-52)
    assert f["A"] == [1]
    assert f["B"] == [1]
    assert f["heegner"] == (Fraction(1), Fraction(-1))
    assert f["text"].splitlines()[0] == "D=-52 N=119 curve=x0plus119 basis=standard real=1"


def test_etamixed_and_tree():
    f = genclass.genclass(-523, basis="etamixed", algo="tree")
    assert f["basis_coeffs"] == [0, -1, 1, 3, -1, 1]


def test_norm_identity_shape():
    n = genclass.norm_to_x(-52)
    assert n["T"] == [-1, 1]
    assert n["s"] in (1, -1)


def test_density_and_rfactor():
    assert genclass.density(119, True) == Fraction(19, 64)
    assert genclass.r_curve(119, True) == 72


def test_heights():
    h = genclass.heights([5, -4, 3])
    assert h["norm1"] == 12
    assert h["norm_inf"] == 5
    assert h["mahler"] == pytest.approx(5.0)
    assert h["inequalities_hold"]


def test_fp_roots():
    assert genclass.fp_roots([-1, 0, 1], 7) == [1, 6]
    assert genclass.fp_roots([1, 0, 1], 7) == []


def test_cm_both_pipelines():
    for via in ("hilbert", "x0plus119"):
        c = genclass.cm(4, 17, via=via)
        assert c["q"] == 17
        assert c["count"] == 14


def test_errors():
    with pytest.raises(ValueError):
        genclass.cm(2, 2)
    with pytest.raises(ValueError):
        genclass.genclass(-52, basis="bogus")
