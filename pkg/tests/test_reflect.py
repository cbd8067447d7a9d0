import pytest

from quiver_hecke.cartan import preset
from quiver_hecke.catalogue import head_module, kato_module, simple_power
from quiver_hecke.characters import Laurent
from quiver_hecke.errors import UnknownGenerator
from quiver_hecke.gmod import one_letter
from quiver_hecke.homs import Morphism, hom_space
from quiver_hecke.reflect import (
    build_Mnu,
    generator_images,
    generator_report,
    psi_isometry,
    psi_weight,
    r_map,
    reflect_kclass,
    verify_bos,
    verify_DiEi_cleared,
    verify_J_functorial,
    verify_J_map,
    verify_Mnu_growth,
)


@pytest.fixture(scope="module")
def datum():
    return preset("A2")


def test_psi_weight(datum):
    assert psi_weight(datum, "1", {"2": 1}) == {"1": 1, "2": 1}
    assert psi_weight(datum, "1", {"1": 1}) == {"1": -1}
    assert psi_weight(datum, "1", {"1-": 1}) == {"1+": -1}


@pytest.mark.parametrize("name, i", [("A2", "1"), ("A2", "2"), ("B2", "1"), ("B2", "2"),
                                     ("C2", "1"), ("A3", "2")])
def test_generator_report(name, i):
    rows = generator_report(preset(name), i)
    assert len(rows) == preset(name).rank + 1
    assert all(r["pass"] for r in rows)


@pytest.mark.parametrize("name, i", [("B2", "1"), ("A3", "2")])
def test_generator_images_are_a_bijection(name, i):
    datum = preset(name)
    table = generator_images(datum, i)
    images = sorted(image for image, _, _, _ in table.values())
    assert images == sorted(f"Q+<{j}>" for j in datum.index_set + (f"{i}+",))
    d = datum.d(i)
    assert table[f"D-1Q-<{i}>"][1] == -d
    assert table[f"DQ-<{i}->"][1] == d


def test_generator_images_follow_the_cusp_length():
    table = generator_images(preset("B2"), "2")
    assert table["<1 2^2>"][2] == {"1": 1, "2": 2}
    assert table["<1 2^2>"][0] == "Q+<1>"


@pytest.mark.parametrize("name, i", [("A2", "1"), ("B2", "2")])
def test_psi_isometry(name, i):
    report = psi_isometry(preset(name), i)
    assert report["pass"]
    assert report["image_of"] == f"{i}+"


def test_psi_isometry_lists_excluded_pairs(datum):
    report = psi_isometry(datum, "1")
    excluded = sorted(r["pair"] for r in report["excluded"])
    assert excluded == ["1-,2", "2,1-"]
    assert not any(r["equal"] for r in report["excluded"])
    assert all(r["pair"] not in excluded for r in report["rows"])
    assert report["checked"] == 9 - 2
    assert "1-" in report["scope"]


def test_reflect_kclass(datum):
    image = reflect_kclass(datum, "1", {("D-1Q-<1>",): 1})
    assert image == {("Q+<1>",): Laurent.monomial(-1)}
    with pytest.raises(UnknownGenerator):
        reflect_kclass(datum, "1", {("Q+<7>",): 1})


@pytest.mark.parametrize("i", ["1", "2"])
def test_bos_relations(datum, i):
    report = verify_bos(datum, i)
    assert report["sequence_1"]["pass"]
    assert report["sequence_2"]["pass"]
    assert report["bos"]["pass"]
    assert report["pass"]


def test_build_Mnu_rejects_empty_word(A2):
    with pytest.raises(ValueError):
        build_Mnu(A2, "1", (), 4)


def test_build_Mnu_window(A2):
    gen = build_Mnu(A2, "1", ("2", "1"), 6)
    assert all(w[0] != "1" for w in gen.module.words)
    assert gen.to_dict()["word"] == ["2", "1"]


@pytest.mark.parametrize("j", ["1", "2"])
def test_growth(A2, j):
    assert verify_Mnu_growth(A2, "1", ("2",), j)["pass"]


def test_r_map_on_simple_power(A1):
    r = r_map(simple_power(A1, "1", 2), "1")
    assert r.check() == []
    assert r.nilpotency() == 2


def test_r_map_off_support(A2):
    r = r_map(one_letter(A2, "2"), "1")
    assert r.E.is_zero()
    assert r.nilpotency() == 0


@pytest.mark.parametrize("word", [("1",), ("1", "2"), ("2", "1"), ("1", "2", "1")])
def test_J_map_on_standard_modules(A2, word):
    report = verify_J_map(kato_module(A2, word), "1")
    assert report["homomorphism"]
    assert report["composition_identity"]
    assert report["pass"]


def test_J_map_on_head(A2):
    assert verify_J_map(head_module(A2, ("2", "1")), "1")["pass"]


def test_J_functorial(A2):
    M, N = kato_module(A2, ("1", "2")), kato_module(A2, ("2", "1"))
    (d, F), = hom_space(M, N).maps
    assert verify_J_functorial(Morphism(M, N, F, d), "1")["pass"]


@pytest.mark.parametrize("j", ["1", "2"])
def test_DiEi_cleared(A2_plus, j):
    assert verify_DiEi_cleared(one_letter(A2_plus, j), "1")["pass"]


def test_DiEi_cleared_on_cusp(A2_plus):
    report = verify_DiEi_cleared(head_module(A2_plus, ("1", "2")), "1")
    assert report["coker_dim"] == 2
    assert report["dim_EC"] == 3
    assert report["cleared"]
    assert report["cleared_match"]
    assert report["additivity"]
    assert report["pass"]


def test_DiEi_cleared_on_other_cusp(A2_plus):
    assert verify_DiEi_cleared(head_module(A2_plus, ("2", "1")), "1")["pass"]
