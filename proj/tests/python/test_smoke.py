import json
import pathlib

import pytest

import zsup

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"

Z22 = {
    "n": 2,
    "base_vars": ["x"],
    "formal_vars": [
        {"name": "xi", "degree": [0, 1]},
        {"name": "eta", "degree": [1, 0]},
        {"name": "theta", "degree": [1, 1]},
    ],
    "truncation_order": 6,
}


def load(name):
    return json.loads((DATA / name).read_text())


def test_domain_roundtrip():
    d = zsup.domain(Z22)
    assert d.rank == 2
    assert d.base_vars == ["x"]
    assert d.formal_vars[2] == ("theta", [1, 1])
    assert zsup.domain(d.to_json()) == d
    assert d.with_order(3).truncation_order == 3


def test_geometric_series_inverse():
    d = zsup.domain(Z22).with_order(3)
    f = zsup.Series(d, "1 - theta")
    assert str(f.invert()) == "1+theta+theta^2+theta^3"
    assert f * f.invert() == zsup.Series(d, "1")


def test_sign_rule_and_nilpotency():
    d = zsup.domain(Z22)
    xi, eta, theta = (zsup.Series(d, v) for v in ("xi", "eta", "theta"))
    assert eta * xi == xi * eta
    assert (xi * xi).is_zero()
    assert eta * theta * xi == -(xi * eta * theta)
    assert not (theta ** 2).is_zero()


def test_decompose_and_projection():
    d = zsup.domain(Z22)
    f = zsup.Series(d, "(1 + theta)^2 + 2*x*xi")
    parts = dict((tuple(deg), str(s)) for deg, s in f.decompose())
    assert parts == {(0, 0): "1+theta^2", (0, 1): "2*x*xi", (1, 1): "2*theta"}
    assert zsup.Series(d, "x^2 + 3 + xi*eta").base_projection() == "x^2+3"


def test_invert_rejects_nonconstant_term():
    d = zsup.domain(Z22)
    with pytest.raises(zsup.ZsupError):
        zsup.Series(d, "x + theta").invert()
    with pytest.raises(ValueError):
        zsup.Series(d, "1 +")


def test_pullback_and_compose():
    phi = zsup.morphism(load("morphism_square.json"))
    g = zsup.Series(phi.target, "y^2")
    assert str(phi.pullback(g)) == "x^2+2*x*theta^2+theta^4"
    ok, problems = phi.check()
    assert ok and problems == []
    ident = zsup.Morphism.identity(phi.source)
    assert zsup.compose(phi, ident) == phi


def test_signs():
    table = [[1, -1, 1], [-1, -1, 1], [1, 1, 1]]
    rank, sigmas = zsup.realize_signs(table)
    assert len(sigmas) == 3
    assert zsup.verify_signs(table, rank, sigmas)
    assert not zsup.verify_signs([[-1]], 1, [[0]])


def test_atlas_cocycles():
    assert all(r["ok"] for r in zsup.check_cocycles(load("atlas_identity.json")))
    assert not all(r["ok"] for r in zsup.check_cocycles(load("atlas_broken.json")))
    lifted = zsup.tangent_lift_atlas(load("atlas_identity.json"))
    names = [v["name"] for v in lifted["charts"][0]["domain"]["formal_vars"]]
    assert names == ["xi", "xdot", "xidot"]


def test_bundles():
    m = zsup.superize_dvb(load("dvb.json"))
    assert str(m) == "x = x+1\nxi = 2*xi\neta = x^2*eta+eta\npsi = -psi+x*xi*eta\n"
    assert str(zsup.superize_nvb(load("nvb_triple.json"))).endswith("w = w+x*u*v\n")


def test_quaternions():
    assert zsup.clifford_mul("e1", "e1") == "-1"
    assert zsup.clifford_mul("e1*e2", "e1*e2") == "-1"
    ok, counterexample, _ = zsup.check_color_commutative()
    assert ok and counterexample is None


def test_jets():
    d = zsup.domain(Z22)
    assert str(zsup.germ_invert(zsup.Series(d, "1 + x"), ["0"], 2)) == "x^2-x+1"
    assert zsup.madic_order(zsup.Series(d, "x^2 + x*xi"), ["0"]) == 2
    assert zsup.madic_order(zsup.Series(d, "0"), ["0"]) is None
