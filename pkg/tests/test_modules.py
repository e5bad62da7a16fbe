import numpy as np
import pytest

from repcheck import linalg as L
from repcheck.cohomology import h0
from repcheck.meataxe import is_isomorphic
from repcheck.modules import (
    Env,
    ParseError,
    Rep,
    RepError,
    ad,
    adq,
    dsum,
    dual,
    natural,
    parse_expr,
    quot,
    rep_build,
    rep_from_gens,
    sub,
    sym,
    sym_monomials,
    tensor,
    trivial,
    twist,
    unparse,
    wedge2,
)


def test_dimensions(sl2_5):
    nat = natural(sl2_5.group)
    assert sym(3, nat).dim == 4
    assert wedge2(nat).dim == 1
    assert tensor(nat, nat).dim == 4
    assert dsum(nat, trivial(sl2_5.group, 2)).dim == 4
    assert ad(nat).dim == 4 and adq(nat).dim == 3


def test_sym_monomial_order():
    assert sym_monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]


def test_wedge2_is_determinant(sl2_5):
    w = wedge2(natural(sl2_5.group))
    assert all(int(m[0, 0]) == 1 for m in w.images)


def test_closure_error(sl2_5):
    G = sl2_5.group
    with pytest.raises(RepError):
        rep_from_gens(G, [np.array([[1, 1], [0, 1]]), np.array([[2, 0], [0, 1]])])
    with pytest.raises(RepError):
        rep_from_gens(G, [np.eye(2, dtype=int)])
    with pytest.raises(RepError):
        rep_from_gens(G, [np.zeros((2, 2), dtype=int)] * G.ngens)


def test_images_are_homomorphism(sl2_5):
    G = sl2_5.group
    v = sl2_5.env.reps["L3"]
    F = G.F
    rng = np.random.default_rng(1)
    for i, j in rng.integers(0, len(G), size=(30, 2)):
        assert np.array_equal(F.matmul(v.image(i), v.image(j)), v.image(G.mul(i, j)))


def test_dual_dual_and_twist(sl2_5):
    nat = natural(sl2_5.group)
    dd = dual(dual(nat))
    assert all(np.array_equal(a, b) for a, b in zip(dd.images, nat.images))
    assert is_isomorphic(dual(nat), nat)  # SL_2 natural module is self-dual
    # a twist by the full degree is the identity
    assert all(np.array_equal(a, b) for a, b in zip(twist(nat, 1).images, nat.images))


def test_h0_ad_nonzero(sl2_5):
    for label in ("L1", "L2", "L3"):
        assert len(h0(ad(sl2_5.env.reps[label]))) >= 1


def test_sub_quot(sl2_5):
    G = sl2_5.group
    v = dsum(natural(G), trivial(G, 1))
    s = sub(v, [[0, 0, 1]])
    assert s.dim == 1
    q = quot(v, [[0, 0, 1]])
    assert q.dim == 2 and is_isomorphic(q, natural(G))
    with pytest.raises(RepError):
        sub(v, [[1, 0, 0]])
    with pytest.raises(RepError):
        quot(v, [[1, 0, 0], [2, 0, 0]])


def test_parse_roundtrip():
    for text in ["natural", "dual(sym(2,natural))", "tensor(L1,twist(L1,1))", "sub(dsum(natural,trivial(1)),[[0,0,1]])", "ext(L1,L1,0)"]:
        assert unparse(parse_expr(text)) == text.replace(" ", "")
    for bad in ["", "sym(2)", "tensor(a)", "foo(x)", "natural)", "sub(natural,[])"]:
        with pytest.raises(ParseError):
            parse_expr(bad)


def test_rep_build(sl2_5):
    env = sl2_5.env
    assert rep_build("sym(2, natural)", env).dim == 3
    assert rep_build("ad(L1)", env).label == "ad(L1)"
    assert rep_build("ext(L1,L1,0)", env).dim == 4
    with pytest.raises(ParseError):
        rep_build("nope", env)
    with pytest.raises(RepError):
        rep_build("ext(L3,L3,0)", env)


def test_sym_matches_steinberg(sl2_5):
    nat = natural(sl2_5.group)
    for a in range(1, 5):
        assert is_isomorphic(sym(a, nat), sl2_5.env.reps[f"L{a}"])


def test_induce_dimension():
    from repcheck.catalog import make_group

    cg = make_group("q8_c3_wr_c2")
    V = cg.env.reps["V"]
    H, henv = cg.env.subgroups["Gplus"]
    assert V.dim == 2 * henv.reps["W1"].dim
    assert V.dim == (len(cg.group) // H.order) * 2


def test_env_lookup():
    from repcheck.field import ff_make
    from repcheck.groups import enumerate_group

    G = enumerate_group([np.array([[1, 1], [0, 1]])], ff_make(3))
    env = Env(G)
    assert env.lookup("natural").dim == 2
    assert isinstance(env.lookup("natural"), Rep)
    assert L.rank(G.F, env.lookup("natural").images[0]) == 2


def test_rep_build_leaves_env_labels_alone(sl2_5):
    rep = rep_build("St", sl2_5.env)
    assert rep.label == "St" and sl2_5.env.reps["L4"].label == "L4"
