import pytest

from cyfold.bimodcx import (
    bimodule_dual,
    dual_regular_bimodule,
    find_quasi_iso,
    one_sided,
    resolution_of_algebra,
    resolve_bimodule,
    shift,
    standard_hereditary_resolution,
    tensor_power,
)
from cyfold.presets import a4_mod_longest_algebra, kronecker_algebra, linear_an_algebra
from cyfold.rootpair import RootPairSpec, check_strict_pair, k0_spanning_check
from cyfold.transport import (
    coord_complex_of,
    match_basic_algebras,
    resolve_complex,
    transported_pair,
    truncate_smart,
)


@pytest.fixture(scope="module")
def pair():
    a2 = linear_an_algebra(2)
    u = resolve_bimodule(dual_regular_bimodule(a2), len_bound=4)
    return transported_pair(a2, u, a2, u, [1], len_bound=10, seed=1)


def test_resolve_complex_roundtrip():
    kr = kronecker_algebra()
    pa = standard_hereditary_resolution(kr)
    x = coord_complex_of(pa)
    res, _, _ = resolve_complex(x)
    assert res.validate() == []
    assert res.cohomology_dims() == pa.cohomology_dims()


def test_resolve_complex_two_cohomologies():
    a2 = linear_an_algebra(2)
    dual = bimodule_dual(standard_hereditary_resolution(a2))
    x = coord_complex_of(dual)
    res, _, _ = resolve_complex(x)
    assert res.validate() == []
    assert res.cohomology_dims() == dual.cohomology_dims()


def test_truncate_smart_preserves_cohomology():
    a2 = linear_an_algebra(2)
    dual = bimodule_dual(standard_hereditary_resolution(a2))
    x = coord_complex_of(dual)
    t = truncate_smart(x, 0, 1)
    assert t.cohomology_dims() == x.cohomology_dims()


def test_endomorphism_algebra_is_a4_mod_longest(pair):
    e_alg = pair["algebra"]
    assert e_alg.dim == 9
    assert e_alg.check_associativity() and e_alg.check_unit()
    match = match_basic_algebras(e_alg, a4_mod_longest_algebra())
    assert match is not None
    sigma, lam = match
    # the strict idempotent pair {0, 1} lands on the quiver vertices {1, 2}
    assert {sigma[0], sigma[1]} == {1, 2}


def test_transported_bimodule_validates(pair):
    ue = pair["u"]
    assert ue.validate() == []
    # all one-sided restrictions are modules: the pair is strict
    for v in pair["algebra"].vertices:
        dims = one_sided(ue, [v]).cohomology_dims()
        assert set(dims) <= {0}


def test_transported_root_property(pair):
    e_alg, ue = pair["algebra"], pair["u"]
    res = resolution_of_algebra(e_alg, len_bound=8)
    nu2 = shift(bimodule_dual(res), 2)
    uu = tensor_power(ue, 2)
    assert nu2.cohomology_dims() == uu.cohomology_dims()
    assert find_quasi_iso(nu2, uu, 0, trials=16, seed=7) is not None


def test_transported_strict_pair(pair):
    e_alg, ue = pair["algebra"], pair["u"]
    res = resolution_of_algebra(e_alg, len_bound=8)
    spec = RootPairSpec(e_alg, ue, 2, 2, [0, 1], trials=16, seed=3)
    report = check_strict_pair(spec, resolution=res)
    assert report.passed, report.as_dict()
    assert report.details["add"]["total_top"] == {v: 1 for v in e_alg.vertices}
    assert k0_spanning_check(spec)
