import numpy as np
import pytest

import wgelfand as wg
from wgelfand.errors import (
    InputSpecError,
    NotAutomorphismError,
    NotInvolutiveError,
    SizeLimitError,
)


def test_cyclic_closure_from_cycle():
    g = wg.build_group_from_generators([(1, 2, 3, 0)])
    assert g.order == 4
    assert g.is_abelian()
    wg.validate_group(g)


def test_s3_from_generators():
    g = wg.build_group_from_generators([(1, 0, 2), (1, 2, 0)])
    assert g.order == 6
    assert not g.is_abelian()
    wg.validate_group(g)


def test_empty_generators_give_trivial_group():
    g = wg.build_group_from_generators([])
    assert g.order == 1
    assert g.identity == 0


def test_identity_is_index_zero(s3):
    assert s3.identity == 0
    n = s3.order
    assert np.array_equal(s3.mul[0], np.arange(n))


def test_element_cap():
    with pytest.raises(SizeLimitError):
        wg.build_group_from_generators(wg.symmetric_group_generators(5), element_cap=50)


def test_group_axioms_hold_on_builders():
    for g in [wg.cyclic_group(12), wg.dihedral_group(4), wg.symmetric_group(4)]:
        wg.validate_group(g)


def test_dihedral_order():
    assert wg.dihedral_group(4).order == 8


def test_group_from_table_roundtrip():
    c3 = wg.cyclic_group(3)
    rebuilt = wg.group_from_table(c3.mul.tolist())
    assert np.array_equal(rebuilt.mul, c3.mul)
    assert np.array_equal(rebuilt.inv, c3.inv)


def test_group_from_table_rejects_garbage():
    with pytest.raises(InputSpecError):
        wg.group_from_table([[0, 1], [0, 1]])


def test_subgroup_of_transposition(s3):
    K = wg.subgroup_closure(s3, [1])
    assert K.order == 2
    assert 0 in K


def test_subgroup_empty_seeds(s3):
    assert wg.subgroup_closure(s3, []).elements == (0,)


def test_subgroup_cyclic6_element2():
    c6 = wg.cyclic_group(6)
    K = wg.subgroup_closure(c6, [2])
    assert K.elements == (0, 2, 4)


def test_double_cosets_s3(s3_pair):
    group, K, part = s3_pair
    assert sorted(part.sizes()) == [2, 4]
    assert part.sizes()[part.identity_coset] == 2
    assert part.identity_coset == 0


def test_double_cosets_full_subgroup(s3):
    K = wg.subgroup_closure(s3, [1, 2])
    assert K.order == 6
    part = wg.double_cosets(s3, K)
    assert part.num_cosets == 1


def test_double_cosets_trivial_subgroup(s3):
    K = wg.subgroup_closure(s3, [])
    part = wg.double_cosets(s3, K)
    assert part.num_cosets == 6
    assert all(len(c) == 1 for c in part.cosets)


def test_double_coset_invariants(s4_pair):
    group, K, part = s4_pair
    sizes = part.sizes()
    assert sum(sizes) == group.order
    for size in sizes:
        assert (K.order ** 2) % size == 0
    # inverse map is an involution fixing the identity coset
    for i, j in enumerate(part.inverse_coset):
        assert part.inverse_coset[j] == i
    assert part.inverse_coset[part.identity_coset] == part.identity_coset
    # stability under the two-sided action
    for x in range(group.order):
        for k1 in K.elements:
            for k2 in K.elements:
                y = group.multiply(group.multiply(k1, x), k2)
                assert part.coset_of[y] == part.coset_of[x]


def test_double_cosets_idempotent(s3_pair):
    group, K, part = s3_pair
    again = wg.double_cosets(group, K)
    assert again.cosets == part.cosets
    assert np.array_equal(again.coset_of, part.coset_of)


def test_inversion_automorphism_on_abelian():
    c5 = wg.cyclic_group(5)
    theta = wg.inversion_automorphism(c5)
    assert theta.involutive


def test_inversion_rejected_on_nonabelian(s3):
    with pytest.raises(NotAutomorphismError) as exc:
        wg.check_automorphism(s3, s3.inv)
    x, y = exc.value.witness
    # witness pair genuinely violates the homomorphism property
    assert s3.inv[s3.multiply(x, y)] != s3.multiply(s3.inv[x], s3.inv[y])


def test_identity_automorphism(s3):
    theta = wg.check_automorphism(s3, np.arange(6), require_involutive=True)
    assert theta.involutive


def test_require_involutive():
    c5 = wg.cyclic_group(5)
    doubling = [(2 * x) % 5 for x in range(5)]
    theta = wg.check_automorphism(c5, doubling)
    assert not theta.involutive
    with pytest.raises(NotInvolutiveError):
        wg.check_automorphism(c5, doubling, require_involutive=True)


def test_theta_in_KxinvK_inversion_abelian():
    c6 = wg.cyclic_group(6)
    K = wg.subgroup_closure(c6, [])
    part = wg.double_cosets(c6, K)
    ok, witness = wg.theta_in_KxinvK(c6, part, wg.inversion_automorphism(c6))
    assert ok and witness is None


def test_theta_in_KxinvK_identity_on_s3(s3_pair):
    group, K, part = s3_pair
    theta = wg.check_automorphism(group, np.arange(6))
    ok, _ = wg.theta_in_KxinvK(group, part, theta)
    assert ok  # both double cosets are inverse-closed


def test_theta_in_KxinvK_identity_fails_on_cyclic5():
    c5 = wg.cyclic_group(5)
    K = wg.subgroup_closure(c5, [])
    part = wg.double_cosets(c5, K)
    theta = wg.check_automorphism(c5, np.arange(5))
    ok, witness = wg.theta_in_KxinvK(c5, part, theta)
    assert not ok
    assert witness == 1


def test_point_stabilizer_order(s4_pair):
    _, K, _ = s4_pair
    assert K.order == 6


def test_group_from_spec_kinds():
    assert wg.group_from_spec({"kind": "cyclic", "n": 6}).order == 6
    assert wg.group_from_spec({"kind": "dihedral", "n": 4}).order == 8
    assert wg.group_from_spec({"kind": "symmetric", "n": 3}).order == 6
    assert wg.group_from_spec(
        {"kind": "generators", "generators": [[1, 0]]}
    ).order == 2
    table = wg.cyclic_group(2).mul.tolist()
    assert wg.group_from_spec({"kind": "table", "table": table}).order == 2
    with pytest.raises(InputSpecError):
        wg.group_from_spec({"kind": "nonsense"})


def test_subgroup_from_spec(s3):
    assert wg.subgroup_from_spec(s3, {"seeds": [1]}).order == 2
    K = wg.subgroup_from_spec(s3, {"elements": [0, 1]})
    assert K.elements == (0, 1)
    with pytest.raises(InputSpecError):
        wg.subgroup_from_spec(s3, {"elements": [0, 2]})  # not inverse-closed


def test_automorphism_from_spec():
    c5 = wg.cyclic_group(5)
    assert wg.automorphism_from_spec(c5, {"kind": "inversion"}).involutive
    assert wg.automorphism_from_spec(c5, {"kind": "identity"}).involutive
    theta = wg.automorphism_from_spec(c5, {"kind": "perm", "perm": [0, 4, 3, 2, 1]})
    assert theta.involutive
