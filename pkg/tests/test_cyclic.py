import pytest

from simpeff import cyclic as cyc
from simpeff import nerve as nv
from simpeff import palg, sset
from simpeff.util import InputError


def nerve_of(magma, K=4):
    return nv.nerve(magma, palg.max_associativity_datum(magma, K), K)


@pytest.fixture(scope="module")
def z2_cyclic_z1():
    z2 = nv.cyclic_group(2)
    x = nerve_of(nv.magma_of_group(z2), 4)
    return z2, x, cyc.group_nerve_cyclic(z2, 1, x)


@pytest.fixture(scope="module")
def l2_cyclic():
    e = palg.interval_effect_algebra(2)
    x = nerve_of(e.magma, 4)
    return e, x, cyc.effect_nerve_cyclic(e, x)


def all_ok(checks):
    return all(c.ok for c in checks)


# ---------------------------------------------------------------------------
# relations, locked against the printed Z/2 formulas


def test_z2_formulas_lock_the_relations(z2_cyclic_z1):
    z2, x, c = z2_cyclic_z1
    assert all_ok(cyc.validate_cyclic(c))
    lab1 = {v: i for i, v in enumerate(x.labels[1])}
    lab2 = {v: i for i, v in enumerate(x.labels[2])}
    for k in range(2):
        assert c.tau[1][lab1[k]] == lab1[(1 - k) % 2]
    for k1 in range(2):
        for k2 in range(2):
            assert c.tau[2][lab2[(k1, k2)]] == lab2[((1 - k2 - k1) % 2, k1)]
    # and the z = 0 structure
    c0 = cyc.group_nerve_cyclic(z2, 0, x)
    assert all_ok(cyc.validate_cyclic(c0))
    for k in range(2):
        assert c0.tau[1][lab1[k]] == lab1[(-k) % 2]
    for k1 in range(2):
        for k2 in range(2):
            assert c0.tau[2][lab2[(k1, k2)]] == lab2[((-k2 - k1) % 2, k1)]


def test_identity_tau2_breaks_relations(z2_cyclic_z1):
    _, x, c = z2_cyclic_z1
    broken = cyc.CyclicSSet(x, dict(c.tau))
    broken.tau[2] = list(range(x.counts[2]))
    rep = {r.name: r for r in cyc.validate_cyclic(broken)}
    assert not rep["d0.tau=dn@2"].ok and rep["d0.tau=dn@2"].witness is not None


def test_point_with_identity_tau():
    p = sset.point(3)
    c = cyc.CyclicSSet(p, {n: [0] for n in range(1, 4)})
    assert all_ok(cyc.validate_cyclic(c))


def test_group_nerve_cyclic_q8():
    q8 = nv.quaternion_group()
    x = nv.comm_nerve(q8, None, 4)
    c = cyc.group_nerve_cyclic(q8, 1, x)  # z = -1 is central
    assert all_ok(cyc.validate_cyclic(c))


def test_group_nerve_cyclic_rejects_noncentral():
    s3 = nv.symmetric_group(3)
    x = nv.comm_nerve(s3, None, 3)
    noncentral = next(z for z in range(6) if z not in s3.center())
    with pytest.raises(InputError):
        cyc.group_nerve_cyclic(s3, noncentral, x)


def test_effect_nerve_cyclic_l2(l2_cyclic):
    e, x, c = l2_cyclic
    assert all_ok(cyc.validate_cyclic(c))
    lab1 = {v: i for i, v in enumerate(x.labels[1])}
    assert c.tau[1][lab1[1]] == lab1[1]  # 2 - 1 = 1
    lab2 = {v: i for i, v in enumerate(x.labels[2])}
    assert c.tau[2][lab2[(1, 1)]] == lab2[(0, 1)]


def test_tau1_involution_consequence(l2_cyclic, z2_cyclic_z1):
    for c in (l2_cyclic[2], z2_cyclic_z1[2]):
        t1 = c.tau[1]
        assert all(t1[t1[e]] == e for e in range(len(t1)))


# ---------------------------------------------------------------------------
# orthocomplement laws


def test_ortho_laws_effect_nerve(l2_cyclic):
    assert all_ok(cyc.orthocomplement_laws(l2_cyclic[2]))


def test_ortho_laws_z3():
    z3 = nv.cyclic_group(3)
    x = nerve_of(nv.magma_of_group(z3), 4)
    c = cyc.group_nerve_cyclic(z3, 0, x)
    assert all_ok(cyc.orthocomplement_laws(c))


def test_ortho_laws_corrupted_tau2(l2_cyclic):
    _, x, c = l2_cyclic
    broken = cyc.CyclicSSet(x, dict(c.tau))
    broken.tau[2] = list(range(x.counts[2]))
    rep = {r.name: r for r in cyc.orthocomplement_laws(broken)}
    assert not rep["ortho-1-rotation"].ok


def test_ortho_laws_pass_on_all_generated_instances(z2_cyclic_z1):
    q8 = nv.quaternion_group()
    instances = [
        z2_cyclic_z1[2],
        cyc.group_nerve_cyclic(q8, 1, nv.comm_nerve(q8, None, 3)),
        cyc.effect_nerve_cyclic(palg.interval_effect_algebra(3),
                                nerve_of(palg.interval_effect_algebra(3).magma, 3)),
        cyc.effect_nerve_cyclic(palg.boolean_effect_algebra(2),
                                nerve_of(palg.boolean_effect_algebra(2).magma, 3)),
    ]
    for c in instances:
        assert all_ok(cyc.orthocomplement_laws(c))


# ---------------------------------------------------------------------------
# simplicial effects and effect algebroids


def test_simplicial_effect_l2(l2_cyclic):
    ok, _ = cyc.is_simplicial_effect(l2_cyclic[2])
    assert ok


def test_simplicial_effect_fails_z2(z2_cyclic_z1):
    _, x, c = z2_cyclic_z1
    ok, checks = cyc.is_simplicial_effect(c)
    assert not ok
    inv = next(ch for ch in checks if ch.name == "inverseless")
    assert not inv.ok and inv.witness == (1, 1)


def test_simplicial_effect_fails_q8_torsion():
    q8 = nv.quaternion_group()
    x = nv.comm_nerve(q8, 2, 4)
    c = cyc.group_nerve_cyclic(q8, 1, x)
    ok, checks = cyc.is_simplicial_effect(c)
    assert not ok
    assert not next(ch for ch in checks if ch.name == "inverseless").ok


def test_effect_algebroid_conditions_l2(l2_cyclic):
    conds = cyc.effect_algebroid_conditions(l2_cyclic[2])
    assert conds["two_segal"] and conds["U"] and conds["Z"] and conds["member"]


def test_effect_algebroid_conditions_z2(z2_cyclic_z1):
    z2, x, _ = z2_cyclic_z1
    c0 = cyc.group_nerve_cyclic(z2, 0, x)
    conds = cyc.effect_algebroid_conditions(c0)
    assert not conds["Z"] and not conds["member"]


def test_effect_algebroid_conditions_ly():
    z4 = nv.cyclic_group(4)
    ly = nv.action_partial_group(z4, 4, nv.translation_action(z4), [0, 1, 2], 4)
    c = cyc.group_nerve_cyclic(z4, 0, ly)  # the one z that stays inside
    assert all_ok(cyc.validate_cyclic(c))
    conds = cyc.effect_algebroid_conditions(c)
    assert not conds["two_segal"] and not conds["member"]


def test_algebroid_implies_simplicial_effect():
    instances = [
        cyc.effect_nerve_cyclic(palg.interval_effect_algebra(n),
                                nerve_of(palg.interval_effect_algebra(n).magma, 4))
        for n in (2, 3)
    ] + [cyc.effect_nerve_cyclic(palg.boolean_effect_algebra(2),
                                 nerve_of(palg.boolean_effect_algebra(2).magma, 4))]
    for c in instances:
        if cyc.effect_algebroid_conditions(c)["member"]:
            assert cyc.is_simplicial_effect(c)[0]


def test_z3_tau2_orbits():
    # central element 0: every tau_2 orbit has length 3 unless fixed
    z3 = nv.cyclic_group(3)
    x = nerve_of(nv.magma_of_group(z3), 4)
    c = cyc.group_nerve_cyclic(z3, 0, x)
    t2 = c.tau[2]
    fixed = []
    for s in range(x.counts[2]):
        orbit = 1
        j = t2[s]
        while j != s:
            orbit += 1
            j = t2[j]
        assert orbit in (1, 3)
        if orbit == 1:
            fixed.append(x.labels[2][s])
    assert sorted(fixed) == [(0, 0), (1, 1), (2, 2)]


def test_cyclic_json_roundtrip(l2_cyclic):
    c = l2_cyclic[2]
    again = cyc.CyclicSSet.from_json_dict(c.to_json_dict())
    assert again.tau == c.tau
    assert sset.sset_equal(again.base, c.base)
