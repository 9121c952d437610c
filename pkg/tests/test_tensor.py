import pytest

from enriched_kernel.errors import CapabilityMissing, InvalidStructure
from enriched_kernel import fincat as fc
from enriched_kernel.skeleton import SkeletonMap
from enriched_kernel.tensor import (
    TensorStructure,
    apply_tensor,
    check_tensor_structure,
    commutative_monoid_tensor,
    identity_tensor_functor,
    meet_tensor,
    product_tensor_structure,
    smash_tensor,
    thin_set_fragment,
)


def test_thin_set_fragment_coherent():
    T = thin_set_fragment()
    sk = SkeletonMap.identity(T.base)
    rep = check_tensor_structure(T, sk)
    assert rep.ok()
    assert T.unit is not None and T.initial is not None
    assert T.ob("0", "1") == "0"
    assert T.ob("1", "1") == "1"


def test_meet_tensor_coherent():
    T = meet_tensor()
    sk = SkeletonMap.identity(T.base)
    rep = check_tensor_structure(T, sk)
    assert rep.ok(), rep.as_dict()
    assert T.ob("2", "3") == "1"
    assert T.ob("6", "2") == "2"
    assert T.unit.obj == "6"
    assert T.initial.obj == "1"


def test_smash_tensor_coherent():
    T = smash_tensor()
    sk = SkeletonMap.identity(T.base)
    rep = check_tensor_structure(T, sk)
    assert rep.ok(), rep.as_dict()
    # non-thin: two endomaps of S
    assert len(T.base.hom("S", "S")) == 2
    # smash with the zero object absorbs
    assert T.ob("0", "S") == "0"
    assert apply_tensor(T, "c", "id_S") == "c"


def test_apply_tensor_identities_and_composites():
    T = meet_tensor()
    A = T.base
    for x in A.objects:
        for y in A.objects:
            assert (apply_tensor(T, A.id_of(x), A.id_of(y))
                    == A.id_of(T.ob(x, y)))
    # interchange: (g.f) tensor (k.h) = (g tensor k) . (f tensor h)
    for (f, g), gf in A._then.items():
        for (h, k), kh in A._then.items():
            lhs = apply_tensor(T, gf, kh)
            rhs = A.then(apply_tensor(T, f, h), apply_tensor(T, g, k))
            assert lhs == rhs


def test_elementwise_product_oracle():
    # the designated-product tensor on the thin set fragment agrees with
    # the honest cartesian product: 0 is absorbing, 1 is the unit point
    T = thin_set_fragment()
    A = T.base
    sizes = {"0": 0, "1": 1}
    for x in A.objects:
        for y in A.objects:
            assert sizes[T.ob(x, y)] == sizes[x] * sizes[y]
    # arrow action matches the unique set map
    assert apply_tensor(T, "z", "id_1") == "z"


def test_scrambled_associator_fails_pentagon():
    # commutative monoid Z2: replace the associator by the non-identity
    # element; pentagon now fails at the unique object triple
    add = lambda a, b: str((int(a) + int(b)) % 2)
    T = commutative_monoid_tensor("z2", ["0", "1"], add, "0")
    sk = SkeletonMap.identity(T.base)
    assert check_tensor_structure(T, sk).ok("pentagon")
    bad = TensorStructure(T.base, T.ten_ob, T.ten_ar,
                          associator={("*", "*", "*"): "1"},
                          symmetrizer=T.symmetrizer, name="z2-bad")
    rep = check_tensor_structure(bad, sk)
    assert not rep.ok("pentagon")
    assert rep.laws["pentagon"][1]  # counterexample emitted


def test_collapse_sk_passes_vacuously():
    add = lambda a, b: str((int(a) + int(b)) % 2)
    T = commutative_monoid_tensor("z2", ["0", "1"], add, "0")
    bad = TensorStructure(T.base, T.ten_ob, T.ten_ar,
                          associator={("*", "*", "*"): "1"},
                          symmetrizer=T.symmetrizer, name="z2-bad")
    collapse = SkeletonMap.collapse_parallel(T.base)
    rep = check_tensor_structure(bad, collapse)
    assert rep.ok("pentagon")


def test_capability_missing():
    add = lambda a, b: str((int(a) + int(b)) % 2)
    T = commutative_monoid_tensor("z2", ["0", "1"], add, "0")
    with pytest.raises(CapabilityMissing):
        T.require_unit()
    with pytest.raises(CapabilityMissing):
        T.require_initial()


def test_mistyped_tensor_rejected():
    A = fc.walking_arrow()
    ten_ob = {(x, y): "0" for x in A.objects for y in A.objects}
    ten_ar = {(f, g): "id_0" for f in A.arrow_names for g in A.arrow_names}
    # cod of a tensor with cod "1" corner should be ten_ob[...] = "0": ok,
    # but identities then break: id_1 tensor id_1 must be id of ten_ob
    with pytest.raises(InvalidStructure):
        ten_bad = dict(ten_ar)
        ten_bad[("a", "a")] = "a"
        TensorStructure(A, ten_ob, ten_bad)


def test_identity_tensor_functor_valid():
    T = meet_tensor()
    tf = identity_tensor_functor(T)
    assert tf.functor.omap["6"] == "6"


def test_product_structure_mediation():
    T = meet_tensor()
    A = T.base
    p1, p2, wit = T.proj("2", "3")
    # in div6 arrows run divisor -> multiple, so cones over (2,3) have
    # apex 1 = the meet; mediation returns the unique comparison
    m = T.mediate_pair("2", "3", "1", "1<=2", "1<=3")
    assert A.dom(m) == "1" and A.cod(m) == "1"
