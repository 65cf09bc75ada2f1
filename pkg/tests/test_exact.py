"""Short exact sequences of complexes and the snake map."""

from stronghom.chain import ChainComplex, ChainMap
from stronghom.exact import certificate_passes, connecting_homomorphism, homology_les, ses_certificate
from stronghom.matrix import IntMatrix


def times_two_sequence():
    """A = Z in degree 0, B = (Z -x2-> Z) in degrees 1, 0, C = Z in degree 1."""
    A = ChainComplex({0: 1})
    B = ChainComplex({0: 1, 1: 1}, {1: IntMatrix([[2]])})
    C = ChainComplex({1: 1})
    i = ChainMap(A, B, {0: IntMatrix([[1]])})
    p = ChainMap(B, C, {1: IntMatrix([[1]])})
    return i, p


def test_certificate_on_split_sequence():
    i, p = times_two_sequence()
    cert = ses_certificate(i, p)
    assert certificate_passes(cert)


def test_certificate_detects_non_exactness():
    A = ChainComplex({0: 1})
    i = ChainMap(A, A, {0: IntMatrix([[2]])})
    p = ChainMap(A, ChainComplex({0: 1}), {0: IntMatrix([[1]])})
    cert = ses_certificate(i, p)
    assert not cert[0]["composite_zero"]
    assert not certificate_passes(cert)


def test_connecting_map_is_times_two():
    i, p = times_two_sequence()
    delta = connecting_homomorphism(i, p, 1)
    assert delta.matrix == IntMatrix([[2]])
    les = homology_les(i, p, 1, 0)
    assert les.is_exact()
    # H_0(B) = Z/2 is the only nonzero middle term
    assert les.groups[4].invariants == ((2,), 0)


def test_certificate_passes_nesting():
    assert certificate_passes({"a": [True, {"b": True}], "n": 3})
    assert not certificate_passes({"a": [True, {"b": False}]})
