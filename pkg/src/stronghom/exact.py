"""Short exact sequences of complexes and their long exact homology sequences."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import FgAbGroup, Homomorphism, exact_at, kernel_basis, lattice_contains, \
    lattices_equal, solve_matrix
from .chain import ChainMap, degrees_of
from .errors import CertificateFailure
from .matrix import IntMatrix


def ses_certificate(i: ChainMap, p: ChainMap, degrees=None) -> dict[int, dict[str, bool]]:
    """Degreewise checks that ``0 -> A -i-> B -p-> C -> 0`` is exact.

    For each degree: ``i`` injective, ``p`` surjective, ``p i = 0`` and
    ``ker p = im i`` (as lattices).
    """
    if i.target != p.source:
        raise ValueError("i and p are not composable")
    if degrees is None:
        degrees = degrees_of(i.source, i.target, p.target)
    cert = {}
    for n in degrees:
        a, b = i.component(n), p.component(n)
        cert[n] = {
            "mono": kernel_basis(a).ncols == 0,
            "epi": lattice_contains(b, IntMatrix.identity(b.nrows)),
            "composite_zero": (b @ a).is_zero(),
            "kernel_equals_image": lattices_equal(kernel_basis(b), a),
        }
    return cert


def certificate_passes(cert) -> bool:
    if isinstance(cert, dict):
        return all(certificate_passes(v) for v in cert.values())
    if isinstance(cert, (list, tuple)):
        return all(certificate_passes(v) for v in cert)
    if isinstance(cert, bool):
        return cert
    return True


def connecting_homomorphism(i: ChainMap, p: ChainMap, n: int) -> Homomorphism:
    """Snake map ``H_n(C) -> H_{n-1}(A)``: lift through ``p``, apply ``d``, pull back through ``i``."""
    A, B, C = i.source, i.target, p.target
    HC, HA = C.homology(n), A.homology(n - 1)
    Z = HC.generators()
    lift = solve_matrix(p.component(n), Z)
    if lift is None:
        raise CertificateFailure(f"p is not surjective in degree {n}")
    back = solve_matrix(i.component(n - 1), B.differential(n) @ lift)
    if back is None:
        raise CertificateFailure(f"boundary of a lift does not come from A in degree {n - 1}")
    return Homomorphism(HC, HA, HA.coordinates_matrix(back))


@dataclass
class LongExactSequence:
    """``groups[k] -maps[k]-> groups[k+1]``; labels describe each term."""

    groups: list[FgAbGroup]
    maps: list[Homomorphism]
    labels: list[str] = field(default_factory=list)
    map_labels: list[str] = field(default_factory=list)

    def composites_zero(self) -> list[bool]:
        return [(g @ f).is_zero() for f, g in zip(self.maps, self.maps[1:])]

    def exactness(self) -> list[bool]:
        """Exactness at every interior term (``groups[1:-1]``)."""
        return [exact_at(f, g) for f, g in zip(self.maps, self.maps[1:])]

    def is_exact(self) -> bool:
        return all(self.exactness())

    def certificate(self) -> list[dict]:
        out = []
        for k, (f, g) in enumerate(zip(self.maps, self.maps[1:])):
            out.append({"position": self.labels[k + 1] if self.labels else k + 1,
                        "composite_zero": (g @ f).is_zero(),
                        "exact": exact_at(f, g)})
        return out

    def to_dict(self) -> dict:
        return {
            "terms": [{"label": lab, "group": G.to_dict()} for lab, G in zip(self.labels, self.groups)],
            "maps": [{"label": lab, "matrix": [[str(x) for x in r] for r in h.matrix.rows]}
                     for lab, h in zip(self.map_labels, self.maps)],
            "exactness": self.certificate(),
        }


def homology_les(i: ChainMap, p: ChainMap, top: int, bottom: int,
                 names=("A", "B", "C")) -> LongExactSequence:
    """``H_top(A) -> H_top(B) -> H_top(C) -> H_{top-1}(A) -> ... -> H_bottom(C)``."""
    groups, maps, labels, mlabels = [], [], [], []
    a, b, c = names
    for n in range(top, bottom - 1, -1):
        groups += [i.source.homology(n), i.target.homology(n), p.target.homology(n)]
        labels += [f"H_{n}({a})", f"H_{n}({b})", f"H_{n}({c})"]
        maps += [i.induced_on_homology(n), p.induced_on_homology(n)]
        mlabels += [f"i_{n}", f"p_{n}"]
        if n > bottom:
            maps.append(connecting_homomorphism(i, p, n))
            mlabels.append(f"delta_{n}")
    return LongExactSequence(groups, maps, labels, mlabels)
