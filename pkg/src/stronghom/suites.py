"""Seeded verification suites.

Each suite is a function ``case(seed, index) -> dict`` that builds one valid
instance from ``rng_for(seed, <suite key>, index)`` and returns its checks.
A case is a pure function of ``(seed, index)``, so cases can run in any order
or in separate processes and the assembled report is still byte-identical.
Map-tower suites share one corpus: instance ``i`` is the same tower in every
suite for a given seed.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

from .algebra import FgAbGroup, Homomorphism
from .chain import ChainMap, MappingCone, cone_functor_homotopy, cone_functor_map, degrees_of
from .errors import StrongHomError
from .exact import certificate_passes
from .generators import (levelwise_identity, random_coherent_pair, random_map_tower, random_simplicial_map,
                         random_tower_homotopy, random_tower_morphism, random_unimodular, rng_for,
                         trivial_codomain, trivial_domain)
from .limits import GroupTower, inverse_limit, level_homology_tower, lim1_verdict, milnor_naturality, \
    milnor_report
from .matrix import IntMatrix
from .simplicial import axiom1_crosscheck, circle, crosscheck_passes, solenoid_tower, wrap_map
from .tower import (MapTower, chain_map_failures, long_exact_sequence, pair_shift_difference,
                    shift_difference, sigma_partial_ses, tower_cone)


@lru_cache(maxsize=512)
def corpus_tower(seed: int, index: int) -> MapTower:
    """Instance ``index`` of the shared map-tower corpus (N <= 5, ranks <= 5, degrees 0..3).

    Memoised so that suites run in one process share the towers and their caches.
    """
    return random_map_tower(rng_for(seed, "map_tower", index))


def _strong_degrees(F: MapTower) -> range:
    d = degrees_of(*F.domain.levels, *F.codomain.levels)
    return range(d[0] - 1, d[-1] + 2) if d else range(0)


def _shape(F: MapTower) -> dict:
    return {"length": F.length,
            "domain_ranks": [sum(C.ranks().values()) for C in F.domain.levels],
            "codomain_ranks": [sum(C.ranks().values()) for C in F.codomain.levels]}


def case_shift_difference(seed: int, index: int) -> dict:
    F = corpus_tower(seed, index)
    checks = {
        "domain": not chain_map_failures(shift_difference(F.domain, check=False)),
        "codomain": not chain_map_failures(shift_difference(F.codomain, check=False)),
        "pair": not chain_map_failures(pair_shift_difference(F, check=False)),
    }
    return {"shape": _shape(F), "checks": checks}


def case_ses(seed: int, index: int) -> dict:
    F = corpus_tower(seed, index)
    cert = sigma_partial_ses(F).certificate
    summary = {key: all(c[key] for c in cert.values())
               for key in ("mono", "epi", "composite_zero", "kernel_equals_image")}
    return {"shape": _shape(F), "degrees": sorted(cert), "checks": summary}


def case_les(seed: int, index: int) -> dict:
    F = corpus_tower(seed, index)
    les = long_exact_sequence(F)
    return {
        "shape": _shape(F),
        "terms": len(les.groups),
        "nonzero_terms": [lab for lab, G in zip(les.labels, les.groups) if not G.is_trivial()],
        "checks": {"composites_zero": all(les.composites_zero()), "exact": les.is_exact()},
    }


def degenerate_checks(F: MapTower) -> dict:
    """The sequences forced by a trivial domain, a trivial codomain and a levelwise identity."""
    out = {}
    for name, G, trivial_term, iso_map in (
            ("trivial_domain", trivial_domain(F), 2, "sigma"),
            ("trivial_codomain", trivial_codomain(F), 0, "partial"),
            ("levelwise_identity", levelwise_identity(F.domain), 1, "E")):
        les = long_exact_sequence(G)
        terms = les.groups[trivial_term::3]
        isos = [h for h, lab in zip(les.maps, les.map_labels) if lab.startswith(iso_map + "_")]
        out[name] = {
            "exact": les.is_exact(),
            "forced_zero_terms": all(T.is_trivial() for T in terms),
            "forced_isomorphisms": all(h.is_isomorphism() for h in isos),
        }
    return out


def case_les_degenerate(seed: int, index: int) -> dict:
    F = corpus_tower(seed, index)
    return {"shape": _shape(F), "checks": degenerate_checks(F)}


def case_coherent(seed: int, index: int) -> dict:
    pair = random_coherent_pair(rng_for(seed, "coherent", index))
    Phi, Psi = pair.Phi, pair.Psi
    a, b = cone_functor_map(Phi), cone_functor_map(Psi)
    H = cone_functor_homotopy(pair.D)
    C = a.source
    L = Phi.f.source
    return {
        "strict": Phi.is_strict(),
        "checks": {
            "phi_cone_map_is_chain_map": not a.commutation_failures(),
            "psi_cone_map_is_chain_map": not b.commutation_failures(),
            "cone_homotopy_identity": not H.identity_failures(),
            "equal_on_homology": all(a.induced_on_homology(n) == b.induced_on_homology(n)
                                     for n in range(C.lo, C.hi + 1)),
            "cone_of_identity_acyclic": MappingCone(ChainMap.identity(L)).is_acyclic(),
        },
    }


def case_milnor(seed: int, index: int) -> dict:
    F = corpus_tower(seed, index)
    degrees, checks, groups = list(_strong_degrees(F)), {}, {}
    for n in degrees:
        rep = milnor_report(F, n)
        oracle = MappingCone(F.maps[-1]).homology(n)
        checks[str(n)] = {"sequence": rep.passes(), "strong_equals_last_cone": rep.strong_group.isomorphic(oracle)}
        groups[str(n)] = str(rep.strong_group)
    return {"shape": _shape(F), "strong_homology": groups, "checks": checks}


def case_naturality(seed: int, index: int) -> dict:
    M = random_tower_morphism(rng_for(seed, "morphism", index))
    degrees = _strong_degrees(M.source)
    checks = {str(n): milnor_naturality(M, n) for n in degrees}
    checks["ladder"] = certificate_passes(M.ladder_certificate())
    return {"checks": checks}


def case_tower_homotopy(seed: int, index: int) -> dict:
    Hm = random_tower_homotopy(rng_for(seed, "tower_homotopy", index))
    M1, M2 = Hm.M1, Hm.M2
    H = Hm.chain_homotopy()
    return {"checks": {
        "chain_homotopy_identity": not H.identity_failures(),
        "equal_on_strong_homology": all(M1.induced(n) == M2.induced(n) for n in _strong_degrees(M1.source)),
    }}


def _random_group(rng) -> FgAbGroup:
    torsion = [rng.choice((2, 3, 4, 6, 9)) for _ in range(rng.randint(0, 2))]
    return FgAbGroup.from_invariants(sorted(torsion), rng.randint(0, 2))


def case_lim1(seed: int, index: int) -> dict:
    """One of four tower families whose lim and lim^1 are known in closed form."""
    rng = rng_for(seed, "lim1", index)
    family = ("scalar", "diagonal", "finite", "identity")[index % 4]
    Z = FgAbGroup.from_invariants((), 1)
    if family == "scalar":
        a = rng.randint(-6, 6)
        T = GroupTower.scalar(Z, a)
        lim1_zero, lim = abs(a) <= 1, (Z if abs(a) == 1 else FgAbGroup.trivial())
        info = {"multiplier": a}
    elif family == "diagonal":
        k = rng.randint(1, 3)
        diag = [rng.choice((-1, 1, 0, 2, -3, 4)) for _ in range(k)]
        P, Pi = random_unimodular(rng, k)
        A = FgAbGroup.from_invariants((), k)
        T = GroupTower(tail=(A, Homomorphism(A, A, P @ IntMatrix.diagonal(diag) @ Pi)))
        lim1_zero = all(abs(d) <= 1 for d in diag)
        lim = FgAbGroup.from_invariants((), sum(1 for d in diag if abs(d) == 1))
        info = {"diagonal": diag}
    elif family == "finite":
        G = _random_group(rng)
        while G.free_rank:
            G = _random_group(rng)
        o = G.orders
        # entry (i, j) must be a multiple of o_i / gcd(o_i, o_j) to respect the orders
        M = IntMatrix([[rng.randint(-3, 3) * (o[i] // math.gcd(o[i], o[j])) for j in range(G.ngens)]
                       for i in range(G.ngens)], (G.ngens, G.ngens))
        T = GroupTower(tail=(G, Homomorphism(G, G, M)))
        lim1_zero, lim = True, None
        info = {"group": str(G)}
    else:
        G = _random_group(rng)
        T = GroupTower.constant(G)
        lim1_zero, lim = True, G
        info = {"group": str(G)}
    verdict = lim1_verdict(T)
    got = inverse_limit(T)
    checks = {"lim1_verdict": verdict.zero == lim1_zero}
    if lim is not None:
        checks["lim"] = got.isomorphic(lim)
    return {"family": family, "info": info, "lim1": verdict.verdict, "lim": str(got), "checks": checks}


def geometric_checks() -> dict:
    """Solenoid bonds, the finite-truncation identity on circles, and the degree-2 circle map."""
    Z = FgAbGroup.from_invariants((), 1)
    out = {}
    for N in (2, 3, 4):
        T = solenoid_tower(2, N)
        H1 = level_homology_tower(T, 1)
        cone = tower_cone(T)
        last = T.levels[-1]
        out[f"solenoid_{N}"] = {
            "groups_are_Z": all(G.isomorphic(Z) for G in H1.groups),
            "bonds_are_times_2": all(b.matrix == IntMatrix([[2]], (1, 1)) for b in H1.bonds),
            "cone_degree_1_is_last_H0": cone.homology(1).isomorphic(last.homology(0)),
            "cone_degree_2_is_last_H1": cone.homology(2).isomorphic(last.homology(1)),
        }
    f = wrap_map(6, 3)
    cert = axiom1_crosscheck(f, 1)
    Z2 = FgAbGroup.from_invariants((2,), 0)
    out["degree_2_circle_map"] = {
        "algebraic_cone_is_Z2": MappingCone(f.chain_map()).homology(1).isomorphic(Z2),
        "cone_space_is_Z2": cert["cone_space_reduced"] == Z2.to_dict(),
        "crosscheck": crosscheck_passes(cert),
    }
    circ = circle(3)
    out["circle_reference"] = {"H1_is_Z": circ.chains().homology(1).isomorphic(Z)}
    return out


def case_cone_space(seed: int, index: int) -> dict:
    f = random_simplicial_map(rng_for(seed, "simplicial_map", index))
    C = MappingCone(f.chain_map())
    checks, groups = {}, {}
    for n in range(C.lo, C.hi + 1):
        cert = axiom1_crosscheck(f, n)
        checks[str(n)] = crosscheck_passes(cert)
        groups[str(n)] = cert["algebraic_cone"]["display"]
    return {"source_vertices": len(f.source.vertices), "target_vertices": len(f.target.vertices),
            "cone_homology": groups, "checks": checks}


def case_geometric(seed: int, index: int) -> dict:
    # deterministic; one case regardless of seed
    return {"checks": geometric_checks()}


SUITES = {
    "shift-difference": case_shift_difference,
    "ses": case_ses,
    "les": case_les,
    "les-degenerate": case_les_degenerate,
    "coherent": case_coherent,
    "milnor": case_milnor,
    "naturality": case_naturality,
    "tower-homotopy": case_tower_homotopy,
    "lim1": case_lim1,
    "cone-space": case_cone_space,
    "geometric": case_geometric,
}


def run_case(suite: str, seed: int, index: int) -> dict:
    """One case; a library error inside a case is recorded as a failure, not raised."""
    try:
        rec = SUITES[suite](seed, index)
    except StrongHomError as exc:
        rec = {"checks": {"completed": False}, "error": f"{type(exc).__name__}: {exc}"}
    rec["index"] = index
    rec["passed"] = certificate_passes(rec["checks"])
    return rec


def _run_packed(args):
    return run_case(*args)


def run_suite(suite: str, seed: int, count: int, jobs: int = 1) -> dict:
    """All cases of one suite, in index order whatever ``jobs`` is."""
    if suite not in SUITES:
        raise KeyError(suite)
    if suite == "geometric":
        count = 1
    args = [(suite, seed, i) for i in range(count)]
    if jobs > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cases = list(pool.map(_run_packed, args, chunksize=max(1, count // (4 * jobs))))
    else:
        cases = [_run_packed(a) for a in args]
    failed = [c["index"] for c in cases if not c["passed"]]
    return {"suite": suite, "seed": seed, "count": count, "cases": cases,
            "passed": count - len(failed), "failed": failed}

