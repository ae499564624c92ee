"""Amalgams of doubled loops over a diagram, and their classification.

For a diagram with underlying graph D, the amalgam assigns to every
simplex sigma of the edge complex (a set of 1-3 edges) the loop
G_sigma = L_J doubled from the standard parabolic W_J, where J is the
common-vertex core of sigma: the full doubled dihedral loop M(W_ij, 2)
on a single edge, the Klein loop on a pointed pair/triple, and Z2 = {e, u}
when the core is empty.  Connecting maps go from bigger simplices to
smaller ones (whose loops are bigger) and are the standard parabolic
embeddings, except that the Klein-into-edge components phi_{j,e} may be
composed with the vertex twist gamma_j (s_j -> s_j*u).  The subset of
twisted (j, e) components is the whole content of an amalgam here: maps
between equal cores are identities and Z2 embeds by u -> u, both forced.

The classification: with a spanning tree fixed, twisting exactly the
components (o_j, e_j) at the non-tree edges e_j, j in delta, yields 2^n
pairwise non-isomorphic amalgams (n the cycle rank), and every cocycle
yields an amalgam in the class of its cohomology class in H^1(D).
`amalgams_isomorphic` decides isomorphism by exhaustive search over the
only free choices — the automorphisms of the edge loops stabilizing the
embedded subloops — propagating each choice to every higher simplex and
checking consistency, so a failed search certifies non-isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product as iproduct
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import gf2
from .cohomology import EdgeComplex, build_complex, vertex_coboundary, vertex_twist
from .coxeter import CoxeterDiagram, embed_parabolic, enumerate_group, subdiagram
from .errors import CheckError, ResourceLimitError
from .graphs import Edge, spanning_tree
from .groups import GroupTable
from .loops import LoopTable, chein_loop, subloop_closure
from .morphisms import automorphism_group, compose_images, is_homomorphism

Simplex = Tuple[Edge, ...]

__all__ = [
    "Amalgam",
    "standard_amalgam",
    "twisted_amalgam",
    "cocycle_to_amalgam",
    "verify_amalgam",
    "AmalgamReport",
    "loop_completion",
    "verify_completion",
    "CompletionReport",
    "amalgams_isomorphic",
    "IsoReport",
    "classify_twisted_amalgams",
    "ClassificationReport",
    "delta_cocycle",
]


@dataclass(frozen=True)
class CoreData:
    """The standard loop attached to a core J (0, 1 or 2 vertices)."""

    core: Tuple[int, ...]
    group: GroupTable
    loop: LoopTable
    gen_of: Dict[int, int]  # diagram vertex -> its reflection in the loop
    u: int  # index of the doubling involution


class Amalgam:
    def __init__(
        self,
        diagram: CoxeterDiagram,
        cx: EdgeComplex,
        core_data: Dict[Tuple[int, ...], CoreData],
        maps: Dict[Tuple[Simplex, Simplex], Tuple[int, ...]],
        kind: str,
        twists: FrozenSet[Tuple[int, Edge]],
    ):
        self.diagram = diagram
        self.complex = cx
        self._core_data = core_data
        self.maps = maps  # (tau, rho) -> images of psi: G_tau -> G_rho, rho < tau
        self.kind = kind
        self.twists = twists

    def simplices(self) -> List[Simplex]:
        return self.complex.simplices()

    def core_of(self, sigma: Simplex) -> Tuple[int, ...]:
        return self.complex.core[tuple(sigma)]

    def loop_of(self, sigma: Simplex) -> LoopTable:
        return self._core_data[self.core_of(sigma)].loop

    def core_loop(self, core: Tuple[int, ...]) -> CoreData:
        return self._core_data[tuple(core)]

    def connecting(self, tau: Simplex, rho: Simplex) -> Tuple[int, ...]:
        return self.maps[(tuple(tau), tuple(rho))]

    def connecting_images(self, tau: Simplex, rho: Simplex) -> FrozenSet[int]:
        return frozenset(self.connecting(tau, rho))

    def core_subloop(self, core: Sequence[int], sub: Sequence[int]) -> Tuple[int, ...]:
        """Canonical subloop of L_core generated by the reflections of
        `sub` (a subset of core) together with u."""
        data = self._core_data[tuple(core)]
        return subloop_closure(data.loop, [data.gen_of[v] for v in sub] + [data.u])

    def face_pairs(self) -> List[Tuple[Simplex, Simplex]]:
        return sorted(self.maps.keys())

    def __repr__(self) -> str:
        return f"Amalgam(kind={self.kind!r}, edges={len(self.complex.edges)})"


def _build_core_data(d: CoxeterDiagram, cx: EdgeComplex) -> Dict[Tuple[int, ...], CoreData]:
    for i, j in cx.graph.edges:
        if d.m(i, j) == float("inf"):
            raise ValueError(
                f"edge ({i},{j}) has an infinite label; amalgam loops need finite edges"
            )
    out: Dict[Tuple[int, ...], CoreData] = {}
    trivial = GroupTable([[0]], labels=["e"])
    out[()] = CoreData((), trivial, chein_loop(trivial), {}, 1)
    cores = [(v,) for v in cx.graph.vertices] + [tuple(e) for e in cx.graph.edges]
    for core in cores:
        w = enumerate_group(subdiagram(d, core))
        loop = chein_loop(w)
        gen_of = {v: w.generators[k] for k, v in enumerate(core)}
        out[core] = CoreData(core, w, loop, gen_of, w.order)
    return out


def _inclusion_images(
    core_data: Dict[Tuple[int, ...], CoreData],
    small: Tuple[int, ...],
    big: Tuple[int, ...],
) -> Tuple[int, ...]:
    """Images of the standard embedding L_small -> L_big (small inside big)."""
    tgt = core_data[big]
    if not small:
        return (0, tgt.u)
    src = core_data[small]
    positions = [big.index(v) for v in small]
    group_images = embed_parabolic(src.group, positions, tgt.group)
    return tuple(group_images) + tuple(tgt.u + g for g in group_images)


def _build(
    d: CoxeterDiagram, twists: FrozenSet[Tuple[int, Edge]], kind: str
) -> Amalgam:
    graph = d.underlying_graph()
    cx = build_complex(graph)
    core_data = _build_core_data(d, cx)
    klein_twist = {
        (v,): vertex_twist(core_data[(v,)].loop) for v in graph.vertices
    }
    maps: Dict[Tuple[Simplex, Simplex], Tuple[int, ...]] = {}
    for tau in cx.simplices():
        j_tau = cx.core[tau]
        for size in range(1, len(tau)):
            for rho_edges in combinations(tau, size):
                rho = tuple(rho_edges)
                j_rho = cx.core[rho]
                if j_tau == j_rho:
                    images = tuple(range(core_data[j_tau].loop.order))
                else:
                    images = _inclusion_images(core_data, j_tau, j_rho)
                    if len(j_tau) == 1 and len(rho) == 1 and (j_tau[0], rho[0]) in twists:
                        images = compose_images(images, klein_twist[j_tau])
                maps[(tau, rho)] = images
    return Amalgam(d, cx, core_data, maps, kind, twists)


def standard_amalgam(d: CoxeterDiagram) -> Amalgam:
    """The inclusion amalgam; requires finite labels on all edges."""
    return _build(d, frozenset(), "standard")


def twisted_amalgam(d: CoxeterDiagram, delta: Iterable[int]) -> Amalgam:
    """The normalized twisted amalgam for delta, a set of 1-based indices
    into the non-tree edges e_1 < ... < e_n of the BFS spanning tree:
    component (o_j, e_j) is twisted exactly for j in delta."""
    graph = d.underlying_graph()
    st = spanning_tree(graph)  # also rejects disconnected graphs
    n = len(st.nontree_edges)
    dset = frozenset(delta)
    if not all(isinstance(j, int) and 1 <= j <= n for j in dset):
        raise ValueError(f"delta must be a subset of 1..{n}, got {sorted(dset)}")
    twists = frozenset(
        (st.chosen_vertex[j - 1], st.nontree_edges[j - 1]) for j in dset
    )
    return _build(d, twists, f"twisted{sorted(dset)}")


def cocycle_to_amalgam(d: CoxeterDiagram, z: int) -> Amalgam:
    """The amalgam of a 1-cocycle z (bitmask over the pointed pairs of the
    edge complex, in lexicographic order).

    At each vertex j the cocycle condition makes z consistent on the star,
    so there are local potentials c_{j,e} with c_{j,e} + c_{j,f} = z_{ef};
    they are normalized by c = 0 on the lex-smallest edge at j, and the
    components with c_{j,e} = 1 are twisted.  Changing the normalization
    composes the maps out of L_j with gamma_j, an isomorphic amalgam.
    """
    graph = d.underlying_graph()
    if not graph.is_connected():
        raise ValueError("cocycle amalgams need a connected graph")
    cx = build_complex(graph)
    npairs = len(cx.pointed_pairs)
    if z < 0 or z >> npairs:
        raise ValueError(f"cocycle has bits outside the {npairs} pointed pairs")
    if gf2.apply_rows(cx.d1_rows, z):
        raise ValueError("not a cocycle: d1(z) != 0")
    twists = set()
    for j in graph.vertices:
        ej = graph.edges_at(j)
        if len(ej) < 2:
            continue
        base = ej[0]
        pot = {base: 0}
        for e in ej[1:]:
            pot[e] = (z >> cx.pair_pos[tuple(sorted((base, e)))]) & 1
        for e, f in combinations(ej, 2):
            bit = (z >> cx.pair_pos[tuple(sorted((e, f)))]) & 1
            if (pot[e] ^ pot[f]) != bit:
                raise CheckError("cocycle is inconsistent on a vertex star")
        for e in ej:
            if pot[e]:
                twists.add((j, e))
    return _build(d, frozenset(twists), "cocycle")


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class AmalgamReport:
    simplices: int
    maps_checked: int
    chains_checked: int
    injective_ok: bool
    homomorphism_ok: bool
    composition_ok: bool

    @property
    def ok(self) -> bool:
        return self.injective_ok and self.homomorphism_ok and self.composition_ok


def verify_amalgam(a: Amalgam) -> AmalgamReport:
    """Connecting maps are injective homomorphisms and compose correctly
    along every chain sigma < rho < tau."""
    inj = hom = comp = True
    nmaps = 0
    for (tau, rho), images in a.maps.items():
        nmaps += 1
        if len(set(images)) != len(images):
            inj = False
        if not is_homomorphism(images, a.loop_of(tau), a.loop_of(rho)):
            hom = False
    chains = 0
    for tau in a.simplices():
        if len(tau) < 3:
            continue
        for mid in range(2, len(tau)):
            for rho_edges in combinations(tau, mid):
                rho = tuple(rho_edges)
                for small in range(1, mid):
                    for sig_edges in combinations(rho, small):
                        sig = tuple(sig_edges)
                        chains += 1
                        via = compose_images(a.connecting(rho, sig), a.connecting(tau, rho))
                        if via != a.connecting(tau, sig):
                            comp = False
    return AmalgamReport(
        simplices=len(a.simplices()),
        maps_checked=nmaps,
        chains_checked=chains,
        injective_ok=inj,
        homomorphism_ok=hom,
        composition_ok=comp,
    )


@dataclass(frozen=True)
class CompletionReport:
    loop_order: int
    maps_checked: int
    injective_ok: bool
    homomorphism_ok: bool
    commuting_ok: bool

    @property
    def ok(self) -> bool:
        return self.injective_ok and self.homomorphism_ok and self.commuting_ok


def loop_completion(d: CoxeterDiagram, cap: int = 10000):
    """The loop M(W, 2) of the whole diagram together with the embeddings
    of every amalgam loop; needs the diagram to be finite type (within cap).

    Returns (loop, maps) with maps[sigma] the image tuple of G_sigma."""
    w = enumerate_group(d, cap=cap)
    loop = chein_loop(w)
    graph = d.underlying_graph()
    cx = build_complex(graph)
    core_data = _build_core_data(d, cx)
    maps: Dict[Simplex, Tuple[int, ...]] = {}
    for sigma in cx.simplices():
        core = cx.core[sigma]
        if not core:
            images: Tuple[int, ...] = (0, w.order)
        else:
            src = core_data[core]
            positions = [v - 1 for v in core]
            group_images = embed_parabolic(src.group, positions, w)
            images = tuple(group_images) + tuple(w.order + g for g in group_images)
        maps[sigma] = images
    return loop, maps


def verify_completion(
    a: Amalgam, loop: LoopTable, maps: Dict[Simplex, Tuple[int, ...]]
) -> CompletionReport:
    """phi_rho o psi_tau^rho == phi_tau for every face pair, with every
    phi an injective homomorphism into the completing loop."""
    inj = hom = comm = True
    for sigma in a.simplices():
        phi = maps[tuple(sigma)]
        if len(set(phi)) != len(phi):
            inj = False
        if not is_homomorphism(phi, a.loop_of(sigma), loop):
            hom = False
    for (tau, rho), psi in a.maps.items():
        if compose_images(maps[rho], psi) != maps[tau]:
            comm = False
    return CompletionReport(
        loop_order=loop.order,
        maps_checked=len(maps),
        injective_ok=inj,
        homomorphism_ok=hom,
        commuting_ok=comm,
    )


# ---------------------------------------------------------------------------
# isomorphism of amalgams


@dataclass(frozen=True)
class IsoReport:
    isomorphic: bool
    witness: Optional[Dict[Simplex, Tuple[int, ...]]]
    assignments: int  # assignments actually examined
    space: int  # full size of the search space
    exhausted: bool  # search covered the whole space (certifies a negative)


def _edge_candidates(a: Amalgam, e: Edge, budget: int) -> List[Tuple[int, ...]]:
    """Automorphisms of the edge loop compatible with every coface image.

    The connecting-map images out of a coface depend only on the core (the
    twists act inside the subloop), so the candidate set is the stabilizer
    of the embedded Klein subloops — and of u when some coface has empty
    core — inside Aut(L_e)."""
    sigma = (e,)
    loop = a.loop_of(sigma)
    images_to_fix: List[FrozenSet[int]] = []
    fix_u = False
    for tau in a.complex.cofaces(sigma):
        if a.core_of(tau):
            images_to_fix.append(a.connecting_images(tau, sigma))
        else:
            fix_u = True
    aut = automorphism_group(loop, budget=budget)
    out = []
    u = loop.group_order
    for f in aut.elements:
        if fix_u and f[u] != u:
            continue
        if all(frozenset(f[x] for x in s) == s for s in images_to_fix):
            out.append(f)
    return out


def amalgams_isomorphic(a: Amalgam, b: Amalgam, budget: int = 10_000_000) -> IsoReport:
    """Exhaustively search for a family theta_sigma in Aut(G_sigma) with
    theta_rho o psi_a == psi_b o theta_tau on every face pair.

    theta on the edge simplices determines theta everywhere else (the
    connecting maps are injective with equal images on both sides), so the
    search space is the product of the per-edge stabilizer sets; failure
    after covering the whole space certifies non-isomorphism.
    """
    if a.complex.graph != b.complex.graph:
        raise ValueError("amalgams live over different graphs")
    for sigma in a.simplices():
        if a.loop_of(sigma).product != b.loop_of(sigma).product:
            raise ValueError("amalgams do not share their standard loops")
    for key in a.maps:
        if frozenset(a.maps[key]) != frozenset(b.maps[key]):
            raise ValueError("amalgams are not of a common type (images differ)")

    edges = list(a.complex.edges)
    cand = {e: _edge_candidates(a, e, budget) for e in edges}
    space = 1
    for e in edges:
        space *= len(cand[e])

    # preinvert the b-maps out of every >=2 simplex once
    binv: Dict[Tuple[Simplex, Simplex], Dict[int, int]] = {}
    for (tau, rho), images in b.maps.items():
        if len(rho) == 1 and b.core_of(tau):
            binv[(tau, rho)] = {y: x for x, y in enumerate(images)}

    assignments = 0
    for choice in iproduct(*(cand[e] for e in edges)):
        assignments += 1
        if assignments > budget:
            raise ResourceLimitError(
                f"amalgam isomorphism search exceeded budget={budget}"
            )
        theta = {(e,): f for e, f in zip(edges, choice)}
        ok = True
        for tau in a.simplices():
            if len(tau) < 2:
                continue
            if not a.core_of(tau):
                theta[tau] = (0, 1)  # Aut(Z2) is trivial
                continue
            derived: Optional[Tuple[int, ...]] = None
            for e in tau:
                rho = (e,)
                lookup = binv[(tau, rho)]
                te = theta[rho]
                pa = a.maps[(tau, rho)]
                cur = tuple(lookup[te[pa[x]]] for x in range(len(pa)))
                if derived is None:
                    derived = cur
                elif derived != cur:
                    ok = False
                    break
            if not ok:
                break
            theta[tau] = derived
        if ok:
            _assert_witness(a, b, theta)
            return IsoReport(True, theta, assignments, space, assignments >= space)
    return IsoReport(False, None, assignments, space, True)


def _assert_witness(a: Amalgam, b: Amalgam, theta: Dict[Simplex, Tuple[int, ...]]) -> None:
    from .morphisms import is_automorphism

    for sigma in a.simplices():
        if not is_automorphism(a.loop_of(sigma), theta[tuple(sigma)]):
            raise CheckError("isomorphism witness is not an automorphism family")
    for (tau, rho) in a.maps:
        lhs = compose_images(theta[rho], a.maps[(tau, rho)])
        rhs = compose_images(b.maps[(tau, rho)], theta[tau])
        if lhs != rhs:
            raise CheckError("isomorphism witness fails to commute")


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassificationReport:
    cycle_rank: int
    nontree_edges: Tuple[Edge, ...]
    chosen_vertices: Tuple[int, ...]
    class_count: int
    classes: Tuple[Tuple[FrozenSet[int], ...], ...]  # deltas grouped by class
    pairs_checked: int

    @property
    def ok(self) -> bool:
        return self.class_count == 2 ** self.cycle_rank


def classify_twisted_amalgams(d: CoxeterDiagram, budget: int = 10_000_000) -> ClassificationReport:
    """Build all 2^n twisted amalgams and partition them by exhaustive
    pairwise isomorphism; the expected outcome is 2^n singleton classes."""
    graph = d.underlying_graph()
    st = spanning_tree(graph)
    n = len(st.nontree_edges)
    deltas = []
    for k in range(0, n + 1):
        for combo in combinations(range(1, n + 1), k):
            deltas.append(frozenset(combo))
    amalgams = {delta: twisted_amalgam(d, delta) for delta in deltas}
    classes: List[List[FrozenSet[int]]] = []
    pairs = 0
    for delta in deltas:
        placed = False
        for cls in classes:
            pairs += 1
            if amalgams_isomorphic(amalgams[cls[0]], amalgams[delta], budget=budget).isomorphic:
                cls.append(delta)
                placed = True
                break
        if not placed:
            classes.append([delta])
    return ClassificationReport(
        cycle_rank=n,
        nontree_edges=st.nontree_edges,
        chosen_vertices=st.chosen_vertex,
        class_count=len(classes),
        classes=tuple(tuple(cls) for cls in classes),
        pairs_checked=pairs,
    )


def delta_cocycle(d: CoxeterDiagram, delta: Iterable[int]) -> int:
    """The cocycle sum of d0_{o_j}(a_{e_j}) over j in delta, in the pointed
    pair coordinates of the edge complex — the class twisted_amalgam(delta)
    realizes."""
    graph = d.underlying_graph()
    st = spanning_tree(graph)
    cx = build_complex(graph)
    z = 0
    for j in delta:
        e = st.nontree_edges[j - 1]
        o = st.chosen_vertex[j - 1]
        z ^= vertex_coboundary(cx, o, e)
    return z
