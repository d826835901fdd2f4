"""JSON documents for groups, spaces, maps, towers, actions and subgroup pairs."""
from __future__ import annotations

from typing import Mapping

from ..charclass import BundleModel
from ..engine import ActionSpec, ActionStage, SubgroupPair
from ..errors import MalformedDocument
from ..exact_algebra import (
    RingMap,
    element_from_doc,
    element_to_doc,
    format_rational,
    load_ring,
    parse_rational,
    ring_to_doc,
)
from ..spaces import SpaceMap, SpaceModel
from ..towers import BorelTower, GroupData, StageData


def _need(doc, key, what):
    if not isinstance(doc, Mapping) or key not in doc:
        raise MalformedDocument(f"{what}: missing field {key!r}")
    return doc[key]


def _matrix_doc(m):
    return [[format_rational(x) for x in row] for row in m]


def _matrix(rows):
    return [[parse_rational(x) for x in row] for row in rows]


# groups ----------------------------------------------------------------------

def group_from_doc(doc) -> GroupData:
    return GroupData(
        name=_need(doc, "name", "group"),
        dimension=int(_need(doc, "dimension", "group")),
        n=int(_need(doc, "n", "group")),
        lie_algebra_basis=[_matrix(m) for m in doc.get("lie_algebra_basis", [])],
        component_reps=[_matrix(m) for m in doc.get("component_reps", [])],
        connected=bool(doc.get("connected", True)),
        bookkeeping_only=bool(doc.get("bookkeeping_only", False)),
        provenance=doc.get("provenance", "user"),
    )


def group_to_doc(g: GroupData) -> dict:
    return {
        "name": g.name,
        "dimension": g.dimension,
        "n": g.n,
        "lie_algebra_basis": [_matrix_doc(m) for m in g.lie_algebra_basis],
        "component_reps": [_matrix_doc(m) for m in g.component_reps],
        "connected": g.connected,
        "bookkeeping_only": g.bookkeeping_only,
        "provenance": g.provenance,
    }


# bundles and spaces --------------------------------------------------------------

def bundle_from_doc(base: SpaceModel, doc) -> BundleModel:
    ring = base.ring
    total = ring.one() + element_from_doc(ring, doc.get("pontryagin", {}))
    euler = element_from_doc(ring, doc["euler"]) if "euler" in doc else None
    rank = doc.get("rank", "stable")
    return BundleModel(base, total, rank if rank == "stable" else int(rank), euler,
                       bool(doc.get("oriented", True)), doc.get("name", ""))


def bundle_to_doc(b: BundleModel) -> dict:
    doc = {"rank": b.rank, "oriented": b.oriented,
           "pontryagin": element_to_doc(b.total_pontryagin - b.base.ring.one())}
    if b.euler is not None:
        doc["euler"] = element_to_doc(b.euler)
    return doc


def space_from_doc(doc) -> SpaceModel:
    ring = load_ring(_need(doc, "ring", "space"))
    kind = doc.get("kind", "manifold")
    basis = {n: int(d) for n, d in doc.get("homology_basis", {}).items()}
    module_action = None
    if "module_action" in doc:
        module_action = {}
        for key, value in doc["module_action"].items():
            if key.count("*") != 1:
                raise MalformedDocument(f"module action key must look like 'c*h': {key!r}")
            c, h = (s.strip() for s in key.split("*"))
            module_action[(c, h)] = {n: parse_rational(v) for n, v in value.items()}
    l_hom = None
    if "l_homology" in doc:
        l_hom = {n: parse_rational(c) for n, c in doc["l_homology"].items()}
    space = SpaceModel(
        name=_need(doc, "name", "space"),
        dimension=int(_need(doc, "dimension", "space")),
        ring=ring,
        evaluation={n: parse_rational(c) for n, c in doc.get("evaluation", {}).items()},
        kind=kind,
        orientable=doc.get("orientable"),
        homology_basis=basis,
        fundamental=doc.get("fundamental"),
        l_homology=l_hom,
        module_action=module_action,
        homology_names=doc.get("homology_names", {}),
        labels=doc.get("labels", {}),
        provenance=doc.get("provenance", "user"),
        check=False,
    )
    if "tangent" in doc:
        space.tangent_pontryagin = bundle_from_doc(space, doc["tangent"]).total_pontryagin
    space.validate()
    return space


def space_to_doc(s: SpaceModel) -> dict:
    doc = {
        "name": s.name,
        "dimension": s.dimension,
        "kind": s.kind,
        "orientable": bool(s.orientable),
        "provenance": s.provenance,
        "ring": ring_to_doc(s.ring),
        "evaluation": {n: format_rational(c) for n, c in s.evaluation.items()},
    }
    if s.tangent_pontryagin is not None:
        doc["tangent"] = bundle_to_doc(s.tangent)
    if s.homology_names:
        doc["homology_names"] = dict(s.homology_names)
    if s.labels:
        doc["labels"] = dict(s.labels)
    if s.kind != "manifold":
        doc["homology_basis"] = dict(s.homology_basis)
        doc["fundamental"] = s.fundamental
        if s.l_homology is not None:
            doc["l_homology"] = {n: format_rational(c) for n, c in s.l_homology.items()}
        if s.module_action is not None:
            doc["module_action"] = {f"{c}*{h}": {n: format_rational(v) for n, v in img.items()}
                                    for (c, h), img in s.module_action.items()}
    return doc


def ring_map_from_doc(doc, source, target) -> RingMap:
    """``source``/``target`` are the rings the document must name."""
    for key, ring in (("source", source), ("target", target)):
        if key in doc and doc[key] != ring.name:
            raise MalformedDocument(f"ring map {key} is {doc[key]!r}, expected {ring.name!r}")
    images = {n: element_from_doc(target, e) for n, e in _need(doc, "images", "ring map").items()}
    for n in images:
        if not source.has(n):
            raise MalformedDocument(f"ring map image given for unknown element {n!r} of {source.name}")
    return RingMap(source, target, images)


def ring_map_to_doc(f: RingMap) -> dict:
    return {"source": f.source.name, "target": f.target.name,
            "images": {n: element_to_doc(x) for n, x in f.images.items() if n != "1" and x}}


def space_map_from_doc(doc, domain: SpaceModel, codomain: SpaceModel, normal=None) -> SpaceMap:
    return SpaceMap(domain, codomain, ring_map_from_doc(doc, codomain.ring, domain.ring), normal)


# towers ----------------------------------------------------------------------------

def tower_from_doc(doc, groups: Mapping) -> BorelTower:
    gdoc = _need(doc, "group", "tower")
    group = group_from_doc(gdoc) if isinstance(gdoc, Mapping) else groups.get(gdoc)
    if group is None:
        raise MalformedDocument(f"tower {doc.get('name')!r}: unknown group {gdoc!r}")
    raw = _need(doc, "stages", "tower")
    bases = {int(k): space_from_doc(_need(st, "base", f"stage {k}")) for k, st in raw.items()}
    stages = {}
    for k, base in bases.items():
        st = raw[str(k)] if str(k) in raw else raw[k]
        normal = bundle_from_doc(base, st["normal"]) if "normal" in st else None
        restr = None
        if "restriction" in st:
            if k + 1 not in bases:
                raise MalformedDocument(f"tower {doc.get('name')!r}: restriction at stage {k} without stage {k + 1}")
            restr = space_map_from_doc(st["restriction"], base, bases[k + 1], normal)
        stages[k] = StageData(k, base, restr, normal)
    n = int(doc.get("n", group.n))
    if "d" in doc and int(doc["d"]) != group.dimension:
        raise MalformedDocument(f"tower {doc.get('name')!r}: d disagrees with the group dimension")
    return BorelTower(_need(doc, "name", "tower"), group, stages, n=n,
                      shift=int(doc["shift"]) if "shift" in doc else None,
                      kind=doc.get("kind", "standard"), provenance=doc.get("provenance", "user"))


def tower_to_doc(t: BorelTower, group_inline=False) -> dict:
    stages = {}
    for k, st in t.stages.items():
        sd = {"base": space_to_doc(st.base)}
        if st.restriction is not None:
            sd["restriction"] = ring_map_to_doc(st.restriction.pullback)
        if st.normal is not None:
            sd["normal"] = bundle_to_doc(st.normal)
        stages[str(k)] = sd
    return {"name": t.name, "group": group_to_doc(t.group) if group_inline else t.group.name,
            "n": t.n, "d": t.d, "shift": t.shift, "kind": t.kind, "provenance": t.provenance,
            "stages": stages}


# actions and pairs -----------------------------------------------------------------------

def action_from_doc(doc, towers: Mapping, spaces: Mapping) -> ActionSpec:
    name = _need(doc, "name", "action")
    tower = towers.get(_need(doc, "tower", "action"))
    if tower is None:
        raise MalformedDocument(f"action {name!r}: unknown tower {doc['tower']!r}")
    space = spaces.get(_need(doc, "space", "action"))
    if space is None:
        raise MalformedDocument(f"action {name!r}: unknown space {doc['space']!r}")
    quotient = None
    if doc.get("quotient") is not None:
        quotient = spaces.get(doc["quotient"])
        if quotient is None:
            raise MalformedDocument(f"action {name!r}: unknown quotient {doc['quotient']!r}")
    raw = doc.get("stages", {})
    models = {}
    for k, st in raw.items():
        model_doc = _need(st, "model", f"action {name!r} stage {k}")
        models[int(k)] = spaces[model_doc] if isinstance(model_doc, str) else space_from_doc(model_doc)
    stages = {}
    for k, model in models.items():
        st = raw[str(k)]
        base = tower.base(k)
        q = space_map_from_doc(_need(st, "q_pullback", f"stage {k}"), model, base)
        restr = None
        if "restriction" in st:
            if k + 1 not in models:
                raise MalformedDocument(f"action {name!r}: restriction at stage {k} without stage {k + 1}")
            restr = space_map_from_doc(st["restriction"], model, models[k + 1])
        vertical = bundle_from_doc(model, st["vertical_bundle"]) if "vertical_bundle" in st else None
        qmap = None
        if "quotient_pullback" in st:
            if quotient is None:
                raise MalformedDocument(f"action {name!r}: quotient map without quotient")
            qmap = space_map_from_doc(st["quotient_pullback"], model, quotient)
        stages[k] = ActionStage(k, model, q, restr, vertical, qmap)
    return ActionSpec(name, tower, space, _need(doc, "mode", "action"), quotient, stages,
                      doc.get("provenance", "user"))


def action_to_doc(a: ActionSpec) -> dict:
    doc = {"name": a.name, "tower": a.tower.name, "space": a.space.name, "mode": a.mode,
           "provenance": a.provenance}
    if a.quotient is not None:
        doc["quotient"] = a.quotient.name
    if a.stages:
        stages = {}
        for k, st in a.stages.items():
            sd = {"model": space_to_doc(st.model), "q_pullback": ring_map_to_doc(st.q.pullback)}
            if st.restriction is not None:
                sd["restriction"] = ring_map_to_doc(st.restriction.pullback)
            if st.vertical is not None:
                sd["vertical_bundle"] = bundle_to_doc(st.vertical)
            if st.quotient_map is not None:
                sd["quotient_pullback"] = ring_map_to_doc(st.quotient_map.pullback)
            stages[str(k)] = sd
        doc["stages"] = stages
    return doc


def pair_from_doc(doc, groups: Mapping, towers: Mapping) -> SubgroupPair:
    name = _need(doc, "name", "pair")
    group = groups.get(_need(doc, "group", "pair"))
    sub = groups.get(_need(doc, "subgroup", "pair"))
    big = towers.get(_need(doc, "big_tower", "pair"))
    if group is None or sub is None or big is None:
        raise MalformedDocument(f"pair {name!r}: unresolved group, subgroup or tower")
    tower = tower_from_doc(_need(doc, "tower", "pair"), groups)
    projections = {}
    for k, m in doc.get("projections", {}).items():
        k = int(k)
        projections[k] = space_map_from_doc(m, tower.base(k), big.base(k))
    return SubgroupPair(name, group, sub, big, tower, projections, doc.get("provenance", "user"))


def pair_to_doc(p: SubgroupPair) -> dict:
    return {"name": p.name, "group": p.group.name, "subgroup": p.subgroup.name,
            "big_tower": p.big_tower.name, "provenance": p.provenance,
            "tower": tower_to_doc(p.tower),
            "projections": {str(k): ring_map_to_doc(m.pullback) for k, m in p.projections.items()}}
