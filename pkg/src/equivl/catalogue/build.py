"""Generate the shipped catalogue.

Run ``python -m equivl.catalogue.build [outdir]`` to rewrite the JSON files;
the test suite checks that the shipped files equal a fresh build.
"""
from __future__ import annotations

import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from ..charclass import BundleModel, inverse_l_class
from ..exact_algebra import RingMap, RingPresentation, truncated_polynomial_ring
from ..spaces import SpaceMap, SpaceModel, SphereBundle
from ..towers import GroupData, StageData
from .documents import (
    bundle_to_doc,
    group_to_doc,
    ring_map_to_doc,
    space_to_doc,
)

DEPTH = 8
DATA = Path(__file__).resolve().parent / "data"


# --------------------------------------------------------------------------
# groups

def _rot():
    return [[0, -1], [1, 0]]


def _quaternion_units():
    # left multiplication by i, j, k on H = R^4 with basis 1, i, j, k
    i = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    j = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]
    k = [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    return [i, j, k]


def _so3_in_o4():
    def e(a, b):
        m = [[0] * 4 for _ in range(4)]
        m[a][b], m[b][a] = -1, 1
        return m
    return [e(0, 1), e(0, 2), e(1, 2)]


def groups() -> list:
    I2 = [[1, 0], [0, 1]]
    return [
        GroupData("trivial", 0, 0, provenance="paper-table"),
        GroupData("trivial_O2", 0, 2, [], [I2], provenance="derived"),
        GroupData("S1", 1, 2, [_rot()], [I2], provenance="paper-table"),
        GroupData("O2", 1, 2, [_rot()], [I2, [[0, 1], [1, 0]]], connected=False, provenance="paper-table"),
        GroupData("Z2", 0, 1, [], [[[1]], [[-1]]], connected=False, bookkeeping_only=True, provenance="paper-table"),
        GroupData("Z4", 0, 2, [], [I2, [[0, -1], [1, 0]], [[-1, 0], [0, -1]], [[0, 1], [-1, 0]]],
                  connected=False, provenance="derived"),
        GroupData("T2", 2, 4, [
            [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
            [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
        ], provenance="derived"),
        GroupData("SU2", 3, 4, _quaternion_units(), provenance="derived"),
        GroupData("SO3", 3, 4, _so3_in_o4(), provenance="derived"),
    ]


# --------------------------------------------------------------------------
# BS^1_k: the oriented Grassmannian of 2-planes in R^{k+2}, a complex quadric

def _mono(i: int, e: int) -> str:
    t = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
    u = "u" if e else ""
    return " ".join(p for p in (t, u) if p) or "1"


def grassmannian_ring(k: int) -> RingPresentation:
    """H^*(BS^1_k; Q).  With m = floor(k/2):
    k = 2m+1: t^{m+1} = 2u, basis t^i, t^i u (0 <= i <= m);
    k = 2m:   t^{m+1} = 2 t u, u^2 = t^m u (m even) or 0 (m odd).
    t^m u is the point class.  Stage 1 keeps only t (= 2u)."""
    name = f"H(BS1_{k})"
    if k == 1:
        return RingPresentation(name, 2, [("t", 2)], {0: ["1"], 2: ["t"]}, {})
    m = k // 2
    odd = k % 2
    udeg = 2 * m + 2 if odd else 2 * m

    def reduce(i, e):
        """t^i u^e as {(i, e): coeff} in the basis."""
        if e >= 2:
            if odd or m % 2:
                return {}
            return reduce(i + m, e - 1)
        if e == 1:
            return {(i, 1): Fraction(1)} if i <= m else {}
        if i <= m:
            return {(i, 0): Fraction(1)}
        shift = m + 1 if odd else m
        return {key: 2 * c for key, c in reduce(i - shift, 1).items()}

    monos = [(i, 0) for i in range(m + 1)] + [(i, 1) for i in range(m + 1)]
    deg = {mo: 2 * mo[0] + udeg * mo[1] for mo in monos}
    basis = {}
    for mo in monos:
        basis.setdefault(deg[mo], []).append(_mono(*mo))
    products = {}
    for a in monos:
        for b in monos:
            if a == (0, 0) or b == (0, 0) or deg[a] + deg[b] > 2 * k:
                continue
            value = reduce(a[0] + b[0], a[1] + b[1])
            products[(_mono(*a), _mono(*b))] = {_mono(*key): c for key, c in value.items()}
    return RingPresentation(name, 2 * k, [("t", 2), ("u", udeg)], basis, products)


def _tau_name(i, k, with_u):
    parts = []
    if i:
        parts.append(f"tau_{k}" if i == 1 else f"tau_{k}^{i}")
    if with_u:
        parts.append(f"mu_{k}")
    return " ".join(parts)


def bs1_model(k: int) -> SpaceModel:
    ring = grassmannian_ring(k)
    names, labels = {"1": f"[BS1_{k}]"}, {"1": "[pt]_S1"}
    for n in ring.names:
        if n == "1":
            continue
        i = 0 if not n.startswith("t") else (1 if n.split(" ")[0] == "t" else int(n.split(" ")[0][2:]))
        names[n] = _tau_name(i, k, n.endswith("u"))
        if not n.endswith("u"):
            labels[n] = "tau" if i == 1 else f"tau^{i}"
    top = ring.names_in_degree(2 * k)
    evaluation = {"t": 2} if k == 1 else {top[0]: 1}
    model = SpaceModel(f"BS1_{k}", 2 * k, ring, evaluation, homology_names=names, labels=labels,
                       provenance="derived", check=False)
    t2 = ring.gen("t") * ring.gen("t") if ring.top_degree >= 4 else ring.zero()
    gamma = ring.one() + t2
    tangent = gamma ** (k + 2) * inverse_l_class(ring.one() + 4 * t2)
    model.tangent_pontryagin = tangent
    model.validate()
    return model


def bs1_restriction(small: SpaceModel, big: SpaceModel, k: int) -> SpaceMap:
    """beta_k^*: t -> t; u_{k+1} -> u_k, t u_k or t/2 (k = 1)."""
    src, tgt = big.ring, small.ring
    t = tgt.gen("t")
    if k == 1:
        u_image = t * Fraction(1, 2)
    elif k % 2 == 0:
        u_image = t * tgt.gen("u")
    else:
        u_image = tgt.gen("u")
    images = {}
    for n in src.names:
        parts = n.split(" ")
        img = tgt.one()
        for p in parts:
            if p == "1":
                continue
            if p == "u":
                img = img * u_image
            else:
                img = img * (t ** (1 if p == "t" else int(p[2:])))
        images[n] = img
    return SpaceMap(small, big, RingMap(src, tgt, images))


def s1_stages():
    models = {k: bs1_model(k) for k in range(1, DEPTH + 1)}
    stages = {}
    for k, base in models.items():
        ring = base.ring
        normal = BundleModel(base, ring.one() + (ring.gen("t") ** 2 if k > 1 else ring.zero()), 2, ring.gen("t"))
        restr = bs1_restriction(base, models[k + 1], k) if k < DEPTH else None
        stages[k] = StageData(k, base, restr, normal if restr is not None else None)
    return stages


# --------------------------------------------------------------------------
# other towers and spaces

def rp_model(k: int) -> SpaceModel:
    basis = {0: ["1"]}
    gens = []
    if k % 2:
        basis[k] = ["w"]
        gens = [("w", k)]
    ring = RingPresentation(f"H(RP{k})", k, gens, basis, {})
    return SpaceModel(f"RP{k}", k, ring, {"w": 1} if k % 2 else {}, provenance="derived")


def point_model(name="pt") -> SpaceModel:
    ring = RingPresentation("H(pt)", 0, [], {0: ["1"]}, {})
    return SpaceModel(name, 0, ring, {"1": 1}, tangent_pontryagin=ring.one(),
                      homology_names={"1": "[pt]"}, labels={"1": "[pt]"}, provenance="derived")


def sphere_model(dim: int) -> SpaceModel:
    gen = "s" if dim % 2 == 0 else "x"
    ring = RingPresentation(f"H(S{dim})", dim, [(gen, dim)], {0: ["1"], dim: [gen]}, {})
    return SpaceModel(f"S{dim}", dim, ring, {gen: 1}, tangent_pontryagin=ring.one(),
                      homology_names={"1": f"[S{dim}]", gen: "[pt]"},
                      labels={"1": f"[S{dim}]", gen: "[pt]"}, provenance="derived")


def cp2_model() -> SpaceModel:
    ring = truncated_polynomial_ring("H(CP2)", "t", 2, 2)
    return SpaceModel("CP2", 4, ring, {"t^2": 1}, tangent_pontryagin=ring.one() + 3 * ring.gen("t^2"),
                      homology_names={"1": "[CP2]", "t": "[CP1]", "t^2": "[pt]"},
                      labels={"1": "[CP2]", "t": "[CP1]", "t^2": "[pt]"}, provenance="derived")


def spaces() -> list:
    return [point_model(), sphere_model(2), sphere_model(3), cp2_model()]


def _tower_doc(name, group, n, stages, kind="standard", provenance="derived", notes=None):
    doc = {"name": name, "group": group.name, "n": n, "d": group.dimension,
           "shift": n * (n - 1) // 2 - group.dimension, "kind": kind, "provenance": provenance}
    if notes:
        doc["notes"] = notes
    doc["stages"] = {}
    for k, st in stages.items():
        sd = {"base": space_to_doc(st.base)}
        if st.restriction is not None:
            sd["restriction"] = ring_map_to_doc(st.restriction.pullback)
        if st.normal is not None:
            sd["normal"] = bundle_to_doc(st.normal)
        doc["stages"][str(k)] = sd
    return doc


def _identity_map(a: SpaceModel, b: SpaceModel) -> SpaceMap:
    return SpaceMap(a, b, RingMap(b.ring, a.ring, {n: a.ring.gen(n) for n in b.ring.names}))


def towers(group_index) -> list:
    s1 = _tower_doc("S1", group_index["S1"], 2, s1_stages(), provenance="paper-table",
                    notes="stage generators and ranks as in the circle-group tables; "
                          "ring relations between t and u are derived from the quadric model")
    pts = {k: point_model() for k in range(1, DEPTH + 1)}
    triv_stages = {k: StageData(k, p, _identity_map(p, pts[k + 1]) if k < DEPTH else None)
                   for k, p in pts.items()}
    triv = _tower_doc("trivial", group_index["trivial"], 0, triv_stages)
    rp = {k: StageData(k, rp_model(k)) for k in range(1, DEPTH + 1)}
    z2 = _tower_doc("Z2", group_index["Z2"], 1, rp,
                    notes="bookkeeping only: odd embedding dimension, no restriction maps")
    return [s1, triv, z2]


# --------------------------------------------------------------------------
# free circle action on S^3 and the circle bundles EG_k -> BG_k

def _free_stage_bundles(stages):
    out = {}
    for k, st in stages.items():
        base = st.base
        t = base.ring.gen("t")
        e = t * t
        gamma2 = (base.ring.one() + e) ** 2
        names = {"1": f"[S3_S1({k})]"}
        out[k] = SphereBundle(base, e, 3, gamma2, name=f"S3_S1({k})", homology_names=names,
                              labels={"1": "[S3]_S1"})
    return out


def free_s3_action(stages, s2: SpaceModel) -> dict:
    bundles = _free_stage_bundles(stages)
    doc = {"name": "S3_free_S1", "tower": "S1", "space": "S3", "mode": "free", "quotient": "S2",
           "provenance": "derived",
           "notes": "X_G(k) = S(gamma + gamma) over BS1_k; the map to S2 pulls the generator back to t",
           "stages": {}}
    for k, sb in bundles.items():
        model = sb.model
        vertical = BundleModel(model, sb.projection_ring_map((stages[k].base.ring.one()
                                                               + stages[k].base.ring.gen("t") ** 2) ** 2), 3)
        qmap = RingMap(s2.ring, model.ring, {"s": sb.reduce(stages[k].base.ring.gen("t"))})
        sd = {"model": space_to_doc(model), "q_pullback": ring_map_to_doc(sb.projection_ring_map),
              "quotient_pullback": ring_map_to_doc(qmap), "vertical_bundle": bundle_to_doc(vertical)}
        if k + 1 in bundles:
            sd["restriction"] = ring_map_to_doc(sb.induced(bundles[k + 1], stages[k].restriction).pullback)
        doc["stages"][str(k)] = sd
    return doc


def circle_pair(stages, group_index) -> dict:
    bundles = {}
    for k, st in stages.items():
        bundles[k] = SphereBundle(st.base, st.base.ring.gen("t"), 1, name=f"ES1_{k}",
                                  homology_names={"1": f"[ES1_{k}]"}, labels={"1": "[pt]"})
    tstages = {}
    for k, sb in bundles.items():
        restr = sb.induced(bundles[k + 1], stages[k].restriction) if k + 1 in bundles else None
        tstages[k] = StageData(k, sb.model, restr)
    tower = _tower_doc("S1/trivial", group_index["trivial_O2"], 2, tstages,
                       notes="EG_k as the circle bundle of the tautological plane bundle over BS1_k")
    return {"name": "S1>trivial", "group": "S1", "subgroup": "trivial_O2", "big_tower": "S1",
            "provenance": "derived", "tower": tower,
            "projections": {str(k): ring_map_to_doc(sb.projection_ring_map) for k, sb in bundles.items()}}


def actions() -> list:
    simple = [
        ("pt_S1", "S1", "pt", "point"),
        ("pt_trivial", "trivial", "pt", "point"),
        ("S2_trivial_S1", "S1", "S2", "trivial"),
        ("CP2_trivial_S1", "S1", "CP2", "trivial"),
        ("CP2_trivial_group", "trivial", "CP2", "trivial"),
        ("S2_trivial_group", "trivial", "S2", "trivial"),
    ]
    return [{"name": n, "tower": t, "space": s, "mode": m, "provenance": "derived"} for n, t, s, m in simple]


# --------------------------------------------------------------------------

def build() -> dict:
    """All catalogue documents, keyed by (kind, name)."""
    gs = groups()
    gi = {g.name: g for g in gs}
    docs = {}
    for g in gs:
        docs[("groups", g.name)] = group_to_doc(g)
    sp = spaces()
    for s in sp:
        docs[("spaces", s.name)] = space_to_doc(s)
    for t in towers(gi):
        docs[("towers", t["name"])] = t
    for a in actions():
        docs[("actions", a["name"])] = a
    stages = s1_stages()
    s2 = next(s for s in sp if s.name == "S2")
    docs[("actions", "S3_free_S1")] = free_s3_action(stages, s2)
    pair = circle_pair(stages, gi)
    docs[("pairs", pair["name"])] = pair
    return docs


def file_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", name) + ".json"


def dumps(doc) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def write(root: Path = DATA):
    for (kind, name), doc in build().items():
        folder = Path(root) / kind
        folder.mkdir(parents=True, exist_ok=True)
        (folder / file_name(name)).write_text(dumps(doc))


if __name__ == "__main__":
    write(Path(sys.argv[1]) if len(sys.argv) > 1 else DATA)
