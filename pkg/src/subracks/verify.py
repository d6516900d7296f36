"""Run every claim about conjugacy class racks of p-groups against a group.

For each conjugacy class ``C`` with ``H = <C>`` acting on it in ``m`` orbits,
the harness checks:

* ``proper``: ``<C>`` is a proper subgroup unless the group is cyclic;
* ``corollary``: ``C`` is connected exactly when it is central;
* ``maximal_subracks``: the maximal subracks are the complements of single
  orbits (compared against the Hasse diagram);
* ``phi_laws``: the orbit-union map is a closure operator on subracks that
  reaches ``C`` only from ``C`` itself;
* ``boolean_image``: its image is the Boolean lattice on the ``m`` orbits;
* ``sphere``: the order complex has the reduced homology of ``S^(m-2)``;
* ``euler``: the reduced Euler characteristic equals ``(-1)^(m-2)``.

Topology is checked at the level of reduced integral homology; homotopy
equivalence itself is not machine-checked. Claims are only asserted when
the group is a p-group; otherwise they are computed and reported as
not applicable.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any

from .complex import euler_characteristic, order_complex
from .groups import (
    TRIVIAL,
    ConjClass,
    FiniteGroup,
    conjugacy_classes,
    is_central,
    is_cyclic,
    is_nilpotent,
    is_p_group,
    members_of,
    subgroup_generated,
)
from .homology import DEFAULT_DENSIFY_THRESHOLD, HomologyProfile, is_homology_sphere, reduced_homology
from .poset import (
    DEFAULT_HARD_CAP,
    CapExceeded,
    ImageNotBoolean,
    closure_phi,
    enumerate_subracks,
    maximal_subracks_bruteforce,
    maximal_subracks_via_lemma,
    phi_image,
)
from .racks import conjugation_rack, orbit_decomposition, verify_rack

__all__ = [
    "HOLDS",
    "FAILS",
    "NA",
    "SCOPE",
    "Verdict",
    "VerifyOptions",
    "ClassReport",
    "GroupReport",
    "verify_group",
    "verify_class",
    "verify_lemma_proper",
]

HOLDS = "holds"
FAILS = "fails"
NA = "not-applicable"
FORMAT = 1

SCOPE = (
    "sphere claims are verified through reduced integral homology together with "
    "the orbit-union closure operator and its Boolean image; homotopy equivalence "
    "is not machine-checked"
)
CYCLIC_READING = "'cyclic of prime power order' is read as 'the whole group is cyclic'"


@dataclass
class Verdict:
    status: str
    reason: str = ""
    witness: Any = None
    experimental: bool = False

    def __post_init__(self):
        assert self.status in (HOLDS, FAILS, NA), self.status
        # keep witnesses JSON-native so reports round-trip exactly
        self.witness = json.loads(json.dumps(self.witness))

    @property
    def counts(self) -> bool:
        return self.status != NA and not self.experimental


@dataclass(frozen=True)
class VerifyOptions:
    max_class_size: int = 20
    hard_cap: int = DEFAULT_HARD_CAP
    densify_threshold: int = DEFAULT_DENSIFY_THRESHOLD
    seed: int = 0
    jobs: int = 1
    experimental_nilpotent: bool = False
    timings: bool = False


@dataclass
class ClassReport:
    index: int
    representative: str
    size: int
    is_central: bool
    connected: bool
    h_order: int
    m: int
    orbits: list[list[str]]
    proper: Verdict
    corollary: Verdict
    rack_axioms: Verdict
    maximal_subracks: Verdict
    phi_laws: Verdict
    boolean_image: Verdict
    sphere: Verdict
    euler: Verdict
    sphere_degree: int
    capped: bool = False
    poset_size: int | None = None
    f_vector: list[int] | None = None
    homology: HomologyProfile | None = None
    timings: dict[str, float] | None = None

    CLAIMS = (
        "proper",
        "corollary",
        "rack_axioms",
        "maximal_subracks",
        "phi_laws",
        "boolean_image",
        "sphere",
        "euler",
    )

    def verdicts(self) -> dict[str, Verdict]:
        return {k: getattr(self, k) for k in self.CLAIMS}

    def to_dict(self) -> dict:
        d = asdict(self)
        d["homology"] = self.homology.to_dict() if self.homology else None
        if self.timings is None:
            del d["timings"]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ClassReport":
        d = dict(d)
        for k in cls.CLAIMS:
            d[k] = Verdict(**d[k])
        if d.get("homology") is not None:
            d["homology"] = HomologyProfile.from_dict(d["homology"])
        return cls(**d)


@dataclass
class GroupReport:
    group: dict[str, Any]
    p: int | str | None
    classes: list[ClassReport]
    overall: str
    capped: list[int] = field(default_factory=list)
    scope: str = SCOPE
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "format": FORMAT,
            "group": self.group,
            "p": self.p,
            "overall": self.overall,
            "capped": self.capped,
            "scope": self.scope,
            "notes": self.notes,
            "classes": [c.to_dict() for c in self.classes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "GroupReport":
        if d.get("format") != FORMAT:
            raise ValueError(f"unsupported report format {d.get('format')!r}")
        return cls(
            group=d["group"],
            p=d["p"],
            classes=[ClassReport.from_dict(c) for c in d["classes"]],
            overall=d["overall"],
            capped=d["capped"],
            scope=d["scope"],
            notes=d["notes"],
        )

    def to_text(self) -> str:
        return render_text(self.to_dict())


def render_text(d: dict) -> str:
    """Human-readable report, built from the same dict that is serialized."""
    g = d["group"]
    p = d["p"]
    lines = [
        f"group {g.get('name') or '<unnamed>'} of order {g['order']}"
        + (f", p-group (p = {p})" if p is not None else ", not a p-group"),
        f"overall: {d['overall'].upper()}",
    ]
    if d["overall"] == FAILS:
        lines.append("!!! FALSIFICATION: at least one claim failed on this input !!!")
    for c in d["classes"]:
        head = (
            f"class {c['index']} [{c['representative']}] |C|={c['size']} "
            f"central={c['is_central']} connected={c['connected']} |H|={c['h_order']} m={c['m']}"
        )
        if c["capped"]:
            head += " (cap exceeded: enumeration skipped)"
        lines.append(head)
        if c["homology"] is not None:
            h = HomologyProfile.from_dict(c["homology"])
            lines.append(f"    f-vector {c['f_vector']}, {h.describe()}")
        for k in ClassReport.CLAIMS:
            v = c[k]
            tag = " [experimental]" if v["experimental"] else ""
            lines.append(f"    {k:<17}{v['status']}{tag}" + (f"  ({v['reason']})" if v["reason"] else ""))
    lines.append(f"capped classes: {d['capped'] or 'none'}")
    for n in d["notes"]:
        lines.append(f"note: {n}")
    lines.append(f"scope: {d['scope']}")
    return "\n".join(lines) + "\n"


def _sign(k: int) -> int:
    return 1 if k % 2 == 0 else -1


def _lemma_proper(G: FiniteGroup, C: ConjClass, h_order: int, cyclic: bool) -> Verdict:
    if h_order < G.order:
        return Verdict(HOLDS, f"<C> has order {h_order} < {G.order}")
    if cyclic:
        return Verdict(HOLDS, "cyclic exclusion: <C> = G is allowed in a cyclic group")
    return Verdict(FAILS, "<C> is the whole group", witness=list(C.members))


def verify_lemma_proper(G: FiniteGroup) -> list[Verdict]:
    """Per-class check that conjugacy classes generate proper subgroups."""
    classes = conjugacy_classes(G)
    if is_p_group(G) is None:
        return [Verdict(NA, "not a p-group") for _ in classes]
    cyclic = is_cyclic(G)
    return [_lemma_proper(G, C, subgroup_generated(G, C.members).order, cyclic) for C in classes]


def verify_class(
    G: FiniteGroup,
    C: ConjClass,
    index: int,
    opts: VerifyOptions = VerifyOptions(),
    *,
    p: int | str | None = ...,
    cyclic: bool | None = None,
    nilpotent: bool | None = None,
) -> ClassReport:
    if p is ...:
        p = is_p_group(G)
    if cyclic is None:
        cyclic = is_cyclic(G)
    applies = p is not None
    experimental = False
    if not applies and opts.experimental_nilpotent:
        experimental = is_nilpotent(G) if nilpotent is None else nilpotent

    def na(why: str, **kw) -> Verdict:
        return Verdict(NA, why, **kw)

    hyp = "group is not a p-group"
    timings: dict[str, float] = {}
    t0 = time.perf_counter()

    H = subgroup_generated(G, C.members)
    R = conjugation_rack(G, C)
    orbits = orbit_decomposition(G, C, H)
    m = orbits.m
    central = is_central(G, C.representative)
    connected = m == 1
    orbit_labels = [[G.label(R.element_map[i]) for i in members_of(o)] for o in orbits.orbits]
    timings["orbits"] = time.perf_counter() - t0

    # proper generation and connectedness
    if applies:
        proper = _lemma_proper(G, C, H.order, cyclic)
    elif experimental:
        proper = _lemma_proper(G, C, H.order, cyclic)
        proper.experimental = True
    else:
        proper = na(hyp, witness={"h_order": H.order})
    if applies or experimental:
        if connected == central:
            corollary = Verdict(HOLDS, "connected" if connected else "non-central and not connected")
        else:
            corollary = Verdict(FAILS, "connected but non-central" if connected else "central but not connected")
        corollary.experimental = experimental
    else:
        corollary = na(hyp, witness={"connected": connected, "central": central})

    ax = verify_rack(R)
    rack_axioms = (
        Verdict(HOLDS, "A1, A2, A3")
        if ax.is_quandle
        else Verdict(FAILS, "conjugation rack violates the quandle axioms", witness=[
            list(a.witness) if a.witness else None for a in (ax.A1, ax.A2, ax.A3)
        ])
    )

    report = ClassReport(
        index=index,
        representative=G.label(C.representative),
        size=len(C),
        is_central=central,
        connected=connected,
        h_order=H.order,
        m=m,
        orbits=orbit_labels,
        proper=proper,
        corollary=corollary,
        rack_axioms=rack_axioms,
        maximal_subracks=na("pending"),
        phi_laws=na("pending"),
        boolean_image=na("pending"),
        sphere=na("pending"),
        euler=na("pending"),
        sphere_degree=m - 2,
    )

    if len(C) > min(opts.max_class_size, opts.hard_cap):
        why = str(CapExceeded(len(C), min(opts.max_class_size, opts.hard_cap)))
        for k in ("maximal_subracks", "phi_laws", "boolean_image", "sphere", "euler"):
            setattr(report, k, na(why))
        report.capped = True
        if opts.timings:
            report.timings = timings
        return report

    t0 = time.perf_counter()
    P = enumerate_subracks(R, cap=opts.hard_cap)
    timings["enumerate"] = time.perf_counter() - t0
    report.poset_size = len(P)
    full = R.all_bits

    # maximal subracks
    t0 = time.perf_counter()
    brute = sorted(maximal_subracks_bruteforce(P))
    if applies and m >= 2:
        lemma = sorted(maximal_subracks_via_lemma(R, orbits, p))
        if lemma == brute:
            report.maximal_subracks = Verdict(HOLDS, f"{m} maximal subracks, each missing one orbit")
        else:
            report.maximal_subracks = Verdict(FAILS, "maximal subracks differ from orbit complements", witness={
                "lemma": [list(R.element_map[i] for i in members_of(x)) for x in lemma],
                "hasse": [list(R.element_map[i] for i in members_of(x)) for x in brute],
            })
    elif applies:
        report.maximal_subracks = na("m = 1: statement vacuous; m taken from the orbit count")
    else:
        report.maximal_subracks = na(hyp, witness={"maximal": len(brute)})

    # closure-operator laws of the orbit-union map, on every subrack
    phi = {S: closure_phi(S, orbits) for S in P.elements}
    problems = []
    for S, f in phi.items():
        if S & ~f:
            problems.append(("not extensive", S))
        if phi.get(f, closure_phi(f, orbits)) != f:
            problems.append(("not idempotent", S))
        if f not in phi:
            problems.append(("image is not a subrack", S))
    elems = P.elements
    for S in elems:
        for T in elems:
            if S & ~T == 0 and phi[S] & ~phi[T]:
                problems.append(("not monotone", S))
    reaches_top = [S for S, f in phi.items() if f == full and S != full]
    if applies:
        if len(C) > 1 and reaches_top:
            problems.append(("reaches C from a proper subrack", reaches_top[0]))
        report.phi_laws = (
            Verdict(HOLDS, f"checked on {len(elems)} subracks")
            if not problems
            else Verdict(FAILS, problems[0][0], witness=[R.element_map[i] for i in members_of(problems[0][1])])
        )
    else:
        report.phi_laws = na(hyp, witness={
            "closure_laws_hold": not problems,
            "proper_subracks_reaching_C": len(reaches_top),
        })
    try:
        image = phi_image(P, orbits)
        img = Verdict(HOLDS, f"image is the Boolean lattice on {m} orbit{'s' * (m != 1)} ({len(image.orbit_subsets)} elements)")
    except ImageNotBoolean as e:
        img = Verdict(FAILS, str(e))
    report.boolean_image = img if applies else na(hyp, witness={"boolean": img.status == HOLDS})
    timings["lemma_checks"] = time.perf_counter() - t0

    # the sphere claim
    t0 = time.perf_counter()
    K = order_complex(P)
    H_prof = reduced_homology(K, opts.densify_threshold)
    timings["homology"] = time.perf_counter() - t0
    report.f_vector = list(K.f_vector)
    report.homology = H_prof
    chi_red, _ = euler_characteristic(K)
    if applies:
        report.sphere = (
            Verdict(HOLDS, f"reduced homology of S^{m - 2}")
            if is_homology_sphere(H_prof, m - 2)
            else Verdict(FAILS, f"expected S^{m - 2}, got {H_prof.describe()}")
        )
        report.euler = (
            Verdict(HOLDS, f"reduced Euler characteristic {chi_red}")
            if chi_red == _sign(m - 2) and H_prof.euler() == chi_red
            else Verdict(FAILS, f"reduced Euler characteristic {chi_red}, expected {_sign(m - 2)}")
        )
    else:
        report.sphere = na(hyp, witness={"homology": H_prof.describe()})
        report.euler = na(hyp, witness={"reduced_euler": chi_red})
    if opts.timings:
        report.timings = timings
    return report


def verify_group(G: FiniteGroup, opts: VerifyOptions = VerifyOptions()) -> GroupReport:
    """Verify every conjugacy class of ``G``; classes run on ``opts.jobs`` threads
    and are reported in canonical class order."""
    p = is_p_group(G)
    cyclic = is_cyclic(G)
    nilpotent = is_nilpotent(G) if (p is None and opts.experimental_nilpotent) else None
    classes = conjugacy_classes(G)

    def run(item):
        i, C = item
        return verify_class(G, C, i, opts, p=p, cyclic=cyclic, nilpotent=nilpotent)

    if opts.jobs > 1:
        with ThreadPoolExecutor(opts.jobs) as pool:
            reports = list(pool.map(run, enumerate(classes)))
    else:
        reports = [run(x) for x in enumerate(classes)]

    counted = [v for r in reports for v in r.verdicts().values() if v.counts]
    if any(v.status == FAILS for v in counted):
        overall = FAILS
    elif counted:
        overall = HOLDS
    else:
        overall = NA
    notes = []
    if p is not None:
        notes.append(f"proper-subgroup guard: {CYCLIC_READING}")
        notes.append("central classes (m = 1) bypass the maximal-subrack comparison")
    if p == TRIVIAL:
        notes.append("trivial group: treated as a p-group for every p")
    if nilpotent:
        notes.append("nilpotent non-p-group: proper-subgroup and connectedness claims checked experimentally only")
    return GroupReport(
        group={"name": G.name, "order": G.order, "classes": len(classes)},
        p=p,
        classes=reports,
        overall=overall,
        capped=[r.index for r in reports if r.capped],
        notes=notes,
    )
