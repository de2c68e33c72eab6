"""Landau-variety components and their type bookkeeping.

Components of the Landau variety are codimension-one loci in parameter space,
each recorded with a defining polynomial, the hypersurfaces participating in
the critical set (its type), the subset of those that are indispensable (its
simple type), the pinch kind, and the parity that controls repeated-variation
vanishing.  One-loop graphs get the full closed-form component list from the
Gram/Cayley determinants; two-loop and massless graphs are covered by fixture
lists that encode the blowup geometry as data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import FeynmanGraph, Kinematics, contract, icecream_graph, symanzik_F
from .poly import Polynomial, PolyMatrix, determinant, divides, resultant

LINEAR = "linear"
QUADRATIC = "quadratic"
GENERAL = "general"


class LandauError(ValueError):
    pass


class EliminationDegenerateError(LandauError):
    """Raised when the iterated resultant collapses to the zero polynomial."""


@dataclass(frozen=True)
class LandauComponent:
    """One codimension-one singularity of the parameter family.

    `type_J` / `type_K` list the A- resp. B-hypersurface ids meeting the
    critical set; `simple_J` / `simple_K` the ones whose removal destroys
    criticality.  `parity` is fiber dimension minus stratum codimension,
    defined for linear (always -1) and quadratic pinches only.
    """

    id: str
    defining: Polynomial
    type_J: frozenset
    type_K: frozenset
    simple_J: frozenset
    simple_K: frozenset
    pinch: str
    parity: int | None = None
    variation_known_zero: bool = False

    def __post_init__(self):
        if self.pinch not in (LINEAR, QUADRATIC, GENERAL):
            raise LandauError(f"bad pinch kind {self.pinch!r}")
        if not self.simple_J <= self.type_J or not self.simple_K <= self.type_K:
            raise LandauError(f"{self.id}: simple type must refine the type")
        if self.pinch == LINEAR and self.parity != -1:
            raise LandauError(f"{self.id}: linear pinch has parity -1")
        if self.pinch == QUADRATIC and (self.parity is None or self.parity < 0):
            raise LandauError(f"{self.id}: quadratic pinch needs parity n-m >= 0")
        if self.pinch == GENERAL and self.parity is not None:
            raise LandauError(f"{self.id}: parity undefined for general critical sets")
        if self.variation_known_zero and not (
            self.pinch == LINEAR and (not self.type_K or not self.type_J)
        ):
            raise LandauError(
                f"{self.id}: variation_known_zero requires a pure-type linear pinch"
            )

    @property
    def is_simple_pinch(self) -> bool:
        return self.pinch in (LINEAR, QUADRATIC)

    def describe(self) -> dict:
        return {
            "id": self.id,
            "defining": str(self.defining),
            "type_J": sorted(self.type_J),
            "type_K": sorted(self.type_K),
            "simple_J": sorted(self.simple_J),
            "simple_K": sorted(self.simple_K),
            "pinch": self.pinch,
            "parity": self.parity,
            "variation_known_zero": self.variation_known_zero,
        }


@dataclass(frozen=True)
class OneLoopMatrices:
    """Gram matrix M, its massless part S and the bordered Cayley matrix S'."""

    edge_order: tuple          # edge ids along the cycle
    M: PolyMatrix
    S: PolyMatrix
    Sprime: PolyMatrix
    s_names: dict              # (i, j) 1-based positions -> invariant variable
    channel_substitution: dict  # s variable -> Polynomial in channel symbols


def _cycle_order(g: FeynmanGraph):
    """Edges of the single loop in traversal order, plus the vertex w_k
    between consecutive edges e_k and e_{k+1} (cyclically)."""
    if g.loop_number != 1:
        raise LandauError("graph is not one-loop")
    if len(g.edges) == 1:
        e = g.edges[0]
        if not e.is_self_loop():
            raise LandauError("single-edge one-loop graph must be a self-loop")
        return (e,), (e.ends[0],)
    degree = {v: 0 for v in g.vertices}
    for e in g.edges:
        degree[e.ends[0]] += 1
        degree[e.ends[1]] += 1
    if any(d != 2 for d in degree.values()) or len(g.edges) != len(g.vertices):
        raise LandauError("one-loop graph must be a single cycle")
    order = [g.edges[0]]
    current = g.edges[0].ends[1]
    between = [current]
    used = {g.edges[0].id}
    while len(order) < len(g.edges):
        candidates = [e for e in g.edges if e.id not in used and current in e.ends]
        if not candidates:
            raise LandauError("one-loop graph must be a single cycle")
        e = candidates[0]
        order.append(e)
        used.add(e.id)
        current = e.ends[1] if e.ends[0] == current else e.ends[0]
        between.append(current)
    if current != g.edges[0].ends[0]:
        raise LandauError("one-loop graph must be a single cycle")
    return tuple(order), tuple(between)


def gram_matrix(g: FeynmanGraph, k: Kinematics | None = None) -> OneLoopMatrices:
    """M_ii = m_i^2, M_ij = (m_i^2 + m_j^2 + s_ij)/2 along the loop order.

    The s_ij are fresh invariant variables; `channel_substitution` re-expresses
    them through the graph's momentum channels as s_ij = -(p_i+...+p_{j-1})^2.
    """
    if k is None:
        k = g.kinematics()
    edges, between = _cycle_order(g)
    n1 = len(edges)
    half = Fraction(1, 2)
    s_names = {}
    subst = {}
    all_momenta = g.momenta
    for i in range(1, n1 + 1):
        for j in range(i + 1, n1 + 1):
            name = f"s{i}{j}"
            s_names[(i, j)] = name
            momenta = frozenset(
                p for v in between[i - 1:j - 1] for p in g.legs_at(v)
            )
            sym = k.channel_symbol(momenta, all_momenta)
            subst[name] = Polynomial.zero() if sym is None else -Polynomial.var(sym)
    m_rows, s_rows = [], []
    for i in range(1, n1 + 1):
        m_row, s_row = [], []
        for j in range(1, n1 + 1):
            if i == j:
                m_row.append(Polynomial.var(k.mass_sq[edges[i - 1].id]))
                s_row.append(Polynomial.zero())
            else:
                s_ij = Polynomial.var(s_names[(min(i, j), max(i, j))])
                mi = Polynomial.var(k.mass_sq[edges[i - 1].id])
                mj = Polynomial.var(k.mass_sq[edges[j - 1].id])
                m_row.append((mi + mj + s_ij) * half)
                s_row.append(s_ij * half)
        m_rows.append(m_row)
        s_rows.append(s_row)
    one = Polynomial.const(1)
    sp_rows = [[Polynomial.zero()] + [one] * n1]
    for i in range(n1):
        sp_rows.append([one] + s_rows[i])
    return OneLoopMatrices(
        edge_order=tuple(e.id for e in edges),
        M=PolyMatrix(m_rows),
        S=PolyMatrix(s_rows),
        Sprime=PolyMatrix(sp_rows),
        s_names=s_names,
        channel_substitution=subst,
    )


def _subsets(items):
    items = list(items)
    out = [[]]
    for x in items:
        out += [s + [x] for s in out]
    return out


def oneloop_landau(g: FeynmanGraph, k: Kinematics | None = None) -> list:
    """All Landau components of a generic one-loop graph.

    For every proper edge subset I the quotient graph G/I contributes a first
    type component {det M_I = 0} meeting A_2 and the B_e with e in I, and
    (unless only one edge remains) a second type component {det S'_I = 0}
    also meeting A_1.  Every critical point is a simple pinch, so type and
    simple type coincide.  Output is sorted by (|I|, I).
    """
    mats = gram_matrix(g, k)
    n1 = len(mats.edge_order)
    n = n1 - 1
    pos = {eid: i for i, eid in enumerate(mats.edge_order)}
    components = []
    subsets = [s for s in _subsets(mats.edge_order) if len(s) < n1]
    subsets.sort(key=lambda s: (len(s), sorted(s)))
    for I in subsets:
        drop = [pos[e] for e in I]
        suffix = "" if not I else "/" + "".join(sorted(I))
        k_ids = frozenset(f"B{e}" for e in I)
        # first type: critical points of the quadric A_2 restricted to B^I
        det_m = determinant(mats.M.submatrix(drop, drop))
        if det_m.is_zero():
            raise LandauError(f"degenerate first-type determinant at I={I}")
        linear = len(I) == n
        components.append(LandauComponent(
            id=f"lF{suffix}",
            defining=det_m,
            type_J=frozenset({"A2"}),
            type_K=k_ids,
            simple_J=frozenset({"A2"}),
            simple_K=k_ids,
            pinch=LINEAR if linear else QUADRATIC,
            parity=-1 if linear else n - 1 - len(I),
            variation_known_zero=linear and not k_ids,
        ))
        # second type: critical points of A_1 cap A_2 over B^I; empty for a
        # single remaining edge
        if len(I) < n:
            drop_sp = [d + 1 for d in drop]  # never drop the bordering row
            det_sp = determinant(mats.Sprime.submatrix(drop_sp, drop_sp))
            if det_sp.is_zero():
                raise LandauError(f"degenerate second-type determinant at I={I}")
            linear2 = len(I) == n - 1
            components.append(LandauComponent(
                id=f"lFU{suffix}",
                defining=det_sp,
                type_J=frozenset({"A1", "A2"}),
                type_K=k_ids,
                simple_J=frozenset({"A1", "A2"}),
                simple_K=k_ids,
                pinch=LINEAR if linear2 else QUADRATIC,
                parity=-1 if linear2 else n - len(I),
                variation_known_zero=linear2 and not k_ids,
            ))
    return components


def split_component(comp: LandauComponent, factors, substitution=None,
                    suffixes=None) -> list:
    """Split one component into branch components with the given defining
    factors.  The factor product must reproduce the (substituted) defining
    polynomial up to a nonzero rational, which is verified exactly."""
    defining = comp.defining
    if substitution:
        defining = defining.substitute(substitution)
    product = Polynomial.const(1)
    for f in factors:
        product = product * f
    ratio = divides(product, defining)
    if ratio is None or not ratio.is_constant() or ratio.constant_value() == 0:
        raise LandauError(f"{comp.id}: supplied factors do not divide the defining polynomial")
    if suffixes is None:
        suffixes = [f".{i+1}" for i in range(len(factors))]
    return [
        LandauComponent(
            id=comp.id + suffix,
            defining=factor,
            type_J=comp.type_J,
            type_K=comp.type_K,
            simple_J=comp.simple_J,
            simple_K=comp.simple_K,
            pinch=comp.pinch,
            parity=comp.parity,
            variation_known_zero=comp.variation_known_zero,
        )
        for factor, suffix in zip(factors, suffixes)
    ]


def bubble_split(components: list, g: FeynmanGraph) -> list:
    """For a two-edge one-loop graph, split the top first-type component into
    the normal and pseudo threshold branches p^2 = (m_1 +- m_2)^2."""
    if g.loop_number != 1 or len(g.edges) != 2:
        raise LandauError("branch split is built in for two-edge loops only")
    mats = gram_matrix(g)
    e1, e2 = (g.edge(eid) for eid in mats.edge_order)
    chan = mats.channel_substitution[mats.s_names[(1, 2)]]
    if chan.is_zero():
        raise LandauError("two-edge loop has no momentum channel")
    p_sq = -chan
    m1, m2 = Polynomial.var(e1.mass), Polynomial.var(e2.mass)
    substitution = {
        e1.mass_sq: m1 * m1,
        e2.mass_sq: m2 * m2,
        mats.s_names[(1, 2)]: chan,
    }
    factors = [p_sq - (m1 + m2) ** 2, p_sq - (m1 - m2) ** 2]
    out = []
    for comp in components:
        if comp.id == "lF":
            out.extend(split_component(comp, factors, substitution, ["+", "-"]))
        else:
            out.append(comp)
    return out


def eliminate_critical_values(F: Polynomial, fiber_vars, chart=None) -> Polynomial:
    """Eliminate the fiber variables from {F, dF/dx_i} by iterated resultants.

    The zero locus of the result contains every parameter value over which the
    dehomogenized F has a critical point; extraneous factors are allowed.  A
    result that collapses to the zero polynomial is reported as degenerate.
    """
    chart = dict(chart or {})
    f = F.substitute(chart) if chart else F
    remaining = [v for v in fiber_vars if v not in chart]
    if not remaining:
        raise LandauError("no fiber variables left after the chart binding")
    if len(remaining) > 2:
        raise LandauError("at most 2 fiber variables are supported")

    def elim(a: Polynomial, b: Polynomial, var: str) -> Polynomial:
        da, db = a.degree_in(var), b.degree_in(var)
        if da == 0 and db == 0:
            raise LandauError(f"nothing to eliminate in {var}")
        if db == 0:
            return b  # already free of var; vanishing is still necessary
        if da == 0:
            return a
        return resultant(a, b, var)

    if len(remaining) == 1:
        x = remaining[0]
        result = elim(f, f.derivative(x), x)
    else:
        x, y = remaining
        fx, fy = f.derivative(x), f.derivative(y)
        rx = elim(f, fx, x)
        ry = elim(f, fy, x)
        result = elim(rx, ry, y)
        if result.is_zero():
            # alternative pairing from the same critical system
            ry2 = elim(fx, fy, x)
            result = elim(rx, ry2, y)
    if result.is_zero():
        raise EliminationDegenerateError("iterated resultant vanished identically")
    return result


def icecream_ellA12(k: Kinematics | None = None) -> Polynomial:
    """Defining polynomial of the exceptional-divisor singularity of the ice
    cream cone: the quotient-bubble F evaluated at the unique critical chart
    point x3 = -(m4^2-p2^2)/(m3^2-p3^2), with denominators cleared."""
    quotient = contract(icecream_graph(), {"1", "2"})
    f_quot = symanzik_F(quotient, k).substitute({"x4": 1})
    m3sq, m4sq = Polynomial.var("m3sq"), Polynomial.var("m4sq")
    p2sq, p3sq = Polynomial.var("p2sq"), Polynomial.var("p3sq")
    num = p2sq - m4sq          # x3 = num / den
    den = m3sq - p3sq
    coeffs = f_quot.coefficients_in("x3")
    d = len(coeffs) - 1
    result = Polynomial.zero()
    for e, c in enumerate(coeffs):
        result = result + c * num ** e * den ** (d - e)
    return result


def icecream_ellA12_printed() -> Polynomial:
    """The closed form of the same component, kept as an independent record."""
    p1sq = Polynomial.var("p1sq")
    p2sq, p3sq = Polynomial.var("p2sq"), Polynomial.var("p3sq")
    m3sq, m4sq = Polynomial.var("m3sq"), Polynomial.var("m4sq")
    return (
        p1sq * (m3sq - p3sq) * (m4sq - p2sq)
        + (m3sq * p2sq - m4sq * p3sq) * (m3sq - m4sq + p2sq - p3sq)
    )


def _triangle_fixture() -> list:
    comps = []
    p = {i: Polynomial.var(f"p{i}sq") for i in (1, 2, 3)}
    for i in (1, 2, 3):
        j, kk = sorted({1, 2, 3} - {i})
        comps.append(LandauComponent(
            id=f"l{i}",
            defining=p[i],
            type_J=frozenset({"A1", "A2"}),
            type_K=frozenset({f"B{i}", f"B{min(i,j)}{max(i,j)}", f"B{min(i,kk)}{max(i,kk)}"}),
            simple_J=frozenset({"A2"}),
            simple_K=frozenset(),
            pinch=GENERAL,
        ))
    delta = (
        p[1] ** 2 + p[2] ** 2 + p[3] ** 2
        - 2 * p[1] * p[2] - 2 * p[1] * p[3] - 2 * p[2] * p[3]
    )
    comps.append(LandauComponent(
        id="ldelta",
        defining=delta,
        type_J=frozenset({"A1", "A2"}),
        type_K=frozenset(),
        simple_J=frozenset({"A1", "A2"}),
        simple_K=frozenset(),
        pinch=QUADRATIC,
        parity=0,
    ))
    return comps


def _sunrise_fixture() -> list:
    comps = []
    psq = Polynomial.var("psq")
    m = {i: Polynomial.var(f"m{i}") for i in (1, 2, 3)}
    comps.append(LandauComponent(
        id="lp",
        defining=psq,
        type_J=frozenset({"A1", "A2", "A12", "A13", "A23"}),
        type_K=frozenset(),
        simple_J=frozenset({"A2"}),
        simple_K=frozenset(),
        pinch=GENERAL,
    ))
    for i in (1, 2, 3):
        j, kk = sorted({1, 2, 3} - {i})
        comps.append(LandauComponent(
            id=f"l{i}",
            defining=m[i] * m[i],
            type_J=frozenset({"A1", "A2", f"A{j}{kk}"}),
            type_K=frozenset({f"B{j}", f"B{kk}", f"B{j}{kk}"}),
            simple_J=frozenset({"A2"}),
            simple_K=frozenset(),
            pinch=GENERAL,
        ))
    for alpha in (1, -1):
        for beta in (1, -1):
            name = f"l{'+' if alpha > 0 else '-'}{'+' if beta > 0 else '-'}"
            comps.append(LandauComponent(
                id=name,
                defining=psq - (m[1] + alpha * m[2] + beta * m[3]) ** 2,
                type_J=frozenset({"A2"}),
                type_K=frozenset(),
                simple_J=frozenset({"A2"}),
                simple_K=frozenset(),
                pinch=QUADRATIC,
                parity=1,  # fiber dim 2, node of the cubic on the stratum A2
            ))
    return comps


def _icecream_fixture() -> list:
    p1sq = Polynomial.var("p1sq")
    p2sq, p3sq = Polynomial.var("p2sq"), Polynomial.var("p3sq")
    m3sq, m4sq = Polynomial.var("m3sq"), Polynomial.var("m4sq")
    delta = (
        p1sq ** 2 + p2sq ** 2 + p3sq ** 2
        - 2 * p1sq * p2sq - 2 * p1sq * p3sq - 2 * p2sq * p3sq
    )
    return [
        LandauComponent(
            id="lA12",
            defining=icecream_ellA12_printed(),
            type_J=frozenset({"A2", "A12"}),
            type_K=frozenset(),
            simple_J=frozenset({"A2", "A12"}),
            simple_K=frozenset(),
            pinch=QUADRATIC,
            parity=1,  # fiber dim 3, stratum A2 cap A12
        ),
        LandauComponent(
            id="lB12",
            defining=(m3sq + m4sq - p1sq) ** 2 - 4 * m3sq * m4sq,
            type_J=frozenset({"A2", "A12"}),
            type_K=frozenset({"B1", "B2", "B12"}),
            simple_J=frozenset({"A2"}),
            simple_K=frozenset(),
            pinch=GENERAL,
        ),
        LandauComponent(
            id="ldelta",
            defining=delta,
            # the critical line passes through the collision point of the
            # triple intersection on the exceptional divisor, so A12 is in
            # the type; only A2 is indispensable
            type_J=frozenset({"A1", "A2", "A12"}),
            type_K=frozenset(),
            simple_J=frozenset({"A2"}),
            simple_K=frozenset(),
            pinch=GENERAL,
        ),
    ]


_FIXTURES = {
    "massless-triangle": _triangle_fixture,
    "sunrise": _sunrise_fixture,
    "icecream-partial": _icecream_fixture,
}


def fixture_landau(name: str) -> list:
    """Hard-coded Landau component lists for the blown-up fixture geometries."""
    try:
        builder = _FIXTURES[name]
    except KeyError:
        raise LandauError(
            f"unknown fixture {name!r}; choose from {sorted(_FIXTURES)}"
        ) from None
    return builder()
