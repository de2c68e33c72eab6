"""Exact variation operators on finite homology bases.

A model carries one square matrix per Landau component, acting on a fixed
basis of relative homology classes (columns are images of basis elements).
Entries are exact rationals, or None where the geometry does not pin an
entry down; composition fails loudly when an unknown entry actually matters.
The rank-one assembly rule builds an operator from a vanishing cycle and a
row of intersection numbers, and the audit helpers cross-check a model
against the hierarchy oracle.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .hierarchy import HierarchyRelation, hierarchy_graph, word_vanishes
from .landau import GENERAL, LINEAR, QUADRATIC, LandauComponent
from .localhom import pl_sign
from .poly import Polynomial, parse


class ModelError(ValueError):
    pass


class UnknownEntryError(ModelError):
    """A composition or image test touched an entry the model leaves open."""


# -- exact matrices with optional unknown entries --------------------------------


def _rat(x):
    if x is None or isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise ModelError(f"not an exact rational entry: {x!r}")


def matrix_from_images(images) -> tuple:
    """Rows-of-tuples matrix whose j-th column is images[j]."""
    size = len(images)
    for col in images:
        if len(col) != size:
            raise ModelError("image vectors must match the basis size")
    return tuple(
        tuple(_rat(images[j][i]) for j in range(size)) for i in range(size)
    )


def zero_matrix(size: int) -> tuple:
    return tuple((Fraction(0),) * size for _ in range(size))


def identity_matrix(size: int) -> tuple:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(size)) for i in range(size)
    )


def unknown_matrix(size: int) -> tuple:
    return tuple((None,) * size for _ in range(size))


def mat_mul(a: tuple, b: tuple) -> tuple:
    """Product with unknown propagation; None * 0 counts as 0."""
    size = len(a)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = Fraction(0)
            for k in range(size):
                x, y = a[i][k], b[k][j]
                if x == 0 or y == 0:
                    continue
                if x is None or y is None:
                    acc = None
                    break
                acc += x * y
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def mat_vec(a: tuple, v: tuple) -> tuple:
    out = []
    for i in range(len(a)):
        acc = Fraction(0)
        for k in range(len(v)):
            x, y = a[i][k], v[k]
            if x == 0 or y == 0:
                continue
            if x is None:
                acc = None
                break
            acc += x * y
        out.append(acc)
    return tuple(out)


def is_zero_matrix(m: tuple) -> bool:
    for row in m:
        for x in row:
            if x is None:
                raise UnknownEntryError("matrix has unknown entries")
            if x != 0:
                return False
    return True


def has_unknown(m: tuple) -> bool:
    return any(x is None for row in m for x in row)


# -- the model -------------------------------------------------------------------


@dataclass
class VariationModel:
    """Variation operators for one geometry, over a fixed homology basis.

    `vanishing` declares, per component, spanning vectors for the image of its
    operator (for simple pinches: rational multiples of the vanishing cycle);
    `intersection_rows` holds dual-cycle intersection numbers against the
    basis, enough to rebuild simple-pinch operators from the rank-one rule.
    """

    name: str
    n: int
    basis: tuple
    ops: dict
    components: tuple
    vanishing: dict = field(default_factory=dict)
    intersection_rows: dict = field(default_factory=dict)
    boundary_K: dict = field(default_factory=dict)
    coboundary_J: dict = field(default_factory=dict)
    conventions: dict = field(default_factory=dict)

    def __post_init__(self):
        size = len(self.basis)
        comp_ids = {c.id for c in self.components}
        if set(self.ops) != comp_ids:
            raise ModelError("ops must cover exactly the model components")
        for cid, m in self.ops.items():
            if len(m) != size or any(len(row) != size for row in m):
                raise ModelError(f"operator for {cid} is not {size}x{size}")
        for comp in self.components:
            if comp.variation_known_zero and not _known_zero(self.ops[comp.id]):
                raise ModelError(f"{comp.id} is flagged zero but its matrix is not")
        self._check_image_spans()

    def _check_image_spans(self):
        for comp in self.components:
            span = self.vanishing.get(comp.id)
            if span is None:
                continue
            m = self.ops[comp.id]
            if has_unknown(m):
                continue
            for j in range(len(self.basis)):
                col = tuple(m[i][j] for i in range(len(self.basis)))
                if not _in_span(col, span):
                    raise ModelError(
                        f"{comp.id}: image of {self.basis[j]} leaves the declared span"
                    )

    def component(self, cid: str) -> LandauComponent:
        for c in self.components:
            if c.id == cid:
                return c
        raise ModelError(f"unknown component id {cid!r}")

    def relation(self) -> HierarchyRelation:
        return hierarchy_graph(self.components)

    def basis_vector(self, label: str) -> tuple:
        idx = self.basis.index(label)
        return tuple(Fraction(1 if i == idx else 0) for i in range(len(self.basis)))


def _known_zero(m) -> bool:
    return all(x == 0 for row in m for x in row if x is not None) and not has_unknown(m)


def _in_span(vector, span) -> bool:
    """Exact membership of `vector` in the rational span of `span` vectors."""
    rows = [list(v) for v in span]
    target = list(vector)
    # Gaussian elimination over the rationals
    pivots = []
    for row in rows:
        work = row[:]
        for col, prow in pivots:
            factor = work[col]
            if factor:
                work = [w - factor * p for w, p in zip(work, prow)]
        lead = next((i for i, w in enumerate(work) if w != 0), None)
        if lead is None:
            continue
        inv = Fraction(1) / work[lead]
        work = [w * inv for w in work]
        pivots.append((lead, work))
    for col, prow in pivots:
        factor = target[col]
        if factor:
            target = [t - factor * p for t, p in zip(target, prow)]
    return all(t == 0 for t in target)


# -- operator assembly and composition --------------------------------------------


def pl_operator(n: int, vanishing_cycle, dual_row) -> tuple:
    """Rank-one variation operator: sign(n) * cycle * row."""
    cycle = tuple(_rat(x) for x in vanishing_cycle)
    row = tuple(_rat(x) for x in dual_row)
    if len(cycle) != len(row):
        raise ModelError("cycle and intersection row must have equal length")
    s = pl_sign(n)
    return tuple(
        tuple(s * ci * rj for rj in row) for ci in cycle
    )


def compose(model: VariationModel, word) -> tuple:
    """Matrix of the iterated variation along `word` (application order:
    word[0] acts first, so the product stacks right-to-left)."""
    size = len(model.basis)
    result = identity_matrix(size)
    for cid in word:
        if cid not in model.ops:
            raise ModelError(f"unknown component id {cid!r}")
        result = mat_mul(model.ops[cid], result)
    if has_unknown(result):
        raise UnknownEntryError(
            f"word {list(word)} touches entries the model leaves unknown"
        )
    return result


def apply_word(model: VariationModel, word, basis_label: str) -> tuple:
    return mat_vec(compose(model, word), model.basis_vector(basis_label))


def nilpotency_index(model: VariationModel, subset, cutoff: int = 10):
    """Smallest k with every length-k word over `subset` composing to zero,
    or None when the cutoff is reached first."""
    ids = sorted(subset)
    for cid in ids:
        model.component(cid)
    for k in range(1, cutoff + 1):
        if all(
            is_zero_matrix(compose(model, w))
            for w in itertools.product(ids, repeat=k)
        ):
            return k
    return None


# -- audits ------------------------------------------------------------------------


@dataclass
class AuditReport:
    model: str
    max_len: int
    words_checked: int
    violations: list
    unverified: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def describe(self) -> dict:
        return {
            "model": self.model,
            "max_len": self.max_len,
            "words_checked": self.words_checked,
            "violations": [list(w) for w in self.violations],
            "unverified": [list(w) for w in self.unverified],
        }


def check_against_hierarchy(model: VariationModel, rel: HierarchyRelation | None = None,
                            max_len: int = 4) -> AuditReport:
    """Assert (one-directionally) that oracle-forced words compose to zero.

    Words whose composition runs into unknown entries are retried through the
    image-span certificate; if still undecidable they are reported as
    unverified rather than as violations.
    """
    if rel is None:
        rel = model.relation()
    ids = sorted(c.id for c in model.components)
    violations, unverified = [], []
    checked = 0
    for length in range(1, max_len + 1):
        for word in itertools.product(ids, repeat=length):
            verdict = word_vanishes(rel, model.components, word)
            if not verdict.forced_zero:
                continue
            checked += 1
            certified, _ = _certify_by_model(model, word)
            if certified is False:
                violations.append(word)
            elif certified is None:
                unverified.append(word)
    return AuditReport(model.name, max_len, checked, sorted(violations),
                       sorted(unverified))


def _certify_by_model(model: VariationModel, word):
    """Model-side evidence only (no oracle): True when the word provably
    composes to zero, False when it provably does not, None when the unknown
    entries leave it open."""
    word = tuple(word)
    try:
        zero = is_zero_matrix(compose(model, word))
        return zero, "matrix product is zero" if zero else "matrix product is nonzero"
    except UnknownEntryError:
        pass
    size = len(model.basis)
    for i, cid in enumerate(word[:-1]):
        comp = model.component(cid)
        span = model.vanishing.get(cid)
        if not comp.is_simple_pinch or not span:
            continue
        tail = identity_matrix(size)
        try:
            for later in word[i + 1:]:
                tail = mat_mul(model.ops[later], tail)
            if all(all(x == 0 for x in mat_vec(tail, v)) for v in span):
                return True, f"tail of word annihilates the image span of {cid}"
        except (UnknownEntryError, TypeError):
            continue
    return None, "undecidable from the model data"


def word_zero_certificate(model: VariationModel, rel: HierarchyRelation, word):
    """Try to certify that the iterated variation along `word` vanishes.

    Three routes, in order: the hierarchy oracle; the full matrix product;
    and the image-span argument, where some component is a simple pinch whose
    declared image span is annihilated by the tail of the word.
    """
    word = tuple(word)
    verdict = word_vanishes(rel, model.components, word)
    if verdict.forced_zero:
        return True, f"oracle: {verdict.reason}"
    certified, reason = _certify_by_model(model, word)
    return bool(certified), reason


# -- JSON import/export -------------------------------------------------------------


def model_to_json(model: VariationModel) -> dict:
    def enc(m):
        return [[None if x is None else str(x) for x in row] for row in m]

    return {
        "name": model.name,
        "n": model.n,
        "basis": list(model.basis),
        "ops": {cid: enc(m) for cid, m in sorted(model.ops.items())},
        "components": [c.describe() for c in model.components],
        "vanishing": {
            cid: [[str(x) for x in v] for v in vs]
            for cid, vs in sorted(model.vanishing.items())
        },
        "intersection_rows": {
            cid: [str(x) for x in row]
            for cid, row in sorted(model.intersection_rows.items())
        },
        "boundary_K": {b: sorted(s) for b, s in sorted(model.boundary_K.items())},
        "coboundary_J": {b: sorted(s) for b, s in sorted(model.coboundary_J.items())},
        "conventions": dict(model.conventions),
    }


def model_from_json(data) -> VariationModel:
    if isinstance(data, str):
        data = json.loads(data)
    comps = tuple(
        LandauComponent(
            id=c["id"],
            defining=parse(c["defining"]),
            type_J=frozenset(c["type_J"]),
            type_K=frozenset(c["type_K"]),
            simple_J=frozenset(c["simple_J"]),
            simple_K=frozenset(c["simple_K"]),
            pinch=c["pinch"],
            parity=c["parity"],
            variation_known_zero=c["variation_known_zero"],
        )
        for c in data["components"]
    )
    ops = {
        cid: tuple(tuple(_rat(x) for x in row) for row in m)
        for cid, m in data["ops"].items()
    }
    return VariationModel(
        name=data["name"],
        n=data["n"],
        basis=tuple(data["basis"]),
        ops=ops,
        components=comps,
        vanishing={
            cid: tuple(tuple(_rat(x) for x in v) for v in vs)
            for cid, vs in data.get("vanishing", {}).items()
        },
        intersection_rows={
            cid: tuple(_rat(x) for x in row)
            for cid, row in data.get("intersection_rows", {}).items()
        },
        boundary_K={b: frozenset(s) for b, s in data.get("boundary_K", {}).items()},
        coboundary_J={b: frozenset(s) for b, s in data.get("coboundary_J", {}).items()},
        conventions=data.get("conventions", {}),
    )


# -- builtin fixture models -----------------------------------------------------------


def _logarithm_model() -> VariationModel:
    t = Polynomial.var("t")
    comps = (
        LandauComponent("l0", t, frozenset({"A1", "A2"}), frozenset(),
                        frozenset({"A1", "A2"}), frozenset(), LINEAR, -1, True),
        LandauComponent("l1", t - 1, frozenset({"A1"}), frozenset({"B2"}),
                        frozenset({"A1"}), frozenset({"B2"}), LINEAR, -1),
        LandauComponent("linf", Polynomial.var("t_inv"), frozenset({"A1"}),
                        frozenset({"B1"}), frozenset({"A1"}), frozenset({"B1"}),
                        LINEAR, -1),
    )
    nu = (0, 1)
    ops = {
        "l0": zero_matrix(2),
        "l1": matrix_from_images([nu, (0, 0)]),
        "linf": matrix_from_images([nu, (0, 0)]),
    }
    return VariationModel(
        name="logarithm", n=1, basis=("sigma", "nu"), ops=ops, components=comps,
        vanishing={"l1": ((0, 1),), "linf": ((0, 1),)},
        intersection_rows={"l1": (-1, 0), "linf": (-1, 0), "l0": (0, 0)},
        boundary_K={"sigma": frozenset({"B1", "B2"}), "nu": frozenset()},
        coboundary_J={"sigma": frozenset(), "nu": frozenset({"A1"})},
    )


def _bubble_model() -> VariationModel:
    m1, m2 = Polynomial.var("m1"), Polynomial.var("m2")
    psq = Polynomial.var("psq")
    comps = (
        LandauComponent("l1", m1 * m1, frozenset({"A2"}), frozenset({"B2"}),
                        frozenset({"A2"}), frozenset({"B2"}), LINEAR, -1),
        LandauComponent("l2", m2 * m2, frozenset({"A2"}), frozenset({"B1"}),
                        frozenset({"A2"}), frozenset({"B1"}), LINEAR, -1),
        LandauComponent("lD+", psq - (m1 + m2) ** 2, frozenset({"A2"}), frozenset(),
                        frozenset({"A2"}), frozenset(), QUADRATIC, 0),
        LandauComponent("lD-", psq - (m1 - m2) ** 2, frozenset({"A2"}), frozenset(),
                        frozenset({"A2"}), frozenset(), QUADRATIC, 0),
        LandauComponent("lp", psq, frozenset({"A1", "A2"}), frozenset(),
                        frozenset({"A1", "A2"}), frozenset(), LINEAR, -1, True),
    )
    nu_delta = (0, -1, 1)  # nu2 - nu1
    ops = {
        "l1": matrix_from_images([(0, -1, 0), (0, 0, 0), (0, 0, 0)]),
        "l2": matrix_from_images([(0, 0, 1), (0, 0, 0), (0, 0, 0)]),
        "lD+": matrix_from_images([nu_delta, nu_delta, (0, 1, -1)]),
        "lD-": matrix_from_images([(0, 0, 0), nu_delta, (0, 1, -1)]),
        "lp": zero_matrix(3),
    }
    return VariationModel(
        name="bubble", n=1, basis=("sigma", "nu1", "nu2"), ops=ops, components=comps,
        vanishing={
            "l1": ((0, 1, 0),),
            "l2": ((0, 0, 1),),
            "lD+": (nu_delta,),
            "lD-": (nu_delta,),
        },
        intersection_rows={
            "l1": (1, 0, 0),
            "l2": (-1, 0, 0),
            "lD+": (-1, -1, 1),
            "lD-": (0, -1, 1),
            "lp": (0, 0, 0),
        },
        boundary_K={
            "sigma": frozenset({"B1", "B2"}),
            "nu1": frozenset(),
            "nu2": frozenset(),
        },
        coboundary_J={
            "sigma": frozenset(),
            "nu1": frozenset({"A2"}),
            "nu2": frozenset({"A2"}),
        },
    )


def _dilog_model() -> VariationModel:
    t = Polynomial.var("t")
    all_a = frozenset({"A1", "A2", "A3", "A4", "A5"})
    comps = (
        LandauComponent("l0", t, all_a, frozenset({"B3", "B4"}),
                        frozenset({"A3"}), frozenset(), GENERAL),
        LandauComponent("l1", t - 1, frozenset({"A3"}), frozenset({"B3", "B4"}),
                        frozenset({"A3"}), frozenset({"B3", "B4"}), LINEAR, -1),
        LandauComponent("linf", Polynomial.var("t_inv"),
                        frozenset({"A3", "A4", "A5"}),
                        frozenset({"B1", "B2", "B3", "B4"}),
                        frozenset({"A3"}), frozenset(), GENERAL),
    )
    ops = {
        "l0": matrix_from_images([(0, 0, 0), (0, 0, 1), (0, 0, 0)]),
        "l1": matrix_from_images([(0, -1, 0), (0, 0, 0), (0, 0, 0)]),
        # fixed by the loop relation: the monodromies around 0, 1, infinity
        # compose to the identity
        "linf": matrix_from_images([(0, 1, 0), (0, 0, -1), (0, 0, 0)]),
    }
    return VariationModel(
        name="dilog", n=2, basis=("sigma", "nu_p1", "nu_p0"), ops=ops,
        components=comps,
        vanishing={"l1": ((0, 1, 0),), "l0": ((0, 0, 1),)},
        boundary_K={
            "sigma": frozenset({"B1", "B2", "B3", "B4"}),
            "nu_p1": frozenset({"B3", "B4"}),
            "nu_p0": frozenset(),
        },
        coboundary_J={
            "sigma": frozenset(),
            "nu_p1": frozenset({"A3"}),
            "nu_p0": frozenset({"A3"}),
        },
        conventions={"var_infinity": "inverse of the composite loop around 0 then 1"},
    )


# sign convention for the off-diagonal double variations of the massless
# triangle; they are determined only up to sign
_EPS_CYCLIC = {(1, 2): 1, (2, 3): 1, (3, 1): 1, (2, 1): -1, (3, 2): -1, (1, 3): -1}


def _triangle_model() -> VariationModel:
    from .landau import fixture_landau

    comps = tuple(fixture_landau("massless-triangle"))
    basis = ("sigma", "nu1", "nu2", "nu3", "mu")
    size = len(basis)
    ops = {}
    for i in (1, 2, 3):
        images = []
        # sigma -> nu_i
        sigma_img = [0] * size
        sigma_img[i] = 1
        images.append(tuple(sigma_img))
        for j in (1, 2, 3):
            if j == i:
                images.append((0,) * size)
            else:
                images.append((0, 0, 0, 0, _EPS_CYCLIC[(i, j)]))
        images.append((0,) * size)  # mu -> 0
        ops[f"l{i}"] = matrix_from_images(images)
    ops["ldelta"] = unknown_matrix(size)
    return VariationModel(
        name="massless-triangle", n=2, basis=basis, ops=ops, components=comps,
        vanishing={
            "ldelta": ((0, 0, 0, 0, 2),),  # nu_delta = 2*mu
            "l1": ((0, 1, 0, 0, 0), (0, 0, 0, 0, 1)),
            "l2": ((0, 0, 1, 0, 0), (0, 0, 0, 0, 1)),
            "l3": ((0, 0, 0, 1, 0), (0, 0, 0, 0, 1)),
        },
        boundary_K={
            "sigma": frozenset({"B1", "B2", "B3", "B12", "B13", "B23"}),
            "nu1": frozenset({"B12", "B13"}),
            "nu2": frozenset({"B12", "B23"}),
            "nu3": frozenset({"B13", "B23"}),
            "mu": frozenset(),
        },
        coboundary_J={
            "sigma": frozenset(),
            "nu1": frozenset({"A2"}),
            "nu2": frozenset({"A2"}),
            "nu3": frozenset({"A2"}),
            "mu": frozenset({"A2"}),
        },
        conventions={"epsilon": "cyclic (+1 on (1,2),(2,3),(3,1))"},
    )


_BUILTIN = {
    "logarithm": _logarithm_model,
    "bubble": _bubble_model,
    "dilog": _dilog_model,
    "massless-triangle": _triangle_model,
}


def builtin_model(name: str) -> VariationModel:
    try:
        builder = _BUILTIN[name]
    except KeyError:
        raise ModelError(
            f"unknown model {name!r}; choose from {sorted(_BUILTIN)}"
        ) from None
    return builder()
