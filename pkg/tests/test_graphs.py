import pytest

from landauvar.graphs import (
    GraphError,
    bubble_graph,
    contract,
    icecream_graph,
    load_graph,
    sunrise_graph,
    symanzik_F,
    symanzik_U,
    triangle_graph,
)
from landauvar.poly import Polynomial, divides, parse

ALL_FIXTURES = {
    "bubble": bubble_graph,
    "triangle": triangle_graph,
    "sunrise": sunrise_graph,
    "icecream": icecream_graph,
}


def test_spanning_trees():
    assert bubble_graph().spanning_trees() == [frozenset({"1"}), frozenset({"2"})]
    assert len(triangle_graph().spanning_trees()) == 3
    assert sunrise_graph().spanning_trees() == [
        frozenset({"1"}), frozenset({"2"}), frozenset({"3"})
    ]


def test_symanzik_U_fixtures():
    assert symanzik_U(bubble_graph()) == parse("x1 + x2")
    assert symanzik_U(sunrise_graph()) == parse("x2*x3 + x1*x3 + x1*x2")
    assert symanzik_U(icecream_graph()) == parse("x1*x2 + (x1+x2)*(x3+x4)")


def test_symanzik_F_fixtures():
    assert symanzik_F(bubble_graph()) == parse(
        "(x1+x2)*(m1sq*x1+m2sq*x2) - psq*x1*x2"
    )
    massless = symanzik_F(triangle_graph()).substitute(
        {"m1sq": 0, "m2sq": 0, "m3sq": 0}
    )
    assert massless == parse("-p1sq*x2*x3 - p2sq*x1*x3 - p3sq*x1*x2")
    assert symanzik_F(sunrise_graph()) == parse(
        "(m1sq*x1 + m2sq*x2 + m3sq*x3)*(x2*x3+x1*x3+x1*x2) - psq*x1*x2*x3"
    )
    u = "(x1*x2 + (x1+x2)*(x3+x4))"
    assert symanzik_F(icecream_graph()) == parse(
        f"x1*x2*(-p2sq*x4 - p3sq*x3) - p1sq*(x1+x2)*x3*x4"
        f" + {u}*(m1sq*x1+m2sq*x2+m3sq*x3+m4sq*x4)"
    )


def test_homogeneity():
    for g in (bubble_graph(), triangle_graph(), sunrise_graph(), icecream_graph()):
        xvars = {e.var for e in g.edges}
        h1 = g.loop_number
        assert symanzik_U(g).is_homogeneous(h1, xvars)
        assert symanzik_F(g).is_homogeneous(h1 + 1, xvars)


def test_contract_icecream_to_bubble():
    g = contract(icecream_graph(), {"1", "2"})
    assert len(g.vertices) == 2 and len(g.edges) == 2
    assert {e.id for e in g.edges} == {"3", "4"}
    assert g.loop_number == 1
    f = symanzik_F(g)
    assert f == parse("(x3+x4)*(m3sq*x3+m4sq*x4) - p1sq*x3*x4")


def test_contract_triangle_edge():
    g = contract(triangle_graph(), {"3"})
    assert len(g.vertices) == 2 and len(g.edges) == 2 and g.loop_number == 1


def test_contract_identity_and_errors():
    g = bubble_graph()
    same = contract(g, set())
    assert symanzik_U(same) == symanzik_U(g)
    with pytest.raises(GraphError):
        contract(g, {"1", "2"})
    loopy = load_graph({
        "vertices": ["v"],
        "edges": [{"id": "1", "ends": ["v", "v"], "mass": "m1", "var": "x1"}],
        "legs": [],
        "channels": {},
    })
    with pytest.raises(GraphError):
        contract(loopy, {"1"})


def test_restriction_property():
    # U and F restrict to the quotient-graph polynomials on x_e = 0
    for name, builder in ALL_FIXTURES.items():
        g = builder()
        for e in g.edges:
            if e.is_self_loop():
                continue
            quotient = contract(g, {e.id})
            assert symanzik_U(g).substitute({e.var: 0}) == symanzik_U(quotient), (name, e.id)
            assert symanzik_F(g).substitute({e.var: 0}) == symanzik_F(quotient), (name, e.id)


def test_icecream_subgraph_factorization_mod_u2():
    # in the chart x = (u, u*v, x3, 1) the second Symanzik polynomial is
    # U_gamma * F_{G/gamma} to first order in u
    g = icecream_graph()
    f = symanzik_F(g)
    u, v = Polynomial.var("u"), Polynomial.var("v")
    chart = f.substitute({"x1": u, "x2": u * v, "x4": 1})
    coeffs = chart.coefficients_in("u")
    assert coeffs[0].is_zero()
    u_gamma = 1 + v  # (x1 + x2)/u in the chart
    f_quotient = symanzik_F(contract(g, {"1", "2"})).substitute({"x4": 1})
    assert coeffs[1] == u_gamma * f_quotient
    assert divides(u_gamma, coeffs[1]) is not None


def test_momentum_conservation_channels():
    # a 2-forest cutting the full external set contributes nothing
    g = load_graph({
        "vertices": ["a", "b"],
        "edges": [
            {"id": "1", "ends": ["a", "b"], "mass": "m1", "var": "x1"},
            {"id": "2", "ends": ["a", "b"], "mass": "m2", "var": "x2"},
        ],
        "legs": [{"vertex": "a", "momentum": "p1"}, {"vertex": "a", "momentum": "p2"}],
        "channels": {},
    })
    # both legs sit on one side of every cut, so no invariant is needed
    f = symanzik_F(g)
    assert f == parse("(x1+x2)*(m1sq*x1+m2sq*x2)")


def test_missing_channel_symbol_errors():
    g = load_graph({
        "vertices": ["a", "b"],
        "edges": [
            {"id": "1", "ends": ["a", "b"], "mass": "m1", "var": "x1"},
            {"id": "2", "ends": ["a", "b"], "mass": "m2", "var": "x2"},
        ],
        "legs": [{"vertex": "a", "momentum": "p1"}, {"vertex": "b", "momentum": "p2"}],
        "channels": {},
    })
    with pytest.raises(GraphError):
        symanzik_F(g)


def test_graph_validation():
    with pytest.raises(GraphError):
        load_graph({"vertices": ["a", "b"], "edges": [], "legs": [], "channels": {}})
    with pytest.raises(GraphError):
        load_graph({
            "vertices": ["a"],
            "edges": [{"id": "1", "ends": ["a", "zz"], "mass": "m", "var": "x"}],
        })
    with pytest.raises(GraphError):
        load_graph({
            "vertices": ["a", "b"],
            "edges": [
                {"id": "1", "ends": ["a", "b"], "mass": "m1", "var": "x1"},
                {"id": "2", "ends": ["a", "b"], "mass": "m2", "var": "x1"},
            ],
        })
