"""Tests for recovering spans and transport tables from a fibration."""

from app.actions.span_data import lambda_extract


def _generator(G):
    unit = G.degens[0][0][0]
    return next(g for g in G.cells(1) if g != unit)


def test_spans_over_every_edge(swap_bundle):
    data = lambda_extract(swap_bundle)
    assert sorted(data.spans) == list(swap_bundle.G.cells(1))
    assert len(data.fiber.objects) == 2


def test_generator_swaps_objects(swap_bundle):
    data = lambda_extract(swap_bundle)
    span = data.spans[_generator(swap_bundle.G)]
    assert span.right_of_left(0) == [1]
    assert span.right_of_left(1) == [0]


def test_unit_edge_fixes_objects(swap_bundle):
    data = lambda_extract(swap_bundle)
    span = data.spans[swap_bundle.G.degens[0][0][0]]
    assert span.right_of_left(0) == [0]


def test_transport_lands_in_the_fiber(swap_bundle):
    data = lambda_extract(swap_bundle)
    assert sorted(data.transport) == list(swap_bundle.G.cells(2))
    arrows = set(data.fiber_arrows)
    assert all(z in arrows for table in data.transport.values() for z in table.values())
