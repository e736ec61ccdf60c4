import json
from fractions import Fraction

import numpy as np
import pytest

from horolib import detour, horo
from horolib import serialize as se
from horolib import spaces as sp
from horolib.detour import ExceedsCutoff, Finite

SPACES = [
    {"kind": "disc"},
    {"kind": "ball", "n": 2},
    {"kind": "polydisc", "n": 3},
    {"kind": "sup_rn", "n": 2},
    {"kind": "real_line"},
    {"kind": "star"},
    {"kind": "disc", "basepoint": [0.25, -0.5]},
    {"kind": "product", "factors": [{"kind": "disc"}, {"kind": "ball", "n": 2}]},
]


@pytest.mark.parametrize("doc", SPACES)
def test_space_round_trip(doc):
    space = se.space_from_json(doc)
    assert se.space_from_json(se.space_to_json(space)) == space


def test_space_aliases():
    assert se.space_from_json({"kind": "PoincareDisc"}) == sp.disc()
    assert se.space_from_json({"kind": "ComplexBall", "n": 2}) == sp.ball(2)


def test_point_round_trip_is_lossless():
    space = sp.product(sp.disc(), sp.ball(2), sp.star_graph())
    x = (0.1 + 1 / 3 * 1j, np.array([0.2 / 3, -0.7j]), sp.StarPoint(5, Fraction(7, 3)))
    text = se.dumps(se.point_to_json(space, x))
    y = se.point_from_json(space, json.loads(text))
    assert y[0] == x[0] and np.array_equal(y[1], x[1]) and y[2] == x[2]


def test_horofunction_round_trips():
    D2 = sp.polydisc(2)
    hs = [
        horo.DiscBoundary(1j),
        horo.BallBoundary([0.6, 0.8j]),
        horo.InternalPeak(sp.disc(), 0.3),
        horo.SupSign(sp.sup_rn(2), (0, 1), ("+", "-"), (0.0, 1.0)),
        horo.ProductComposite(D2, (0, 1), (horo.DiscBoundary(1), horo.DiscBoundary(-1)), (0.5, 0.0)),
        horo.rebase(horo.DiscBoundary(1), 0.2),
        horo.SampledHorofunction(sp.disc(), (0.5, 0.9, 0.99)),
    ]
    z = {sp.disc(): 0.1 - 0.2j, sp.ball(2): [0.1, 0.2j], sp.sup_rn(2): [1.0, -2.0], D2: [0.1, 0.3j]}
    for h in hs:
        g = se.horo_from_json(json.loads(se.dumps(se.horo_to_json(h))))
        x = z[sp.disc() if h.space.kind == "disc" else h.space]
        assert g(x) == h(x)


def test_detour_values_round_trip():
    for v in (ExceedsCutoff(20.0, 11), Finite(3.0, horo.stabilize([3.0, 3.0]))):
        back = se.detour_value_from_json(json.loads(se.dumps(se.detour_value_to_json(v))))
        assert back.is_finite == v.is_finite
    assert se.detour_value_to_json(ExceedsCutoff(20.0, 11)) == {"exceeds_cutoff": {"M": 20.0, "last_n": 11}}


def test_witness_round_trip():
    wb = detour.boundary_witness(sp.ball(2), sp.ball_boundary([0, 1]), t_max=6)
    back = se.witness_from_json(se.dumps(se.witness_to_json(wb)))
    assert all(np.array_equal(a, b) for a, b in zip(back.witness, wb.witness))


def test_dumps_is_sorted_and_stable():
    assert se.dumps({"b": 1, "a": np.float64(0.1)}) == '{"a": 0.1, "b": 1}'


@pytest.mark.parametrize("doc", ["{", '{"kind": "torus"}', '{"kind": "ball"}', '{"type": "nope"}'])
def test_malformed_documents(doc):
    with pytest.raises(se.SchemaError):
        if "type" in doc:
            se.horo_from_json(doc, sp.disc())
        else:
            se.space_from_json(doc)
