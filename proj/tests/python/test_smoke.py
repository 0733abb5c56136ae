import json
from decimal import Decimal

import pytest

import onecut


def test_semicircle_endpoints_and_recurrence():
    eq = onecut.equilibrium("poly:0,0,0.5")
    assert abs(eq["a"] + 2) < Decimal("1e-25")
    assert abs(eq["b"] - 2) < Decimal("1e-25")
    assert eq["regular"] is True
    rows = onecut.recurrence("poly:0,0,0.5", 6, threads=1)
    assert [n for n, _, _ in rows] == list(range(1, 7))
    for _, a, b in rows:
        assert abs(a - 1) < Decimal("1e-25")
        assert abs(b) < Decimal("1e-25")


def test_jacobi_beta1():
    values = onecut.beta1("jacobi:1,2")
    assert abs(values["closed"] + Decimal("0.048")) < Decimal("1e-25")
    assert abs(values["via_R"] - values["closed"]) < Decimal("1e-20")


def test_errors_surface_as_exceptions():
    with pytest.raises(onecut.OnecutError):
        onecut.recurrence("poly:0,0,-1.5,0,0.25", 4)
    with pytest.raises(onecut.OnecutError):
        onecut.equilibrium("poly:1,2")


def test_in_process_cli():
    code, out, err = onecut.run(["eqm", "--potential", "jacobi:1,2"])
    assert code == 0
    assert err == ""
    assert json.loads(out)["regular"] is True
    code, out, err = onecut.run(["rec", "--n-max", "0"])
    assert code == 2
    assert out == ""
    assert "ConfigError" in err
