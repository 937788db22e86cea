"""Smoke test for the laurent_ore extension module.

Build it first with `pip install --no-build-isolation -e crates/python`.
"""

import json
import pathlib
import sys

import laurent_ore

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def load(name):
    return laurent_ore.System((FIXTURES / name).read_text())


def main():
    s = load("example1_associated.json")
    assert s.maps == ["sn"] and s.dim == 3
    rep = s.solve()
    doc = json.loads(rep.to_json())
    certs = sorted(g["certificate"]["sn"] for g in doc["groups"])
    assert certs == ["n", "x"], certs
    assert s.verify(rep.to_json()) == [True, True]

    broken = json.loads(rep.to_json())
    broken["groups"][0]["vectors"][0][0] = "n^5"
    assert s.verify(json.dumps(broken))[0] is False

    assert s.iso({"sn": "1/n"}, {"sn": "1/x"}) is None
    assert s.iso({"sn": "1/n"}, {"sn": "1/(n+1)"}) is not None

    s3 = load("example3_structure.json")
    rep3 = s3.solve(order=["dy", "sk", "dx"])
    assert len(rep3) == 1
    cert = json.loads(rep3.to_json())["groups"][0]["certificate"]
    print("example 3 certificate:", cert)

    text = (FIXTURES / "example2_associated.json").read_text().replace('"1/y"', '"1/(y"', 1)
    try:
        laurent_ore.System(text)
    except laurent_ore.ParseError as e:
        assert "line" in str(e)
    else:
        raise AssertionError("malformed entry accepted")

    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
