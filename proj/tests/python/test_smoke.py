"""Smoke tests for the python bindings (run via ctest with PYTHONPATH set)."""

import kwlie


def main():
    # family build + validation round trip
    alg = kwlie.family(2, 1, 3, "L")
    v = kwlie.validate(alg)
    assert v["ok"], v
    assert v["dim"] == 5

    bad = kwlie.validate("{ not json")
    assert not bad["ok"]

    # exact index
    idx = kwlie.index(alg)
    assert idx["dim"] == 5
    assert idx["ind"] == 3
    assert idx["kw1_exponent"] == 1

    lp = kwlie.family(2, 1, 3, "Lprime")
    assert kwlie.index(lp)["ind"] == 1

    # restricted closure and restrictability
    cd = kwlie.closure_dims(alg)
    assert cd["ad_dim"] == 3
    assert cd["closure_dim"] == 4
    r = kwlie.restrictable(alg)
    assert not r["restrictable"]
    assert r["witness"] == "D"
    assert kwlie.restrictable(lp)["restrictable"]

    # enveloping-algebra isomorphism witness
    iso = kwlie.iso_check(2, 1, 3)
    assert iso["pass"], iso

    # chop the reduced regular module at the all-ones character
    chop = kwlie.chop_regular(alg, ["1"] * 5, seed=7)
    assert chop["module_dim"] == 64
    assert chop["max_abs_dim"] == 4
    assert sum(f["dim"] * f["mult"] for f in chop["factors"]) == 64

    # the desk-scale sweep reproduces the counterexample
    sweep = kwlie.kw1_sweep(2, 1, 3, seed=5, random_ext_count=5)
    assert sweep["reduced_dim"] == 32
    assert sweep["kw1_predicted"] == 2
    assert sweep["max_abs_simple_dim"] == 4
    assert sweep["verdict"].startswith("KW1 FAILS"), sweep["verdict"]
    assert sweep["ind"] == 3
    assert sweep["ind_lprime"] == 1

    # CLI pass-through
    code, out = kwlie.run_cli(["restrictable", "/nonexistent"])
    assert code == 1 and out.startswith("error: ParseError:")
    code, out = kwlie.run_cli(["index", "--help"])
    assert code == 0

    # library errors surface as KwlieError
    try:
        kwlie.family(2, 1, 2, "L")
    except kwlie.KwlieError as e:
        assert "BadK" in str(e)
    else:
        raise AssertionError("BadK not raised")

    print("python smoke tests passed")


if __name__ == "__main__":
    main()
