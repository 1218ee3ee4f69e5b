"""Smoke test for the goodred extension module.

Build and install first, e.g.  pip install maturin && maturin develop -m crates/py/Cargo.toml
"""

from fractions import Fraction

import goodred


def main():
    g = goodred.PermutationGroup.pgl2(19)
    assert g.degree == 20
    assert g.order() == 6840

    prof = g.profile(5)
    assert prof.p_valuation == 1 and prof.sylow_cyclic
    assert prof.m_invariant == 2 and prof.order_p_class_count == 2
    assert prof.center_exponent == 1
    assert prof == goodred.family_profile("pgl", p=5, m=2, q=19)

    v = goodred.decide(prof, e=1)
    assert v.status == "PotentiallyGood" and v.good_reduction_outright
    assert goodred.decide(prof, e=2).status == "Inconclusive"

    s3 = goodred.PermutationGroup(3, ["(0 1 2)", [1, 0, 2]])
    assert s3.profile(3).to_dict()["m_invariant"] == 2

    tails = goodred.enumerate_tails(3, 4, 3, max_new=2)
    assert len(tails) == 2
    assert all(Fraction(t["fractional_sum"]) == 1 for t in tails)
    assert goodred.enumerate_tails(3, 2, 3, max_new=2) == []

    k = goodred.kummer_check(3, 7, [(0, 1), (1, 1), (2, 1)])
    assert k["multiplicative_type"] and not k["is_mth_power"]

    c = goodred.conductor(3, "-6:1,-2:2,-1:1")
    assert c["conductor"] == 1 and c["kind"] == "ramified"

    u = "17/3"
    v_ = goodred.herbrand_phi([2, 5], [9, 3], u)
    assert goodred.herbrand_psi([2, 5], [9, 3], v_) == u
    assert goodred.upper_jumps([4], [5]) == ["4/1"]

    assert goodred.classify_dvf(5, 1, 4, 0, False, True) == "MuType"
    assert goodred.classify_dvf(5, 2, 4, 1, True, False, uniformizer_index=25) == "NaivelyRamified"

    qs = [r["q"] for r in goodred.search_examples(2, 5, 100)]
    assert qs == [4, 9, 19, 29, 49, 59, 64, 79, 89], qs

    try:
        goodred.PermutationGroup.symmetric(7).order(cap=100)
    except goodred.CapExceeded:
        pass
    else:
        raise AssertionError("cap not enforced")

    try:
        goodred.search_examples(2, 3, 100)
    except ValueError:
        pass
    else:
        raise AssertionError("invalid parameters accepted")

    print("goodred smoke test passed")


if __name__ == "__main__":
    main()
