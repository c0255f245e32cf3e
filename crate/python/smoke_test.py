"""Smoke test for the mnlogic_py extension module.

Build and install first:  pip install ./crates/py
"""

import mnlogic_py as m

s = m.parse("p & ~p |- q")
assert str(s) == "p & ~p |- q"
assert s.dual().render() == "q |- p | ~p"

assert m.prove(s)["result"] == "proved"

r = m.prove("p & (q | r) |- p & q | p & r", logic="nfl")
assert r["result"] == "refuted", r["result"]
assert set(r["countermodel"]) == {"p", "q", "r"}

c5 = "(p|q)&(q|r)&(r|s)&(s|t)&(t|p) |- p&q|q&r|r&s|s&t|t&p"
assert m.prove(c5, lattice="m2")["result"] == "unrealised"
assert m.prove(c5, lattice="m2", mode="semantic")["result"] == "proved"

eq3 = m.gen_eq3()
assert m.entails(eq3, lattice="m3")
bad = m.check(eq3, lattice="m4")
assert not bad["valid"] and "countermodel" in bad

assert m.gen_dn(2).render_compact() == "(p1|p2)&(p1|p3) |- p1|(p2&p3)"
assert m.lattice_info("ladder5")["demorgan_negations"] == []
assert len(m.corpus_entries()) > 50

try:
    m.parse("p &")
except ValueError:
    pass
else:
    raise AssertionError("parse error not raised")

print("smoke test ok")
