"""Functors on balanced projectives, traced through a word and back down to K0."""

from arcring.k0 import k0_space, verify_qrel, word_operator
from arcring.planar import Matching
from arcring.slnaction import ProjectiveOrbit, Weight, monomial_presentation, parse_word, verify_relation, word_str

word = parse_word("F2 F4^(2) F3^(2) F5 F1 F4 F2 F3")
start = ProjectiveOrbit.highest(6, 3)
print("start:", start)
for j in range(len(word) - 1, -1, -1):
    start = start.apply(word[j])
    print(f"after {word[j]}:", start)

lam = Weight((1, 1, 1, 0, 2, 1))
a = Matching.from_arcs(lam.s, [(1, 6), (2, 3)])
print("\nshortest word reaching the same projective:", word_str(monomial_presentation(lam, a)))

space = k0_space(6, 3)
cls = word_operator(word, 6, 3)(space.highest())
print("class of the result in K0:", {f"{k[0]}; {k[1]}": str(c) for k, c in cls.coords.items()})

for rel in ("E-F-cartan", "E-serre", "E-divided"):
    rep = verify_relation(rel, 4, 2)
    print(f"{rel} at n=4, k=2: {rep.cases_checked} cases, {len(rep.mismatches)} mismatches")
print("quantum relations at n=4, k=2 hold:", verify_qrel(4, 2).ok)
