"""A short tour of crossingless matchings and the arc ring H^m."""

from arcring.arc_ring import arc_ring, projective_degrees
from arcring.planar import catalan, enumerate_matchings

for m in range(6):
    print(f"m={m}: {len(enumerate_matchings(m))} matchings (Catalan {catalan(m)})")

ring = arc_ring(2)
print("\nH^2 matchings:", [str(a) for a in ring.matchings])
print("graded dimension of H^2:", ring.graded_dim())

# the two off-diagonal blocks are single circles; their product merges and then splits
u = ring.basis_element((0, 1, (0,)))
v = ring.basis_element((1, 0, (0,)))


def show(x):
    return " + ".join(f"{c}*{'.'.join('X' if lab else '1' for lab in key[2])}[{key[0]},{key[1]}]" for key, c in sorted(x.terms.items()))


print("u * v =", show(u * v))
print("v * u =", show(v * u))

for a in range(len(ring.matchings)):
    print(f"graded dimension of the balanced projective on {ring.matchings[a]}:", projective_degrees(ring, a))
