"""Braid generators on K0 and the two-term complexes that lift them."""

from arcring.braid import check_complex, euler_agrees, sigma_complex
from arcring.k0 import braid_check, k0_space, sigma_k0
from arcring.slnaction import Weight

space = k0_space(2, 1)
s = sigma_k0(1, 2, 1)
for key in space.basis:
    print(f"sigma_1 on Q[{key[0]}; {key[1]}] ->", {f"{k[0]}; {k[1]}": str(c) for k, c in s.column(key).items()})

c = sigma_complex(1, Weight((1, 1)))
print("\nterms of the complex at (1,1):", [(t.degree, t.shift) for t in c.terms])
for src, img in sorted(c.differentials[0].items()):
    print(f"  d{src[2]} =", {tuple(int(x) for x in t[2]): v for t, v in img.items()} or 0)
print("bimodule map checks:", check_complex(c).checks)
print("Euler characteristic matches sigma_1:", all(euler_agrees(1, 2, 1).values()))

for n, k in ((3, 1), (4, 2), (5, 2)):
    print(f"braid relations at n={n}, k={k}:", braid_check(n, k).ok)
