# # When is C_(a,a,a)(n) positive?
#
# Positivity is decided by finitely many local factors, so each base has a
# periodic set of admissible n mod lcm(6, |Delta_a|).

# In[1]:

from artin_goldbach import artin_spec, congruence_table

for a in (-3, -4, 5, 3, 27, -15, -3375, -759375, 2, 216, 759375):
    s = artin_spec(a)
    M, res = congruence_table(a)
    shown = res if len(res) <= 10 else res[:10] + ("...",)
    print(f"a = {a:>8}  Delta = {s.delta:>4}  h = {s.h}  mod {M}: {shown}")

# # No per-prime splitting for (-15)^5
#
# sigma(15) vanishes at n = 7 although 7 has good local representations mod 3
# and mod 5 separately.

# In[2]:

from artin_goldbach import nonfactorization_witness

for key, val in nonfactorization_witness().items():
    print(key, val)
