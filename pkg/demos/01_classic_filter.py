"""
Classic Bloom filter basics
===========================

Build a small filter, watch it answer membership queries, and check the
measured false-positive rate against the closed form.
"""

from yesnobf import BloomFilter, FilterShape, fp_prob_exact

# a 256-bit filter with 6 hash functions, seeded so every run agrees
bf = BloomFilter(256, 6, seed=42)
words = ["heron", "egret", "ibis", "stork", "spoonbill"]
for w in words:
    bf.insert(w)

# members always answer yes; that is the structure's one hard guarantee
print("members:", [bf.contains(w) for w in words])

# non-members usually answer no, occasionally yes: the false positives
probes = [f"probe-{i}" for i in range(20_000)]
hits = sum(1 for w in probes if bf.contains(w))
rate = hits / len(probes)

# the closed form for this (bits, hashes, inserted) shape
expected = fp_prob_exact(FilterShape(256, 6, len(words)))
print(f"measured FP rate {rate:.6f} vs closed form {expected:.6f}")

# the rate is a property of the shape: more inserts, more false positives
for extra in (10, 30, 50):
    heavier = BloomFilter(256, 6, seed=42)
    for i in range(extra):
        heavier.insert(f"bird-{i}")
    crowd = sum(1 for w in probes if heavier.contains(w)) / len(probes)
    print(f"{extra:2d} inserted: measured {crowd:.4f}, "
          f"closed form {fp_prob_exact(FilterShape(256, 6, extra)):.4f}")
