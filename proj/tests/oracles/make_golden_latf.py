# Golden latent file: one row from the first 3200 bits of e, label 7.
# Scalar reference using exact rationals, then IEEE single rounding.
from fractions import Fraction
import struct
import numpy as np

bits = open("../data/e_1e6.bin", "rb").read()[:400]
words = [int.from_bytes(bits[4 * i : 4 * i + 4], "big") for i in range(100)]
vals = [np.float32(float(Fraction(2 * w, 2**32 - 1) - 1)) for w in words]
label = 7
onehot = [np.float32(1.0 if c + 1 == label else 0.0) for c in range(10)]
out = b"LATF" + struct.pack("<HII", 1, 1, 110)
out += b"".join(struct.pack("<f", v) for v in vals + onehot)
out += bytes([label])
open("../data/golden_e3200.latf", "wb").write(out)
