"""Published values the engine must reproduce, frozen as literals."""

# partitions of 20 into exactly m parts, m = 1..20
P15_AT_20 = [0, 4, 0, 5, 4, 2, 4, 1, 2, 2, 1, 2, 0, 1, 1, 0, 1, 0, 0, 1]  # parts ≡ ±1 (mod 5)
P25_AT_20 = [0, 4, 0, 5, 3, 2, 3, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]  # parts ≡ ±2 (mod 5)

# p_n(s) for the distinct-parts difference with M=8, a=1, b=3: {power of s: coefficient}
P_138 = {
    320: {8: 15, 10: 3},
    321: {1: 1, 3: 273, 5: 3705, 7: 8355, 9: 3872, 11: 249},
    322: {4: 127, 6: 1424, 8: 2367, 10: 614, 12: 10},
    323: {1: -1, 3: -267, 5: -3380, 7: -6858, 9: -2775, 11: -161},
    324: {4: 3, 6: 123, 8: 391, 10: 141, 12: 2},
    325: {1: -1, 3: -280, 5: -3862, 7: -8729, 9: -4010, 11: -266},
    326: {4: -127, 6: -1375, 8: -2154, 10: -548, 12: -10},
    327: {1: 1, 3: 273, 5: 3582, 7: 7728, 9: 3474, 11: 228},
}

# residue r -> sign of every coefficient of p_{8n+r}(s)
SIGNS_138 = ["+", "+", "+", "-", "+", "-", "-", "+"]

# (M, a, b) -> residues r believed nonnegative, beyond the proved ones
TABLE2 = {
    (12, 1, 5): [3, 4],
    (16, 1, 5): [4],
    (16, 1, 7): [3, 4, 6],
    (16, 3, 7): [12, 15],
    (18, 1, 7): [3, 5, 6],
    (20, 1, 9): [3, 4, 5, 6, 8],
    (20, 3, 7): [4, 15],
    (20, 3, 9): [1, 12, 15],
    (24, 1, 5): [6],
    (24, 1, 7): [4, 8, 9],
    (24, 1, 11): [3, 4, 5, 6, 8, 10],
    (24, 5, 11): [1, 6, 16, 20, 21],
    (24, 7, 11): [8, 18],
}


def dense(poly: dict[int, int]) -> list[int]:
    out = [0] * (max(poly) + 1)
    for d, c in poly.items():
        out[d] = c
    return out
