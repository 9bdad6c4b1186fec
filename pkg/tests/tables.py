"""Good maximal element tables for the exceptional types.

Each row: (d, representatives, count, I, group).  ``representatives`` holds
alternatives separated by "|": a word, "word^k" for a power in W,
"(word)^k" for a power of w phi, "w0" or "e".  ``I`` lists 1-based nodes;
``group`` names N_W(V)/C_W(V), whose order is the product of its degrees.
"""

from __future__ import annotations

from math import prod

# degrees of the complex reflection groups named in the tables
GROUP_DEGREES = {
    "G4": (4, 6), "G5": (6, 12), "G8": (8, 12), "G9": (8, 24), "G10": (12, 24),
    "G12": (6, 8), "G16": (20, 30), "G20": (12, 30), "G22": (12, 20),
    "G25": (6, 9, 12), "G26": (6, 12, 18), "G31": (8, 12, 20, 24), "G32": (12, 18, 24, 30),
    "G2": (2, 6), "I2(8)": (2, 8), "H3": (2, 6, 10), "H4": (2, 12, 20, 30),
    "F4": (2, 6, 8, 12), "E6": (2, 5, 6, 8, 9, 12), "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
}


def group_order(name: str) -> int:
    if name.startswith("Z"):
        return int(name[1:])
    return prod(GROUP_DEGREES[name])


TABLES = {
    "H3": [
        (10, "123", 4, [], "Z10"),
        (6, "32121", 6, [], "Z6"),
        (5, "123^2", 4, [], "Z10"),
        (3, "32121^2", 6, [], "Z6"),
        (2, "w0", 1, [], "H3"),
        (1, "e", 1, [], "H3"),
    ],
    "H4": [
        (30, "1234", 8, [], "Z30"),
        (20, "432121", 12, [], "Z20"),
        (15, "1234^2", 8, [], "Z30"),
        (12, "2121432123", 22, [], "Z12"),
        (10, "1234^3|432121^2", 24, [], "G16"),
        (6, "1234^5|2121432123^2", 40, [], "G20"),
        (5, "1234^6|432121^4", 24, [], "G16"),
        (4, "432121^5|2121432123^3", 60, [], "G22"),
        (3, "1234^10|2121432123^4", 40, [], "G20"),
        (2, "w0", 1, [], "H4"),
        (1, "e", 1, [], "H4"),
    ],
    "3D4": [
        (12, "13", 6, [], "Z4"),
        (6, "1243", 8, [], "G4"),
        (3, "1243^2", 8, [], "G4"),
        (2, "w0", 1, [], "G2"),
        (1, "e", 1, [], "G2"),
    ],
    "F4": [
        (12, "1234", 8, [], "Z12"),
        (8, "214323", 14, [], "Z8"),
        (6, "1234^2", 16, [], "G5"),
        (4, "1234^3|214323^2", 12, [], "G8"),
        (3, "1234^4", 16, [], "G5"),
        (2, "w0", 1, [], "F4"),
        (1, "e", 1, [], "F4"),
    ],
    "2F4": [
        (24, "12", 6, [], "Z12"),
        (12, "3231", 10, [], "Z6"),
        (8, "(12)^3", 12, [], "G8"),
        (4, "(3231)^3", 24, [], "G12"),
        (2, "w0", 1, [], "I2(8)"),
        (1, "e", 1, [], "I2(8)"),
    ],
    "E6": [
        (12, "123654", 8, [], "Z12"),
        (9, "12342654", 24, [], "Z9"),
        (8, "123436543", 14, [], "Z8"),
        (6, "123654^2", 16, [], "G5"),
        (5, "24231454234565", 8, [3], "Z5"),
        (5, "12435423456543", 8, [4], "Z5"),
        (5, "12314235423654", 8, [5], "Z5"),
        (4, "123436543^2|123654^3", 12, [], "G8"),
        (3, "123654^4|12342654^3", 80, [], "G25"),
        (2, "w0", 1, [], "F4"),
        (1, "e", 1, [], "E6"),
    ],
    "2E6": [
        (18, "1234", 24, [], "Z9"),
        (12, "123654", 8, [], "Z12"),
        (10, "2431543", 8, [3], "Z5"),
        (10, "5423145", 8, [4], "Z5"),
        (10, "3143542", 8, [5], "Z5"),
        (8, "123436543", 14, [], "Z8"),
        (6, "(1234)^3", 80, [], "G25"),
        (4, "(123654)^3", 12, [], "G8"),
        (3, "123654^4", 16, [], "G5"),
        (2, "w0", 1, [], "E6"),
        (1, "e", 1, [], "F4"),
    ],
    "E7": [
        (18, "1234567", 64, [], "Z18"),
        (14, "123425467", 160, [], "Z14"),
        (12, "1342546576", 8, [2, 5, 7], "Z12"),
        (10, "134254234567", 8, [2, 4], "Z10"),
        (10, "243154234567", 8, [3, 4], "Z10"),
        (10, "124354265437", 8, [4, 5], "Z10"),
        (9, "1234567^2", 64, [], "Z18"),
        (8, "134234542346576", 14, [2, 5, 7], "Z8"),
        (7, "123425467^2", 160, [], "Z14"),
        (6, "1234567^3|1342546576^2", 800, [], "G26"),
        (5, "134254234567^2", 8, [2, 4], "Z10"),
        (5, "243154234567^2", 8, [3, 4], "Z10"),
        (5, "124354265437^2", 8, [4, 5], "Z10"),
        (4, "134234542346576^2|1342546576^3", 12, [2, 5, 7], "G8"),
        (3, "1234567^6|1342546576^4", 800, [], "G26"),
        (2, "w0", 1, [], "E7"),
        (1, "e", 1, [], "E7"),
    ],
}

# rows where N_{W'}(V)/C_{W'}(V) is a proper subgroup of N_W(V)/C_W(V)
MISMATCHES = {("2E6", 5), ("E7", 4), ("E7", 5), ("E8", 9)}

FAST_TYPES = ["H3", "H4", "3D4", "F4", "2F4", "E6", "2E6"]


def representative(W, text: str) -> bytes:
    """Group element w of the representative w phi."""
    if text == "e":
        return W.identity
    if text == "w0":
        return W.w0
    if text.startswith("("):
        word, k = text[1:].split(")^")
        return W.twisted_power((W.element(W.parse_word(word)), 1), int(k))[0]
    word, _, k = text.partition("^")
    x = W.element(W.parse_word(word))
    out = W.identity
    for _ in range(int(k or 1)):
        out = W.mul(out, x)
    return out
