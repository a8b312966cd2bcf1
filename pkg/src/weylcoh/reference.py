"""Published multiplicity tables used for verification.

Each table maps a space identifier to a list of rows (one per cohomological
degree) of irreducible multiplicities, in the column order given by
``E6_COLUMNS``, ``S6_COLUMNS`` or ``S5_COLUMNS``.
"""

E6_COLUMNS = [
    "phi_{1}^{0}", "phi_{1}^{36}", "phi_{6}^{25}", "phi_{6}^{1}", "phi_{10}^{9}",
    "phi_{15}^{17}", "phi_{15}^{16}", "phi_{15}^{5}", "phi_{15}^{4}", "phi_{20}^{20}",
    "phi_{20}^{2}", "phi_{20}^{10}", "phi_{24}^{12}", "phi_{24}^{6}", "phi_{30}^{15}",
    "phi_{30}^{3}", "phi_{60}^{11}", "phi_{60}^{5}", "phi_{60}^{8}", "phi_{64}^{13}",
    "phi_{64}^{4}", "phi_{80}^{7}", "phi_{81}^{6}", "phi_{81}^{10}", "phi_{90}^{8}",
]

S6_COLUMNS = [
    "s_{6}", "s_{1^6}", "s_{2,1^4}", "s_{5,1}", "s_{2^3}", "s_{3^2}",
    "s_{2^2,1^2}", "s_{4,2}", "s_{3,1^3}", "s_{4,1^2}", "s_{3,2,1}",
]

S5_COLUMNS = ["s_{5}", "s_{1^5}", "s_{4,1}", "s_{2,1^3}", "s_{3,2}", "s_{2^2,1}", "s_{3,1^2}"]


def _join(left, right):
    return [a + b for a, b in zip(left, right)]


E6_TABLES = {
    "D3n": _join(
        [[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
         [1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0],
         [0, 0, 0, 0, 0, 0, 0, 1, 2, 0, 2, 0, 0],
         [0, 0, 0, 1, 1, 0, 0, 4, 2, 0, 3, 1, 1],
         [0, 0, 0, 3, 6, 3, 1, 8, 4, 1, 8, 5, 4],
         [1, 0, 2, 5, 7, 9, 8, 11, 11, 9, 17, 13, 13],
         [2, 1, 2, 3, 2, 8, 14, 8, 15, 13, 16, 15, 19]],
        [[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
         [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
         [0, 0, 1, 0, 1, 1, 0, 2, 0, 2, 0, 0],
         [2, 0, 6, 2, 6, 4, 1, 9, 7, 9, 3, 7],
         [8, 7, 17, 14, 23, 15, 13, 26, 31, 27, 20, 31],
         [18, 17, 23, 37, 45, 40, 38, 48, 55, 56, 52, 61],
         [21, 11, 12, 32, 34, 44, 36, 39, 37, 54, 53, 49]]),
    "D3c": _join(
        [[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
         [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0],
         [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0],
         [0, 0, 0, 1, 1, 0, 0, 3, 1, 0, 2, 1, 1],
         [0, 0, 0, 2, 3, 2, 1, 4, 2, 1, 5, 3, 3],
         [0, 0, 1, 2, 1, 3, 4, 3, 5, 4, 6, 6, 6]],
        [[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
         [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
         [0, 0, 1, 0, 1, 1, 0, 2, 0, 2, 0, 0],
         [2, 0, 4, 2, 5, 3, 1, 6, 6, 6, 3, 6],
         [5, 5, 9, 10, 14, 10, 9, 15, 17, 16, 13, 19],
         [7, 5, 6, 13, 15, 16, 14, 17, 17, 21, 20, 20]]),
    "D3_2n_hat": _join(
        [[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0],
         [1, 0, 0, 1, 0, 0, 0, 0, 2, 0, 3, 0, 0],
         [0, 0, 0, 0, 0, 0, 1, 2, 5, 0, 5, 2, 0],
         [0, 0, 0, 2, 2, 2, 3, 8, 7, 2, 9, 8, 1],
         [0, 0, 3, 6, 9, 8, 6, 13, 8, 9, 14, 12, 1],
         [0, 0, 4, 5, 9, 8, 4, 9, 4, 8, 9, 8, 0]],
        [[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
         [1, 0, 1, 0, 2, 1, 0, 2, 0, 1, 0, 0],
         [2, 0, 4, 1, 6, 3, 0, 8, 1, 8, 2, 3],
         [2, 4, 12, 8, 14, 6, 7, 20, 10, 19, 9, 16],
         [1, 19, 26, 26, 30, 11, 25, 34, 33, 28, 22, 36],
         [0, 21, 23, 26, 27, 9, 25, 27, 36, 22, 21, 35]]),
    "D3_tn": _join(
        [[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0],
         [0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 2, 0, 0],
         [0, 0, 0, 0, 0, 0, 1, 1, 3, 0, 3, 1, 1],
         [0, 0, 0, 2, 2, 2, 2, 5, 3, 2, 5, 5, 5],
         [0, 0, 1, 2, 3, 3, 2, 4, 2, 3, 4, 4, 4]],
        [[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
         [1, 0, 1, 0, 2, 1, 0, 2, 0, 1, 0, 0],
         [3, 0, 3, 2, 6, 5, 1, 7, 4, 9, 5, 5],
         [6, 3, 7, 10, 13, 13, 10, 16, 16, 18, 15, 19],
         [4, 7, 9, 13, 14, 11, 13, 15, 20, 17, 16, 21]]),
    "D3_3n_hat": _join(
        [[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
         [2, 0, 0, 1, 0, 0, 1, 0, 3, 0, 5, 0, 0],
         [2, 0, 0, 3, 0, 1, 7, 1, 12, 4, 14, 3, 5],
         [3, 2, 2, 5, 1, 9, 21, 8, 26, 19, 28, 16, 24],
         [3, 3, 4, 5, 3, 15, 26, 14, 28, 27, 30, 25, 35]],
        [[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
         [4, 0, 0, 2, 0, 3, 0, 3, 0, 2, 2, 0],
         [12, 0, 3, 15, 7, 21, 7, 18, 6, 20, 17, 8],
         [32, 7, 13, 49, 37, 65, 40, 53, 36, 70, 67, 51],
         [39, 17, 20, 64, 58, 83, 65, 70, 62, 97, 97, 85]]),
    "D3_tp": _join(
        [[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
         [1, 0, 0, 1, 0, 0, 1, 0, 3, 0, 4, 0, 0],
         [1, 0, 0, 2, 0, 1, 5, 0, 8, 3, 9, 3, 3],
         [1, 1, 1, 2, 1, 5, 8, 5, 10, 8, 11, 7, 11]],
        [[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
         [3, 0, 0, 0, 2, 3, 0, 3, 0, 2, 2, 0],
         [8, 0, 3, 5, 12, 16, 6, 14, 6, 15, 13, 7],
         [14, 4, 7, 18, 23, 27, 18, 23, 18, 31, 30, 26]]),
}

S5_TABLES = {
    "D4n": [[1, 0, 0, 0, 0, 0, 0], [1, 0, 0, 1, 0, 1, 0], [0, 0, 0, 2, 1, 2, 2],
            [0, 0, 1, 3, 2, 3, 4], [1, 0, 3, 5, 4, 5, 6], [2, 1, 4, 5, 6, 6, 6]],
    "D4c": [[1, 0, 0, 0, 0, 0, 0], [0, 0, 0, 1, 1, 0, 0], [0, 0, 0, 1, 1, 1, 2],
            [0, 0, 1, 1, 1, 1, 1]],
    "D4_2n_A4": [[1, 0, 0, 0, 0, 0, 0], [1, 0, 0, 2, 1, 0, 0], [1, 0, 0, 4, 4, 2, 4],
                 [1, 0, 4, 6, 7, 6, 8], [1, 1, 4, 4, 5, 5, 6]],
    "D4_tn_A4": [[1, 0, 0, 0, 0, 0, 0], [0, 0, 0, 1, 1, 0, 0], [0, 0, 0, 1, 1, 1, 2],
                 [0, 0, 1, 1, 1, 1, 1]],
    "D4_2n_D4": [[1, 0, 0, 1, 0, 0, 0], [1, 0, 0, 2, 2, 1, 1], [0, 0, 1, 3, 4, 2, 4],
                 [1, 0, 3, 5, 5, 4, 7], [2, 1, 4, 5, 6, 6, 6]],
    "D4_tn_D4": [[1, 0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 2, 1, 1], [0, 0, 1, 2, 2, 1, 3],
                 [1, 0, 1, 2, 2, 2, 2]],
    "D4_3n": [[1, 0, 0, 1, 0, 0, 0], [1, 0, 0, 3, 3, 1, 2], [1, 0, 3, 5, 6, 5, 7],
              [1, 1, 4, 4, 5, 5, 6]],
    "D4_tp": [[1, 0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 2, 1, 1], [0, 0, 1, 1, 1, 1, 2]],
    "D4_4n": [[1, 0, 0, 2, 0, 1, 1], [1, 0, 2, 4, 4, 5, 5], [1, 1, 4, 4, 5, 5, 6]],
}

# Equivariant point counts as polynomials in q (coefficients from q^0 up),
# keyed by cycle type.
S5_COUNTS = {
    (5,): [1, 0, 1],
    (4, 1): [0, 1, 1],
    (3, 2): [0, -1, 1],
    (3, 1, 1): [0, 1, 1],
    (2, 2, 1): [-2, -1, 1],
    (2, 1, 1, 1): [0, -1, 1],
    (1, 1, 1, 1, 1): [6, -5, 1],
}

S6_COUNTS = {
    (6,): [0, 0, 0, -1, 1],
    (5, 1): [0, 0, 1, 0, 1],
    (4, 2): [-2, -1, -1, -1, 1],
    (4, 1, 1): [0, -1, -1, 1, 1],
    (3, 3): [12, -2, 0, -3, 1],
    (3, 2, 1): [0, 1, 0, -2, 1],
    (3, 1, 1, 1): [0, 1, 0, 0, 1],
    (2, 2, 2): [0, 3, -3, -1, 1],
    (2, 2, 1, 1): [6, 7, -3, -3, 1],
    (2, 1, 1, 1, 1): [0, -5, 9, -5, 1],
    (1, 1, 1, 1, 1, 1): [150, -185, 81, -15, 1],
}

# Traces of H^0, H^1, H^2 of five points in general position, by cycle type.
S5_TRACES = {
    (1, 1, 1, 1, 1): [1, 5, 6],
    (2, 1, 1, 1): [1, 1, 0],
    (2, 2, 1): [1, 1, -2],
    (3, 1, 1): [1, -1, 0],
    (3, 2): [1, 1, 0],
    (4, 1): [1, -1, 0],
    (5,): [1, 0, 1],
}

S6_MULTIPLICITIES = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 1, 1, 2, 2],
    [0, 0, 0, 1, 1, 1, 2, 2, 3, 4, 4],
    [1, 1, 1, 1, 3, 3, 2, 2, 2, 2, 2],
]

# Cohomology of the moduli space of smooth cubic surfaces.
D3_COHOMOLOGY = {
    0: {"phi_{1}^{0}": 1},
    1: {"phi_{15}^{4}": 1},
    2: {"phi_{81}^{6}": 1},
    3: {"phi_{15}^{5}": 1, "phi_{80}^{7}": 1, "phi_{90}^{8}": 1},
    4: {"phi_{10}^{9}": 1, "phi_{80}^{7}": 1, "phi_{30}^{3}": 1, "phi_{30}^{15}": 1},
}

D3_H3_CANDIDATES = [
    {"phi_{15}^{5}": 1, "phi_{90}^{8}": 1, "phi_{20}^{10}": 1, "phi_{60}^{8}": 1},
    {"phi_{15}^{5}": 1, "phi_{90}^{8}": 1, "phi_{80}^{7}": 1},
]

# The eight candidates for H^4, each in addition to phi_{10}^{9}.
_H4_REST = [
    ("phi_{80}^{7}", "phi_{30}^{3}", "phi_{30}^{15}"),
    ("phi_{80}^{7}", "phi_{15}^{4}", "phi_{15}^{5}", "phi_{15}^{16}", "phi_{15}^{17}"),
    ("phi_{80}^{7}", "phi_{30}^{15}", "phi_{15}^{4}", "phi_{15}^{5}"),
    ("phi_{80}^{7}", "phi_{30}^{3}", "phi_{15}^{16}", "phi_{15}^{17}"),
    ("phi_{60}^{8}", "phi_{20}^{10}", "phi_{30}^{15}", "phi_{15}^{4}", "phi_{15}^{5}"),
    ("phi_{60}^{8}", "phi_{20}^{10}", "phi_{30}^{3}", "phi_{15}^{16}", "phi_{15}^{17}"),
    ("phi_{60}^{8}", "phi_{20}^{10}", "phi_{15}^{4}", "phi_{15}^{5}", "phi_{15}^{16}", "phi_{15}^{17}"),
    ("phi_{60}^{8}", "phi_{20}^{10}", "phi_{30}^{3}", "phi_{30}^{15}"),
]
D3_H4_CANDIDATES = [dict({"phi_{10}^{9}": 1}, **{c: 1 for c in rest}) for rest in _H4_REST]

D4_COHOMOLOGY = {0: "phi_{1}^{0}", 1: "phi_{5}^{4}", 2: "phi_{6}^{6}"}


def as_vector(mults: dict, columns=E6_COLUMNS) -> list[int]:
    return [int(mults.get(c, 0)) for c in columns]


# Betti numbers quoted alongside the tables.
D3N_BETTI = [1, 36, 525, 3960, 16299, 34884, 30695]
P5_BETTI = [1, 5, 6]
FIBRE_BETTI = [1, 10, 25]
P6_BETTI = [1, 15, 81, 185, 150]

# H^4 candidates left after the signed Euler filter.
D3_H4_AFTER_SIGNED = [D3_H4_CANDIDATES[i] for i in (0, 1, 6, 7)]
