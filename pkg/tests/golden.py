"""Hand-transcribed Brion graphs G_2 and G_3: (vertex, vertex, label, multiplicity)."""

G2_VERTICES = {"0", "x2^2", "x1*x2", "x1^2", "x1^2 + x1*x2"}

G2_EDGES = {
    ("x2^2", "x1^2", 1, 1),
    ("x1*x2", "x1^2 + x1*x2", 1, 2),
}

G3_VERTICES = {
    "0", "x3^2", "x2^2", "x1^2", "x2*x3", "x1*x3", "x2^2 + x2*x3", "x1*x2",
    "x1^2 + x1*x3", "x1^2 + x1*x2", "x1^2 + x2*x3", "x1*x3 + x2^2",
    "x1*x2 + x3^2", "x1^2 + x1*x2 + x3^2", "x1^2 + x1*x3 + x2^2",
}

G3_EDGES = {
    ("x3^2", "x2^2", 2, 1),
    ("x2^2", "x1^2", 1, 1),
    ("x2*x3", "x1*x3", 1, 1),
    ("x1*x3", "x1*x2", 2, 1),
    ("x1*x2", "x1^2 + x1*x2", 1, 2),
    ("x1^2 + x1*x2", "x1^2 + x1*x3", 2, 1),
    ("x1^2 + x1*x3", "x2^2 + x2*x3", 1, 1),
    ("x2*x3", "x2^2 + x2*x3", 2, 2),
    ("x1*x3 + x2^2", "x1*x2 + x3^2", 2, 1),
    ("x1*x2 + x3^2", "x1^2 + x1*x2 + x3^2", 1, 2),
    ("x1^2 + x1*x2 + x3^2", "x1^2 + x1*x3 + x2^2", 2, 1),
    ("x1^2 + x2*x3", "x1^2 + x1*x3 + x2^2", 1, 1),
    ("x1^2 + x1*x3 + x2^2", "x1*x3 + x2^2", 1, 1),
}


def canonical(edges):
    return {(frozenset((a, b)), lab, mult) for a, b, lab, mult in edges}
