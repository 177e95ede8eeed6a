"""Published triple tables, transcribed for round-trip checks."""

from twotier.crossval import MeanCI, TripleRecord

# (f1, f2, s, S_cv, t_inter_mean, t_elim_mean)
BOS_TRIPLES = [
    ("INDUS", "RM", "CRIM", 1.24, 0.214, 0.264),
    ("INDUS", "DIS", "CRIM", 1.25, 0.213, 0.265),
    ("CHAS", "TAX", "CRIM", 2.81, 0.095, 0.257),
    ("RM", "TAX", "CRIM", 1.32, 0.212, 0.281),
    ("RM", "PTRATIO", "CRIM", 1.10, 0.213, 0.234),
    ("DIS", "TAX", "CRIM", 1.24, 0.212, 0.261),
    ("DIS", "PTRATIO", "CRIM", 1.31, 0.215, 0.280),
    ("DIS", "B", "CRIM", 1.24, 0.210, 0.258),
    ("INDUS", "RM", "AGE", 1.65, 0.161, 0.264),
    ("CHAS", "TAX", "AGE", 1.24, 0.209, 0.257),
    ("RM", "RAD", "AGE", 1.43, 0.154, 0.220),
    ("RM", "TAX", "AGE", 1.57, 0.180, 0.281),
]

DIA_TRIPLE = ("Preg-s", "DiabPedigree", "Age", 24.77, 0.00341, 0.06271)


def as_records(rows):
    """Records carrying only the printed columns (interval widths unknown)."""
    out = []
    for i, (_, _, _, s_cv, t_inter, t_elim) in enumerate(rows):
        out.append(TripleRecord(i, i + 1, i + 2, MeanCI(t_inter, t_inter, t_inter),
                                MeanCI(t_elim, t_elim, t_elim), s_cv, s_cv, s_cv))
    return out
