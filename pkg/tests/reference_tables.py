"""Frozen reference values for the estimate tables (printed to 3 decimals).

TABLE2[(n, x)] is the binomial-model iterative Bayes estimate for x successes
in n trials; TABLE3[x] the geometric-model estimate for x successes before the
first failure.  Printed values are rounded, so comparisons use 5e-4.
"""

_TABLE2_ROWS = {
    1: (0.382, 0.618),
    2: (0.309, 0.5, 0.691),
    3: (0.259, 0.419, 0.581, 0.741),
    4: (0.223, 0.361, 0.5, 0.639, 0.777),
    5: (0.195, 0.317, 0.439, 0.561, 0.683, 0.805),
    6: (0.174, 0.282, 0.391, 0.5, 0.609, 0.718, 0.826),
    7: (0.157, 0.254, 0.352, 0.451, 0.549, 0.648, 0.746, 0.843),
    8: (0.143, 0.231, 0.321, 0.410, 0.5, 0.590, 0.679, 0.769, 0.857),
    9: (0.131, 0.212, 0.294, 0.377, 0.459, 0.541, 0.623, 0.706, 0.788, 0.869),
    10: (0.121, 0.196, 0.272, 0.348, 0.424, 0.5, 0.576, 0.652, 0.728, 0.804, 0.879),
}

TABLE2 = {(n, x): v for n, row in _TABLE2_ROWS.items() for x, v in enumerate(row)}

TABLE3 = (0.382, 0.5, 0.581, 0.639, 0.683, 0.718, 0.746, 0.769, 0.788, 0.804)

PRINT_TOL = 5e-4
