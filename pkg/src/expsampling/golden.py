"""Reference values of the series at the three jumps of the piecewise test signal.

Keys are the jump ids accepted by the CLI; every entry maps a kernel label to
its ten values at ``W``.
"""

W = (1, 2, 3, 4, 5, 10, 20, 50, 100, 200)

TABLES = {
    "1/e": {
        "limit": 1.60,
        "chi_c": (1.8509, 1.7427, 1.6978, 1.6740, 1.6595, 1.6299, 1.6150, 1.6060, 1.6030, 1.6015),
        "chi_d": (1.6610, -0.4903, 2.7807, -0.4487, 1.6595, 1.6299, 1.6150, 1.6060, 1.6030, 1.6015),
    },
    "e": {
        "limit": 2.60,
        "chi_c": (1.1746, 1.4158, 1.6687, 2.1126, 2.5316, 2.600, 2.600, 2.600, 2.600, 2.600),
        "chi_d": (2.8973, 0.6722, 1.6687, 2.1126, 2.5316, 2.600, 2.600, 2.600, 2.600, 2.600),
    },
    "4": {
        "limit": 1.95,
        "chi_c": (1.0941, 1.2847, 1.4307, 1.6287, 1.8092, 1.8939, 1.9219, 1.9388, 1.9444, 1.9472),
        "chi_d": (1.0941, 1.2847, 1.4307, 1.6287, 1.8092, 1.8939, 1.9219, 1.9388, 1.9444, 1.9472),
    },
}
