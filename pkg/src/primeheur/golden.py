"""Published reference values used by ``selftest`` and the acceptance tests.

Table rows are ``N: (actual, integral, ratio)``; a ``None`` entry means the
column was not printed.
"""

TWIN = {
    10**3: (35, 46, 28),
    10**4: (205, 214, 155),
    10**5: (1224, 1249, 996),
    10**6: (8169, 8248, 6917),
    10**7: (58980, 58754, 50822),
    10**8: (440312, 440368, 389107),
}

# gap: {N: (actual, integral)}
PAIRS = {
    6: {10**3: (74, 86), 10**4: (411, 423), 10**5: (2447, 2493), 10**6: (16386, 16491),
        10**7: (117207, 117502)},
    30: {10**3: (99, 109), 10**4: (536, 558), 10**5: (3329, 3316), 10**6: (21990, 21981),
         10**7: (156517, 156663)},
    210: {10**3: (107, 118), 10**4: (641, 653), 10**5: (3928, 3962), 10**6: (26178, 26358),
          10**7: (187731, 187976)},
}

SOPHIE_GERMAIN = {
    10**3: (37, 39, 28),
    10**4: (190, 195, 156),
    10**5: (1171, 1166, 996),
    10**6: (7746, 7811, 6917),
    10**7: (56032, 56128, 50822),
    10**8: (423140, 423295, 389107),
}

QUADRATIC = {
    10**6: (112, 121, 99),
    10**8: (841, 855, 745),
    10**10: (6656, 6609, 5962),
}

# k: (first kind, second kind, integral, ratio) at N = 10**9
CUNNINGHAM_1E9 = {
    2: (3308859, 3306171, 3307888, 3074426),
    3: (342414, 341551, 342313, 321163),
    4: (30735, 30962, 30784, 30011),
}

# (k, d): (actual, predicted) at N = 10**9
AP_1E9 = {(3, 6): (758163, 759591), (4, 30): (227620, 227074)}

C2 = "0.660161815846869"
CPLUS = "1.3728134628"

# k: A_{k, k#}
A_PRIMORIAL = {
    2: "1.32032363169374",
    3: "5.71649719143844",
    4: "8.30236172647483",
    5: "81.0543595999686",
    6: "138.388898492679",
    7: "2590.65351840622",
    8: "7130.47817586170",
    9: "16129.6476839631",
    10: "24548.2695388318",
    11: "629913.461423349",
    12: "1135007.50238685",
    13: "45046656.1742087",
    14: "132128113.722194",
    15: "320552424.308155",
    16: "527357440.662591",
    17: "23636723084.1607",
    18: "47093023670.0967",
    19: "3153485401596.08",
}

GROSSWALD = {
    3: "1.320323631694",
    4: "2.858248595719",
    5: "4.151180863237",
    6: "10.13179495000",
    7: "17.29861231159",
    8: "53.97194830013",
    9: "148.5516286638",
    10: "336.0343267492",
    11: "511.4222820590",
    12: "1312.319711299",
    13: "2364.598963306",
    14: "7820.600030245",
    15: "22938.90863233",
    16: "55651.46255350",
    17: "91555.11122614",
    18: "256474.8598544",
    19: "510992.0103092",
    20: "1900972.584874",
}

CUNNINGHAM_B = {
    2: "1.320323631694",
    3: "2.858248595719",
    4: "5.534907817650",
    5: "20.26358989999",
    6: "71.96222721619",
    7: "233.8784426339",
}

# N: (woodall, cullen, integral, ratio)
CULLEN_WOODALL = {1000: (15, 2, 15, 18), 10**4: (18, 5, 22, 25)}

# N: (plus, minus, predicted)
PRIMORIAL = {10: (4, 2, 4), 100: (6, 6, 8), 1000: (7, 9, 12)}
FACTORIAL = {10: (3, 4, 4), 100: (9, 11, 8), 1000: (16, 17, 12)}

K_FACTORIAL = (4275, 4122)


def matches_printed(value, text: str) -> bool:
    """True if ``text`` is ``value`` truncated or rounded to the digits shown."""
    from decimal import Decimal

    import mpmath

    printed = Decimal(text)
    ulp = Decimal(1).scaleb(printed.as_tuple().exponent)
    with mpmath.workdps(50):
        v = Decimal(mpmath.nstr(mpmath.mpf(value), 40, strip_zeros=False))
    return printed <= v < printed + ulp or abs(v - printed) <= ulp / 2


def agrees_to_digits(value, text: str, digits: int) -> bool:
    """True if ``value`` and ``text`` differ by less than one unit in the given significant digit."""
    from decimal import Decimal

    import mpmath

    printed = Decimal(text)
    with mpmath.workdps(50):
        v = Decimal(mpmath.nstr(mpmath.mpf(value), 40, strip_zeros=False))
    unit = Decimal(1).scaleb(printed.adjusted() - digits + 1)
    return abs(v - printed) < unit
