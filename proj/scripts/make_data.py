#!/usr/bin/env python3
"""Regenerate the bundled desk-scale data tables under data/.

The series approximate published US aggregates at desk precision:
  - real GDP per capita: chained-2000-dollar BEA NIPA growth rates, scaled so
    the 1960->2002 cumulative growth is 2.22x;
  - GDP deflator, GPI/GDP ratio and the share of the 15+ population with
    income: anchor points read off published BEA/Census series;
  - births and a Gompertz survival curve generate the single-year age
    structure, normalized to a smooth 15+ total (106M in 1947);
  - income tables: a fixed two-regime reference shape (exponential body,
    power-law tail of density exponent -3.35) scaled by nominal GPI per
    person with income, counted into the historical CPS bin sets. Early
    years carry the sampling ceiling visible in the published tables (no
    1947-1950 readings above $9,000).

Deterministic: running it twice produces identical files.
"""
import math
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "data")

# ---------------------------------------------------------------------------
# economy series
# ---------------------------------------------------------------------------

# approximate real GDP per-capita growth, percent (desk values; 1956-1958
# smoothed within revision tolerance)
GROWTH = {
 1901: 7.7, 1902: -0.5, 1903: 3.3, 1904: -3.0, 1905: 5.5, 1906: 9.4, 1907: 1.4,
 1908: -9.6, 1909: 9.0, 1910: 0.9, 1911: 0.9, 1912: 3.0, 1913: 2.3, 1914: -9.0,
 1915: 1.3, 1916: 12.0, 1917: -1.8, 1918: 7.5, 1919: -1.5, 1920: -3.0, 1921: -4.0,
 1922: 4.5, 1923: 11.0, 1924: 1.5, 1925: 1.0, 1926: 5.0, 1927: -0.3, 1928: -0.4,
 1929: 5.5, 1930: -9.8, 1931: -7.6, 1932: -13.9, 1933: -2.7, 1934: 9.9, 1935: 8.1,
 1936: 12.2, 1937: 4.3, 1938: -4.1, 1939: 7.2, 1940: 7.2, 1941: 16.1, 1942: 17.1,
 1943: 15.4, 1944: 7.2, 1945: -1.9, 1946: -12.5, 1947: -2.6,
 1948: 3.5, 1949: -1.7, 1950: 7.3, 1951: 6.5, 1952: 2.2, 1953: 3.0, 1954: -1.6,
 1955: 5.3, 1956: 0.8, 1957: 0.6, 1958: -1.6, 1959: 4.9, 1960: 0.8, 1961: 0.6,
 1962: 4.4, 1963: 2.8, 1964: 4.3, 1965: 5.0, 1966: 5.2, 1967: 1.4, 1968: 3.8,
 1969: 2.1, 1970: -1.0, 1971: 2.1, 1972: 4.2, 1973: 4.6, 1974: -1.5, 1975: -1.2,
 1976: 4.3, 1977: 3.5, 1978: 4.4, 1979: 2.0, 1980: -1.2, 1981: 1.5, 1982: -2.8,
 1983: 3.6, 1984: 6.3, 1985: 3.2, 1986: 2.5, 1987: 2.4, 1988: 3.2, 1989: 2.5,
 1990: 0.7, 1991: -1.5, 1992: 2.1, 1993: 1.4, 1994: 2.8, 1995: 1.5, 1996: 2.5,
 1997: 3.2, 1998: 3.2, 1999: 3.5, 2000: 2.9, 2001: -0.1, 2002: 0.9, 2003: 1.9,
 2004: 2.8, 2005: 2.2,
}
FIRST_YEAR, LAST_YEAR = 1900, 2005
REAL_GDP_1947 = 11375.0       # chained 2000 dollars
TARGET_1960_2002 = 2.22       # cumulative real growth, pinned

def build_real_gdp():
    g = {FIRST_YEAR: 1.0}
    for y in range(FIRST_YEAR + 1, LAST_YEAR + 1):
        g[y] = g[y - 1] * (1.0 + GROWTH[y] / 100.0)
    ratio = g[2002] / g[1960]
    k = math.log(TARGET_1960_2002) / math.log(ratio)
    out = {y: g[y] for y in range(FIRST_YEAR, 1961)}
    for y in range(1961, LAST_YEAR + 1):
        r = g[y] / g[y - 1]
        out[y] = out[y - 1] * (r ** k if y <= 2002 else r)
    scale = REAL_GDP_1947 / out[1947]
    return {y: v * scale for y, v in out.items()}

REAL_GDP = build_real_gdp()

def interp(anchors, y):
    ks = sorted(anchors)
    if y <= ks[0]:
        return anchors[ks[0]]
    for a, b in zip(ks, ks[1:]):
        if y <= b:
            t = (y - a) / (b - a)
            return anchors[a] + t * (anchors[b] - anchors[a])
    return anchors[ks[-1]]

# GDP deflator, 2000 = 1.0
DEFLATOR = {1900: 0.050, 1915: 0.062, 1920: 0.113, 1929: 0.095, 1933: 0.071,
            1940: 0.078, 1947: 0.135, 1950: 0.150, 1955: 0.172, 1960: 0.189,
            1965: 0.203, 1970: 0.248, 1975: 0.341, 1980: 0.478, 1985: 0.655,
            1990: 0.790, 1995: 0.900, 2000: 1.000, 2005: 1.127}
# GPI / GDP
GPI_RATIO = {1900: 0.780, 1947: 0.780, 1951: 0.760, 1960: 0.770, 1970: 0.790,
             1980: 0.800, 1990: 0.820, 1995: 0.840, 2001: 0.860, 2003: 0.835,
             2005: 0.820}
# share of the 15+ population with income
WI_FRACTION = {1900: 0.640, 1947: 0.640, 1950: 0.655, 1955: 0.700, 1960: 0.760,
               1965: 0.810, 1970: 0.855, 1975: 0.880, 1980: 0.895, 1985: 0.915,
               1988: 0.930, 1990: 0.926, 1995: 0.915, 2000: 0.905, 2005: 0.890}

POP15_1947 = 106.0e6
POP15_GROWTH = 1.0135
def pop15(y):
    return POP15_1947 * POP15_GROWTH ** (y - 1947)

# population ratio total/15+, for converting per-capita GDP to totals
TOTAL_OVER_15 = {1900: 1.43, 1947: 1.36, 1960: 1.44, 1970: 1.40, 1980: 1.31,
                 1990: 1.29, 2000: 1.28, 2005: 1.27}

def economy_rows():
    rows = []
    for y in range(FIRST_YEAR, LAST_YEAR + 1):
        real = REAL_GDP[y]
        nom_pc15 = real * interp(DEFLATOR, y) * interp(TOTAL_OVER_15, y)
        p15 = round(pop15(y))
        pwi = round(pop15(y) * interp(WI_FRACTION, y))
        gpi_pc_wi = interp(GPI_RATIO, y) * nom_pc15 * p15 / pwi
        rows.append((y, real, nom_pc15, gpi_pc_wi, p15, pwi))
    return rows

# ---------------------------------------------------------------------------
# age structure
# ---------------------------------------------------------------------------

BIRTHS = {  # thousands, registered live births
 1909: 2718, 1910: 2777, 1911: 2809, 1912: 2840, 1913: 2869, 1914: 2966, 1915: 2965,
 1916: 2964, 1917: 2944, 1918: 2948, 1919: 2740, 1920: 2950, 1921: 3055, 1922: 2882,
 1923: 2910, 1924: 2979, 1925: 2909, 1926: 2839, 1927: 2802, 1928: 2674, 1929: 2582,
 1930: 2618, 1931: 2506, 1932: 2440, 1933: 2307, 1934: 2396, 1935: 2377, 1936: 2355,
 1937: 2413, 1938: 2496, 1939: 2466, 1940: 2559, 1941: 2703, 1942: 2989, 1943: 3104,
 1944: 2939, 1945: 2858, 1946: 3411, 1947: 3817, 1948: 3637, 1949: 3649, 1950: 3632,
 1951: 3823, 1952: 3913, 1953: 3965, 1954: 4078, 1955: 4097, 1956: 4218, 1957: 4300,
 1958: 4255, 1959: 4245, 1960: 4258, 1961: 4268, 1962: 4167, 1963: 4098, 1964: 4027,
 1965: 3760, 1966: 3606, 1967: 3521, 1968: 3502, 1969: 3600, 1970: 3731, 1971: 3556,
 1972: 3258, 1973: 3137, 1974: 3160, 1975: 3144, 1976: 3168, 1977: 3327, 1978: 3333,
 1979: 3494, 1980: 3612, 1981: 3629, 1982: 3681, 1983: 3639, 1984: 3669, 1985: 3761,
 1986: 3757, 1987: 3809, 1988: 3910, 1989: 4041, 1990: 4158,
}
def births(y):
    if y in BIRTHS:
        return BIRTHS[y]
    return BIRTHS[1909] * 1.018 ** (y - 1909)  # pre-registration backcast

SURV_A, SURV_B = 3.9e-5, 0.092
def survival(a):
    return math.exp(-(SURV_A / SURV_B) * (math.exp(SURV_B * a) - 1.0))

AGES = range(15, 101)

def age_rows():
    rows = []
    for y in range(1947, 2006):
        shape = [births(y - a) * survival(a) for a in AGES]
        total = pop15(y)
        norm = total / sum(shape)
        for a, s in zip(AGES, shape):
            rows.append((y, a, round(s * norm)))
    return rows

# ---------------------------------------------------------------------------
# income tables: two-regime reference shape
# ---------------------------------------------------------------------------

# Pareto zone: density ~ x^-3.35 above XI_P (in units of the exponential
# scale); the zone holds TAIL_MASS of people with income. The pair is chosen
# so the threshold sits at 1.474x the mean, which puts the 2005 threshold at
# $51,600 when the mean matches the CPS-like $35,000.
TAIL_MASS = 0.200
KT = 2.35                 # survival exponent of the density x^-(KT+1)
XI_P_SIGMA = 1.10         # threshold in exponential-scale units
MEAN_2005 = 35000.0       # CPS-like mean income per recipient, 2005

def shape_survival(xi, ceiling=None):
    """P(X > xi) for the reference shape, optionally truncated+renormalized."""
    if ceiling is not None and xi >= ceiling:
        return 0.0
    if xi < XI_P_SIGMA:
        body = (1.0 - TAIL_MASS) * (1 - math.exp(-xi)) / (1 - math.exp(-XI_P_SIGMA))
        s = 1.0 - body
    else:
        s = TAIL_MASS * (XI_P_SIGMA / xi) ** KT
    if ceiling is None:
        return s
    sc = TAIL_MASS * (XI_P_SIGMA / ceiling) ** KT if ceiling >= XI_P_SIGMA else None
    assert sc is not None, "ceiling below the Pareto threshold is not supported"
    return (s - sc) / (1.0 - sc)

def shape_mean_between(a, b, ceiling=None, n=6000):
    hi_cap = ceiling if ceiling is not None else 80.0
    b_eff = min(b, hi_cap)
    if b_eff <= a:
        return a
    num = 0.0
    mass = 0.0
    prev_s = shape_survival(a, ceiling)
    for i in range(1, n + 1):
        x = a + (b_eff - a) * i / n
        s = shape_survival(x, ceiling)
        dm = prev_s - s
        num += dm * (x - 0.5 * (b_eff - a) / n)
        mass += dm
        prev_s = s
    if b > hi_cap and ceiling is None:
        rem = shape_survival(hi_cap)
        num += rem * hi_cap * KT / (KT - 1)
        mass += rem
    return num / mass if mass > 0 else a

SHAPE_MEAN = None  # E[X] of the untruncated shape, filled once

def shape_e():
    global SHAPE_MEAN
    if SHAPE_MEAN is None:
        SHAPE_MEAN = shape_mean_between(0.0, 1e9)
    return SHAPE_MEAN

def gpi_pc_wi(y, econ):
    return econ[y - FIRST_YEAR][3]

def income_scale(y, econ):
    """dollars per shape unit; proportional to nominal GPI per capita (w/i)"""
    return MEAN_2005 / shape_e() * gpi_pc_wi(y, econ) / gpi_pc_wi(2005, econ)

# sampling ceiling of the early CPS tables, dollars
def sample_ceiling(y, econ):
    if y > 1974:
        return None
    base = 9000.0 * gpi_pc_wi(y, econ) / gpi_pc_wi(1947, econ)
    relax = 1.10 ** max(0, y - 1950)
    c = base * relax
    return c

CRUDE_EDGES = [0, 2000, 4000, 6000, 8000, 10000, 12500, 15000, 20000, 25000]

def fine_edges(y):
    if y < 1960:
        return [0, 500, 1000, 1500, 2000, 2500, 3000, 3500, 4000, 4500, 5000,
                6000, 7000, 10000]
    if y < 1985:
        return [0, 500, 1000, 1500, 2000, 2500, 3000, 3500, 4000, 4500, 5000,
                6000, 7000, 8000, 10000, 12000, 15000, 25000]
    if y < 1994:
        return ([i * 1000 for i in range(11)] +
                [12500, 15000, 17500, 20000, 25000, 30000, 35000, 40000,
                 50000, 60000, 75000, 100000])
    if y < 2000:
        return [i * 2500 for i in range(21)] + [60000, 75000, 100000]
    return [i * 2500 for i in range(41)] + [150000, 200000, 250000]

# coverage of the crude (retrospective constant-bin) series relative to 15+
CRUDE_COVER_DELTA = 0.020

def pid_rows(y, edges, total, econ, with_means):
    ceil_d = sample_ceiling(y, econ)
    sc = income_scale(y, econ)
    ceil_xi = ceil_d / sc if ceil_d is not None else None
    rows = []
    survs = [shape_survival(e / sc, ceil_xi) for e in edges] + [0.0]
    for i, lo in enumerate(edges):
        hi = edges[i + 1] if i + 1 < len(edges) else None
        cnt = (survs[i] - survs[i + 1]) * total
        mean = None
        if with_means:
            if hi is not None and hi - lo <= 2500:
                mean = max(lo, 0.5 * (lo + hi) - 0.12 * (hi - lo))
            else:
                m = shape_mean_between(lo / sc, (hi / sc) if hi else 1e9, ceil_xi) * sc
                mean = min(max(m, lo), hi) if hi else max(m, lo)
        rows.append((y, lo, hi, cnt, mean))
    return rows

def curate_2005_tail(rows):
    """Pin the 2005 open-end means to the published anchors: mean income
    above $250k = $470,616 and above $100k = $176,068."""
    tail = [r for r in rows if r[1] >= 100000]
    assert len(tail) == 4
    counts = [r[3] for r in tail]
    n_open = counts[3]
    total = sum(counts)
    target_all = 176068.0 * total
    open_mean = 470616.0
    rest = target_all - open_mean * n_open
    base = [r[4] for r in tail[:3]]
    base_total = sum(b * c for b, c in zip(base, counts[:3]))
    f = rest / base_total
    out = []
    for r in rows:
        if r[1] < 100000:
            out.append(r)
        elif r[2] is not None:
            m = r[4] * f
            assert r[1] <= m <= r[2], f"curated mean {m} outside bin {r[1]}-{r[2]}"
            out.append((r[0], r[1], r[2], r[3], m))
        else:
            out.append((r[0], r[1], r[2], r[3], open_mean))
    return out

# ---------------------------------------------------------------------------
# writers
# ---------------------------------------------------------------------------

def fnum(v):
    if v is None:
        return ""
    if isinstance(v, int):
        return str(v)
    return repr(round(v, 4))

def write_economy(econ):
    lines = ["year,real_gdp_pc,nominal_gdp_pc,nominal_gpi_pc_with_income,"
             "pop_15plus,pop_with_income"]
    for (y, real, nom, gpi, p15, pwi) in econ:
        lines.append(f"{y},{real:.2f},{nom:.2f},{gpi:.2f},{p15},{pwi}")
    with open(os.path.join(OUT, "economy.csv"), "w") as f:
        f.write("\n".join(lines) + "\n")

def write_ages():
    lines = ["year,age,count"]
    for (y, a, c) in age_rows():
        lines.append(f"{y},{a},{c}")
    with open(os.path.join(OUT, "ages.csv"), "w") as f:
        f.write("\n".join(lines) + "\n")

def write_pids(econ):
    crude = ["year,population_base,bin_lower,bin_upper,count,mean_income"]
    for y in range(1947, 1988):
        total = pop15(y) * min(0.97, interp(WI_FRACTION, y) + CRUDE_COVER_DELTA)
        for (yy, lo, hi, cnt, mean) in pid_rows(y, CRUDE_EDGES, total, econ, False):
            hi_s = "" if hi is None else str(hi)
            crude.append(f"{yy},with_income,{lo},{hi_s},{cnt:.1f},")
    with open(os.path.join(OUT, "pid_crude.csv"), "w") as f:
        f.write("\n".join(crude) + "\n")

    fine = ["year,population_base,bin_lower,bin_upper,count,mean_income"]
    for y in range(1947, 2006):
        total = pop15(y) * interp(WI_FRACTION, y)
        rows = pid_rows(y, fine_edges(y), total, econ, y >= 2000)
        if y == 2005:
            rows = curate_2005_tail(rows)
        for (yy, lo, hi, cnt, mean) in rows:
            hi_s = "" if hi is None else str(hi)
            mean_s = "" if mean is None else f"{mean:.2f}"
            fine.append(f"{yy},with_income,{lo},{hi_s},{cnt:.1f},{mean_s}")
    with open(os.path.join(OUT, "pid_fine.csv"), "w") as f:
        f.write("\n".join(fine) + "\n")

def write_census_reference():
    vals = {1994: 0.513, 1995: 0.513, 1996: 0.514, 1997: 0.515, 1998: 0.504,
            1999: 0.505, 2000: 0.505, 2001: 0.507, 2002: 0.506, 2003: 0.507,
            2004: 0.508, 2005: 0.509}
    lines = ["year,gini"] + [f"{y},{v:.3f}" for y, v in sorted(vals.items())]
    with open(os.path.join(OUT, "census_gini.csv"), "w") as f:
        f.write("\n".join(lines) + "\n")

def main():
    os.makedirs(OUT, exist_ok=True)
    econ = economy_rows()
    write_economy(econ)
    write_ages()
    write_pids(econ)
    write_census_reference()
    thr2005 = 0.43 * 120000.0
    for y in (1947, 1957, 2005):
        sc = income_scale(y, econ)
        thr = thr2005 * gpi_pc_wi(y, econ) / gpi_pc_wi(2005, econ)
        print(f"{y}: scale={sc:.1f} mean={sc*shape_e():.0f} thr={thr:.0f} "
              f"ceiling={sample_ceiling(y, econ)}")

if __name__ == "__main__":
    main()
