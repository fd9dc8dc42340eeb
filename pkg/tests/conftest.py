"""Shared frozen reference values and helpers.

The 52-digit decimals below were produced by independent oracle scripts
(direct summation with Richardson/tail acceleration, exact rational
prefixes, and mpmath's own zeta/log/euler) before the package existed,
and are frozen here as the ground truth the implementation must hit.
"""

import mpmath as mp
import pytest

# mathematical constants, 52 significant digits
FROZEN_CONSTANTS = {
    "zeta(2)": "1.644934066848226436472415166646025189218949901206798",
    "zeta(3)": "1.202056903159594285399738161511449990764986292340499",
    "zeta(4)": "1.082323233711138191516003696541167902774750951918727",
    "zeta(5)": "1.036927755143369926331365486457034168057080919501913",
    "zeta(6)": "1.017343061984449139714517929790920527901817490032854",
    "zeta(7)": "1.008349277381922826839797549849796759599863560565239",
    "zeta(8)": "1.00407735619794433937868523850865246525896079064985",
    "zeta(9)": "1.002008392826082214417852769232412060485605851394889",
    "ln2": "0.6931471805599453094172321214581765680755001343602553",
    "euler_gamma": "0.5772156649015328606065120900824024310421593359399236",
}

# sum values at 52 digits, keyed by catalog id / SumSpec text
FROZEN_SUMS = {
    "h1*h2/k^3": "1.339409315598943768422731704158269981600242422170641",
    "h1*h2/k^5": "1.056781022079670861017873558813760436289523981578708",
    "h1/k^2": "2.103599580529289999449541782645037483838726011595873",
    "h1/k^3": "1.298175515771867125722876414464569651787998011202771",
    "h1/k^4": "1.115624876320580515378283474844075300154846992829355",
    "h1/k^6": "1.023534421927665415075016988682147389576528344902421",
    "h1/k^8": "1.005473859427799902273932236200078597105783560269663",
    "H1/k^4": "1.133478915132813660797011017885976932089091291845604",
    "h2/k^3": "1.229032860379107176088332572910819150834071080996526",
    "h2/k^5": "1.041300799531920899468128869080696448888457015665871",
    "h2/k^7": "1.009300363702173565680231900970254586585035527444222",
    "h3/k^4": "1.085560034904152096646873287186538158357376558169023",
    "h3/k^6": "1.018000332321222397656950135947874727145001842865635",
    "h4/k^5": "1.037393503386823308494130494965982194963392628107223",
    "H3/(2k-1)^2": "1.269810640547036136669800421178489277370024598760932",
    "h2/(2k-1)^3": "1.058378729918684341309685437920317492300753670381902",
    "h3/(2k-1)^2": "1.243751012759055852390662198059548014683455370381289",
    "h3/k^2": "1.673437314480870773067425212266112950232270489244032",
    "H2/k^3": "1.265738152746723686100111635398722959989590262221795",
    "H3/k^2": "1.748493952693942358428339292543436780149642123940252",
    "1/(k^3*(2k-1)^2)": "1.015865238203171224110318912975464249142482079762357",
}

# independently computed at 30 digits
FROZEN_SUMS_30 = {
    "H5/(2k-1)^2": "1.24161992425240323378745066519",
    "h2/(2k-1)^5": "1.0050450733528401432520633448",
    "h5/(2k-1)^2": "1.23470799408475552060686622931",
    "h5/k^2": "1.64773703238833462910393853198",
    "H2/(2k-1)^3": "1.0671308518696019869539874053",
    "H2/(2k-1)^5": "1.00570734968668205543232821945",
}

# kernel-lemma fixtures (closed sides, 52 digits)
FROZEN_LEMMAS = {
    # shifted kernel sum_i h_i^(n) / (i (i + k))
    ("shifted", 2, 5): "0.506911670421914460321696524280744945102941439041807",
    ("shifted", 3, 12): "0.2671967034701055434902548590986151774461818428574782",
    # two-sided reciprocal kernel, order p = 2n, at k = 7
    ("recip", 4, 7): "0.1847275165823613216581890526542170950000771035276247",
    ("recip", 6, 7): "0.1702640348485784250770557980103222408123468729355148",
    # two-sided cross kernel of order m
    ("cross", 2, 4): "0.3709352730011923389369474788895844319028051240440318",
    ("cross", 3, 9): "0.296235086637688247715129181505468483872856377290197",
    ("cross", 1, 1): "-1.613705638880109381165535757083646863848999731279489",
}


def as_mpf(text: str) -> mp.mpf:
    return mp.mpf(text)


def close(value, frozen: str, bound: str) -> bool:
    """|value - frozen| <= bound, evaluated at comfortable precision."""
    with mp.workdps(60):
        return abs(mp.mpf(value) - mp.mpf(frozen)) <= mp.mpf(bound)


@pytest.fixture
def table40():
    from oddeuler.numerics import ConstantsTable
    return ConstantsTable(40)
