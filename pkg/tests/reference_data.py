"""Published coefficient tables, transcribed as plain strings.

Variables: ``t`` for one marking variable, ``t1``/``t2`` for two.
"""
import re

from gjcluster.series import TPoly

ASC = [
    "1", "1", "1+t", "1+3t", "1+7t+t^2", "1+14t+6t^2", "1+26t+23t^2+t^3",
    "1+46t+70t^2+10t^3", "1+79t+186t^2+56t^3+t^4", "1+133t+451t^2+235t^3+15t^4",
]

PEAK = [
    "1", "1", "1+t", "2+2t", "4+4+t^2", "8+10t+3t^2", "17+24t+9t^2+t^3",
    "37+58t+28t^2+4t^3", "82+143t+81t^2+16t^3+t^4", "185+354t+231t^2+60t^3+5t^4",
]

PLT1 = [
    "1", "1", "2", "3+t", "7+2t", "15+6t", "36+14t+t^2", "85+39t+3t^2",
    "209+102t+12t^2", "517+280t+37t^2+t^3",
]

PLT = [
    "1", "1", "1+t", "1+3t", "1+7t+t^2", "1+15t+5t^2", "1+31t+18t^2+t^3",
    "1+63t+56t^2+7t^3", "1+127t+160t^2+34t^3+t^4", "1+255t+432t^2+138t^3+9t^4",
]

PV = [
    "1",
    "1",
    "1+t1",
    "2+2t1",
    "4+4t1+t1^2t2",
    "8+8t1+2t1t2+t1^2+2t^2t2",
    "16+t2+18t1+6t1t2+3t1^2+6t1^2t2+t1^3t2^2",
    "33+4t2+40t1+18t1t2+9t1^2+16t1^2t2+3t1^2t2^2+2t1^3t2+2t1^3t2^2",
    "69+13t2+90t1+50t1t2+25t1^2+3t1t2^2+47t1^2t2+t1^3+9t1^2t2^2+6t1^3t2+9t1^3t2^2+t1^4t2^3",
]

ASC_EVEN = [1, 1, 1, 1, 2, 5, 12, 27, 60, 135, 309]
ASC_ODD = [1, 1, 2, 4, 8, 16, 33, 70, 152, 336, 754]

PV_PARITY = {
    "O,E0": [1, 1, 1, 2, 5, 12, 27, 60, 136],
    "E0,O": [1, 1, 2, 4, 8, 17, 38, 88, 208],
    "O,O": [1, 1, 1, 2, 5, 12, 27, 60, 137],
    "E0,E0": [1, 1, 2, 4, 7, 13, 27, 59, 131],
}

MOTZKIN = [1, 1, 2, 4, 9, 21, 51, 127, 323]

_FACTOR = re.compile(r"(t\d*)(?:\^(\d+))?")


def parse_printed(text, k, bare_t=None):
    """Sum of ``c*t1^a*t2^b`` terms written without ``*``.

    ``bare_t`` names the variable an unsubscripted ``t`` stands for when
    ``k > 1`` (None rejects it).
    """
    out = TPoly.constant(0, k)
    for term in text.split("+"):
        m = re.match(r"(\d*)(.*)", term)
        coef = int(m.group(1)) if m.group(1) else 1
        exps = [0] * k
        rest = m.group(2)
        for var, e in _FACTOR.findall(rest):
            if var == "t":
                if k == 1:
                    idx = 0
                elif bare_t is None:
                    raise ValueError(f"unsubscripted t in {text!r}")
                else:
                    idx = bare_t - 1
            else:
                idx = int(var[1:]) - 1
            exps[idx] += int(e or 1)
        if _FACTOR.sub("", rest):
            raise ValueError(f"cannot read term {term!r}")
        out = out + TPoly({tuple(exps): coef}, k)
    return out
