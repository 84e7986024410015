# utils/helpers.py
import math


def rel_error(value, reference):
    """|value - reference| / |reference|; absolute error when the reference is zero."""
    if reference == 0:
        return abs(value)
    return abs(value - reference) / abs(reference)


def half_unit(quoted, significant_figures):
    """Half a unit in the last quoted significant figure."""
    if quoted == 0:
        return 0.5 * 10.0 ** (1 - significant_figures)
    exponent = math.floor(math.log10(abs(quoted))) - significant_figures + 1
    return 0.5 * 10.0 ** exponent


def matches_quoted(value, quoted, significant_figures=None, rel_tol=1e-12):
    """Compare against a printed number, to its significant figures when given."""
    if significant_figures is None:
        return rel_error(value, quoted) <= rel_tol
    return abs(value - quoted) <= half_unit(quoted, significant_figures) * (1.0 + 1e-12)
