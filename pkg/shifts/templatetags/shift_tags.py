from fractions import Fraction

from django import template

register = template.Library()


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, dict) and set(value) == {'num', 'den'}:
        return Fraction(value['num'], value['den'])
    return None


@register.filter
def rational(value):
    """``{"num": 1, "den": 2}`` or ``Fraction(1, 2)`` as ``1/2``; anything else unchanged"""
    fraction = _as_fraction(value)
    if fraction is None:
        return value
    if fraction.denominator == 1:
        return str(fraction.numerator)
    return f"{fraction.numerator}/{fraction.denominator}"


@register.filter
def as_float(value):
    """Decimal approximation, for display only"""
    fraction = _as_fraction(value)
    if fraction is None:
        return ''
    return f"{float(fraction):.6g}"


@register.filter
def get_item(dictionary, key):
    return dictionary.get(key, '')
