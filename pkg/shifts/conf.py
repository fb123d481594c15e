"""
Run-time caps and defaults.

Values come from ``django.conf.settings`` (which reads the environment) and can be
overridden for the duration of a single run with :func:`override_caps`, which is
how the global command-line flags reach the engine.
"""

import contextvars
from contextlib import contextmanager

from django.conf import settings

DEFAULTS = {
    'SHIFTS_MAX_WORDS': 2_000_000,
    'SHIFTS_MAX_VERTICES': 1_000_000,
    'SHIFTS_MAX_PREFIX': 10_000_000,
    'SHIFTS_MAX_TRACE_CELLS': 50_000_000,
    'SHIFTS_MAX_JOINING_CELLS': 1_000_000,
    'SHIFTS_MAX_PRODUCT_VERTICES': 2048,
    'SHIFTS_MAX_CODE_WORDS': 4096,
    'SHIFTS_DEFAULT_SEED': 7,
}

_overrides = contextvars.ContextVar('shift_cap_overrides', default={})


def cap(name, override=None):
    """Return the effective value of a cap (explicit argument > run override > settings)"""
    if override is not None:
        return int(override)
    current = _overrides.get()
    if name in current:
        return int(current[name])
    return int(getattr(settings, name, DEFAULTS[name]))


def default_seed(seed=None):
    return cap('SHIFTS_DEFAULT_SEED', seed)


def current_caps():
    """Snapshot of every cap, as echoed in reports"""
    return {name.replace('SHIFTS_', '').lower(): cap(name) for name in DEFAULTS}


@contextmanager
def override_caps(**values):
    """Temporarily override caps, e.g. ``override_caps(SHIFTS_MAX_WORDS=1000)``"""
    merged = dict(_overrides.get())
    merged.update({k: v for k, v in values.items() if v is not None})
    token = _overrides.set(merged)
    try:
        yield
    finally:
        _overrides.reset(token)
