"""Internal unit system.

Everything runs with hbar = 1, angular frequencies in rad/ns and times in ns.
A mode at an ordinary frequency of f GHz therefore has angular frequency
``2*pi*f`` rad/ns, which keeps all device-scale numbers between roughly 1e-4
and 1e2 and avoids float-scale hazards.

Multiply an ordinary frequency by ``GHZ``/``MHZ``/``KHZ`` to get rad/ns.
"""
import math

TWO_PI = 2.0 * math.pi

# ordinary frequency -> angular frequency in rad/ns
GHZ = TWO_PI
MHZ = TWO_PI * 1e-3
KHZ = TWO_PI * 1e-6

# durations in ns
NS = 1.0
US = 1e3
MS = 1e6
