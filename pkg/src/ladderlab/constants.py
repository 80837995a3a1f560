"""Shared numerical constants. Every module pulls these from here so the
Euler constant and log(2*pi) are defined exactly once."""

import math

# Euler-Mascheroni constant, float64 correctly rounded.
EULER_GAMMA = 0.57721566490153286

# log(2*pi), float64 correctly rounded.
LN_TWO_PI = 1.8378770664093455

TWO_PI = 2.0 * math.pi

# Lowest argument the asymptotic theta expansion is served for.
T_MIN = 10.0

# Ladder operations refuse arguments below this floor.
T_FLOOR = 100.0
