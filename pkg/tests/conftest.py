import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from hypothesis import settings

# first calls pay for numba compilation, which would trip per-example deadlines
settings.register_profile("artifact", deadline=None)
settings.load_profile("artifact")
