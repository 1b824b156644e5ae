import os
import sys

from hypothesis import settings

# shared helpers live next to the tests
sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")
