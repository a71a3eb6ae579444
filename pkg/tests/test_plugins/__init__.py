from . import seeded_random
