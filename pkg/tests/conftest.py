from hypothesis import settings

# Numerical property cases can be slow on loaded machines; the per-example
# deadline adds flakiness without catching anything here.
settings.register_profile("sglab", deadline=None)
settings.load_profile("sglab")
