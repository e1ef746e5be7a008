from hypothesis import settings

# exact rational arithmetic has occasional slow examples; wall-clock
# deadlines would make those flaky
settings.register_profile("arnold", deadline=None)
settings.load_profile("arnold")
