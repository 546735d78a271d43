from hypothesis import settings

settings.register_profile("fmplib", deadline=None, max_examples=25)
settings.load_profile("fmplib")
