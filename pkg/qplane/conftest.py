from hypothesis import settings

# exact arithmetic on random inputs has no useful per-example time bound
settings.register_profile("qplane", deadline=None, max_examples=100)
settings.load_profile("qplane")
