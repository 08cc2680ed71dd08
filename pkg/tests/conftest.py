import hypothesis

hypothesis.settings.register_profile(
    "ci", deadline=None, max_examples=60)
hypothesis.settings.load_profile("ci")
