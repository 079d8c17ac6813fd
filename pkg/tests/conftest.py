import os

from hypothesis import settings

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=60)
settings.register_profile("long", derandomize=True, deadline=None, max_examples=400)
settings.load_profile(os.environ.get("HAIRY_PROFILE", "repo"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: takes a minute or more")
