import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--acceptance",
        action="store_true",
        default=False,
        help="run acceptance tests",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: mark test as a slow acceptance test")
    config.addinivalue_line("markers", "slow: acceptance point of high rank or degree, deselect with -m \"not slow\"")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--acceptance"):
        return
    else:
        skip_acceptance = pytest.mark.skip(reason="need --acceptance option to run")
        for item in items:
            if "acceptance" in item.keywords:
                item.add_marker(skip_acceptance)
