import os

import pytest
from click.testing import CliRunner

from metsort import log, config
from metsort.metrics import make_structured


def pytest_addoption(parser):
    parser.addoption("--ll", action="store", dest='loglevel',
                     default=None, help="logging level to set when testing")
    parser.addoption("--run-slow", action="store_true", default=False,
                     help="run the full size randomized suites")


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: full size randomized suite, needs --run-slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope='session', autouse=True)
def loglevel(request):
    level = request.config.option.loglevel
    log.get_console_log(level)
    yield level


@pytest.fixture(scope='session')
def datadir():
    dirname = os.path.dirname
    return os.path.abspath(
        os.path.join(
            dirname(os.path.realpath(__file__)),
            'data'
        )
    )


@pytest.fixture
def confdir(tmp_path):
    """An empty config dir so tests never touch the user's config.
    """
    orig = config._config_dir
    path = tmp_path / 'metsort'
    path.mkdir()
    config._override_config_dir(str(path))
    yield str(path)
    config._override_config_dir(orig)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def worked_example():
    """The running L=4 example: mu=[1, 2, 3, 4], a=[5, 0, 1, 2].
    """
    return make_structured([1, 2, 3, 4], [5, 0, 1, 2])
