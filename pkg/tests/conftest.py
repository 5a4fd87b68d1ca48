def pytest_addoption(parser):
    group = parser.getgroup("credalaudit", "credalaudit specific options")
    group.addoption('--no-remove', action='store_true',
                    help=("Do not remove the test directory at the end of the "
                          "tests."))
    group.addoption('--full-audit', action='store_true',
                    help=("Compare the audit of the full default pool with "
                          "the golden matrix. This takes a few minutes"))


def pytest_configure(config):
    import _base_testing as bt
    if config.getoption('no_remove'):
        bt.BaseTest.remove_at_cleanup = False
    if config.getoption('full_audit'):
        bt.full_audit = True
