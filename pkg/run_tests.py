import os
import sys
import pytest


def main():
    """
    Main function to discover and run all tests recursively.
    """
    # Only the tests directory; the project root also holds non-test material
    tests_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "tests")

    pytest_args = [tests_dir, *sys.argv[1:]]
    exit_code = pytest.main(pytest_args)

    # Exit with the pytest exit code
    sys.exit(exit_code)


if __name__ == "__main__":
    main()
