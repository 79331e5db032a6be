import os


def version():
    """Read program version from file."""
    bin_dir = os.path.dirname(os.path.realpath(__file__))
    with open(os.path.join(bin_dir, 'VERSION')) as version_file:
        return version_file.readline().strip()

__version__ = version()
