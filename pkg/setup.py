from setuptools import setup

import os

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()


def version():
    setupDir = os.path.dirname(os.path.realpath(__file__))
    with open(os.path.join(setupDir, 'charsum', 'VERSION')) as versionFile:
        return versionFile.readline().strip()


setup(
    name='charsum',
    version=version(),
    packages=['charsum', 'charsum.misc', 'charsum.plots', 'charsum.tests'],
    package_data={'charsum': ['VERSION']},
    license='GPL3',
    description='Numerical workbench for lower bounds on long character sums.',
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    install_requires=['numpy', 'matplotlib', 'scipy', 'mpmath', 'sympy'],
    extras_require={'test': ['pytest', 'hypothesis']},
    entry_points={'console_scripts': ['charsum=charsum.main:main']},
)
