#!/usr/bin/env python

"""The setup script."""

from setuptools import setup, find_packages

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

requirements = [
    "numpy>=1.20.3",
    "scipy>=1.7.0",
    "pandas>=1.3.0",
    "tqdm>=4.61.1",
]

setup_requirements = ['pytest-runner', ]

test_requirements = ['pytest>=3', "scikit-learn"]

setup(
    author="Louis C. Tiao",
    author_email='louistiao@gmail.com',
    python_requires='>=3.8',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    description="Sparse recovery by L1/L2 minimization",
    entry_points={
        'console_scripts': [
            'ratiosparse=ratiosparse.cli:main',
        ],
    },
    install_requires=requirements,
    license="MIT license",
    long_description=readme + '\n\n' + history,
    include_package_data=True,
    keywords='ratiosparse',
    name='ratiosparse',
    packages=find_packages(include=['ratiosparse', 'ratiosparse.*']),
    setup_requires=setup_requirements,
    test_suite='tests',
    tests_require=test_requirements,
    url='https://github.com/ltiao/ratiosparse',
    version='0.1.0',
    zip_safe=False,
)
