#!/usr/bin/env python3
"""TAFT-CLEFT: Cleft extensions of Taft algebras over finite rings.

Exhaustive tools for Taft Hopf algebras over finite commutative rings,
their cleft extensions, polynomial H-identities and isomorphisms.
"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="taft-cleft",
    version="1.0.0",
    description="TAFT-CLEFT: Cleft Extensions of Taft Algebras over Finite Rings",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.21.0",
        "sympy>=1.9",
        "pandas>=1.3.0",
        "pyyaml>=5.4.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=3.0.0",
            "pytest-benchmark>=4.0.0",
            "hypothesis>=6.0.0",
            "black>=23.0.0",
            "ruff>=0.0.260",
            "mypy>=1.0.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "taftcleft = taftcleft.cli.main:cli",
        ],
    },
    include_package_data=True,
    zip_safe=False,
)
