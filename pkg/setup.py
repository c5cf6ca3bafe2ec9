#!/usr/bin/env python3
"""
Setup script for Parasol - numerical checks for para-Kähler geometry and solitons
"""

from setuptools import setup, find_packages
from pathlib import Path

# Read README
readme_file = Path(__file__).parent / "README.md"
long_description = readme_file.read_text(encoding="utf-8") if readme_file.exists() else ""

# Read requirements
requirements_file = Path(__file__).parent / "requirements.txt"
requirements = []
if requirements_file.exists():
    with open(requirements_file) as f:
        requirements = [
            line.split("#")[0].strip()
            for line in f
            if line.strip() and not line.startswith('#')
        ]

# Development requirements
dev_requirements = [
    "pytest>=7.4.0",
    "pytest-cov>=4.0.0",
    "hypothesis>=6.80.0",
    "black>=23.0.0",
    "flake8>=6.0.0",
    "mypy>=1.0.0",
]

setup(
    name="parasol",
    version="1.0.0",
    author="Parasol Contributors",
    description="Parasol: numerical verification of para-Kähler curvature identities and conformal Einstein solitons",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=requirements,
    extras_require={
        "dev": dev_requirements,
    },
    entry_points={
        "console_scripts": [
            "parasolctl=parasol.cli:main",
        ],
    },
    include_package_data=True,
    package_data={
        "parasol.manifold": ["*.yaml"],
    },
    keywords=[
        "differential-geometry", "para-kahler", "curvature", "ricci-soliton",
        "einstein-soliton", "automatic-differentiation", "verification",
    ],
)
