"""Setup configuration for Quantum Ring"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

with open("requirements.txt", "r", encoding="utf-8") as fh:
    requirements = [line.strip() for line in fh if line.strip() and not line.startswith("#")]

subpackages = find_packages(exclude=["tests", "tests.*", "examples", "examples.*"])

setup(
    name="quantum-ring",
    version="1.0.0",
    author="Quantum Ring Team",
    description="Stationary scattering on a ring of two U(3)-parametrized Y-junctions",
    long_description=long_description,
    long_description_content_type="text/markdown",
    package_dir={"quantum_ring": "."},
    packages=["quantum_ring"] + [f"quantum_ring.{name}" for name in subpackages],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",
    install_requires=requirements,
    extras_require={
        "test": ["pytest>=7.0", "hypothesis>=6.0"],
    },
    entry_points={
        "console_scripts": [
            "qring=quantum_ring.main:main",
        ],
    },
    include_package_data=True,
)
