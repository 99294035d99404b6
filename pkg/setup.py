from setuptools import setup

with open("README.rst", "r") as readme_fd:
    long_description = readme_fd.read()

setup(
    name="cellposet",
    version="0.1.0",
    description="Cellular resolutions of monomial ideals over GF(p) and the face posets that support them.",
    long_description=long_description,
    license="Apache License Version 2.0",
    python_requires=">=3.6, <4",
    install_requires=["blinker>=1.4,<2.0", "marshmallow>=3.0.0,<4", "networkx>=2.4", "six", "sympy>=1.9"],
    packages=["cellposet"],
    entry_points={"console_scripts": ["cellposet=cellposet.cli:main"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Programming Language :: Python :: 3.6",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Natural Language :: English",
        "Programming Language :: Python",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
