#!/usr/bin/env python3

import os

import setuptools

this_dir = os.path.dirname(os.path.abspath(__file__))


if os.getenv("BUILD_VERSION"):
    version = os.getenv("BUILD_VERSION")
else:
    version_txt = os.path.join(this_dir, "version.txt")
    with open(version_txt) as f:
        version = f.readline().strip()


def write_version_file():
    version_path = os.path.join(this_dir, "cascost", "version.py")
    with open(version_path, "w") as f:
        f.write("# noqa: C801\n")
        f.write(f'__version__ = "{version}"\n')
        tag = os.getenv("GIT_TAG")
        if tag is not None:
            f.write(f'git_tag = "{tag}"\n')


def setup():
    write_version_file()
    setuptools.setup(
        name="cascost",
        description="Computation and communication cost analyzer for CAS+ security protocols.",
        version=version,
        setup_requires=[],
        install_requires=["tabulate"],
        extras_require={"test": ["pytest", "hypothesis"]},
        packages=setuptools.find_packages(exclude=["tests", "examples", "examples.*"]),
        package_data={"cascost.corpus": ["*.cas", "*.cas+", "*.json"]},
        entry_points={"console_scripts": ["cascost=cascost.__main__:main"]},
        python_requires=">=3.8",
        classifiers=[
            "Programming Language :: Python :: 3.8",
            "Programming Language :: Python :: 3.9",
            "Programming Language :: Python :: 3.10",
            "Topic :: Security :: Cryptography",
            "Operating System :: OS Independent",
        ],
        zip_safe=False,
    )


if __name__ == "__main__":
    setup()
