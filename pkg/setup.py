from setuptools import setup, find_packages
from pathlib import Path

# Read requirements from file
requirements = Path("requirements.txt").read_text().splitlines()

setup(
    name="sdgjel",
    version="0.1.0",
    description="Keyword-overlap crosswalk from Sustainable Development Goals to JEL codes",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    include_package_data=True,
    package_data={"sdgjel": ["data/*"]},
    install_requires=requirements,
    entry_points={
        "console_scripts": ["sdgjel=sdgjel.cli:main"],
    },
    classifiers=[
        "Programming Language :: Python :: 3.10",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires='>=3.10',
)
