from setuptools import find_packages, setup

setup(
    name="textnet",
    version="0.1.0",
    packages=find_packages(exclude=["tests"]),
    include_package_data=True,
    package_data={
        "textnet": ["data/*.txt"]
    },
    zip_safe=False,
    install_requires=[
        "click",
        "jsonschema",
        "networkx",
        "nltk",
        "numpy"
    ],
    entry_points={
        "console_scripts": [
            "textnet=textnet.cli:cli"
        ]
    }
)
