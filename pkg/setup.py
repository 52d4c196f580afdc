"""
Файл настройки для установки пакета bc_quant.
"""

from setuptools import find_packages, setup

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

with open("requirements.txt", "r", encoding="utf-8") as fh:
    requirements = [line.strip() for line in fh if line.strip() and not line.startswith("#")]

setup(
    name="bc_quant",
    version="0.1.0",
    author="BC Quant Team",
    author_email="example@example.com",
    description="Количественные сертификаты для лемм Бореля-Кантелли и их обобщений",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/username/bc_quant",
    packages=find_packages(),
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=requirements,
    entry_points={
        "console_scripts": [
            "bc-quant=bc_quant.main:main",
        ],
    },
)
