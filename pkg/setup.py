from setuptools import setup, find_packages

VERSION = "1.0.0"

classifiers = [
    'Intended Audience :: Developers',
    'Intended Audience :: Science/Research',
    'Natural Language :: English',
    'Topic :: Scientific/Engineering',
    'Topic :: Communications'
]


with open("README.md", "r") as fh:
    long_description = fh.read()

setup(
    name="sc-analysis",
    version=VERSION,
    platforms=["any"],
    description="Spectro-computational throughput, capacity and"
                " complexity analysis of waveforms",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=classifiers,
    packages=find_packages(exclude=('tests',)),
    package_data={'sc_analysis': ['scenarios/*.scn']},
    python_requires='>=3.8',
    install_requires=[
        'numpy >= 1.17',
        'tqdm',
    ],
    tests_require=['pytest'],
    entry_points={
        'console_scripts': [
            'sc-analysis = sc_analysis.sc_cli:main',
        ]},
)
