from setuptools import setup, find_packages

setup(
    name='zgknctl',
    version='1.0.0',
    description='Point spectrum of the Dirac equation on the zero-gravity Kerr-Newman spacetime',
    packages=find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*']),
    py_modules=['zgknctl', 'utils'],
    python_requires='>=3.8',
    install_requires=[
        'numpy',
        'scipy',
        'tabulate',
        'argcomplete',
    ],
    extras_require={
        'test': ['pytest'],
    },
    entry_points={
        'console_scripts': [
            'zgknctl=zgknctl:main',
        ],
    },
)
