from setuptools import find_packages, setup

setup(
    name='detident',
    version='1.0.0',
    packages=find_packages(exclude=['tests']),
    include_package_data=True,
    zip_safe=False,
    python_requires='>= 3.8',
    install_requires=[
        'click',
        'dulwich',
        'flask',
        'tinydb>=4',
    ],
    extras_require={
        'dev': [
            'coverage',
            'hypothesis',
            'pytest',
        ],
    },
    entry_points={
        'console_scripts': [
            'detident = detident.cli:main',
        ],
    },
)
