from setuptools import setup, find_packages

setup(
    name="coin-communities",
    version="0.1",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[
        'python-dotenv==1.0.1',
        'pydantic==2.9.2',
        'pydantic-settings==2.6.1',
        'pydantic_core==2.23.4',
        'PyYAML==6.0.2',
        'coloredlogs==15.0.1',
        'numpy==1.26.4',
        'scipy==1.14.1',
        'pandas==2.2.3',
        'tqdm==4.67.1',
        'networkx==3.4.2',
    ],
    entry_points={
        'console_scripts': [
            'coin=src.cli.main:main',
        ],
    },
    python_requires='>=3.10',
)
