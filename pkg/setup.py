from setuptools import setup
import os

# Get the directory where setup.py is located
here = os.path.abspath(os.path.dirname(__file__))

setup(
    name="cf-tailbound",
    version="0.1.0",
    description="Rigorous tail bounds for probability distributions from their characteristic functions",
    author="cf-tailbound developers",
    py_modules=[
        'main', 'bounds', 'cf_core', 'oracle', 'quadrature',
        'search', 'settings', 'errors', 'trigpoly',
    ],
    data_files=[
        ('cf_tailbound_config', [
            os.path.join(here, 'config', 'defaults.yaml'),
            os.path.join(here, 'config', 'verify_plan.yaml'),
        ]),
    ],
    install_requires=[
        "numpy>=1.24",
        "scipy>=1.10",
        "pyyaml>=6.0",
    ],
    extras_require={
        'dev': [
            'pytest>=7.4.0',
            'pytest-cov>=4.1.0',
            'pytest-mock>=3.11.1',
            'hypothesis>=6.80.0',
            'black>=23.0.0',
            'flake8>=6.0.0',
            'mypy>=1.5.0',
        ],
    },
    entry_points={
        'console_scripts': [
            'cf-tailbound=main:main',
        ],
    },
    python_requires='>=3.8',
)
