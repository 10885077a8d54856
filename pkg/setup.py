import os

from setuptools import setup, find_packages

requirements_path = os.path.join(os.path.dirname(os.path.realpath(__file__)), 'requirements.txt')
with open(requirements_path) as requirements_file:
    requirements = [line for line in requirements_file.readlines()
                    if line.strip() and not line.startswith('#')]

__version__ = '1.0.0'


setup(
    name='macrodiversity-mrc',
    version=__version__,
    description='Symbol error rates, outage and error floors for MRC macrodiversity receivers with co-channel '
                'interference',
    packages=find_packages(exclude=['tests*']),
    include_package_data=True,
    dependency_links=[],
    install_requires=requirements,
    python_requires=">=3.8",
    entry_points="""
        [console_scripts]
        macro-mrc=macrodiversity_mrc.cli:main

        [run_log.post_exec.plugin]
        logging_run_log=macrodiversity_mrc.log.run_log_callback:logging_run_log
    """,
    classifiers=[
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
    ],
)
