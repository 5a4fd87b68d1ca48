from setuptools import setup, find_packages
from setuptools.command.test import test as TestCommand
import sys


class PyTest(TestCommand):
    user_options = [('pytest-args=', 'a', "Arguments to pass to pytest")]

    def initialize_options(self):
        TestCommand.initialize_options(self)
        self.pytest_args = []

    def run_tests(self):
        import shlex
        # import here, cause outside the eggs aren't loaded
        import pytest
        errno = pytest.main(shlex.split(self.pytest_args))
        sys.exit(errno)


def readme():
    with open('README.rst') as f:
        return f.read()


install_requires = ['docrep>=0.3', 'model-organization', 'funcargparse',
                    'pyyaml<6', 'numpy', 'pandas']


setup(name='credalaudit',
      version='1.0.0',
      description='Exact audits of update rules for sets of probability '
                  'measures',
      long_description=readme(),
      classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering',
        'License :: OSI Approved :: GNU General Public License v2 (GPLv2)',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.6',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Operating System :: Unix',
        'Operating System :: MacOS',
      ],
      keywords='credal sets imprecise probability conditioning belief '
               'functions linear programming',
      author='Philipp Sommer',
      author_email='philipp.sommer@unil.ch',
      license="GPLv2",
      packages=find_packages(exclude=['docs', 'tests*', 'examples']),
      install_requires=install_requires,
      package_data={'credalaudit': [
          'logging.yaml',
          'data/*.yaml',
          ]},
      include_package_data=True,
      python_requires='>=3.6',
      tests_require=['pytest'],
      cmdclass={'test': PyTest},
      entry_points={'console_scripts': [
          'credalaudit=credalaudit.main:main']},
      zip_safe=False)
