import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

eigen_include = os.environ.get("EIGEN_INCLUDE_DIR", "/usr/include/eigen3")

ext = Pybind11Extension(
    "gatekit._core",
    sources=[
        "src/gate_design.cpp",
        "src/analytic_engine.cpp",
        "src/hamiltonian_oracle.cpp",
        "src/scan_harness.cpp",
        "src/serialization.cpp",
        "src/verification.cpp",
        "python/gatekit_module.cpp",
    ],
    include_dirs=["include", "vendor", eigen_include],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
