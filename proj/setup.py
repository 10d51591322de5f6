"""Builds the pybind11 module through the project's CMake configuration."""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve()
        build_dir.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                str(source_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DSTS21_PYTHON=ON",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            cwd=build_dir,
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_core"], cwd=build_dir, check=True
        )
        built = list((build_dir / "python" / "sts21").glob("_core*"))
        if not built:
            raise RuntimeError("CMake did not produce the _core module")
        dest = Path(self.get_ext_fullpath(ext.name)).resolve()
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built[0], dest)


setup(
    ext_modules=[CMakeExtension("sts21._core")],
    cmdclass={"build_ext": CMakeBuild},
)
