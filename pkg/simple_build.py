#!/usr/bin/env python3
"""
One-File Build Script for AdiaRank
Packs the adiarank command into a single console executable and smoke-tests it
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

EXECUTABLE_NAME = "adiarank"
DIST_DIR = Path("dist")

# Large packages that can end up in the bundle through optional imports
EXCLUDED_MODULES = ["torch", "tensorflow", "sklearn", "sympy", "tkinter", "PyQt5", "PyQt6", "PySide6"]

# scipy and matplotlib load these lazily, PyInstaller cannot see them
HIDDEN_IMPORTS = [
    "scipy.special._cdflib",
    "scipy.sparse.linalg._eigen.arpack",
    "matplotlib.backends.backend_agg",
    "matplotlib.backends.backend_svg",
]


def pyinstaller_command():
    cmd = ["pyinstaller", "--onefile", "--console", "--clean", "--name", EXECUTABLE_NAME]
    for module in EXCLUDED_MODULES:
        cmd += ["--exclude-module", module]
    for module in HIDDEN_IMPORTS:
        cmd += ["--hidden-import", module]
    cmd += ["--collect-data", "matplotlib", "main.py"]
    return cmd


def clean_build():
    """Remove build/, dist/ and generated .spec files"""
    print("🧹 Removing old build output...")
    for directory in ("build", "dist", "__pycache__"):
        shutil.rmtree(directory, ignore_errors=True)
    for generated in Path(".").glob("*.spec"):
        generated.unlink()


def build_executable():
    print("🚀 Running PyInstaller...")
    result = subprocess.run(pyinstaller_command(), capture_output=True, text=True)
    executable = DIST_DIR / EXECUTABLE_NAME
    if result.returncode != 0 or not executable.exists():
        print("❌ PyInstaller failed")
        print(result.stderr[-2000:])
        return None

    executable.chmod(0o755)
    print(f"📦 {executable.absolute()} ({executable.stat().st_size / 2 ** 20:.1f} MB)")
    return executable


def smoke_test(executable):
    """gen -> pagerank -> gapscan on an 8-node graph"""
    print("🧪 Smoke test...")
    with tempfile.TemporaryDirectory() as tmp:
        graph = str(Path(tmp) / "g.edges")
        steps = [
            ["gen", "--model", "pa", "--n", "8", "--seed", "1", "--out", graph],
            ["pagerank", "--graph", graph],
            ["gapscan", "--graph", graph, "--grid", "16"],
        ]
        for args in steps:
            result = subprocess.run([str(executable)] + args, capture_output=True, text=True)
            if result.returncode != 0:
                print(f"❌ '{args[0]}' exited with {result.returncode}: {result.stderr.strip()}")
                return False
            print(f"   {args[0]} ok")
    return True


def main():
    if not Path("main.py").exists():
        print("❌ Run this script from the repository root (main.py not found)")
        sys.exit(1)

    clean_build()
    executable = build_executable()
    if executable is None or not smoke_test(executable):
        sys.exit(1)
    print(f"🎉 Done: {DIST_DIR / EXECUTABLE_NAME}")


if __name__ == "__main__":
    main()
