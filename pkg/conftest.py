import pathlib
import sys

_root = pathlib.Path(__file__).parent
for _p in (_root / "src", _root / "tests"):
    if str(_p) not in sys.path:
        sys.path.insert(0, str(_p))
