"""Write gadget fixture matrices in the JSON matrix format.

Usage: python3 scripts/dump_gadgets.py OUTDIR [--seed N] [--size N]
"""

import argparse
import json
import pathlib
import sys

from qcanon.qmatrix import QMatrix
from qcanon.testkit import gadget_M5, gadget_MA, gadget_wild, make_rng, random_qmatrix, random_quaternion


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--size", type=int, default=2, help="block size n of the wild constructions")
    args = ap.parse_args()
    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    rng = make_rng(args.seed)

    def dump(name, obj):
        data = obj.to_json_obj() if isinstance(obj, QMatrix) else {"A": obj[0].to_json_obj(), "B": obj[1].to_json_obj()}
        (out / f"{name}.json").write_text(json.dumps(data))
        print("wrote", out / f"{name}.json")

    a = random_quaternion(rng)
    s = random_quaternion(rng)
    dump("MA", gadget_MA(a))
    dump("MA_conjugate", gadget_MA(s.inverse() * a * s))
    dump("M5", gadget_M5(*(random_quaternion(rng) for _ in range(4))))
    m = random_qmatrix(rng, args.size)
    dump("wild_a", gadget_wild("a", QMatrix(m.z1)))
    for kind in "bcd":
        dump(f"wild_{kind}", gadget_wild(kind, m))
    return 0


if __name__ == "__main__":
    sys.exit(main())
