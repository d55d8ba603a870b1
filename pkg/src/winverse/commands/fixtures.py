import os
import shutil

from winverse.commands.common import ArgumentParser
from winverse.io.matrix_file import FIXTURES_DIR, fixture_names


def main(argv=None):
    parser = ArgumentParser(prog="winverse fixtures", description="Write the bundled example matrices")
    parser.add_argument("--out", default=".", help="Target directory")
    args = parser.parse_args(argv)

    os.makedirs(args.out, exist_ok=True)
    for name in fixture_names():
        target = os.path.join(args.out, f"{name}.json")
        if os.path.exists(target):
            print(f"File {target} already exists, skipping.")
            continue
        shutil.copyfile(os.path.join(FIXTURES_DIR, f"{name}.json"), target)
        print(f"Wrote {target}")
    return 0


if __name__ == '__main__':
    raise SystemExit(main())
