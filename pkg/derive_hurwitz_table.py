"""
Derive the multiplication table of the Hurwitz quaternions modulo 2

Products of the basis (1, i, j, w), w = (1 + i + j + k)/2, are computed with
exact rational quaternion arithmetic and written in the fixture format read
by app.algebra.rings.hurwitz_mod2. Run with --check to compare the output
with the committed fixture and its recorded SHA-256.
"""
from fractions import Fraction
from pathlib import Path
import argparse
import hashlib
import sys

DATA_PATH = Path(__file__).resolve().parent / "data"
FIXTURE = DATA_PATH / "hurwitz_mod2.txt"
DIGEST = DATA_PATH / "hurwitz_mod2.sha256"

HEADER = [
    "# Hurwitz quaternions modulo 2 in the basis (1, i, j, w), w = (1 + i + j + k)/2",
    "# each product lists its coordinates in basis order, generated by derive_hurwitz_table.py",
]

HALF = Fraction(1, 2)

# (real, i, j, k)
BASIS = {
    "1": (Fraction(1), Fraction(0), Fraction(0), Fraction(0)),
    "i": (Fraction(0), Fraction(1), Fraction(0), Fraction(0)),
    "j": (Fraction(0), Fraction(0), Fraction(1), Fraction(0)),
    "w": (HALF, HALF, HALF, HALF),
}


def multiply(p, q):
    """Hamilton product"""
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def coordinates(q):
    """
    Coordinates of a Hurwitz quaternion in the basis (1, i, j, w)

    x0 + x1 i + x2 j + x3 w has k-part x3/2, so x3 = 2d and the other
    coordinates follow by subtracting x3 w.
    """
    a, b, c, d = q
    x3 = 2 * d
    coords = (a - x3 * HALF, b - x3 * HALF, c - x3 * HALF, x3)
    if any(x.denominator != 1 for x in coords):
        raise ValueError(f"{q} is not in the Hurwitz order")
    return tuple(int(x) for x in coords)


def render_table() -> str:
    lines = list(HEADER)
    for left, p in BASIS.items():
        for right, q in BASIS.items():
            bits = "".join(str(x % 2) for x in coordinates(multiply(p, q)))
            lines.append(f"{left} * {right} = {bits}")
    return "\n".join(lines) + "\n"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument("--check", action="store_true", help="compare with the committed fixture")
    args = parser.parse_args()

    text = render_table()
    if not args.check:
        sys.stdout.write(text)
        return 0

    recorded = DIGEST.read_text().split()[0]
    committed = FIXTURE.read_text()
    print(f"derived:   {digest(text)}")
    print(f"committed: {digest(committed)}")
    print(f"recorded:  {recorded}")
    ok = text == committed and digest(text) == recorded
    print("✓ fixture matches" if ok else "✗ fixture differs")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
