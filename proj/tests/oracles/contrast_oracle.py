"""Independent WCAG 2.x relative-luminance and contrast evaluation.

Writes contrast_goldens.json next to this file, or with --check verifies
that the committed goldens still match.
"""

import json
import sys
from pathlib import Path

PAIRS = [
    ("#000000", "#ffffff"),
    ("#ffffff", "#000000"),
    ("#767676", "#ffffff"),
    ("#777777", "#ffffff"),
    ("#949494", "#ffffff"),
    ("#eeeeee", "#ffffff"),
    ("#efefef", "#ffffff"),
    ("#333333", "#ffffff"),
    ("#0000ee", "#ffffff"),
    ("#ff0000", "#00ff00"),
    ("#123456", "#abcdef"),
    ("#808080", "#808080"),
]


def channel(v):
    c = v / 255.0
    return c / 12.92 if c <= 0.03928 else ((c + 0.055) / 1.055) ** 2.4


def luminance(hex_color):
    r, g, b = (int(hex_color[i:i + 2], 16) for i in (1, 3, 5))
    return 0.2126 * channel(r) + 0.7152 * channel(g) + 0.0722 * channel(b)


def ratio(a, b):
    hi, lo = sorted((luminance(a), luminance(b)), reverse=True)
    return (hi + 0.05) / (lo + 0.05)


def goldens():
    return {
        "pairs": [{"fg": a, "bg": b, "ratio": ratio(a, b)} for a, b in PAIRS],
        "luminance": {c: luminance(c) for c in sorted({x for p in PAIRS for x in p})},
    }


def main():
    path = Path(__file__).with_name("contrast_goldens.json")
    data = goldens()
    if "--check" in sys.argv:
        stored = json.loads(path.read_text())
        if stored != data:
            print("contrast goldens are stale", file=sys.stderr)
            return 1
        print("contrast goldens match the oracle")
        return 0
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
