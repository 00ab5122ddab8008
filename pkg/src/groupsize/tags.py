"""Size properties of subsets and the implications between them."""

from __future__ import annotations

import enum


class Prop(enum.Enum):
    LARGE = "Large"
    EXTRALARGE = "ExtraLarge"
    SMALL = "Small"
    THICK = "Thick"
    PRETHICK = "Prethick"
    THIN = "Thin"
    SPARSE = "Sparse"
    PSMALL = "PSmall"
    WEAKLY_PSMALL = "WeaklyPSmall"
    ALMOST_PSMALL = "AlmostPSmall"
    NEAR_PSMALL = "NearPSmall"
    SCATTERED = "Scattered"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> "Prop":
        key = text.strip().lower().replace("_", "").replace("-", "")
        for p in cls:
            if p.value.lower() == key:
                return p
        raise ValueError(f"unknown property {text!r}")


# (stronger, weaker): every set with the first property has the second one,
# in any countably infinite group.
IMPLICATIONS = (
    (Prop.THIN, Prop.SPARSE),
    (Prop.SPARSE, Prop.SCATTERED),
    (Prop.SCATTERED, Prop.SMALL),
    (Prop.PSMALL, Prop.ALMOST_PSMALL),
    (Prop.ALMOST_PSMALL, Prop.NEAR_PSMALL),
    (Prop.PSMALL, Prop.WEAKLY_PSMALL),
    (Prop.WEAKLY_PSMALL, Prop.NEAR_PSMALL),
    (Prop.EXTRALARGE, Prop.LARGE),
    (Prop.LARGE, Prop.PRETHICK),
    (Prop.THICK, Prop.PRETHICK),
)


def implication_closure() -> set[tuple[Prop, Prop]]:
    closure = set(IMPLICATIONS)
    changed = True
    while changed:
        changed = False
        for a, b in list(closure):
            for c, d in list(closure):
                if b == c and (a, d) not in closure:
                    closure.add((a, d))
                    changed = True
    return closure


def is_acyclic() -> bool:
    return all(a != b for a, b in implication_closure())
