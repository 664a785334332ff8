"""Regenerate the bundled synthetic inquest sample (src/littext/data/inquests_sample.tsv).

The sample imitates the style of Georgian-era coroner inquest summaries:
one short sentence per case plus a verdict and the gender of the deceased.
Rows are synthetic; a handful of well-known example sentences from public
descriptions of such datasets are included verbatim as anchors.

Deterministic: fixed seed, stable ordering.
"""

from __future__ import annotations

import random
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src/littext/data/inquests_sample.tsv"

FEMALE = """Mary Ann Elizabeth Sarah Jane Hannah Martha Margaret Susannah Catherine
Eleanor Frances Charlotte Lucy Esther Rachel Rebecca Alice Lydia Harriet Sophia
Amelia Dorothy Grace Phoebe""".split()

MALE = """John William Thomas James George Richard Joseph Samuel Edward Henry
Robert Charles Daniel Benjamin Matthew Peter Francis Stephen Nicholas Jonathan
Abraham Isaac Jacob Walter Hugh""".split()

SURNAMES = """Roberts Gardiner Bone Dayson Cusack Smith Jones Taylor Brown Davies
Wilson Evans Walker Wright Turner Hill Clarke Cooper Ward Baker Carter Mills Webb
Cole Price Bell Wood Harris Fletcher Hawkins Porter Mason Dixon Holt Gibson Pearce
Norris Whitfield Crane Dudley Farrow Ashby Kemp Rowe Spencer""".split()

# (template, verdict, gender pool) ; {s} is replaced by the reflexive pronoun
ROWS: list[tuple[str, int, str, str]] = []


def add(n: int, template: str, verdict: str, pool: str) -> None:
    ROWS.append((template, n, verdict, pool))


# drowned stays the most frequent cause by a clear margin
add(12, "drowned in a pond.", "Accident", "any")
add(8, "drowned in the River Thames.", "Accident", "any")
add(8, "drowned in a ditch.", "Accident", "any")
add(6, "drowned in the canal.", "Accident", "any")
add(4, "drowned in a gravel pit.", "Accident", "any")
add(2, "drowned at sea.", "Accident", "male")
add(11, "drowned {s}.", "Suicide", "any")
add(6, "drowned in the Thames.", "Undetermined", "any")

add(10, "struck with hand.", "Homicide", "any")
add(3, "struck with a poker.", "Homicide", "any")
add(6, "struck with a beam.", "Accident", "male")
add(3, "struck with a bottle.", "Accident", "male")
add(2, "struck with a broom.", "Accident", "female")

add(14, "killed by a cart.", "Accident", "any")
add(8, "killed by a horse.", "Accident", "male")
add(5, "killed by a waggon.", "Accident", "male")

add(12, "fell from a ladder.", "Accident", "male")
add(6, "fell from a horse.", "Accident", "male")
add(6, "fell down a stair.", "Accident", "any")
add(4, "fell into a cellar.", "Accident", "any")

add(10, "died of a fever.", "Natural", "any")
add(8, "died of smallpox.", "Natural", "any")
add(4, "died of old age.", "Natural", "any")
add(4, "died in the night.", "Natural", "any")

add(7, "suffocated in a pit.", "Accident", "male")
add(6, "suffocated by smoke.", "Accident", "any")

add(7, "burnt in a fire.", "Accident", "female")
add(6, "burnt by a candle.", "Accident", "female")

add(8, "crushed under a waggon.", "Accident", "male")
add(6, "crushed in a mill.", "Accident", "male")

add(12, "hanged {s}.", "Suicide", "any")
add(8, "strangled with a cord.", "Homicide", "any")
add(4, "strangled with an apron string.", "Homicide", "female")

add(5, "stabbed with a knife.", "Homicide", "any")
add(3, "stabbed with a sword.", "Homicide", "male")

add(5, "shot with a pistol.", "Homicide", "male")
add(3, "shot {s} with a pistol.", "Suicide", "male")

add(4, "poisoned by arsenic.", "Homicide", "any")
add(4, "poisoned {s} with laudanum.", "Suicide", "any")

add(6, "scalded by hot water.", "Accident", "female")
add(6, "choked on a bone.", "Accident", "any")
add(5, "overlaid her child.", "Accident", "female")
add(5, "perished in the snow.", "Undetermined", "any")
add(4, "beaten with a stick.", "Homicide", "male")

ANCHORS = [
    ("Mary Roberts drowned herself.", "Suicide", "Female"),
    ("Mary Gardiner struck with hand.", "Homicide", "Female"),
    ("Ann Fitsall suffocated and burnt.", "Accident", "Female"),
    (
        "Nicholas Bone, John Dayson and James Cusack killed by a brick wall.",
        "Accident",
        "Male",
    ),
    ("Sarah Skyring struck with an adze.", "Homicide", "Female"),
    ("William Blakshaw struck with a bar.", "Accident", "Male"),
    ("Elizabeth Child drowned in a pond.", "Accident", "Female"),
    ("Thomas Child fell from a ladder.", "Accident", "Male"),
    ("Hannah Child died of a fever.", "Natural", "Female"),
]

MULTI = [
    ("drowned when a boat overturned.", "Accident", "male", 2),
    ("drowned when a boat overturned.", "Accident", "male", 2),
    ("suffocated in a pit.", "Accident", "male", 2),
]

UNPARSEABLE = [
    ("A man unknown drowned in the Thames.", "Undetermined", "Unknown"),
    ("A man unknown perished in the snow.", "Undetermined", "Unknown"),
    ("A woman unknown died in the street.", "Undetermined", "Unknown"),
    ("A child unknown drowned in a pond.", "Accident", "Unknown"),
    ("A child unknown suffocated by smoke.", "Accident", "Unknown"),
    ("A man unknown died of a fever.", "Natural", "Unknown"),
]


def main() -> None:
    rng = random.Random(20260809)
    used: set[tuple[str, str]] = set()

    def pick_name(pool: str) -> tuple[str, str]:
        firsts = {"female": FEMALE, "male": MALE}.get(pool) or (FEMALE + MALE)
        while True:
            first = rng.choice(firsts)
            last = rng.choice(SURNAMES)
            if (first, last) not in used:
                used.add((first, last))
                return first, last

    rows: list[tuple[str, str, str]] = [(t, v, g) for t, v, g in ANCHORS]
    for template, n, verdict, pool in ROWS:
        for _ in range(n):
            chosen_pool = pool if pool != "any" else rng.choice(["female", "male"])
            first, last = pick_name(chosen_pool)
            gender = "Female" if first in FEMALE else "Male"
            reflexive = "herself" if gender == "Female" else "himself"
            body = template.replace("{s}", reflexive)
            rows.append((f"{first} {last} {body}", verdict, gender))
    for template, verdict, pool, count in MULTI:
        names = [" ".join(pick_name(pool)) for _ in range(count)]
        joined = " and ".join([", ".join(names[:-1]), names[-1]]) if count > 2 else " and ".join(names)
        rows.append((f"{joined} {template}", verdict, "Male"))
    rows.extend(UNPARSEABLE)

    rng.shuffle(rows)
    lines = ["id\ttext\tverdict\tgender"]
    for i, (text, verdict, gender) in enumerate(rows, start=1):
        lines.append(f"{i}\t{text}\t{verdict}\t{gender}")
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} rows to {OUT}")


if __name__ == "__main__":
    main()
