# Copyright 2026 The tweetinfo Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes normalize_golden.tsv (raw<TAB>expected).

Each dictionary entry is placed in a neutral context whose words are not
keys themselves, so the expected text is the context with the value
substituted. Values are lowercase ASCII normal forms, which the later
stages leave alone. The hand-written cases at the end exercise several
stages at once and were worked out by hand.
"""

import pathlib

ROOT = pathlib.Path(__file__).resolve().parents[2]
DICTS = ROOT / "data" / "dictionaries"


def load(name):
    out = []
    for line in (DICTS / name).read_text(encoding="utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        key, value = line.split("\t")
        out.append((key, value))
    return out


rows = []
for key, value in load("contractions.tsv"):
    rows.append((f"{key} here", f"{value} here"))
    rows.append((f"Yes, {key.upper()}!", f"yes {value}"))
for key, value in load("slang.tsv"):
    rows.append((f"see {key} today", f"see {value} today"))
    rows.append((f"{key.capitalize()}... ok", f"{value} ok"))
for key, value in load("interjections.tsv"):
    rows.append((f"said {key} today", f"said {value} today"))
    rows.append((f"{key.upper()}!!!", value))
for key, value in load("emoji.tsv"):
    rows.append((f"masks{key}help", f"masks {value} help"))
    rows.append((f"{key}{key}", f"{value} {value}"))

rows += [
    ("I'm sooo happy 😀", "i am soo happy grinning face"),
    ("OMG!!! U r sooo rite 😂😂",
     "oh my god you r soo rite face with tears of joy face with tears of joy"),
    ("Owww!! that hurt", "pain that hurt"),
    ("Can't wait 2morrow... #COVID19 @who", "cannot wait tomorrow covid19 who"),
    ("we're #1 🇺🇸🇺🇸", "we are 1 flag united states flag united states"),
    ("Stay safe ❤️", "stay safe red heart"),
    ("i.m fine", "i am fine"),
    ("Cases: 1,234 (up 5%)", "cases 1234 up 5"),
    ("hello!!! ☀ world", "hello sun world"),
    ("AAAHHH", "aahh"),
    ("hmmmm ok", "thinking ok"),
    ("", ""),
    ("   ", ""),
    ("don't dont", "do not do not"),
    ("ME: LOL", "me laughing out loud"),
    ("y'all ok?", "you all ok"),
    ("it's 2nite!!", "it is tonight"),
    ("coooool", "cool"),
    ("2morrow", "tomorrow"),
    ("oww", "pain"),
    ("I'm", "i am"),
]

with open(pathlib.Path(__file__).with_name("normalize_golden.tsv"), "w",
          encoding="utf-8", newline="\n") as f:
    for raw, expected in rows:
        assert "\t" not in raw and "\n" not in raw
        f.write(f"{raw}\t{expected}\n")
print(len(rows), "rows")
