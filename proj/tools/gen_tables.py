#!/usr/bin/env python3
# Copyright 2026 The litmap Authors
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

# Regenerates data/dblp_entities.json and src/clean/translit_table.cpp.
import html.entities
import json
import pathlib
import unicodedata

root = pathlib.Path(__file__).resolve().parent.parent

# dblp.dtd declares the ISO 8859-1 character entities.
entities = {name: cp for cp, name in sorted(html.entities.codepoint2name.items()) if 160 <= cp <= 255}
(root / "data" / "dblp_entities.json").write_text(json.dumps(entities, indent=1, sort_keys=True) + "\n")

special = {
    0x00C6: "AE", 0x00E6: "ae", 0x00D8: "O", 0x00F8: "o", 0x00DF: "ss", 0x00D0: "D", 0x00F0: "d",
    0x00DE: "Th", 0x00FE: "th", 0x0110: "D", 0x0111: "d", 0x0126: "H", 0x0127: "h", 0x0131: "i",
    0x0141: "L", 0x0142: "l", 0x0152: "OE", 0x0153: "oe", 0x0166: "T", 0x0167: "t", 0x0132: "IJ",
    0x0133: "ij", 0x0138: "k", 0x013F: "L", 0x0140: "l", 0x014A: "N", 0x014B: "n", 0x0149: "n",
    0x017F: "s", 0x00A0: " ", 0x00A9: "(c)", 0x00AE: "(R)", 0x00B4: "'", 0x00B7: ".", 0x00D7: "x",
    0x00F7: "/", 0x00AB: "\"", 0x00BB: "\"", 0x00B2: "2", 0x00B3: "3", 0x00B9: "1", 0x00BC: "1/4",
    0x00BD: "1/2", 0x00BE: "3/4", 0x00B5: "u", 0x00AD: "",
    0x2010: "-", 0x2011: "-", 0x2012: "-", 0x2013: "-", 0x2014: "-", 0x2015: "-", 0x2018: "'",
    0x2019: "'", 0x201A: "'", 0x201B: "'", 0x201C: "\"", 0x201D: "\"", 0x201E: "\"", 0x2026: "...",
    0x2032: "'", 0x2033: "\"", 0x2002: " ", 0x2003: " ", 0x2009: " ", 0x200A: " ", 0x200B: "",
    0x2022: "*", 0x2122: "TM", 0x2212: "-", 0x00A1: "!", 0x00BF: "?",
}

table = {}
for cp in list(range(0x00A0, 0x0250)) + list(range(0x1E00, 0x1F00)) + sorted(special):
    if cp in special:
        table[cp] = special[cp]
        continue
    decomposed = unicodedata.normalize("NFKD", chr(cp))
    ascii_part = "".join(ch for ch in decomposed if ord(ch) < 128)
    if ascii_part and all(32 <= ord(c) < 127 for c in ascii_part):
        table[cp] = ascii_part

LICENSE = ['// Copyright 2026 The litmap Authors', '//', '// Licensed under the Apache License, Version 2.0 (the "License");', '// you may not use this file except in compliance with the License.', '// You may obtain a copy of the License at', '//', '//     http://www.apache.org/licenses/LICENSE-2.0', '//', '// Unless required by applicable law or agreed to in writing, software', '// distributed under the License is distributed on an "AS IS" BASIS,', '// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.', '// See the License for the specific language governing permissions and', '// limitations under the License.']

lines = LICENSE + [
    "",
    "// Generated by tools/gen_tables.py. Do not edit.",
    "",
    '#include "clean/translit_table.hpp"',
    "",
    "namespace litmap::clean::detail {",
    "",
    "namespace {",
    "",
    "const TranslitEntry kEntries[] = {",
]
for cp in sorted(table):
    lines.append('    {0x%04X, "%s"},' % (cp, table[cp].replace("\\", "\\\\").replace('"', '\\"')))
lines += [
    "};",
    "",
    "}  // namespace",
    "",
    "std::span<const TranslitEntry> translit_table() { return kEntries; }",
    "",
    "}  // namespace litmap::clean::detail",
    "",
]
(root / "src" / "clean").mkdir(parents=True, exist_ok=True)
(root / "src" / "clean" / "translit_table.cpp").write_text("\n".join(lines))
print(len(entities), "entities;", len(table), "translit entries")
