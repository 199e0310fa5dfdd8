#!/usr/bin/env python3
# Copyright 2026 The pqcdse Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#     http://www.apache.org/licenses/LICENSE-2.0
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes data/catalog_default.json: the 19-circuit family A01..A19 on 4 qubits.

Qubit 0 is the top wire. Two-qubit gates are [control, target]. Every column of
rotations that the reference drawings show at the edges of a layer is placed
inside layer_block, so each repetition gets fresh parameters. The one
exception is the Hadamard column of A09, which prepares |+>^n once as a
prologue; the CZ ladder and RX column repeat.
"""
import json
import sys

N = 4
Q = range(N)


def rot(kind, qubits=Q):
    return [{"kind": kind, "qubits": [q], "parametrized": True} for q in qubits]


def fixed(kind, qubits=Q):
    return [{"kind": kind, "qubits": [q], "parametrized": False} for q in qubits]


def two(kind, pairs):
    p = kind.startswith("CR")
    return [{"kind": kind, "qubits": [c, t], "parametrized": p} for c, t in pairs]


LADDER = [(3, 2), (2, 1), (1, 0)]
# Controls from the bottom wire up; each control's targets continue cyclically
# after itself so consecutive controlled rotations always share a wire.
ALL_TO_ALL = [(c, (c + k) % N) for c in (3, 2, 1, 0) for k in (1, 2, 3)]
EVEN_PAIRS = [(1, 0), (3, 2)]
ODD_PAIRS = [(2, 1)]
RING_A = [(3, 0), (2, 3), (1, 2), (0, 1)]
RING_B = [(3, 2), (0, 3), (1, 0), (2, 1)]
CZ_RING = [(3, 2), (2, 1), (1, 0), (0, 3)]


def xz():
    return rot("RX") + rot("RZ")


def yz(qubits=Q):
    return rot("RY", qubits) + rot("RZ", qubits)


CIRCUITS = [
    ("A01", "none", xz()),
    ("A02", "linear", xz() + two("CX", LADDER)),
    ("A03", "linear", xz() + two("CRZ", LADDER)),
    ("A04", "linear", xz() + two("CRX", LADDER)),
    ("A05", "all_to_all", xz() + two("CRZ", ALL_TO_ALL) + xz()),
    ("A06", "all_to_all", xz() + two("CRX", ALL_TO_ALL) + xz()),
    ("A07", "linear", xz() + two("CRZ", EVEN_PAIRS) + xz() + two("CRZ", ODD_PAIRS)),
    ("A08", "linear", xz() + two("CRX", EVEN_PAIRS) + xz() + two("CRX", ODD_PAIRS)),
    ("A09", "linear", two("CZ", LADDER) + rot("RX"), fixed("H")),
    ("A10", "circular", rot("RY") + two("CZ", CZ_RING) + rot("RY")),
    ("A11", "linear", yz() + two("CX", EVEN_PAIRS) + yz([1, 2]) + two("CX", ODD_PAIRS)),
    ("A12", "linear", yz() + two("CZ", EVEN_PAIRS) + yz([1, 2]) + two("CZ", ODD_PAIRS)),
    ("A13", "circular", rot("RY") + two("CRZ", RING_A) + rot("RY") + two("CRZ", RING_B)),
    ("A14", "circular", rot("RY") + two("CRX", RING_A) + rot("RY") + two("CRX", RING_B)),
    ("A15", "circular", rot("RY") + two("CX", RING_A) + rot("RY") + two("CX", RING_B)),
    ("A16", "linear", xz() + two("CRZ", EVEN_PAIRS + ODD_PAIRS)),
    ("A17", "linear", xz() + two("CRX", EVEN_PAIRS + ODD_PAIRS)),
    ("A18", "circular", xz() + two("CRZ", RING_A)),
    ("A19", "circular", xz() + two("CRX", RING_A)),
]


def gate_list(key, block, last):
    out = [f'      "{key}": [']
    for j, g in enumerate(block):
        sep = "," if j + 1 < len(block) else ""
        out.append("        " + json.dumps(g) + sep)
    out.append("      ]" + ("" if last else ","))
    return out


def render():
    lines = ["{", '  "format_version": 1,', '  "circuits": [']
    for i, (cid, conn, block, *prologue) in enumerate(CIRCUITS):
        lines.append("    {")
        lines.append(f'      "id": "{cid}", "n_qubits": {N}, "connectivity": "{conn}",')
        if prologue:
            lines += gate_list("prologue", prologue[0], False)
        lines += gate_list("layer_block", block, True)
        lines.append("    }" + ("," if i + 1 < len(CIRCUITS) else ""))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "data/catalog_default.json"
    text = render()
    json.loads(text)
    with open(out, "w") as f:
        f.write(text)
