"""Frozen catalogue of graded Betti tables for the eight-generator family.

The ten tables list the possible graded Betti numbers of codimension-four
Gorenstein quotients minimally generated by eight elements, the family
whose higher structure maps live on the largest exceptional grading.
Each table is stored sparsely as ``{row: {column: value}}``; column 0
holds the ring, columns 1-3 the resolution ranks (8, 14, 8), and column
4 the socle.  One table in the catalogue carries two extra rank-one
entries in its middle columns and is recorded exactly as published.

``render_rows`` produces the canonical text form, one line per row:
``"r: v1 v2 ..."`` with the nonzero entries in column order, and a bare
``"r:"`` for rows with no entries.  ``tables_payload`` wraps the whole
catalogue as a JSON-safe value (string keys, plain ints and strings)
that survives a serialization round trip unchanged.
"""

__all__ = [
    "BETTI_TABLES_E8",
    "render_rows",
    "render_table",
    "tables_payload",
]


BETTI_TABLES_E8 = (
    {
        0: {0: 1},
        1: {1: 1},
        2: {1: 7, 2: 14, 3: 7},
        3: {3: 1},
        4: {4: 1},
    },
    {
        0: {0: 1},
        1: {1: 1},
        2: {1: 3},
        3: {1: 4, 2: 14, 3: 4},
        4: {3: 3},
        5: {3: 1},
        6: {4: 1},
    },
    {
        0: {0: 1},
        2: {1: 2},
        3: {1: 4},
        4: {1: 2, 2: 14, 3: 2},
        5: {3: 4},
        6: {3: 2},
        8: {4: 1},
    },
    {
        0: {0: 1},
        3: {1: 4},
        4: {1: 3},
        5: {1: 1, 2: 14, 3: 1},
        6: {3: 3},
        7: {3: 4},
        10: {4: 1},
    },
    {
        0: {0: 1},
        2: {1: 1},
        3: {1: 1},
        4: {1: 6},
        5: {2: 14},
        6: {3: 6},
        7: {3: 1},
        8: {3: 1},
        10: {4: 1},
    },
    {
        0: {0: 1},
        4: {1: 7},
        6: {1: 1, 2: 14, 3: 1},
        8: {3: 7},
        12: {4: 1},
    },
    {
        0: {0: 1},
        3: {1: 1},
        4: {1: 4},
        5: {1: 3},
        6: {2: 14},
        7: {3: 3},
        8: {3: 4},
        9: {3: 1},
        12: {4: 1},
    },
    {
        0: {0: 1},
        4: {1: 2},
        5: {1: 5},
        6: {1: 1},
        7: {2: 14},
        8: {3: 1},
        9: {3: 2},
        10: {3: 5},
        14: {4: 1},
    },
    {
        0: {0: 1},
        5: {1: 4},
        6: {1: 4, 2: 1},
        7: {1: 1},
        8: {2: 14},
        9: {3: 1},
        10: {2: 1, 3: 4},
        11: {3: 4},
        16: {4: 1},
    },
    {
        0: {0: 1},
        6: {1: 7},
        7: {1: 1},
        9: {2: 14},
        11: {3: 1},
        12: {3: 7},
        18: {4: 1},
    },
)


def render_rows(table):
    """Canonical text lines of one table, top row zero through the socle
    row, nonzero entries joined in column order."""
    top = max(table)
    lines = []
    for r in range(top + 1):
        row = table.get(r, {})
        cells = [str(row[c]) for c in sorted(row)]
        line = "%d:" % r
        if cells:
            line += " " + " ".join(cells)
        lines.append(line)
    return lines


def render_table(table):
    """The canonical text of one table as a single newline-joined block."""
    return "\n".join(render_rows(table))


def tables_payload():
    """JSON-safe catalogue: sparse integer entries plus canonical text."""
    tables = []
    for index, table in enumerate(BETTI_TABLES_E8, start=1):
        entries = {
            str(r): {str(c): v for c, v in sorted(row.items())}
            for r, row in sorted(table.items())
        }
        tables.append(
            {
                "index": index,
                "entries": entries,
                "text": render_rows(table),
            }
        )
    return {"family": "e8", "columns": 5, "tables": tables}
