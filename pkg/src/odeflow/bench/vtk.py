"""Legacy VTK structured-points snapshots (ASCII).

File layout, one line per item::

    # vtk DataFile Version 3.0
    <title>
    ASCII
    DATASET STRUCTURED_POINTS
    DIMENSIONS nx ny nz
    ORIGIN x0 y0 z0
    SPACING hx hy hz
    POINT_DATA nx*ny*nz
    SCALARS C0 double 1
    LOOKUP_TABLE default
    <nx*ny*nz values, x varying fastest, then y, then z>
    SCALARS C1 double 1
    ...

One ``SCALARS`` block per component.  Values are written with ``repr`` so
they round-trip exactly.
"""

import numpy as np

VALUES_PER_LINE = 6


def write_vtk(path, field, origin=(0.0, 0.0, 0.0), spacing=(1.0, 1.0, 1.0),
              title="odeflow snapshot", names=None):
    """Write a ``(C, nx, ny, nz)`` array as a structured-points file."""
    field = np.asarray(field, dtype=np.float64)
    if field.ndim == 3:
        field = field[np.newaxis]
    ncomp, nx, ny, nz = field.shape
    names = names or [f"C{c}" for c in range(ncomp)]
    lines = ["# vtk DataFile Version 3.0", title.replace("\n", " ")[:255], "ASCII",
             "DATASET STRUCTURED_POINTS",
             f"DIMENSIONS {nx} {ny} {nz}",
             "ORIGIN " + " ".join(repr(float(o)) for o in origin),
             "SPACING " + " ".join(repr(float(h)) for h in spacing),
             f"POINT_DATA {nx * ny * nz}"]
    for name, comp in zip(names, field):
        lines += [f"SCALARS {name} double 1", "LOOKUP_TABLE default"]
        flat = comp.ravel(order="F").tolist()
        for i in range(0, len(flat), VALUES_PER_LINE):
            lines.append(" ".join(map(repr, flat[i:i + VALUES_PER_LINE])))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_vtk(path):
    """Read a file written by :func:`write_vtk`.

    Returns ``(field, meta)`` where ``field`` has shape ``(C, nx, ny, nz)``
    and ``meta`` holds ``dims``, ``origin``, ``spacing``, ``names``, ``title``.
    """
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines[0].startswith("# vtk DataFile"):
        raise ValueError(f"{path}: not a legacy VTK file")
    meta = {"title": lines[1], "names": []}
    i = 2
    comps = []
    npts = None
    while i < len(lines):
        words = lines[i].split()
        i += 1
        if not words:
            continue
        key = words[0]
        if key == "DIMENSIONS":
            meta["dims"] = tuple(int(w) for w in words[1:4])
        elif key == "ORIGIN":
            meta["origin"] = tuple(float(w) for w in words[1:4])
        elif key == "SPACING":
            meta["spacing"] = tuple(float(w) for w in words[1:4])
        elif key == "POINT_DATA":
            npts = int(words[1])
        elif key == "SCALARS":
            meta["names"].append(words[1])
            if lines[i].startswith("LOOKUP_TABLE"):
                i += 1
            values = []
            while len(values) < npts:
                values.extend(float(w) for w in lines[i].split())
                i += 1
            comps.append(np.array(values).reshape(meta["dims"], order="F"))
    return np.stack(comps), meta
