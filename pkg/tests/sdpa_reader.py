"""Minimal SDPA sparse reader used to check exports independently of the writer."""
from dataclasses import dataclass, field


@dataclass
class SdpaProblem:
    mdim: int
    blocks: list
    b: list
    # (matno, blkno, i, j) -> value, 1-based as in the file
    entries: dict = field(default_factory=dict)

    def matrix(self, matno):
        return {k[1:]: v for k, v in self.entries.items() if k[0] == matno}


def read_sdpa(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and ln[0] not in '*"']
    mdim = int(lines[0])
    nblock = int(lines[1])
    blocks = [int(v) for v in lines[2].replace(",", " ").split()]
    assert len(blocks) == nblock
    b = [float(v) for v in lines[3].replace(",", " ").split()] if mdim else []
    body = lines[4:] if mdim else lines[3:]
    assert len(b) == mdim
    prob = SdpaProblem(mdim, blocks, b)
    for ln in body:
        m, blk, i, j, v = ln.split()
        key = (int(m), int(blk), int(i), int(j))
        assert key not in prob.entries, f"duplicate entry {key}"
        assert int(i) <= int(j), "entries must be in the upper triangle"
        prob.entries[key] = float(v)
    return prob


def inner(prob, matno, Y):
    """``F_matno . Y`` for block-diagonal ``Y`` given as a list of dense blocks."""
    total = 0.0
    for (blk, i, j), v in prob.matrix(matno).items():
        y = Y[blk - 1]
        total += v * y[i - 1][j - 1] * (1 if i == j else 2)
    return total
