"""Pure-Python twin of the compiled subset scan."""


def scan_error_objective(n, weights, tails, heads):
    m = len(tails)
    edge_masks = [(1 << t) | (1 << h) for t, h in zip(tails, heads)]
    size = 1 << n
    # chips plus one per vertex, accumulated over subsets by lowest set bit
    acc = [0] * size
    best_mask, best = 0, None
    scale = 2 * n
    for mask in range(size):
        if mask:
            low = mask & -mask
            acc[mask] = acc[mask ^ low] + weights[low.bit_length() - 1] + 1
        out = 0
        for em in edge_masks:
            if not mask & em:
                out += 1
        value = scale * (m - acc[mask] - out) + bin(mask).count("1")
        if best is None or value < best:
            best, best_mask = value, mask
    return best_mask, best
