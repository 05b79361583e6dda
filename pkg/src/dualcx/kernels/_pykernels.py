"""Pure-Python kernels. Same contracts as the compiled ``_ckernels`` module."""


def _reduce_a_list(buf):
    out = []
    for x in buf:
        if not out or out[-1] != x:
            out.append(x)
    # cyclic wraparound: a_n == a_1 removes a_n; a length-1 word vanishes
    while out and out[-1] == out[0]:
        out.pop()
    return out


def reduce_a(codes):
    """Canonical (a)-reduction of an integer-coded cyclic word."""
    return _reduce_a_list(list(codes))


def reduce_ab(codes):
    """Canonical (a,b)-reduction: (a) to fixpoint, then the largest-index (b), repeat."""
    buf = _reduce_a_list(list(codes))
    while len(buf) >= 2:
        n = len(buf)
        for i in range(n - 1, -1, -1):
            if buf[i] == buf[(i + 2) % n]:
                break
        else:
            break
        if i == n - 1:
            # removes a_n and a_{n+1} = a_1
            buf = buf[1:n - 1]
        else:
            del buf[i:i + 2]
        buf = _reduce_a_list(buf)
    return buf


def peel_greedy(n, masks):
    """Greedy peel on a configuration of ``n`` components.

    ``masks`` holds one bitmask per marked point (bit i set when the point lies
    on component i). Returns the removal order ending with the last component,
    or None when the greedy peel gets stuck.
    """
    if n <= 0:
        return None
    remaining = (1 << n) - 1
    order = []
    while remaining & (remaining - 1):
        for i in range(n):
            if not (remaining >> i) & 1:
                continue
            rest = remaining & ~(1 << i)
            count = 0
            for m in masks:
                if (m >> i) & 1 and m & rest:
                    count += 1
                    if count > 1:
                        break
            if count == 1:
                order.append(i)
                remaining = rest
                break
        else:
            return None
    order.append(remaining.bit_length() - 1)
    return order
