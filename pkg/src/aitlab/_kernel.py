"""Compiled depth-first search over the opcode-demand tree.

Mirrors the semantics of :mod:`aitlab.machine` on flat integer state so that
the whole tree at L=21 fits in seconds.  Opcodes are numbered as in
``machine.Opcode``.
"""
import numpy as np
from numba import njit

NEED = 0
HALT = 1
STEPLIMIT = 2
INVALID = 3

# slots of the integer state vector
_HEAD, _IP, _OUTLEN, _STEPS, _SCAN = 0, 1, 2, 3, 4


@njit(cache=True)
def _advance(tape, out, st, code, ncode, budget):
    while True:
        ip = st[_IP]
        if ip == ncode:
            return NEED
        op = code[ip]
        if st[_STEPS] + 1 > budget:
            return STEPLIMIT
        st[_STEPS] += 1
        st[_IP] = ip + 1
        if st[_SCAN] > 0:
            if op == 5:
                st[_SCAN] += 1
            elif op == 6:
                st[_SCAN] -= 1
            continue
        h = st[_HEAD]
        if op == 0:
            return HALT
        elif op == 1:
            out[st[_OUTLEN]] = tape[h]
            st[_OUTLEN] += 1
        elif op == 2:
            st[_HEAD] = h + 1
        elif op == 3:
            st[_HEAD] = h - 1
        elif op == 4:
            tape[h] ^= 1
        elif op == 5:
            if tape[h] == 0:
                st[_SCAN] = 1
        elif op == 6:
            depth = 0
            found = -1
            j = ip - 1
            while j >= 0:
                c = code[j]
                if c == 6:
                    depth += 1
                elif c == 5:
                    if depth == 0:
                        found = j
                        break
                    depth -= 1
                j -= 1
            if found < 0:
                return INVALID
            if tape[h] != 0:
                st[_IP] = found + 1
        else:
            out[st[_OUTLEN]] = tape[h]
            st[_OUTLEN] += 1
            st[_HEAD] = h + 1


@njit(cache=True)
def _grow(a, need):
    if need <= a.shape[0]:
        return a
    n = a.shape[0] * 2
    while n < need:
        n *= 2
    b = np.empty(n, a.dtype)
    b[:a.shape[0]] = a
    return b


@njit(cache=True)
def search(prefix, cond_cells, max_ops, budget, min_ops):
    """Enumerate halting programs of at most ``max_ops`` opcodes.

    The first ``len(prefix)`` opcodes are forced to ``prefix``; only programs
    with at least ``min_ops`` opcodes are reported.  Returns parallel arrays
    (program value, opcode count, output offset, output length) plus the
    flat output-bit buffer.
    """
    origin = budget + 2
    width = origin + cond_cells.shape[0] + budget + 2
    depth_cap = max_ops + 1

    snap_tape = np.zeros((depth_cap, width), np.uint8)
    snap_out = np.zeros((depth_cap, budget + 1), np.uint8)
    snap_st = np.zeros((depth_cap, 5), np.int64)
    next_op = np.zeros(depth_cap, np.int64)
    last_op = np.zeros(depth_cap, np.int64)

    tape = np.zeros(width, np.uint8)
    out = np.zeros(budget + 1, np.uint8)
    st = np.zeros(5, np.int64)
    code = np.zeros(max(max_ops, 1), np.int64)

    prog = np.empty(1024, np.int64)
    nops = np.empty(1024, np.int64)
    ostart = np.empty(1024, np.int64)
    olen = np.empty(1024, np.int64)
    bits = np.empty(4096, np.uint8)
    count = 0
    nbits = 0

    for i in range(cond_cells.shape[0]):
        tape[origin + i] = cond_cells[i]
    st[_HEAD] = origin
    if max_ops == 0:
        return prog[:0], nops[:0], ostart[:0], olen[:0], bits[:0]

    # the empty program always demands its first opcode immediately
    snap_tape[0, :] = tape
    snap_st[0, :] = st
    npre = prefix.shape[0]
    if npre > 0:
        next_op[0] = prefix[0]
        last_op[0] = prefix[0]
    else:
        next_op[0] = 0
        last_op[0] = 7

    d = 0
    while d >= 0:
        if next_op[d] > last_op[d]:
            d -= 1
            continue
        op = next_op[d]
        next_op[d] += 1
        code[d] = op
        ncode = d + 1

        tape[:] = snap_tape[d]
        st[:] = snap_st[d]
        n_out = st[_OUTLEN]
        out[:n_out] = snap_out[d, :n_out]

        status = _advance(tape, out, st, code, ncode, budget)
        if status == NEED:
            if ncode < max_ops:
                d += 1
                snap_tape[d, :] = tape
                snap_st[d, :] = st
                n_out = st[_OUTLEN]
                snap_out[d, :n_out] = out[:n_out]
                if d < npre:
                    next_op[d] = prefix[d]
                    last_op[d] = prefix[d]
                else:
                    next_op[d] = 0
                    last_op[d] = 7
        elif status == HALT and ncode >= min_ops:
            value = 0
            for i in range(ncode):
                value = (value << 3) | code[i]
            n_out = st[_OUTLEN]
            prog = _grow(prog, count + 1)
            nops = _grow(nops, count + 1)
            ostart = _grow(ostart, count + 1)
            olen = _grow(olen, count + 1)
            bits = _grow(bits, nbits + n_out)
            prog[count] = value
            nops[count] = ncode
            ostart[count] = nbits
            olen[count] = n_out
            bits[nbits:nbits + n_out] = out[:n_out]
            nbits += n_out
            count += 1

    return prog[:count], nops[:count], ostart[:count], olen[:count], bits[:nbits]
