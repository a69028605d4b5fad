"""Reference prefix machine.

An eight-instruction tape machine that reads its program three bits at a
time, only when it needs the next instruction.  Because bits are pulled on
demand, the exact set of bits read by a halting run is the program, and the
halting programs form a prefix-free set without any extra coding layer.

This module is the readable reference interpreter.  The enumeration engine
has its own compiled kernel; the two are cross-checked in the test suite.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Union

BitString = str

ISA_VERSION = 1
OPCODE_BITS = 3


class Opcode(IntEnum):
    HALT = 0b000
    OUT = 0b001
    MOVR = 0b010
    MOVL = 0b011
    FLIP = 0b100
    LOOPSTART = 0b101
    LOOPEND = 0b110
    OUTR = 0b111

    @property
    def bits(self) -> BitString:
        return format(int(self), "03b")


def decode(bits: BitString) -> Opcode:
    if len(bits) != OPCODE_BITS or set(bits) - {"0", "1"}:
        raise ValueError(f"not a 3-bit opcode: {bits!r}")
    return Opcode(int(bits, 2))


def assemble(*ops: Opcode | str) -> BitString:
    """Concatenate opcodes (members or names like ``"MOVR"``) into program bits."""
    return "".join((op if isinstance(op, Opcode) else Opcode[op]).bits for op in ops)


def disassemble(program: BitString) -> list[Opcode]:
    if len(program) % OPCODE_BITS:
        raise ValueError(f"program length {len(program)} is not a multiple of 3")
    return [decode(program[i:i + 3]) for i in range(0, len(program), 3)]


def check_bits(s: str, what: str = "bit string") -> BitString:
    if set(s) - {"0", "1"}:
        raise ValueError(f"{what} must contain only '0' and '1': {s!r}")
    return s


# -- self-delimiting condition encoding ------------------------------------


def enc2(y: BitString) -> BitString:
    return "".join(b + "1" for b in y)


def dec2(t: BitString) -> BitString:
    out = []
    for i in range(0, len(t), 2):
        data, flag = t[i], t[i + 1:i + 2] or "0"
        if flag == "0":
            if data != "0" or set(t[i:]) - {"0"}:
                raise ValueError(f"malformed enc2 image at bit {i}: {t!r}")
            break
        out.append(data)
    return "".join(out)


def pair(x: BitString, y: BitString) -> BitString:
    return enc2(x) + y


def unpair(z: BitString) -> tuple[BitString, BitString]:
    i = 0
    while i + 1 < len(z) and z[i + 1] == "1":
        i += 2
    return dec2(z[:i]), z[i:]


# -- machine state and outcomes --------------------------------------------


@dataclass
class MachineState:
    tape: dict[int, int] = field(default_factory=dict)  # only cells holding 1
    head: int = 0
    code: BitString = ""
    ip: int = 0
    output: list[str] = field(default_factory=list)
    steps: int = 0
    scan_depth: int = 0  # >0 while skipping forward over a loop body

    def read(self) -> int:
        return self.tape.get(self.head, 0)

    def copy(self) -> "MachineState":
        return copy.deepcopy(self)


@dataclass(frozen=True)
class Halted:
    output: BitString
    consumed: int
    steps: int


@dataclass(frozen=True)
class NeedsBit:
    state: MachineState


@dataclass(frozen=True)
class StepLimit:
    pass


@dataclass(frozen=True)
class Invalid:
    reason: str


RunOutcome = Union[Halted, NeedsBit, StepLimit, Invalid]


def initial_state(condition: BitString = "") -> MachineState:
    tape = {i: 1 for i, b in enumerate(enc2(condition)) if b == "1"}
    return MachineState(tape=tape)


def _fetch(state: MachineState, program: BitString) -> Opcode | None:
    if state.ip == len(state.code):
        end = len(state.code) + OPCODE_BITS
        if end > len(program):
            return None
        state.code += program[len(state.code):end]
    return decode(state.code[state.ip:state.ip + OPCODE_BITS])


def _match_loopstart(code: BitString, end_ip: int) -> int | None:
    depth = 0
    for ip in range(end_ip - OPCODE_BITS, -1, -OPCODE_BITS):
        op = Opcode(int(code[ip:ip + 3], 2))
        if op is Opcode.LOOPEND:
            depth += 1
        elif op is Opcode.LOOPSTART:
            if depth == 0:
                return ip
            depth -= 1
    return None


def resume(state: MachineState, program: BitString, step_budget: int) -> RunOutcome:
    """Continue executing ``state`` (mutated in place), pulling bits from ``program``.

    ``program`` must extend ``state.code``; bits already consumed are not
    re-read.
    """
    while True:
        op = _fetch(state, program)
        if op is None:
            return NeedsBit(state)
        if state.steps + 1 > step_budget:
            return StepLimit()
        state.steps += 1
        at = state.ip
        state.ip += OPCODE_BITS

        if state.scan_depth:
            if op is Opcode.LOOPSTART:
                state.scan_depth += 1
            elif op is Opcode.LOOPEND:
                state.scan_depth -= 1
            continue

        if op is Opcode.HALT:
            return Halted("".join(state.output), len(state.code), state.steps)
        elif op is Opcode.OUT:
            state.output.append(str(state.read()))
        elif op is Opcode.MOVR:
            state.head += 1
        elif op is Opcode.MOVL:
            state.head -= 1
        elif op is Opcode.FLIP:
            if state.read():
                del state.tape[state.head]
            else:
                state.tape[state.head] = 1
        elif op is Opcode.LOOPSTART:
            if not state.read():
                state.scan_depth = 1
        elif op is Opcode.LOOPEND:
            start = _match_loopstart(state.code, at)
            if start is None:
                return Invalid(f"unmatched LOOPEND at bit {at}")
            if state.read():
                state.ip = start + OPCODE_BITS
        elif op is Opcode.OUTR:
            state.output.append(str(state.read()))
            state.head += 1


def run(program: BitString, condition: BitString = "", step_budget: int = 256) -> RunOutcome:
    """Run ``program`` from a fresh tape preloaded with ``enc2(condition)``."""
    if step_budget < 1:
        raise ValueError("step_budget must be >= 1")
    check_bits(program, "program")
    check_bits(condition, "condition")
    return resume(initial_state(condition), program, step_budget)


# A loop that walks the flag cells of enc2(x) and emits each data bit.
COPY_PROGRAM = assemble("MOVR", "LOOPSTART", "MOVL", "OUTR", "MOVR", "MOVR", "LOOPEND", "HALT")
