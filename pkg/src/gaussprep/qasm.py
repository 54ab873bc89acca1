"""OpenQASM 2.0 serialization of circuits.

Gate mapping: RY -> ry, H -> h, X -> x, CPHASE -> cu1, SWAP -> swap, all from
qelib1.inc. Angles are written with 17 significant digits so a parser
recovers the exact double.
"""

from __future__ import annotations

from .circuits import Circuit, GateKind

_HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def export_qasm(circuit: Circuit) -> str:
    """Render the circuit as an OpenQASM 2.0 program over register q."""
    lines = [_HEADER + f"qreg q[{circuit.num_qubits}];"]
    for gate in circuit.gates:
        if gate.kind is GateKind.RY:
            lines.append(f"ry({gate.angle:.17g}) q[{gate.qubits[0]}];")
        elif gate.kind is GateKind.H:
            lines.append(f"h q[{gate.qubits[0]}];")
        elif gate.kind is GateKind.X:
            lines.append(f"x q[{gate.qubits[0]}];")
        elif gate.kind is GateKind.CPHASE:
            a, b = gate.qubits
            lines.append(f"cu1({gate.angle:.17g}) q[{a}],q[{b}];")
        elif gate.kind is GateKind.SWAP:
            a, b = gate.qubits
            lines.append(f"swap q[{a}],q[{b}];")
        else:  # pragma: no cover - GateOp validation makes this unreachable
            raise ValueError(f"unsupported gate kind: {gate.kind}")
    return "\n".join(lines) + "\n"
