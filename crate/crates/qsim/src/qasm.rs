//! OpenQASM 2.0 export over `qelib1.inc` (gates `x`, `h`, `ry`, `rz`,
//! `cx`) and a parser for that same subset.

use std::fmt::Write;

use crate::circuit::{Circuit, Operation};
use crate::decompose::decompose_circuit;
use crate::error::{QsimError, Result};
use crate::gate::{ControlSpec, Gate};

/// Decomposes `circuit` into basic gates and renders it as OpenQASM 2.0
/// on a register named `q`.
pub fn to_qasm(circuit: &Circuit) -> Result<String> {
    let basic = decompose_circuit(circuit)?;
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", basic.qubits());
    for op in basic.ops() {
        let Operation::Gate { gate, targets, controls } = op else {
            unreachable!("decomposition emits gates only");
        };
        let t = targets[0];
        let line = match (gate, controls.len()) {
            (Gate::X, 1) => format!("cx q[{}],q[{t}];", controls.0[0].qubit),
            (Gate::X, 0) => format!("x q[{t}];"),
            (Gate::H, 0) => format!("h q[{t}];"),
            (Gate::Ry { theta }, 0) => format!("ry({theta:?}) q[{t}];"),
            (Gate::Rz { lambda }, 0) => format!("rz({lambda:?}) q[{t}];"),
            _ => unreachable!("decomposition emits basic gates only"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

/// Parses the subset written by [`to_qasm`]. `creg`, `barrier` and
/// `measure` statements are skipped.
pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut saw_header = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| QsimError::Qasm { line: line_no, message };
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let stmt = line.strip_suffix(';').ok_or_else(|| err("missing ';'".into()))?.trim();
        if stmt.starts_with("OPENQASM") {
            if stmt != "OPENQASM 2.0" {
                return Err(err(format!("unsupported version `{stmt}`")));
            }
            saw_header = true;
            continue;
        }
        if !saw_header {
            return Err(err("expected `OPENQASM 2.0;` header".into()));
        }
        if stmt.starts_with("include")
            || stmt.starts_with("creg")
            || stmt.starts_with("barrier")
            || stmt.starts_with("measure")
        {
            continue;
        }
        if let Some(rest) = stmt.strip_prefix("qreg") {
            if circuit.is_some() {
                return Err(err("only one qreg is supported".into()));
            }
            let n = parse_index(rest.trim(), "q").ok_or_else(|| err(format!("bad qreg `{rest}`")))?;
            circuit = Some(Circuit::new(n));
            continue;
        }
        let c = circuit.as_mut().ok_or_else(|| err("gate before qreg".into()))?;
        let (head, args) =
            stmt.split_once(char::is_whitespace).ok_or_else(|| err(format!("bad statement `{stmt}`")))?;
        let qubits: Vec<usize> = args
            .split(',')
            .map(|a| parse_index(a.trim(), "q"))
            .collect::<Option<_>>()
            .ok_or_else(|| err(format!("bad operands `{args}`")))?;
        let (name, param) = match head.split_once('(') {
            Some((n, p)) => {
                let p = p.strip_suffix(')').ok_or_else(|| err("unclosed parameter list".into()))?;
                (n, Some(eval_angle(p).ok_or_else(|| err(format!("bad angle `{p}`")))?))
            }
            None => (head, None),
        };
        let pushed = match (name, param, qubits.as_slice()) {
            ("x", None, [t]) => c.x(*t),
            ("h", None, [t]) => c.h(*t),
            ("ry", Some(a), [t]) => c.ry(a, *t),
            ("rz" | "u1", Some(a), [t]) => c.rz(a, *t),
            ("cx", None, [ctl, t]) => c.gate(Gate::X, &[*t], ControlSpec::closed([*ctl])),
            _ => return Err(err(format!("unsupported gate `{head}`"))),
        };
        pushed.map_err(|e| err(e.to_string()))?;
    }
    circuit.ok_or(QsimError::Qasm { line: 0, message: "no qreg declared".into() })
}

/// `q[3]` → 3 for register `reg`.
fn parse_index(s: &str, reg: &str) -> Option<usize> {
    s.strip_prefix(reg)?.trim().strip_prefix('[')?.strip_suffix(']')?.trim().parse().ok()
}

/// Products and quotients of numbers and `pi`, with unary minus.
fn eval_angle(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('-') {
        return eval_angle(rest).map(|v| -v);
    }
    let mut value = 1.0;
    let mut op = '*';
    let mut token = String::new();
    let apply = |tok: &str, op: char, value: &mut f64| -> Option<()> {
        let t = tok.trim();
        let v = if t == "pi" { std::f64::consts::PI } else { t.parse::<f64>().ok()? };
        match op {
            '*' => *value *= v,
            _ => *value /= v,
        }
        Some(())
    };
    let chars: Vec<char> = s.chars().collect();
    for (i, &ch) in chars.iter().enumerate() {
        // Exponent signs belong to the number.
        let in_exponent = (ch == '-' || ch == '+') && i > 0 && matches!(chars[i - 1], 'e' | 'E');
        if (ch == '*' || ch == '/') && !in_exponent {
            apply(&token, op, &mut value)?;
            token.clear();
            op = ch;
        } else {
            token.push(ch);
        }
    }
    apply(&token, op, &mut value)?;
    Some(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CMatrix;

    #[test]
    fn header_and_gates() {
        let mut c = Circuit::new(2);
        c.h(0).unwrap().cx(0, 1).unwrap().ry(0.5, 1).unwrap().rz(-0.25, 0).unwrap().x(1).unwrap();
        let text = to_qasm(&c).unwrap();
        assert!(text.starts_with("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\n"));
        assert!(text.contains("cx q[0],q[1];"));
        assert!(text.contains("ry(0.5) q[1];"));
        assert_eq!(parse_qasm(&text).unwrap(), c);
    }

    #[test]
    fn round_trip_preserves_operator() {
        let mut c = Circuit::new(3);
        c.gate(Gate::ry(0.77), &[2], ControlSpec::pattern(&[0, 1], 0b10)).unwrap();
        c.gate(Gate::u3(0.1, 0.2, 0.3), &[0], ControlSpec::closed([2])).unwrap();
        let back = parse_qasm(&to_qasm(&c).unwrap()).unwrap();
        let dev = (back.to_matrix().unwrap() - c.to_matrix().unwrap()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(dev <= 1e-9);
    }

    #[test]
    fn angle_expressions() {
        assert_eq!(eval_angle("pi/2"), Some(std::f64::consts::FRAC_PI_2));
        assert_eq!(eval_angle("-2*pi"), Some(-2.0 * std::f64::consts::PI));
        assert_eq!(eval_angle("1.5e-3"), Some(1.5e-3));
        assert_eq!(eval_angle("tau"), None);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "OPENQASM 2.0;\nqreg q[1];\nccz q[0];\n";
        assert!(matches!(parse_qasm(bad), Err(QsimError::Qasm { line: 3, .. })));
        assert!(matches!(parse_qasm("qreg q[1];\n"), Err(QsimError::Qasm { line: 1, .. })));
        let oob = "OPENQASM 2.0;\nqreg q[1];\nx q[4];\n";
        assert!(matches!(parse_qasm(oob), Err(QsimError::Qasm { line: 3, .. })));
    }

    #[test]
    fn wide_dense_unitary_is_not_exportable() {
        let mut c = Circuit::new(2);
        c.unitary("w", CMatrix::identity(4, 4), &[0, 1], ControlSpec::none()).unwrap();
        assert!(matches!(to_qasm(&c), Err(QsimError::NotDecomposable(_))));
    }
}
