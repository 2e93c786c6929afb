//! Circuits: ordered gate lists with optional qubit-role labels.

use serde::{Deserialize, Serialize};

use crate::{Gate, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QubitRole {
    System,
    Ancilla,
}

/// An ordered gate list over a fixed-width register. Gates are applied in
/// list order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    roles: Vec<QubitRole>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
            roles: vec![QubitRole::System; n_qubits],
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn roles(&self) -> &[QubitRole] {
        &self.roles
    }

    pub fn set_role(&mut self, qubit: usize, role: QubitRole) {
        self.roles[qubit] = role;
    }

    pub fn ancilla_qubits(&self) -> Vec<usize> {
        (0..self.n_qubits)
            .filter(|&q| self.roles[q] == QubitRole::Ancilla)
            .collect()
    }

    /// Append a gate after validating it against the register width.
    pub fn push(&mut self, gate: Gate) -> Result<(), SimError> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<(), SimError> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// The adjoint circuit: gates reversed, each replaced by its adjoint.
    pub fn adjoint(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::adjoint).collect(),
            roles: self.roles.clone(),
        }
    }

    /// Debug dump of the gate list as JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_rejects_out_of_range_qubits() {
        let mut c = Circuit::new(2);
        assert!(c.push(Gate::Hadamard { qubit: 2 }).is_err());
        assert!(c.push(Gate::Hadamard { qubit: 1 }).is_ok());
    }

    #[test]
    fn push_rejects_duplicate_indices() {
        let mut c = Circuit::new(2);
        assert!(c.push(Gate::Cnot { control: 1, target: 1 }).is_err());
    }

    #[test]
    fn json_dump_round_trips() {
        let mut c = Circuit::new(2);
        c.set_role(1, QubitRole::Ancilla);
        c.push(Gate::Hadamard { qubit: 0 }).unwrap();
        c.push(Gate::PhaseShift { qubit: 1, lambda: 0.25 }).unwrap();
        let parsed: Circuit = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(parsed, c);
    }
}
