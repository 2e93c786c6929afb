//! Gate sinks: collect lowered gates or tally their resource cost.

use statevector_sim::Gate;

use crate::is_primitive;

/// Receiver for a stream of primitive gates.
pub trait GateSink {
    fn gate(&mut self, gate: Gate);
}

/// Materializes the lowered gate list.
#[derive(Debug, Default)]
pub struct Collector {
    pub gates: Vec<Gate>,
}

impl GateSink for Collector {
    fn gate(&mut self, gate: Gate) {
        debug_assert!(is_primitive(&gate), "non-primitive emitted: {gate:?}");
        self.gates.push(gate);
    }
}

const NEG: i64 = i64::MIN / 4;

/// Max-plus dependency profile of a gate block: entry (i, j) is the longest
/// gate chain from input wire i to output wire j, or "no path". Composing
/// profiles with max-plus products gives exact ASAP depth without
/// materializing the circuit.
#[derive(Debug, Clone)]
pub struct DepthProfile {
    n: usize,
    d: Vec<i64>,
}

impl DepthProfile {
    pub fn identity(n: usize) -> Self {
        let mut d = vec![NEG; n * n];
        for i in 0..n {
            d[i * n + i] = 0;
        }
        Self { n, d }
    }

    pub fn n_wires(&self) -> usize {
        self.n
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> i64 {
        self.d[i * self.n + j]
    }

    /// Extend every chain reaching a wire of `wires` by one gate.
    pub fn touch(&mut self, wires: &[usize]) {
        let n = self.n;
        for i in 0..n {
            let mut reach = NEG;
            for &s in wires {
                reach = reach.max(self.d[i * n + s]);
            }
            if reach > NEG {
                for &s in wires {
                    self.d[i * n + s] = reach + 1;
                }
            }
        }
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &DepthProfile) -> DepthProfile {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = vec![NEG; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == NEG {
                    continue;
                }
                for j in 0..n {
                    let b = other.at(k, j);
                    if b == NEG {
                        continue;
                    }
                    let v = a + b;
                    if v > out[i * n + j] {
                        out[i * n + j] = v;
                    }
                }
            }
        }
        DepthProfile { n, d: out }
    }

    /// Embed a smaller profile into `n_wires` via a slot-to-wire map;
    /// unmapped wires stay identity.
    pub fn embed(&self, n_wires: usize, map: &[usize]) -> DepthProfile {
        assert_eq!(map.len(), self.n);
        let mut out = DepthProfile::identity(n_wires);
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.at(i, j);
                if v > NEG {
                    out.d[map[i] * n_wires + map[j]] = v;
                }
            }
        }
        out
    }

    /// Longest chain overall.
    pub fn depth(&self) -> u64 {
        self.d.iter().copied().max().unwrap_or(0).max(0) as u64
    }
}

/// Streaming resource tally: depth profile plus gate counts.
#[derive(Debug, Clone)]
pub struct Tally {
    pub profile: DepthProfile,
    pub cnots: u64,
    pub gates: u64,
}

impl Tally {
    pub fn new(n_wires: usize) -> Self {
        Self {
            profile: DepthProfile::identity(n_wires),
            cnots: 0,
            gates: 0,
        }
    }

    pub fn append_cost(&mut self, cost: &BlockCost, map: &[usize]) {
        let embedded = cost.profile.embed(self.profile.n, map);
        self.profile = self.profile.compose(&embedded);
        self.cnots += cost.cnots;
        self.gates += cost.gates;
    }

    pub fn depth(&self) -> u64 {
        self.profile.depth()
    }
}

impl GateSink for Tally {
    fn gate(&mut self, gate: Gate) {
        debug_assert!(is_primitive(&gate), "non-primitive emitted: {gate:?}");
        if matches!(gate, Gate::Cnot { .. }) {
            self.cnots += 1;
        }
        self.gates += 1;
        self.profile.touch(&gate.qubits());
    }
}

/// A reusable block summary: profile over the block's own wire slots plus
/// counts. Blocks repeated inside a larger circuit are tallied once and
/// spliced by wire map.
#[derive(Debug, Clone)]
pub struct BlockCost {
    pub profile: DepthProfile,
    pub cnots: u64,
    pub gates: u64,
}

impl From<Tally> for BlockCost {
    fn from(t: Tally) -> Self {
        Self {
            profile: t.profile,
            cnots: t.cnots,
            gates: t.gates,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use statevector_sim::Gate;

    #[test]
    fn serial_gates_on_one_wire_stack_depth() {
        let mut t = Tally::new(2);
        for _ in 0..5 {
            t.gate(Gate::Hadamard { qubit: 0 });
        }
        assert_eq!(t.depth(), 5);
        assert_eq!(t.gates, 5);
    }

    #[test]
    fn parallel_gates_share_a_layer() {
        let mut t = Tally::new(3);
        t.gate(Gate::Hadamard { qubit: 0 });
        t.gate(Gate::Hadamard { qubit: 1 });
        t.gate(Gate::Hadamard { qubit: 2 });
        assert_eq!(t.depth(), 1);
    }

    #[test]
    fn cnot_synchronizes_wires() {
        let mut t = Tally::new(2);
        t.gate(Gate::Hadamard { qubit: 0 }); // layer 1
        t.gate(Gate::Cnot { control: 0, target: 1 }); // layer 2
        t.gate(Gate::Hadamard { qubit: 1 }); // layer 3
        assert_eq!(t.depth(), 3);
        assert_eq!(t.cnots, 1);
    }

    #[test]
    fn composition_matches_streaming() {
        // Stream a block twice vs compose its cost twice.
        let block = |t: &mut Tally| {
            t.gate(Gate::Hadamard { qubit: 0 });
            t.gate(Gate::Cnot { control: 0, target: 2 });
            t.gate(Gate::RotationZ { qubit: 2, theta: 0.1 });
        };
        let mut streamed = Tally::new(3);
        block(&mut streamed);
        block(&mut streamed);

        let mut single = Tally::new(3);
        block(&mut single);
        let cost = BlockCost::from(single.clone());
        let mut composed = Tally::new(3);
        composed.append_cost(&cost, &[0, 1, 2]);
        composed.append_cost(&cost, &[0, 1, 2]);

        assert_eq!(streamed.depth(), composed.depth());
        assert_eq!(streamed.gates, composed.gates);
        assert_eq!(streamed.cnots, composed.cnots);
    }

    #[test]
    fn embedding_relabels_wires() {
        let mut t = Tally::new(2);
        t.gate(Gate::Cnot { control: 0, target: 1 });
        t.gate(Gate::Hadamard { qubit: 1 });
        let cost = BlockCost::from(t);

        let mut big = Tally::new(4);
        big.append_cost(&cost, &[3, 1]); // block wires 0,1 -> 3,1
        big.gate(Gate::Hadamard { qubit: 1 }); // stacks after the block
        assert_eq!(big.depth(), 3);
        big.gate(Gate::Hadamard { qubit: 0 }); // fresh wire, parallel
        assert_eq!(big.depth(), 3);
    }
}
