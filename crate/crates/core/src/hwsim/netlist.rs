//! Gate-level netlists of MTL cells, plus the XOR and magnitude comparator
//! circuits built from them.

use super::{BitWord, HwError, LogicLevels, MtlCell};

/// Signal index inside a netlist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Wire(usize);

const LOW: Wire = Wire(0);
const HIGH: Wire = Wire(1);

#[derive(Debug, Clone, PartialEq)]
struct Gate {
    cell: MtlCell,
    inputs: Vec<Wire>,
}

/// Combinational circuit in topological order. Wires 0 and 1 are the
/// constant rails, followed by the primary inputs, then one wire per gate.
#[derive(Debug, Clone, PartialEq)]
pub struct Netlist {
    input_count: usize,
    gates: Vec<Gate>,
    outputs: Vec<Wire>,
}

pub struct NetlistBuilder {
    levels: LogicLevels,
    input_count: usize,
    gates: Vec<Gate>,
}

impl NetlistBuilder {
    pub fn new(input_count: usize, levels: LogicLevels) -> Self {
        Self {
            levels,
            input_count,
            gates: Vec::new(),
        }
    }

    pub fn input(&self, i: usize) -> Wire {
        assert!(i < self.input_count, "input {i} out of range");
        Wire(2 + i)
    }

    pub fn low(&self) -> Wire {
        LOW
    }

    pub fn high(&self) -> Wire {
        HIGH
    }

    pub fn cell(&mut self, cell: MtlCell, inputs: &[Wire]) -> Wire {
        assert_eq!(cell.input_count(), inputs.len(), "gate arity mismatch");
        let next = 2 + self.input_count + self.gates.len();
        assert!(inputs.iter().all(|w| w.0 < next), "netlist must be built in topological order");
        self.gates.push(Gate {
            cell,
            inputs: inputs.to_vec(),
        });
        Wire(next)
    }

    pub fn nand(&mut self, inputs: &[Wire]) -> Wire {
        let cell = MtlCell::nand(inputs.len(), self.levels);
        self.cell(cell, inputs)
    }

    pub fn nor(&mut self, inputs: &[Wire]) -> Wire {
        let cell = MtlCell::nor(inputs.len(), self.levels);
        self.cell(cell, inputs)
    }

    pub fn inv(&mut self, input: Wire) -> Wire {
        let cell = MtlCell::inverter(self.levels);
        self.cell(cell, &[input])
    }

    /// Four-NAND exclusive-or.
    pub fn xor(&mut self, a: Wire, b: Wire) -> Wire {
        let ab = self.nand(&[a, b]);
        let left = self.nand(&[a, ab]);
        let right = self.nand(&[b, ab]);
        self.nand(&[left, right])
    }

    pub fn finish(self, outputs: Vec<Wire>) -> Netlist {
        Netlist {
            input_count: self.input_count,
            gates: self.gates,
            outputs,
        }
    }
}

impl Netlist {
    pub fn input_count(&self) -> usize {
        self.input_count
    }

    pub fn output_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn cells(&self) -> impl Iterator<Item = &MtlCell> {
        self.gates.iter().map(|g| &g.cell)
    }

    /// Swaps the cell driving gate `index`, keeping its wiring. Used to
    /// inject faults when exercising the verification harness.
    pub fn replace_cell(&mut self, index: usize, cell: MtlCell) -> Result<(), HwError> {
        let len = self.gates.len();
        let gate = self.gates.get_mut(index).ok_or(HwError::DimensionMismatch {
            expected: index + 1,
            actual: len,
        })?;
        if gate.inputs.len() != cell.input_count() {
            return Err(HwError::WidthMismatch(gate.inputs.len(), cell.input_count()));
        }
        gate.cell = cell;
        Ok(())
    }

    /// Evaluates every gate in order.
    pub fn eval(&self, inputs: &[bool]) -> Vec<bool> {
        let mut wires = Vec::new();
        self.eval_with(inputs, &mut wires);
        self.outputs.iter().map(|w| wires[w.0]).collect()
    }

    fn eval_with(&self, inputs: &[bool], wires: &mut Vec<bool>) {
        assert_eq!(inputs.len(), self.input_count, "netlist input count mismatch");
        wires.clear();
        wires.reserve(2 + self.input_count + self.gates.len());
        wires.push(false);
        wires.push(true);
        wires.extend_from_slice(inputs);
        let mut fan_in = Vec::with_capacity(4);
        for gate in &self.gates {
            fan_in.clear();
            fan_in.extend(gate.inputs.iter().map(|w| wires[w.0]));
            let out = gate.cell.eval(&fan_in);
            wires.push(out);
        }
    }
}

/// Single two-input XOR threshold logic gate.
pub fn xor_netlist(levels: LogicLevels) -> Netlist {
    let mut b = NetlistBuilder::new(2, levels);
    let (x, y) = (b.input(0), b.input(1));
    let out = b.xor(x, y);
    b.finish(vec![out])
}

/// `width` XOR gates side by side. Inputs are `a` then `b`, MSB first.
pub fn xor_word_netlist(width: usize, levels: LogicLevels) -> Netlist {
    let mut b = NetlistBuilder::new(2 * width, levels);
    let outs = (0..width)
        .map(|i| {
            let (x, y) = (b.input(i), b.input(width + i));
            b.xor(x, y)
        })
        .collect();
    b.finish(outs)
}

/// Unsigned `d <= g` comparator over two MSB-first words.
///
/// Scans from the MSB keeping two signals: `eq` (all higher bits equal) and
/// `lt` (a higher bit already decided `d < g`). Per bit:
///
/// ```text
/// lt' = lt | (eq & !d_i & g_i)   =  NAND(!lt, NAND3(eq, !d_i, g_i))
/// eq' = eq & !(d_i ^ g_i)        =  NOR(!eq, XOR(d_i, g_i))
/// ```
///
/// and the result is `lt | eq = NAND(!lt, !eq)`. Inputs are `d` then `g`.
pub fn comparator_netlist(width: usize, levels: LogicLevels) -> Netlist {
    let mut b = NetlistBuilder::new(2 * width, levels);
    let mut lt = b.low();
    let mut eq = b.high();
    for i in 0..width {
        let (d, g) = (b.input(i), b.input(width + i));
        let not_d = b.inv(d);
        let decided_here = b.nand(&[eq, not_d, g]);
        let not_lt = b.inv(lt);
        let next_lt = b.nand(&[not_lt, decided_here]);
        let diff = b.xor(d, g);
        let not_eq = b.inv(eq);
        eq = b.nor(&[not_eq, diff]);
        lt = next_lt;
    }
    let not_lt = b.inv(lt);
    let not_eq = b.inv(eq);
    let leq = b.nand(&[not_lt, not_eq]);
    b.finish(vec![leq])
}

pub fn xor_tlg(a: bool, b: bool) -> bool {
    xor_netlist(LogicLevels::default()).eval(&[a, b])[0]
}

/// Bitwise XOR of two words through one gate per bit position.
pub fn xor_word(a: &BitWord, b: &BitWord) -> Result<BitWord, HwError> {
    if a.width() != b.width() {
        return Err(HwError::WidthMismatch(a.width(), b.width()));
    }
    let net = xor_word_netlist(a.width(), LogicLevels::default());
    Ok(BitWord::from_bits(eval_pair(&net, a, b)))
}

pub fn compare_leq(d_bits: &BitWord, g_bits: &BitWord) -> Result<bool, HwError> {
    if d_bits.width() != g_bits.width() {
        return Err(HwError::WidthMismatch(d_bits.width(), g_bits.width()));
    }
    let net = comparator_netlist(d_bits.width(), LogicLevels::default());
    Ok(eval_pair(&net, d_bits, g_bits)[0])
}

pub(crate) fn eval_pair(net: &Netlist, a: &BitWord, b: &BitWord) -> Vec<bool> {
    let mut inputs = Vec::with_capacity(a.width() + b.width());
    inputs.extend_from_slice(a.bits());
    inputs.extend_from_slice(b.bits());
    net.eval(&inputs)
}
