// Reference matrices shared by the golden tests and the acceptance runner.
#![allow(dead_code)]

use fock::canonical::TransitionMatrix;
use fock::laurent::Laurent;
use fock::partitions::Multipartition;

pub fn labels(src: &[&str]) -> Vec<Multipartition> {
    src.iter().map(|s| s.parse().unwrap()).collect()
}

pub fn grid(rows: &[&str]) -> Vec<Vec<Laurent>> {
    rows.iter()
        .map(|r| {
            r.split('|')
                .map(|c| match c.trim() {
                    "." => Laurent::zero(),
                    t => t.parse().unwrap(),
                })
                .collect()
        })
        .collect()
}

/// Reorder `t` to `order` and compare every entry with `expect`.
pub fn compare_matrix(t: &TransitionMatrix, order: &[Multipartition], expect: &[Vec<Laurent>]) -> Result<(), String> {
    let t = t.reordered(order).ok_or_else(|| format!("label set differs: {:?} vs {:?}", t.basis, order))?;
    compare_entries(&t, expect)
}

/// Compare in the matrix's own row order.
pub fn compare_entries(t: &TransitionMatrix, expect: &[Vec<Laurent>]) -> Result<(), String> {
    for (r, row) in expect.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            if t.entries.get(r, c) != e {
                return Err(format!("entry ({r}, {c}) is {} instead of {e} in\n{}", t.entries.get(r, c), t.render()));
            }
        }
    }
    Ok(())
}

pub const S3_LABELS: [&str; 8] = [
    "((1),(5))",
    "((4),(2))",
    "((4,2),∅)",
    "((1),(2,2,1))",
    "((2,2),(2))",
    "((1,1),(2,1,1))",
    "((1,1,1,1),(2))",
    "((1),(2,1,1,1))",
];

pub const S3_SIGMA_LABELS: [&str; 8] = [
    "((2),(6,1))",
    "((5),(3,1))",
    "((5,3,1),∅)",
    "((2),(3,2,2))",
    "((2,2,1),(3,1))",
    "((2,1,1),(3,1,1))",
    "((2,1,1,1),(3,1))",
    "((2),(3,1,1,1,1))",
];

pub const S3_PLUS: [&str; 8] = [
    "1|.|.|.|.|.|.|.",
    "q^1|1|.|.|.|.|.|.",
    "0|q^1|1|.|.|.|.|.",
    "q^1|0|0|1|.|.|.|.",
    "q^1|q^2|q^1|0|1|.|.|.",
    "q^2|0|0|q^1|q^1|1|.|.",
    "0|0|q^1|0|q^2|q^1|1|.",
    "0|0|0|q^2|0|q^1|0|1",
];

// Entry (1,0) is -q^-1, not +q^-1: positivity in p = -q^-1 and bar-invariance both force the sign.
pub const S3_MINUS: [&str; 8] = [
    "1|.|.|.|.|.|.|.",
    "-q^-1|1|.|.|.|.|.|.",
    "q^-2|-q^-1|1|.|.|.|.|.",
    "-q^-1|0|0|1|.|.|.|.",
    "0|0|-q^-1|0|1|.|.|.",
    "q^-2|-q^-1|q^-2|-q^-1|-q^-1|1|.|.",
    "-q^-3|q^-2|0|q^-2|0|-q^-1|1|.",
    "0|q^-2|-q^-3|0|q^-2|-q^-1|0|1",
];

// The source listing repeats (∅,∅,(1,1)) in second and last position; the second one must be
// (∅,(1,1),∅), the only element of the weight space otherwise missing.
pub const S4_LABELS: [&str; 8] = [
    "(∅,(2),∅)",
    "(∅,(1,1),∅)",
    "(∅,(1),(1))",
    "(∅,∅,(2))",
    "((2),∅,∅)",
    "((1),∅,(1))",
    "((1,1),∅,∅)",
    "(∅,∅,(1,1))",
];

// Images of S4_LABELS under the component swap. The source listing exchanges the fourth and
// fifth entries; (∅,∅,(2)) goes to (∅,(2),∅) and ((2),∅,∅) is fixed.
pub const S4_SIGMA_LABELS: [&str; 8] = [
    "(∅,∅,(2))",
    "(∅,∅,(1,1))",
    "(∅,(1),(1))",
    "(∅,(2),∅)",
    "((2),∅,∅)",
    "((1),(1),∅)",
    "((1,1),∅,∅)",
    "(∅,(1,1),∅)",
];

pub const S4_PLUS: [&str; 8] = [
    "1|.|.|.|.|.|.|.",
    "q^1|1|.|.|.|.|.|.",
    "q^2|q^1|1|.|.|.|.|.",
    "0|0|q^1|1|.|.|.|.",
    "q^1|0|0|0|1|.|.|.",
    "q^2|q^1|q^2|q^1|q^1|1|.|.",
    "q^3|q^2|0|0|q^2|q^1|1|.",
    "0|q^2|q^3|q^2|0|q^1|0|1",
];

pub const S4_MINUS: [&str; 8] = [
    "1|.|.|.|.|.|.|.",
    "-q^-1|1|.|.|.|.|.|.",
    "0|-q^-1|1|.|.|.|.|.",
    "-q^-1|q^-2|-q^-1|1|.|.|.|.",
    "-q^-1|0|0|0|1|.|.|.",
    "q^-2|0|0|-q^-1|-q^-1|1|.|.",
    "0|0|-q^-1|q^-2|0|-q^-1|1|.",
    "0|0|0|0|q^-2|-q^-1|0|1",
];

pub const S5_LABELS: [&str; 8] = [
    "((3),∅)",
    "((2,1),∅)",
    "((2),(1))",
    "((1,1,1),∅)",
    "((1),(1,1))",
    "(∅,(3))",
    "(∅,(2,1))",
    "(∅,(1,1,1))",
];

pub const S5_PLUS: [&str; 8] = [
    "1|.|.|.|.|.|.|.",
    "q^1|1|.|.|.|.|.|.",
    "q^2|q^1|1|.|.|.|.|.",
    "0|q^1|0|1|.|.|.|.",
    "0|q^2|q^1|q^1|1|.|.|.",
    "0|0|q^1|0|0|1|.|.",
    "0|0|q^2|0|q^1|q^1|1|.",
    "0|0|0|q^1|q^2|0|q^1|1",
];

pub const S5_MINUS: [&str; 8] = [
    "1|.|.|.|.|.|.|.",
    "-q^-1|1|.|.|.|.|.|.",
    "0|-q^-1|1|.|.|.|.|.",
    "q^-2|-q^-1|0|1|.|.|.|.",
    "0|q^-2|-q^-1|-q^-1|1|.|.|.",
    "-q^-1|q^-2|-q^-1|0|0|1|.|.",
    "q^-2|-q^-3|q^-2|q^-2|-q^-1|-q^-1|1|.",
    "-q^-3|0|0|0|0|q^-2|-q^-1|1",
];

// For k = 0 the rows follow this library's order for charges (1,0), not the k ≥ 1 labels.
pub const S5_ZERO_PLUS: [&str; 8] = [
    "1|.|.|.|.|.|.|.",
    "0|1|.|.|.|.|.|.",
    "0|q^1|1|.|.|.|.|.",
    "q^1|q^1|0|1|.|.|.|.",
    "0|q^2|q^1|q^1|1|.|.|.",
    "0|0|q^2|0|q^1|1|.|.",
    "q^2|0|0|q^1|0|0|1|.",
    "0|0|0|q^2|q^1|0|q^1|1",
];
