use serde::{Deserialize, Serialize};

use super::charpoly::{char_poly, CharPoly};
use crate::error::SpectralError;
use crate::graph::LabeledGraph;

/// Quotient matrix of an equitable partition: every vertex of part `i` has
/// exactly `b[i][j]` neighbours in part `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientMatrix {
    b: Vec<Vec<i64>>,
    parts: Vec<Vec<usize>>,
}

impl QuotientMatrix {
    pub fn b(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn char_poly(&self) -> CharPoly {
        char_poly(&self.b).expect("quotient matrices are square")
    }
}

pub fn quotient_matrix(g: &LabeledGraph, parts: &[Vec<usize>]) -> Result<QuotientMatrix, SpectralError> {
    let n = g.n();
    let mut part_of = vec![usize::MAX; n + 1];
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(SpectralError::Partition(format!("part {} is empty", i + 1)));
        }
        for &v in part {
            if v == 0 || v > n {
                return Err(SpectralError::Partition(format!("vertex {v} is not in 1..={n}")));
            }
            if part_of[v] != usize::MAX {
                return Err(SpectralError::Partition(format!("vertex {v} appears twice")));
            }
            part_of[v] = i;
        }
    }
    if let Some(v) = (1..=n).find(|&v| part_of[v] == usize::MAX) {
        return Err(SpectralError::Partition(format!("vertex {v} is not covered")));
    }

    let s = parts.len();
    let counts = |v: usize| {
        let mut c = vec![0usize; s];
        for w in g.neighbors(v) {
            c[part_of[w]] += 1;
        }
        c
    };
    let mut b = Vec::with_capacity(s);
    for (i, part) in parts.iter().enumerate() {
        let expected = counts(part[0]);
        for &v in &part[1..] {
            let found = counts(v);
            if let Some(j) = (0..s).find(|&j| found[j] != expected[j]) {
                return Err(SpectralError::NotEquitable {
                    vertex: v,
                    from: i + 1,
                    to: j + 1,
                    found: found[j],
                    expected: expected[j],
                });
            }
        }
        b.push(expected.into_iter().map(|c| c as i64).collect());
    }
    Ok(QuotientMatrix {
        b,
        parts: parts.to_vec(),
    })
}
