//! Built-in triangulations of small closed manifolds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::betti;
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub description: String,
    pub facets: Vec<Vec<u32>>,
    pub expected_betti: Vec<usize>,
    /// Nonvanishing of w_0, ..., w_n.
    pub expected_w: Vec<bool>,
}

impl CorpusEntry {
    /// Builds the complex and checks it against the entry's own invariants.
    pub fn validate(&self) -> Result<SimplicialComplex> {
        let fail = |reason: String| Error::CorpusValidationFailed { name: self.name.clone(), reason };
        let x = SimplicialComplex::from_facets(&self.facets).map_err(|e| fail(e.to_string()))?;
        if x.facets().len() != self.facets.len() {
            return Err(fail(format!("{} distinct facets, {} listed", x.facets().len(), self.facets.len())));
        }
        let pm = x.is_closed_pseudomanifold();
        if !pm.passed {
            return Err(fail(pm.summary()));
        }
        let b = betti(&x);
        if b != self.expected_betti {
            return Err(fail(format!("Betti numbers {b:?}, expected {:?}", self.expected_betti)));
        }
        let alt: i64 = b.iter().enumerate().map(|(d, &v)| if d % 2 == 0 { v as i64 } else { -(v as i64) }).sum();
        if alt != x.euler_characteristic() {
            return Err(fail(format!("Euler characteristic {} but alternating Betti sum {alt}", x.euler_characteristic())));
        }
        if self.expected_w.len() != x.dim() + 1 {
            return Err(fail(format!("class pattern has {} entries for dimension {}", self.expected_w.len(), x.dim())));
        }
        Ok(x)
    }
}

pub const NAMES: [&str; 6] = ["s2", "rp2-6", "t2-7", "klein", "s3", "rp3"];

const RP2_6: [[u32; 3]; 10] = [
    [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
    [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5],
];

const KLEIN_9: [[u32; 3]; 18] = [
    [0, 1, 4], [0, 1, 8], [0, 2, 3], [0, 2, 6], [0, 3, 4], [0, 6, 8],
    [1, 2, 5], [1, 2, 7], [1, 4, 5], [1, 7, 8], [2, 3, 5], [2, 6, 7],
    [3, 4, 7], [3, 5, 6], [3, 6, 7], [4, 5, 8], [4, 7, 8], [5, 6, 8],
];

const RP3_11: [[u32; 4]; 40] = [
    [0, 1, 3, 6], [0, 1, 3, 7], [0, 1, 5, 6], [0, 1, 5, 7], [0, 2, 4, 6],
    [0, 2, 4, 10], [0, 2, 5, 6], [0, 2, 5, 9], [0, 2, 9, 10], [0, 3, 4, 6],
    [0, 3, 4, 8], [0, 3, 7, 8], [0, 4, 8, 10], [0, 5, 7, 9], [0, 7, 8, 9],
    [0, 8, 9, 10], [1, 2, 3, 7], [1, 2, 3, 9], [1, 2, 4, 7], [1, 2, 4, 10],
    [1, 2, 9, 10], [1, 3, 6, 9], [1, 4, 5, 7], [1, 4, 5, 8], [1, 4, 8, 10],
    [1, 5, 6, 8], [1, 6, 8, 9], [1, 8, 9, 10], [2, 3, 5, 8], [2, 3, 5, 9],
    [2, 3, 7, 8], [2, 4, 6, 7], [2, 5, 6, 8], [2, 6, 7, 8], [3, 4, 5, 8],
    [3, 4, 5, 9], [3, 4, 6, 9], [4, 5, 7, 9], [4, 6, 7, 9], [6, 7, 8, 9],
];

/// Facets of the boundary of the standard simplex on `0..=n+1`.
fn simplex_boundary(n: u32) -> Vec<Vec<u32>> {
    (0..=n + 1).map(|skip| (0..=n + 1).filter(|&v| v != skip).collect()).collect()
}

fn torus_7() -> Vec<Vec<u32>> {
    let mut f = Vec::new();
    for i in 0..7 {
        f.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        f.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    f
}

fn rows<const K: usize>(a: &[[u32; K]]) -> Vec<Vec<u32>> {
    a.iter().map(|r| r.to_vec()).collect()
}

/// The unvalidated entry, for inspection or deliberate corruption in tests.
pub fn raw_entry(name: &str) -> Result<CorpusEntry> {
    let (description, facets, expected_betti, expected_w): (&str, Vec<Vec<u32>>, Vec<usize>, Vec<bool>) = match name {
        "s2" => ("2-sphere, boundary of the tetrahedron", simplex_boundary(2), vec![1, 0, 1], vec![true, false, false]),
        "rp2-6" => ("real projective plane, 6 vertices", rows(&RP2_6), vec![1, 1, 1], vec![true, true, true]),
        "t2-7" => ("torus, 7 vertices", torus_7(), vec![1, 2, 1], vec![true, false, false]),
        "klein" => ("Klein bottle, 9 vertices", rows(&KLEIN_9), vec![1, 2, 1], vec![true, true, false]),
        "s3" => ("3-sphere, boundary of the 4-simplex", simplex_boundary(3), vec![1, 0, 0, 1], vec![true, false, false, false]),
        "rp3" => ("real projective 3-space, 11 vertices", rows(&RP3_11), vec![1, 1, 1, 1], vec![true, false, false, false]),
        _ => return Err(Error::UnknownCorpusEntry(name.to_string())),
    };
    Ok(CorpusEntry { name: name.to_string(), description: description.to_string(), facets, expected_betti, expected_w })
}

/// A validated corpus entry together with its complex.
pub fn corpus(name: &str) -> Result<(CorpusEntry, SimplicialComplex)> {
    let entry = raw_entry(name)?;
    let x = entry.validate()?;
    Ok((entry, x))
}
