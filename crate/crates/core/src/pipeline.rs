//! End-to-end check of the all-ones dual-cell cochains against the Wu oracle.

use std::time::Instant;

use serde::Serialize;

use crate::blocks::build_block_complex;
use crate::cohomology::{cap, fundamental_cycle, wu_classes_with, VertexOrder};
use crate::error::Error;
use crate::homology::{cohomology, homology};
use crate::simplicial::{Chain, SimplicialComplex};
use crate::subdivision::{barycentric_subdivide, flag_dual_cells, flag_partner, SubdividedComplex};

/// Per-degree outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub all_ones_is_cocycle: bool,
    pub ht_chain_is_cycle: bool,
    /// The dual chain is nonzero in homology of the subdivision.
    pub class_nonzero: bool,
    pub oracle_nonzero: bool,
    /// Present only when both representatives passed their (co)cycle checks.
    pub matches_oracle: Option<bool>,
    /// Whether the all-ones cochain on blocks of the unsubdivided complex is a cocycle.
    pub k_level_cocycle: bool,
    pub dual_cells: usize,
    /// Flag-partner involution check; absent in degree 0.
    pub pairing_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitRow {
    pub cocycle: bool,
    pub unit_class: bool,
    pub dual_is_subdivided_fundamental_cycle: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timings {
    pub subdivide_ms: f64,
    pub homology_ms: f64,
    pub oracle_ms: f64,
    pub degrees_ms: f64,
    pub pairing_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SwReport {
    pub dim: usize,
    pub f_vector: Vec<usize>,
    pub derived_f_vector: Vec<usize>,
    pub betti: Vec<usize>,
    pub euler_characteristic: i64,
    pub degrees: Vec<DegreeRow>,
    pub w0: UnitRow,
    pub pairing_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl SwReport {
    /// Nonvanishing of the oracle classes w_0, ..., w_n.
    pub fn w_pattern(&self) -> Vec<bool> {
        self.degrees.iter().map(|r| r.oracle_nonzero).collect()
    }

    /// Every check in every degree passed.
    pub fn all_passed(&self) -> bool {
        self.pairing_ok
            && self.w0.cocycle
            && self.w0.unit_class
            && self.w0.dual_is_subdivided_fundamental_cycle
            && self.degrees.iter().all(|r| r.all_ones_is_cocycle && r.ht_chain_is_cycle && r.matches_oracle == Some(true))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("dual-cell class differs from the Wu oracle in degree {degree}")]
    OracleConflict { degree: usize, report: Box<SwReport> },
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub timings: bool,
}

/// Sum of all i-simplices of the subdivision.
pub fn ht_chain(s: &SubdividedComplex, i: usize) -> Result<Chain, Error> {
    s.base().is_closed_pseudomanifold().into_result()?;
    if i > s.derived().dim() {
        return Err(Error::DimensionOutOfRange { dim: i, max: s.derived().dim() });
    }
    Ok(Chain::all(s.derived(), i))
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn compute_report(k: &SimplicialComplex) -> Result<SwReport, PipelineError> {
    compute_report_with(k, Options::default())
}

pub fn compute_report_with(k: &SimplicialComplex, opts: Options) -> Result<SwReport, PipelineError> {
    k.is_closed_pseudomanifold().into_result()?;
    let n = k.dim();
    let t = Instant::now();
    let s = barycentric_subdivide(k)?;
    let l = s.derived();
    let blocks = build_block_complex(l)?;
    let k_blocks = build_block_complex(k)?;
    let subdivide_ms = ms(t);

    let t = Instant::now();
    let h_l = homology(l);
    let h_k = homology(k);
    let coh_k = cohomology(k);
    let homology_ms = ms(t);

    let t = Instant::now();
    let order = VertexOrder::numeric(k);
    let wu = wu_classes_with(k, &order, &coh_k)?;
    let gamma = fundamental_cycle(k)?;
    let oracle_ms = ms(t);

    let t = Instant::now();
    let mut degrees = Vec::with_capacity(n + 1);
    let mut conflict = None;
    for i in 0..=n {
        let ones = blocks.all_ones(i)?;
        let all_ones_is_cocycle = i == n || blocks.block_coboundary_sparse(&ones)?.is_zero();
        let ht = blocks.poincare_dual_chain(&ones);
        debug_assert_eq!(ht, ht_chain(&s, n - i)?);
        let ht_chain_is_cycle = l.boundary(&ht)?.is_zero();
        let class_nonzero = ht_chain_is_cycle && !h_l.degree(n - i)?.is_boundary(ht.bits());

        let w = &wu.w[i];
        let pd = cap(k, &order, &w.representative, &gamma)?;
        let pushed = s.subdivide_chain(&pd)?;
        let oracle_ok = k.boundary(&pd)?.is_zero() && l.boundary(&pushed)?.is_zero();
        let matches_oracle = (all_ones_is_cocycle && ht_chain_is_cycle && oracle_ok)
            .then(|| h_l.degree(n - i).map(|d| d.is_boundary(ht.add(&pushed).bits())))
            .transpose()?;
        if matches_oracle == Some(false) && conflict.is_none() {
            conflict = Some(i);
        }
        let k_level_cocycle = k_blocks.all_ones_obstruction(i)?.is_none();
        degrees.push(DegreeRow {
            degree: i,
            all_ones_is_cocycle,
            ht_chain_is_cycle,
            class_nonzero,
            oracle_nonzero: !w.is_zero(),
            matches_oracle,
            k_level_cocycle,
            dual_cells: 0,
            pairing_ok: None,
        });
    }
    let w0 = w0_row(&s, &gamma)?;
    let degrees_ms = ms(t);

    let t = Instant::now();
    for row in degrees.iter_mut() {
        let cells = flag_dual_cells(&s, row.degree)?;
        row.dual_cells = cells.len();
        if row.degree >= 1 {
            row.pairing_ok = Some(partner_orbits_ok(&s, &cells)?);
        }
    }
    let pairing_ok = degrees.iter().all(|r| r.pairing_ok != Some(false));
    let pairing_ms = ms(t);

    let report = SwReport {
        dim: n,
        f_vector: k.f_vector(),
        derived_f_vector: l.f_vector(),
        betti: h_k.betti(),
        euler_characteristic: k.euler_characteristic(),
        degrees,
        w0,
        pairing_ok,
        timings: opts.timings.then_some(Timings { subdivide_ms, homology_ms, oracle_ms, degrees_ms, pairing_ms }),
    };
    match conflict {
        Some(degree) => Err(PipelineError::OracleConflict { degree, report: Box::new(report) }),
        None => Ok(report),
    }
}

/// Every cell's partner is a different cell of the list, and partnering twice returns the cell.
fn partner_orbits_ok(s: &SubdividedComplex, cells: &[crate::subdivision::FlagSimplex]) -> Result<bool, Error> {
    let mut sorted = cells.to_vec();
    sorted.sort();
    for c in cells {
        let p = flag_partner(s, c)?;
        if p == *c || sorted.binary_search(&p).is_err() || flag_partner(s, &p)? != *c {
            return Ok(false);
        }
    }
    Ok(cells.len().is_multiple_of(2))
}

/// The all-ones 0-cochain on dual vertices: a cocycle representing the unit,
/// whose dual chain is the subdivided fundamental cycle.
pub fn w0_row(s: &SubdividedComplex, gamma: &Chain) -> Result<UnitRow, Error> {
    let l = s.derived();
    let n = l.dim();
    let blocks = build_block_complex(l)?;
    let ones = blocks.all_ones(0)?;
    let cocycle = n == 0 || blocks.block_coboundary_sparse(&ones)?.is_zero();
    let dual = blocks.poincare_dual_chain(&ones);
    let dual_is_subdivided_fundamental_cycle = dual == s.subdivide_chain(gamma)?;
    let coh = cohomology(l);
    let unit = crate::simplicial::Cochain::constant_one(l, 0);
    let unit_class = l.is_closed_pseudomanifold().passed
        && l.check_cocycle(&unit, "unit").is_ok()
        && !coh.degree(0)?.is_boundary(unit.bits())
        && l.boundary(&dual)?.is_zero()
        && !dual.is_zero();
    Ok(UnitRow { cocycle, unit_class, dual_is_subdivided_fundamental_cycle })
}
